#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "egvi/cert/rational.hpp"
#include "egvi/cert/sparse_poly.hpp"

namespace egvi::cert {

// Variables of the reduced three-coordinate EG step. "u" stands for eta*F at
// the current point (k), the half step (h) and the next point (n); the six
// dependent coordinates come last and are eliminated by substitution.
enum Var : int {
  kZk1, kZk2, kZh1,
  kUk1, kUk2, kUk3,
  kUh1, kUh2, kUh3,
  kUn1, kUn2, kUn3,
  kAlpha, kBeta1, kBeta2,
  kX0, kX1, kX2, kY0, kY1, kY2,
  kZk3, kZh2, kZh3, kZn1, kZn2, kZn3,
  kNumVars
};

inline constexpr int kNumFreeVars = kZk3;

const std::vector<std::string>& variable_names();

// Sign of the first coordinate of F at the next point.
enum class Branch { kNonneg, kNeg };

std::string branch_name(Branch b);

// Free variables plus the branch; dependent values follow from the EG
// relations on the reduced cone.
struct CertificateAssignment {
  std::array<Rational, kNumFreeVars> free{};
  Branch branch = Branch::kNonneg;

  // All kNumVars values with the dependent coordinates filled in.
  std::vector<Rational> full_values() const;
};

// Denominators are products of these factors.
enum Factor : int { kOnePlusAlpha2, kOnePlusBeta2Sq, kOnePlusBetaSq, kNumFactors };
using FactorPowers = std::array<int, kNumFactors>;

SparsePoly factor_poly(Factor f);
std::string factor_name(Factor f);
SparsePoly denominator_poly(const FactorPowers& powers);

struct IdentityTerm {
  std::string name;
  SparsePoly numerator;
  FactorPowers denominator{};
};

// Both sides of a rational-function identity.
struct Identity {
  std::vector<IdentityTerm> lhs;
  std::vector<IdentityTerm> rhs;
};

// Per-factor maximum over all terms.
FactorPowers common_denominator(const Identity& id);
// Sum of the terms multiplied by the common denominator.
SparsePoly clear_denominators(const std::vector<IdentityTerm>& terms, const FactorPowers& common);

// Exact value of a side at the given variable values.
Rational evaluate_terms(const std::vector<IdentityTerm>& terms, const std::vector<Rational>& values);

// The nine constraint-augmented LHS terms (after substitution) and the five
// squares on the RHS.
Identity constrained_identity(Branch b);
SparsePoly build_constrained_lhs(Branch b);
SparsePoly build_constrained_rhs(Branch b);

// Constrained objective plus the weighted constraint products in all 27
// variables, before the dependent coordinates are substituted.
SparsePoly constrained_pre_substitution(Branch b);
// Replaces the six dependent coordinates by their EG relations.
SparsePoly substitute_dependents(const SparsePoly& p);

struct IdentityCheck {
  std::string identity_name;
  std::string branch;  // "nonneg", "neg" or "-"
  bool holds = false;
  size_t monomial_count_lhs = 0;
  size_t monomial_count_rhs = 0;
  int max_degree = 0;
  std::optional<std::string> first_difference;  // monomial and both coefficients
};

// Names accepted by the mutation harness: final-cons1..9, sos-1..5,
// p2-substitution, unconstrained-half.
const std::vector<std::string>& mutation_names();
bool is_identity_term(const std::string& name);

// LHS - RHS is the zero polynomial. `dropped` removes one term by name.
IdentityCheck check_constrained_identity(Branch b, const std::optional<std::string>& dropped = std::nullopt);
// The constrained sum before substitution equals the substituted terms.
IdentityCheck check_substitution_consistency(Branch b);
// Both neg-branch sides are the nonneg sides minus
// un1^2 + 2 un1 (zk1 - uh1).
IdentityCheck check_branch_reduction();

bool check_unconstrained_identity(const std::vector<Rational>& f_k, const std::vector<Rational>& f_half,
                                  const std::vector<Rational>& f_next);
// Residual of the unconstrained identity; with `perturb_half` the half-step
// vector used in the inner product is shifted by 1 in its first coordinate.
Rational unconstrained_identity_residual(const std::vector<Rational>& f_k, const std::vector<Rational>& f_half,
                                         const std::vector<Rational>& f_next, bool perturb_half = false);
// The unconstrained identity as a polynomial in one coordinate.
IdentityCheck check_unconstrained_identity_symbolic();

// Pre-substitution P2-block expression in x0..x2, y0..y2.
SparsePoly p2_block_expression();
IdentityCheck check_p2_block_identity(bool omit_x2_substitution = false);

// which = 1, 2, 3
Identity expansion_identity(int which);
bool check_expansion_identities(const Rational& alpha, const Rational& beta1, const Rational& beta2);
// The three expansion identities as cleared polynomials in alpha, beta1, beta2.
IdentityCheck check_expansion_identities_symbolic();

Identity newsos_identity();
// B (sos-2 + sos-4 in the (1+beta2^2) form) = a^2 + b^2 + (beta1 a + beta2 b)^2.
IdentityCheck check_newsos_claim();
// The full identity with the (1+beta2^2)-form squares.
IdentityCheck check_constrained_identity_alternate(Branch b);

}  // namespace egvi::cert
