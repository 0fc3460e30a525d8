#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "egvi/cert/rational.hpp"

namespace egvi::cert {

inline constexpr int kMaxVariables = 32;

// Exponent vector over a fixed variable list. Lexicographic comparison of the
// array is a monomial order, which exact division relies on.
using Monomial = std::array<std::uint8_t, kMaxVariables>;

// {{variable, exponent}, ...}
Monomial make_monomial(std::initializer_list<std::pair<int, int>> powers);
int monomial_degree(const Monomial& m);

// Sparse multivariate polynomial with exact rational coefficients. Zero
// coefficients are never stored, so equality is map equality.
class SparsePoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  SparsePoly() = default;
  SparsePoly(Rational constant);  // NOLINT(google-explicit-constructor)
  SparsePoly(long constant) : SparsePoly(Rational(constant)) {}  // NOLINT

  static SparsePoly variable(int index);
  static SparsePoly term(const Monomial& m, Rational coefficient);

  const Terms& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  Rational coefficient(const Monomial& m) const;
  // Variables with a positive exponent in some term.
  std::vector<int> variables() const;

  SparsePoly& operator+=(const SparsePoly& o);
  SparsePoly& operator-=(const SparsePoly& o);
  SparsePoly& operator*=(const SparsePoly& o);
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
  SparsePoly operator-() const;
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }

  SparsePoly pow(unsigned exponent) const;
  // Replaces every occurrence of the variable with the given polynomial.
  SparsePoly substitute(int var, const SparsePoly& value) const;
  Rational evaluate(const std::vector<Rational>& values) const;
  // Quotient when the divisor divides exactly, nullopt otherwise.
  std::optional<SparsePoly> divide_exact(const SparsePoly& divisor) const;

  // Splits into coefficient polynomials over the monomials of the variables
  // not in `coefficient_vars`.
  std::map<Monomial, SparsePoly> group_by(const std::vector<int>& coefficient_vars) const;

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names);

}  // namespace egvi::cert
