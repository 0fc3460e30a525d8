#include "egvi/cert/identities.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "egvi/errors.hpp"

namespace egvi::cert {

namespace {

SparsePoly v(int var) { return SparsePoly::variable(var); }
SparsePoly sq(const SparsePoly& p) { return p * p; }

const SparsePoly& alpha() {
  static const SparsePoly p = v(kAlpha);
  return p;
}
const SparsePoly& beta1() {
  static const SparsePoly p = v(kBeta1);
  return p;
}
const SparsePoly& beta2() {
  static const SparsePoly p = v(kBeta2);
  return p;
}

constexpr FactorPowers kNoDen{0, 0, 0};
constexpr FactorPowers kDenA{1, 0, 0};
constexpr FactorPowers kDenC{0, 1, 0};
constexpr FactorPowers kDenB{0, 0, 1};
constexpr FactorPowers kDenCB{0, 1, 1};

// beta1 uk1 + beta2 uk2 + uk3: the current operator value along the k-th normal.
SparsePoly normal_component_k() { return beta1() * v(kUk1) + beta2() * v(kUk2) + v(kUk3); }

// Shared brackets of the cons1/cons2 products after substitution.
SparsePoly half_normal_bracket() {
  return (v(kZh1) - v(kZk1) + v(kUk1)) - alpha() * (-alpha() * v(kZh1) - v(kZk2) + v(kUk2));
}

SparsePoly a_term() { return v(kZk2) - v(kUk2) + alpha() * v(kZh1); }
SparsePoly b_term() { return v(kUk1) - v(kZk1) + v(kZh1); }

IdentityCheck compare(std::string name, std::string branch, const SparsePoly& lhs, const SparsePoly& rhs) {
  IdentityCheck c;
  c.identity_name = std::move(name);
  c.branch = std::move(branch);
  c.holds = lhs == rhs;
  c.monomial_count_lhs = lhs.size();
  c.monomial_count_rhs = rhs.size();
  c.max_degree = std::max(lhs.degree(), rhs.degree());
  if (!c.holds) {
    SparsePoly diff = lhs - rhs;
    const Monomial& m = diff.terms().begin()->first;
    std::ostringstream out;
    out << monomial_to_string(m, variable_names()) << ": lhs " << lhs.coefficient(m).to_string()
        << ", rhs " << rhs.coefficient(m).to_string();
    c.first_difference = out.str();
  }
  return c;
}

IdentityCheck compare_identity(std::string name, std::string branch, const Identity& id) {
  FactorPowers common = common_denominator(id);
  return compare(std::move(name), std::move(branch), clear_denominators(id.lhs, common),
                 clear_denominators(id.rhs, common));
}


}  // namespace

const std::vector<std::string>& variable_names() {
  static const std::vector<std::string> names = {
      "z_k[1]",         "z_k[2]",         "z_half[1]",      "etaF(z_k)[1]",   "etaF(z_k)[2]",
      "etaF(z_k)[3]",   "etaF(z_half)[1]", "etaF(z_half)[2]", "etaF(z_half)[3]", "etaF(z_next)[1]",
      "etaF(z_next)[2]", "etaF(z_next)[3]", "alpha",          "beta1",          "beta2",
      "x0",             "x1",             "x2",             "y0",             "y1",
      "y2",             "z_k[3]",         "z_half[2]",      "z_half[3]",      "z_next[1]",
      "z_next[2]",      "z_next[3]"};
  return names;
}

std::string branch_name(Branch b) { return b == Branch::kNonneg ? "nonneg" : "neg"; }

std::vector<Rational> CertificateAssignment::full_values() const {
  std::vector<Rational> x(kNumVars);
  std::copy(free.begin(), free.end(), x.begin());
  x[kX1] = x[kX0] - x[kY0];
  x[kX2] = x[kX0] - x[kY1];
  x[kZk3] = -x[kBeta1] * x[kZk1] - x[kBeta2] * x[kZk2];
  x[kZh2] = -x[kAlpha] * x[kZh1];
  x[kZh3] = x[kZk3] - x[kUk3];
  x[kZn1] = Rational(0);
  x[kZn2] = x[kZk2] - x[kUh2];
  x[kZn3] = x[kZk3] - x[kUh3];
  return x;
}

SparsePoly factor_poly(Factor f) {
  switch (f) {
    case kOnePlusAlpha2: return SparsePoly(1) + sq(alpha());
    case kOnePlusBeta2Sq: return SparsePoly(1) + sq(beta2());
    case kOnePlusBetaSq: return SparsePoly(1) + sq(beta1()) + sq(beta2());
    default: break;
  }
  throw InvalidArgumentError("unknown denominator factor");
}

std::string factor_name(Factor f) {
  switch (f) {
    case kOnePlusAlpha2: return "(1+alpha^2)";
    case kOnePlusBeta2Sq: return "(1+beta2^2)";
    case kOnePlusBetaSq: return "(1+beta1^2+beta2^2)";
    default: break;
  }
  throw InvalidArgumentError("unknown denominator factor");
}

SparsePoly denominator_poly(const FactorPowers& powers) {
  SparsePoly d(1);
  for (int f = 0; f < kNumFactors; ++f) d *= factor_poly(static_cast<Factor>(f)).pow(powers[f]);
  return d;
}

FactorPowers common_denominator(const Identity& id) {
  FactorPowers out{};
  for (const auto* side : {&id.lhs, &id.rhs})
    for (const auto& t : *side)
      for (int f = 0; f < kNumFactors; ++f) out[f] = std::max(out[f], t.denominator[f]);
  return out;
}

SparsePoly clear_denominators(const std::vector<IdentityTerm>& terms, const FactorPowers& common) {
  SparsePoly total;
  for (const auto& t : terms) {
    FactorPowers rest{};
    for (int f = 0; f < kNumFactors; ++f) {
      rest[f] = common[f] - t.denominator[f];
      if (rest[f] < 0) throw InvalidArgumentError("common denominator misses a factor of " + t.name);
    }
    total += t.numerator * denominator_poly(rest);
  }
  return total;
}

Rational evaluate_terms(const std::vector<IdentityTerm>& terms, const std::vector<Rational>& values) {
  Rational total(0);
  for (const auto& t : terms) total += t.numerator.evaluate(values) / denominator_poly(t.denominator).evaluate(values);
  return total;
}

Identity constrained_identity(Branch b) {
  const SparsePoly nonneg(b == Branch::kNonneg ? 1 : 0);
  const SparsePoly neg(b == Branch::kNeg ? 1 : 0);
  const SparsePoly big_b = factor_poly(kOnePlusBetaSq);
  const SparsePoly s = normal_component_k();
  const SparsePoly x = half_normal_bracket();

  Identity id;
  SparsePoly norms = sq(v(kUk1)) + sq(v(kUk2)) + sq(v(kUk3)) - sq(v(kUn1)) - sq(v(kUn2)) - sq(v(kUn3));
  id.lhs.push_back({"final-cons1", big_b * (norms + nonneg * sq(v(kUn1))) - sq(s), kDenB});
  id.lhs.push_back({"final-cons2",
                    SparsePoly(2) * (v(kZk1) * (v(kUn1) - v(kUk1)) + v(kUh2) * (v(kUn2) - v(kUk2)) +
                                     v(kUh3) * (v(kUn3) - v(kUk3))),
                    kNoDen});
  id.lhs.push_back({"final-cons3",
                    sq(v(kUn1) - v(kUh1)) + sq(v(kUn2) - v(kUh2)) + sq(v(kUn3) - v(kUh3)) - sq(v(kZh1)) -
                        sq(v(kZk2) - v(kUh2) + alpha() * v(kZh1)) - sq(v(kUk3) - v(kUh3)),
                    kNoDen});
  id.lhs.push_back({"final-cons4", SparsePoly(2) * v(kZh1) * x, kNoDen});
  id.lhs.push_back({"final-cons5", SparsePoly(2) * alpha() * (v(kZk2) - v(kUh2)) * x, kDenA});
  id.lhs.push_back({"final-cons6",
                    SparsePoly(2) * (alpha() * (v(kZk1) - v(kUk1)) + (v(kZk2) - v(kUk2))) * (v(kZk2) - v(kUh2)),
                    kDenA});
  id.lhs.push_back({"final-cons7",
                    SparsePoly(-2) * s *
                        ((beta1() - alpha() * beta2()) * v(kZh1) - beta1() * v(kZk1) - beta2() * v(kZk2) - v(kUk3)),
                    kDenB});
  id.lhs.push_back({"final-cons8", SparsePoly(2) * v(kZk1) * (v(kZk1) - v(kUh1)), kNoDen});
  id.lhs.push_back({"final-cons9", SparsePoly(-2) * v(kUn1) * neg * (v(kZk1) - v(kUh1)), kNoDen});

  SparsePoly first_gap = v(kZk1) - v(kUk1) - v(kZh1);
  id.rhs.push_back({"sos-1", sq(v(kZk1) - v(kUh1) + nonneg * v(kUn1)), kNoDen});
  id.rhs.push_back({"sos-2", sq(first_gap), kDenB});
  id.rhs.push_back({"sos-3",
                    sq(v(kUk3) + beta1() * v(kZk1) + beta2() * v(kZk2) + (alpha() * beta2() - beta1()) * v(kZh1)),
                    kDenB});
  id.rhs.push_back({"sos-4", sq(a_term()), kDenB});
  id.rhs.push_back({"sos-5", sq(beta1() * a_term() - beta2() * first_gap), kDenB});
  return id;
}

SparsePoly build_constrained_lhs(Branch b) {
  Identity id = constrained_identity(b);
  return clear_denominators(id.lhs, common_denominator(id));
}

SparsePoly build_constrained_rhs(Branch b) {
  Identity id = constrained_identity(b);
  return clear_denominators(id.rhs, common_denominator(id));
}

SparsePoly constrained_pre_substitution(Branch b) {
  const SparsePoly nonneg(b == Branch::kNonneg ? 1 : 0);
  const SparsePoly neg(b == Branch::kNeg ? 1 : 0);
  const SparsePoly big_a = factor_poly(kOnePlusAlpha2);
  const SparsePoly big_b = factor_poly(kOnePlusBetaSq);
  const int zk[3] = {kZk1, kZk2, kZk3}, zh[3] = {kZh1, kZh2, kZh3}, zn[3] = {kZn1, kZn2, kZn3};
  const int uk[3] = {kUk1, kUk2, kUk3}, uh[3] = {kUh1, kUh2, kUh3}, un[3] = {kUn1, kUn2, kUn3};

  // Constrained objective over the first three coordinates.
  SparsePoly objective;
  for (int i = 0; i < 3; ++i) {
    objective += sq(v(uk[i])) - sq(v(un[i]));
    objective += SparsePoly(2) * (v(un[i]) - v(uk[i])) * (v(zk[i]) - v(zn[i]));
    objective += sq(v(un[i]) - v(uh[i])) - sq(v(zn[i]) - v(zh[i]));
  }
  objective += nonneg * sq(v(kUn1));
  SparsePoly s = normal_component_k();

  // Constraint products; each is <= 0 (or = 0) on the reduced cone.
  SparsePoly bracket = (v(kZh1) - v(kZk1) + v(kUk1)) - alpha() * (v(kZh2) - v(kZk2) + v(kUk2));
  SparsePoly cons1 = v(kZh1) * bracket;
  SparsePoly cons2 = v(kZn2) * bracket;
  SparsePoly cons3 = (alpha() * (v(kZk1) - v(kUk1)) + (v(kZk2) - v(kUk2))) * (alpha() * v(kZn1) + v(kZn2));
  SparsePoly cons4 = -s * (beta1() * v(kZh1) + beta2() * v(kZh2) + v(kZh3));
  SparsePoly cons5 = v(kZk1) * (v(kZk1) - v(kUh1));
  SparsePoly cons6 = -v(kUn1) * neg * (v(kZk1) - v(kUh1));

  // Everything multiplied by (1+alpha^2)(1+beta1^2+beta2^2).
  SparsePoly ab = big_a * big_b;
  return ab * objective - big_a * sq(s) + SparsePoly(2) * ab * (cons1 + cons5 + cons6) +
         SparsePoly(2) * alpha() * big_b * cons2 + SparsePoly(2) * big_b * cons3 + SparsePoly(2) * big_a * cons4;
}

SparsePoly substitute_dependents(const SparsePoly& p) {
  SparsePoly out = p;
  out = out.substitute(kZn3, v(kZk3) - v(kUh3));
  out = out.substitute(kZh3, v(kZk3) - v(kUk3));
  out = out.substitute(kZn2, v(kZk2) - v(kUh2));
  out = out.substitute(kZn1, SparsePoly(0));
  out = out.substitute(kZh2, -alpha() * v(kZh1));
  out = out.substitute(kZk3, -beta1() * v(kZk1) - beta2() * v(kZk2));
  return out;
}

const std::vector<std::string>& mutation_names() {
  static const std::vector<std::string> names = {
      "final-cons1", "final-cons2", "final-cons3", "final-cons4", "final-cons5",     "final-cons6",
      "final-cons7", "final-cons8", "final-cons9", "sos-1",       "sos-2",           "sos-3",
      "sos-4",       "sos-5",       "p2-substitution", "unconstrained-half"};
  return names;
}

bool is_identity_term(const std::string& name) {
  const auto& names = mutation_names();
  auto it = std::find(names.begin(), names.end(), name);
  return it != names.end() && (name.rfind("final-cons", 0) == 0 || name.rfind("sos-", 0) == 0);
}

IdentityCheck check_constrained_identity(Branch b, const std::optional<std::string>& dropped) {
  Identity id = constrained_identity(b);
  if (dropped) {
    if (!is_identity_term(*dropped)) throw InvalidArgumentError("unknown identity term '" + *dropped + "'");
    for (auto* side : {&id.lhs, &id.rhs})
      side->erase(std::remove_if(side->begin(), side->end(), [&](const IdentityTerm& t) { return t.name == *dropped; }),
                  side->end());
  }
  return compare_identity("constrained", branch_name(b), id);
}

IdentityCheck check_substitution_consistency(Branch b) {
  return compare("constrained-substitution", branch_name(b), substitute_dependents(constrained_pre_substitution(b)),
                 build_constrained_lhs(b));
}

IdentityCheck check_branch_reduction() {
  SparsePoly delta = sq(v(kUn1)) + SparsePoly(2) * v(kUn1) * (v(kZk1) - v(kUh1));
  SparsePoly ab = factor_poly(kOnePlusAlpha2) * factor_poly(kOnePlusBetaSq);
  SparsePoly lhs_gap = build_constrained_lhs(Branch::kNonneg) - build_constrained_lhs(Branch::kNeg);
  SparsePoly rhs_gap = build_constrained_rhs(Branch::kNonneg) - build_constrained_rhs(Branch::kNeg);
  IdentityCheck lhs = compare("branch-reduction-lhs", "-", lhs_gap, ab * delta);
  IdentityCheck rhs = compare("branch-reduction-rhs", "-", rhs_gap, ab * delta);
  IdentityCheck out = lhs.holds ? rhs : lhs;
  out.identity_name = "branch-reduction";
  out.holds = lhs.holds && rhs.holds;
  return out;
}

Rational unconstrained_identity_residual(const std::vector<Rational>& f_k, const std::vector<Rational>& f_half,
                                         const std::vector<Rational>& f_next, bool perturb_half) {
  if (f_half.size() != f_k.size()) throw egvi::DimensionError("f_half", f_k.size(), f_half.size());
  if (f_next.size() != f_k.size()) throw egvi::DimensionError("f_next", f_k.size(), f_next.size());
  Rational total(0);
  for (size_t i = 0; i < f_k.size(); ++i) {
    const Rational& k = f_k[i];
    const Rational& h = f_half[i];
    const Rational& n = f_next[i];
    Rational h_inner = (perturb_half && i == 0) ? h + Rational(1) : h;
    total += k * k - n * n + Rational(2) * (n - k) * h_inner + (h - n) * (h - n) - (h - k) * (h - k);
  }
  return total;
}

bool check_unconstrained_identity(const std::vector<Rational>& f_k, const std::vector<Rational>& f_half,
                                  const std::vector<Rational>& f_next) {
  return unconstrained_identity_residual(f_k, f_half, f_next).is_zero();
}

IdentityCheck check_unconstrained_identity_symbolic() {
  SparsePoly k = v(kY0), h = v(kY1), n = v(kY2);
  SparsePoly lhs = sq(k) - sq(n) + SparsePoly(2) * (n - k) * h + sq(h - n) - sq(h - k);
  return compare("unconstrained", "-", lhs, SparsePoly(0));
}

SparsePoly p2_block_expression() {
  return sq(v(kY0)) - sq(v(kY2)) + SparsePoly(2) * (v(kY2) - v(kY0)) * (v(kX0) - v(kX2)) + sq(v(kY2) - v(kY1)) -
         sq(v(kX2) - v(kX1));
}

IdentityCheck check_p2_block_identity(bool omit_x2_substitution) {
  SparsePoly p = p2_block_expression().substitute(kX1, v(kX0) - v(kY0));
  if (!omit_x2_substitution) p = p.substitute(kX2, v(kX0) - v(kY1));
  return compare("p2-block", "-", p, SparsePoly(0));
}

Identity expansion_identity(int which) {
  const SparsePoly cross = sq(beta2()) + alpha() * beta1() * beta2() + SparsePoly(1);
  Identity id;
  switch (which) {
    case 1:
      id.lhs = {{"prove-1.1", SparsePoly(-2) * alpha(), kDenC},
                {"prove-1.2", SparsePoly(-2) * beta1() * beta2() * cross, kDenCB}};
      id.rhs = {{"prove-1.3", SparsePoly(-2) * alpha() * (sq(beta1()) + SparsePoly(1)), kDenB},
                {"prove-1.4", SparsePoly(-2) * beta1() * beta2(), kDenB}};
      break;
    case 2:
      id.lhs = {{"prove-2.1", SparsePoly(2) * alpha(), kDenC},
                {"prove-2.2", SparsePoly(-2) * beta2() * (beta1() - alpha() * beta2()), kDenB},
                {"prove-2.3", SparsePoly(2) * beta1() * beta2() * cross, kDenCB}};
      id.rhs = {{"prove-2.4", SparsePoly(2) * alpha(), kNoDen}};
      break;
    case 3:
      id.lhs = {{"prove-3.1", sq(alpha()), kDenC},
                {"prove-3.2", sq(beta1() - alpha() * beta2()), kDenB},
                {"prove-3.3", sq(cross), kDenCB}};
      id.rhs = {{"prove-3.4", sq(alpha()) + SparsePoly(1), kNoDen}};
      break;
    default:
      throw InvalidArgumentError("expansion identities are numbered 1 to 3");
  }
  return id;
}

bool check_expansion_identities(const Rational& a, const Rational& b1, const Rational& b2) {
  std::vector<Rational> values(kNumVars);
  values[kAlpha] = a;
  values[kBeta1] = b1;
  values[kBeta2] = b2;
  for (int which = 1; which <= 3; ++which) {
    Identity id = expansion_identity(which);
    if (evaluate_terms(id.lhs, values) != evaluate_terms(id.rhs, values)) return false;
  }
  return true;
}

IdentityCheck check_expansion_identities_symbolic() {
  IdentityCheck combined;
  for (int which = 1; which <= 3; ++which) {
    IdentityCheck c = compare_identity("expansion-" + std::to_string(which), "-", expansion_identity(which));
    if (which == 1 || (!c.holds && combined.holds)) combined = c;
    combined.monomial_count_lhs = std::max(combined.monomial_count_lhs, c.monomial_count_lhs);
    combined.monomial_count_rhs = std::max(combined.monomial_count_rhs, c.monomial_count_rhs);
    combined.max_degree = std::max(combined.max_degree, c.max_degree);
  }
  combined.identity_name = "expansion";
  return combined;
}

Identity newsos_identity() {
  // sos-2 and sos-4 in the (1+beta2^2) form, scaled by 1+beta1^2+beta2^2.
  SparsePoly big_b = factor_poly(kOnePlusBetaSq);
  SparsePoly one_b2 = factor_poly(kOnePlusBeta2Sq);
  SparsePoly old4 = one_b2 * (v(kUk1) - v(kZk1)) - beta1() * beta2() * (v(kUk2) - v(kZk2)) +
                    (one_b2 + alpha() * beta1() * beta2()) * v(kZh1);
  SparsePoly a = a_term(), b = b_term();
  Identity id;
  id.lhs = {{"old-sos-2", big_b * sq(a), kDenC}, {"old-sos-4", big_b * sq(old4), kDenCB}};
  id.rhs = {{"a^2", sq(a), kNoDen}, {"b^2", sq(b), kNoDen}, {"(beta1 a + beta2 b)^2", sq(beta1() * a + beta2() * b), kNoDen}};
  return id;
}

IdentityCheck check_newsos_claim() { return compare_identity("newsos", "-", newsos_identity()); }

IdentityCheck check_constrained_identity_alternate(Branch b) {
  Identity id = constrained_identity(b);
  Identity newsos = newsos_identity();
  // Replace sos-2, sos-4, sos-5 (the new decomposition) by the two old terms.
  id.rhs.erase(std::remove_if(id.rhs.begin(), id.rhs.end(),
                              [](const IdentityTerm& t) { return t.name == "sos-2" || t.name == "sos-4" || t.name == "sos-5"; }),
               id.rhs.end());
  for (IdentityTerm t : newsos.lhs) {
    t.denominator[kOnePlusBetaSq] += 1;  // undo the scaling by 1+beta1^2+beta2^2
    id.rhs.push_back(t);
  }
  return compare_identity("constrained-alternate", branch_name(b), id);
}

}  // namespace egvi::cert
