#include "egvi/cert/report.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <random>

#include "egvi/errors.hpp"

namespace egvi::cert {

namespace {

const std::vector<int> kParameterVars = {kAlpha, kBeta1, kBeta2};

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-60, 60), den(1, 25);
  return Rational(num(rng), den(rng));
}

std::vector<Rational> random_vector(std::mt19937_64& rng, size_t n) {
  std::vector<Rational> v(n);
  for (auto& x : v) x = random_rational(rng);
  return v;
}

CertificateAssignment random_assignment(std::mt19937_64& rng, Branch b) {
  CertificateAssignment a;
  for (auto& x : a.free) x = random_rational(rng);
  a.branch = b;
  // The branch fixes the sign of the first coordinate of F at the next point.
  Rational& un1 = a.free[kUn1];
  if ((b == Branch::kNonneg) != (un1.sign() >= 0)) un1 = -un1;
  return a;
}

IdentityCheck random_check(std::string name, bool holds, int degree, std::optional<std::string> failure) {
  IdentityCheck c;
  c.identity_name = std::move(name);
  c.branch = "-";
  c.holds = holds;
  c.max_degree = degree;
  c.first_difference = std::move(failure);
  return c;
}

std::string describe_vector(const std::vector<Rational>& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].to_string();
  return out + ")";
}

// Drops a named term from whichever side holds it.
void drop_term(Identity& id, const std::optional<std::string>& name) {
  if (!name) return;
  for (auto* side : {&id.lhs, &id.rhs})
    side->erase(std::remove_if(side->begin(), side->end(), [&](const IdentityTerm& t) { return t.name == *name; }),
                side->end());
}

}  // namespace

bool SuiteResult::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.holds; });
}

SuiteResult run_certificate_suite(const SuiteOptions& options) {
  const auto& mutation = options.mutation;
  if (mutation && std::find(mutation_names().begin(), mutation_names().end(), *mutation) == mutation_names().end())
    throw InvalidArgumentError("unknown mutation '" + *mutation + "'");
  const bool term_mutation = mutation && is_identity_term(*mutation);
  const std::optional<std::string> dropped = term_mutation ? mutation : std::nullopt;
  std::mt19937_64 rng(options.seed);
  SuiteResult result;

  // Unconstrained identity on random rational vectors of dimension 1..8.
  {
    const bool perturb = mutation == std::optional<std::string>("unconstrained-half");
    std::optional<std::string> failure;
    std::uniform_int_distribution<int> dim(1, 8);
    for (int t = 0; t < options.unconstrained_trials && !failure; ++t) {
      size_t n = static_cast<size_t>(dim(rng));
      auto fk = random_vector(rng, n), fh = random_vector(rng, n), fn = random_vector(rng, n);
      Rational r = unconstrained_identity_residual(fk, fh, fn, perturb);
      if (!r.is_zero())
        failure = "residual " + r.to_string() + " at f_k=" + describe_vector(fk) + " f_half=" + describe_vector(fh) +
                  " f_next=" + describe_vector(fn);
    }
    result.checks.push_back(random_check("unconstrained-random", !failure, 2, failure));
    result.checks.push_back(check_unconstrained_identity_symbolic());
  }

  for (Branch b : {Branch::kNonneg, Branch::kNeg}) result.checks.push_back(check_constrained_identity(b, dropped));
  for (Branch b : {Branch::kNonneg, Branch::kNeg}) result.checks.push_back(check_substitution_consistency(b));
  result.checks.push_back(check_branch_reduction());

  // Exact spot evaluation of both sides with their own denominators.
  for (Branch b : {Branch::kNonneg, Branch::kNeg}) {
    Identity id = constrained_identity(b);
    drop_term(id, dropped);
    std::optional<std::string> failure;
    for (int t = 0; t < options.spot_trials && !failure; ++t) {
      auto values = random_assignment(rng, b).full_values();
      Rational lhs = evaluate_terms(id.lhs, values), rhs = evaluate_terms(id.rhs, values);
      if (lhs != rhs) failure = "lhs " + lhs.to_string() + " != rhs " + rhs.to_string();
    }
    IdentityCheck c = random_check("constrained-spot", !failure, 8, failure);
    c.branch = branch_name(b);
    result.checks.push_back(c);
  }

  // Each square term is nonnegative, so the RHS is at every point.
  {
    std::optional<std::string> failure;
    for (Branch b : {Branch::kNonneg, Branch::kNeg}) {
      Identity id = constrained_identity(b);
      drop_term(id, dropped);
      for (int t = 0; t < options.spot_trials && !failure; ++t) {
        Rational rhs = evaluate_terms(id.rhs, random_assignment(rng, b).full_values());
        if (rhs.sign() < 0) failure = "negative rhs " + rhs.to_string();
      }
    }
    result.checks.push_back(random_check("rhs-nonnegative", !failure, 8, failure));
  }

  {
    const bool omit = mutation == std::optional<std::string>("p2-substitution");
    IdentityCheck p2 = check_p2_block_identity(omit);
    // Spot evaluation before substitution at consistent assignments.
    SparsePoly pre = p2_block_expression();
    for (int t = 0; t < options.spot_trials && p2.holds; ++t) {
      CertificateAssignment a = random_assignment(rng, Branch::kNonneg);
      auto values = a.full_values();
      if (omit) values[kX2] = random_rational(rng);
      Rational r = pre.evaluate(values);
      if (!r.is_zero()) {
        p2.holds = false;
        p2.first_difference = "spot evaluation gives " + r.to_string();
      }
    }
    result.checks.push_back(p2);
  }

  {
    std::optional<std::string> failure;
    for (int t = 0; t < options.expansion_trials && !failure; ++t) {
      Rational a = random_rational(rng), b1 = random_rational(rng), b2 = random_rational(rng);
      if (!check_expansion_identities(a, b1, b2))
        failure = "alpha=" + a.to_string() + " beta1=" + b1.to_string() + " beta2=" + b2.to_string();
    }
    result.checks.push_back(random_check("expansion-random", !failure, 6, failure));
    result.checks.push_back(check_expansion_identities_symbolic());
  }

  result.checks.push_back(check_newsos_claim());
  for (Branch b : {Branch::kNonneg, Branch::kNeg}) {
    result.checks.push_back(check_constrained_identity_alternate(b));
  }
  return result;
}

nlohmann::json to_json(const IdentityCheck& c) {
  nlohmann::json j = {{"identity_name", c.identity_name},
                      {"branch", c.branch},
                      {"status", c.holds ? "pass" : "fail"},
                      {"monomial_count_lhs", c.monomial_count_lhs},
                      {"monomial_count_rhs", c.monomial_count_rhs},
                      {"max_degree", c.max_degree}};
  if (c.first_difference) j["first_difference"] = *c.first_difference;
  return j;
}

nlohmann::json to_json(const SuiteResult& result) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : result.checks) checks.push_back(to_json(c));
  return {{"passed", result.all_passed()}, {"checks", checks}};
}

void print_summary(std::ostream& out, const SuiteResult& result) {
  out << std::left << std::setw(28) << "identity" << std::setw(8) << "branch" << std::setw(7) << "status"
      << std::setw(10) << "lhs_terms" << std::setw(10) << "rhs_terms" << "degree\n";
  for (const auto& c : result.checks) {
    out << std::left << std::setw(28) << c.identity_name << std::setw(8) << c.branch << std::setw(7)
        << (c.holds ? "pass" : "FAIL") << std::setw(10) << c.monomial_count_lhs << std::setw(10)
        << c.monomial_count_rhs << c.max_degree << '\n';
    if (c.first_difference) out << "    first difference: " << *c.first_difference << '\n';
  }
}

RationalFunction RationalFunction::reduced() const {
  RationalFunction out = *this;
  if (out.numerator.is_zero()) {
    out.denominator = {};
    return out;
  }
  for (int f = 0; f < kNumFactors; ++f) {
    while (out.denominator[f] > 0) {
      auto q = out.numerator.divide_exact(factor_poly(static_cast<Factor>(f)));
      if (!q) break;
      out.numerator = *q;
      --out.denominator[f];
    }
  }
  return out;
}

std::string RationalFunction::to_string() const {
  std::string num = numerator.to_string(variable_names());
  std::string den;
  for (int f = 0; f < kNumFactors; ++f)
    for (int p = 0; p < denominator[f]; ++p) den += factor_name(static_cast<Factor>(f));
  if (den.empty()) return num;
  bool simple = numerator.size() == 1 && numerator.terms().begin()->first == Monomial{};
  return (simple ? num : "(" + num + ")") + "/" + den;
}

bool TableRow::sums_match() const {
  // Compare over the common denominator.
  FactorPowers common{};
  for (int f = 0; f < kNumFactors; ++f) common[f] = std::max(lhs_sum.denominator[f], rhs_sum.denominator[f]);
  auto lift = [&](const RationalFunction& r) {
    FactorPowers rest{};
    for (int f = 0; f < kNumFactors; ++f) rest[f] = common[f] - r.denominator[f];
    return r.numerator * denominator_poly(rest);
  };
  return lift(lhs_sum) == lift(rhs_sum);
}

const TableRow* CoefficientTable::find(const Monomial& m) const {
  for (const auto& r : rows)
    if (r.monomial == m) return &r;
  return nullptr;
}

CoefficientTable coefficient_table(Branch b) {
  Identity id = constrained_identity(b);
  CoefficientTable table;
  table.branch = b;
  std::map<Monomial, TableRow> rows;
  auto fill = [&](const std::vector<IdentityTerm>& terms, bool lhs, std::vector<std::string>& names) {
    for (size_t i = 0; i < terms.size(); ++i) {
      names.push_back(terms[i].name);
      for (auto& [m, coeff] : terms[i].numerator.group_by(kParameterVars)) {
        TableRow& row = rows[m];
        row.monomial = m;
        auto& cells = lhs ? row.lhs_terms : row.rhs_terms;
        cells.resize(terms.size());
        cells[i] = RationalFunction{coeff, terms[i].denominator}.reduced();
      }
    }
  };
  fill(id.lhs, true, table.lhs_names);
  fill(id.rhs, false, table.rhs_names);

  FactorPowers common = common_denominator(id);
  for (auto& [m, row] : rows) {
    row.lhs_terms.resize(id.lhs.size());
    row.rhs_terms.resize(id.rhs.size());
    auto sum = [&](const std::vector<RationalFunction>& cells) {
      RationalFunction total{SparsePoly(), common};
      for (const auto& c : cells) {
        FactorPowers rest{};
        for (int f = 0; f < kNumFactors; ++f) rest[f] = common[f] - c.denominator[f];
        total.numerator += c.numerator * denominator_poly(rest);
      }
      return total.reduced();
    };
    row.lhs_sum = sum(row.lhs_terms);
    row.rhs_sum = sum(row.rhs_terms);
    table.rows.push_back(row);
  }
  return table;
}

void print_coefficient_table(std::ostream& out, const CoefficientTable& table) {
  out << "coefficient table, branch " << branch_name(table.branch) << '\n';
  const auto& names = variable_names();
  for (const auto& row : table.rows) {
    out << "monomial " << monomial_to_string(row.monomial, names) << '\n';
    for (size_t i = 0; i < row.lhs_terms.size(); ++i)
      if (!row.lhs_terms[i].numerator.is_zero())
        out << "  " << std::left << std::setw(12) << table.lhs_names[i] << row.lhs_terms[i].to_string() << '\n';
    out << "  Sum (lhs)   " << row.lhs_sum.to_string() << '\n';
    for (size_t i = 0; i < row.rhs_terms.size(); ++i)
      if (!row.rhs_terms[i].numerator.is_zero())
        out << "  " << std::left << std::setw(12) << table.rhs_names[i] << row.rhs_terms[i].to_string() << '\n';
    out << "  Sum (rhs)   " << row.rhs_sum.to_string() << (row.sums_match() ? "" : "   MISMATCH") << '\n';
  }
}

}  // namespace egvi::cert
