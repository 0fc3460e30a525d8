#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "egvi/cert/identities.hpp"

namespace egvi::cert {

struct SuiteOptions {
  std::uint64_t seed = 0;
  std::optional<std::string> mutation;  // one of mutation_names()
  int unconstrained_trials = 100;
  int expansion_trials = 1000;
  int spot_trials = 100;
};

struct SuiteResult {
  std::vector<IdentityCheck> checks;

  bool all_passed() const;
};

SuiteResult run_certificate_suite(const SuiteOptions& options);

nlohmann::json to_json(const IdentityCheck& check);
nlohmann::json to_json(const SuiteResult& result);
void print_summary(std::ostream& out, const SuiteResult& result);

// Coefficient of one table monomial: numerator in alpha, beta1, beta2 over a
// product of denominator factors, with common factors cancelled.
struct RationalFunction {
  SparsePoly numerator;
  FactorPowers denominator{};

  RationalFunction reduced() const;
  std::string to_string() const;
};

struct TableRow {
  Monomial monomial{};  // in the state and operator variables only
  std::vector<RationalFunction> lhs_terms;
  std::vector<RationalFunction> rhs_terms;
  RationalFunction lhs_sum;
  RationalFunction rhs_sum;

  bool sums_match() const;
};

struct CoefficientTable {
  Branch branch = Branch::kNonneg;
  std::vector<std::string> lhs_names;
  std::vector<std::string> rhs_names;
  std::vector<TableRow> rows;

  const TableRow* find(const Monomial& m) const;
};

CoefficientTable coefficient_table(Branch b);
void print_coefficient_table(std::ostream& out, const CoefficientTable& table);

}  // namespace egvi::cert
