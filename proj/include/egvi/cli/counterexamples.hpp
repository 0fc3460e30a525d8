#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "egvi/instances.hpp"

namespace egvi::cli {

inline constexpr double kPrintedValueTolerance = 1e-9;
inline constexpr double kPrintedIterateTolerance = 1e-7;

// An iterate printed alongside a counterexample, e.g. z_2 or z_{1+1/2}.
struct PrintedIterate {
  std::string label;
  int k = 0;
  bool half = false;
  Vector z;
};

struct Counterexample {
  std::string name;
  std::string measure;  // what the series measures, for the output header
  BilinearGameSpec game;
  double eta = 0.1;
  Vector z0;
  int steps = 0;  // EG steps needed for the series
  std::vector<double> printed_values;
  std::vector<PrintedIterate> printed_iterates;
};

const std::vector<std::string>& counterexample_names();
// Throws InvalidArgumentError for unknown names.
Counterexample counterexample(const std::string& name);

struct ComparisonRow {
  std::string label;
  double computed = 0.0;
  double printed = 0.0;
  double deviation = 0.0;  // |computed - printed|, max over coordinates for iterates
};

struct CounterexampleResult {
  std::string name;
  std::string measure;
  std::string domain;  // player box the series was evaluated on
  std::vector<std::string> domain_notes;
  std::vector<ComparisonRow> values;
  std::vector<ComparisonRow> iterates;
  bool values_match = false;
  bool iterates_match = false;
  bool non_monotone = false;

  bool passed() const { return values_match && iterates_match && non_monotone; }
};

// The measure series of a counterexample on its own instance.
std::vector<double> counterexample_series(const Counterexample& cex);
CounterexampleResult run_counterexample(const std::string& name);
void print_counterexample(std::ostream& out, const CounterexampleResult& result);

}  // namespace egvi::cli
