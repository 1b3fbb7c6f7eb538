#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ifsdim/estimators.hpp"
#include "ifsdim/markov.hpp"
#include "ifsdim/measure.hpp"

// The dimension bound -h/lambda and an independent sample-based local
// dimension estimate used to verify the inequality.

namespace ifsdim {

struct DimensionConfig {
  // Geometric radii matched to the ternary geometry of the built-ins.
  std::vector<double> radii = {1.0 / 9, 1.0 / 27, 1.0 / 81, 1.0 / 243,
                               1.0 / 729, 1.0 / 2187, 1.0 / 6561};
  double quantile = 0.1;
  double tolerance = 0.05;
};

struct RunConfig {
  ChainConfig chain{.seed = 0, .burn_in = 1000, .sample_count = 100000,
                    .initial_point = {}};
  int N_max = 5;
  std::vector<double> deltas = {1e-1, 1e-2, 1e-3, 1e-4};
  double theta = -20.0;
  std::size_t word_budget = kDefaultWordBudget;
  DimensionConfig dim;
};

struct BoundReport {
  double h = 0.0;
  double lambda = 0.0;
  bool lambda_is_neg_inf = false;
  bool applicable = false;
  double bound = 0.0;  // valid only when applicable
  double empirical_dim = 0.0;
  double empirical_dim_median = 0.0;
  std::vector<double> radii_used;
  bool verdict = false;
  std::string failure_reason;  // set when !applicable
};

// -h/lambda for finite negative lambda; 0 when lambda is -inf and h is
// finite.  Throws BoundNotApplicable outside the theorem's proviso
// (lambda >= 0 or h < 0) and std::invalid_argument on NaN input.
double dimension_bound(double h, double lambda);

// Per-atom least-squares slope of log ball-mass against log radius; atoms
// with zero mass at the largest radius are skipped (error if more than
// half are).  Returned value is the given lower quantile of the slopes.
double local_dimension_estimate(const EmpiricalMeasure& mu,
                                const std::vector<double>& radii,
                                double quantile);

// Slopes aligned with the support (NaN for skipped atoms); exported for
// plotting.
std::vector<double> local_dimension_slopes(const EmpiricalMeasure& mu,
                                           const std::vector<double>& radii);

// Full pipeline: sample the chain, build the empirical measure, run the
// estimators, evaluate the bound and the empirical dimension.
BoundReport verify_bound(const IfsSystem& sys, const RunConfig& cfg);

BoundReport assemble_report(const IfsSystem& sys, const EmpiricalMeasure& mu,
                            const EstimateTable& table, const RunConfig& cfg);

void write_report(std::ostream& os, const BoundReport& report);
void write_report_csv_row(std::ostream& os, const BoundReport& report);

}  // namespace ifsdim
