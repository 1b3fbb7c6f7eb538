#pragma once

#include <stdexcept>
#include <vector>

#include "ifsdim/ifs.hpp"
#include "ifsdim/measure.hpp"

// Entropy-like and Lyapunov-like functionals over Bowen balls: the N-step
// quantities h_N(mu,delta) and lambda_N(mu,delta), their one-step pieces,
// Fekete extrapolation in N, and the one-step bound ratio s(delta,theta).

namespace ifsdim {

struct BoundNotApplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Number of probe points used for generic (non-exact-path) systems.
inline constexpr std::size_t kDefaultProbeCount = 256;

// Word enumeration cap on |I|^N.
inline constexpr std::size_t kDefaultWordBudget = 1024;

// True iff the orbits of y and x under every prefix of w stay strictly
// within delta of each other (n = 0 compares y and x themselves).
bool bowen_ball_contains(const IfsSystem& sys, double x, double y,
                         const Word& w, double delta);

// max( sup_{y in B(x,delta), y != x} log |S_i(x)-S_i(y)| / |x-y| , theta ).
// Exact for affine maps; probe-sampled otherwise.
double one_step_L(const IfsSystem& sys, int symbol, double x, double delta,
                  double theta, std::size_t probes = kDefaultProbeCount);

// inf_{y in B(x,delta)} log p_i(y); exact for step-function probabilities.
double one_step_H(const IfsSystem& sys, int symbol, double x, double delta,
                  std::size_t probes = kDefaultProbeCount);

// -integral sum_w p_w(x) inf_{y in Bowen ball} log p_w(y) d mu(x).
// On the exact path the infimum is bounded below by the sum of one-step
// infima over the interval images of the ball.
double h_N_estimate(const IfsSystem& sys, const EmpiricalMeasure& mu, int N,
                    double delta, std::size_t word_budget = kDefaultWordBudget,
                    std::size_t probes = kDefaultProbeCount);

struct LambdaResult {
  double value;
  bool fully_floored;  // every supremum hit the theta floor
};

LambdaResult lambda_N_details(const IfsSystem& sys, const EmpiricalMeasure& mu,
                              int N, double delta, double theta,
                              std::size_t word_budget = kDefaultWordBudget,
                              std::size_t probes = kDefaultProbeCount);

double lambda_N_estimate(const IfsSystem& sys, const EmpiricalMeasure& mu,
                         int N, double delta, double theta,
                         std::size_t word_budget = kDefaultWordBudget,
                         std::size_t probes = kDefaultProbeCount);

struct EstimateTable {
  std::vector<int> Ns;          // 1..N_max
  std::vector<double> deltas;   // sorted decreasing
  double theta = -20.0;
  // Indexed [N position][delta position].
  std::vector<std::vector<double>> h;
  std::vector<std::vector<double>> lambda;
  std::vector<std::vector<bool>> lambda_floored;
};

EstimateTable build_estimate_table(const IfsSystem& sys,
                                   const EmpiricalMeasure& mu, int N_max,
                                   std::vector<double> deltas, double theta,
                                   std::size_t word_budget = kDefaultWordBudget);

struct Extrapolation {
  double h = 0.0;
  double lambda = 0.0;
  bool lambda_is_neg_inf = false;
};

// delta-limit proxy: the smallest-delta column.  N-limit: by Fekete's
// lemma the limit of a subadditive sequence equals its infimum, so the
// minimum of value/N over computed N is a certified upper bound.
Extrapolation extrapolate(const EstimateTable& table);

// s(delta,theta) = I_H / I_L with
//   I_L = integral sum_i p_i L_i^{delta,theta} d mu,
//   I_H = integral sum_i p_i H_i^delta d mu.
// Throws BoundNotApplicable unless I_L < 0.
double s_ratio(const IfsSystem& sys, const EmpiricalMeasure& mu, double delta,
               double theta);

// CSV: "N,delta,h_value,lambda_value" rows for the whole grid.
void write_table_csv(std::ostream& os, const EstimateTable& table);

}  // namespace ifsdim
