#include "ifsdim/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

namespace ifsdim {

double dimension_bound(double h, double lambda) {
  if (std::isnan(h) || std::isnan(lambda))
    throw std::invalid_argument("dimension_bound: NaN input");
  if (h < 0.0)
    throw BoundNotApplicable("bound not applicable: negative entropy estimate");
  if (lambda == -std::numeric_limits<double>::infinity()) return 0.0;
  if (!(lambda < 0.0))
    throw BoundNotApplicable(
        "bound not applicable: Lyapunov estimate is nonnegative");
  return -h / lambda;
}

namespace {

void check_radii(const std::vector<double>& radii) {
  if (radii.size() < 3)
    throw std::invalid_argument("local dimension: need at least 3 radii");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0))
      throw std::invalid_argument("local dimension: radii must be positive");
    if (k > 0 && !(radii[k] < radii[k - 1]))
      throw std::invalid_argument("local dimension: radii must be strictly decreasing");
  }
}

}  // namespace

std::vector<double> local_dimension_slopes(const EmpiricalMeasure& mu,
                                           const std::vector<double>& radii) {
  check_radii(radii);
  const std::size_t R = radii.size();
  std::vector<double> logr(R);
  for (std::size_t k = 0; k < R; ++k) logr[k] = std::log(radii[k]);
  const double mean_logr =
      std::accumulate(logr.begin(), logr.end(), 0.0) / static_cast<double>(R);
  double sxx = 0.0;
  for (double lr : logr) sxx += (lr - mean_logr) * (lr - mean_logr);

  std::vector<double> slopes(mu.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t j = 0; j < mu.size(); ++j) {
    const double x = mu.support()[j];
    if (mu.ball_mass(x, radii.front()) <= 0.0) continue;
    double sxy = 0.0;
    double mean_logm = 0.0;
    std::vector<double> logm(R);
    bool ok = true;
    for (std::size_t k = 0; k < R; ++k) {
      const double m = mu.ball_mass(x, radii[k]);
      if (!(m > 0.0)) {
        ok = false;
        break;
      }
      logm[k] = std::log(m);
      mean_logm += logm[k];
    }
    if (!ok) continue;
    mean_logm /= static_cast<double>(R);
    for (std::size_t k = 0; k < R; ++k)
      sxy += (logr[k] - mean_logr) * (logm[k] - mean_logm);
    slopes[j] = sxy / sxx;
  }
  return slopes;
}

double local_dimension_estimate(const EmpiricalMeasure& mu,
                                const std::vector<double>& radii,
                                double quantile) {
  if (!(quantile > 0.0 && quantile <= 1.0))
    throw std::invalid_argument("local dimension: quantile must be in (0,1]");
  auto slopes = local_dimension_slopes(mu, radii);
  std::vector<double> valid;
  valid.reserve(slopes.size());
  for (double s : slopes)
    if (!std::isnan(s)) valid.push_back(s);
  if (valid.size() * 2 < slopes.size())
    throw std::runtime_error(
        "local dimension: more than half of the atoms have empty balls");
  std::sort(valid.begin(), valid.end());
  const auto idx = static_cast<std::size_t>(
      quantile * static_cast<double>(valid.size() - 1));
  return valid[idx];
}

BoundReport assemble_report(const IfsSystem& sys, const EmpiricalMeasure& mu,
                            const EstimateTable& table, const RunConfig& cfg) {
  (void)sys;
  BoundReport rep;
  const auto ext = extrapolate(table);
  rep.h = ext.h;
  rep.lambda = ext.lambda;
  rep.lambda_is_neg_inf = ext.lambda_is_neg_inf;
  rep.radii_used = cfg.dim.radii;
  try {
    rep.bound = dimension_bound(ext.h, ext.lambda);
    rep.applicable = true;
  } catch (const BoundNotApplicable& e) {
    rep.applicable = false;
    rep.failure_reason = e.what();
  }
  rep.empirical_dim =
      local_dimension_estimate(mu, cfg.dim.radii, cfg.dim.quantile);
  rep.empirical_dim_median = local_dimension_estimate(mu, cfg.dim.radii, 0.5);
  rep.verdict = rep.applicable &&
                rep.empirical_dim <= rep.bound + cfg.dim.tolerance;
  return rep;
}

BoundReport verify_bound(const IfsSystem& sys, const RunConfig& cfg) {
  const auto traj = sample_trajectory(sys, cfg.chain);
  const auto mu = trajectory_measure(traj);
  const auto table =
      build_estimate_table(sys, mu, cfg.N_max, cfg.deltas, cfg.theta,
                           cfg.word_budget);
  return assemble_report(sys, mu, table, cfg);
}

void write_report(std::ostream& os, const BoundReport& rep) {
  os << "h_estimate " << format_double(rep.h) << '\n';
  os << "lambda_estimate "
     << (rep.lambda_is_neg_inf ? std::string("-inf") : format_double(rep.lambda))
     << '\n';
  if (rep.applicable)
    os << "dimension_bound " << format_double(rep.bound) << '\n';
  else
    os << "dimension_bound not-applicable (" << rep.failure_reason << ")\n";
  os << "empirical_dimension_q " << format_double(rep.empirical_dim) << '\n';
  os << "empirical_dimension_median "
     << format_double(rep.empirical_dim_median) << '\n';
  os << "radii";
  for (double r : rep.radii_used) os << ' ' << format_double(r);
  os << '\n';
  os << "verdict " << (rep.verdict ? "true" : "false") << '\n';
}

void write_report_csv_row(std::ostream& os, const BoundReport& rep) {
  os << "h,lambda,bound,empirical_dim,empirical_dim_median,verdict\n";
  os << format_double(rep.h) << ','
     << (rep.lambda_is_neg_inf ? std::string("-inf") : format_double(rep.lambda))
     << ','
     << (rep.applicable ? format_double(rep.bound) : std::string("not-applicable"))
     << ',' << format_double(rep.empirical_dim) << ','
     << format_double(rep.empirical_dim_median) << ','
     << (rep.verdict ? "true" : "false") << '\n';
}

}  // namespace ifsdim
