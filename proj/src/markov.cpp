#include "ifsdim/markov.hpp"

#include <ostream>
#include <stdexcept>

#include "ifsdim/kernels.hpp"

namespace ifsdim {

std::pair<int, double> transition_sample(const IfsSystem& sys, double x,
                                         std::mt19937_64& rng) {
  sys.require_in_domain(x);
  const double u = uniform01(rng);
  double cum = 0.0;
  const int m = sys.alphabet_size();
  for (int i = 0; i < m; ++i) {
    cum += sys.probability(i, x);
    if (u < cum) return {i, sys.apply_map(i, x)};
  }
  return {m - 1, sys.apply_map(m - 1, x)};  // u landed in rounding slack
}

std::vector<ChainStep> sample_trajectory(const IfsSystem& sys,
                                         const ChainConfig& cfg) {
  if (cfg.sample_count < 1)
    throw ConfigError("sample_count must be at least 1");
  std::mt19937_64 rng(cfg.seed);
  double x;
  if (cfg.initial_point) {
    x = *cfg.initial_point;
    sys.require_in_domain(x);
  } else {
    x = sys.domain().lo + sys.domain().length() * uniform01(rng);
  }
  for (std::size_t t = 0; t < cfg.burn_in; ++t)
    x = transition_sample(sys, x, rng).second;
  std::vector<ChainStep> out;
  out.reserve(cfg.sample_count);
  for (std::size_t t = 0; t < cfg.sample_count; ++t) {
    auto [i, y] = transition_sample(sys, x, rng);
    out.push_back({t, i, y});
    x = y;
  }
  return out;
}

EmpiricalMeasure trajectory_measure(const std::vector<ChainStep>& traj) {
  std::vector<double> pts;
  pts.reserve(traj.size());
  for (const auto& s : traj) pts.push_back(s.point);
  return EmpiricalMeasure::from_samples(pts);
}

EmpiricalMeasure push_forward(const IfsSystem& sys, const EmpiricalMeasure& mu) {
  const auto& xs = mu.support();
  const auto& ws = mu.weights();
  const std::size_t n = xs.size();
  const int m = sys.alphabet_size();
  std::vector<double> pts;
  std::vector<double> w;
  pts.reserve(n * static_cast<std::size_t>(m));
  w.reserve(n * static_cast<std::size_t>(m));
  std::vector<double> img(n);
  for (int i = 0; i < m; ++i) {
    if (sys.map(i).is_affine()) {
      const auto& a = sys.map(i).affine();
      kernels::axpb(a.slope, xs, a.offset, img);
    } else {
      for (std::size_t j = 0; j < n; ++j) img[j] = sys.apply_map(i, xs[j]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      pts.push_back(img[j]);
      w.push_back(ws[j] * sys.probability(i, xs[j]));
    }
  }
  return EmpiricalMeasure(std::move(pts), std::move(w));
}

EmpiricalMeasure krylov_bogolyubov(const IfsSystem& sys,
                                   const EmpiricalMeasure& mu0, std::size_t n,
                                   std::size_t coarsen_cells) {
  if (n < 1) throw ConfigError("krylov_bogolyubov: n must be at least 1");
  auto maybe_coarsen = [&](const EmpiricalMeasure& m) {
    return coarsen_cells == 0 ? m : m.coarsened(sys.domain(), coarsen_cells);
  };
  EmpiricalMeasure current = maybe_coarsen(mu0);
  EmpiricalMeasure acc = current;
  for (std::size_t step = 1; step < n; ++step) {
    current = maybe_coarsen(push_forward(sys, current));
    acc = acc.merged_with(current);
  }
  return acc.scaled(1.0 / static_cast<double>(n));
}

void write_trajectory_csv(std::ostream& os, const std::vector<ChainStep>& traj) {
  os << "step,symbol,point\n";
  for (const auto& s : traj)
    os << s.step << ',' << s.symbol << ',' << format_double(s.point) << '\n';
}

}  // namespace ifsdim
