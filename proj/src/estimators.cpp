#include "ifsdim/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "ifsdim/kernels.hpp"

namespace ifsdim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<Word> enumerate_words(int alphabet, int N, std::size_t budget) {
  double count = std::pow(static_cast<double>(alphabet), N);
  if (count > static_cast<double>(budget))
    throw BudgetExceeded("word enumeration budget exceeded: |I|^N > " +
                         std::to_string(budget));
  std::vector<Word> words;
  words.reserve(static_cast<std::size_t>(count));
  Word w(static_cast<std::size_t>(N), 0);
  while (true) {
    words.push_back(w);
    int k = N - 1;
    while (k >= 0 && w[static_cast<std::size_t>(k)] == alphabet - 1) {
      w[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
    ++w[static_cast<std::size_t>(k)];
  }
  return words;
}

// Probe points of B(x,delta) intersected with the domain: equispaced grid
// plus x itself.
std::vector<double> ball_probes(const IfsSystem& sys, double x, double delta,
                                std::size_t probes) {
  const double lo = std::max(sys.domain().lo, x - delta);
  const double hi = std::min(sys.domain().hi, x + delta);
  std::vector<double> pts;
  pts.reserve(probes + 2);
  for (std::size_t k = 0; k <= probes; ++k)
    pts.push_back(lo + (hi - lo) * static_cast<double>(k) /
                           static_cast<double>(probes));
  pts.push_back(x);
  return pts;
}

// Atom-independent per-word data on the exact (affine + step) path.  The
// Bowen ball around x is the interval of radius delta / max_n c_n where
// c_n is the cumulative slope-magnitude product, and its image at step k
// is an interval of radius r * c_k around the orbit point.
struct WordPre {
  const Word* w;
  std::vector<double> cum;     // c_0 = 1, ..., c_{N-1}
  double radius_over_delta;    // 1 / max_{0<=n<=N} c_n
  double log_slope_sum;        // sum_k log |a_k|; -inf if some slope is 0
};

std::vector<WordPre> precompute_exact(const IfsSystem& sys,
                                      const std::vector<Word>& words) {
  std::vector<double> abs_slope(static_cast<std::size_t>(sys.alphabet_size()));
  std::vector<double> log_slope(abs_slope.size());
  for (int i = 0; i < sys.alphabet_size(); ++i) {
    abs_slope[static_cast<std::size_t>(i)] = std::abs(sys.map(i).affine().slope);
    log_slope[static_cast<std::size_t>(i)] =
        std::log(abs_slope[static_cast<std::size_t>(i)]);
  }
  std::vector<WordPre> out;
  out.reserve(words.size());
  for (const auto& w : words) {
    WordPre p;
    p.w = &w;
    p.cum.resize(w.size());
    double c = 1.0;
    double maxc = 1.0;
    double ls = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      p.cum[k] = c;
      const auto s = static_cast<std::size_t>(w[k]);
      ls += log_slope[s];
      c *= abs_slope[s];
      maxc = std::max(maxc, c);
    }
    p.radius_over_delta = 1.0 / maxc;
    p.log_slope_sum = ls;
    out.push_back(std::move(p));
  }
  return out;
}

// Extended-precision reduction: the headline estimates carry a 1e-12
// exactness contract that a naive double accumulation over 1e5 atoms
// cannot meet.
double accurate_dot(const std::vector<double>& w, const std::vector<double>& v) {
  long double acc = 0.0L;
  for (std::size_t i = 0; i < w.size(); ++i)
    acc += static_cast<long double>(w[i]) * static_cast<long double>(v[i]);
  return static_cast<double>(acc);
}

double word_prob_at(const IfsSystem& sys, const Word& w, double x) {
  double z = x;
  double p = 1.0;
  for (int s : w) {
    p *= sys.probability(s, z);
    z = sys.apply_map(s, z);
  }
  return p;
}

}  // namespace

bool bowen_ball_contains(const IfsSystem& sys, double x, double y,
                         const Word& w, double delta) {
  if (!(delta > 0.0))
    throw std::invalid_argument("bowen ball: delta must be positive");
  double zx = x;
  double zy = y;
  if (std::abs(zx - zy) >= delta) return false;
  for (int s : w) {
    zx = sys.apply_map(s, zx);
    zy = sys.apply_map(s, zy);
    if (std::abs(zx - zy) >= delta) return false;
  }
  return true;
}

double one_step_L(const IfsSystem& sys, int symbol, double x, double delta,
                  double theta, std::size_t probes) {
  if (!(delta > 0.0)) throw std::invalid_argument("one_step_L: delta must be positive");
  if (!(theta < 0.0)) throw std::invalid_argument("one_step_L: theta must be negative");
  if (sys.map(symbol).is_affine()) {
    const double a = std::abs(sys.map(symbol).affine().slope);
    return std::max(std::log(a), theta);
  }
  double sup = kNegInf;
  for (double y : ball_probes(sys, x, delta, probes)) {
    if (y == x) continue;
    const double num = std::abs(sys.apply_map(symbol, x) - sys.apply_map(symbol, y));
    sup = std::max(sup, std::log(num / std::abs(x - y)));
  }
  return std::max(sup, theta);
}

double one_step_H(const IfsSystem& sys, int symbol, double x, double delta,
                  std::size_t probes) {
  if (!(delta > 0.0)) throw std::invalid_argument("one_step_H: delta must be positive");
  if (sys.prob(symbol).is_step())
    return std::log(sys.prob(symbol).step().min_on(x - delta, x + delta));
  double inf = std::numeric_limits<double>::infinity();
  for (double y : ball_probes(sys, x, delta, probes))
    inf = std::min(inf, std::log(sys.probability(symbol, y)));
  return inf;
}

double h_N_estimate(const IfsSystem& sys, const EmpiricalMeasure& mu, int N,
                    double delta, std::size_t word_budget, std::size_t probes) {
  if (N < 1) throw std::invalid_argument("h_N: N must be at least 1");
  if (!(delta > 0.0)) throw std::invalid_argument("h_N: delta must be positive");
  const auto words = enumerate_words(sys.alphabet_size(), N, word_budget);
  const auto& xs = mu.support();
  std::vector<double> vals(xs.size());
  if (sys.exact_path()) {
    const auto pre = precompute_exact(sys, words);
    std::vector<const StepFunction*> steps;
    std::vector<AffineMap> maps;
    for (int i = 0; i < sys.alphabet_size(); ++i) {
      steps.push_back(&sys.prob(i).step());
      maps.push_back(sys.map(i).affine());
    }
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double x = xs[j];
      double acc = 0.0;
      for (const auto& wp : pre) {
        const double r = delta * wp.radius_over_delta;
        double z = x;
        double prob = 1.0;
        double inf_log = 0.0;
        for (std::size_t k = 0; k < wp.w->size(); ++k) {
          const auto s = static_cast<std::size_t>((*wp.w)[k]);
          const double rad = r * wp.cum[k];
          inf_log += std::log(steps[s]->min_on(z - rad, z + rad));
          prob *= (*steps[s])(z);
          z = maps[s](z);
        }
        acc += prob * inf_log;
      }
      vals[j] = acc;
    }
  } else {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double x = xs[j];
      const auto ys = ball_probes(sys, x, delta, probes);
      double acc = 0.0;
      for (const auto& w : words) {
        double inf_log = std::numeric_limits<double>::infinity();
        for (double y : ys) {
          if (!bowen_ball_contains(sys, x, y, w, delta)) continue;
          inf_log = std::min(inf_log, std::log(word_prob_at(sys, w, y)));
        }
        acc += word_prob_at(sys, w, x) * inf_log;
      }
      vals[j] = acc;
    }
  }
  return -accurate_dot(mu.weights(), vals);
}

LambdaResult lambda_N_details(const IfsSystem& sys, const EmpiricalMeasure& mu,
                              int N, double delta, double theta,
                              std::size_t word_budget, std::size_t probes) {
  if (N < 1) throw std::invalid_argument("lambda_N: N must be at least 1");
  if (!(delta > 0.0)) throw std::invalid_argument("lambda_N: delta must be positive");
  if (!(theta < 0.0)) throw std::invalid_argument("lambda_N: theta must be negative");
  const auto words = enumerate_words(sys.alphabet_size(), N, word_budget);
  const auto& xs = mu.support();
  std::vector<double> vals(xs.size());
  bool fully_floored = true;
  if (sys.exact_path()) {
    // The end-to-end ratio equals the slope-magnitude product for every
    // y, so the per-word supremum is exact and atom-independent.
    const auto pre = precompute_exact(sys, words);
    std::vector<double> word_val(pre.size());
    for (std::size_t t = 0; t < pre.size(); ++t) {
      word_val[t] = std::max(pre[t].log_slope_sum, theta);
      if (pre[t].log_slope_sum >= theta) fully_floored = false;
    }
    for (std::size_t j = 0; j < xs.size(); ++j) {
      double acc = 0.0;
      for (std::size_t t = 0; t < pre.size(); ++t)
        acc += word_prob_at(sys, *pre[t].w, xs[j]) * word_val[t];
      vals[j] = acc;
    }
  } else {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double x = xs[j];
      const auto ys = ball_probes(sys, x, delta, probes);
      double acc = 0.0;
      for (const auto& w : words) {
        double sup = kNegInf;
        const double zx = compose_map(sys, w, x);
        for (double y : ys) {
          if (y == x) continue;
          if (!bowen_ball_contains(sys, x, y, w, delta)) continue;
          const double zy = compose_map(sys, w, y);
          sup = std::max(sup, std::log(std::abs(zx - zy) / std::abs(x - y)));
        }
        const double wp = word_prob_at(sys, w, x);
        if (sup >= theta && wp > 0.0 && mu.weights()[j] > 0.0)
          fully_floored = false;
        acc += wp * std::max(sup, theta);
      }
      vals[j] = acc;
    }
  }
  return {accurate_dot(mu.weights(), vals), fully_floored};
}

double lambda_N_estimate(const IfsSystem& sys, const EmpiricalMeasure& mu,
                         int N, double delta, double theta,
                         std::size_t word_budget, std::size_t probes) {
  return lambda_N_details(sys, mu, N, delta, theta, word_budget, probes).value;
}

EstimateTable build_estimate_table(const IfsSystem& sys,
                                   const EmpiricalMeasure& mu, int N_max,
                                   std::vector<double> deltas, double theta,
                                   std::size_t word_budget) {
  if (N_max < 1) throw std::invalid_argument("N_max must be at least 1");
  if (deltas.empty()) throw std::invalid_argument("delta grid must be nonempty");
  std::sort(deltas.begin(), deltas.end(), std::greater<>());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
  EstimateTable t;
  t.deltas = std::move(deltas);
  t.theta = theta;
  for (int N = 1; N <= N_max; ++N) {
    t.Ns.push_back(N);
    std::vector<double> hrow, lrow;
    std::vector<bool> frow;
    for (double d : t.deltas) {
      hrow.push_back(h_N_estimate(sys, mu, N, d, word_budget));
      auto lr = lambda_N_details(sys, mu, N, d, theta, word_budget);
      lrow.push_back(lr.value);
      frow.push_back(lr.fully_floored);
    }
    t.h.push_back(std::move(hrow));
    t.lambda.push_back(std::move(lrow));
    t.lambda_floored.push_back(std::move(frow));
  }
  return t;
}

Extrapolation extrapolate(const EstimateTable& table) {
  if (table.Ns.empty() || table.deltas.empty())
    throw std::invalid_argument("extrapolate: empty table");
  Extrapolation out;
  out.h = std::numeric_limits<double>::infinity();
  out.lambda = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < table.Ns.size(); ++i) {
    const double N = static_cast<double>(table.Ns[i]);
    out.h = std::min(out.h, table.h[i].back() / N);
    out.lambda = std::min(out.lambda, table.lambda[i].back() / N);
    if (table.lambda_floored[i].back()) out.lambda_is_neg_inf = true;
  }
  if (out.lambda_is_neg_inf) out.lambda = kNegInf;
  return out;
}

double s_ratio(const IfsSystem& sys, const EmpiricalMeasure& mu, double delta,
               double theta) {
  const auto& xs = mu.support();
  std::vector<double> lvals(xs.size());
  std::vector<double> hvals(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    double l = 0.0, h = 0.0;
    for (int i = 0; i < sys.alphabet_size(); ++i) {
      const double pi = sys.probability(i, xs[j]);
      l += pi * one_step_L(sys, i, xs[j], delta, theta);
      h += pi * one_step_H(sys, i, xs[j], delta);
    }
    lvals[j] = l;
    hvals[j] = h;
  }
  const double I_L = kernels::dot(mu.weights(), lvals);
  const double I_H = kernels::dot(mu.weights(), hvals);
  if (!(I_L < 0.0))
    throw BoundNotApplicable(
        "bound not applicable: one-step Lyapunov integral is nonnegative");
  return I_H / I_L;
}

void write_table_csv(std::ostream& os, const EstimateTable& table) {
  os << "N,delta,h_value,lambda_value\n";
  for (std::size_t i = 0; i < table.Ns.size(); ++i)
    for (std::size_t d = 0; d < table.deltas.size(); ++d)
      os << table.Ns[i] << ',' << format_double(table.deltas[d]) << ','
         << format_double(table.h[i][d]) << ','
         << format_double(table.lambda[i][d]) << '\n';
}

}  // namespace ifsdim
