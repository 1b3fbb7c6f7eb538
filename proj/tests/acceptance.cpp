// End-to-end validation battery.  Each numbered check prints a single
// pass/fail line; the process exits nonzero if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ifsdim/dimension.hpp"
#include "ifsdim/estimators.hpp"
#include "ifsdim/markov.hpp"
#include "ifsdim/skew.hpp"

using namespace ifsdim;
using Clock = std::chrono::steady_clock;

namespace {

bool all_passed = true;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << detail << ")\n";
  all_passed = all_passed && ok;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

IfsSystem example1_default(double p) {
  return example1_system(p, IntervalSet({{0.0, 0.5}}));
}

EmpiricalMeasure sample_measure(const IfsSystem& sys, std::uint64_t seed,
                                std::size_t n = 100000) {
  auto traj = sample_trajectory(
      sys, ChainConfig{.seed = seed, .burn_in = 1000, .sample_count = n});
  return trajectory_measure(traj);
}

double entropy(double p) { return -p * std::log(p) - (1 - p) * std::log(1 - p); }

// Brute-force Fortet-Mourier maximizer over test functions restricted to
// the value grid -1.00, -0.99, ..., 1.00 (independent of the exact solver).
double fm_grid_oracle(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  std::vector<double> xs, ds;
  auto add = [&](double x, double d) {
    for (std::size_t k = 0; k < xs.size(); ++k)
      if (xs[k] == x) {
        ds[k] += d;
        return;
      }
    xs.push_back(x);
    ds.push_back(d);
  };
  for (std::size_t k = 0; k < mu.size(); ++k) add(mu.support()[k], mu.weights()[k]);
  for (std::size_t k = 0; k < nu.size(); ++k) add(nu.support()[k], -nu.weights()[k]);
  std::vector<std::size_t> order(xs.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  constexpr int kGrid = 201;
  auto fval = [](int g) { return -1.0 + 0.01 * g; };
  std::vector<double> best(kGrid);
  for (int g = 0; g < kGrid; ++g) best[g] = ds[order[0]] * fval(g);
  for (std::size_t j = 1; j < order.size(); ++j) {
    const double gap = xs[order[j]] - xs[order[j - 1]];
    std::vector<double> next(kGrid, -1e300);
    for (int g = 0; g < kGrid; ++g) {
      for (int g2 = 0; g2 < kGrid; ++g2) {
        if (std::abs(fval(g2) - fval(g)) > gap + 1e-12) continue;
        next[g] = std::max(next[g], best[g2]);
      }
      next[g] += ds[order[j]] * fval(g);
    }
    best = std::move(next);
  }
  return std::max(*std::max_element(best.begin(), best.end()), 0.0);
}

EmpiricalMeasure random_measure(std::mt19937_64& rng, std::size_t max_pts) {
  std::uniform_real_distribution<double> ux(0.0, 1.0);
  std::size_t n = 1 + rng() % max_pts;
  std::vector<double> pts, w;
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    pts.push_back(ux(rng));
    w.push_back(ux(rng));
    total += w.back();
  }
  const double scale = ux(rng) / std::max(total, 1e-12);
  for (auto& x : w) x *= scale;
  return EmpiricalMeasure(std::move(pts), std::move(w));
}

IfsSystem split_system() {
  std::vector<MapDescriptor> maps{
      GenericMap([](double x) {
        return x < 0.5 ? x / 2.0 : 0.75 + (x - 0.75) / 2.0;
      }),
      GenericMap([](double x) {
        return x < 0.5 ? 0.1 + (x - 0.1) / 3.0 : 0.9 + (x - 0.9) / 3.0;
      })};
  std::vector<ProbFunction> probs{StepFunction({0.0, 1.0}, {0.5}),
                                  StepFunction({0.0, 1.0}, {0.5})};
  return IfsSystem(Interval{0.0, 1.0}, std::move(maps), std::move(probs), 0.5,
                   64);
}

void check1_lyapunov_exactness() {
  const auto t0 = Clock::now();
  auto sys = example1_default(0.3);
  auto mu = sample_measure(sys, 101);
  double worst = 0.0;
  for (int N = 1; N <= 5; ++N)
    for (double d : {1e-1, 1e-2, 1e-3, 1e-4})
      worst = std::max(worst, std::abs(lambda_N_estimate(sys, mu, N, d, -20.0) +
                                       N * std::log(3.0)));
  const double dt = seconds_since(t0);
  report("1_lyapunov_exactness", worst <= 1e-12 && dt < 10.0,
         "max |lambda_N + N log 3| = " + format_double(worst) + ", " +
             format_double(dt) + " s");
}

void check2_entropy_limit() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (double p : {0.2, 0.3, 0.4}) {
    auto sys = example1_default(p);
    auto mu = sample_measure(sys, 211 + static_cast<std::uint64_t>(p * 100));
    const double per_step = h_N_estimate(sys, mu, 3, 1e-3) / 3.0;
    worst = std::max(worst, std::abs(per_step - entropy(p)));
  }
  const double dt = seconds_since(t0);
  report("2_entropy_limit", worst <= 0.02 && dt < 60.0,
         "max |h_3/3 - H(p)| = " + format_double(worst) + ", " +
             format_double(dt) + " s");
}

void check3_bound_reproduction() {
  bool ok = true;
  std::ostringstream detail;
  for (double p : {0.2, 0.3, 0.4}) {
    const std::string cmd = std::string(IFSDIM_CLI_PATH) +
                            " check-example --p " + format_double(p) +
                            " --seed 7 > /dev/null 2>&1";
    const int code = WEXITSTATUS(std::system(cmd.c_str()));
    if (code != 0) ok = false;
    detail << "p=" << format_double(p) << " exit=" << code << ' ';
  }
  report("3_bound_reproduction", ok, detail.str());
}

void check4_atom_freeness() {
  bool ok = true;
  double worst_excess = -1.0;
  for (double p : {0.2, 0.3, 0.4}) {
    auto sys = example1_default(p);
    const std::size_t n = 100000;
    auto mu = sample_measure(sys, 307 + static_cast<std::uint64_t>(p * 100), n);
    for (int level = 1; level <= 6; ++level) {
      const double width = std::pow(3.0, -level);
      const double cap = std::pow(1.0 - p, level);
      const double slack = 3.0 * std::sqrt(cap / static_cast<double>(n));
      for (int k = 0; k * width < 1.0; ++k) {
        const double m = mu.mass_in(k * width, (k + 1) * width);
        worst_excess = std::max(worst_excess, m - cap - slack);
        if (m > cap + slack) ok = false;
      }
    }
  }
  report("4_atom_freeness", ok,
         "worst mass excess = " + format_double(worst_excess));
}

void check5_averaging_convergence() {
  auto sys = example1_default(0.3);
  auto mu0 = EmpiricalMeasure::dirac(0.2);
  bool ok = true;
  double worst_exact = 0.0;
  for (std::size_t n = 1; n <= 8; ++n) {
    auto mu_n = krylov_bogolyubov(sys, mu0, n, 0);
    const double lhs = fortet_mourier(mu_n, push_forward(sys, mu_n));
    EmpiricalMeasure iter = mu0;
    for (std::size_t k = 0; k < n; ++k) iter = push_forward(sys, iter);
    const double rhs = fortet_mourier(mu0, iter) / static_cast<double>(n);
    worst_exact = std::max(worst_exact, std::abs(lhs - rhs));
    if (std::abs(lhs - rhs) > 1e-9) ok = false;
  }
  const std::size_t cells = 1 << 12;
  const double width = 1.0 / static_cast<double>(cells);
  double worst_coarse = -1.0;
  for (std::size_t n : {10u, 100u, 1000u}) {
    auto mu_n = krylov_bogolyubov(sys, mu0, n, cells);
    auto pushed = push_forward(sys, mu_n).coarsened(sys.domain(), cells);
    const double d = fortet_mourier(mu_n, pushed);
    const double cap = 2.0 / static_cast<double>(n) + 2.0 * width;
    worst_coarse = std::max(worst_coarse, d - cap);
    if (d > cap) ok = false;
  }
  report("5_averaging_convergence", ok,
         "telescoping gap = " + format_double(worst_exact) +
             ", coarsened excess = " + format_double(worst_coarse));
}

void check6_fm_oracle() {
  std::mt19937_64 rng(601);
  bool ok = true;
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    auto mu = random_measure(rng, 4);
    auto nu = random_measure(rng, 4);
    const double gap = std::abs(fortet_mourier(mu, nu) - fm_grid_oracle(mu, nu));
    worst = std::max(worst, gap);
    if (gap > 2e-2) ok = false;
  }
  double worst_axiom = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    auto a = random_measure(rng, 5);
    auto b = random_measure(rng, 5);
    auto c = random_measure(rng, 5);
    const double dab = fortet_mourier(a, b);
    if (dab != fortet_mourier(b, a)) ok = false;
    const double viol = dab - fortet_mourier(a, c) - fortet_mourier(c, b);
    worst_axiom = std::max(worst_axiom, viol);
    if (viol > 1e-9) ok = false;
  }
  report("6_fm_oracle", ok,
         "max oracle gap = " + format_double(worst) +
             ", max triangle violation = " + format_double(worst_axiom));
}

void check7_subadditivity() {
  bool ok = true;
  // exactly known invariant measure of the constant-probability system
  const double q = 0.4;
  auto cantor = cantor_system(q);
  std::vector<double> pts, w;
  for (int code = 0; code < (1 << 8); ++code) {
    double x = 0.3;
    double pw = 1.0;
    for (int k = 0; k < 8; ++k) {
      const int s = (code >> k) & 1;
      pw *= (s == 0 ? q : 1.0 - q);
      x = cantor.apply_map(s, x);
    }
    pts.push_back(x);
    w.push_back(pw);
  }
  EmpiricalMeasure exact(std::move(pts), std::move(w));

  auto ex = example1_default(0.3);
  auto emp = sample_measure(ex, 701, 20000);

  auto run_suite = [&ok](const IfsSystem& sys, const EmpiricalMeasure& mu,
                         double tol) {
    const double delta = 1e-3;
    for (int n1 = 1; n1 <= 3; ++n1)
      for (int n2 = 1; n1 + n2 <= 6; ++n2) {
        if (h_N_estimate(sys, mu, n1 + n2, delta) >
            h_N_estimate(sys, mu, n1, delta) + h_N_estimate(sys, mu, n2, delta) +
                tol)
          ok = false;
        if (lambda_N_estimate(sys, mu, n1 + n2, delta, -20.0) >
            lambda_N_estimate(sys, mu, n1, delta, -20.0) +
                lambda_N_estimate(sys, mu, n2, delta, -20.0) + tol)
          ok = false;
      }
    for (int N : {1, 2, 3}) {
      double prev_h = -1e300, prev_l = -1e300;
      for (double d : {1e-4, 1e-3, 1e-2, 1e-1}) {
        const double h = h_N_estimate(sys, mu, N, d);
        const double l = lambda_N_estimate(sys, mu, N, d, -20.0);
        if (h < prev_h - tol || l < prev_l - tol) ok = false;
        prev_h = h;
        prev_l = l;
      }
    }
  };
  run_suite(cantor, exact, 1e-9);
  run_suite(ex, emp, 5e-2);
  report("7_subadditivity_monotonicity", ok,
         ok ? "all inequalities hold" : "violation found");
}

void check8_cantor_sanity() {
  const auto t0 = Clock::now();
  auto sys = cantor_system(0.5);
  RunConfig cfg;
  cfg.chain = {.seed = 801, .burn_in = 1000, .sample_count = 100000};
  auto rep = verify_bound(sys, cfg);
  const double target = std::log(2.0) / std::log(3.0);
  const double dt = seconds_since(t0);
  const bool ok = rep.applicable && std::abs(rep.bound - target) <= 0.02 &&
                  std::abs(rep.empirical_dim_median - target) <= 0.05 &&
                  dt < 60.0;
  report("8_cantor_sanity", ok,
         "bound = " + format_double(rep.bound) +
             ", empirical = " + format_double(rep.empirical_dim_median) + ", " +
             format_double(dt) + " s");
}

void check9_ergodicity_diagnostic() {
  auto sys = example1_default(0.3);
  std::vector<NamedObservable> obs{
      {"x", [](double x, int) { return x; }},
      {"x2", [](double x, int) { return x * x; }},
      {"log_p",
       [&sys](double x, int i) { return std::log(sys.probability(i, x)); }}};
  std::vector<double> starts;
  for (int k = 0; k < 10; ++k) starts.push_back(k / 9.0);
  auto good = ergodicity_diagnostic(sys, obs, starts, 100000, 0.03, 901);
  double max_spread = 0.0;
  for (const auto& row : good.rows) max_spread = std::max(max_spread, row.spread);

  auto mock = split_system();
  std::vector<NamedObservable> id{{"x", [](double x, int) { return x; }}};
  auto bad = ergodicity_diagnostic(mock, id, {0.2, 0.8}, 20000, 0.03, 903);

  report("9_ergodicity_diagnostic", good.consistent && !bad.consistent,
         "max spread = " + format_double(max_spread) +
             ", mock spread = " + format_double(bad.rows[0].spread));
}

}  // namespace

int main() {
  check1_lyapunov_exactness();
  check2_entropy_limit();
  check3_bound_reproduction();
  check4_atom_freeness();
  check5_averaging_convergence();
  check6_fm_oracle();
  check7_subadditivity();
  check8_cantor_sanity();
  check9_ergodicity_diagnostic();
  return all_passed ? EXIT_SUCCESS : EXIT_FAILURE;
}
