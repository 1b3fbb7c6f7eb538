#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "ifsdim/estimators.hpp"
#include "ifsdim/markov.hpp"
#include "ifsdim/skew.hpp"

using namespace ifsdim;

namespace {

IfsSystem example1_default(double p = 0.3) {
  return example1_system(p, IntervalSet({{0.0, 0.5}}));
}

// Two generic maps each preserving [0, 1/2) and [1/2, 1]; orbits never
// cross between the halves, so the chain cannot be ergodic.
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

}  // namespace

TEST_CASE("forced symbol stream gives the deterministic orbit") {
  auto sys = example1_default();
  SkewState s(sys, 1.0, std::vector<int>{0});
  CHECK(s.point() == 1.0);
  CHECK(s.advance() == 0);
  CHECK(s.point() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  s = skew_step(std::move(s));
  CHECK(s.point() == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(s.step_count() == 2);

  CHECK_THROWS_AS(SkewState(sys, 0.5, std::vector<int>{}), ConfigError);
  CHECK_THROWS_AS(SkewState(sys, 2.0, 1), std::domain_error);
}

TEST_CASE("cylinder frequencies match the fibered word probabilities") {
  auto sys = example1_default(0.3);
  const double x0 = 0.25;
  const int n = 3;
  const int restarts = 100000;
  std::map<int, int> counts;
  for (int r = 0; r < restarts; ++r) {
    SkewState s(sys, x0, static_cast<std::uint64_t>(r) + 1000);
    int code = 0;
    for (int k = 0; k < n; ++k) code |= s.advance() << k;
    ++counts[code];
  }
  for (int code = 0; code < (1 << n); ++code) {
    Word w;
    for (int k = 0; k < n; ++k) w.push_back((code >> k) & 1);
    const double pw = word_probability(sys, w, x0);
    const double freq = static_cast<double>(counts[code]) / restarts;
    const double ci = 4.0 * std::sqrt(pw * (1.0 - pw) / restarts);
    CHECK(std::abs(freq - pw) <= ci + 1e-4);
  }
}

TEST_CASE("birkhoff average of a constant is the constant") {
  auto sys = example1_default();
  SkewState s(sys, 0.2, 7);
  CHECK(birkhoff_average(std::move(s), [](double, int) { return 2.5; }, 100) ==
        2.5);
  SkewState t(sys, 0.2, 7);
  CHECK_THROWS_AS(
      birkhoff_average(std::move(t), [](double, int) { return 0.0; }, 0),
      ConfigError);
}

TEST_CASE("birkhoff average of the contraction log is exact") {
  auto sys = example1_default(0.3);
  SkewState s(sys, 0.4, 11);
  auto obs = [&](double x, int symbol) {
    return one_step_L(sys, symbol, x, 1e-3, -20.0);
  };
  CHECK(birkhoff_average(std::move(s), obs, 2000) ==
        doctest::Approx(-std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("birkhoff average of log probability matches the entropy") {
  const double p = 0.3;
  auto sys = example1_default(p);
  SkewState s(sys, 0.4, 13);
  auto obs = [&](double x, int symbol) {
    return std::log(sys.probability(symbol, x));
  };
  const double avg = birkhoff_average(std::move(s), obs, 200000);
  const double expected = p * std::log(p) + (1 - p) * std::log(1 - p);
  CHECK(std::abs(avg - expected) <= 0.02);
}

TEST_CASE("ergodicity diagnostic passes on the contracting example") {
  auto sys = example1_default(0.3);
  std::vector<NamedObservable> obs{
      {"identity", [](double x, int) { return x; }},
      {"indicator_left", [](double x, int) { return x < 0.5 ? 1.0 : 0.0; }},
      {"symbol", [](double, int s) { return static_cast<double>(s); }}};
  auto rep = ergodicity_diagnostic(sys, obs,
                                   {0.05, 0.15, 0.35, 0.55, 0.75, 0.95},
                                   100000, 0.03, 17);
  CHECK(rep.consistent);
  for (const auto& row : rep.rows) CHECK(row.spread <= 0.03);
}

TEST_CASE("ergodicity diagnostic flags a decomposable system") {
  auto sys = split_system();
  std::vector<NamedObservable> obs{
      {"identity", [](double x, int) { return x; }}};
  auto rep = ergodicity_diagnostic(sys, obs, {0.2, 0.8}, 20000, 0.03, 19);
  CHECK(!rep.consistent);
  CHECK(rep.rows[0].spread > 0.3);
}

TEST_CASE("ergodicity diagnostic needs at least two starts") {
  auto sys = example1_default();
  std::vector<NamedObservable> obs{{"identity", [](double x, int) { return x; }}};
  CHECK_THROWS_AS(ergodicity_diagnostic(sys, obs, {0.5}, 100, 0.03, 1),
                  ConfigError);
}

TEST_CASE("skew orbit marginal agrees with the markov chain") {
  auto sys = example1_default(0.3);
  const std::size_t m = 100000;
  SkewState s(sys, 0.3, 23);
  std::vector<double> pts;
  pts.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    s.advance();
    if (k >= 1000) pts.push_back(s.point());
  }
  EmpiricalMeasure from_skew(std::move(pts),
                             std::vector<double>(m - 1000, 1.0 / (m - 1000)));
  auto traj = sample_trajectory(sys, ChainConfig{.seed = 29, .burn_in = 1000,
                                                 .sample_count = m});
  auto from_chain = trajectory_measure(traj);
  const std::size_t cells = 1 << 12;
  CHECK(fortet_mourier(from_skew.coarsened(sys.domain(), cells),
                       from_chain.coarsened(sys.domain(), cells)) <= 0.02);
}

TEST_CASE("ergodicity report serialization") {
  ErgodicityReport rep;
  rep.tolerance = 0.03;
  rep.consistent = false;
  rep.rows.push_back({"identity", {0.2, 0.8}, 0.6});
  std::stringstream ss;
  write_ergodicity_report(ss, rep);
  const std::string text = ss.str();
  CHECK(text.find("identity") != std::string::npos);
  CHECK(text.find("ergodicity_consistent,false") != std::string::npos);
}
