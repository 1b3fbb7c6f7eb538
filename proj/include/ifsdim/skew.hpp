#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ifsdim/ifs.hpp"

// The skew product (x, omega) -> (S_{omega_1}(x), sigma omega) on
// X x Sigma.  The symbol sequence is generated lazily with the
// place-dependent law, which realizes sampling from the fibered measure
// p_x: the first n symbols drawn from (x, .) occur with probability
// p_{omega^n}(x).

namespace ifsdim {

class SkewState {
 public:
  SkewState(const IfsSystem& sys, double x, std::uint64_t seed);
  // Deterministic symbol source (mocks and exact orbit tests); cycles
  // through `symbols`.
  SkewState(const IfsSystem& sys, double x, std::vector<int> symbols);

  double point() const { return x_; }
  std::size_t step_count() const { return steps_; }
  const IfsSystem& system() const { return *sys_; }

  // Draws/consumes one symbol and applies the corresponding map.
  int advance();

 private:
  const IfsSystem* sys_;
  double x_;
  std::mt19937_64 rng_;
  std::optional<std::vector<int>> forced_;
  std::size_t forced_pos_ = 0;
  std::size_t steps_ = 0;
};

SkewState skew_step(SkewState s);

using Observable = std::function<double(double point, int symbol)>;

// (1/m) sum_{k<m} observable(x_k, omega_{k+1}) along the skew orbit.
double birkhoff_average(SkewState s0, const Observable& obs, std::size_t m);

struct NamedObservable {
  std::string name;
  Observable fn;
};

struct ErgodicityReport {
  struct Row {
    std::string name;
    std::vector<double> averages;  // one per start
    double spread;                 // max - min
  };
  std::vector<Row> rows;
  double tolerance;
  bool consistent;  // all spreads within tolerance
};

// Birkhoff averages of each observable from each start; the diagnostic
// can refute ergodicity (large spread), never prove it.
ErgodicityReport ergodicity_diagnostic(const IfsSystem& sys,
                                       const std::vector<NamedObservable>& obs,
                                       const std::vector<double>& starts,
                                       std::size_t m, double tolerance = 0.05,
                                       std::uint64_t seed = 0);

void write_ergodicity_report(std::ostream& os, const ErgodicityReport& rep);

}  // namespace ifsdim
