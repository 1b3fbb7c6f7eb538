#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "ifsdim/ifs.hpp"
#include "ifsdim/measure.hpp"

// The Markov chain attached to an IFS: x_{t+1} = S_i(x_t) with symbol i
// drawn with probability p_i(x_t), the Markov operator acting on discrete
// measures, and Krylov-Bogolyubov Cesaro averaging.

namespace ifsdim {

struct ChainConfig {
  std::uint64_t seed = 0;
  std::size_t burn_in = 1000;
  std::size_t sample_count = 1;
  // Absent => initial point drawn uniformly on the domain.
  std::optional<double> initial_point;
};

struct ChainStep {
  std::size_t step;
  int symbol;
  double point;
};

// One uniform variate in [0,1) with an implementation-pinned mapping, so
// trajectories are bit-identical across platforms for a fixed seed.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Draws symbol i with probability p_i(x) by cumulative inversion in
// ascending symbol order; consumes exactly one variate.
std::pair<int, double> transition_sample(const IfsSystem& sys, double x,
                                         std::mt19937_64& rng);

// sample_count steps after discarding burn_in; reproducible from the seed.
std::vector<ChainStep> sample_trajectory(const IfsSystem& sys,
                                         const ChainConfig& cfg);

EmpiricalMeasure trajectory_measure(const std::vector<ChainStep>& traj);

// Exact Markov operator on a discrete measure:
//   mu P = sum_i sum_j w_j p_i(x_j) delta_{S_i(x_j)}.
EmpiricalMeasure push_forward(const IfsSystem& sys, const EmpiricalMeasure& mu);

// mu_n = (1/n) sum_{m=0}^{n-1} mu_0 P^m.  After each application of P the
// support is snapped to a uniform grid with `coarsen_cells` cells
// (0 disables coarsening; exact but exponential in n).
EmpiricalMeasure krylov_bogolyubov(const IfsSystem& sys,
                                   const EmpiricalMeasure& mu0, std::size_t n,
                                   std::size_t coarsen_cells = 1u << 20);

// CSV: header "step,symbol,point", lossless floats.
void write_trajectory_csv(std::ostream& os, const std::vector<ChainStep>& traj);

}  // namespace ifsdim
