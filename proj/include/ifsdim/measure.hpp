#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ifsdim/ifs.hpp"

// Finite weighted point sets standing in for Borel measures on the line,
// and the Fortet-Mourier (bounded-Lipschitz) distance between them.

namespace ifsdim {

class EmpiricalMeasure {
 public:
  EmpiricalMeasure() = default;
  // Sorts the support and merges points closer than 1e-15.
  EmpiricalMeasure(std::vector<double> points, std::vector<double> weights);

  static EmpiricalMeasure dirac(double x, double mass = 1.0);
  // Equal weights summing to 1.
  static EmpiricalMeasure from_samples(std::span<const double> points);

  std::size_t size() const { return support_.size(); }
  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& weights() const { return weights_; }
  double total_mass() const { return total_mass_; }

  // Mass of the closed ball B(x,r); requires r > 0.
  double ball_mass(double x, double r) const;

  // Mass of the half-open interval [lo, hi).
  double mass_in(double lo, double hi) const;

  EmpiricalMeasure scaled(double factor) const;
  EmpiricalMeasure merged_with(const EmpiricalMeasure& other) const;

  // Snap every support point to the nearest node of a uniform grid with
  // `cells` cells over `domain` (cells >= 2); merges coinciding nodes.
  EmpiricalMeasure coarsened(const Interval& domain, std::size_t cells) const;

 private:
  std::vector<double> support_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;  // cumulative_[k] = sum of weights_[0..k-1]
  double total_mass_ = 0.0;
};

// Exact value of sup { |integral f d(mu-nu)| : f 1-Lipschitz, |f| <= 1 }.
// Solved as a linear program over the merged support with adjacent
// Lipschitz constraints, by dynamic programming on concave piecewise
// linear value functions.
double fortet_mourier(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu);

// CSV serialization: header "point,weight", shortest round-trip floats.
void write_measure_csv(std::ostream& os, const EmpiricalMeasure& mu);
EmpiricalMeasure read_measure_csv(std::istream& is);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

}  // namespace ifsdim
