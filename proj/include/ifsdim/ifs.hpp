#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

// Place-dependent iterated function systems on a compact real interval:
// finitely many maps S_i together with selection probabilities p_i(x),
// sum_i p_i(x) = 1 and p_i(x) >= p_min > 0 everywhere.

namespace ifsdim {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
};

// Finite union of disjoint half-open intervals [a,b).
class IntervalSet {
 public:
  IntervalSet() = default;
  // Pairs may be given in any order; they must be pairwise disjoint.
  explicit IntervalSet(std::vector<std::pair<double, double>> parts);

  bool contains(double x) const;
  bool empty() const { return parts_.empty(); }
  const std::vector<std::pair<double, double>>& parts() const { return parts_; }

  // Sorted list of all interval endpoints (the boundary of the set).
  std::vector<double> boundary_points() const;

 private:
  std::vector<std::pair<double, double>> parts_;  // sorted, disjoint
};

struct AffineMap {
  double slope = 0.0;
  double offset = 0.0;
  double operator()(double x) const { return slope * x + offset; }
};

using GenericMap = std::function<double(double)>;

class MapDescriptor {
 public:
  MapDescriptor(AffineMap m) : impl_(m) {}
  MapDescriptor(GenericMap m) : impl_(std::move(m)) {}

  double operator()(double x) const;
  bool is_affine() const { return std::holds_alternative<AffineMap>(impl_); }
  const AffineMap& affine() const { return std::get<AffineMap>(impl_); }

 private:
  std::variant<AffineMap, GenericMap> impl_;
};

// Piecewise-constant function on a partition of the domain into half-open
// cells [b_k, b_{k+1}); the last cell also contains the right endpoint.
class StepFunction {
 public:
  // breaks: b_0 < b_1 < ... < b_K spanning the domain; values: K entries.
  StepFunction(std::vector<double> breaks, std::vector<double> values);

  // Indicator-style construction: `inside` on the set, `outside` elsewhere.
  static StepFunction indicator(const Interval& domain, const IntervalSet& set,
                                double inside, double outside);

  double operator()(double x) const;

  // Exact infimum over an interval of nonempty interior intersecting the
  // domain.  Endpoints are treated as open (a cell counts iff it meets the
  // open interval (lo, hi)), which matches strict Bowen-ball membership.
  double min_on(double lo, double hi) const;

  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> breaks_;
  std::vector<double> values_;
};

using GenericProb = std::function<double(double)>;

class ProbFunction {
 public:
  ProbFunction(StepFunction f) : impl_(std::move(f)) {}
  ProbFunction(GenericProb f) : impl_(std::move(f)) {}

  double operator()(double x) const;
  bool is_step() const { return std::holds_alternative<StepFunction>(impl_); }
  const StepFunction& step() const { return std::get<StepFunction>(impl_); }

 private:
  std::variant<StepFunction, GenericProb> impl_;
};

class IfsSystem {
 public:
  // Validates on construction: probability sums, the p_min floor and map
  // closure are probed on a uniform grid plus all step-function breakpoints.
  IfsSystem(Interval domain, std::vector<MapDescriptor> maps,
            std::vector<ProbFunction> probabilities, double p_min,
            std::size_t probe_resolution = 10000);

  int alphabet_size() const { return static_cast<int>(maps_.size()); }
  const Interval& domain() const { return domain_; }
  double p_min() const { return p_min_; }

  double apply_map(int symbol, double x) const;
  double probability(int symbol, double x) const;

  const MapDescriptor& map(int symbol) const { return maps_.at(symbol); }
  const ProbFunction& prob(int symbol) const { return probabilities_.at(symbol); }

  // True when every map is affine and every probability is a step
  // function: estimators then have an exact evaluation path.
  bool exact_path() const { return exact_; }

  void require_in_domain(double x) const;

 private:
  Interval domain_;
  std::vector<MapDescriptor> maps_;
  std::vector<ProbFunction> probabilities_;
  double p_min_;
  bool exact_;
};

using Word = std::vector<int>;

// S_w = S_{w_n} o ... o S_{w_1}; the empty word is the identity.
double compose_map(const IfsSystem& sys, const Word& w, double x);

// p_w(x) = p_{w_1}(x) p_{w_2}(S_{w_1}x) ... ; the empty word gives 1.
double word_probability(const IfsSystem& sys, const Word& w, double x);

// Two maps x/3 and (x+2)/3 on [0,1]; p_1 = p on A and 1-p off A.
// Requires p in (0, 1/2).
IfsSystem example1_system(double p, const IntervalSet& A);

// Constant-probability variant of the same two maps: p_1 = q everywhere.
IfsSystem cantor_system(double q);

// General affine system with constant probabilities (mocks, user systems).
IfsSystem affine_system(Interval domain, std::vector<AffineMap> maps,
                        std::vector<double> probabilities);

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ifsdim
