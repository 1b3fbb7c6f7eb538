#include "ifsdim/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace ifsdim {

IntervalSet::IntervalSet(std::vector<std::pair<double, double>> parts)
    : parts_(std::move(parts)) {
  for (auto& [a, b] : parts_)
    if (!(a < b)) throw ConfigError("interval set: need a < b in every [a,b)");
  std::sort(parts_.begin(), parts_.end());
  for (std::size_t k = 1; k < parts_.size(); ++k)
    if (parts_[k].first < parts_[k - 1].second)
      throw ConfigError("interval set: intervals overlap");
}

bool IntervalSet::contains(double x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(),
                             std::make_pair(x, std::numeric_limits<double>::infinity()));
  if (it == parts_.begin()) return false;
  --it;
  return x >= it->first && x < it->second;
}

std::vector<double> IntervalSet::boundary_points() const {
  std::vector<double> pts;
  for (auto& [a, b] : parts_) {
    pts.push_back(a);
    pts.push_back(b);
  }
  return pts;
}

double MapDescriptor::operator()(double x) const {
  if (auto* a = std::get_if<AffineMap>(&impl_)) return (*a)(x);
  return std::get<GenericMap>(impl_)(x);
}

StepFunction::StepFunction(std::vector<double> breaks, std::vector<double> values)
    : breaks_(std::move(breaks)), values_(std::move(values)) {
  if (breaks_.size() < 2 || values_.size() + 1 != breaks_.size())
    throw ConfigError("step function: need K+1 breaks for K values");
  if (!std::is_sorted(breaks_.begin(), breaks_.end()))
    throw ConfigError("step function: breaks must be sorted");
}

StepFunction StepFunction::indicator(const Interval& domain, const IntervalSet& set,
                                     double inside, double outside) {
  std::set<double> cuts{domain.lo, domain.hi};
  for (double b : set.boundary_points())
    if (b > domain.lo && b < domain.hi) cuts.insert(b);
  std::vector<double> breaks(cuts.begin(), cuts.end());
  std::vector<double> values;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
    values.push_back(set.contains(breaks[k]) ? inside : outside);
  return StepFunction(std::move(breaks), std::move(values));
}

double StepFunction::operator()(double x) const {
  if (x >= breaks_.back()) return values_.back();
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  if (it == breaks_.begin()) return values_.front();
  return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
}

double StepFunction::min_on(double lo, double hi) const {
  lo = std::max(lo, breaks_.front());
  hi = std::min(hi, breaks_.back());
  if (!(lo < hi)) return (*this)(lo);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < values_.size(); ++k) {
    // cell [breaks_[k], breaks_[k+1]) meets the open interval (lo, hi)
    if (breaks_[k] < hi && breaks_[k + 1] > lo) best = std::min(best, values_[k]);
  }
  return best;
}

double ProbFunction::operator()(double x) const {
  if (auto* s = std::get_if<StepFunction>(&impl_)) return (*s)(x);
  return std::get<GenericProb>(impl_)(x);
}

IfsSystem::IfsSystem(Interval domain, std::vector<MapDescriptor> maps,
                     std::vector<ProbFunction> probabilities, double p_min,
                     std::size_t probe_resolution)
    : domain_(domain),
      maps_(std::move(maps)),
      probabilities_(std::move(probabilities)),
      p_min_(p_min) {
  if (maps_.size() < 2) throw ConfigError("system needs at least two maps");
  if (maps_.size() != probabilities_.size())
    throw ConfigError("maps and probabilities must have equal count");
  if (!(p_min_ > 0.0)) throw ConfigError("p_min must be strictly positive");
  if (!(domain_.lo < domain_.hi)) throw ConfigError("domain must be nondegenerate");

  exact_ = true;
  for (auto& m : maps_) exact_ = exact_ && m.is_affine();
  for (auto& p : probabilities_) exact_ = exact_ && p.is_step();

  // Probe points: uniform grid plus every step-function breakpoint.
  std::set<double> probes{domain_.lo, domain_.hi};
  for (std::size_t k = 0; k <= probe_resolution; ++k)
    probes.insert(domain_.lo + domain_.length() * static_cast<double>(k) /
                                  static_cast<double>(probe_resolution));
  for (auto& p : probabilities_)
    if (p.is_step())
      for (double b : p.step().breaks())
        if (domain_.contains(b)) probes.insert(b);

  for (double x : probes) {
    double total = 0.0;
    for (std::size_t i = 0; i < probabilities_.size(); ++i) {
      double pi = probabilities_[i](x);
      if (pi < p_min_ - 1e-12)
        throw ConfigError("probability below declared p_min at x=" + std::to_string(x));
      total += pi;
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw ConfigError("probabilities do not sum to 1 at x=" + std::to_string(x));
    for (auto& m : maps_) {
      double y = m(x);
      if (!domain_.contains(y))
        throw ConfigError("map leaves the domain at x=" + std::to_string(x));
    }
  }
}

double IfsSystem::apply_map(int symbol, double x) const {
  if (symbol < 0 || symbol >= alphabet_size())
    throw std::out_of_range("invalid symbol index");
  return maps_[static_cast<std::size_t>(symbol)](x);
}

double IfsSystem::probability(int symbol, double x) const {
  if (symbol < 0 || symbol >= alphabet_size())
    throw std::out_of_range("invalid symbol index");
  return probabilities_[static_cast<std::size_t>(symbol)](x);
}

void IfsSystem::require_in_domain(double x) const {
  if (!domain_.contains(x))
    throw std::domain_error("point outside the system domain");
}

double compose_map(const IfsSystem& sys, const Word& w, double x) {
  sys.require_in_domain(x);
  double y = x;
  for (int s : w) y = sys.apply_map(s, y);
  return y;
}

double word_probability(const IfsSystem& sys, const Word& w, double x) {
  sys.require_in_domain(x);
  double y = x;
  double p = 1.0;
  for (int s : w) {
    p *= sys.probability(s, y);
    y = sys.apply_map(s, y);
  }
  return p;
}

IfsSystem example1_system(double p, const IntervalSet& A) {
  if (!(p > 0.0 && p < 0.5))
    throw ConfigError("example1 requires p in the open interval (0, 1/2)");
  Interval domain{0.0, 1.0};
  std::vector<MapDescriptor> maps{AffineMap{1.0 / 3.0, 0.0},
                                  AffineMap{1.0 / 3.0, 2.0 / 3.0}};
  StepFunction p1 = StepFunction::indicator(domain, A, p, 1.0 - p);
  StepFunction p2 = StepFunction::indicator(domain, A, 1.0 - p, p);
  std::vector<ProbFunction> probs{std::move(p1), std::move(p2)};
  return IfsSystem(domain, std::move(maps), std::move(probs), p, 256);
}

IfsSystem cantor_system(double q) {
  if (!(q > 0.0 && q < 1.0)) throw ConfigError("cantor system requires q in (0,1)");
  Interval domain{0.0, 1.0};
  return affine_system(domain,
                       {AffineMap{1.0 / 3.0, 0.0}, AffineMap{1.0 / 3.0, 2.0 / 3.0}},
                       {q, 1.0 - q});
}

IfsSystem affine_system(Interval domain, std::vector<AffineMap> maps,
                        std::vector<double> probabilities) {
  std::vector<MapDescriptor> md(maps.begin(), maps.end());
  std::vector<ProbFunction> pf;
  double pmin = 1.0;
  for (double q : probabilities) {
    pmin = std::min(pmin, q);
    pf.emplace_back(StepFunction({domain.lo, domain.hi}, {q}));
  }
  return IfsSystem(domain, std::move(md), std::move(pf), pmin, 256);
}

}  // namespace ifsdim
