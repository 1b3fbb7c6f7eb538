#include "ifsdim/measure.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "ifsdim/kernels.hpp"

namespace ifsdim {

namespace {
constexpr double kMergeEps = 1e-15;
}

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> points,
                                   std::vector<double> weights) {
  if (points.size() != weights.size())
    throw std::invalid_argument("measure: points/weights size mismatch");
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points[a] < points[b]; });
  support_.reserve(points.size());
  weights_.reserve(points.size());
  for (std::size_t k : order) {
    double x = points[k];
    double w = weights[k];
    if (w < 0.0) throw std::invalid_argument("measure: negative weight");
    if (!support_.empty() && x - support_.back() <= kMergeEps) {
      weights_.back() += w;
    } else {
      support_.push_back(x);
      weights_.push_back(w);
    }
  }
  cumulative_.resize(support_.size() + 1);
  cumulative_[0] = 0.0;
  for (std::size_t k = 0; k < weights_.size(); ++k)
    cumulative_[k + 1] = cumulative_[k] + weights_[k];
  total_mass_ = cumulative_.back();
}

EmpiricalMeasure EmpiricalMeasure::dirac(double x, double mass) {
  return EmpiricalMeasure({x}, {mass});
}

EmpiricalMeasure EmpiricalMeasure::from_samples(std::span<const double> points) {
  if (points.empty()) throw std::invalid_argument("measure: no samples");
  std::vector<double> pts(points.begin(), points.end());
  std::vector<double> w(points.size(), 1.0 / static_cast<double>(points.size()));
  return EmpiricalMeasure(std::move(pts), std::move(w));
}

double EmpiricalMeasure::ball_mass(double x, double r) const {
  if (!(r > 0.0)) throw std::invalid_argument("ball_mass: radius must be positive");
  auto first = std::lower_bound(support_.begin(), support_.end(), x - r);
  auto last = std::upper_bound(support_.begin(), support_.end(), x + r);
  return cumulative_[static_cast<std::size_t>(last - support_.begin())] -
         cumulative_[static_cast<std::size_t>(first - support_.begin())];
}

double EmpiricalMeasure::mass_in(double lo, double hi) const {
  auto first = std::lower_bound(support_.begin(), support_.end(), lo);
  auto last = std::lower_bound(support_.begin(), support_.end(), hi);
  return cumulative_[static_cast<std::size_t>(last - support_.begin())] -
         cumulative_[static_cast<std::size_t>(first - support_.begin())];
}

EmpiricalMeasure EmpiricalMeasure::scaled(double factor) const {
  std::vector<double> w(weights_.size());
  kernels::axpb(factor, weights_, 0.0, w);
  return EmpiricalMeasure(support_, std::move(w));
}

EmpiricalMeasure EmpiricalMeasure::merged_with(const EmpiricalMeasure& other) const {
  std::vector<double> pts = support_;
  pts.insert(pts.end(), other.support_.begin(), other.support_.end());
  std::vector<double> w = weights_;
  w.insert(w.end(), other.weights_.begin(), other.weights_.end());
  return EmpiricalMeasure(std::move(pts), std::move(w));
}

EmpiricalMeasure EmpiricalMeasure::coarsened(const Interval& domain,
                                             std::size_t cells) const {
  if (cells < 2)
    throw ConfigError("coarsening resolution is coarser than the domain");
  const double width = domain.length() / static_cast<double>(cells);
  std::vector<double> pts(support_.size());
  for (std::size_t k = 0; k < support_.size(); ++k) {
    double idx = std::round((support_[k] - domain.lo) / width);
    pts[k] = domain.lo + idx * width;
  }
  return EmpiricalMeasure(std::move(pts), weights_);
}

namespace {

// Concave piecewise linear function given by breakpoint/value lists.
struct Pwl {
  std::vector<double> x;
  std::vector<double> v;

  double eval(double t) const {
    if (t <= x.front()) return v.front();
    if (t >= x.back()) return v.back();
    auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t j = static_cast<std::size_t>(it - x.begin());
    double w = (t - x[j - 1]) / (x[j] - x[j - 1]);
    return v[j - 1] + w * (v[j] - v[j - 1]);
  }

  std::size_t argmax() const {
    return static_cast<std::size_t>(
        std::max_element(v.begin(), v.end()) - v.begin());
  }
};

// W(f) = max { V(f') : |f' - f| <= delta } for concave V: the graph is
// pushed outward by delta with a flat plateau at the maximum.
Pwl dilate(const Pwl& f, double delta) {
  std::size_t m = f.argmax();
  Pwl out;
  out.x.reserve(f.x.size() + 2);
  out.v.reserve(f.x.size() + 2);
  for (std::size_t j = 0; j < m; ++j) {
    out.x.push_back(f.x[j] - delta);
    out.v.push_back(f.v[j]);
  }
  out.x.push_back(f.x[m] - delta);
  out.v.push_back(f.v[m]);
  out.x.push_back(f.x[m] + delta);
  out.v.push_back(f.v[m]);
  for (std::size_t j = m + 1; j < f.x.size(); ++j) {
    out.x.push_back(f.x[j] + delta);
    out.v.push_back(f.v[j]);
  }
  return out;
}

Pwl clamp_to_unit_box(const Pwl& f) {
  Pwl out;
  out.x.push_back(-1.0);
  out.v.push_back(f.eval(-1.0));
  for (std::size_t j = 0; j < f.x.size(); ++j) {
    if (f.x[j] > -1.0 && f.x[j] < 1.0) {
      out.x.push_back(f.x[j]);
      out.v.push_back(f.v[j]);
    }
  }
  out.x.push_back(1.0);
  out.v.push_back(f.eval(1.0));
  return out;
}

}  // namespace

namespace {

// Lexicographic order on (size, support, weights); used only to pick a
// canonical argument order so the distance is bitwise symmetric.
bool measure_less(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a.support()[k] != b.support()[k]) return a.support()[k] < b.support()[k];
    if (a.weights()[k] != b.weights()[k]) return a.weights()[k] < b.weights()[k];
  }
  return false;
}

double fortet_mourier_impl(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  // Merged support with signed weight differences.
  std::vector<double> xs;
  std::vector<double> ds;
  const auto& sa = mu.support();
  const auto& wa = mu.weights();
  const auto& sb = nu.support();
  const auto& wb = nu.weights();
  std::size_t a = 0, b = 0;
  auto push = [&](double x, double d) {
    if (!xs.empty() && x - xs.back() <= kMergeEps) {
      ds.back() += d;
    } else {
      xs.push_back(x);
      ds.push_back(d);
    }
  };
  while (a < sa.size() || b < sb.size()) {
    if (b == sb.size() || (a < sa.size() && sa[a] <= sb[b])) {
      push(sa[a], wa[a]);
      ++a;
    } else {
      push(sb[b], -wb[b]);
      ++b;
    }
  }
  if (xs.empty()) return 0.0;

  // Maximize sum_j d_j f_j over |f_j| <= 1, |f_{j+1}-f_j| <= x_{j+1}-x_j.
  Pwl value;
  value.x = {-1.0, 1.0};
  value.v = {-ds[0], ds[0]};
  for (std::size_t j = 1; j < xs.size(); ++j) {
    double gap = xs[j] - xs[j - 1];
    value = clamp_to_unit_box(dilate(value, gap));
    for (std::size_t k = 0; k < value.x.size(); ++k)
      value.v[k] += ds[j] * value.x[k];
  }
  double best = *std::max_element(value.v.begin(), value.v.end());
  return std::max(best, 0.0);
}

}  // namespace

double fortet_mourier(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu) {
  return measure_less(nu, mu) ? fortet_mourier_impl(nu, mu)
                              : fortet_mourier_impl(mu, nu);
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_measure_csv(std::ostream& os, const EmpiricalMeasure& mu) {
  os << "point,weight\n";
  for (std::size_t k = 0; k < mu.size(); ++k)
    os << format_double(mu.support()[k]) << ',' << format_double(mu.weights()[k])
       << '\n';
}

EmpiricalMeasure read_measure_csv(std::istream& is) {
  std::string line;
  std::vector<double> pts;
  std::vector<double> w;
  while (std::getline(is, line)) {
    if (line.empty() || line == "point,weight") continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("measure csv: malformed line: " + line);
    pts.push_back(std::stod(line.substr(0, comma)));
    w.push_back(std::stod(line.substr(comma + 1)));
  }
  if (pts.empty()) throw std::runtime_error("measure csv: no rows");
  return EmpiricalMeasure(std::move(pts), std::move(w));
}

}  // namespace ifsdim
