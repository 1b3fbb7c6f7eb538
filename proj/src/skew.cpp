#include "ifsdim/skew.hpp"

#include <algorithm>
#include <ostream>

#include "ifsdim/markov.hpp"
#include "ifsdim/measure.hpp"

namespace ifsdim {

SkewState::SkewState(const IfsSystem& sys, double x, std::uint64_t seed)
    : sys_(&sys), x_(x), rng_(seed) {
  sys.require_in_domain(x);
}

SkewState::SkewState(const IfsSystem& sys, double x, std::vector<int> symbols)
    : sys_(&sys), x_(x), rng_(0), forced_(std::move(symbols)) {
  sys.require_in_domain(x);
  if (forced_->empty()) throw ConfigError("forced symbol stream must be nonempty");
}

int SkewState::advance() {
  int symbol;
  if (forced_) {
    symbol = (*forced_)[forced_pos_];
    forced_pos_ = (forced_pos_ + 1) % forced_->size();
    x_ = sys_->apply_map(symbol, x_);
  } else {
    auto [i, y] = transition_sample(*sys_, x_, rng_);
    symbol = i;
    x_ = y;
  }
  ++steps_;
  return symbol;
}

SkewState skew_step(SkewState s) {
  s.advance();
  return s;
}

double birkhoff_average(SkewState s, const Observable& obs, std::size_t m) {
  if (m < 1) throw ConfigError("birkhoff_average: m must be at least 1");
  double acc = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double x = s.point();
    const int symbol = s.advance();
    acc += obs(x, symbol);
  }
  return acc / static_cast<double>(m);
}

ErgodicityReport ergodicity_diagnostic(const IfsSystem& sys,
                                       const std::vector<NamedObservable>& obs,
                                       const std::vector<double>& starts,
                                       std::size_t m, double tolerance,
                                       std::uint64_t seed) {
  if (starts.size() < 2)
    throw ConfigError("ergodicity diagnostic needs at least 2 starts");
  ErgodicityReport rep;
  rep.tolerance = tolerance;
  rep.consistent = true;
  for (const auto& o : obs) {
    ErgodicityReport::Row row;
    row.name = o.name;
    for (std::size_t s = 0; s < starts.size(); ++s) {
      SkewState state(sys, starts[s], seed + s);  // derived seed per orbit
      row.averages.push_back(birkhoff_average(state, o.fn, m));
    }
    auto [mn, mx] = std::minmax_element(row.averages.begin(), row.averages.end());
    row.spread = *mx - *mn;
    if (row.spread > tolerance) rep.consistent = false;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

void write_ergodicity_report(std::ostream& os, const ErgodicityReport& rep) {
  os << "observable,spread,averages\n";
  for (const auto& row : rep.rows) {
    os << row.name << ',' << format_double(row.spread) << ',';
    for (std::size_t k = 0; k < row.averages.size(); ++k) {
      if (k) os << ' ';
      os << format_double(row.averages[k]);
    }
    os << '\n';
  }
  os << "tolerance," << format_double(rep.tolerance) << ",\n";
  os << "ergodicity_consistent," << (rep.consistent ? "true" : "false") << ",\n";
}

}  // namespace ifsdim
