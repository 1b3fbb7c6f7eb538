#include "ifsdim/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ifsdim {

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

Config Config::from_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::istringstream key_s(line.substr(0, eq));
    std::string key;
    key_s >> key;
    if (key.empty()) throw ConfigError("config: missing key in line: " + line);
    std::istringstream val_s(line.substr(eq + 1));
    std::vector<std::string> vals;
    std::string tok;
    while (val_s >> tok) vals.push_back(tok);
    cfg.values_[key] = std::move(vals);
  }
  return cfg;
}

void Config::set(const std::string& key, std::vector<std::string> values) {
  values_[key] = std::move(values);
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) return fallback;
  return it->second.front();
}

double Config::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) return fallback;
  try {
    return std::stod(it->second.front());
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' is not a number");
  }
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) return fallback;
  try {
    return std::stoull(it->second.front());
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' is not an integer");
  }
}

std::vector<double> Config::get_doubles(const std::string& key,
                                        std::vector<double> fallback) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  for (const auto& tok : it->second) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ConfigError("config: key '" + key + "' has a non-numeric entry");
    }
  }
  return out;
}

IfsSystem system_from_config(const Config& cfg) {
  const std::string name = cfg.get_string("system", "example1");
  if (name == "example1") {
    const double p = cfg.get_double("p", 0.3);
    auto parts = cfg.get_doubles("A", {0.0, 0.5});
    if (parts.size() % 2 != 0)
      throw ConfigError("config: A must list interval endpoint pairs");
    std::vector<std::pair<double, double>> ivals;
    for (std::size_t k = 0; k + 1 < parts.size(); k += 2)
      ivals.emplace_back(parts[k], parts[k + 1]);
    return example1_system(p, IntervalSet(std::move(ivals)));
  }
  if (name == "cantor") return cantor_system(cfg.get_double("q", 0.5));
  if (name == "expanding") {
    // Two tent-type expanding maps on [0,1]: a diagnostic system whose
    // one-step Lyapunov integral is positive, so the bound is rejected.
    std::vector<MapDescriptor> maps{
        GenericMap([](double x) { return 1.0 - std::abs(2.0 * x - 1.0); }),
        GenericMap([](double x) { return std::abs(2.0 * x - 1.0); })};
    std::vector<ProbFunction> probs{StepFunction({0.0, 1.0}, {0.5}),
                                    StepFunction({0.0, 1.0}, {0.5})};
    return IfsSystem(Interval{0.0, 1.0}, std::move(maps), std::move(probs), 0.5,
                     256);
  }
  if (name == "affine") {
    auto dom = cfg.get_doubles("domain", {0.0, 1.0});
    if (dom.size() != 2) throw ConfigError("config: domain needs two endpoints");
    auto coeffs = cfg.get_doubles("maps", {});
    if (coeffs.size() < 4 || coeffs.size() % 2 != 0)
      throw ConfigError("config: maps must list slope/offset pairs (>= 2 maps)");
    std::vector<AffineMap> maps;
    for (std::size_t k = 0; k + 1 < coeffs.size(); k += 2)
      maps.push_back(AffineMap{coeffs[k], coeffs[k + 1]});
    auto probs = cfg.get_doubles("probs", {});
    if (probs.size() != maps.size())
      throw ConfigError("config: probs must match the number of maps");
    return affine_system(Interval{dom[0], dom[1]}, std::move(maps), std::move(probs));
  }
  throw ConfigError("config: unknown system '" + name + "'");
}

RunConfig run_config_from(const Config& cfg) {
  RunConfig rc;
  rc.chain.seed = cfg.get_u64("seed", rc.chain.seed);
  rc.chain.burn_in = cfg.get_u64("burn_in", rc.chain.burn_in);
  rc.chain.sample_count = cfg.get_u64("samples", rc.chain.sample_count);
  const std::string init = cfg.get_string("initial", "uniform");
  if (init != "uniform") rc.chain.initial_point = std::stod(init);
  rc.N_max = static_cast<int>(cfg.get_u64("n_max", static_cast<std::uint64_t>(rc.N_max)));
  rc.deltas = cfg.get_doubles("deltas", rc.deltas);
  rc.theta = cfg.get_double("theta", rc.theta);
  rc.word_budget = cfg.get_u64("word_budget", rc.word_budget);
  rc.dim.radii = cfg.get_doubles("radii", rc.dim.radii);
  rc.dim.quantile = cfg.get_double("quantile", rc.dim.quantile);
  rc.dim.tolerance = cfg.get_double("dim_tolerance", rc.dim.tolerance);
  return rc;
}

}  // namespace ifsdim
