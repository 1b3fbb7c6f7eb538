#pragma once

#include <map>
#include <string>
#include <vector>

#include "ifsdim/dimension.hpp"
#include "ifsdim/ifs.hpp"

// Flat key/value experiment configuration: one `key = v1 v2 ...` per
// line, '#' comments.  Command-line flags override file values.

namespace ifsdim {

class Config {
 public:
  Config() = default;
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  void set(const std::string& key, std::vector<std::string> values);
  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_doubles(const std::string& key,
                                  std::vector<double> fallback) const;

 private:
  std::map<std::string, std::vector<std::string>> values_;
};

// Builds the system named by `system` (example1 | cantor | affine) from
// its parameters; throws ConfigError on violated preconditions.
IfsSystem system_from_config(const Config& cfg);

RunConfig run_config_from(const Config& cfg);

}  // namespace ifsdim
