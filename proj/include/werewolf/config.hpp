// Minimal sectioned key-value config file: [section] headers, key = value
// pairs, # comments. Values: bool, integer, float, "string", or a numeric
// list like [0.1, 0.3].
#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace werewolf {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Config {
 public:
  using Value = std::variant<bool, long, double, std::string, std::vector<double>>;

  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& section, const std::string& key) const;

  long get_int(const std::string& section, const std::string& key, long fallback) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  std::vector<double> get_list(const std::string& section, const std::string& key,
                               const std::vector<double>& fallback) const;

  // Rejects keys outside the allowed set, naming section and key.
  void restrict_keys(const std::string& section,
                     const std::set<std::string>& allowed) const;
  std::vector<std::string> sections() const;

 private:
  const Value* find(const std::string& section, const std::string& key) const;
  [[noreturn]] void type_error(const std::string& section, const std::string& key,
                               const std::string& want) const;

  std::map<std::string, std::map<std::string, Value>> values_;
  std::string origin_;
};

}  // namespace werewolf
