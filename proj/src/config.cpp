#include "werewolf/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace werewolf {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Strips a # comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

bool parse_number(const std::string& s, double& out) {
  std::size_t used = 0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == s.size();
}

bool looks_integral(const std::string& s) {
  return s.find_first_of(".eE") == std::string::npos;
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str(), path);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail("empty section name");
      cfg.values_[section];
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail("empty key");
    if (value.empty()) fail("empty value for key " + key);
    if (section.empty()) fail("key " + key + " appears before any [section]");
    if (cfg.values_[section].count(key)) fail("duplicate key " + key);

    Value parsed;
    if (value == "true" || value == "false") {
      parsed = value == "true";
    } else if (value.front() == '"') {
      if (value.size() < 2 || value.back() != '"') fail("unterminated string");
      parsed = value.substr(1, value.size() - 2);
    } else if (value.front() == '[') {
      if (value.back() != ']') fail("unterminated list");
      std::vector<double> items;
      std::string body = value.substr(1, value.size() - 2);
      std::istringstream items_in(body);
      std::string item;
      while (std::getline(items_in, item, ',')) {
        item = trim(item);
        if (item.empty()) fail("empty list element");
        double d = 0.0;
        if (!parse_number(item, d)) fail("bad number in list: " + item);
        items.push_back(d);
      }
      parsed = items;
    } else {
      double d = 0.0;
      if (!parse_number(value, d)) fail("bad value for key " + key + ": " + value);
      if (looks_integral(value)) {
        parsed = static_cast<long>(d);
      } else {
        parsed = d;
      }
    }
    cfg.values_[section][key] = std::move(parsed);
  }
  return cfg;
}

const Config::Value* Config::find(const std::string& section, const std::string& key) const {
  auto s = values_.find(section);
  if (s == values_.end()) return nullptr;
  auto k = s->second.find(key);
  if (k == s->second.end()) return nullptr;
  return &k->second;
}

bool Config::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

void Config::type_error(const std::string& section, const std::string& key,
                        const std::string& want) const {
  throw ConfigError(origin_ + ": [" + section + "] " + key + " must be a " + want);
}

long Config::get_int(const std::string& section, const std::string& key,
                     long fallback) const {
  const Value* v = find(section, key);
  if (!v) return fallback;
  if (const long* i = std::get_if<long>(v)) return *i;
  type_error(section, key, "whole number");
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
  const Value* v = find(section, key);
  if (!v) return fallback;
  if (const double* d = std::get_if<double>(v)) return *d;
  if (const long* i = std::get_if<long>(v)) return static_cast<double>(*i);
  type_error(section, key, "number");
}

bool Config::get_bool(const std::string& section, const std::string& key,
                      bool fallback) const {
  const Value* v = find(section, key);
  if (!v) return fallback;
  if (const bool* b = std::get_if<bool>(v)) return *b;
  type_error(section, key, "boolean");
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
  const Value* v = find(section, key);
  if (!v) return fallback;
  if (const std::string* s = std::get_if<std::string>(v)) return *s;
  type_error(section, key, "string");
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key,
                                     const std::vector<double>& fallback) const {
  const Value* v = find(section, key);
  if (!v) return fallback;
  if (const std::vector<double>* l = std::get_if<std::vector<double>>(v)) return *l;
  type_error(section, key, "list of numbers");
}

void Config::restrict_keys(const std::string& section,
                           const std::set<std::string>& allowed) const {
  auto s = values_.find(section);
  if (s == values_.end()) return;
  for (const auto& [key, value] : s->second) {
    if (!allowed.count(key)) {
      throw ConfigError(origin_ + ": unknown key [" + section + "] " + key);
    }
  }
}

std::vector<std::string> Config::sections() const {
  std::vector<std::string> out;
  for (const auto& [name, keys] : values_) out.push_back(name);
  return out;
}

}  // namespace werewolf
