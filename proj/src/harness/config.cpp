#include "dnls/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dnls/errors.hpp"

namespace dnls::harness {

namespace {

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double parse_plain(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) throw ConfigError("not a number: '" + text + "'");
  return value;
}

void flatten(const nlohmann::json& node, const std::string& prefix,
             std::map<std::string, std::string>& out) {
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
    return;
  }
  if (prefix.empty()) throw ConfigError("JSON config must be an object");
  if (node.is_array()) {
    std::string joined;
    for (const auto& item : node) {
      if (item.is_object() || item.is_array()) {
        throw ConfigError("nested arrays are not supported in '" + prefix + "'");
      }
      if (!joined.empty()) joined += ",";
      joined += item.is_string() ? item.get<std::string>() : item.dump();
    }
    out[prefix] = joined;
  } else if (node.is_string()) {
    out[prefix] = node.get<std::string>();
  } else if (node.is_number_float()) {
    out[prefix] = format_real(node.get<double>());
  } else {
    out[prefix] = node.dump();
  }
}

}  // namespace

double parse_real(const std::string& raw) {
  std::string text = lower(trim(raw));
  if (text.empty()) throw ConfigError("empty number");
  double factor = 1.0;
  if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    text = trim(text.substr(0, text.size() - 2));
    if (!text.empty() && text.back() == '*') text = trim(text.substr(0, text.size() - 1));
    if (text.empty() || text == "+") return factor;
    if (text == "-") return -factor;
  }
  if (text.front() == '+') text.erase(0, 1);
  const double value = parse_plain(text) * factor;
  if (!std::isfinite(value)) throw ConfigError("non-finite number: '" + raw + "'");
  return value;
}

long parse_int(const std::string& raw) {
  const std::string text = trim(raw);
  long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("not an integer: '" + raw + "'");
  }
  return value;
}

bool parse_bool(const std::string& raw) {
  const std::string text = lower(trim(raw));
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError("not a boolean: '" + raw + "'");
}

std::vector<double> parse_reals(const std::string& raw) {
  std::string text = trim(raw);
  if (!text.empty() && text.front() == '[' && text.back() == ']') text = text.substr(1, text.size() - 2);
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(parse_real(item));
  }
  return out;
}

std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

const std::string& ConfigMap::require(const std::string& key) const {
  auto it = raw_.find(key);
  if (it == raw_.end()) throw ConfigError("missing required key '" + key + "'");
  return it->second;
}

std::string ConfigMap::get_string(const std::string& key) const {
  const auto& v = require(key);
  resolved_[key] = v;
  return v;
}

std::string ConfigMap::get_string(const std::string& key, const std::string& fallback) const {
  const std::string v = has(key) ? raw_.at(key) : fallback;
  resolved_[key] = v;
  return v;
}

double ConfigMap::get_real(const std::string& key) const {
  const double v = parse_real(require(key));
  resolved_[key] = format_real(v);
  return v;
}

double ConfigMap::get_real(const std::string& key, double fallback) const {
  return has(key) ? get_real(key) : (resolved_[key] = format_real(fallback), fallback);
}

long ConfigMap::get_int(const std::string& key) const {
  const long v = parse_int(require(key));
  resolved_[key] = std::to_string(v);
  return v;
}

long ConfigMap::get_int(const std::string& key, long fallback) const {
  return has(key) ? get_int(key) : (resolved_[key] = std::to_string(fallback), fallback);
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) const {
  const bool v = has(key) ? parse_bool(raw_.at(key)) : fallback;
  resolved_[key] = v ? "true" : "false";
  return v;
}

std::vector<double> ConfigMap::get_reals(const std::string& key) const {
  auto v = parse_reals(require(key));
  if (v.empty()) throw ConfigError("empty list for '" + key + "'");
  std::string joined;
  for (double x : v) joined += (joined.empty() ? "" : ",") + format_real(x);
  resolved_[key] = joined;
  return v;
}

std::vector<double> ConfigMap::get_reals(const std::string& key, std::vector<double> fallback) const {
  if (has(key)) return get_reals(key);
  std::string joined;
  for (double x : fallback) joined += (joined.empty() ? "" : ",") + format_real(x);
  resolved_[key] = joined;
  return fallback;
}

ConfigMap parse_key_values(const std::string& text) {
  std::map<std::string, std::string> raw;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (raw.count(key)) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    raw[key] = trim(line.substr(eq + 1));
  }
  return ConfigMap(std::move(raw));
}

ConfigMap parse_json_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON config: ") + e.what());
  }
  std::map<std::string, std::string> raw;
  flatten(doc, "", raw);
  return ConfigMap(std::move(raw));
}

ConfigMap load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json_config(text);
  return parse_key_values(text);
}

}  // namespace dnls::harness
