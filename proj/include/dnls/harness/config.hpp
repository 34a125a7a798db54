#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace dnls::harness {

/// Flat string-keyed configuration. JSON input is flattened with dotted keys
/// and arrays become comma-separated lists.
///
/// Every getter records the value it resolved (default or not) so the
/// manifest can echo exactly what a run used.
class ConfigMap {
 public:
  ConfigMap() = default;
  explicit ConfigMap(std::map<std::string, std::string> raw) : raw_(std::move(raw)) {}

  bool has(const std::string& key) const { return raw_.count(key) > 0; }
  void set(const std::string& key, std::string value) { raw_[key] = std::move(value); }

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_real(const std::string& key) const;
  double get_real(const std::string& key, double fallback) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_reals(const std::string& key) const;
  std::vector<double> get_reals(const std::string& key, std::vector<double> fallback) const;

  const std::map<std::string, std::string>& raw() const noexcept { return raw_; }
  const std::map<std::string, std::string>& resolved() const noexcept { return resolved_; }

 private:
  const std::string& require(const std::string& key) const;

  std::map<std::string, std::string> raw_;
  mutable std::map<std::string, std::string> resolved_;
};

/// Reals accept an optional "pi" factor: "pi", "2pi", "0.5*pi", "-3 pi".
double parse_real(const std::string& text);
long parse_int(const std::string& text);
bool parse_bool(const std::string& text);
std::vector<double> parse_reals(const std::string& text);

/// Shortest round-trip decimal form used in manifests.
std::string format_real(double x);

ConfigMap parse_key_values(const std::string& text);
ConfigMap parse_json_config(const std::string& text);
/// Picks the format from the content: a leading '{' means JSON.
ConfigMap load_config(const std::filesystem::path& path);

}  // namespace dnls::harness
