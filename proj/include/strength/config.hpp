#pragma once

#include <map>
#include <string>
#include <vector>

namespace strength::eval {

// Flat key=value configuration with '#' comments. Lookup precedence:
// explicit override (CLI flag) > STRENGTHKIT_<KEY> environment variable >
// file entry > caller default. require_* throws naming the missing key.
class Config {
 public:
  Config() = default;
  static Config from_file(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::string require(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  int require_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  double require_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  uint64_t get_seed(const std::string& key, uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  // Every key/value visible to this config (file + overrides), sorted by
  // key; used for report snapshots.
  std::vector<std::pair<std::string, std::string>> snapshot() const;

 private:
  std::string* find(const std::string& key);
  const std::string* lookup(const std::string& key) const;

  std::map<std::string, std::string> file_;
  std::map<std::string, std::string> overrides_;
  mutable std::map<std::string, std::string> env_cache_;
};

}  // namespace strength::eval
