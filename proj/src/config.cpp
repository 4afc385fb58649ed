#include "strength/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace strength::eval {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string env_name(const std::string& key) {
  std::string name = "STRENGTHKIT_";
  for (const char c : key) {
    if (c == '-' || c == '.') {
      name += '_';
    } else {
      name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
  }
  return name;
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  Config config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected key=value");
    }
    config.file_[trim(text.substr(0, eq))] = trim(text.substr(eq + 1));
  }
  return config;
}

void Config::set(const std::string& key, const std::string& value) {
  overrides_[key] = value;
}

const std::string* Config::lookup(const std::string& key) const {
  if (const auto it = overrides_.find(key); it != overrides_.end()) {
    return &it->second;
  }
  if (const auto it = env_cache_.find(key); it != env_cache_.end()) {
    return &it->second;
  }
  if (const char* env = std::getenv(env_name(key).c_str())) {
    env_cache_[key] = env;
    return &env_cache_[key];
  }
  if (const auto it = file_.find(key); it != file_.end()) {
    return &it->second;
  }
  return nullptr;
}

bool Config::has(const std::string& key) const { return lookup(key) != nullptr; }

std::string Config::require(const std::string& key) const {
  const std::string* v = lookup(key);
  if (!v) throw std::runtime_error("missing config key: " + key);
  return *v;
}

std::string Config::get(const std::string& key,
                        const std::string& fallback) const {
  const std::string* v = lookup(key);
  return v ? *v : fallback;
}

int Config::require_int(const std::string& key) const {
  return std::stoi(require(key));
}

int Config::get_int(const std::string& key, int fallback) const {
  const std::string* v = lookup(key);
  return v ? std::stoi(*v) : fallback;
}

double Config::require_double(const std::string& key) const {
  return std::stod(require(key));
}

double Config::get_double(const std::string& key, double fallback) const {
  const std::string* v = lookup(key);
  return v ? std::stod(*v) : fallback;
}

uint64_t Config::get_seed(const std::string& key, uint64_t fallback) const {
  const std::string* v = lookup(key);
  return v ? std::stoull(*v) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const std::string* v = lookup(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw std::runtime_error("config key " + key + " is not a boolean: " + *v);
}

std::vector<std::pair<std::string, std::string>> Config::snapshot() const {
  std::map<std::string, std::string> merged = file_;
  for (const auto& [k, v] : env_cache_) merged[k] = v;
  for (const auto& [k, v] : overrides_) merged[k] = v;
  return {merged.begin(), merged.end()};
}

}  // namespace strength::eval
