#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace ecgkit {

// Flat key=value configuration with section-prefixed keys
// ("rqa.target_rr=0.10"). Keys are validated against the built-in registry;
// unset keys report their defaults. CLI flags overwrite file values by
// calling set() after load().
class RunConfig {
 public:
  RunConfig();

  void load_file(const std::filesystem::path& path);
  void set(const std::string& key, const std::string& value);
  bool has_key(const std::string& key) const;  // known to the registry
  std::string get(const std::string& key) const;

  double get_double(const std::string& key) const;
  int get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;

  // FNV-1a over the sorted effective key=value pairs; stable across runs.
  uint64_t hash() const;

  // Effective values of every registered key, sorted.
  std::vector<std::pair<std::string, std::string>> effective() const;

 private:
  std::map<std::string, std::string> defaults_;
  std::map<std::string, std::string> values_;
};

}  // namespace ecgkit
