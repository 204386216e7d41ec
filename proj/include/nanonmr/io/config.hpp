#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "nanonmr/errors.hpp"

namespace nanonmr {

/// Flat key-value run configuration with sections:
///
///   # comment
///   [section]
///   key = value
///
/// Keys are addressed as "section.key". Every read is recorded;
/// check_all_consumed() rejects configs with unrecognized keys so typos
/// fail loudly.
class Config {
 public:
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text,
                            const std::string& base_dir = ".");

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double dflt) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long dflt) const;
  bool get_bool(const std::string& key, bool dflt) const;

  /// Keys sharing a "section." prefix (consumes nothing).
  std::vector<std::string> keys_in_section(const std::string& section) const;

  /// Interprets value as a path relative to the config file's directory.
  std::string resolve_path(const std::string& value) const;

  void check_all_consumed() const;

  /// FNV-1a 64 digest of the raw config bytes, hex encoded.
  const std::string& digest() const { return digest_; }

 private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> consumed_;
  std::string base_dir_;
  std::string digest_;
};

std::string fnv1a64_hex(const std::string& bytes);
std::string file_digest(const std::string& path);

}  // namespace nanonmr
