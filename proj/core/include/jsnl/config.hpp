#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jsnl/errors.hpp"

namespace jsnl {

/// Flat "key = value" configuration text: one pair per line, '#' comments,
/// blank lines ignored. Parsing is total; malformed lines are collected and
/// reported together with their line numbers.
class ConfigMap {
 public:
  static ConfigMap parse(std::string_view text);

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  std::string require_string(const std::string& key) const;
  double require_double(const std::string& key) const;
  long require_long(const std::string& key) const;

  /// Comma-separated list of reals.
  std::vector<double> get_double_list(const std::string& key) const;

  /// Strict mode: every key must have been consumed by one of the getters;
  /// leftovers are reported as UnknownKey with their line numbers.
  void reject_unknown() const;

  /// Raw "key = value" pairs as parsed, sorted by key.
  std::vector<std::pair<std::string, std::string>> entries() const;

  /// Every key a getter consulted, with the value actually used — defaults
  /// included. This is what the reproducibility manifest echoes.
  std::vector<std::pair<std::string, std::string>> resolved_entries() const;

  void set(const std::string& key, const std::string& value);

 private:
  struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
  };
  std::map<std::string, Entry> entries_;
  mutable std::map<std::string, std::string> resolved_;

  const Entry* find(const std::string& key) const;
  void note(const std::string& key, const std::string& value) const;
  [[noreturn]] void fail_type(const std::string& key, const Entry& e,
                              const char* wanted) const;
};

}  // namespace jsnl
