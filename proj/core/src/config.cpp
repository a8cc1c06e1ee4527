#include "jsnl/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace jsnl {
namespace {

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

ConfigMap ConfigMap::parse(std::string_view text) {
  ConfigMap cfg;
  std::vector<std::string> problems;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;

    const size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      problems.push_back("line " + std::to_string(line_no) + ": expected 'key = value', got '" +
                         stripped + "'");
      continue;
    }
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    const std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty()) {
      problems.push_back("line " + std::to_string(line_no) + ": empty key");
      continue;
    }
    if (cfg.entries_.count(key)) {
      problems.push_back("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
      continue;
    }
    cfg.entries_[key] = Entry{value, line_no, false};
  }
  if (!problems.empty()) {
    std::string joined;
    for (const std::string& p : problems) joined += (joined.empty() ? "" : "; ") + p;
    raise(Errc::type_error, joined);
  }
  return cfg;
}

const ConfigMap::Entry* ConfigMap::find(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  it->second.used = true;
  return &it->second;
}

bool ConfigMap::has(const std::string& key) const { return entries_.count(key) > 0; }

void ConfigMap::fail_type(const std::string& key, const Entry& e, const char* wanted) const {
  raise(Errc::type_error, "line " + std::to_string(e.line) + ": key '" + key + "' = '" +
                              e.value + "' is not a valid " + wanted);
}

void ConfigMap::note(const std::string& key, const std::string& value) const {
  resolved_[key] = value;
}

std::string ConfigMap::get_string(const std::string& key, const std::string& fallback) const {
  const Entry* e = find(key);
  const std::string v = e ? e->value : fallback;
  note(key, v);
  return v;
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
  const Entry* e = find(key);
  double v = fallback;
  if (e) {
    char* end = nullptr;
    v = std::strtod(e->value.c_str(), &end);
    if (end == e->value.c_str() || *end != '\0') fail_type(key, *e, "real number");
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.16g", v);
  note(key, buf);
  return v;
}

long ConfigMap::get_long(const std::string& key, long fallback) const {
  const Entry* e = find(key);
  long v = fallback;
  if (e) {
    const auto [ptr, ec] =
        std::from_chars(e->value.data(), e->value.data() + e->value.size(), v);
    if (ec != std::errc() || ptr != e->value.data() + e->value.size())
      fail_type(key, *e, "integer");
  }
  note(key, std::to_string(v));
  return v;
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) const {
  const Entry* e = find(key);
  bool v = fallback;
  if (e) {
    if (e->value == "true" || e->value == "on" || e->value == "1") {
      v = true;
    } else if (e->value == "false" || e->value == "off" || e->value == "0") {
      v = false;
    } else {
      fail_type(key, *e, "boolean (true/false/on/off/1/0)");
    }
  }
  note(key, v ? "true" : "false");
  return v;
}

std::string ConfigMap::require_string(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) raise(Errc::missing_key, "required key '" + key + "' is missing");
  note(key, e->value);
  return e->value;
}

double ConfigMap::require_double(const std::string& key) const {
  if (!has(key)) raise(Errc::missing_key, "required key '" + key + "' is missing");
  return get_double(key, 0.0);
}

long ConfigMap::require_long(const std::string& key) const {
  if (!has(key)) raise(Errc::missing_key, "required key '" + key + "' is missing");
  return get_long(key, 0);
}

std::vector<double> ConfigMap::get_double_list(const std::string& key) const {
  const Entry* e = find(key);
  std::vector<double> out;
  if (!e) return out;
  note(key, e->value);
  std::stringstream ss(e->value);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const std::string t = trim(token);
    if (t.empty()) continue;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0') fail_type(key, *e, "comma-separated real list");
    out.push_back(v);
  }
  return out;
}

void ConfigMap::reject_unknown() const {
  std::string unknown;
  for (const auto& [key, entry] : entries_) {
    if (!entry.used)
      unknown += (unknown.empty() ? "" : "; ") + ("line " + std::to_string(entry.line) +
                                                  ": unknown key '" + key + "'");
  }
  if (!unknown.empty()) raise(Errc::unknown_key, unknown);
}

std::vector<std::pair<std::string, std::string>> ConfigMap::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [key, entry] : entries_) out.emplace_back(key, entry.value);
  return out;
}

std::vector<std::pair<std::string, std::string>> ConfigMap::resolved_entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [key, value] : resolved_) out.emplace_back(key, value);
  return out;
}

void ConfigMap::set(const std::string& key, const std::string& value) {
  entries_[key] = Entry{value, 0, false};
}

}  // namespace jsnl
