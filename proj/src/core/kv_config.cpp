#include "ltlnrm/core/kv_config.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "ltlnrm/core/binary_io.hpp"
#include "ltlnrm/core/error.hpp"

namespace ltlnrm {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* type) {
  throw Error("config key '" + key + "': '" + value + "' is not a valid " + type);
}

}  // namespace

KvConfig KvConfig::parse(std::string_view text) {
  KvConfig cfg;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', offset), text.size());
    const std::string_view line = trim(text.substr(offset, eol - offset));
    if (!line.empty() && line.front() != '#') {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw MalformedFileError("expected key = value", offset);
      const std::string key(trim(line.substr(0, eq)));
      if (key.empty()) throw MalformedFileError("empty key", offset);
      if (cfg.values_.count(key)) throw MalformedFileError("duplicate key '" + key + "'", offset);
      cfg.values_[key] = std::string(trim(line.substr(eq + 1)));
    }
    offset = eol + 1;
  }
  return cfg;
}

KvConfig KvConfig::load(const std::filesystem::path& path) { return parse(read_text_file(path)); }

std::string KvConfig::to_text() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + " = " + v + "\n";
  return out;
}

void KvConfig::save(const std::filesystem::path& path) const { write_text_file(path, to_text()); }

void KvConfig::set(const std::string& key, double value) { values_[key] = format_double(value); }
void KvConfig::set(const std::string& key, std::int64_t value) { values_[key] = std::to_string(value); }
void KvConfig::set(const std::string& key, std::uint64_t value) { values_[key] = std::to_string(value); }

std::optional<std::string> KvConfig::find(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string KvConfig::get_string(const std::string& key, const std::string& fallback) const {
  return find(key).value_or(fallback);
}

std::string KvConfig::require_string(const std::string& key) const {
  auto v = find(key);
  if (!v) throw Error("missing required config key '" + key + "'");
  return *v;
}

double KvConfig::get_double(const std::string& key, double fallback) const {
  const auto v = find(key);
  if (!v) return fallback;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || ptr != v->data() + v->size()) bad_value(key, *v, "number");
  return out;
}

std::int64_t KvConfig::get_int(const std::string& key, std::int64_t fallback) const {
  const auto v = find(key);
  if (!v) return fallback;
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || ptr != v->data() + v->size()) bad_value(key, *v, "integer");
  return out;
}

std::uint64_t KvConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto v = find(key);
  if (!v) return fallback;
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || ptr != v->data() + v->size()) bad_value(key, *v, "unsigned integer");
  return out;
}

bool KvConfig::get_bool(const std::string& key, bool fallback) const {
  const auto v = find(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  bad_value(key, *v, "boolean");
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace ltlnrm
