#include "ltlnrm/env/episode_log.hpp"

#include <charconv>
#include <sstream>

#include "ltlnrm/core/error.hpp"
#include "ltlnrm/core/kv_config.hpp"

namespace ltlnrm::env {

namespace {

constexpr std::string_view kHeader = "step,observation,action,oracle_symbol,grounder_symbol,true_reward";

template <typename T>
T parse_number(std::string_view s, std::size_t line) {
  T v{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    throw MalformedFileError("bad number '" + std::string(s) + "' on line " + std::to_string(line), line);
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

}  // namespace

std::string to_csv(const EpisodeLog& log) {
  std::ostringstream out;
  out << "# environment: " << log.environment << '\n';
  out << "# seed: " << log.seed << '\n';
  out << "# task: " << log.task << '\n';
  out << kHeader << '\n';
  for (const auto& r : log.records) {
    out << r.step << ',';
    for (std::size_t i = 0; i < r.observation.size(); ++i) {
      if (i) out << ' ';
      out << format_double(r.observation[i]);
    }
    out << ',' << r.action << ',' << r.oracle_symbol << ',' << r.grounder_symbol << ',' << r.true_reward << '\n';
  }
  return out.str();
}

EpisodeLog parse_episode_log(std::string_view text) {
  EpisodeLog log;
  const auto lines = split(text, '\n');
  std::size_t i = 0;
  auto header = [&](std::string_view key) -> std::string {
    const std::string prefix = "# " + std::string(key) + ": ";
    if (i >= lines.size() || lines[i].substr(0, prefix.size()) != prefix) {
      throw MalformedFileError("missing '" + std::string(key) + "' header", i);
    }
    return std::string(lines[i++].substr(prefix.size()));
  };
  log.environment = header("environment");
  log.seed = parse_number<std::uint64_t>(header("seed"), 1);
  log.task = header("task");
  if (i >= lines.size() || lines[i] != kHeader) throw MalformedFileError("missing column header", i);
  for (++i; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = split(lines[i], ',');
    if (fields.size() != 6) throw MalformedFileError("expected 6 fields", i);
    EpisodeRecord r;
    r.step = parse_number<std::size_t>(fields[0], i);
    if (!fields[1].empty()) {
      for (auto v : split(fields[1], ' ')) r.observation.push_back(parse_number<double>(v, i));
    }
    r.action = parse_number<int>(fields[2], i);
    r.oracle_symbol = parse_number<int>(fields[3], i);
    r.grounder_symbol = parse_number<int>(fields[4], i);
    r.true_reward = parse_number<int>(fields[5], i);
    log.records.push_back(std::move(r));
  }
  return log;
}

}  // namespace ltlnrm::env
