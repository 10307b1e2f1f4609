#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ltlnrm::env {

struct EpisodeRecord {
  std::size_t step = 0;
  std::vector<double> observation;
  int action = -1;           // -1 for the initial observation
  int oracle_symbol = 0;
  int grounder_symbol = -1;  // -1 when no grounder was queried
  int true_reward = 0;
  friend bool operator==(const EpisodeRecord&, const EpisodeRecord&) = default;
};

struct EpisodeLog {
  std::string environment;
  std::uint64_t seed = 0;
  std::string task;
  std::vector<EpisodeRecord> records;
  friend bool operator==(const EpisodeLog&, const EpisodeLog&) = default;
};

/// `# key: value` header lines for environment, seed and task, then CSV
/// `step,observation,action,oracle_symbol,grounder_symbol,true_reward`
/// with observation values separated by spaces.
std::string to_csv(const EpisodeLog& log);
/// Inverse of to_csv; throws MalformedFileError.
EpisodeLog parse_episode_log(std::string_view text);

}  // namespace ltlnrm::env
