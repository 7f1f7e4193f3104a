#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bandit/env.hpp"
#include "bandit/policy.hpp"

namespace bandit {

// One replication. checkpoint_counts[j] holds T_i(checkpoints[j] + 1), the
// pulls of each arm over the first checkpoints[j] rounds, and
// pseudo_regret_trajectory[j] = sum_i gap_i * checkpoint_counts[j][i].
struct RunRecord {
  std::string policy_id;
  std::string instance_id;
  std::uint64_t horizon = 0;
  std::uint64_t seed = 0;
  std::uint64_t replication = 0;
  std::vector<std::uint64_t> final_counts;
  std::vector<std::uint64_t> checkpoints;
  std::vector<double> pseudo_regret_trajectory;
  std::vector<std::vector<std::uint64_t>> checkpoint_counts;
  // 0-based selected arm per round; filled only when requested.
  std::vector<std::uint32_t> selections;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct RegretEstimate {
  double mean = 0.0;
  // sample_std / sqrt(replications); NaN when replications < 2.
  double std_error = 0.0;
  std::uint64_t replications = 0;
  std::uint64_t horizon = 0;
};

struct RunOptions {
  std::string policy_id;
  std::string instance_id;
  bool record_selections = false;
};

// sum_i gaps[i] * counts[i].
double pseudo_regret(std::span<const std::uint64_t> counts, std::span<const double> gaps);

// Powers of two below n, then n.
std::vector<std::uint64_t> default_checkpoints(std::uint64_t n);

// Runs one replication to horizon n. Rewards of arm i come from
// RandomStream::substream(seed, replication, i); policy randomization from
// substream index K. A full-information policy draws one reward from every
// arm each round.
RunRecord run_once(const PolicyConfig& policy, const BanditInstance& instance,
                   std::uint64_t n, std::span<const std::uint64_t> checkpoints,
                   std::uint64_t seed, std::uint64_t replication,
                   const RunOptions& options = {});

RegretEstimate estimate(std::span<const double> values, std::uint64_t horizon);

struct BatchOptions {
  std::string policy_id;
  std::string instance_id;
  // 0 picks std::thread::hardware_concurrency().
  unsigned workers = 1;
  // Schedules replications from last to first; results are unaffected.
  bool reverse_order = false;
  bool keep_records = true;
};

struct BatchResult {
  std::vector<RunRecord> records;  // indexed by replication; empty unless kept
  std::vector<std::uint64_t> checkpoints;
  std::vector<RegretEstimate> estimates;  // one per checkpoint
  // regrets[r * checkpoints.size() + j]
  std::vector<double> regrets;
};

// Replication r uses seed master_seed and replication index r. Aggregation is
// a fold in replication order, so the result does not depend on scheduling.
BatchResult run_many(const PolicyConfig& policy, const BanditInstance& instance,
                     std::uint64_t n, std::uint64_t replications,
                     std::span<const std::uint64_t> checkpoints,
                     std::uint64_t master_seed, const BatchOptions& options = {});

}  // namespace bandit
