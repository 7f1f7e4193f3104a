#include "bandit/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace bandit {
namespace {

void check_checkpoints(std::span<const std::uint64_t> checkpoints, std::uint64_t n) {
  for (std::size_t j = 0; j < checkpoints.size(); ++j) {
    if (checkpoints[j] < 1 || checkpoints[j] > n) {
      throw std::invalid_argument("checkpoints must lie in [1, horizon]");
    }
    if (j > 0 && checkpoints[j] <= checkpoints[j - 1]) {
      throw std::invalid_argument("checkpoints must be strictly increasing");
    }
  }
}

}  // namespace

double pseudo_regret(std::span<const std::uint64_t> counts, std::span<const double> gaps) {
  if (counts.size() != gaps.size()) {
    throw std::invalid_argument("pseudo_regret: counts and gaps differ in length");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    total += gaps[i] * static_cast<double>(counts[i]);
  }
  return total;
}

std::vector<std::uint64_t> default_checkpoints(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 1; c < n; c *= 2) out.push_back(c);
  if (n >= 1) out.push_back(n);
  return out;
}

RunRecord run_once(const PolicyConfig& policy, const BanditInstance& instance,
                   std::uint64_t n, std::span<const std::uint64_t> checkpoints,
                   std::uint64_t seed, std::uint64_t replication,
                   const RunOptions& options) {
  if (n < 1) throw std::invalid_argument("run_once: horizon must be >= 1");
  check_checkpoints(checkpoints, n);

  const std::size_t k = instance.num_arms();
  PolicyState state(policy, k);
  std::vector<RandomStream> arm_streams;
  arm_streams.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    arm_streams.push_back(RandomStream::substream(seed, replication, i));
  }
  RandomStream policy_stream = RandomStream::substream(seed, replication, k);

  RunRecord record;
  record.policy_id = options.policy_id;
  record.instance_id = options.instance_id;
  record.horizon = n;
  record.seed = seed;
  record.replication = replication;
  record.checkpoints.assign(checkpoints.begin(), checkpoints.end());
  record.pseudo_regret_trajectory.reserve(checkpoints.size());
  record.checkpoint_counts.reserve(checkpoints.size());
  if (options.record_selections) record.selections.reserve(n);

  const bool full_info = state.full_information();
  std::vector<std::uint64_t> counts(k, 0);
  std::vector<double> rewards(k);
  std::size_t next_checkpoint = 0;

  for (std::uint64_t t = 1; t <= n; ++t) {
    const std::size_t arm = state.select(policy_stream);
    if (full_info) {
      for (std::size_t i = 0; i < k; ++i) rewards[i] = instance.arm(i).sample(arm_streams[i]);
      state.update_full_info(rewards);
    } else {
      state.update(arm, instance.arm(arm).sample(arm_streams[arm]));
    }
    ++counts[arm];
    if (options.record_selections) record.selections.push_back(static_cast<std::uint32_t>(arm));
    if (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] == t) {
      record.checkpoint_counts.push_back(counts);
      record.pseudo_regret_trajectory.push_back(pseudo_regret(counts, instance.gaps()));
      ++next_checkpoint;
    }
  }
  record.final_counts = std::move(counts);
  return record;
}

RegretEstimate estimate(std::span<const double> values, std::uint64_t horizon) {
  RegretEstimate est;
  est.horizon = horizon;
  est.replications = values.size();
  if (values.empty()) {
    est.mean = NAN;
    est.std_error = NAN;
    return est;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  est.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) {
    est.std_error = NAN;
    return est;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - est.mean) * (v - est.mean);
  const double var = ss / static_cast<double>(values.size() - 1);
  est.std_error = std::sqrt(var / static_cast<double>(values.size()));
  return est;
}

BatchResult run_many(const PolicyConfig& policy, const BanditInstance& instance,
                     std::uint64_t n, std::uint64_t replications,
                     std::span<const std::uint64_t> checkpoints,
                     std::uint64_t master_seed, const BatchOptions& options) {
  if (replications < 1) throw std::invalid_argument("run_many: replications must be >= 1");
  check_checkpoints(checkpoints, n);
  validate(policy, instance.num_arms());

  BatchResult result;
  result.checkpoints.assign(checkpoints.begin(), checkpoints.end());
  const std::size_t m = checkpoints.size();
  result.regrets.assign(replications * m, 0.0);
  if (options.keep_records) result.records.resize(replications);

  RunOptions run_options;
  run_options.policy_id = options.policy_id;
  run_options.instance_id = options.instance_id;

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::uint64_t i = next++; i < replications; i = next++) {
        const std::uint64_t r = options.reverse_order ? replications - 1 - i : i;
        RunRecord rec = run_once(policy, instance, n, checkpoints, master_seed, r, run_options);
        std::copy(rec.pseudo_regret_trajectory.begin(), rec.pseudo_regret_trajectory.end(),
                  result.regrets.begin() + static_cast<std::ptrdiff_t>(r * m));
        if (options.keep_records) result.records[r] = std::move(rec);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = replications;
    }
  };

  unsigned workers = options.workers == 0 ? std::thread::hardware_concurrency() : options.workers;
  workers = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(workers, replications)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> column(replications);
  result.estimates.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::uint64_t r = 0; r < replications; ++r) column[r] = result.regrets[r * m + j];
    result.estimates.push_back(estimate(column, checkpoints[j]));
  }
  return result;
}

}  // namespace bandit
