#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bandit/env.hpp"
#include "bandit/policy.hpp"
#include "bandit/simulate.hpp"

namespace bandit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfigError = 2;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NamedPolicy {
  std::string id;
  PolicyConfig config;
};

struct ExperimentConfig {
  std::string instance_id = "instance";
  BanditInstance instance{{Dirac{0.0}, Dirac{0.0}}};
  std::vector<NamedPolicy> policies;
  std::vector<std::uint64_t> horizons;
  std::uint64_t replications = 1;
  std::uint64_t master_seed = 0;
  std::optional<std::vector<std::uint64_t>> checkpoints;
  std::string output_path;
  unsigned workers = 1;
};

// Parses and validates. Errors carry "<source>: <json pointer>: <message>",
// or the parser's line/column for malformed JSON.
ExperimentConfig parse_experiment_config(const std::string& text,
                                         const std::string& source = "config");
ExperimentConfig load_experiment_config(const std::string& path);

// BANDIT_SEED, when set, replaces the configured seed.
std::uint64_t effective_seed(std::uint64_t configured);

std::string default_policy_id(const PolicyConfig& policy);

// Checkpoints reported for horizon h: the configured list (or powers of two)
// restricted to [1, h], plus h itself.
std::vector<std::uint64_t> checkpoints_for(const ExperimentConfig& config, std::uint64_t h);

std::string format_number(double x);  // 17 significant digits
void write_csv_header(std::ostream& os, std::size_t num_arms,
                      const std::vector<std::string>& leading_columns = {});

struct RunOutputs {
  std::string csv_path;
  std::string sidecar_path;
};

// Writes <output_path> and the sidecar <output_path stem>.summary.json.
// Throws ConfigError on invalid input or an unwritable path.
RunOutputs cmd_run(const ExperimentConfig& config, bool reverse_order = false);

// Sidecar bound overlays for one policy on one instance.
nlohmann::json bound_overlays(const PolicyConfig& policy, const BanditInstance& instance,
                              const std::vector<std::uint64_t>& horizons);
nlohmann::json lower_bound_overlays(const BanditInstance& instance,
                                    const std::vector<std::uint64_t>& horizons);

struct SweepOptions {
  std::string family = "thm5";
  std::vector<double> deltas;
  std::vector<double> epsilons;
  std::string policy_type = "potential";
  std::string psi = "quadratic";
  std::size_t arms = 3;
  std::uint64_t horizon = 1000;
  std::uint64_t replications = 100;
  std::uint64_t seed = 0;
  std::optional<std::vector<std::uint64_t>> checkpoints;
  std::string output_path;
  unsigned workers = 1;
};

// Instance families: thm5, thm5-prime, thm6, thm6-prime, thm8-null,
// thm8-alt, ladder (arms N(-i delta, 1), i = 0..arms-1).
BanditInstance family_instance(const std::string& family, double delta, std::size_t arms);
// The policy handed to one sweep cell; the two-armed policy receives
// epsilon as its gap knowledge.
PolicyConfig sweep_policy(const SweepOptions& options, const BanditInstance& instance,
                          double epsilon);
void cmd_sweep(const SweepOptions& options);

// Verification suite: quadrature golden values, oracle vs simulator, and
// the pairing invariant of the two-armed policy on recorded traces.
struct CheckResult {
  std::string section;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::vector<std::string> only;  // empty = all sections
  std::uint64_t oracle_replications = 100000;
};

std::vector<CheckResult> run_verification(const VerifyOptions& options);
int cmd_verify(const VerifyOptions& options, std::ostream& out);

// Replays a two-armed run from its reward substreams and checks that every
// pull-both round selects arm 1 and is followed by arm 2 (unless it is the
// last round) and that all other rounds follow the threshold rule. Returns
// a description of the first violation.
std::optional<std::string> check_pairing_invariant(const TwoArmedThresholdConfig& policy,
                                                   const BanditInstance& instance,
                                                   std::uint64_t seed, std::uint64_t replication,
                                                   const std::vector<std::uint32_t>& selections);

}  // namespace bandit::cli
