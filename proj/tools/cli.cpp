#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>

#include "bandit/bounds.hpp"
#include "bandit/serialization.hpp"

namespace bandit::cli {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& source, const std::string& where,
                               const std::string& what) {
  throw ConfigError(source + ": " + (where.empty() ? "/" : where) + ": " + what);
}

std::uint64_t positive_integer(const json& v, const std::string& source, const std::string& where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) {
    config_error(source, where, "expected a positive integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<std::uint64_t> integer_list(const json& v, const std::string& source,
                                        const std::string& where) {
  if (!v.is_array() || v.empty()) config_error(source, where, "expected a non-empty array");
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(positive_integer(v[i], source, where + "/" + std::to_string(i)));
  }
  return out;
}

std::string compact(double x) {
  std::ostringstream s;
  s << x;
  return s.str();
}

std::ofstream open_output(const std::string& path) {
  if (path.empty()) throw ConfigError("output path is empty");
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ConfigError(path + ": cannot open output file for writing");
  return os;
}

json bound_entry(const std::string& name, const std::function<BoundResult()>& evaluate,
                 const std::string& not_applicable_reason = "") {
  if (!not_applicable_reason.empty()) {
    return {{"name", name}, {"status", "not applicable"}, {"reason", not_applicable_reason}};
  }
  try {
    json out = to_json(evaluate());
    out["status"] = "ok";
    return out;
  } catch (const std::exception& e) {
    return {{"name", name}, {"status", "not applicable"}, {"reason", e.what()}};
  }
}

json annotate_lower(json entry) {
  if (entry.contains("value") && entry["value"].is_number() && entry["value"].get<double>() < 0.0) {
    entry["vacuous"] = true;
  }
  return entry;
}

void write_rows(std::ostream& os, const std::string& prefix, const std::string& policy_id,
                const std::string& instance_id, std::uint64_t horizon,
                const std::vector<std::uint64_t>& wanted, const BatchResult& batch) {
  std::vector<std::size_t> columns;
  for (std::uint64_t c : wanted) {
    const auto it = std::lower_bound(batch.checkpoints.begin(), batch.checkpoints.end(), c);
    columns.push_back(static_cast<std::size_t>(it - batch.checkpoints.begin()));
  }
  for (const RunRecord& rec : batch.records) {
    for (std::size_t j : columns) {
      os << prefix << policy_id << ',' << instance_id << ',' << horizon << ',' << rec.replication
         << ',' << rec.seed << ',' << rec.checkpoints[j] << ','
         << format_number(rec.pseudo_regret_trajectory[j]);
      for (std::uint64_t count : rec.checkpoint_counts[j]) os << ',' << count;
      os << '\n';
    }
  }
}

std::vector<std::uint64_t> union_of(const std::vector<std::vector<std::uint64_t>>& lists) {
  std::vector<std::uint64_t> out;
  for (const auto& l : lists) out.insert(out.end(), l.begin(), l.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_csv_header(std::ostream& os, std::size_t num_arms,
                      const std::vector<std::string>& leading_columns) {
  for (const auto& c : leading_columns) os << c << ',';
  os << "policy,instance,horizon,replication,seed,checkpoint,pseudo_regret";
  for (std::size_t i = 1; i <= num_arms; ++i) os << ",count_" << i;
  os << '\n';
}

std::string default_policy_id(const PolicyConfig& policy) {
  if (const auto* c = std::get_if<TwoArmedThresholdConfig>(&policy)) {
    return "two_armed(delta=" + compact(c->delta) + ")";
  }
  if (const auto* c = std::get_if<PotentialConfig>(&policy)) {
    const bool log_psi = c->psi.kind() == PotentialSpec::Kind::kQuadraticLog;
    return std::string("potential_") + (log_psi ? "quadratic_log" : "quadratic") +
           "(eps=" + compact(c->epsilon) + ")";
  }
  return policy_type_name(policy);
}

std::uint64_t effective_seed(std::uint64_t configured) {
  const char* env = std::getenv("BANDIT_SEED");
  if (env == nullptr || *env == '\0') return configured;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') throw ConfigError("BANDIT_SEED: expected an unsigned integer");
  return v;
}

ExperimentConfig parse_experiment_config(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": " + e.what());
  }
  if (!j.is_object()) config_error(source, "", "expected a JSON object");

  ExperimentConfig config;
  try {
    if (!j.contains("instance")) config_error(source, "", "missing field \"instance\"");
    config.instance = instance_from_json(j["instance"], "/instance");
    if (j.contains("instance_id")) {
      if (!j["instance_id"].is_string()) config_error(source, "/instance_id", "expected a string");
      config.instance_id = j["instance_id"].get<std::string>();
      if (config.instance_id.find_first_of(",\n\r\"") != std::string::npos) {
        config_error(source, "/instance_id", "ids may not contain commas, quotes or newlines");
      }
    }

    if (!j.contains("policies") || !j["policies"].is_array()) {
      config_error(source, "/policies", "expected an array of policy configs");
    }
    if (j["policies"].empty()) config_error(source, "/policies", "at least one policy is required");
    for (std::size_t i = 0; i < j["policies"].size(); ++i) {
      const std::string where = "/policies/" + std::to_string(i);
      const json& p = j["policies"][i];
      NamedPolicy named{"", policy_from_json(p, where)};
      try {
        validate(named.config, config.instance.num_arms());
      } catch (const std::invalid_argument& e) {
        config_error(source, where, e.what());
      }
      named.id = p.contains("id") && p["id"].is_string() ? p["id"].get<std::string>()
                                                          : default_policy_id(named.config);
      if (named.id.find_first_of(",\n\r\"") != std::string::npos) {
        config_error(source, where + "/id", "ids may not contain commas, quotes or newlines");
      }
      config.policies.push_back(std::move(named));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source + ": " + e.what());
  }

  if (!j.contains("horizons")) config_error(source, "", "missing field \"horizons\"");
  config.horizons = integer_list(j["horizons"], source, "/horizons");
  if (!std::is_sorted(config.horizons.begin(), config.horizons.end()) ||
      std::adjacent_find(config.horizons.begin(), config.horizons.end()) != config.horizons.end()) {
    config_error(source, "/horizons", "horizons must be strictly ascending");
  }
  if (!j.contains("replications")) config_error(source, "", "missing field \"replications\"");
  config.replications = positive_integer(j["replications"], source, "/replications");
  if (j.contains("master_seed")) {
    if (!j["master_seed"].is_number_unsigned()) {
      config_error(source, "/master_seed", "expected an unsigned integer");
    }
    config.master_seed = j["master_seed"].get<std::uint64_t>();
  }
  if (j.contains("checkpoints")) {
    auto cps = integer_list(j["checkpoints"], source, "/checkpoints");
    if (!std::is_sorted(cps.begin(), cps.end())) {
      config_error(source, "/checkpoints", "checkpoints must be ascending");
    }
    config.checkpoints = std::move(cps);
  }
  if (!j.contains("output_path") || !j["output_path"].is_string()) {
    config_error(source, "/output_path", "expected a string path");
  }
  config.output_path = j["output_path"].get<std::string>();
  if (j.contains("workers")) {
    if (!j["workers"].is_number_unsigned()) config_error(source, "/workers", "expected an unsigned integer");
    config.workers = j["workers"].get<unsigned>();
  }
  return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError(path + ": cannot read config file");
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  ExperimentConfig config = parse_experiment_config(text, path);
  // Relative output paths resolve against the config's directory.
  const std::filesystem::path out(config.output_path);
  if (out.is_relative()) {
    config.output_path = (std::filesystem::path(path).parent_path() / out).string();
  }
  return config;
}

std::vector<std::uint64_t> checkpoints_for(const ExperimentConfig& config, std::uint64_t h) {
  std::vector<std::uint64_t> out;
  const std::vector<std::uint64_t> base =
      config.checkpoints ? *config.checkpoints : default_checkpoints(h);
  for (std::uint64_t c : base) {
    if (c >= 1 && c <= h) out.push_back(c);
  }
  out.push_back(h);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

json bound_overlays(const PolicyConfig& policy, const BanditInstance& instance,
                    const std::vector<std::uint64_t>& horizons) {
  json out = json::array();
  const std::vector<double> gaps = instance.positive_gaps();

  if (const auto* c = std::get_if<TwoArmedThresholdConfig>(&policy)) {
    std::string reason;
    if (instance.num_arms() != 2) {
      reason = "requires K = 2";
    } else if (c->mu_star != instance.mu_star()) {
      reason = "policy mu_star differs from the instance's best mean";
    } else if (!instance.delta_min() || c->delta != *instance.delta_min()) {
      reason = "policy delta differs from the instance gap";
    }
    out.push_back(bound_entry("ub_thm2", [&] { return ub_thm2_result(c->delta); }, reason));
    return out;
  }

  if (const auto* c = std::get_if<PotentialConfig>(&policy)) {
    std::string reason;
    if (c->mu_star != instance.mu_star()) {
      reason = "policy mu_star differs from the instance's best mean";
    } else if (instance.delta_min() && c->epsilon > *instance.delta_min()) {
      reason = "requires epsilon <= Delta";
    }
    const bool log_psi = c->psi.kind() == PotentialSpec::Kind::kQuadraticLog;
    if (c->epsilon > 0.0) {
      if (log_psi) {
        out.push_back(bound_entry("ub_psilog", [&] { return ub_psilog_result(gaps, c->epsilon); }, reason));
      } else {
        out.push_back(bound_entry("ub_psisimp", [&] { return ub_psisimp_result(gaps, c->epsilon); }, reason));
      }
      out.push_back(bound_entry("ub_general", [&] { return ub_general(gaps, c->epsilon, c->psi); }, reason));
    } else if (!log_psi) {
      // Second moment of the best arm's rewards after recentering by mu_star.
      const ArmDistribution& best = instance.arm(instance.best_arm());
      const double offset = best.mean() - c->mu_star;
      const double v = best.variance() + offset * offset;
      for (std::uint64_t h : horizons) {
        out.push_back(bound_entry("ub_psiepszero", [&] { return ub_psiepszero_result(gaps, h, v); }, reason));
      }
    }
  }
  return out;
}

json lower_bound_overlays(const BanditInstance& instance, const std::vector<std::uint64_t>& horizons) {
  json out = json::array();
  if (instance.num_arms() != 2 || !instance.delta_min()) return out;
  const double delta = *instance.delta_min();
  out.push_back(bound_entry("lb_thm5", [&] { return lb_thm5_result(delta); }));
  for (std::uint64_t h : horizons) {
    out.push_back(annotate_lower(bound_entry("lb_thm6", [&] { return lb_thm6_result(h, delta); })));
  }
  for (std::uint64_t h : horizons) {
    out.push_back(annotate_lower(bound_entry("lb_thm8", [&] { return lb_thm8_result(h); })));
  }
  return out;
}

RunOutputs cmd_run(const ExperimentConfig& config, bool reverse_order) {
  if (config.policies.empty()) throw ConfigError("config: /policies: at least one policy is required");
  const std::uint64_t seed = effective_seed(config.master_seed);
  const std::uint64_t max_horizon = config.horizons.back();

  std::vector<std::vector<std::uint64_t>> per_horizon;
  for (std::uint64_t h : config.horizons) per_horizon.push_back(checkpoints_for(config, h));
  const std::vector<std::uint64_t> all_checkpoints = union_of(per_horizon);

  RunOutputs outputs;
  outputs.csv_path = config.output_path;
  const std::filesystem::path csv(config.output_path);
  outputs.sidecar_path = (csv.parent_path() / (csv.stem().string() + ".summary.json")).string();

  std::ofstream csv_out = open_output(outputs.csv_path);
  write_csv_header(csv_out, config.instance.num_arms());

  json summary = {{"instance_id", config.instance_id},
                  {"instance", to_json(config.instance)},
                  {"master_seed", seed},
                  {"replications", config.replications},
                  {"horizons", config.horizons},
                  {"stream_version", RandomStream::kStreamVersion}};
  summary["lower_bounds"] = lower_bound_overlays(config.instance, config.horizons);
  json policies = json::array();

  for (const NamedPolicy& named : config.policies) {
    BatchOptions options;
    options.policy_id = named.id;
    options.instance_id = config.instance_id;
    options.workers = config.workers;
    options.reverse_order = reverse_order;
    const BatchResult batch = run_many(named.config, config.instance, max_horizon,
                                       config.replications, all_checkpoints, seed, options);

    json estimates = json::array();
    for (std::size_t hi = 0; hi < config.horizons.size(); ++hi) {
      const std::uint64_t h = config.horizons[hi];
      write_rows(csv_out, "", named.id, config.instance_id, h, per_horizon[hi], batch);
      json points = json::array();
      for (std::uint64_t c : per_horizon[hi]) {
        const auto j = static_cast<std::size_t>(
            std::lower_bound(all_checkpoints.begin(), all_checkpoints.end(), c) - all_checkpoints.begin());
        points.push_back(to_json(batch.estimates[j]));
      }
      estimates.push_back({{"horizon", h}, {"checkpoints", points}});
    }
    policies.push_back({{"id", named.id},
                        {"config", to_json(named.config)},
                        {"estimates", estimates},
                        {"bounds", bound_overlays(named.config, config.instance, config.horizons)}});
  }
  summary["policies"] = policies;

  csv_out.flush();
  if (!csv_out) throw ConfigError(outputs.csv_path + ": write failed");
  std::ofstream side = open_output(outputs.sidecar_path);
  side << summary.dump(2) << '\n';
  if (!side) throw ConfigError(outputs.sidecar_path + ": write failed");
  return outputs;
}

BanditInstance family_instance(const std::string& family, double delta, std::size_t arms) {
  if (family == "thm5") return instance_thm5(delta).first;
  if (family == "thm5-prime") return instance_thm5(delta).second;
  if (family == "thm6") return instance_thm6(delta).first;
  if (family == "thm6-prime") return instance_thm6(delta).second;
  if (family == "thm8-null") return instance_thm8(delta).first;
  if (family == "thm8-alt") return instance_thm8(delta).second;
  if (family == "ladder") {
    if (!(delta > 0.0)) throw std::invalid_argument("ladder family requires delta > 0");
    std::vector<ArmDistribution> out;
    for (std::size_t i = 0; i < arms; ++i) out.emplace_back(Gaussian{-static_cast<double>(i) * delta, 1.0});
    return BanditInstance(std::move(out));
  }
  throw std::invalid_argument("unknown instance family \"" + family +
                              "\" (thm5, thm5-prime, thm6, thm6-prime, thm8-null, thm8-alt, ladder)");
}

PolicyConfig sweep_policy(const SweepOptions& options, const BanditInstance& instance,
                          double epsilon) {
  if (options.policy_type == "two_armed") {
    return TwoArmedThresholdConfig{instance.mu_star(), epsilon};
  }
  if (options.policy_type == "potential") {
    PotentialConfig c{instance.mu_star(), epsilon, PotentialSpec::quadratic()};
    if (options.psi == "quadratic_log") {
      c.psi = PotentialSpec::quadratic_log(epsilon);
    } else if (options.psi != "quadratic") {
      throw std::invalid_argument("unknown potential \"" + options.psi + "\" (quadratic, quadratic_log)");
    }
    return c;
  }
  if (options.policy_type == "ucb") return UcbConfig{};
  if (options.policy_type == "full_info") return FullInfoGreedyConfig{};
  throw std::invalid_argument("unknown policy type \"" + options.policy_type +
                              "\" (two_armed, potential, ucb, full_info)");
}

void cmd_sweep(const SweepOptions& options) {
  if (options.deltas.empty()) throw ConfigError("sweep: --deltas must list at least one value");
  std::vector<double> epsilons = options.epsilons;
  if (epsilons.empty()) epsilons.push_back(0.0);
  const std::uint64_t seed = effective_seed(options.seed);

  std::ofstream os = open_output(options.output_path);
  bool header_written = false;
  std::size_t header_arms = 0;

  for (double delta : options.deltas) {
    for (double epsilon : epsilons) {
      BanditInstance instance{{Dirac{0.0}, Dirac{0.0}}};
      PolicyConfig policy;
      try {
        instance = family_instance(options.family, delta, options.arms);
        policy = sweep_policy(options, instance, epsilon);
        validate(policy, instance.num_arms());
      } catch (const std::invalid_argument& e) {
        throw ConfigError("sweep cell (delta=" + compact(delta) + ", epsilon=" + compact(epsilon) +
                          "): " + e.what());
      }
      if (!header_written) {
        header_arms = instance.num_arms();
        write_csv_header(os, header_arms, {"delta", "epsilon"});
        header_written = true;
      }
      ExperimentConfig cell;
      cell.horizons = {options.horizon};
      cell.checkpoints = options.checkpoints;
      const std::vector<std::uint64_t> cps = checkpoints_for(cell, options.horizon);

      BatchOptions batch_options;
      batch_options.policy_id = default_policy_id(policy);
      batch_options.instance_id = options.family + "(delta=" + compact(delta) + ")";
      batch_options.workers = options.workers;
      const BatchResult batch =
          run_many(policy, instance, options.horizon, options.replications, cps, seed, batch_options);
      write_rows(os, format_number(delta) + "," + format_number(epsilon) + ",", batch_options.policy_id,
                 batch_options.instance_id, options.horizon, cps, batch);
    }
  }
  os.flush();
  if (!os) throw ConfigError(options.output_path + ": write failed");
}

}  // namespace bandit::cli
