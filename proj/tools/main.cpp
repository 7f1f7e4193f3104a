#include <iostream>

#include <CLI11.hpp>

#include "bandit/bounds.hpp"
#include "bandit/serialization.hpp"
#include "cli.hpp"

namespace {

using bandit::cli::kExitConfigError;
using bandit::cli::kExitOk;
using bandit::cli::kExitVerifyFailed;

void print_bound(const bandit::BoundResult& bound, bool lower) {
  nlohmann::json j = bandit::to_json(bound);
  if (lower && bound.value < 0.0) {
    j["vacuous"] = true;
    j["note"] = "negative lower bound: vacuous at these inputs";
  }
  std::cout << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded-regret bandit policies: simulation, regret bounds and verification"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run an experiment config; writes CSV and a .summary.json sidecar");
  std::string config_path;
  unsigned workers_override = 0;
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--workers", workers_override, "Worker threads (overrides the config; 0 = keep)");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Evaluate a regret bound; prints JSON");
  bounds->require_subcommand(1);
  double delta = 0.0;
  double epsilon = 0.0;
  double v = 1.0;
  std::uint64_t n = 1;
  std::uint64_t t = 1;
  std::vector<double> gaps;
  std::vector<double> means_a;
  std::vector<double> means_b;
  std::string psi = "quadratic";

  auto* ub_thm2 = bounds->add_subcommand("ub-thm2", "Delta + 16/Delta (two-armed policy)");
  ub_thm2->add_option("--delta", delta, "Gap Delta > 0")->required();
  auto* ub_psisimp = bounds->add_subcommand("ub-psisimp", "Potential policy, psi = x^2, eps in (0, min(1, Delta)]");
  ub_psisimp->add_option("--gaps", gaps, "Positive gaps (comma separated)")->required()->delimiter(',');
  ub_psisimp->add_option("--epsilon", epsilon, "Gap lower bound eps")->required();
  auto* ub_psiepszero = bounds->add_subcommand("ub-psiepszero", "Potential policy, psi = x^2, eps = 0");
  ub_psiepszero->add_option("--gaps", gaps, "Positive gaps (comma separated)")->required()->delimiter(',');
  ub_psiepszero->add_option("--n", n, "Horizon n >= 1")->required();
  ub_psiepszero->add_option("--v", v, "Second moment of the optimal arm (default 1)");
  auto* ub_psilog = bounds->add_subcommand("ub-psilog", "Potential policy, psi = x^2/log(4x/eps)");
  ub_psilog->add_option("--gaps", gaps, "Positive gaps (comma separated)")->required()->delimiter(',');
  ub_psilog->add_option("--epsilon", epsilon, "Gap lower bound eps")->required();
  auto* ub_general = bounds->add_subcommand("ub-general", "General potential bound with quadrature");
  ub_general->add_option("--gaps", gaps, "Positive gaps (comma separated)")->required()->delimiter(',');
  ub_general->add_option("--epsilon", epsilon, "Gap lower bound eps > 0")->required();
  ub_general->add_option("--psi", psi, "quadratic | quadratic_log")
      ->check(CLI::IsMember({"quadratic", "quadratic_log"}));
  auto* lb_thm5 = bounds->add_subcommand("lb-thm5", "1/(4 Delta)");
  lb_thm5->add_option("--delta", delta, "Gap Delta > 0")->required();
  auto* lb_thm6 = bounds->add_subcommand("lb-thm6", "log(n Delta^2 / 2)/(4 Delta)");
  lb_thm6->add_option("--n", n, "Horizon n >= 1")->required();
  lb_thm6->add_option("--delta", delta, "Gap Delta > 0")->required();
  auto* lb_thm8 = bounds->add_subcommand("lb-thm8", "log(n/139)/2");
  lb_thm8->add_option("--n", n, "Horizon n >= 1")->required();
  auto* kl = bounds->add_subcommand("kl", "KL between t-fold products of unit-variance Gaussians");
  kl->add_option("--means-a", means_a, "Means of the first product")->required()->delimiter(',');
  kl->add_option("--means-b", means_b, "Means of the second product")->required()->delimiter(',');
  kl->add_option("--t", t, "Number of rounds")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Oracle-vs-simulator, quadrature and pairing checks");
  bandit::cli::VerifyOptions verify_options;
  verify->add_option("--only", verify_options.only, "Sections: quadrature, oracle, pairing")
      ->delimiter(',');
  verify->add_option("--oracle-reps", verify_options.oracle_replications,
                     "Monte Carlo replications per oracle configuration");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Cartesian Delta x epsilon grid over an instance family");
  bandit::cli::SweepOptions sweep_options;
  sweep->add_option("--family", sweep_options.family,
                    "thm5, thm5-prime, thm6, thm6-prime, thm8-null, thm8-alt, ladder");
  sweep->add_option("--deltas", sweep_options.deltas, "Delta grid")->required()->delimiter(',');
  sweep->add_option("--epsilons", sweep_options.epsilons, "epsilon grid (default 0)")->delimiter(',');
  sweep->add_option("--policy", sweep_options.policy_type, "two_armed, potential, ucb, full_info");
  sweep->add_option("--psi", sweep_options.psi, "quadratic | quadratic_log");
  sweep->add_option("--arms", sweep_options.arms, "Arms for the ladder family");
  sweep->add_option("--horizon", sweep_options.horizon, "Horizon n");
  sweep->add_option("--reps", sweep_options.replications, "Replications per cell");
  sweep->add_option("--seed", sweep_options.seed, "Master seed (BANDIT_SEED overrides)");
  sweep->add_option("--workers", sweep_options.workers, "Worker threads");
  sweep->add_option("--output", sweep_options.output_path, "CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (run->parsed()) {
      auto config = bandit::cli::load_experiment_config(config_path);
      if (workers_override != 0) config.workers = workers_override;
      const auto outputs = bandit::cli::cmd_run(config);
      std::cerr << "wrote " << outputs.csv_path << " and " << outputs.sidecar_path << '\n';
      return kExitOk;
    }
    if (verify->parsed()) return bandit::cli::cmd_verify(verify_options, std::cout);
    if (sweep->parsed()) {
      bandit::cli::cmd_sweep(sweep_options);
      std::cerr << "wrote " << sweep_options.output_path << '\n';
      return kExitOk;
    }
    if (ub_thm2->parsed()) print_bound(bandit::ub_thm2_result(delta), false);
    if (ub_psisimp->parsed()) print_bound(bandit::ub_psisimp_result(gaps, epsilon), false);
    if (ub_psiepszero->parsed()) print_bound(bandit::ub_psiepszero_result(gaps, n, v), false);
    if (ub_psilog->parsed()) print_bound(bandit::ub_psilog_result(gaps, epsilon), false);
    if (ub_general->parsed()) {
      const auto spec = psi == "quadratic_log" ? bandit::PotentialSpec::quadratic_log(epsilon)
                                               : bandit::PotentialSpec::quadratic();
      print_bound(bandit::ub_general(gaps, epsilon, spec), false);
    }
    if (lb_thm5->parsed()) print_bound(bandit::lb_thm5_result(delta), true);
    if (lb_thm6->parsed()) print_bound(bandit::lb_thm6_result(n, delta), true);
    if (lb_thm8->parsed()) print_bound(bandit::lb_thm8_result(n), true);
    if (kl->parsed()) print_bound(bandit::kl_gaussian_product_result(means_a, means_b, t), false);
    return kExitOk;
  } catch (const bandit::cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const bandit::QuadratureError& e) {
    std::cerr << "error: " << e.what() << " (partial value " << e.partial_value() << ")\n";
    return kExitVerifyFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
}
