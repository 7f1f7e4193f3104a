#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <sstream>

#include "bandit/bounds.hpp"
#include "bandit/oracle.hpp"
#include "cli.hpp"

namespace bandit::cli {
namespace {

struct OracleCase {
  std::string name;
  PolicyConfig policy;
  BanditInstance instance;
  std::uint64_t horizon;
};

// Dyadic shifts keep lattice means and simulated means bit-identical.
BanditInstance two_arm_lattice() {
  return BanditInstance({BernoulliShifted{0.5, -0.5}, BernoulliShifted{0.25, -0.5}});
}
BanditInstance three_arm_lattice() {
  return BanditInstance({BernoulliShifted{0.75, -0.75}, BernoulliShifted{0.5, -0.75},
                         BernoulliShifted{0.25, -0.75}});
}

std::vector<OracleCase> oracle_cases() {
  return {
      {"two_armed K=2", TwoArmedThresholdConfig{0.0, 0.25}, two_arm_lattice(), 8},
      {"potential quadratic eps=0.25 K=2",
       PotentialConfig{0.0, 0.25, PotentialSpec::quadratic()}, two_arm_lattice(), 8},
      {"potential quadratic eps=0.25 K=3",
       PotentialConfig{0.0, 0.25, PotentialSpec::quadratic()}, three_arm_lattice(), 8},
      {"potential quadratic_log eps=0.25 K=3",
       PotentialConfig{0.0, 0.25, PotentialSpec::quadratic_log(0.25)}, three_arm_lattice(), 8},
      {"potential quadratic eps=0 K=3",
       PotentialConfig{0.0, 0.0, PotentialSpec::quadratic()}, three_arm_lattice(), 8},
      {"ucb K=2", UcbConfig{}, two_arm_lattice(), 8},
      {"ucb K=3", UcbConfig{}, three_arm_lattice(), 8},
  };
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

bool wanted(const VerifyOptions& options, const std::string& section) {
  return options.only.empty() ||
         std::find(options.only.begin(), options.only.end(), section) != options.only.end();
}

void quadrature_checks(std::vector<CheckResult>& out) {
  for (double eps : {0.1, 0.25, 0.5, 1.0}) {
    const double closed = -4.0 * std::log(1.0 - std::exp(-eps * eps / 8.0));
    const TailIntegral q = tail_integral(PotentialSpec::quadratic(), eps);
    const double diff = std::abs(q.value - closed);
    out.push_back({"quadrature", "quadratic tail integral eps=" + fmt(eps), diff <= 1e-6,
                   "quadrature " + fmt(q.value) + " vs closed form " + fmt(closed) +
                       " (|diff| " + fmt(diff) + ", tol 1e-6)"});

    const TailIntegral ql = tail_integral(PotentialSpec::quadratic_log(eps), eps);
    const double cap = 8.0 * std::log(std::log(4.0 / eps)) + 7.0;
    out.push_back({"quadrature", "quadratic_log tail integral eps=" + fmt(eps), ql.value <= cap,
                   "quadrature " + fmt(ql.value) + " <= " + fmt(cap)});
  }
}

void oracle_checks(const VerifyOptions& options, std::vector<CheckResult>& out) {
  std::uint64_t seed = 20240601;
  for (const OracleCase& c : oracle_cases()) {
    const ExactRegret dp = exact_regret(c.policy, c.instance, c.horizon);
    out.push_back({"oracle", c.name + ": probability conservation",
                   std::abs(dp.total_probability - 1.0) <= 1e-12,
                   "total mass " + fmt(dp.total_probability)});

    const ExactRegret dp6 = exact_regret(c.policy, c.instance, kMaxPathHorizon);
    const ExactRegret paths = exact_regret_by_paths(c.policy, c.instance, kMaxPathHorizon);
    const double gap = std::abs(dp6.regret - paths.regret);
    out.push_back({"oracle", c.name + ": DP vs path enumeration (n=6)", gap <= 1e-10,
                   "DP " + fmt(dp6.regret) + " vs paths " + fmt(paths.regret)});

    const std::vector<std::uint64_t> cps = {c.horizon};
    BatchOptions bo;
    bo.keep_records = false;
    const BatchResult mc =
        run_many(c.policy, c.instance, c.horizon, options.oracle_replications, cps, seed++, bo);
    const RegretEstimate& e = mc.estimates.front();
    const double dev = std::abs(e.mean - dp.regret);
    const bool ok = e.std_error > 0.0 ? dev <= 3.0 * e.std_error : dev <= 1e-12;
    out.push_back({"oracle", c.name + ": simulator vs exact (n=" + std::to_string(c.horizon) + ")", ok,
                   "MC " + fmt(e.mean) + " +/- " + fmt(e.std_error) + " vs exact " + fmt(dp.regret)});
  }
}

void pairing_checks(std::vector<CheckResult>& out) {
  const auto [nu, nu_prime] = instance_thm5(0.5);
  const TwoArmedThresholdConfig policy{0.0, 0.5};
  RunOptions ro;
  ro.record_selections = true;
  const std::uint64_t n = 2000;
  const std::vector<std::uint64_t> cps = {n};
  std::uint64_t violations = 0;
  std::string first;
  for (std::uint64_t r = 0; r < 200; ++r) {
    const RunRecord rec = run_once(policy, nu, n, cps, 7, r, ro);
    if (auto v = check_pairing_invariant(policy, nu, 7, r, rec.selections)) {
      if (violations++ == 0) first = "replication " + std::to_string(r) + ": " + *v;
    }
  }
  out.push_back({"pairing", "two_armed pairing invariant on 200 traces", violations == 0,
                 violations == 0 ? "all traces consistent" : first});
}

}  // namespace

std::optional<std::string> check_pairing_invariant(const TwoArmedThresholdConfig& policy,
                                                   const BanditInstance& instance,
                                                   std::uint64_t seed, std::uint64_t replication,
                                                   const std::vector<std::uint32_t>& selections) {
  if (instance.num_arms() != 2) return "instance must have two arms";
  std::array<RandomStream, 2> streams = {RandomStream::substream(seed, replication, 0),
                                         RandomStream::substream(seed, replication, 1)};
  std::array<double, 2> sums{};
  std::array<double, 2> counts{};
  bool owes_second = false;
  const double threshold = -policy.delta / 2.0;

  for (std::size_t idx = 0; idx < selections.size(); ++idx) {
    const std::uint64_t t = idx + 1;
    const std::uint32_t got = selections[idx];
    std::ostringstream where;
    where << "round " << t << " selected arm " << got + 1;
    if (got > 1) return where.str() + ": arm index out of range";

    if (owes_second) {
      if (got != 1) return "pairing invariant violated: " + where.str() + ", expected arm 2 to complete the pair";
      owes_second = false;
    } else if (t <= 2) {
      if (got != t - 1) return "initialization violated: " + where.str();
    } else {
      const double m0 = sums[0] / counts[0] - policy.mu_star;
      const double m1 = sums[1] / counts[1] - policy.mu_star;
      std::uint32_t expected = 0;
      if (m0 > threshold && m0 > m1) {
        expected = 0;
      } else if (m1 > threshold && m1 > m0) {
        expected = 1;
      } else {
        owes_second = true;
      }
      if (got != expected) {
        return (owes_second ? "pairing invariant violated: " : "threshold rule violated: ") +
               where.str() + ", expected arm " + std::to_string(expected + 1);
      }
    }
    sums[got] += instance.arm(got).sample(streams[got]);
    counts[got] += 1.0;
  }
  return std::nullopt;
}

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  for (const auto& s : options.only) {
    if (s != "quadrature" && s != "oracle" && s != "pairing") {
      throw ConfigError("verify: unknown section \"" + s + "\" (quadrature, oracle, pairing)");
    }
  }
  std::vector<CheckResult> out;
  if (wanted(options, "quadrature")) quadrature_checks(out);
  if (wanted(options, "oracle")) oracle_checks(options, out);
  if (wanted(options, "pairing")) pairing_checks(out);
  return out;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out) {
  const std::vector<CheckResult> results = run_verification(options);
  std::size_t failed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS" : "FAIL") << "  [" << r.section << "] " << r.name << ": " << r.detail
        << '\n';
    if (!r.passed) ++failed;
  }
  out << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace bandit::cli
