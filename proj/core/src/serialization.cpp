#include "bandit/serialization.hpp"

#include <cmath>
#include <stdexcept>

namespace bandit {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument((where.empty() ? std::string("/") : where) + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number()) fail(where + "/" + key, "expected a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return number(j, key, where);
}

std::string text(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_string()) fail(where + "/" + key, "expected a string");
  return v.get<std::string>();
}

template <class F>
auto rethrow_at(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    if (!msg.empty() && msg.front() == '/') throw;
    fail(where, msg);
  }
}

}  // namespace

json to_json(const ArmDistribution& arm) {
  return std::visit(
      [](const auto& law) -> json {
        using T = std::decay_t<decltype(law)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return {{"kind", "gaussian"}, {"mean", law.mean}, {"std", law.std}};
        } else if constexpr (std::is_same_v<T, BernoulliShifted>) {
          return {{"kind", "bernoulli"}, {"p", law.p}, {"shift", law.shift}};
        } else {
          return {{"kind", "dirac"}, {"value", law.value}};
        }
      },
      arm.law());
}

json to_json(const BanditInstance& instance) {
  json arms = json::array();
  for (const auto& arm : instance.arms()) arms.push_back(to_json(arm));
  return {{"arms", arms}};
}

json to_json(const PolicyConfig& policy) {
  if (const auto* c = std::get_if<TwoArmedThresholdConfig>(&policy)) {
    return {{"type", "two_armed"}, {"mu_star", c->mu_star}, {"delta", c->delta}};
  }
  if (const auto* c = std::get_if<PotentialConfig>(&policy)) {
    const bool log_psi = c->psi.kind() == PotentialSpec::Kind::kQuadraticLog;
    return {{"type", "potential"},
            {"mu_star", c->mu_star},
            {"epsilon", c->epsilon},
            {"psi", log_psi ? "quadratic_log" : "quadratic"}};
  }
  if (std::holds_alternative<UcbConfig>(policy)) return {{"type", "ucb"}};
  return {{"type", "full_info"}};
}

json to_json(const BoundResult& bound) {
  json inputs = json::object();
  for (const auto& [key, value] : bound.inputs) {
    std::visit([&](const auto& v) { inputs[key] = v; }, value);
  }
  json out = {{"name", bound.name}, {"inputs", inputs}, {"value", bound.value}};
  out["quadrature_abs_error"] =
      bound.quadrature_abs_error ? json(*bound.quadrature_abs_error) : json(nullptr);
  return out;
}

json to_json(const RegretEstimate& estimate) {
  json out = {{"checkpoint", estimate.horizon},
              {"mean", estimate.mean},
              {"replications", estimate.replications}};
  out["std_error"] = std::isfinite(estimate.std_error) ? json(estimate.std_error) : json(nullptr);
  return out;
}

ArmDistribution arm_from_json(const json& j, const std::string& where) {
  const std::string kind = text(j, "kind", where);
  return rethrow_at(where, [&]() -> ArmDistribution {
    if (kind == "gaussian") {
      return Gaussian{number(j, "mean", where), number_or(j, "std", 1.0, where)};
    }
    if (kind == "bernoulli") {
      return BernoulliShifted{number(j, "p", where), number_or(j, "shift", 0.0, where)};
    }
    if (kind == "dirac") return Dirac{number(j, "value", where)};
    fail(where + "/kind", "unknown arm kind \"" + kind + "\" (gaussian, bernoulli, dirac)");
  });
}

BanditInstance instance_from_json(const json& j, const std::string& where) {
  const json& arms = field(j, "arms", where);
  if (!arms.is_array()) fail(where + "/arms", "expected an array");
  std::vector<ArmDistribution> out;
  for (std::size_t i = 0; i < arms.size(); ++i) {
    out.push_back(arm_from_json(arms[i], where + "/arms/" + std::to_string(i)));
  }
  return rethrow_at(where + "/arms", [&] { return BanditInstance(std::move(out)); });
}

PolicyConfig policy_from_json(const json& j, const std::string& where) {
  const std::string type = text(j, "type", where);
  if (type == "two_armed") {
    return TwoArmedThresholdConfig{number_or(j, "mu_star", 0.0, where), number(j, "delta", where)};
  }
  if (type == "potential") {
    PotentialConfig c;
    c.mu_star = number_or(j, "mu_star", 0.0, where);
    c.epsilon = number(j, "epsilon", where);
    const std::string psi = j.contains("psi") ? text(j, "psi", where) : "quadratic";
    if (psi == "quadratic") {
      c.psi = PotentialSpec::quadratic();
    } else if (psi == "quadratic_log") {
      c.psi = rethrow_at(where + "/psi", [&] { return PotentialSpec::quadratic_log(c.epsilon); });
    } else {
      fail(where + "/psi", "unknown potential \"" + psi + "\" (quadratic, quadratic_log)");
    }
    return c;
  }
  if (type == "ucb") return UcbConfig{};
  if (type == "full_info") return FullInfoGreedyConfig{};
  fail(where + "/type",
       "unknown policy type \"" + type + "\" (two_armed, potential, ucb, full_info)");
}

}  // namespace bandit
