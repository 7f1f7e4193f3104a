#pragma once

#include <nlohmann/json.hpp>

#include "bandit/bounds.hpp"
#include "bandit/env.hpp"
#include "bandit/policy.hpp"
#include "bandit/simulate.hpp"

namespace bandit {

// JSON schemas:
//   arm       {"kind":"gaussian","mean":0.0,"std":1.0}
//             {"kind":"bernoulli","p":0.5,"shift":-0.5}
//             {"kind":"dirac","value":0.0}
//   instance  {"arms":[arm, ...]}
//   policy    {"type":"two_armed","mu_star":0.0,"delta":0.5}
//             {"type":"potential","mu_star":0.0,"epsilon":0.2,"psi":"quadratic"}
//             {"type":"potential",...,"psi":"quadratic_log"}   (psi epsilon = epsilon)
//             {"type":"ucb"}   {"type":"full_info"}
//   bound     {"name":"ub_psisimp","inputs":{...},"value":...,"quadrature_abs_error":null}
//
// Parsing throws std::invalid_argument naming the offending JSON pointer.

nlohmann::json to_json(const ArmDistribution& arm);
nlohmann::json to_json(const BanditInstance& instance);
nlohmann::json to_json(const PolicyConfig& policy);
nlohmann::json to_json(const BoundResult& bound);
nlohmann::json to_json(const RegretEstimate& estimate);

ArmDistribution arm_from_json(const nlohmann::json& j, const std::string& where = "");
BanditInstance instance_from_json(const nlohmann::json& j, const std::string& where = "");
PolicyConfig policy_from_json(const nlohmann::json& j, const std::string& where = "");

}  // namespace bandit
