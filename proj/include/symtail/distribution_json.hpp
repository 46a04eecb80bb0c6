#pragma once

#include "symtail/distribution.hpp"

#include <json.hpp>

#include <vector>

namespace symtail {

/// Rationals travel as "num/den" strings or JSON integers. Floating-point
/// numbers are rejected since they cannot be read back exactly.
ExactRational rational_from_json(const nlohmann::json& j);
nlohmann::json rational_to_json(const ExactRational& q);

std::vector<ExactRational> rationals_from_json(const nlohmann::json& j);

/// {"atoms": [{"x": "p/q", "mass": "r/s"}, ...]}
LatticeDistribution distribution_from_json(const nlohmann::json& j);
nlohmann::json distribution_to_json(const LatticeDistribution& d);

std::vector<LatticeDistribution> distributions_from_json(const nlohmann::json& j);

}  // namespace symtail
