#include "symtail/distribution_json.hpp"

#include "symtail/errors.hpp"

namespace symtail {

ExactRational rational_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? ExactRational(std::to_string(j.get<std::uint64_t>()))
                                  : ExactRational(std::to_string(j.get<std::int64_t>()));
  }
  throw SchemaError("expected a rational as \"num/den\" string or integer, got " + j.dump());
}

nlohmann::json rational_to_json(const ExactRational& q) { return to_string(q); }

std::vector<ExactRational> rationals_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of rationals, got " + j.dump());
  std::vector<ExactRational> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

LatticeDistribution distribution_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j["atoms"].is_array() || j["atoms"].empty()) {
    throw SchemaError("distribution must be an object with a non-empty \"atoms\" array");
  }
  std::vector<Atom> atoms;
  for (const auto& a : j["atoms"]) {
    if (!a.is_object() || !a.contains("x") || !a.contains("mass")) {
      throw SchemaError("atom must have \"x\" and \"mass\": " + a.dump());
    }
    atoms.push_back(Atom{rational_from_json(a["x"]), rational_from_json(a["mass"])});
  }
  try {
    return LatticeDistribution::from_atoms(std::move(atoms));
  } catch (const PreconditionError& e) {
    throw SchemaError(std::string("invalid distribution: ") + e.what());
  }
}

nlohmann::json distribution_to_json(const LatticeDistribution& d) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : d.atoms()) atoms.push_back({{"x", to_string(a.x)}, {"mass", to_string(a.mass)}});
  return {{"atoms", atoms}};
}

std::vector<LatticeDistribution> distributions_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw SchemaError("expected an array of distributions");
  std::vector<LatticeDistribution> out;
  out.reserve(j.size());
  for (const auto& d : j) out.push_back(distribution_from_json(d));
  return out;
}

}  // namespace symtail
