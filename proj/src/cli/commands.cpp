#include "symtail/cli.hpp"

#include "symtail/bounds.hpp"
#include "symtail/csv.hpp"
#include "symtail/distribution_json.hpp"
#include "symtail/errors.hpp"
#include "symtail/kleitman.hpp"
#include "symtail/oracles.hpp"
#include "symtail/ordering.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

namespace symtail::cli {

using nlohmann::json;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open input file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("input is not valid JSON: " + std::string(e.what()));
  }
}

void write_output(const std::string& path, const CsvTable& table) {
  if (path == "-") {
    table.write(std::cout);
    return;
  }
  std::ostringstream buffer;
  table.write(buffer);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SchemaError("cannot open output file '" + path + "'");
  out << buffer.str();
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  return obj[key];
}

template <class T>
T optional_field(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj[key].get<T>();
  } catch (const json::exception&) {
    throw SchemaError(std::string("field \"") + key + "\" has the wrong type");
  }
}

void append(std::vector<std::string>& row, std::vector<std::string> more) {
  row.insert(row.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

std::vector<std::string> blank(std::size_t n) { return std::vector<std::string>(n); }

void check_n(std::size_t n, std::optional<unsigned> cap, unsigned fallback, const std::string& what) {
  const unsigned limit = cap.value_or(fallback);
  if (n > limit) {
    throw CapExceeded(what + " has n = " + std::to_string(n) + " > max-n = " + std::to_string(limit));
  }
}

/// 0, step, 2 step, ... strictly below `limit`.
std::vector<ExactRational> arithmetic_grid(const ExactRational& step, const ExactRational& limit) {
  std::vector<ExactRational> grid;
  for (ExactRational t = 0; t < limit; t += step) grid.push_back(t);
  return grid;
}

// ---------------------------------------------------------------------------

SymmetricLatticeFamily family_from_json(const json& j) {
  SymmetricLatticeFamily f;
  f.n_max = optional_field<unsigned>(j, "n_max", f.n_max);
  f.radius = optional_field<unsigned>(j, "radius", f.radius);
  f.mass_denominator = optional_field<unsigned>(j, "mass_denominator", f.mass_denominator);
  if (j.contains("step")) f.step = rational_from_json(j["step"]);
  f.half_lattice = optional_field<bool>(j, "half_lattice", false);
  f.unimodal_only = optional_field<bool>(j, "unimodal_only", false);
  return f;
}

RationalPoint point_from_json(const json& j) {
  if (j.is_array()) return rationals_from_json(j);
  return {rational_from_json(j)};
}

KleitmanInstance kleitman_from_json(const json& j) {
  KleitmanInstance inst;
  inst.norm = parse_norm(optional_field<std::string>(j, "norm", "absolute"));
  const auto& vectors = require(j, "vectors");
  if (!vectors.is_array() || vectors.empty()) throw SchemaError("\"vectors\" must be a non-empty array");
  for (const auto& v : vectors) inst.vectors.push_back(point_from_json(v));
  inst.dimension = static_cast<unsigned>(inst.vectors.front().size());
  const auto& targets = require(j, "targets");
  if (!targets.is_array() || targets.empty()) throw SchemaError("\"targets\" must be a non-empty array");
  for (const auto& t : targets) {
    inst.targets.push_back(Ball{point_from_json(require(t, "center")), rational_from_json(require(t, "radius"))});
  }
  return inst;
}

}  // namespace

// ---------------------------------------------------------------------------
// bound
// ---------------------------------------------------------------------------

int cmd_bound(const RunSpec& spec, std::ostream& diag) {
  const json in = load_json(spec.input_path);
  const auto t_grid = rationals_from_json(require(in, "t"));

  // Either a fixed (p, h) or per-t optimization over candidate spans.
  std::map<ExactRational, SuccessVector> by_h;
  bool optimize = false;
  if (in.contains("p")) {
    const ExactRational h = rational_from_json(require(in, "h"));
    by_h.emplace(h, SuccessVector(rationals_from_json(in["p"])));
  } else {
    const auto terms = distributions_from_json(require(in, "terms"));
    if (terms.empty()) throw SchemaError("\"terms\" must not be empty");
    if (in.contains("h")) {
      const ExactRational h = rational_from_json(in["h"]);
      by_h.emplace(h, success_vector(terms, h));
    } else {
      optimize = true;
      for (const auto& h : h_candidates(terms)) by_h.emplace(h, success_vector(terms, h));
      if (by_h.empty()) throw SchemaError("all terms are point masses at 0; no candidate h");
    }
  }
  for (const auto& [h, p] : by_h) {
    if (h <= 0) throw DomainError("h must be positive");
    check_n(p.size(), spec.max_n, 512, "success vector");
  }

  CsvTable table({"t", "h", "m", "nagaev", "nagaev_decimal", "improved", "improved_decimal", "kanter_sup",
                  "kanter_sup_decimal", "note"});
  std::size_t rejected = 0;
  for (const auto& t : t_grid) {
    try {
      const ExactRational h = optimize ? optimize_h(by_h, t).h : by_h.begin()->first;
      const auto r = evaluate_bounds(by_h.at(h), h, t);
      std::vector<std::string> row{to_string(t), to_string(h), std::to_string(r.m)};
      append(row, CsvTable::exact(r.nagaev));
      append(row, CsvTable::exact(r.improved));
      append(row, CsvTable::exact(r.kanter_sup));
      row.push_back(optimize ? "h optimized" : "");
      table.add_row(std::move(row));
    } catch (const DomainError& e) {
      ++rejected;
      std::vector<std::string> row{to_string(t), optimize ? "" : to_string(by_h.begin()->first), ""};
      append(row, blank(6));
      row.push_back(std::string("domain: ") + e.what());
      table.add_row(std::move(row));
    }
  }
  write_output(spec.output_path, table);
  diag << "bound: " << t_grid.size() - rejected << " rows computed, " << rejected << " outside the domain\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

int cmd_sweep(const RunSpec& spec, std::ostream& diag) {
  const json in = load_json(spec.input_path);
  const ExactRational h = rational_from_json(require(in, "h"));
  if (h <= 0) throw DomainError("h must be positive");

  SweepOptions options;
  options.max_n = spec.max_n.value_or(8);
  options.pair_cap = spec.max_width.value_or(kDefaultPairCap);

  std::vector<SweepInstance> instances;
  if (in.contains("instances")) {
    for (const auto& j : in["instances"]) {
      SweepInstance inst;
      inst.id = optional_field<std::string>(j, "id", "instance-" + std::to_string(instances.size()));
      inst.terms = distributions_from_json(require(j, "terms"));
      if (j.contains("p_override")) inst.p_override = SuccessVector(rationals_from_json(j["p_override"]));
      instances.push_back(std::move(inst));
    }
  }
  std::optional<SymmetricLatticeFamily> family;
  if (in.contains("family")) family = family_from_json(in["family"]);
  if (instances.empty() && !family) throw SchemaError("sweep needs \"instances\" or \"family\"");

  std::size_t n_max = family ? family->n_max : 0;
  for (const auto& inst : instances) n_max = std::max(n_max, inst.terms.size());
  const auto t_grid = in.contains("t") ? rationals_from_json(in["t"])
                                       : arithmetic_grid(h / 2, h * static_cast<unsigned long>(n_max));

  options.keep_rows = optional_field<bool>(in, "rows", !family.has_value());
  SweepReport report = bound_soundness_sweep(instances, h, t_grid, options);
  if (family) report.merge(family_soundness_sweep(*family, h, t_grid, options));

  CsvTable table({"instance_id", "t", "bound", "bound_decimal", "value", "value_decimal", "slack", "slack_decimal"});
  auto add = [&](const SweepRow& r) {
    std::vector<std::string> row{r.instance_id, to_string(r.t)};
    append(row, CsvTable::exact(r.bound));
    append(row, CsvTable::exact(r.value));
    append(row, CsvTable::exact(r.slack));
    table.add_row(std::move(row));
  };
  if (options.keep_rows) {
    for (const auto& r : report.rows) add(r);
  } else {
    if (report.min_slack) add(*report.min_slack);
    for (const auto& r : report.violations) add(r);
  }
  write_output(spec.output_path, table);

  diag << "sweep: " << report.instances << " instances, " << report.checks << " checks";
  if (report.min_slack) diag << ", min slack " << to_string(report.min_slack->slack) << " (" << report.min_slack->instance_id << ")";
  diag << ", " << report.violations.size() << " violations\n";
  for (const auto& v : report.violations) {
    diag << "  violation: " << v.instance_id << " at t = " << to_string(v.t) << ": P(|S| > t) = " << to_string(v.value)
         << " < bound " << to_string(v.bound) << "\n";
  }
  return report.ok() ? kOk : kViolation;
}

// ---------------------------------------------------------------------------
// kleitman
// ---------------------------------------------------------------------------

int cmd_kleitman(const RunSpec& spec, std::ostream& diag) {
  const json in = load_json(spec.input_path);
  struct Named {
    std::string id;
    KleitmanInstance inst;
    bool expect_equality;
  };
  std::vector<Named> work;
  if (in.contains("instances")) {
    for (const auto& j : in["instances"]) {
      work.push_back({optional_field<std::string>(j, "id", "instance-" + std::to_string(work.size())),
                      kleitman_from_json(j), false});
    }
  }
  if (in.contains("equality")) {
    const auto& e = in["equality"];
    const unsigned n_max = optional_field<unsigned>(e, "n_max", 16);
    const unsigned m_max = optional_field<unsigned>(e, "m_max", 5);
    for (unsigned n = 1; n <= n_max; ++n) {
      for (unsigned m = 1; m <= m_max; ++m) {
        work.push_back({"equality-n" + std::to_string(n) + "-m" + std::to_string(m), kleitman_equality_instance(n, m),
                        true});
      }
    }
  }
  if (in.contains("random")) {
    const auto& r = in["random"];
    const unsigned count = optional_field<unsigned>(r, "count", 100);
    const unsigned n_max = optional_field<unsigned>(r, "n_max", 12);
    const unsigned m_max = optional_field<unsigned>(r, "m_max", 4);
    const unsigned d_max = optional_field<unsigned>(r, "d_max", 3);
    if (n_max == 0 || m_max == 0 || d_max == 0) throw SchemaError("random family limits must be positive");
    Rng rng(spec.seed.value_or(0));
    constexpr Norm norms[] = {Norm::euclidean, Norm::sup, Norm::one};
    for (unsigned i = 0; i < count; ++i) {
      const auto n = static_cast<unsigned>(rng.between(1, n_max));
      const auto m = static_cast<unsigned>(rng.between(1, m_max));
      const auto d = static_cast<unsigned>(rng.between(1, d_max));
      const Norm norm = norms[rng.below(3)];
      work.push_back({"random-" + std::to_string(i), random_kleitman_instance(rng, n, m, d, norm), false});
    }
  }
  if (work.empty()) throw SchemaError("kleitman needs \"instances\", \"equality\" or \"random\"");

  CsvTable table({"instance_id", "norm", "d", "n", "m", "count", "bound", "slack", "status"});
  std::size_t violations = 0;
  for (const auto& w : work) {
    check_n(w.inst.vectors.size(), spec.max_n, kMaxKleitmanTerms, w.id);
    const auto r = kleitman_count(w.inst);
    std::string status = "ok";
    if (!r.holds()) {
      status = "violation";
    } else if (w.expect_equality && r.count != r.bound) {
      status = "equality_not_attained";
    }
    if (status != "ok") {
      ++violations;
      diag << "  " << status << ": " << w.id << " count " << r.count.get_str() << " vs F_n(m) = " << r.bound.get_str()
           << "\n";
    }
    table.add_row({w.id, std::string(norm_name(w.inst.norm)), std::to_string(w.inst.dimension), std::to_string(r.n),
                   std::to_string(r.m), r.count.get_str(), r.bound.get_str(), BigInteger(r.bound - r.count).get_str(),
                   status});
  }
  write_output(spec.output_path, table);
  diag << "kleitman: " << work.size() << " instances, " << violations << " violations\n";
  return violations == 0 ? kOk : kViolation;
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

int cmd_compare(const RunSpec& spec, std::ostream& diag) {
  const json in = load_json(spec.input_path);
  const std::size_t pair_cap = spec.max_width.value_or(kDefaultPairCap);
  CsvTable table({"instance_id", "check", "parameter", "lhs", "lhs_decimal", "rhs", "rhs_decimal", "status"});
  std::size_t violations = 0;
  std::size_t index = 0;
  for (const auto& j : require(in, "instances")) {
    const std::string id = optional_field<std::string>(j, "id", "instance-" + std::to_string(index++));
    ComparisonInstance inst{distributions_from_json(require(j, "xs")), distributions_from_json(require(j, "ys"))};
    check_n(inst.xs.size(), spec.max_n, 8, id);
    auto row = [&](const std::string& check, const std::string& param, const std::optional<ExactRational>& lhs,
                   const std::optional<ExactRational>& rhs, const std::string& status) {
      std::vector<std::string> r{id, check, param};
      append(r, lhs ? CsvTable::exact(*lhs) : blank(2));
      append(r, rhs ? CsvTable::exact(*rhs) : blank(2));
      r.push_back(status);
      table.add_row(std::move(r));
      if (status == "violation") {
        ++violations;
        diag << "  violation: " << id << " " << check << " " << param << "\n";
      }
    };

    std::vector<ExactRational> t_grid;
    if (j.contains("t")) {
      t_grid = rationals_from_json(j["t"]);
    } else {
      std::set<ExactRational> points;
      for (const auto* side : {&inst.xs, &inst.ys}) {
        const auto sum = exact_sum_distribution(*side, pair_cap);
        for (const auto& a : sum.atoms()) {
          if (a.x != 0) points.insert(abs(a.x));
        }
      }
      t_grid.assign(points.begin(), points.end());
    }
    const auto pruss = pruss_check(inst, t_grid, pair_cap);
    for (const auto& r : pruss.rows) {
      row("pruss", to_string(r.t), r.lhs, r.rhs, 2 * r.lhs >= r.rhs ? "ok" : "violation");
    }
    if (pruss.min_ratio) row("pruss_min_ratio", "", *pruss.min_ratio, ExactRational(1, 2), pruss.holds ? "ok" : "violation");

    if (j.contains("half_mass")) {
      const auto& hm = j["half_mass"];
      const ExactRational h = rational_from_json(require(hm, "h"));
      const unsigned m_max = optional_field<unsigned>(hm, "m_max", static_cast<unsigned>(inst.xs.size()));
      const auto report = half_mass_check(inst, h, m_max, pair_cap);
      for (const auto& r : report.rows) {
        row("half_mass", std::to_string(r.m), r.lhs, r.rhs, r.lhs >= r.rhs ? "ok" : "violation");
        row("half_mass_floor", std::to_string(r.m), r.lhs, r.kanter_floor, r.lhs >= r.kanter_floor ? "ok" : "violation");
      }
    }
    if (j.contains("birnbaum_h")) {
      const ExactRational h = rational_from_json(j["birnbaum_h"]);
      const auto b = birnbaum_check(inst, h, pair_cap);
      std::string status;
      if (b.counterexample()) {
        status = "violation";
      } else if (!b.hypotheses_hold) {
        status = "hypothesis_violated; conclusion " + std::string(b.conclusion ? "holds" : "fails") + "; " + b.violation;
      } else {
        status = "holds";
      }
      row("birnbaum", to_string(h), std::nullopt, std::nullopt, status);
    }
  }
  write_output(spec.output_path, table);
  diag << "compare: " << table.rows() << " rows, " << violations << " violations\n";
  return violations == 0 ? kOk : kViolation;
}

// ---------------------------------------------------------------------------
// tighten
// ---------------------------------------------------------------------------

int cmd_tighten(const RunSpec& spec, std::ostream& diag) {
  const json in = load_json(spec.input_path);
  CsvTable table({"case_id", "t", "bound", "bound_decimal", "extremal_value", "extremal_value_decimal", "best_value",
                  "best_value_decimal", "gap", "gap_decimal", "evaluated", "status"});
  std::size_t violations = 0;
  std::size_t index = 0;
  for (const auto& j : require(in, "cases")) {
    const std::string id = optional_field<std::string>(j, "id", "case-" + std::to_string(index++));
    const SuccessVector p(rationals_from_json(require(j, "p")));
    check_n(p.size(), spec.max_n, 8, id);
    const ExactRational h = rational_from_json(require(j, "h"));
    const unsigned m = optional_field<unsigned>(j, "m", 1);
    TightnessGrid grid;
    if (j.contains("h_primes")) grid.h_primes = rationals_from_json(j["h_primes"]);
    if (j.contains("weights")) grid.weights = rationals_from_json(j["weights"]);
    grid.max_combinations = optional_field<std::size_t>(j, "max_combinations", grid.max_combinations);
    const auto r = tightness_search(p, h, m, grid);
    std::vector<std::string> row{id, to_string(r.t)};
    append(row, CsvTable::exact(r.bound));
    append(row, CsvTable::exact(r.extremal_value));
    append(row, CsvTable::exact(r.best_value));
    append(row, CsvTable::exact(r.gap));
    row.push_back(std::to_string(r.evaluated));
    row.push_back(r.holds() ? "ok" : "violation");
    if (!r.holds()) {
      ++violations;
      diag << "  violation: " << id << " value " << to_string(r.best_value) << " below bound " << to_string(r.bound)
           << "\n";
    }
    table.add_row(std::move(row));
  }
  write_output(spec.output_path, table);
  diag << "tighten: " << table.rows() << " cases, " << violations << " violations\n";
  return violations == 0 ? kOk : kViolation;
}

// ---------------------------------------------------------------------------

int run(const RunSpec& spec, std::ostream& diag) {
  try {
    switch (spec.command) {
      case Command::bound: return cmd_bound(spec, diag);
      case Command::sweep: return cmd_sweep(spec, diag);
      case Command::kleitman: return cmd_kleitman(spec, diag);
      case Command::compare: return cmd_compare(spec, diag);
      case Command::tighten: return cmd_tighten(spec, diag);
    }
  } catch (const SchemaError& e) {
    diag << "input error: " << e.what() << "\n";
  } catch (const PreconditionError& e) {
    diag << "precondition violated: " << e.what() << "\n";
  } catch (const DomainError& e) {
    diag << "domain error: " << e.what() << "\n";
  } catch (const CapExceeded& e) {
    diag << "cap exceeded: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    diag << "input error: " << e.what() << "\n";
  }
  return kUsage;
}

int main(int argc, char** argv) {
  CLI::App app{"Exact tail lower bounds and comparison checks for sums of independent symmetric variables"};
  app.require_subcommand(1);

  RunSpec spec;
  std::uint64_t seed = 0;
  unsigned max_n = 0;
  std::size_t max_width = 0;

  const std::pair<const char*, Command> commands[] = {
      {"bound", Command::bound},     {"sweep", Command::sweep},     {"kleitman", Command::kleitman},
      {"compare", Command::compare}, {"tighten", Command::tighten},
  };
  const std::map<std::string, const char*> help = {
      {"bound", "Tabulate the Nagaev and improved lower bounds over a t-grid"},
      {"sweep", "Check the improved bound against exact tails of symmetric lattice sums"},
      {"kleitman", "Count subset sums hitting small target sets against F_n(m)"},
      {"compare", "Run the Pruss, half-mass and Birnbaum comparisons"},
      {"tighten", "Search perturbations of the extremal laws for the smallest half-tail"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, command] : commands) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--input", spec.input_path, "Input JSON file")->required();
    sub->add_option("--output", spec.output_path, "Output CSV file ('-' for stdout)")->required();
    sub->add_option("--seed", seed, "Seed for generated instances");
    sub->add_option("--max-n", max_n, "Largest number of terms accepted")->check(CLI::PositiveNumber);
    sub->add_option("--max-width", max_width, "Largest number of atom pairs per convolution step")
        ->check(CLI::PositiveNumber);
    sub->callback([&spec, command = command] { spec.command = command; });
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  for (auto* sub : subs) {
    if (!sub->parsed()) continue;
    if (sub->count("--seed")) spec.seed = seed;
    if (sub->count("--max-n")) spec.max_n = max_n;
    if (sub->count("--max-width")) spec.max_width = max_width;
  }
  return run(spec, std::cerr);
}

}  // namespace symtail::cli
