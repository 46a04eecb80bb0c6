#include "symtail/errors.hpp"
#include "symtail/oracles.hpp"

#include <omp.h>

#include <exception>
#include <functional>

namespace symtail {

LatticeDistribution exact_sum_distribution(std::span<const LatticeDistribution> terms, std::size_t pair_cap) {
  LatticeDistribution sum;
  for (const auto& term : terms) {
    if (sum.size() * term.size() > pair_cap) {
      throw CapExceeded("convolution step would form " + std::to_string(sum.size() * term.size()) +
                        " atom pairs (cap " + std::to_string(pair_cap) + ")");
    }
    sum = convolve(sum, term);
  }
  return sum;
}

void SweepReport::merge(SweepReport&& other) {
  instances += other.instances;
  checks += other.checks;
  if (other.min_slack && (!min_slack || other.min_slack->slack < min_slack->slack)) {
    min_slack = std::move(other.min_slack);
  }
  rows.insert(rows.end(), std::make_move_iterator(other.rows.begin()), std::make_move_iterator(other.rows.end()));
  violations.insert(violations.end(), std::make_move_iterator(other.violations.begin()),
                    std::make_move_iterator(other.violations.end()));
}

namespace {

// Compares the exact tail of `sum` against the improved bound for p.
void check_sum(const std::string& id, const LatticeDistribution& sum, const SuccessVector& p, const ExactRational& h,
               std::span<const ExactRational> t_grid, bool keep_rows, SweepReport& out) {
  const ExactRational limit = ExactRational(static_cast<unsigned long>(p.size())) * h;
  for (const auto& t : t_grid) {
    if (t < 0 || t >= limit) continue;
    SweepRow row{id, t, improved_bound(p, h, t), abs_tail(sum, t, true), 0};
    row.slack = row.value - row.bound;
    ++out.checks;
    if (!out.min_slack || row.slack < out.min_slack->slack) out.min_slack = row;
    if (row.slack < 0) out.violations.push_back(row);
    if (keep_rows) out.rows.push_back(std::move(row));
  }
}

SweepReport check_instance(const SweepInstance& inst, const ExactRational& h, std::span<const ExactRational> t_grid,
                           const SweepOptions& options) {
  if (inst.terms.empty()) throw PreconditionError("instance '" + inst.id + "' has no terms");
  if (inst.terms.size() > options.max_n) {
    throw CapExceeded("instance '" + inst.id + "' has n = " + std::to_string(inst.terms.size()) + " > " +
                      std::to_string(options.max_n));
  }
  for (const auto& term : inst.terms) {
    if (!is_symmetric(term)) throw PreconditionError("instance '" + inst.id + "' has a non-symmetric term");
  }
  if (inst.p_override && inst.p_override->size() != inst.terms.size()) {
    throw PreconditionError("instance '" + inst.id + "': p_override length differs from the number of terms");
  }
  SweepReport report;
  report.instances = 1;
  const auto sum = exact_sum_distribution(inst.terms, options.pair_cap);
  const SuccessVector p = inst.p_override ? *inst.p_override : success_vector(inst.terms, h);
  check_sum(inst.id, sum, p, h, t_grid, options.keep_rows, report);
  return report;
}

void require_positive(const ExactRational& h) {
  if (h <= 0) throw DomainError("h must be positive");
}

}  // namespace

SweepReport bound_soundness_sweep(std::span<const SweepInstance> instances, const ExactRational& h,
                                  std::span<const ExactRational> t_grid, const SweepOptions& options) {
  require_positive(h);
  std::vector<SweepReport> partial(instances.size());
  std::vector<std::exception_ptr> errors(instances.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(instances.size()); ++i) {
    try {
      partial[i] = check_instance(instances[i], h, t_grid, options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  SweepReport report;
  for (std::size_t i = 0; i < partial.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    report.merge(std::move(partial[i]));
  }
  return report;
}

SweepReport bound_soundness_sweep_serial(std::span<const SweepInstance> instances, const ExactRational& h,
                                         std::span<const ExactRational> t_grid, const SweepOptions& options) {
  require_positive(h);
  SweepReport report;
  for (const auto& inst : instances) report.merge(check_instance(inst, h, t_grid, options));
  return report;
}

std::vector<LatticeDistribution> family_laws(const SymmetricLatticeFamily& family) {
  if (family.step <= 0) throw DomainError("family step must be positive");
  if (family.mass_denominator == 0) throw DomainError("mass denominator must be positive");
  const unsigned D = family.mass_denominator;
  // positive support points, ascending
  std::vector<ExactRational> points;
  if (family.half_lattice) {
    for (unsigned k = 0; k < family.radius; ++k) points.push_back(family.step * ExactRational(2 * k + 1, 2));
  } else {
    for (unsigned k = 1; k <= family.radius; ++k) points.push_back(family.step * k);
  }

  std::vector<LatticeDistribution> laws;
  std::vector<unsigned> pair_mass(points.size(), 0);  // units of 1/D on each of +-x
  std::function<void(std::size_t, unsigned)> place = [&](std::size_t idx, unsigned remaining) {
    if (idx == points.size()) {
      if (family.half_lattice && remaining != 0) return;
      std::vector<Atom> atoms;
      if (remaining > 0) atoms.push_back(Atom{0, ExactRational(remaining, D)});
      for (std::size_t k = 0; k < points.size(); ++k) {
        if (pair_mass[k] == 0) continue;
        ExactRational m(pair_mass[k], D);
        m.canonicalize();
        atoms.push_back(Atom{points[k], m});
        atoms.push_back(Atom{-points[k], m});
      }
      for (auto& a : atoms) a.mass.canonicalize();
      auto law = LatticeDistribution::from_atoms(std::move(atoms));
      if (!family.unimodal_only || is_unimodal_with_span(law, family.step)) laws.push_back(std::move(law));
      return;
    }
    for (unsigned units = 0; 2 * units <= remaining; ++units) {
      pair_mass[idx] = units;
      place(idx + 1, remaining - 2 * units);
    }
    pair_mass[idx] = 0;
  };
  place(0, D);
  return laws;
}

namespace {

std::string law_label(std::size_t i) { return "L" + std::to_string(i); }

void for_each_multiset(std::size_t laws, unsigned n_max,
                       const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> picks;
  std::function<void(std::size_t)> extend = [&](std::size_t start) {
    for (std::size_t i = start; i < laws; ++i) {
      picks.push_back(i);
      visit(picks);
      if (picks.size() < n_max) extend(i);
      picks.pop_back();
    }
  };
  extend(0);
}

std::string multiset_id(const std::vector<std::size_t>& picks) {
  std::string id;
  for (auto i : picks) id += (id.empty() ? "" : "-") + law_label(i);
  return id;
}

}  // namespace

std::vector<SweepInstance> family_instances(const SymmetricLatticeFamily& family) {
  const auto laws = family_laws(family);
  std::vector<SweepInstance> out;
  for_each_multiset(laws.size(), family.n_max, [&](const std::vector<std::size_t>& picks) {
    SweepInstance inst{multiset_id(picks), {}, std::nullopt};
    for (auto i : picks) inst.terms.push_back(laws[i]);
    out.push_back(std::move(inst));
  });
  return out;
}

SweepReport family_soundness_sweep(const SymmetricLatticeFamily& family, const ExactRational& h,
                                   std::span<const ExactRational> t_grid, const SweepOptions& options) {
  require_positive(h);
  if (family.n_max > options.max_n) {
    throw CapExceeded("family n_max = " + std::to_string(family.n_max) + " exceeds max_n = " +
                      std::to_string(options.max_n));
  }
  const auto laws = family_laws(family);
  std::vector<ExactRational> law_p;
  for (const auto& law : laws) law_p.push_back(abs_tail(law, h, false));

  std::vector<SweepReport> partial(laws.size());
  std::vector<std::exception_ptr> errors(laws.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t first = 0; first < static_cast<std::int64_t>(laws.size()); ++first) {
    try {
      SweepReport& report = partial[first];
      std::vector<std::size_t> picks;
      std::vector<ExactRational> p;
      std::function<void(std::size_t, const LatticeDistribution&)> visit = [&](std::size_t i,
                                                                              const LatticeDistribution& prefix) {
        if (prefix.size() * laws[i].size() > options.pair_cap) throw CapExceeded("family sum exceeds the pair cap");
        const auto sum = convolve(prefix, laws[i]);
        picks.push_back(i);
        p.push_back(law_p[i]);
        ++report.instances;
        check_sum(multiset_id(picks), sum, SuccessVector(p), h, t_grid, options.keep_rows, report);
        if (picks.size() < family.n_max) {
          for (std::size_t j = i; j < laws.size(); ++j) visit(j, sum);
        }
        picks.pop_back();
        p.pop_back();
      };
      visit(static_cast<std::size_t>(first), LatticeDistribution{});
    } catch (...) {
      errors[first] = std::current_exception();
    }
  }
  SweepReport report;
  for (std::size_t i = 0; i < partial.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    report.merge(std::move(partial[i]));
  }
  return report;
}

TightnessReport tightness_search(const SuccessVector& p, const ExactRational& h, unsigned m,
                                 const TightnessGrid& grid) {
  if (h <= 0) throw DomainError("h must be positive");
  if (m < 1 || m + 1 > p.size()) {
    throw DomainError("tightness probe needs 1 <= m <= n - 1 (t = m h inside [0, n h)), got m = " +
                      std::to_string(m) + ", n = " + std::to_string(p.size()));
  }
  for (const auto& hp : grid.h_primes) {
    if (hp < h) throw PreconditionError("perturbation point h' = " + to_string(hp) + " below h");
  }
  for (const auto& w : grid.weights) {
    if (w < 0 || w > 1) throw PreconditionError("perturbation weight outside [0,1]");
  }

  // Candidate laws per term, the unperturbed three-point law first.
  const auto extremal = extremal_distribution(p, h);
  std::vector<std::vector<LatticeDistribution>> candidates(p.size());
  std::size_t combinations = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto& list = candidates[i];
    list.push_back(extremal[i]);
    for (const auto& hp : grid.h_primes) {
      for (const auto& w : grid.weights) {
        const ExactRational outer = p[i] * w / 2;
        const ExactRational inner = p[i] * (1 - w) / 2;
        auto law = LatticeDistribution::from_atoms({{-hp, outer}, {-h, inner}, {0, 1 - p[i]}, {h, inner}, {hp, outer}});
        if (std::find(list.begin(), list.end(), law) == list.end()) list.push_back(std::move(law));
      }
    }
    combinations *= list.size();
    if (combinations > grid.max_combinations) {
      throw CapExceeded("tightness grid exceeds " + std::to_string(grid.max_combinations) + " combinations");
    }
  }

  TightnessReport report;
  report.t = h * m;
  report.bound = improved_bound(p, h, report.t);
  std::vector<std::size_t> choice;
  std::function<void(std::size_t, const LatticeDistribution&)> walk = [&](std::size_t i,
                                                                         const LatticeDistribution& prefix) {
    if (i == p.size()) {
      const ExactRational value = abs_half_tail(prefix, report.t);
      if (report.evaluated == 0) report.extremal_value = value;
      if (report.evaluated == 0 || value < report.best_value) {
        report.best_value = value;
        report.best_laws.clear();
        for (std::size_t k = 0; k < choice.size(); ++k) report.best_laws.push_back(candidates[k][choice[k]]);
      }
      ++report.evaluated;
      return;
    }
    for (std::size_t c = 0; c < candidates[i].size(); ++c) {
      choice.push_back(c);
      walk(i + 1, convolve(prefix, candidates[i][c]));
      choice.pop_back();
    }
  };
  walk(0, LatticeDistribution{});
  report.gap = report.best_value - report.bound;
  return report;
}

}  // namespace symtail
