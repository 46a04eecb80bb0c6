#include "symtail/ordering.hpp"

#include "symtail/bounds.hpp"
#include "symtail/errors.hpp"

namespace symtail {

namespace {

std::string term(const char* name, std::size_t i) { return std::string(name) + "_" + std::to_string(i + 1); }

// Records the first failed hypothesis.
struct Hypotheses {
  CheckResult& result;
  void require(bool ok, const std::string& what) {
    if (!ok && result.hypotheses_hold) {
      result.hypotheses_hold = false;
      result.violation = what;
    }
  }
};

}  // namespace

void validate(const ComparisonInstance& inst) {
  if (inst.xs.empty()) throw PreconditionError("comparison needs at least one term");
  if (inst.xs.size() != inst.ys.size()) throw PreconditionError("xs and ys differ in length");
  for (std::size_t i = 0; i < inst.xs.size(); ++i) {
    if (!is_symmetric(inst.xs[i])) throw PreconditionError(term("X", i) + " is not symmetric");
    if (!is_symmetric(inst.ys[i])) throw PreconditionError(term("Y", i) + " is not symmetric");
    if (!abs_stochastically_geq(inst.xs[i], inst.ys[i])) {
      throw PreconditionError("|" + term("X", i) + "| is not stochastically larger than |" + term("Y", i) + "|");
    }
  }
}

LatticeClass lattice_class(const LatticeDistribution& d, const ExactRational& h) {
  if (supported_on(d, h, 0)) return LatticeClass::integer;
  if (supported_on(d, h, h / 2)) return LatticeClass::half_integer;
  return LatticeClass::other;
}

PrussReport pruss_check(const ComparisonInstance& inst, std::span<const ExactRational> t_grid, std::size_t pair_cap) {
  validate(inst);
  const auto s = exact_sum_distribution(inst.xs, pair_cap);
  const auto t_sum = exact_sum_distribution(inst.ys, pair_cap);
  PrussReport report;
  for (const auto& t : t_grid) {
    if (t <= 0) continue;
    PrussRow row{t, abs_tail(s, t, false), abs_tail(t_sum, t, false)};
    if (2 * row.lhs < row.rhs) report.holds = false;
    if (row.rhs > 0) {
      ExactRational ratio = row.lhs / row.rhs;
      if (!report.min_ratio || ratio < *report.min_ratio) report.min_ratio = ratio;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

HalfMassReport half_mass_check(const ComparisonInstance& inst, const ExactRational& h, unsigned m_max,
                               std::size_t pair_cap) {
  if (h <= 0) throw DomainError("h must be positive");
  validate(inst);
  std::vector<ExactRational> p;
  for (std::size_t i = 0; i < inst.ys.size(); ++i) {
    for (const auto& a : inst.ys[i].atoms()) {
      if (a.x != 0 && abs(a.x) != h) throw PreconditionError(term("Y", i) + " is not supported on {-h, 0, h}");
    }
    p.push_back(abs_tail(inst.ys[i], h, false));
  }
  const SuccessVector pv(std::move(p));
  const auto s = exact_sum_distribution(inst.xs, pair_cap);
  const auto t_sum = exact_sum_distribution(inst.ys, pair_cap);
  HalfMassReport report;
  for (unsigned m = 1; m <= m_max; ++m) {
    const ExactRational t = h * m;
    HalfMassRow row{m, abs_half_tail(s, t), abs_half_tail(t_sum, t), 1 - kanter_supremum(pv, m)};
    if (row.lhs < row.rhs) report.holds = false;
    if (row.lhs < row.kanter_floor) report.kanter_floor_holds = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

CheckResult birnbaum_check(const ComparisonInstance& inst, const ExactRational& h, std::size_t pair_cap) {
  if (h < 0) throw DomainError("span h must be nonnegative");
  if (inst.xs.empty() || inst.xs.size() != inst.ys.size()) {
    throw PreconditionError("xs and ys must be non-empty and of equal length");
  }
  CheckResult result;
  Hypotheses hyp{result};
  for (std::size_t i = 0; i < inst.xs.size(); ++i) {
    hyp.require(is_symmetric(inst.xs[i]), term("X", i) + " is not symmetric");
    hyp.require(is_symmetric(inst.ys[i]), term("Y", i) + " is not symmetric");
    hyp.require(abs_stochastically_geq(inst.xs[i], inst.ys[i]),
                "|" + term("X", i) + "| is not stochastically larger than |" + term("Y", i) + "|");
    hyp.require(is_unimodal_with_span(inst.xs[i], h), term("X", i) + " is not unimodal with span " + to_string(h));
    hyp.require(is_unimodal_with_span(inst.ys[i], h), term("Y", i) + " is not unimodal with span " + to_string(h));
    if (h > 0) {
      const auto cx = lattice_class(inst.xs[i], h);
      hyp.require(cx != LatticeClass::other && cx == lattice_class(inst.ys[i], h),
                  term("X", i) + " and " + term("Y", i) + " are not both on hZ or both on h(Z+1/2)");
    }
  }
  const auto s = exact_sum_distribution(inst.xs, pair_cap);
  const auto t_sum = exact_sum_distribution(inst.ys, pair_cap);
  result.conclusion = abs_stochastically_geq(s, t_sum);
  return result;
}

CheckResult convolution_order_check(const LatticeDistribution& u, const LatticeDistribution& v, const LatticeDistribution& w,
                          const ExactRational& h) {
  if (h < 0) throw DomainError("span h must be nonnegative");
  CheckResult result;
  Hypotheses hyp{result};
  hyp.require(is_symmetric(u) && is_symmetric(v) && is_symmetric(w), "U, V, W must be symmetric");
  hyp.require(abs_stochastically_geq(v, w), "|V| is not stochastically larger than |W|");
  hyp.require(is_unimodal_with_span(u, h), "U is not unimodal with span " + to_string(h));
  if (h > 0) {
    const auto cv = lattice_class(v, h);
    hyp.require(cv != LatticeClass::other && cv == lattice_class(w, h),
                "V and W are not both on hZ or both on h(Z+1/2)");
  }
  result.conclusion = abs_stochastically_geq(convolve(u, v), convolve(u, w));
  return result;
}

CheckResult wintner_check(const LatticeDistribution& x, const LatticeDistribution& y, const ExactRational& h) {
  if (h < 0) throw DomainError("span h must be nonnegative");
  CheckResult result;
  Hypotheses hyp{result};
  hyp.require(is_symmetric(x) && is_symmetric(y), "X and Y must be symmetric");
  hyp.require(is_unimodal_with_span(x, h) && is_unimodal_with_span(y, h),
              "X and Y must be unimodal with span " + to_string(h));
  if (h > 0) {
    hyp.require(lattice_class(x, h) != LatticeClass::other && lattice_class(y, h) != LatticeClass::other,
                "X and Y must each lie on hZ or h(Z+1/2)");
  }
  const auto sum = convolve(x, y);
  result.conclusion = is_symmetric(sum) && is_unimodal_with_span(sum, h);
  return result;
}

}  // namespace symtail
