#pragma once

#include "symtail/distribution.hpp"
#include "symtail/oracles.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace symtail {

/// Laws of X_1..X_n and Y_1..Y_n with S = sum X_i and T = sum Y_i.
struct ComparisonInstance {
  std::vector<LatticeDistribution> xs;
  std::vector<LatticeDistribution> ys;
};

/// Throws PreconditionError unless xs and ys are non-empty and of equal
/// length, every law is symmetric, and |X_i| >= |Y_i| stochastically.
void validate(const ComparisonInstance& inst);

/// Outcome of a conditional statement: whether the hypotheses held (and if
/// not, which one failed first) and whether the conclusion held. A false
/// conclusion under violated hypotheses is not a counterexample.
struct CheckResult {
  bool hypotheses_hold = true;
  std::string violation;
  bool conclusion = false;

  bool counterexample() const { return hypotheses_hold && !conclusion; }
};

enum class LatticeClass { integer, half_integer, other };

/// Whether d lives on h*Z, on h*(Z + 1/2), or neither (h > 0).
LatticeClass lattice_class(const LatticeDistribution& d, const ExactRational& h);

struct PrussRow {
  ExactRational t;
  ExactRational lhs;  // P(|S| >= t)
  ExactRational rhs;  // P(|T| >= t)
};

struct PrussReport {
  std::vector<PrussRow> rows;
  std::optional<ExactRational> min_ratio;  // over rows with rhs > 0
  bool holds = true;                       // lhs >= rhs / 2 on every row
};

/// P(|S| >= t) >= P(|T| >= t) / 2 for every t > 0 of the grid (t <= 0 is skipped).
PrussReport pruss_check(const ComparisonInstance& inst, std::span<const ExactRational> t_grid,
                        std::size_t pair_cap = kDefaultPairCap);

struct HalfMassRow {
  unsigned m = 0;
  ExactRational lhs;           // P(|S| > mh) + P(|S| = mh)/2
  ExactRational rhs;           // same for T
  ExactRational kanter_floor;  // 1 - kanter_supremum(p, m), p_i = P(|Y_i| = h)
};

struct HalfMassReport {
  std::vector<HalfMassRow> rows;
  bool holds = true;              // lhs >= rhs on every row
  bool kanter_floor_holds = true;  // lhs >= kanter_floor on every row
};

/// Half-mass comparison at t = mh, m = 1..m_max, for Y_i on {-h, 0, h}.
/// Throws PreconditionError when some Y_i has other support points.
HalfMassReport half_mass_check(const ComparisonInstance& inst, const ExactRational& h, unsigned m_max,
                               std::size_t pair_cap = kDefaultPairCap);

/// |S| >= |T| stochastically, for all 2n laws unimodal with span h and
/// (h > 0) each pair X_i, Y_i both on hZ or both on h(Z + 1/2).
CheckResult birnbaum_check(const ComparisonInstance& inst, const ExactRational& h,
                           std::size_t pair_cap = kDefaultPairCap);

/// |U + V| >= |U + W| stochastically, for symmetric U, V, W with
/// |V| >= |W|, U unimodal with span h, and (h > 0) V, W on the same of
/// hZ, h(Z + 1/2).
CheckResult convolution_order_check(const LatticeDistribution& u, const LatticeDistribution& v, const LatticeDistribution& w,
                          const ExactRational& h);

/// X + Y is symmetric and unimodal with span h whenever X and Y are.
CheckResult wintner_check(const LatticeDistribution& x, const LatticeDistribution& y, const ExactRational& h);

}  // namespace symtail
