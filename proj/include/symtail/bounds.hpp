#pragma once

#include "symtail/distribution.hpp"

#include <map>
#include <span>
#include <vector>

namespace symtail {

/// One summand of the improved bound: the Poisson binomial mass at k and
/// its weight 1 - 2^{-k} F_k(m).
struct BoundTerm {
  unsigned k = 0;
  ExactRational poisson_mass;
  ExactRational weight;
};

struct BoundReport {
  ExactRational t;
  ExactRational h;
  unsigned n = 0;
  unsigned m = 0;  // floor(t/h) + 1
  ExactRational nagaev;
  ExactRational improved;
  ExactRational kanter_sup;
  std::vector<BoundTerm> per_k_terms;
};

/// m = floor(t/h) + 1, the number of length-2h windows needed to cover [-t, t].
unsigned window_count(const ExactRational& t, const ExactRational& h);

/// Lower bound sum_{k > t/h} 2^{-k} B_p({k}) on P(|S| > t).
/// Requires h > 0 and 0 <= t < n h; throws DomainError otherwise.
ExactRational nagaev_bound(const SuccessVector& p, const ExactRational& h, const ExactRational& t);

/// Lower bound sum_{k > t/h} (1 - 2^{-k} F_k(m)) B_p({k}) on P(|S| > t)
/// with m = floor(t/h) + 1. Same domain as nagaev_bound.
ExactRational improved_bound(const SuccessVector& p, const ExactRational& h, const ExactRational& t);

/// sum_{k=0}^n 2^{-k} F_k(m) B_p({k}); the largest mass that a sum of n
/// independent symmetric terms with P(|X_i| >= h) >= p_i can put on m
/// windows of diameter below 2h.
ExactRational kanter_supremum(const SuccessVector& p, unsigned m);

/// The same supremum read off the symmetric three-point convolution:
/// STPC_p([-m+1, m]).
ExactRational kanter_supremum_via_stpc(const SuccessVector& p, unsigned m);

/// Both bounds, the supremum and the per-k audit trail at (t, h).
BoundReport evaluate_bounds(const SuccessVector& p, const ExactRational& h, const ExactRational& t);

/// The n laws (1-p_i) delta_0 + p_i/2 (delta_{-h} + delta_h) attaining the supremum.
std::vector<LatticeDistribution> extremal_distribution(const SuccessVector& p, const ExactRational& h);

struct SupremumCheck {
  unsigned m = 0;        // ceil(H/h)
  ExactRational shift;   // a = m h - H
  ExactRational sup;
  ExactRational attained;  // P(S in ]-H, H] + a) under the extremal laws
};

/// Evaluates the supremum of P(S in ]-H, H] + a) and its value under the
/// extremal laws. Requires 0 < h <= H and ceil(H/h) < H/h + 1/2; throws
/// DomainError otherwise.
SupremumCheck supremum_attainment_check(const SuccessVector& p, const ExactRational& h, const ExactRational& H);

/// p_i = P(|X_i| >= h).
SuccessVector success_vector(std::span<const LatticeDistribution> terms, const ExactRational& h);

/// Distinct positive values of |x| over the supports of the terms; the
/// success vector only changes when h crosses one of them.
std::vector<ExactRational> h_candidates(std::span<const LatticeDistribution> terms);

struct HChoice {
  ExactRational h;
  ExactRational bound;
};

/// Picks the candidate h maximizing improved_bound(p(h), h, t). Candidates
/// outside the domain (t >= n h) are skipped; ties go to the smaller h.
/// Throws DomainError when no candidate is left.
HChoice optimize_h(const std::map<ExactRational, SuccessVector>& candidates, const ExactRational& t);

}  // namespace symtail
