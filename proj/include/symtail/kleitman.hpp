#pragma once

#include "symtail/exact.hpp"
#include "symtail/rng.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace symtail {

enum class Norm { euclidean, sup, one, absolute };

Norm parse_norm(std::string_view name);
std::string_view norm_name(Norm norm);

using RationalPoint = std::vector<ExactRational>;

/// Open ball {x : ||x - center|| < radius}.
struct Ball {
  RationalPoint center;
  ExactRational radius;
};

/// Subset-sum configuration: n vectors a_i in Q^d and m target balls whose
/// diameters stay below min_i ||a_i||.
struct KleitmanInstance {
  unsigned dimension = 1;
  std::vector<RationalPoint> vectors;
  Norm norm = Norm::absolute;
  std::vector<Ball> targets;
};

/// Largest n accepted by the enumerators.
inline constexpr unsigned kMaxKleitmanTerms = 24;

/// Throws PreconditionError unless n, m, d >= 1, all points have dimension
/// d, the absolute norm is only used with d = 1, n <= 24, and
/// 2 radius_j < min_i ||a_i|| for every target.
void validate(const KleitmanInstance& inst);

struct KleitmanResult {
  unsigned n = 0;
  unsigned m = 0;
  BigNatural count;  // subsets I (empty set included) with sum in the union
  BigNatural bound;  // F_n(m)
  bool holds() const { return count <= bound; }
};

/// Counts subsets by Gray-code enumeration over integer-scaled data, split
/// into independent chunks across OpenMP threads.
KleitmanResult kleitman_count(const KleitmanInstance& inst);

/// Reference count: every subset sum recomputed from scratch in exact
/// rational arithmetic, single thread. Meant for n up to about 14.
BigNatural kleitman_count_serial(const KleitmanInstance& inst);

/// a_1 = ... = a_n = 1 on the real line with targets the points
/// floor((n-m+1)/2) + j - 1, fattened to open balls of radius 1/4.
KleitmanInstance kleitman_equality_instance(unsigned n, unsigned m);

/// Random instance satisfying the diameter hypothesis. Vectors have small
/// rational coordinates; targets are centred near random subset sums so
/// that counts are typically nonzero.
KleitmanInstance random_kleitman_instance(Rng& rng, unsigned n, unsigned m, unsigned dimension, Norm norm);

}  // namespace symtail
