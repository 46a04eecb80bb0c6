#pragma once

#include "symtail/exact.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace symtail {

class SuccessVector;

struct Atom {
  ExactRational x;
  ExactRational mass;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite probability law on a rational lattice span*Z + offset.
///
/// Atoms are kept sorted by location, every stored mass is strictly
/// positive and the masses sum to exactly one. `span()` is the minimal
/// span, the gcd of all gaps between support points; it is zero only for a
/// point mass. `offset()` is the representative of the lattice class in
/// [0, span) (for a point mass, the atom itself).
class LatticeDistribution {
 public:
  /// The point mass at zero.
  LatticeDistribution();

  static LatticeDistribution point_mass(const ExactRational& c);

  /// Merges repeated locations and drops zero masses. Throws
  /// PreconditionError on a negative mass or a total different from one.
  static LatticeDistribution from_atoms(std::vector<Atom> atoms);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  const ExactRational& span() const { return span_; }
  const ExactRational& offset() const { return offset_; }
  const ExactRational& min() const { return atoms_.front().x; }
  const ExactRational& max() const { return atoms_.back().x; }
  bool is_point_mass() const { return atoms_.size() == 1; }

  ExactRational mass_at(const ExactRational& x) const;

  /// Law of -X.
  LatticeDistribution reflected() const;
  /// Law of c*X for c > 0.
  LatticeDistribution scaled(const ExactRational& c) const;

  friend bool operator==(const LatticeDistribution& a, const LatticeDistribution& b) {
    return a.atoms_ == b.atoms_;
  }

 private:
  struct Trusted {};
  LatticeDistribution(Trusted, std::vector<Atom> sorted_positive_atoms);

  friend LatticeDistribution convolve(const LatticeDistribution&, const LatticeDistribution&);
  friend LatticeDistribution poisson_binomial(const SuccessVector&);
  friend LatticeDistribution symmetric_three_point(const SuccessVector&, const ExactRational&);

  std::vector<Atom> atoms_;
  ExactRational span_;
  ExactRational offset_;
};

/// p in [0,1]^n, n >= 1.
class SuccessVector {
 public:
  explicit SuccessVector(std::vector<ExactRational> entries);

  std::span<const ExactRational> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const ExactRational& operator[](std::size_t i) const { return entries_[i]; }

  friend bool operator==(const SuccessVector&, const SuccessVector&) = default;

 private:
  std::vector<ExactRational> entries_;
};

/// Exact law of the sum of independent draws.
LatticeDistribution convolve(const LatticeDistribution& a, const LatticeDistribution& b);

/// Poisson binomial law B_p, the convolution of Bernoulli(p_i) laws, on {0..n}.
LatticeDistribution poisson_binomial(const SuccessVector& p);

/// Convolution of the three-point laws (1-p_i) delta_0 + p_i/2 (delta_{-h} + delta_h).
LatticeDistribution symmetric_three_point(const SuccessVector& p, const ExactRational& h);

/// Mass of the interval between lo and hi with the given endpoint inclusion.
ExactRational interval_mass(const LatticeDistribution& d, const ExactRational& lo, const ExactRational& hi,
                            bool lo_closed, bool hi_closed);

/// P(|X| > t) when strict, else P(|X| >= t).
ExactRational abs_tail(const LatticeDistribution& d, const ExactRational& t, bool strict);

/// P(|X| > t) + P(|X| = t) / 2.
ExactRational abs_half_tail(const LatticeDistribution& d, const ExactRational& t);

/// Law of |X|.
LatticeDistribution absolute_value(const LatticeDistribution& d);

bool is_symmetric(const LatticeDistribution& d);

/// True iff every support point lies in h*Z + a (h > 0).
bool supported_on(const LatticeDistribution& d, const ExactRational& h, const ExactRational& a);

/// Unimodality with span h. For h > 0 the support must sit on h*Z + a for
/// some a and the mass sequence over consecutive lattice points (unoccupied
/// points counted as zero) must rise weakly and then fall weakly. For
/// h = 0 only point masses qualify.
bool is_unimodal_with_span(const LatticeDistribution& d, const ExactRational& h);

/// |U| stochastically larger than |V|: P(|U| >= t) >= P(|V| >= t) for all t.
/// Checked at the absolute support points of both laws.
bool abs_stochastically_geq(const LatticeDistribution& u, const LatticeDistribution& v);

}  // namespace symtail
