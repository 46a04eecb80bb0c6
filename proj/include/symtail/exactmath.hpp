#pragma once

#include "symtail/exact.hpp"

#include <cstddef>
#include <shared_mutex>
#include <vector>

namespace symtail {

/// Lazily grown table of Pascal rows 0..cap. Safe for concurrent use:
/// readers share a lock, growth takes it exclusively. Rows beyond the cap
/// are not stored; callers fall back to direct evaluation.
class PascalCache {
 public:
  explicit PascalCache(std::size_t cap = 512) : cap_(cap) {}

  std::size_t cap() const { return cap_; }

  /// C(n, k) for n <= cap(); 0 outside [0, n].
  BigNatural coefficient(std::size_t n, long k);

  /// Copy of row n (n <= cap()).
  std::vector<BigNatural> row(std::size_t n);

  static PascalCache& global();

 private:
  void grow_to(std::size_t n);

  std::size_t cap_;
  std::shared_mutex mutex_;
  std::vector<std::vector<BigNatural>> rows_;
};

/// C(n, k), with C(n, k) = 0 for k < 0 or k > n.
BigNatural binomial(unsigned n, long k);

/// F_n(m): the sum of the m largest binomial coefficients of order n,
/// i.e. the largest sum of m consecutive entries of row n of Pascal's
/// triangle. The optimal window starts at floor((n - m + 1) / 2), and
/// F_n(m) = 2^n as soon as m > n.
BigNatural largest_binomial_sum(unsigned n, unsigned m);

/// F_n(m) / 2^n, non-increasing in n for fixed m.
ExactRational largest_binomial_ratio(unsigned n, unsigned m);

/// Sum of C(n, i) for i in [start, start + m). Exposed for the window
/// equivalence checks.
BigNatural binomial_window_sum(unsigned n, long start, unsigned m);

}  // namespace symtail
