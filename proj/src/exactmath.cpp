#include "symtail/exactmath.hpp"

#include <algorithm>
#include <mutex>

namespace symtail {

PascalCache& PascalCache::global() {
  static PascalCache cache;
  return cache;
}

void PascalCache::grow_to(std::size_t n) {
  std::unique_lock lock(mutex_);
  if (rows_.empty()) rows_.push_back({BigNatural(1)});
  while (rows_.size() <= n) {
    const auto& prev = rows_.back();
    std::vector<BigNatural> next(prev.size() + 1);
    next.front() = 1;
    next.back() = 1;
    for (std::size_t i = 1; i + 1 < next.size(); ++i) next[i] = prev[i - 1] + prev[i];
    rows_.push_back(std::move(next));
  }
}

BigNatural PascalCache::coefficient(std::size_t n, long k) {
  if (k < 0 || static_cast<std::size_t>(k) > n) return 0;
  {
    std::shared_lock lock(mutex_);
    if (n < rows_.size()) return rows_[n][static_cast<std::size_t>(k)];
  }
  grow_to(n);
  std::shared_lock lock(mutex_);
  return rows_[n][static_cast<std::size_t>(k)];
}

std::vector<BigNatural> PascalCache::row(std::size_t n) {
  {
    std::shared_lock lock(mutex_);
    if (n < rows_.size()) return rows_[n];
  }
  grow_to(n);
  std::shared_lock lock(mutex_);
  return rows_[n];
}

BigNatural binomial(unsigned n, long k) {
  if (k < 0 || k > static_cast<long>(n)) return 0;
  auto& cache = PascalCache::global();
  if (n <= cache.cap()) return cache.coefficient(n, k);
  BigNatural r;
  mpz_bin_uiui(r.get_mpz_t(), n, static_cast<unsigned long>(k));
  return r;
}

BigNatural binomial_window_sum(unsigned n, long start, unsigned m) {
  BigNatural sum = 0;
  const long lo = std::max<long>(start, 0);
  const long hi = std::min<long>(start + static_cast<long>(m) - 1, static_cast<long>(n));
  for (long i = lo; i <= hi; ++i) sum += binomial(n, i);
  return sum;
}

BigNatural largest_binomial_sum(unsigned n, unsigned m) {
  if (m > n) return pow2(n);
  // floor((n - m + 1) / 2) with n - m + 1 >= 1
  const long start = (static_cast<long>(n) - static_cast<long>(m) + 1) / 2;
  return binomial_window_sum(n, start, m);
}

ExactRational largest_binomial_ratio(unsigned n, unsigned m) {
  ExactRational r(largest_binomial_sum(n, m), pow2(n));
  r.canonicalize();
  return r;
}

}  // namespace symtail
