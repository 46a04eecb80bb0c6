#pragma once

// Brute-force reference computations used only by the tests. Each one
// enumerates outcomes directly instead of going through the library.

#include "symtail/distribution.hpp"
#include "symtail/exact.hpp"
#include "symtail/rng.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace oracle {

using symtail::ExactRational;
using symtail::BigNatural;

// n! / (k! (n-k)!) by the multiplicative formula.
inline BigNatural choose(unsigned n, long k) {
  if (k < 0 || k > static_cast<long>(n)) return 0;
  BigNatural r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= static_cast<unsigned long>(n - k + i);
    r /= static_cast<unsigned long>(i);
  }
  return r;
}

// Largest sum of m distinct coefficients of row n: sort and take the top m.
inline BigNatural top_m_sum(unsigned n, unsigned m) {
  std::vector<BigNatural> row;
  for (unsigned k = 0; k <= n; ++k) row.push_back(choose(n, k));
  std::sort(row.begin(), row.end(), [](const BigNatural& a, const BigNatural& b) { return a > b; });
  BigNatural s = 0;
  for (unsigned i = 0; i < m && i < row.size(); ++i) s += row[i];
  return s;
}

using Law = std::map<ExactRational, ExactRational>;

inline Law as_map(const symtail::LatticeDistribution& d) {
  Law out;
  for (const auto& a : d.atoms()) out[a.x] = a.mass;
  return out;
}

// Law of the sum by walking every tuple of atoms.
inline Law sum_law(const std::vector<Law>& terms) {
  Law out;
  std::vector<Law::const_iterator> it;
  for (const auto& t : terms) it.push_back(t.begin());
  if (terms.empty()) return {{ExactRational(0), ExactRational(1)}};
  while (true) {
    ExactRational x = 0;
    ExactRational w = 1;
    for (const auto& i : it) {
      x += i->first;
      w *= i->second;
    }
    out[x] += w;
    std::size_t k = 0;
    while (k < terms.size()) {
      if (++it[k] != terms[k].end()) break;
      it[k] = terms[k].begin();
      ++k;
    }
    if (k == terms.size()) break;
  }
  for (auto i = out.begin(); i != out.end();) i = i->second == 0 ? out.erase(i) : std::next(i);
  return out;
}

inline Law sum_law(const std::vector<symtail::LatticeDistribution>& terms) {
  std::vector<Law> maps;
  for (const auto& t : terms) maps.push_back(as_map(t));
  return sum_law(maps);
}

// Number of successes over all 2^n outcomes.
inline std::vector<ExactRational> poisson_binomial(const std::vector<ExactRational>& p) {
  const unsigned n = static_cast<unsigned>(p.size());
  std::vector<ExactRational> mass(n + 1);
  for (unsigned mask = 0; mask < (1U << n); ++mask) {
    ExactRational w = 1;
    for (unsigned i = 0; i < n; ++i) w *= ((mask >> i) & 1U) ? p[i] : ExactRational(1 - p[i]);
    mass[static_cast<unsigned>(__builtin_popcount(mask))] += w;
  }
  return mass;
}

// Symmetric three-point convolution over all 3^n sign patterns.
inline Law three_point(const std::vector<ExactRational>& p, const ExactRational& h) {
  Law out;
  const std::size_t n = p.size();
  std::vector<int> s(n, -1);
  while (true) {
    ExactRational x = 0;
    ExactRational w = 1;
    for (std::size_t i = 0; i < n; ++i) {
      x += h * s[i];
      w *= s[i] == 0 ? ExactRational(1 - p[i]) : ExactRational(p[i] / 2);
    }
    if (w != 0) out[x] += w;
    std::size_t k = 0;
    while (k < n && s[k] == 1) s[k++] = -1;
    if (k == n) break;
    ++s[k];
  }
  return out;
}

inline ExactRational mass_where(const Law& law, auto pred) {
  ExactRational s = 0;
  for (const auto& [x, w] : law) {
    if (pred(x)) s += w;
  }
  return s;
}

inline ExactRational random_probability(symtail::Rng& rng, long max_den = 12) {
  const long den = rng.between(1, max_den);
  ExactRational q(rng.between(0, den), den);
  q.canonicalize();
  return q;
}

inline std::vector<ExactRational> random_p(symtail::Rng& rng, unsigned n, long max_den = 12) {
  std::vector<ExactRational> p;
  for (unsigned i = 0; i < n; ++i) p.push_back(random_probability(rng, max_den));
  return p;
}

// Random symmetric law on step*{-r..r} with masses on a 1/den grid.
inline symtail::LatticeDistribution random_symmetric(symtail::Rng& rng, unsigned r, long den,
                                                     const ExactRational& step, const ExactRational& shift = 0) {
  std::vector<long> units(r + 1, 0);
  long left = den;
  // mass units at +-k; the rest goes to 0, or to the innermost pair when shifted
  const bool centred = shift == 0;
  for (unsigned k = centred ? 1 : 0; k <= r && left > 0; ++k) {
    units[k] = rng.between(0, left / 2);
    left -= 2 * units[k];
  }
  std::vector<symtail::Atom> atoms;
  if (centred) {
    atoms.push_back({0, ExactRational(left, den)});
  } else {
    units[0] += left / 2;  // den must be even here
  }
  for (unsigned k = centred ? 1 : 0; k <= r; ++k) {
    if (units[k] == 0) continue;
    ExactRational w(units[k], den);
    w.canonicalize();
    const ExactRational x = step * static_cast<long>(k) + shift;
    atoms.push_back({x, w});
    atoms.push_back({-x, w});
  }
  return symtail::LatticeDistribution::from_atoms(std::move(atoms));
}

}  // namespace oracle
