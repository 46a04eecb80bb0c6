#include "symtail/kleitman.hpp"

#include "symtail/errors.hpp"
#include "symtail/exactmath.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <type_traits>
#include <utility>

namespace symtail {

namespace {

// For the euclidean norm every comparison is made on squared norms.
bool squared(Norm norm) { return norm == Norm::euclidean; }

ExactRational rational_measure(Norm norm, const RationalPoint& x) {
  ExactRational acc = 0;
  for (const auto& c : x) {
    switch (norm) {
      case Norm::euclidean: acc += c * c; break;
      case Norm::sup: acc = std::max(acc, ExactRational(abs(c))); break;
      case Norm::one:
      case Norm::absolute: acc += abs(c); break;
    }
  }
  return acc;
}

ExactRational radius_measure(Norm norm, const ExactRational& r) { return squared(norm) ? r * r : r; }

bool in_union_rational(const KleitmanInstance& inst, const RationalPoint& s) {
  RationalPoint diff(inst.dimension);
  for (const auto& ball : inst.targets) {
    for (unsigned k = 0; k < inst.dimension; ++k) diff[k] = s[k] - ball.center[k];
    if (rational_measure(inst.norm, diff) < radius_measure(inst.norm, ball.radius)) return true;
  }
  return false;
}

// Integer data after multiplying every coordinate and radius by a common
// denominator.
template <class Int>
struct ScaledInstance {
  unsigned d = 0;
  Norm norm = Norm::absolute;
  std::vector<Int> vectors;  // n * d, row-major
  std::vector<Int> centers;  // m * d
  std::vector<Int> radii;    // m
};

inline __int128 widen(std::int64_t x) { return x; }
inline const mpz_class& widen(const mpz_class& x) { return x; }

template <class Int>
bool in_union(const ScaledInstance<Int>& inst, const std::vector<Int>& s) {
  using Wide = std::remove_cvref_t<decltype(widen(std::declval<Int>()))>;
  const std::size_t m = inst.radii.size();
  for (std::size_t j = 0; j < m; ++j) {
    const Int* c = &inst.centers[j * inst.d];
    if (inst.norm == Norm::euclidean) {
      Wide acc = 0;
      for (unsigned k = 0; k < inst.d; ++k) {
        const Wide diff = widen(s[k]) - widen(c[k]);
        acc += diff * diff;
      }
      const Wide r = widen(inst.radii[j]);
      if (acc < r * r) return true;
    } else if (inst.norm == Norm::sup) {
      bool inside = true;
      for (unsigned k = 0; k < inst.d && inside; ++k) {
        const Wide diff = widen(s[k]) - widen(c[k]);
        inside = (diff < 0 ? Wide(-diff) : diff) < widen(inst.radii[j]);
      }
      if (inside) return true;
    } else {
      Wide acc = 0;
      for (unsigned k = 0; k < inst.d; ++k) {
        const Wide diff = widen(s[k]) - widen(c[k]);
        acc += diff < 0 ? Wide(-diff) : diff;
      }
      if (acc < widen(inst.radii[j])) return true;
    }
  }
  return false;
}

template <class Int>
std::uint64_t gray_count(const ScaledInstance<Int>& inst, unsigned n) {
  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t chunks = std::min<std::uint64_t>(total, 1024);
  const unsigned d = inst.d;
  std::uint64_t count = 0;

#pragma omp parallel for schedule(dynamic) reduction(+ : count)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    const std::uint64_t begin = total / chunks * static_cast<std::uint64_t>(c);
    const std::uint64_t end = total / chunks * static_cast<std::uint64_t>(c + 1);
    std::vector<Int> sum(d, Int(0));
    const std::uint64_t g0 = begin ^ (begin >> 1);
    for (unsigned i = 0; i < n; ++i) {
      if ((g0 >> i) & 1U) {
        for (unsigned k = 0; k < d; ++k) sum[k] += inst.vectors[i * d + k];
      }
    }
    std::uint64_t local = in_union(inst, sum) ? 1 : 0;
    for (std::uint64_t idx = begin + 1; idx < end; ++idx) {
      const unsigned bit = static_cast<unsigned>(std::countr_zero(idx));
      const bool entering = ((idx ^ (idx >> 1)) >> bit) & 1U;
      const Int* a = &inst.vectors[bit * d];
      if (entering) {
        for (unsigned k = 0; k < d; ++k) sum[k] += a[k];
      } else {
        for (unsigned k = 0; k < d; ++k) sum[k] -= a[k];
      }
      if (in_union(inst, sum)) ++local;
    }
    count += local;
  }
  return count;
}

BigInteger common_denominator(const KleitmanInstance& inst) {
  BigInteger l = 1;
  auto absorb = [&](const ExactRational& q) { mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t()); };
  for (const auto& v : inst.vectors) std::for_each(v.begin(), v.end(), absorb);
  for (const auto& b : inst.targets) {
    std::for_each(b.center.begin(), b.center.end(), absorb);
    absorb(b.radius);
  }
  return l;
}

template <class Int, class Convert>
ScaledInstance<Int> scale(const KleitmanInstance& inst, const BigInteger& l, Convert convert) {
  ScaledInstance<Int> s;
  s.d = inst.dimension;
  s.norm = inst.norm;
  auto to_int = [&](const ExactRational& q) { return convert(BigInteger(q.get_num() * (l / q.get_den()))); };
  for (const auto& v : inst.vectors) {
    for (const auto& c : v) s.vectors.push_back(to_int(c));
  }
  for (const auto& b : inst.targets) {
    for (const auto& c : b.center) s.centers.push_back(to_int(c));
    s.radii.push_back(to_int(b.radius));
  }
  return s;
}

}  // namespace

Norm parse_norm(std::string_view name) {
  if (name == "euclidean") return Norm::euclidean;
  if (name == "sup") return Norm::sup;
  if (name == "one") return Norm::one;
  if (name == "absolute") return Norm::absolute;
  throw SchemaError("unknown norm '" + std::string(name) + "' (euclidean, sup, one, absolute)");
}

std::string_view norm_name(Norm norm) {
  switch (norm) {
    case Norm::euclidean: return "euclidean";
    case Norm::sup: return "sup";
    case Norm::one: return "one";
    case Norm::absolute: return "absolute";
  }
  return "?";
}

void validate(const KleitmanInstance& inst) {
  if (inst.dimension == 0) throw PreconditionError("dimension must be positive");
  if (inst.vectors.empty()) throw PreconditionError("need at least one vector");
  if (inst.targets.empty()) throw PreconditionError("need at least one target set");
  if (inst.vectors.size() > kMaxKleitmanTerms) {
    throw CapExceeded("subset enumeration limited to n <= " + std::to_string(kMaxKleitmanTerms) + ", got " +
                      std::to_string(inst.vectors.size()));
  }
  if (inst.norm == Norm::absolute && inst.dimension != 1) {
    throw PreconditionError("the absolute-value norm needs dimension 1");
  }
  for (const auto& v : inst.vectors) {
    if (v.size() != inst.dimension) throw PreconditionError("vector of wrong dimension");
  }
  ExactRational min_measure = rational_measure(inst.norm, inst.vectors.front());
  for (const auto& v : inst.vectors) min_measure = std::min(min_measure, rational_measure(inst.norm, v));
  for (const auto& b : inst.targets) {
    if (b.center.size() != inst.dimension) throw PreconditionError("target centre of wrong dimension");
    if (b.radius <= 0) throw PreconditionError("target radius must be positive");
    if (!(radius_measure(inst.norm, 2 * b.radius) < min_measure)) {
      throw PreconditionError("target diameter 2*" + to_string(b.radius) + " is not below min ||a_i||");
    }
  }
}

KleitmanResult kleitman_count(const KleitmanInstance& inst) {
  validate(inst);
  KleitmanResult r;
  r.n = static_cast<unsigned>(inst.vectors.size());
  r.m = static_cast<unsigned>(inst.targets.size());
  r.bound = largest_binomial_sum(r.n, r.m);

  const BigInteger l = common_denominator(inst);
  auto big = scale<mpz_class>(inst, l, [](BigInteger v) { return v; });

  // Largest coordinate any subset sum or centre difference can reach.
  BigInteger reach = 0;
  for (unsigned k = 0; k < inst.dimension; ++k) {
    BigInteger column = 0;
    for (unsigned i = 0; i < r.n; ++i) column += abs(big.vectors[i * inst.dimension + k]);
    reach = std::max(reach, column);
  }
  BigInteger far = 0;
  for (const auto& c : big.centers) far = std::max(far, BigInteger(abs(c)));
  for (const auto& rad : big.radii) far = std::max(far, rad);
  reach += far;

  const bool fits = inst.dimension <= 16 && mpz_sizeinbase(reach.get_mpz_t(), 2) <= 60;
  if (fits) {
    auto small = scale<std::int64_t>(inst, l, [](const BigInteger& v) { return static_cast<std::int64_t>(v.get_si()); });
    r.count = static_cast<unsigned long>(gray_count(small, r.n));
  } else {
    r.count = static_cast<unsigned long>(gray_count(big, r.n));
  }
  return r;
}

BigNatural kleitman_count_serial(const KleitmanInstance& inst) {
  validate(inst);
  const unsigned n = static_cast<unsigned>(inst.vectors.size());
  BigNatural count = 0;
  RationalPoint s(inst.dimension);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::fill(s.begin(), s.end(), ExactRational(0));
    for (unsigned i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) {
        for (unsigned k = 0; k < inst.dimension; ++k) s[k] += inst.vectors[i][k];
      }
    }
    if (in_union_rational(inst, s)) ++count;
  }
  return count;
}

KleitmanInstance kleitman_equality_instance(unsigned n, unsigned m) {
  KleitmanInstance inst;
  inst.dimension = 1;
  inst.norm = Norm::absolute;
  inst.vectors.assign(n, RationalPoint{ExactRational(1)});
  const BigInteger first = floor_int(ExactRational(static_cast<long>(n) - static_cast<long>(m) + 1, 2));
  for (unsigned j = 0; j < m; ++j) {
    inst.targets.push_back(Ball{{ExactRational(first + j)}, ExactRational(1, 4)});
  }
  return inst;
}

KleitmanInstance random_kleitman_instance(Rng& rng, unsigned n, unsigned m, unsigned dimension, Norm norm) {
  if (norm == Norm::absolute) dimension = 1;
  KleitmanInstance inst;
  inst.dimension = dimension;
  inst.norm = norm;
  ExactRational min_sup = -1;
  while (inst.vectors.size() < n) {
    RationalPoint v(dimension);
    const long den = rng.between(1, 3);
    bool zero = true;
    for (auto& c : v) {
      c = ExactRational(rng.between(-4, 4), den);
      c.canonicalize();
      zero = zero && c == 0;
    }
    if (zero) continue;
    const ExactRational sup = rational_measure(Norm::sup, v);
    if (min_sup < 0 || sup < min_sup) min_sup = sup;
    inst.vectors.push_back(std::move(v));
  }
  // 2r < min sup-norm <= min of any of the supported norms
  for (unsigned j = 0; j < m; ++j) {
    ExactRational r = min_sup * ExactRational(rng.between(1, 7), 16);
    r.canonicalize();
    RationalPoint center(dimension, ExactRational(0));
    for (unsigned i = 0; i < n; ++i) {
      if (rng.coin()) {
        for (unsigned k = 0; k < dimension; ++k) center[k] += inst.vectors[i][k];
      }
    }
    for (auto& c : center) {
      ExactRational jitter = r * ExactRational(rng.between(-4, 4), 8);
      jitter.canonicalize();
      c += jitter;
    }
    inst.targets.push_back(Ball{std::move(center), std::move(r)});
  }
  return inst;
}

}  // namespace symtail
