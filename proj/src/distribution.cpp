#include "symtail/distribution.hpp"

#include "symtail/errors.hpp"

#include <algorithm>
#include <map>

namespace symtail {

namespace {

// Dense accumulation is used while the lattice range stays within this
// multiple of the number of atom pairs; otherwise products go through a map.
constexpr std::size_t kDenseSlack = 4;

std::size_t to_index(const ExactRational& q) {
  // q is a nonnegative integer by construction
  return static_cast<std::size_t>(q.get_num().get_ui());
}

}  // namespace

LatticeDistribution::LatticeDistribution() : LatticeDistribution(Trusted{}, {Atom{0, 1}}) {}

LatticeDistribution::LatticeDistribution(Trusted, std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  span_ = 0;
  for (std::size_t i = 1; i < atoms_.size(); ++i) span_ = rational_gcd(span_, atoms_[i].x - atoms_[0].x);
  if (span_ == 0) {
    offset_ = atoms_.front().x;
  } else {
    offset_ = atoms_.front().x - ExactRational(floor_int(atoms_.front().x / span_)) * span_;
  }
}

LatticeDistribution LatticeDistribution::point_mass(const ExactRational& c) {
  return LatticeDistribution(Trusted{}, {Atom{c, 1}});
}

LatticeDistribution LatticeDistribution::from_atoms(std::vector<Atom> atoms) {
  std::map<ExactRational, ExactRational> merged;
  ExactRational total = 0;
  for (auto& a : atoms) {
    a.x.canonicalize();
    a.mass.canonicalize();
    if (a.mass < 0) throw PreconditionError("negative mass " + to_string(a.mass) + " at " + to_string(a.x));
    total += a.mass;
    merged[a.x] += a.mass;
  }
  if (total != 1) throw PreconditionError("masses sum to " + to_string(total) + ", expected 1");
  std::vector<Atom> sorted;
  sorted.reserve(merged.size());
  for (auto& [x, m] : merged) {
    if (m != 0) sorted.push_back(Atom{x, m});
  }
  return LatticeDistribution(Trusted{}, std::move(sorted));
}

ExactRational LatticeDistribution::mass_at(const ExactRational& x) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x, [](const Atom& a, const ExactRational& v) { return a.x < v; });
  return it != atoms_.end() && it->x == x ? it->mass : ExactRational(0);
}

LatticeDistribution LatticeDistribution::reflected() const {
  std::vector<Atom> out;
  out.reserve(atoms_.size());
  for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) out.push_back(Atom{-it->x, it->mass});
  return LatticeDistribution(Trusted{}, std::move(out));
}

LatticeDistribution LatticeDistribution::scaled(const ExactRational& c) const {
  if (c <= 0) throw DomainError("scale factor must be positive");
  std::vector<Atom> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back(Atom{a.x * c, a.mass});
  return LatticeDistribution(Trusted{}, std::move(out));
}

SuccessVector::SuccessVector(std::vector<ExactRational> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw PreconditionError("success vector must have at least one entry");
  for (auto& p : entries_) {
    p.canonicalize();
    if (p < 0 || p > 1) throw PreconditionError("success probability " + to_string(p) + " outside [0,1]");
  }
}

LatticeDistribution convolve(const LatticeDistribution& a, const LatticeDistribution& b) {
  const ExactRational g = rational_gcd(a.span(), b.span());
  const ExactRational base = a.min() + b.min();
  if (g == 0) return LatticeDistribution::point_mass(base);

  const ExactRational range = (a.max() - a.min() + b.max() - b.min()) / g;
  const std::size_t pairs = a.size() * b.size();
  if (mpz_fits_ulong_p(range.get_num_mpz_t()) && range.get_num().get_ui() <= kDenseSlack * pairs + 64) {
    std::vector<std::size_t> ia, ib;
    ia.reserve(a.size());
    ib.reserve(b.size());
    for (const auto& x : a.atoms()) ia.push_back(to_index((x.x - a.min()) / g));
    for (const auto& y : b.atoms()) ib.push_back(to_index((y.x - b.min()) / g));
    std::vector<ExactRational> dense(to_index(range) + 1);
    ExactRational product;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        mpq_mul(product.get_mpq_t(), a.atoms()[i].mass.get_mpq_t(), b.atoms()[j].mass.get_mpq_t());
        dense[ia[i] + ib[j]] += product;
      }
    }
    std::vector<Atom> out;
    for (std::size_t k = 0; k < dense.size(); ++k) {
      if (dense[k] != 0) out.push_back(Atom{base + ExactRational(static_cast<unsigned long>(k)) * g, std::move(dense[k])});
    }
    return LatticeDistribution(LatticeDistribution::Trusted{}, std::move(out));
  }

  std::map<ExactRational, ExactRational> acc;
  for (const auto& x : a.atoms()) {
    for (const auto& y : b.atoms()) acc[x.x + y.x] += x.mass * y.mass;
  }
  std::vector<Atom> out;
  out.reserve(acc.size());
  for (auto& [z, m] : acc) out.push_back(Atom{z, m});
  return LatticeDistribution(LatticeDistribution::Trusted{}, std::move(out));
}

LatticeDistribution poisson_binomial(const SuccessVector& p) {
  std::vector<ExactRational> mass{ExactRational(1)};
  for (const auto& pi : p.entries()) {
    const ExactRational qi = 1 - pi;
    std::vector<ExactRational> next(mass.size() + 1);
    for (std::size_t k = 0; k < mass.size(); ++k) {
      next[k] += mass[k] * qi;
      next[k + 1] += mass[k] * pi;
    }
    mass = std::move(next);
  }
  std::vector<Atom> out;
  for (std::size_t k = 0; k < mass.size(); ++k) {
    if (mass[k] != 0) out.push_back(Atom{ExactRational(static_cast<unsigned long>(k)), std::move(mass[k])});
  }
  return LatticeDistribution(LatticeDistribution::Trusted{}, std::move(out));
}

LatticeDistribution symmetric_three_point(const SuccessVector& p, const ExactRational& h) {
  if (h <= 0) throw DomainError("span h must be positive");
  const std::size_t n = p.size();
  // index k <-> location (k - n) * h
  std::vector<ExactRational> mass(2 * n + 1);
  mass[n] = 1;
  std::size_t reach = 0;
  for (const auto& pi : p.entries()) {
    const ExactRational stay = 1 - pi;
    const ExactRational step = pi / 2;
    std::vector<ExactRational> next(mass.size());
    for (std::size_t k = n - reach; k <= n + reach; ++k) {
      if (mass[k] == 0) continue;
      next[k] += mass[k] * stay;
      next[k - 1] += mass[k] * step;
      next[k + 1] += mass[k] * step;
    }
    mass = std::move(next);
    ++reach;
  }
  std::vector<Atom> out;
  for (std::size_t k = 0; k < mass.size(); ++k) {
    if (mass[k] != 0) {
      out.push_back(Atom{(ExactRational(static_cast<unsigned long>(k)) - ExactRational(static_cast<unsigned long>(n))) * h,
                         std::move(mass[k])});
    }
  }
  return LatticeDistribution(LatticeDistribution::Trusted{}, std::move(out));
}

ExactRational interval_mass(const LatticeDistribution& d, const ExactRational& lo, const ExactRational& hi,
                            bool lo_closed, bool hi_closed) {
  if (lo > hi) throw DomainError("interval with lo > hi");
  ExactRational total = 0;
  for (const auto& a : d.atoms()) {
    const bool above = lo_closed ? a.x >= lo : a.x > lo;
    const bool below = hi_closed ? a.x <= hi : a.x < hi;
    if (above && below) total += a.mass;
  }
  return total;
}

ExactRational abs_tail(const LatticeDistribution& d, const ExactRational& t, bool strict) {
  if (t < 0) throw DomainError("tail threshold must be nonnegative");
  ExactRational total = 0;
  for (const auto& a : d.atoms()) {
    const ExactRational r = abs(a.x);
    if (strict ? r > t : r >= t) total += a.mass;
  }
  return total;
}

ExactRational abs_half_tail(const LatticeDistribution& d, const ExactRational& t) {
  if (t < 0) throw DomainError("tail threshold must be nonnegative");
  ExactRational total = 0;
  for (const auto& a : d.atoms()) {
    const ExactRational r = abs(a.x);
    if (r > t) {
      total += a.mass;
    } else if (r == t) {
      total += a.mass / 2;
    }
  }
  return total;
}

LatticeDistribution absolute_value(const LatticeDistribution& d) {
  std::vector<Atom> atoms;
  atoms.reserve(d.size());
  for (const auto& a : d.atoms()) atoms.push_back(Atom{abs(a.x), a.mass});
  return LatticeDistribution::from_atoms(std::move(atoms));
}

bool is_symmetric(const LatticeDistribution& d) {
  const auto atoms = d.atoms();
  for (std::size_t i = 0, j = atoms.size() - 1; i <= j; ++i, --j) {
    if (atoms[i].x != -atoms[j].x || atoms[i].mass != atoms[j].mass) return false;
    if (j == 0) break;
  }
  return true;
}

bool supported_on(const LatticeDistribution& d, const ExactRational& h, const ExactRational& a) {
  if (h <= 0) throw DomainError("lattice span must be positive");
  return std::all_of(d.atoms().begin(), d.atoms().end(),
                     [&](const Atom& atom) { return is_integer((atom.x - a) / h); });
}

bool is_unimodal_with_span(const LatticeDistribution& d, const ExactRational& h) {
  if (h < 0) return false;
  if (d.is_point_mass()) return true;
  if (h == 0) return false;
  if (!supported_on(d, h, d.min())) return false;
  const auto atoms = d.atoms();
  bool falling = false;
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    // a gap means an unoccupied lattice point of mass zero between two
    // positive masses, which cannot happen in a unimodal sequence
    if (atoms[i].x - atoms[i - 1].x != h) return false;
    if (atoms[i].mass < atoms[i - 1].mass) {
      falling = true;
    } else if (atoms[i].mass > atoms[i - 1].mass && falling) {
      return false;
    }
  }
  return true;
}

bool abs_stochastically_geq(const LatticeDistribution& u, const LatticeDistribution& v) {
  const auto au = absolute_value(u);
  const auto av = absolute_value(v);
  std::vector<ExactRational> points;
  for (const auto& a : au.atoms()) points.push_back(a.x);
  for (const auto& a : av.atoms()) points.push_back(a.x);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  // Sweep thresholds from the top, accumulating P(|.| >= t).
  ExactRational tail_u = 0, tail_v = 0;
  auto iu = au.atoms().size();
  auto iv = av.atoms().size();
  for (auto t = points.rbegin(); t != points.rend(); ++t) {
    while (iu > 0 && au.atoms()[iu - 1].x >= *t) tail_u += au.atoms()[--iu].mass;
    while (iv > 0 && av.atoms()[iv - 1].x >= *t) tail_v += av.atoms()[--iv].mass;
    if (tail_u < tail_v) return false;
  }
  return true;
}

}  // namespace symtail
