#include "symtail/bounds.hpp"

#include "symtail/errors.hpp"
#include "symtail/exactmath.hpp"

#include <optional>
#include <set>
#include <stdexcept>

namespace symtail {

namespace {

void check_domain(const SuccessVector& p, const ExactRational& h, const ExactRational& t) {
  if (h <= 0) throw DomainError("h must be positive, got " + to_string(h));
  if (t < 0 || t >= ExactRational(static_cast<unsigned long>(p.size())) * h) {
    throw DomainError("t = " + to_string(t) + " outside [0, n h) with n = " + std::to_string(p.size()) +
                      ", h = " + to_string(h));
  }
}

void assert_probability(const ExactRational& q, const char* what) {
  if (q < 0 || q > 1) throw std::logic_error(std::string(what) + " = " + to_string(q) + " outside [0,1]");
}

std::vector<ExactRational> poisson_masses(const SuccessVector& p) {
  std::vector<ExactRational> mass(p.size() + 1);
  const auto law = poisson_binomial(p);
  for (const auto& a : law.atoms()) mass[a.x.get_num().get_ui()] = a.mass;
  return mass;
}

}  // namespace

unsigned window_count(const ExactRational& t, const ExactRational& h) {
  return static_cast<unsigned>(floor_int(t / h).get_ui()) + 1;
}

ExactRational nagaev_bound(const SuccessVector& p, const ExactRational& h, const ExactRational& t) {
  check_domain(p, h, t);
  const unsigned m = window_count(t, h);
  const auto mass = poisson_masses(p);
  ExactRational sum = 0;
  for (unsigned k = m; k <= p.size(); ++k) sum += pow2_inverse(k) * mass[k];
  assert_probability(sum, "nagaev bound");
  return sum;
}

ExactRational improved_bound(const SuccessVector& p, const ExactRational& h, const ExactRational& t) {
  check_domain(p, h, t);
  const unsigned m = window_count(t, h);
  const auto mass = poisson_masses(p);
  ExactRational sum = 0;
  for (unsigned k = m; k <= p.size(); ++k) sum += (1 - largest_binomial_ratio(k, m)) * mass[k];
  assert_probability(sum, "improved bound");
  return sum;
}

ExactRational kanter_supremum(const SuccessVector& p, unsigned m) {
  if (m == 0) throw DomainError("m must be positive");
  const auto mass = poisson_masses(p);
  ExactRational sum = 0;
  for (unsigned k = 0; k <= p.size(); ++k) {
    if (mass[k] != 0) sum += largest_binomial_ratio(k, m) * mass[k];
  }
  assert_probability(sum, "Kanter supremum");
  return sum;
}

ExactRational kanter_supremum_via_stpc(const SuccessVector& p, unsigned m) {
  if (m == 0) throw DomainError("m must be positive");
  const auto stpc = symmetric_three_point(p, 1);
  const ExactRational hi(static_cast<unsigned long>(m));
  return interval_mass(stpc, 1 - hi, hi, true, true);
}

BoundReport evaluate_bounds(const SuccessVector& p, const ExactRational& h, const ExactRational& t) {
  check_domain(p, h, t);
  BoundReport r;
  r.t = t;
  r.h = h;
  r.n = static_cast<unsigned>(p.size());
  r.m = window_count(t, h);
  const auto mass = poisson_masses(p);
  r.nagaev = 0;
  r.improved = 0;
  r.kanter_sup = 0;
  for (unsigned k = 0; k <= r.n; ++k) {
    const ExactRational ratio = largest_binomial_ratio(k, r.m);
    r.kanter_sup += ratio * mass[k];
    if (k >= r.m) {
      r.per_k_terms.push_back(BoundTerm{k, mass[k], 1 - ratio});
      r.improved += (1 - ratio) * mass[k];
      r.nagaev += pow2_inverse(k) * mass[k];
    }
  }
  assert_probability(r.nagaev, "nagaev bound");
  assert_probability(r.improved, "improved bound");
  assert_probability(r.kanter_sup, "Kanter supremum");
  if (r.improved < r.nagaev) throw std::logic_error("improved bound below the Nagaev bound");
  if (r.improved != 1 - r.kanter_sup) throw std::logic_error("improved bound is not the complement of the supremum");
  return r;
}

std::vector<LatticeDistribution> extremal_distribution(const SuccessVector& p, const ExactRational& h) {
  if (h <= 0) throw DomainError("h must be positive");
  std::vector<LatticeDistribution> laws;
  laws.reserve(p.size());
  for (const auto& pi : p.entries()) {
    laws.push_back(LatticeDistribution::from_atoms({{-h, pi / 2}, {0, 1 - pi}, {h, pi / 2}}));
  }
  return laws;
}

SupremumCheck supremum_attainment_check(const SuccessVector& p, const ExactRational& h, const ExactRational& H) {
  if (h <= 0 || H < h) throw DomainError("need 0 < h <= H");
  const ExactRational ratio = H / h;
  const BigInteger m = ceil_int(ratio);
  if (!(ExactRational(m) < ratio + ExactRational(1, 2))) {
    throw DomainError("ceil(H/h) = " + m.get_str() + " is not below H/h + 1/2 = " + to_string(ratio + ExactRational(1, 2)));
  }
  SupremumCheck c;
  c.m = static_cast<unsigned>(m.get_ui());
  c.shift = ExactRational(m) * h - H;
  c.sup = kanter_supremum(p, c.m);
  LatticeDistribution sum;
  for (const auto& law : extremal_distribution(p, h)) sum = convolve(sum, law);
  c.attained = interval_mass(sum, -H + c.shift, H + c.shift, false, true);
  return c;
}

SuccessVector success_vector(std::span<const LatticeDistribution> terms, const ExactRational& h) {
  std::vector<ExactRational> p;
  p.reserve(terms.size());
  for (const auto& d : terms) p.push_back(abs_tail(d, h, false));
  return SuccessVector(std::move(p));
}

std::vector<ExactRational> h_candidates(std::span<const LatticeDistribution> terms) {
  std::set<ExactRational> values;
  for (const auto& d : terms) {
    for (const auto& a : d.atoms()) {
      if (a.x != 0) values.insert(abs(a.x));
    }
  }
  return {values.begin(), values.end()};
}

HChoice optimize_h(const std::map<ExactRational, SuccessVector>& candidates, const ExactRational& t) {
  std::optional<HChoice> best;
  for (const auto& [h, p] : candidates) {
    if (h <= 0 || t < 0 || t >= ExactRational(static_cast<unsigned long>(p.size())) * h) continue;
    ExactRational b = improved_bound(p, h, t);
    if (!best || b > best->bound) best = HChoice{h, std::move(b)};
  }
  if (!best) throw DomainError("no candidate h with t = " + to_string(t) + " inside [0, n h)");
  return *best;
}

}  // namespace symtail
