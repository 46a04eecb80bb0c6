#pragma once

#include "symtail/bounds.hpp"
#include "symtail/distribution.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace symtail {

/// Upper limit on atom pairs formed by any single convolution step.
inline constexpr std::size_t kDefaultPairCap = std::size_t{1} << 22;

/// Left fold of `convolve` starting from delta_0. Throws CapExceeded when a
/// step would form more than `pair_cap` atom pairs.
LatticeDistribution exact_sum_distribution(std::span<const LatticeDistribution> terms,
                                           std::size_t pair_cap = kDefaultPairCap);

// ---------------------------------------------------------------------------
// Soundness sweep
// ---------------------------------------------------------------------------

struct SweepInstance {
  std::string id;
  std::vector<LatticeDistribution> terms;
  /// Replaces the derived p_i = P(|X_i| >= h) in the bound. Only used to
  /// feed deliberately wrong bounds into the harness.
  std::optional<SuccessVector> p_override;
};

struct SweepRow {
  std::string instance_id;
  ExactRational t;
  ExactRational bound;  // improved bound at (p, h, t)
  ExactRational value;  // exact P(|S| > t)
  ExactRational slack;  // value - bound
};

struct SweepOptions {
  bool keep_rows = false;
  unsigned max_n = 8;
  std::size_t pair_cap = kDefaultPairCap;
};

struct SweepReport {
  std::size_t instances = 0;
  std::size_t checks = 0;
  std::optional<SweepRow> min_slack;
  std::vector<SweepRow> rows;
  std::vector<SweepRow> violations;

  bool ok() const { return violations.empty(); }
  void merge(SweepReport&& other);
};

/// For each instance and each grid t in [0, n h): exact P(|S| > t) against
/// improved_bound(p, h, t) with p_i = P(|X_i| >= h). Instances are processed
/// in parallel and merged in input order. Throws PreconditionError for a
/// non-symmetric term and CapExceeded for n > max_n.
SweepReport bound_soundness_sweep(std::span<const SweepInstance> instances, const ExactRational& h,
                                  std::span<const ExactRational> t_grid, const SweepOptions& options = {});

/// Single-threaded reference for bound_soundness_sweep.
SweepReport bound_soundness_sweep_serial(std::span<const SweepInstance> instances, const ExactRational& h,
                                         std::span<const ExactRational> t_grid, const SweepOptions& options = {});

/// All symmetric laws on {-radius*step, ..., radius*step} (step*Z) whose
/// masses are multiples of 1/mass_denominator; with `half_lattice` the
/// support is step*(Z + 1/2) within the same radius instead.
struct SymmetricLatticeFamily {
  unsigned n_max = 6;
  unsigned radius = 2;
  unsigned mass_denominator = 8;
  ExactRational step = 1;
  bool half_lattice = false;
  bool unimodal_only = false;
};

std::vector<LatticeDistribution> family_laws(const SymmetricLatticeFamily& family);

/// Every multiset of 1..n_max laws from family_laws as an instance; the
/// id lists the law indices, e.g. "L0-L3-L3".
std::vector<SweepInstance> family_instances(const SymmetricLatticeFamily& family);

/// Same checks as bound_soundness_sweep over family_instances, but walked
/// depth-first so that each partial sum is convolved once. Parallel over
/// the first law; merged in enumeration order.
SweepReport family_soundness_sweep(const SymmetricLatticeFamily& family, const ExactRational& h,
                                   std::span<const ExactRational> t_grid, const SweepOptions& options = {});

// ---------------------------------------------------------------------------
// Tightness probe
// ---------------------------------------------------------------------------

/// Each term may move part w of its mass p_i from +-h out to +-h' (h' >= h).
struct TightnessGrid {
  std::vector<ExactRational> h_primes;
  std::vector<ExactRational> weights;
  std::size_t max_combinations = std::size_t{1} << 16;
};

struct TightnessReport {
  ExactRational t;               // m h
  ExactRational bound;           // improved_bound(p, h, t)
  ExactRational extremal_value;  // value under the unperturbed three-point laws
  ExactRational best_value;      // smallest P(|S| > t) + P(|S| = t)/2 found
  ExactRational gap;             // best_value - bound
  std::vector<LatticeDistribution> best_laws;
  std::size_t evaluated = 0;

  bool holds() const { return gap >= 0; }
};

/// Searches symmetric perturbations of the extremal laws that keep
/// P(|X_i| >= h) = p_i for the smallest P(|S| > mh) + P(|S| = mh)/2 and
/// records its gap to the improved bound. Requires 1 <= m <= n - 1 (so
/// that t = mh lies in the bound's domain); throws DomainError otherwise.
TightnessReport tightness_search(const SuccessVector& p, const ExactRational& h, unsigned m,
                                 const TightnessGrid& grid);

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

/// Symmetric real law sampled as R * |draw| with an independent fair sign R.
struct SamplerSpec {
  enum class Kind { atoms, uniform, gaussian };
  Kind kind = Kind::atoms;
  std::vector<double> abs_values;       // atoms: support of |X|
  std::vector<double> abs_cumulative;   // atoms: CDF of |X| at abs_values
  double scale = 1.0;                   // uniform half-width or gaussian sigma

  /// Law of |X| taken from a symmetric lattice law.
  static SamplerSpec from_distribution(const LatticeDistribution& d);
  static SamplerSpec uniform(double half_width);
  static SamplerSpec gaussian(double sigma);

  /// P(|X| >= h) as a double (exact for atoms up to rounding of masses).
  double abs_tail(double h) const;
};

struct SampleConfig {
  std::uint64_t seed = 0;
  std::size_t replications = 100000;
  std::vector<SamplerSpec> terms;
};

struct TailEstimate {
  double t = 0;
  double estimate = 0;
  double std_error = 0;
};

/// Replications per independently seeded block. Block b draws from
/// derive_seed(seed, b), so results do not depend on the thread count.
inline constexpr std::size_t kMonteCarloBlock = 4096;

/// Empirical P(|S| > t) for each t, with binomial standard errors.
/// Requires replications >= 1000.
std::vector<TailEstimate> monte_carlo_tails(const SampleConfig& config, std::span<const double> ts);
TailEstimate monte_carlo_tail(const SampleConfig& config, double t);

/// Single-threaded reference; bit-identical to monte_carlo_tails.
std::vector<TailEstimate> monte_carlo_tails_serial(const SampleConfig& config, std::span<const double> ts);

}  // namespace symtail
