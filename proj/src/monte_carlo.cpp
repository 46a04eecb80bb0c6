#include "symtail/errors.hpp"
#include "symtail/oracles.hpp"
#include "symtail/rng.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

namespace symtail {

SamplerSpec SamplerSpec::from_distribution(const LatticeDistribution& d) {
  if (!is_symmetric(d)) throw PreconditionError("Monte Carlo terms must be symmetric");
  SamplerSpec s;
  s.kind = Kind::atoms;
  double cumulative = 0;
  const auto folded = absolute_value(d);
  for (const auto& a : folded.atoms()) {
    cumulative += a.mass.get_d();
    s.abs_values.push_back(a.x.get_d());
    s.abs_cumulative.push_back(cumulative);
  }
  s.abs_cumulative.back() = 1.0;
  return s;
}

SamplerSpec SamplerSpec::uniform(double half_width) {
  if (!(half_width >= 0)) throw PreconditionError("uniform half-width must be nonnegative");
  SamplerSpec s;
  s.kind = Kind::uniform;
  s.scale = half_width;
  return s;
}

SamplerSpec SamplerSpec::gaussian(double sigma) {
  if (!(sigma >= 0)) throw PreconditionError("gaussian sigma must be nonnegative");
  SamplerSpec s;
  s.kind = Kind::gaussian;
  s.scale = sigma;
  return s;
}

double SamplerSpec::abs_tail(double h) const {
  switch (kind) {
    case Kind::atoms: {
      double below = 0;
      for (std::size_t i = 0; i < abs_values.size() && abs_values[i] < h; ++i) below = abs_cumulative[i];
      return 1.0 - below;
    }
    case Kind::uniform:
      if (h <= 0) return 1.0;
      return scale == 0 ? 0.0 : std::max(0.0, 1.0 - h / scale);
    case Kind::gaussian:
      if (h <= 0) return 1.0;
      return scale == 0 ? 0.0 : std::erfc(h / (scale * std::sqrt(2.0)));
  }
  return 0.0;
}

namespace {

double draw_abs(const SamplerSpec& s, Rng& rng) {
  switch (s.kind) {
    case SamplerSpec::Kind::atoms: {
      const double u = rng.uniform();
      auto it = std::upper_bound(s.abs_cumulative.begin(), s.abs_cumulative.end(), u);
      const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - s.abs_cumulative.begin()),
                                             s.abs_values.size() - 1);
      return s.abs_values[idx];
    }
    case SamplerSpec::Kind::uniform: return s.scale * rng.uniform();
    case SamplerSpec::Kind::gaussian: return std::fabs(s.scale * rng.normal());
  }
  return 0.0;
}

void validate(const SampleConfig& config) {
  if (config.replications < 1000) throw PreconditionError("Monte Carlo needs at least 1000 replications");
  for (const auto& s : config.terms) {
    if (s.kind == SamplerSpec::Kind::atoms && s.abs_values.empty()) throw PreconditionError("empty atom sampler");
  }
}

// Exceedance counts for one block of replications.
std::vector<std::uint64_t> run_block(const SampleConfig& config, std::span<const double> ts, std::size_t block) {
  Rng rng(derive_seed(config.seed, block));
  const std::size_t begin = block * kMonteCarloBlock;
  const std::size_t end = std::min(config.replications, begin + kMonteCarloBlock);
  std::vector<std::uint64_t> counts(ts.size(), 0);
  for (std::size_t r = begin; r < end; ++r) {
    double sum = 0;
    for (const auto& term : config.terms) {
      const double magnitude = draw_abs(term, rng);
      sum += rng.coin() ? magnitude : -magnitude;
    }
    const double a = std::fabs(sum);
    for (std::size_t j = 0; j < ts.size(); ++j) {
      if (a > ts[j]) ++counts[j];
    }
  }
  return counts;
}

std::vector<TailEstimate> summarize(const SampleConfig& config, std::span<const double> ts,
                                    const std::vector<std::vector<std::uint64_t>>& blocks) {
  std::vector<TailEstimate> out;
  const double n = static_cast<double>(config.replications);
  for (std::size_t j = 0; j < ts.size(); ++j) {
    std::uint64_t hits = 0;
    for (const auto& b : blocks) hits += b[j];
    const double p = static_cast<double>(hits) / n;
    out.push_back(TailEstimate{ts[j], p, std::sqrt(p * (1.0 - p) / n)});
  }
  return out;
}

std::size_t block_count(const SampleConfig& config) {
  return (config.replications + kMonteCarloBlock - 1) / kMonteCarloBlock;
}

}  // namespace

std::vector<TailEstimate> monte_carlo_tails(const SampleConfig& config, std::span<const double> ts) {
  validate(config);
  std::vector<std::vector<std::uint64_t>> blocks(block_count(config));
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks.size()); ++b) {
    blocks[b] = run_block(config, ts, static_cast<std::size_t>(b));
  }
  return summarize(config, ts, blocks);
}

std::vector<TailEstimate> monte_carlo_tails_serial(const SampleConfig& config, std::span<const double> ts) {
  validate(config);
  std::vector<std::vector<std::uint64_t>> blocks;
  for (std::size_t b = 0; b < block_count(config); ++b) blocks.push_back(run_block(config, ts, b));
  return summarize(config, ts, blocks);
}

TailEstimate monte_carlo_tail(const SampleConfig& config, double t) {
  const double ts[] = {t};
  return monte_carlo_tails(config, ts).front();
}

}  // namespace symtail
