#include "symtail/distribution.hpp"
#include "symtail/distribution_json.hpp"
#include "symtail/errors.hpp"

#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace symtail;
using Q = ExactRational;

namespace {

LatticeDistribution law(std::vector<Atom> atoms) { return LatticeDistribution::from_atoms(std::move(atoms)); }

LatticeDistribution rademacher(const Q& h = 1) { return law({{-h, Q(1, 2)}, {h, Q(1, 2)}}); }

}  // namespace

TEST(Distribution, FromAtomsMergesAndPrunes) {
  const auto d = law({{2, Q(1, 4)}, {0, 0}, {-1, Q(1, 4)}, {2, Q(1, 2)}});
  ASSERT_EQ(d.size(), 2U);
  EXPECT_EQ(d.atoms()[0], (Atom{-1, Q(1, 4)}));
  EXPECT_EQ(d.atoms()[1], (Atom{2, Q(3, 4)}));
  EXPECT_EQ(d.span(), 3);
  EXPECT_EQ(d.offset(), 2);
}

TEST(Distribution, FromAtomsRejectsBadMasses) {
  EXPECT_THROW(law({{0, Q(1, 2)}}), PreconditionError);
  EXPECT_THROW(law({{0, Q(3, 2)}, {1, Q(-1, 2)}}), PreconditionError);
  EXPECT_THROW(law({}), PreconditionError);
}

TEST(Distribution, SpanAndOffset) {
  const auto half = law({{Q(-1, 2), Q(1, 2)}, {Q(3, 2), Q(1, 2)}});
  EXPECT_EQ(half.span(), 2);
  EXPECT_EQ(half.offset(), Q(3, 2));
  const auto pm = LatticeDistribution::point_mass(Q(5, 3));
  EXPECT_TRUE(pm.is_point_mass());
  EXPECT_EQ(pm.span(), 0);
  EXPECT_EQ(pm.offset(), Q(5, 3));
  EXPECT_EQ(law({{0, Q(1, 3)}, {Q(2, 3), Q(1, 3)}, {Q(5, 2), Q(1, 3)}}).span(), Q(1, 6));
  EXPECT_EQ(LatticeDistribution().mass_at(0), 1);
}

TEST(Distribution, ConvolveMatchesEnumeration) {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<LatticeDistribution> terms;
    const auto n = rng.between(1, 4);
    for (long i = 0; i < n; ++i) {
      std::vector<Atom> atoms;
      const auto k = rng.between(1, 4);
      const long den = rng.between(1, 3);
      for (long j = 0; j < k; ++j) atoms.push_back({Q(rng.between(-6, 6), den), Q(1, k)});
      for (auto& a : atoms) a.x.canonicalize();
      terms.push_back(law(atoms));
    }
    LatticeDistribution acc;
    for (const auto& t : terms) acc = convolve(acc, t);
    EXPECT_EQ(oracle::as_map(acc), oracle::sum_law(terms));
  }
}

TEST(Distribution, ConvolveSparseWideSupport) {
  const auto a = law({{0, Q(1, 2)}, {1000000, Q(1, 2)}});
  const auto b = law({{0, Q(1, 2)}, {Q(1, 7), Q(1, 2)}});
  const auto s = convolve(a, b);
  EXPECT_EQ(oracle::as_map(s), oracle::sum_law(std::vector<LatticeDistribution>{a, b}));
  EXPECT_EQ(s.span(), Q(1, 7));
}

TEST(Distribution, PoissonBinomialMatchesSubsets) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = oracle::random_p(rng, static_cast<unsigned>(rng.between(1, 10)));
    const auto expected = oracle::poisson_binomial(p);
    const auto got = poisson_binomial(SuccessVector(p));
    for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_EQ(got.mass_at(Q(static_cast<long>(k))), expected[k]);
  }
  const auto b = poisson_binomial(SuccessVector({Q(1, 2), Q(1, 3)}));
  EXPECT_EQ(oracle::as_map(b), (oracle::Law{{0, Q(1, 3)}, {1, Q(1, 2)}, {2, Q(1, 6)}}));
}

TEST(Distribution, ThreePointMatchesSignExpansion) {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = oracle::random_p(rng, static_cast<unsigned>(rng.between(1, 7)));
    const Q h(rng.between(1, 5), rng.between(1, 3));
    EXPECT_EQ(oracle::as_map(symmetric_three_point(SuccessVector(p), h)), oracle::three_point(p, h));
  }
  EXPECT_THROW(symmetric_three_point(SuccessVector({Q(1)}), 0), DomainError);
}

TEST(Distribution, SuccessVectorValidation) {
  EXPECT_THROW(SuccessVector({}), PreconditionError);
  EXPECT_THROW(SuccessVector({Q(3, 2)}), PreconditionError);
  EXPECT_THROW(SuccessVector({Q(-1, 5)}), PreconditionError);
  EXPECT_NO_THROW(SuccessVector({Q(0), Q(1)}));
}

TEST(Distribution, IntervalAndTails) {
  const auto d = law({{-2, Q(1, 8)}, {-1, Q(1, 4)}, {0, Q(1, 4)}, {1, Q(1, 4)}, {2, Q(1, 8)}});
  EXPECT_EQ(interval_mass(d, -1, 1, true, true), Q(3, 4));
  EXPECT_EQ(interval_mass(d, -1, 1, false, true), Q(1, 2));
  EXPECT_EQ(interval_mass(d, -1, 1, false, false), Q(1, 4));
  EXPECT_EQ(interval_mass(d, 1, 1, true, true), Q(1, 4));
  EXPECT_EQ(interval_mass(d, 1, 1, false, true), 0);
  EXPECT_THROW(interval_mass(d, 2, 1, true, true), DomainError);
  EXPECT_EQ(abs_tail(d, 1, true), Q(1, 4));
  EXPECT_EQ(abs_tail(d, 1, false), Q(3, 4));
  EXPECT_EQ(abs_half_tail(d, 1), Q(1, 2));
  EXPECT_THROW(abs_tail(d, -1, true), DomainError);
  EXPECT_EQ(oracle::as_map(absolute_value(d)), (oracle::Law{{0, Q(1, 4)}, {1, Q(1, 2)}, {2, Q(1, 4)}}));
}

TEST(Distribution, SymmetryAndReflection) {
  EXPECT_TRUE(is_symmetric(rademacher()));
  EXPECT_TRUE(is_symmetric(LatticeDistribution()));
  const auto skew = law({{-1, Q(1, 3)}, {1, Q(2, 3)}});
  EXPECT_FALSE(is_symmetric(skew));
  EXPECT_EQ(skew.reflected().mass_at(-1), Q(2, 3));
  EXPECT_EQ(rademacher().scaled(3), rademacher(3));
  EXPECT_THROW(rademacher().scaled(0), DomainError);
}

TEST(Distribution, SupportedOn) {
  const auto half = rademacher(Q(1, 2));
  EXPECT_TRUE(supported_on(half, 1, Q(1, 2)));
  EXPECT_FALSE(supported_on(half, 1, 0));
  EXPECT_TRUE(supported_on(half, Q(1, 2), 0));
  EXPECT_TRUE(supported_on(rademacher(3), 2, 1));
}

TEST(Distribution, Unimodality) {
  EXPECT_TRUE(is_unimodal_with_span(law({{-1, Q(1, 4)}, {0, Q(1, 2)}, {1, Q(1, 4)}}), 1));
  // a flat top is fine
  EXPECT_TRUE(is_unimodal_with_span(rademacher(Q(1, 2)), 1));
  EXPECT_TRUE(is_unimodal_with_span(law({{-1, Q(1, 3)}, {0, Q(1, 3)}, {1, Q(1, 3)}}), 1));
  // dip in the middle
  EXPECT_FALSE(is_unimodal_with_span(law({{-1, Q(2, 5)}, {0, Q(1, 5)}, {1, Q(2, 5)}}), 1));
  // gap counts as a zero between two masses
  EXPECT_FALSE(is_unimodal_with_span(rademacher(), 1));
  EXPECT_TRUE(is_unimodal_with_span(rademacher(), 2));
  // off-lattice support
  EXPECT_FALSE(is_unimodal_with_span(law({{0, Q(1, 2)}, {Q(1, 2), Q(1, 2)}}), 1));
  // h = 0: point masses only
  EXPECT_TRUE(is_unimodal_with_span(LatticeDistribution::point_mass(3), 0));
  EXPECT_FALSE(is_unimodal_with_span(rademacher(), 0));
}

TEST(Distribution, AbsStochasticOrder) {
  const auto wide = rademacher(2);
  const auto narrow = law({{-1, Q(1, 4)}, {0, Q(1, 2)}, {1, Q(1, 4)}});
  EXPECT_TRUE(abs_stochastically_geq(wide, narrow));
  EXPECT_FALSE(abs_stochastically_geq(narrow, wide));
  EXPECT_TRUE(abs_stochastically_geq(narrow, narrow));
  EXPECT_TRUE(abs_stochastically_geq(narrow, LatticeDistribution()));
  // crossing tails
  const auto a = law({{-3, Q(1, 8)}, {0, Q(3, 4)}, {3, Q(1, 8)}});
  const auto b = rademacher(1);
  EXPECT_FALSE(abs_stochastically_geq(a, b));
  EXPECT_FALSE(abs_stochastically_geq(b, a));
}

TEST(DistributionJson, RoundTrip) {
  const auto d = law({{Q(-3, 2), Q(1, 3)}, {0, Q(1, 3)}, {Q(3, 2), Q(1, 3)}});
  const auto j = distribution_to_json(d);
  EXPECT_EQ(distribution_from_json(j), d);
  EXPECT_EQ(j["atoms"][0]["x"], "-3/2");
}

TEST(DistributionJson, Rejections) {
  using nlohmann::json;
  EXPECT_EQ(rational_from_json(json(3)), 3);
  EXPECT_EQ(rational_from_json(json("2/6")), Q(1, 3));
  EXPECT_THROW(rational_from_json(json(0.5)), SchemaError);
  EXPECT_THROW(rational_from_json(json(nullptr)), SchemaError);
  EXPECT_THROW(distribution_from_json(json::parse(R"({"atoms": [{"x": 0, "mass": "1/2"}]})")), SchemaError);
  EXPECT_THROW(distribution_from_json(json::parse(R"({"atoms": [{"x": 0}]})")), SchemaError);
  EXPECT_THROW(distribution_from_json(json::parse(R"([1, 2])")), SchemaError);
}
