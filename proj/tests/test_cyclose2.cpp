#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "hopfbound/cyclose2.hpp"
#include "hopfbound/intlin.hpp"

using namespace hopfbound;
using namespace hopfbound::cyclose2;

namespace {

// Polynomial product mod x^ell - 1, written out independently.
std::vector<std::int64_t> poly_product(std::uint32_t ell, const std::vector<std::uint32_t>& subset) {
  std::vector<std::int64_t> acc(ell, 0);
  acc[0] = 1;
  for (std::uint32_t i : subset) {
    std::vector<std::int64_t> next(ell, 0);
    for (std::uint32_t t = 0; t < ell; ++t) {
      next[t] += acc[t];
      next[(t + i) % ell] -= acc[t];
    }
    acc = next;
  }
  return acc;
}

CycloInt random_cyclo(std::mt19937& rng, std::uint32_t ell) {
  std::uniform_int_distribution<std::int64_t> d(-5, 5);
  std::vector<std::int64_t> c(ell);
  for (auto& x : c) x = d(rng);
  return CycloInt(ell, c);
}

std::size_t binom(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(CycloInt, MultiplicationExamples) {
  const CycloInt one_minus_zeta = CycloInt::one(5) - CycloInt::zeta_power(5, 1);
  EXPECT_EQ(cyclo_mul(one_minus_zeta, CycloInt::one(5)).coeffs(),
            (std::vector<std::int64_t>{1, -1, 0, 0, 0}));
  const CycloInt one_minus_zeta2 = CycloInt::one(5) - CycloInt::zeta_power(5, 2);
  EXPECT_EQ(cyclo_mul(one_minus_zeta, one_minus_zeta2).coeffs(),
            (std::vector<std::int64_t>{1, -1, -1, 1, 0}));
  for (std::uint32_t ell : {3u, 5u, 7u})
    EXPECT_EQ(cyclo_mul(CycloInt::zeta_power(ell, 1), CycloInt::zeta_power(ell, ell - 1)),
              CycloInt::one(ell));
  EXPECT_EQ(CycloInt::zeta_power(5, -1), CycloInt::zeta_power(5, 4));
  EXPECT_THROW(cyclo_mul(CycloInt::one(3), CycloInt::one(5)), std::invalid_argument);
}

TEST(CycloInt, RingAxiomsOnRandomElements) {
  std::mt19937 rng(3);
  for (std::uint32_t ell : {3u, 5u, 7u}) {
    std::vector<std::int64_t> ones(ell, 1);
    const CycloInt all_ones(ell, ones);
    for (int trial = 0; trial < 100; ++trial) {
      const CycloInt x = random_cyclo(rng, ell), y = random_cyclo(rng, ell), z = random_cyclo(rng, ell);
      EXPECT_EQ(cyclo_mul(x, y), cyclo_mul(y, x));
      EXPECT_EQ(cyclo_mul(cyclo_mul(x, y), z), cyclo_mul(x, cyclo_mul(y, z)));
      std::vector<std::int64_t> expect(ell, x.augmentation());
      EXPECT_EQ(cyclo_mul(x, all_ones).coeffs(), expect);
      EXPECT_EQ(cyclo_mul(x, y).augmentation(), x.augmentation() * y.augmentation());
    }
  }
}

TEST(CCoeffs, Examples) {
  EXPECT_EQ(c_coeffs(3, {1}).coeffs(), (std::vector<std::int64_t>{1, -1, 0}));
  EXPECT_EQ(c_coeffs(5, {1, 2}).coeffs(), (std::vector<std::int64_t>{1, -1, -1, 1, 0}));
  EXPECT_EQ(c_coeffs(7, {1, 2, 3}).coeffs(), (std::vector<std::int64_t>{1, -1, -1, 0, 1, 1, -1}));
  EXPECT_THROW(c_coeffs(5, {}), std::invalid_argument);
  EXPECT_THROW(c_coeffs(5, {3}), std::invalid_argument);
  EXPECT_THROW(c_coeffs(5, {1, 1}), std::invalid_argument);
}

TEST(CCoeffs, EverySubsetMatchesExpansionAndAugmentsToZero) {
  for (std::uint32_t ell : {3u, 5u, 7u, 11u, 13u}) {
    const std::uint32_t r = (ell - 1) / 2;
    for (std::uint32_t mask = 1; mask < (1u << r); ++mask) {
      std::vector<std::uint32_t> subset;
      for (std::uint32_t i = 1; i <= r; ++i)
        if (mask >> (i - 1) & 1) subset.push_back(i);
      const CycloInt c = c_coeffs(ell, subset);
      EXPECT_EQ(c.coeffs(), poly_product(ell, subset));
      EXPECT_EQ(c.augmentation(), 0);
    }
  }
}

TEST(CConstant, Examples) {
  EXPECT_EQ(c_constant(3), 1u);
  EXPECT_EQ(c_constant(5), 1u);
  EXPECT_EQ(c_constant(7), 4u);
  for (std::uint32_t ell : {3u, 5u, 7u, 11u, 13u}) {
    const std::uint32_t r = (ell - 1) / 2;
    EXPECT_EQ((2 * c_constant(ell)) % ell, (r * r + r * (r + 1) / 2) % ell);
    EXPECT_LT(c_constant(ell), ell);
  }
  EXPECT_THROW(c_constant(2), std::invalid_argument);
  EXPECT_THROW(c_constant(9), std::invalid_argument);
}

TEST(SE2, GeneratorAndRelatorCounts) {
  const Presentation p7 = se2_presentation({7, Se2Mode::extended});
  EXPECT_EQ(p7.generator_count(), 14u);
  EXPECT_EQ(p7.relators().size(), 64u);
  EXPECT_EQ(p7.dropped_identity_relators(), 0u);
  const std::vector<std::string> names{"z",  "u1", "u2", "u3", "a",  "b",  "b0",
                                       "b1", "b2", "b3", "b4", "b5", "b6", "w"};
  EXPECT_EQ(p7.generators(), names);

  const Presentation p3 = se2_presentation({3, Se2Mode::extended});
  EXPECT_EQ(p3.generators(), (std::vector<std::string>{"z", "u1", "a", "b", "b0", "b1", "b2", "w"}));
  EXPECT_EQ(p3.relators().size(), 21u);
  EXPECT_EQ(se2_presentation({5, Se2Mode::extended}).relators().size(), 39u);
  EXPECT_EQ(se2_presentation({5, Se2Mode::extended}).generator_count(), 11u);
}

TEST(SE2, FamilyCountIdentity) {
  for (std::uint32_t ell : {3u, 5u, 7u, 11u}) {
    const std::size_t r = (ell - 1) / 2;
    const std::size_t count = 6 + r + binom(r, 2) + r + binom(2 * r + 1, 2) + ((std::size_t{1} << r) - 1) +
                              1 + r + (2 * r + 1) + r + (2 * r + 1);
    EXPECT_EQ(se2_relator_count(ell), count);
    EXPECT_EQ(se2_presentation({ell, Se2Mode::extended}).relators().size(), count);
  }
}

TEST(SE2, FixedRelatorsPresent) {
  const Presentation p = se2_presentation({7, Se2Mode::extended});
  const auto& rels = p.relators();
  auto has = [&](const std::string& text) {
    return std::find(rels.begin(), rels.end(), parse_word(text, p)) != rels.end();
  };
  EXPECT_TRUE(has("z^7"));
  EXPECT_TRUE(has("a^4"));
  EXPECT_TRUE(has("[z,u2]"));
  EXPECT_TRUE(has("[u1,u3]"));
  EXPECT_TRUE(has("b^3 a^-2"));
  EXPECT_TRUE(has("a^-1 z a z"));
  EXPECT_TRUE(has("a^-1 u3 a u3"));
  EXPECT_TRUE(has("a^-2 b0 b1 b2 b3 b4 b5 b6"));
  EXPECT_TRUE(has("[b2,b5]"));
  EXPECT_EQ(rels.front(), parse_word("z^7", p));
}

// Substituting the defining words for b_t and w turns the extended relators
// (minus the definitions) into the expanded relators, in order.
TEST(SE2, ExpandedIsSubstitutedExtended) {
  for (std::uint32_t ell : {3u, 5u, 7u}) {
    const Presentation ext = se2_presentation({ell, Se2Mode::extended});
    const Presentation exp = se2_presentation({ell, Se2Mode::expanded});
    const std::vector<Word> images = extended_to_expanded(ell);
    ASSERT_EQ(images.size(), ext.generator_count());
    const std::size_t definitions = ell + 1;
    ASSERT_EQ(ext.relators().size() - definitions, exp.relators().size());
    for (std::size_t k = 0; k < exp.relators().size(); ++k)
      EXPECT_EQ(substitute(ext.relators()[k], images), exp.relators()[k]) << "ell=" << ell << " k=" << k;
    for (std::size_t k = exp.relators().size(); k < ext.relators().size(); ++k)
      EXPECT_TRUE(substitute(ext.relators()[k], images).is_identity());
  }
}

TEST(SE2, ModesHaveEqualAbelianization) {
  for (std::uint32_t ell : {3u, 5u}) {
    const auto ext = intlin::abelian_invariants(se2_presentation({ell, Se2Mode::extended}));
    const auto exp = intlin::abelian_invariants(se2_presentation({ell, Se2Mode::expanded}));
    EXPECT_EQ(ext, exp) << "ell=" << ell;
  }
}

TEST(SE2, RoundTripsThroughText) {
  const Presentation p = se2_presentation({5, Se2Mode::extended});
  const Presentation q = parse_presentation(p.to_text());
  EXPECT_EQ(q.relators(), p.relators());
  EXPECT_EQ(q.name(), "SE2_5");
  EXPECT_EQ(se2_presentation({5, Se2Mode::expanded}).name(), "SE2_5_expanded");
}

TEST(SE2, ParamsValidate) {
  EXPECT_THROW(se2_presentation({2, Se2Mode::extended}), std::invalid_argument);
  EXPECT_THROW(se2_presentation({9, Se2Mode::extended}), std::invalid_argument);
  EXPECT_TRUE(is_odd_prime(7));
  EXPECT_FALSE(is_odd_prime(2));
  EXPECT_FALSE(is_odd_prime(1));
}

TEST(ObstructionPairs, Counts) {
  using Pairs = std::vector<std::pair<std::string, std::string>>;
  EXPECT_EQ(obstruction_pairs(3), (Pairs{{"z", "u1"}}));
  const Pairs five = obstruction_pairs(5);
  EXPECT_EQ(five, (Pairs{{"z", "u1"}, {"z", "u2"}, {"u1", "u2"}}));
  EXPECT_EQ(obstruction_pairs(7).size(), 6u);
}
