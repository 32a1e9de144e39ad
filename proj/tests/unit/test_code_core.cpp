#include <gtest/gtest.h>

#include <random>

#include "codequiv/code_core.hpp"
#include "codequiv/errors.hpp"
#include "codequiv/planting.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace codequiv {
namespace {

using testing_util::load_linear;
using testing_util::oracle_for;
using testing_util::rows_of;
using testing_util::words_of;

TEST(GeneratorMatrixTest, RejectsRankDeficiencyAndBadShape) {
  const auto f = Field::make(2, 2);
  EXPECT_THROW(GeneratorMatrix(Matrix(f, 2, 3, {1, 1, 0, 1, 1, 0})), CodeError);
  EXPECT_THROW(GeneratorMatrix(Matrix(f, 3, 2, {1, 0, 0, 1, 1, 1})), CodeError);
  EXPECT_NO_THROW(GeneratorMatrix(Matrix(f, 2, 3, {1, 0, 1, 0, 1, 2})));
}

TEST(StandardFormTest, AlreadyStandardIsUnchanged) {
  const auto c1 = load_linear("G1.code");
  const auto sf = standard_form(c1.generator().matrix());
  EXPECT_EQ(sf.matrix, c1.generator().matrix());
  EXPECT_EQ(sf.permutation, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7}));
}

TEST(StandardFormTest, RowSpaceMatchesPermutedInput) {
  const auto f = Field::make(2, 2);
  const auto o = oracle_for(*f);
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix g = random_generator(f, 2, 4, rng);
    const auto sf = standard_form(g);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) ASSERT_EQ(sf.matrix(i, j), i == j ? 1u : 0u);
    }
    const auto permuted = rows_of(g.select_columns(sf.permutation));
    ASSERT_EQ(oracle::linear_span(o, permuted), oracle::linear_span(o, rows_of(sf.matrix)));
  }
}

TEST(StandardFormTest, PivotsComeFromTheLeftmostColumns) {
  const auto f = Field::make(3, 1);
  // Column 0 is zero, columns 1 and 2 are proportional.
  const Matrix g(f, 2, 4, {0, 1, 2, 0, 0, 0, 0, 1});
  const auto sf = standard_form(g);
  EXPECT_EQ(sf.permutation, (std::vector<std::size_t>{1, 3, 0, 2}));
}

TEST(HammingTest, DistanceBasics) {
  const auto f = Field::make(3, 2);
  const Word zero{0, 0, 0};
  const Word u{1, f->primitive(), 0};
  EXPECT_EQ(hamming_distance(zero, zero), 0u);
  EXPECT_EQ(hamming_distance(zero, u), 2u);
  EXPECT_EQ(hamming_weight(u), 2u);
  EXPECT_THROW(hamming_distance(zero, Word{1, 1}), CodeError);
}

TEST(HammingTest, PairwiseDistanceIsWeightOfDifference) {
  const auto f = Field::make(2, 2);
  const auto o = oracle_for(*f);
  Rng rng(3);
  const LinearCode c(random_generator(f, 2, 5, rng));
  const auto words = c.codewords();
  for (const auto& u : words) {
    for (const auto& v : words) {
      Word diff(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) diff[i] = o.sub(u[i], v[i]);
      ASSERT_EQ(hamming_distance(u, v), oracle::weight(diff));
      ASSERT_TRUE(c.contains(diff));
    }
  }
}

TEST(MinimumDistanceTest, BundledCodesHaveDistanceSix) {
  EXPECT_EQ(minimum_distance(load_linear("G1.code")), 6u);
  EXPECT_EQ(minimum_distance(load_linear("G2.code")), 6u);
}

TEST(MinimumDistanceTest, FullSpaceHasDistanceOne) {
  const auto f = Field::make(3, 2);
  EXPECT_EQ(minimum_distance(LinearCode(Matrix::identity(f, 3))), 1u);
}

TEST(MinimumDistanceTest, AgreesWithPairwiseOracle) {
  for (auto [p, h] : {std::pair{2u, 2u}, {3u, 1u}, {3u, 2u}}) {
    const auto f = Field::make(p, h);
    const auto o = oracle_for(*f);
    Rng rng(p * 10 + h);
    for (int trial = 0; trial < 30; ++trial) {
      const Matrix g = random_generator(f, 2, 4, rng);
      const LinearCode c(g);
      const auto words = oracle::linear_span(o, rows_of(g));
      ASSERT_EQ(words_of(c), words);
      ASSERT_EQ(minimum_distance(c), oracle::min_pairwise_distance(words));
    }
  }
}

TEST(MinimumDistanceTest, EnumerationBudgetIsEnforced) {
  const auto f = Field::make(3, 2);
  EXPECT_THROW(minimum_distance(LinearCode(Matrix::identity(f, 4)), 100), BudgetExceeded);
}

TEST(MdsTest, SingletonEquality) {
  EXPECT_TRUE(is_mds(729, 8, 6, 9));
  EXPECT_TRUE(is_mds(81, 2, 1, 9));
  EXPECT_FALSE(is_mds(16, 4, 2, 4));
  const auto r = mds_report(load_linear("G1.code"));
  EXPECT_TRUE(r.mds);
  EXPECT_EQ(r.d, 6u);
  EXPECT_EQ(r.size, 729u);
}

TEST(MdsTest, NonMdsCodeFoundByBruteForce) {
  const auto f = Field::make(2, 2);
  const auto o = oracle_for(*f);
  Rng rng(11);
  for (;;) {
    const Matrix g = random_generator(f, 2, 4, rng);
    const auto words = oracle::linear_span(o, rows_of(g));
    if (oracle::min_pairwise_distance(words) != 2) continue;
    EXPECT_FALSE(mds_report(LinearCode(g)).mds);
    break;
  }
  EXPECT_TRUE(mds_report(LinearCode(Matrix::identity(f, 3))).mds);
}

TEST(MdsTest, EveryThreeColumnsOfBundledCodesAreIndependent) {
  for (const char* name : {"G1.code", "G2.code"}) {
    const auto c = load_linear(name);
    const auto o = oracle_for(*c.field());
    const auto rows = rows_of(c.generator().matrix());
    for (std::size_t a = 0; a < 8; ++a) {
      for (std::size_t b = a + 1; b < 8; ++b) {
        for (std::size_t d = b + 1; d < 8; ++d) {
          std::vector<std::vector<Elem>> m(3);
          for (std::size_t r = 0; r < 3; ++r) m[r] = {rows[r][a], rows[r][b], rows[r][d]};
          ASSERT_NE(oracle::determinant(o, m), 0u) << name << " " << a << b << d;
        }
      }
    }
  }
}

TEST(ConicTest, SecondCodeLiesOnTheStatedConic) {
  const auto c2 = load_linear("G2.code");
  const auto& f = c2.field();
  const auto space = conic_space(f, columns_as_points(c2.generator().matrix()));
  ASSERT_EQ(space.size(), 1u);
  const Conic expected{f, {0, 0, 0, 1, f->exp(3), 1}};
  EXPECT_TRUE(space[0].proportional_to(expected));
  EXPECT_EQ(space[0].normalized().to_string(), "x1x2 + e^3x1x3 + x2x3");
}

TEST(ConicTest, FirstCodeLiesOnNoConic) {
  const auto c1 = load_linear("G1.code");
  EXPECT_TRUE(conic_space(c1.field(), columns_as_points(c1.generator().matrix())).empty());
}

TEST(ConicTest, NoPointsGiveTheWholeSpace) {
  const auto f = Field::make(3, 2);
  EXPECT_EQ(conic_space(f, {}).size(), 6u);
}

TEST(ConicTest, BasisFormsVanishOnThePoints) {
  const auto f = Field::make(3, 2);
  const auto o = oracle_for(*f);
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<Elem>> points;
    for (int i = 0; i < 4; ++i) {
      points.push_back({random_element(*f, rng), random_element(*f, rng), random_element(*f, rng)});
    }
    const auto space = conic_space(f, points);
    EXPECT_GE(space.size(), 2u);
    for (const auto& c : space) {
      for (const auto& pt : points) {
        const Elem x = pt[0], y = pt[1], z = pt[2];
        const Elem monomials[6] = {o.mul(x, x), o.mul(y, y), o.mul(z, z),
                                   o.mul(x, y), o.mul(x, z), o.mul(y, z)};
        Elem v = 0;
        for (int i = 0; i < 6; ++i) v = o.add(v, o.mul(c.coeffs[i], monomials[i]));
        ASSERT_EQ(v, 0u);
      }
    }
  }
}

TEST(ColumnWeightTest, Examples) {
  const auto c1 = load_linear("G1.code");
  EXPECT_EQ(column_weights(c1.generator().matrix())[3], 3u);
  const auto f = Field::make(2, 2);
  const Matrix id = Matrix::identity(f, 3);
  EXPECT_TRUE(all_columns_weight_one(id, id));
  // (a1, a1, a2, a2).
  const Matrix rep(f, 2, 4, {1, 1, 0, 0, 0, 0, 1, 2});
  EXPECT_TRUE(all_columns_weight_one(rep, rep));
  EXPECT_FALSE(all_columns_weight_one(rep, c1.generator().matrix()));
}

TEST(CodeTest, FrobeniusAndPermutation) {
  const auto c1 = load_linear("G1.code");
  const auto& f = *c1.field();
  const Matrix cubed = frobenius_matrix(c1.generator().matrix(), 1);
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t c = 0; c < 8; ++c) {
      ASSERT_EQ(cubed(r, c), f.pow(c1.generator()(r, c), 3));
    }
  }
  const std::vector<std::size_t> perm{7, 6, 5, 4, 3, 2, 1, 0};
  const auto moved = permute_coordinates(c1, perm);
  EXPECT_EQ(moved.generator()(0, 7), 1u);
  EXPECT_THROW(permute_coordinates(c1, std::vector<std::size_t>{0, 0, 1, 2, 3, 4, 5, 6}), CodeError);
  EXPECT_FALSE(is_permutation(std::vector<std::size_t>{0, 2}, 2));
}

TEST(CodeTest, MembershipAgreesWithSpan) {
  const auto f = Field::make(3, 1);
  const auto o = oracle_for(*f);
  Rng rng(2);
  const Matrix g = random_generator(f, 2, 4, rng);
  const LinearCode c(g);
  const auto span = oracle::linear_span(o, rows_of(g));
  std::vector<Elem> w(4, 0);
  for (;;) {
    ASSERT_EQ(c.contains(w), span.count(w) == 1);
    std::size_t i = 0;
    while (i < 4 && w[i] == 2) w[i++] = 0;
    if (i == 4) break;
    ++w[i];
  }
  EXPECT_EQ(c.size(), 9u);
}

}  // namespace
}  // namespace codequiv
