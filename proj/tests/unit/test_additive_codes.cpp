#include <gtest/gtest.h>

#include <numeric>

#include "codequiv/additive_codes.hpp"
#include "codequiv/errors.hpp"
#include "codequiv/linearized.hpp"
#include "codequiv/planting.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace codequiv {
namespace {

using testing_util::load_additive;
using testing_util::load_linear;
using testing_util::oracle_for;
using testing_util::rows_of;
using testing_util::words_of;

TEST(AdditiveCodeTest, SingleCoordinateSpansTheField) {
  const auto f = Field::make(2, 2);
  const auto c = AdditiveCode::from_linear(LinearCode(Matrix(f, 1, 1, {1})));
  EXPECT_EQ(c.expanded(), Matrix::identity(f->prime_field(), 2));
  EXPECT_EQ(c.size(), 4u);
}

TEST(AdditiveCodeTest, ExpandedAndSymbolViewsSpanTheSameWords) {
  const auto f = Field::make(2, 2);
  const auto o = oracle_for(*f);
  Rng rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix g(f, 2, 3);
    for (std::size_t r = 0; r < 2; ++r) {
      for (auto& x : g.row(r)) x = random_element(*f, rng);
    }
    const AdditiveCode c(g);
    const auto expected = oracle::prime_span(o, rows_of(g));
    ASSERT_EQ(words_of(c), expected);
    const auto again = AdditiveCode::from_expanded(f, expand_to_prime(c));
    ASSERT_EQ(again.generators(), g);
    for (const auto& w : expected) ASSERT_TRUE(c.contains(w));
  }
}

TEST(AdditiveCodeTest, BundledCodeRoundTripsThroughExpansion) {
  const auto c3 = load_additive("C3.code");
  EXPECT_EQ(c3.generators().rows(), 6u);
  EXPECT_EQ(c3.length(), 8u);
  EXPECT_EQ(c3.expanded().cols(), 16u);
  const auto again = AdditiveCode::from_expanded(c3.field(), c3.expanded());
  EXPECT_EQ(again.generators(), c3.generators());
  EXPECT_EQ(c3.size(), 729u);
}

TEST(AdditiveCodeTest, BundledCodeIsAdditiveMds) {
  const auto c3 = load_additive("C3.code");
  const auto r = mds_report(c3);
  EXPECT_EQ(r.d, 6u);
  EXPECT_TRUE(is_additive_mds(c3));
  const auto f = c3.field();
  EXPECT_TRUE(is_additive_mds(AdditiveCode::from_linear(LinearCode(Matrix::identity(f, 3)))));
}

TEST(AdditiveCodeTest, ZeroingAGeneratorBreaksMds) {
  const auto c3 = load_additive("C3.code");
  Matrix g = c3.generators();
  for (auto& x : g.row(2)) x = 0;
  const AdditiveCode broken(g);
  EXPECT_EQ(broken.size(), 243u);
  EXPECT_FALSE(is_additive_mds(broken));
  EXPECT_THROW(additive_standard_form(broken), CodeError);
}

TEST(AdditiveCodeTest, BundledCodeIsNotLinear) {
  const auto c3 = load_additive("C3.code");
  const auto row = fq_linearity_violation(c3);
  ASSERT_TRUE(row.has_value());
  const auto& f = *c3.field();
  Word w(8);
  for (std::size_t c = 0; c < 8; ++c) w[c] = f.mul(f.primitive(), c3.generators()(*row, c));
  EXPECT_FALSE(c3.contains(w));
  EXPECT_TRUE(is_fq_linear(AdditiveCode::from_linear(load_linear("G1.code"))));
}

TEST(AdditiveStandardFormTest, LinearCodeBlocksAreMultiplicationMatrices) {
  const auto c1 = load_linear("G1.code");
  const auto sf = additive_standard_form(AdditiveCode::from_linear(c1));
  EXPECT_EQ(sf.permutation, (std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7}));
  EXPECT_TRUE(sf.blocks_invertible);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t c = 0; c < 8; ++c) {
      ASSERT_EQ(sf.block(i, c), LinearizedMap::scaling(c1.field(), c1.generator()(i, c)).matrix());
    }
  }
}

TEST(AdditiveStandardFormTest, BundledCodeFormStartsWithIdentity) {
  const auto c3 = load_additive("C3.code");
  const auto sf = additive_standard_form(c3);
  EXPECT_TRUE(sf.blocks_invertible);
  EXPECT_EQ(sf.expanded, c3.expanded());
  EXPECT_TRUE(is_equivalence(sf.witness, c3, sf.code));
  EXPECT_EQ(words_of(apply_to_code(c3, sf.witness)), words_of(sf.code));
}

TEST(AdditiveStandardFormTest, MovesInformationSetToTheFront) {
  const auto f = Field::make(3, 2);
  Rng rng(79);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix g(f, 4, 4);
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 1; c < 4; ++c) g(r, c) = random_element(*f, rng);
    }
    const AdditiveCode code(g);
    if (code.prime_dimension() != 4) continue;
    const auto sf = additive_standard_form(code);
    EXPECT_NE(sf.permutation[0], 0u);
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) ASSERT_EQ(sf.expanded(r, c), r == c ? 1u : 0u);
    }
    EXPECT_EQ(words_of(apply_to_code(code, sf.witness)), words_of(sf.code));
  }
}

TEST(AdditiveStandardFormTest, FullSpaceHasNoParityBlocks) {
  const auto f = Field::make(2, 2);
  const auto sf = additive_standard_form(AdditiveCode::from_linear(LinearCode(Matrix::identity(f, 3))));
  EXPECT_EQ(sf.expanded, Matrix::identity(f->prime_field(), 6));
  EXPECT_TRUE(sf.blocks_invertible);
}

AdditiveCode random_additive_mds(const FieldPtr& f, std::size_t k, std::size_t n, Rng& rng) {
  for (;;) {
    Matrix g(f, k * f->h(), n);
    for (std::size_t r = 0; r < g.rows(); ++r) {
      for (auto& x : g.row(r)) x = random_element(*f, rng);
    }
    AdditiveCode c(g);
    if (c.prime_dimension() == g.rows() && is_additive_mds(c)) return c;
  }
}

TEST(ExtractAdditiveTest, RoundTripOverF4) {
  const auto f = Field::make(2, 2);
  Rng rng(83);
  int nonlinear = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_additive_mds(f, 2, 4 + trial % 2, rng);
    nonlinear += !is_fq_linear(a);
    const auto planted = random_additive_witness(f, a.length(), rng);
    const auto b = apply_to_code(a, planted);
    const auto gw = compose_translation(*f, to_general(planted), random_codeword(b, rng));
    const auto aw = extract_additive(gw, a, b);
    ASSERT_TRUE(is_equivalence(aw, a, b));
    for (std::size_t i = 0; i < a.length(); ++i) ASSERT_EQ(aw.maps[i], planted.maps[i]);
  }
  EXPECT_GT(nonlinear, 0);
}

TEST(ExtractAdditiveTest, AdditiveWitnessIsKept) {
  const auto c3 = load_additive("C3.code");
  Rng rng(89);
  const auto planted = random_additive_witness(c3.field(), 8, rng);
  const auto b = apply_to_code(c3, planted);
  const auto aw = extract_additive(to_general(planted), c3, b);
  EXPECT_EQ(aw.alpha, planted.alpha);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(aw.maps[i], planted.maps[i]);
}

TEST(ExtractAdditiveTest, BundledCodeWithTranslation) {
  const auto c3 = load_additive("C3.code");
  const auto& f = *c3.field();
  Rng rng(97);
  const auto planted = random_additive_witness(c3.field(), 8, rng);
  const auto b = apply_to_code(c3, planted);
  const auto gw = compose_translation(f, to_general(planted), random_codeword(b, rng));
  ASSERT_TRUE(is_equivalence(gw, c3, b));
  const auto aw = extract_additive(gw, c3, b);
  EXPECT_TRUE(is_equivalence(aw, c3, b));
  EXPECT_EQ(words_of(apply_to_code(c3, aw)), words_of(b));
}

TEST(ExtractAdditiveTest, RejectsBrokenWitness) {
  const auto c3 = load_additive("C3.code");
  const auto& f = *c3.field();
  auto gw = identity_witness(f, 8);
  std::swap(gw.sigmas[4][3], gw.sigmas[4][5]);
  EXPECT_THROW(extract_additive(gw, c3, c3), Error);
}

TEST(SearchAdditiveTest, BundledCodeIsEquivalentToItself) {
  const auto c3 = load_additive("C3.code");
  const auto r = search_additive(c3, c3);
  ASSERT_EQ(r.status, SearchStatus::kFound);
  EXPECT_TRUE(is_equivalence(*r.witness, c3, c3));
}

TEST(SearchAdditiveTest, FindsPlantedWitnessOverF4) {
  const auto f = Field::make(2, 2);
  Rng rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_additive_mds(f, 2, 4, rng);
    const auto b = apply_to_code(a, random_additive_witness(f, 4, rng));
    const auto r = search_additive(a, b);
    ASSERT_EQ(r.status, SearchStatus::kFound);
    EXPECT_TRUE(is_equivalence(*r.witness, a, b));
  }
}

TEST(SearchAdditiveTest, BundledCodeIsNotAdditivelyEquivalentToTheLinearOnes) {
  const auto c3 = load_additive("C3.code");
  for (const char* name : {"G1.code", "G2.code"}) {
    const auto r = search_additive(c3, load_additive(name));
    EXPECT_EQ(r.status, SearchStatus::kNotFound) << name;
  }
}

TEST(SearchAdditiveTest, CodesWithoutAnInformationSet) {
  const auto f = Field::make(2, 2);
  // One F_2-row per coordinate: no coordinate carries a whole F_4 symbol.
  const AdditiveCode a(Matrix(f, 2, 3, {1, 1, 0, 0, f->primitive(), 1}));
  Rng rng(103);
  const auto b = apply_to_code(a, random_additive_witness(f, 3, rng));
  const auto r = search_additive(a, b);
  ASSERT_EQ(r.status, SearchStatus::kFound);
  EXPECT_TRUE(is_equivalence(*r.witness, a, b));
  // Same supports as a, up to order.
  const AdditiveCode same_supports(Matrix(f, 2, 3, {1, 1, 1, 0, f->primitive(), 1}));
  const auto s = search_additive(a, same_supports);
  ASSERT_EQ(s.status, SearchStatus::kFound);
  EXPECT_TRUE(is_equivalence(*s.witness, a, same_supports));
  const AdditiveCode other(Matrix(f, 2, 3, {1, 0, 0, 0, f->primitive(), 1}));
  EXPECT_EQ(search_additive(a, other).status, SearchStatus::kNotFound);
}

TEST(SearchAdditiveTest, FindsWitnessWheneverSemiLinearSearchDoes) {
  const auto f = Field::make(2, 2);
  Rng rng(107);
  for (int trial = 0; trial < 20; ++trial) {
    const LinearCode a(random_generator(f, 2, 4, rng));
    const LinearCode b = trial % 2 == 0 ? apply_to_code(a, random_semilinear_witness(*f, 4, trial % 4 / 2, rng))
                                        : LinearCode(random_generator(f, 2, 4, rng));
    const auto sl = search_semilinear(a, b);
    const auto ad = search_additive(AdditiveCode::from_linear(a), AdditiveCode::from_linear(b));
    if (sl.status == SearchStatus::kFound) {
      ASSERT_EQ(ad.status, SearchStatus::kFound) << "trial " << trial;
    }
    ASSERT_NE(ad.status, SearchStatus::kBudgetExceeded);
  }
}

}  // namespace
}  // namespace codequiv
