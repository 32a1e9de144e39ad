#include <gtest/gtest.h>

#include <set>

#include "codequiv/errors.hpp"
#include "codequiv/finite_field.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace codequiv {
namespace {

TEST(FieldTest, NineElementFieldSatisfiesESquaredIsEPlusOne) {
  const auto f = Field::make(3, 2);
  EXPECT_EQ(f->modulus(), (std::vector<Elem>{2, 2, 1}));
  const Elem e = f->primitive();
  EXPECT_EQ(f->mul(e, e), f->add(e, 1));
}

TEST(FieldTest, BinaryFieldHasEEqualToOne) {
  const auto f = Field::make(2, 1);
  EXPECT_EQ(f->q(), 2u);
  EXPECT_EQ(f->primitive(), 1u);
}

TEST(FieldTest, FourElementFieldOrdersMatchBruteForce) {
  const auto f = Field::make(2, 2);
  const auto o = testing_util::oracle_for(*f);
  const Elem e = f->primitive();
  EXPECT_EQ(o.pow(e, 3), 1u);
  EXPECT_EQ(o.mul(e, e), o.add(e, 1));
  // Multiplicative order of e is exactly 3.
  EXPECT_NE(o.pow(e, 1), 1u);
  EXPECT_NE(o.pow(e, 2), 1u);
}

TEST(FieldTest, ArithmeticAgreesWithPolynomialOracle) {
  for (auto [p, h] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {2u, 3u}, {3u, 2u}, {5u, 2u}, {3u, 3u},
                      {2u, 4u}, {7u, 1u}}) {
    const auto f = Field::make(p, h);
    const auto o = testing_util::oracle_for(*f);
    ASSERT_EQ(o.q(), f->q());
    for (Elem a = 0; a < f->q(); ++a) {
      for (Elem b = 0; b < f->q(); ++b) {
        ASSERT_EQ(f->add(a, b), o.add(a, b)) << "q=" << f->q();
        ASSERT_EQ(f->sub(a, b), o.sub(a, b));
        ASSERT_EQ(f->mul(a, b), o.mul(a, b));
        if (b != 0) ASSERT_EQ(f->mul(f->div(a, b), b), a);
      }
      if (a != 0) ASSERT_EQ(f->inv(a), o.inv(a));
      ASSERT_EQ(f->add(a, f->neg(a)), 0u);
    }
  }
}

TEST(FieldTest, PrimitiveElementGeneratesMultiplicativeGroup) {
  for (auto [p, h] : {std::pair{3u, 2u}, {2u, 2u}, {2u, 3u}, {5u, 2u}, {3u, 3u}}) {
    const auto f = Field::make(p, h);
    const auto o = testing_util::oracle_for(*f);
    std::set<Elem> orbit;
    for (std::uint32_t k = 0; k < f->q() - 1; ++k) orbit.insert(o.pow(f->primitive(), k));
    EXPECT_EQ(orbit.size(), f->q() - 1);
    EXPECT_EQ(f->pow(f->primitive(), f->q() - 1), 1u);
  }
}

TEST(FieldTest, PowerOrbitInNineElementField) {
  const auto f = Field::make(3, 2);
  EXPECT_EQ(f->pow(f->primitive(), 8), 1u);
  std::set<Elem> orbit;
  for (int k = 0; k < 8; ++k) orbit.insert(f->exp(k));
  EXPECT_EQ(orbit.size(), 8u);
}

TEST(FieldTest, FrobeniusOfEInNineElementField) {
  const auto f = Field::make(3, 2);
  const Elem e = f->primitive();
  // e^3 = e * (e + 1) = e^2 + e = 2e + 1.
  EXPECT_EQ(f->frobenius(e, 1), f->from_digits(std::vector<Elem>{1, 2}));
  EXPECT_EQ(f->frobenius(e, 0), e);
}

TEST(FieldTest, FrobeniusIsAnAutomorphismFixingThePrimeField) {
  for (auto [p, h] : {std::pair{3u, 2u}, {2u, 3u}, {2u, 4u}, {5u, 2u}}) {
    const auto f = Field::make(p, h);
    const auto o = testing_util::oracle_for(*f);
    for (std::uint32_t i = 0; i <= h; ++i) {
      std::uint64_t exponent = 1;
      for (std::uint32_t j = 0; j < i; ++j) exponent *= p;
      for (Elem x = 0; x < f->q(); ++x) {
        ASSERT_EQ(f->frobenius(x, i), o.pow(x, exponent));
        for (Elem y = 0; y < f->q(); ++y) {
          ASSERT_EQ(f->frobenius(f->add(x, y), i), f->add(f->frobenius(x, i), f->frobenius(y, i)));
          ASSERT_EQ(f->frobenius(f->mul(x, y), i), f->mul(f->frobenius(x, i), f->frobenius(y, i)));
        }
      }
      for (Elem c = 0; c < p; ++c) EXPECT_EQ(f->frobenius(c, i), c);
    }
    for (Elem x = 0; x < f->q(); ++x) EXPECT_EQ(f->frobenius(x, h), x);
  }
}

TEST(FieldTest, RejectsBadParameters) {
  EXPECT_THROW(Field::make(4, 1), FieldError);
  EXPECT_THROW(Field::make(1, 3), FieldError);
  EXPECT_THROW(Field::make(2, 0), FieldError);
  EXPECT_THROW(Field::make(2, 17), FieldError);
  // x^2 + 1 = (x + 1)^2 over F_2.
  EXPECT_THROW(Field::make(2, 2, {{1, 0, 1}}), FieldError);
  // x^2 + 1 is irreducible over F_3 but its root has order 4.
  EXPECT_THROW(Field::make(3, 2, {{1, 0, 1}}), FieldError);
  EXPECT_NO_THROW(Field::make(3, 2, {{2, 2, 1}}));
}

TEST(FieldTest, DivisionByZeroThrows) {
  const auto f = Field::make(3, 2);
  EXPECT_THROW(f->inv(0), FieldError);
  EXPECT_THROW(f->div(1, 0), FieldError);
}

TEST(FieldTest, FormatAndParseRoundTrip) {
  const auto f = Field::make(3, 2);
  EXPECT_EQ(f->format(0), "0");
  EXPECT_EQ(f->format(1), "1");
  EXPECT_EQ(f->format(f->primitive()), "e");
  EXPECT_EQ(f->format(f->exp(6)), "e^6");
  for (Elem x = 0; x < f->q(); ++x) EXPECT_EQ(f->parse(f->format(x)), x);
  EXPECT_EQ(f->parse("[1,2]"), f->from_digits(std::vector<Elem>{1, 2}));
  EXPECT_EQ(f->parse("e^8"), 1u);
  EXPECT_THROW(f->parse("x"), ParseError);
  EXPECT_THROW(f->parse("[1,3]"), ParseError);
  EXPECT_THROW(f->parse("[1]"), ParseError);
  EXPECT_THROW(f->parse("e^"), ParseError);
  EXPECT_THROW(f->parse("2"), ParseError);
  const auto f3 = Field::make(3, 1);
  EXPECT_EQ(f3->parse("2"), 2u);
}

TEST(FieldTest, CanonicalOrderIsZeroThenPowers) {
  const auto f = Field::make(2, 2);
  const auto& order = f->canonical_order();
  ASSERT_EQ(order.size(), 4u);
  EXPECT_EQ(order[0], 0u);
  EXPECT_EQ(order[1], 1u);
  EXPECT_EQ(order[2], f->primitive());
  EXPECT_EQ(order[3], f->exp(2));
}

TEST(FieldElementTest, CheckedOperators) {
  const auto f = Field::make(3, 2);
  const auto e = FieldElement::primitive(f);
  const auto one = FieldElement::one(f);
  EXPECT_EQ(e * e, e + one);
  EXPECT_EQ((e / e), one);
  EXPECT_EQ(-(-e), e);
  EXPECT_EQ(e.pow(8), one);
  EXPECT_EQ(e.inverse() * e, one);
  EXPECT_EQ(FieldElement::parse(f, "e^2").to_string(), "e^2");
  EXPECT_THROW(one / FieldElement::zero(f), FieldError);
  const auto g = Field::make(2, 2);
  EXPECT_THROW(one + FieldElement::one(g), FieldError);
  EXPECT_EQ(e.coefficients(), (std::vector<Elem>{0, 1}));
}

}  // namespace
}  // namespace codequiv
