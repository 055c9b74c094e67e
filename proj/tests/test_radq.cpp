#include <gtest/gtest.h>

#include "mahler/radq.hpp"
#include "support.hpp"

using namespace mahler;

namespace {

ExponentVector ev(std::initializer_list<std::pair<long, BigRational>> entries) {
  ExponentVector::Entries m;
  for (const auto& [p, q] : entries) m[p] = q;
  return ExponentVector(m);
}

LogValue lv(std::initializer_list<std::pair<long, BigRational>> terms) {
  LogValue v;
  for (const auto& [p, c] : terms) v.add_term(p, c);
  return v;
}

ExponentVector random_ev(std::mt19937_64& g) {
  const long primes[] = {2, 3, 5, 7, 11, 13};
  ExponentVector::Entries m;
  for (long p : primes) {
    if (testing_support::uniform(g, 0, 2) == 0) continue;
    const long num = testing_support::uniform(g, -6, 6), den = testing_support::uniform(g, 1, 4);
    if (num) m[p] = BigRational(num, den);
  }
  for (auto& [p, q] : m) q.canonicalize();
  return ExponentVector(m);
}

}  // namespace

TEST(ExponentVector, ParseAndPrint) {
  EXPECT_EQ(ExponentVector::parse("12"), ev({{2, 2}, {3, 1}}));
  EXPECT_EQ(ExponentVector::parse("2/3"), ev({{2, 1}, {3, -1}}));
  EXPECT_EQ(ExponentVector::parse("2^2 * 3^1"), ev({{2, 2}, {3, 1}}));
  EXPECT_EQ(ExponentVector::parse("2^(3/2)"), ev({{2, BigRational(3, 2)}}));
  EXPECT_EQ(ExponentVector::parse("3^-1"), ev({{3, -1}}));
  EXPECT_EQ(ExponentVector::parse("6^(1/2)"), ev({{2, BigRational(1, 2)}, {3, BigRational(1, 2)}}));
  EXPECT_EQ(ExponentVector::parse("1"), ExponentVector());
  EXPECT_EQ(ev({{2, 2}, {3, 1}}).to_string(), "2^2 * 3^1");
  EXPECT_EQ(ev({{2, BigRational(3, 2)}}).to_string(), "2^(3/2)");
  EXPECT_EQ(ev({{3, -1}}).to_string(), "3^-1");
  EXPECT_EQ(ExponentVector().to_string(), "1");
  EXPECT_THROW(ExponentVector::parse("0"), ZeroInput);
  EXPECT_THROW(ExponentVector::parse("2^"), InputError);
  EXPECT_THROW(ExponentVector(ExponentVector::Entries{{4, 1}}), InputError);
}

TEST(ExponentVector, RoundTripsThroughText) {
  auto g = testing_support::rng(21);
  for (int i = 0; i < 200; ++i) {
    const ExponentVector e = random_ev(g);
    EXPECT_EQ(ExponentVector::parse(e.to_string()), e) << e.to_string();
  }
}

TEST(ExponentVector, GroupOperations) {
  const ExponentVector a = ev({{2, 1}, {3, -1}}), b = ev({{3, 1}, {5, 2}});
  EXPECT_EQ(a + b, ev({{2, 1}, {5, 2}}));
  EXPECT_EQ(a - a, ExponentVector());
  EXPECT_EQ(a.scaled(-2), ev({{2, -2}, {3, 2}}));
  EXPECT_EQ((-a).exponent(3), 1);
  EXPECT_EQ(a.exponent(7), 0);
}

TEST(Radq, FromRational) {
  EXPECT_EQ(ev_from_rational(12), ev({{2, 2}, {3, 1}}));
  EXPECT_EQ(ev_from_rational(BigRational(-2, 3)), ev({{2, 1}, {3, -1}}));
  EXPECT_EQ(ev_from_rational(1), ExponentVector());
  EXPECT_THROW(ev_from_rational(0), ZeroInput);
}

TEST(Radq, Reduce) {
  EXPECT_EQ(ev_reduce(ev({{2, BigRational(1, 2)}})), (SurdForm{{{2, 1}}, 2}));
  EXPECT_EQ(ev_reduce(ev({{2, BigRational(2, 2)}})), (SurdForm{{{2, 1}}, 1}));
  EXPECT_EQ(ev_reduce(ev({{2, BigRational(3, 2)}, {3, BigRational(1, 2)}})), (SurdForm{{{2, 3}, {3, 1}}, 2}));
  EXPECT_EQ(ev_reduce(ExponentVector()), (SurdForm{{}, 1}));
}

TEST(Radq, MbarExamples) {
  EXPECT_EQ(mbar_ev(ev({{2, 2}})), lv({{2, 2}}));
  EXPECT_EQ(mbar_ev(ev({{2, 1}, {3, -1}})), lv({{3, 1}}));
  EXPECT_EQ(mbar_ev(ev({{2, BigRational(3, 2)}})), lv({{2, 3}}));
  EXPECT_TRUE(mbar_ev(ExponentVector()).is_zero());
  for (long p : {2, 3, 5, 7}) EXPECT_EQ(mbar_ev(ev_from_rational(p * p)), lv({{p, 2}}));
}

TEST(Radq, WeilHeightAndDegree) {
  EXPECT_EQ(weil_height_ev(ev({{2, 3}})), lv({{2, 3}}));
  EXPECT_EQ(weil_height_ev(ev({{2, BigRational(1, 2)}})), lv({{2, BigRational(1, 2)}}));
  EXPECT_TRUE(weil_height_ev(ExponentVector()).is_zero());
  EXPECT_EQ(min_degree_ev(ev({{2, 1}})), 1u);
  EXPECT_EQ(min_degree_ev(ev({{2, BigRational(1, 2)}})), 2u);
  EXPECT_EQ(min_degree_ev(ev({{2, BigRational(3, 2)}})), 2u);
  EXPECT_THROW(min_degree_ev(ExponentVector()), IdentityInput);
}

TEST(Radq, CConstant) {
  EXPECT_EQ(c_constant(), lv({{2, 1}}));
  EXPECT_EQ(compare_logvalues(c_constant(), mbar_ev(ev({{2, 1}}))), Ordering::Tie);
}

TEST(Radq, MbarInverseSymmetric) {
  auto g = testing_support::rng(22);
  for (int i = 0; i < 1000; ++i) {
    const ExponentVector e = random_ev(g);
    ASSERT_EQ(mbar_ev(e), mbar_ev(-e)) << e.to_string();
  }
}

TEST(Radq, WeilHeightScalesWithIntegerPowers) {
  auto g = testing_support::rng(23);
  for (int i = 0; i < 100; ++i) {
    const ExponentVector e = random_ev(g);
    for (long N = -5; N <= 5; ++N) {
      ASSERT_EQ(weil_height_ev(e.scaled(N)), weil_height_ev(e).scaled(std::abs(N))) << e.to_string() << " N=" << N;
    }
  }
}

TEST(Radq, MbarAtLeastC) {
  auto g = testing_support::rng(24);
  for (int i = 0; i < 1000; ++i) {
    const ExponentVector e = random_ev(g);
    if (e.is_identity()) continue;
    ASSERT_NE(compare_logvalues(mbar_ev(e), c_constant()), Ordering::Less) << e.to_string();
  }
}

TEST(Radq, MbarIsDegreeTimesHeight) {
  auto g = testing_support::rng(25);
  for (int i = 0; i < 1000; ++i) {
    const ExponentVector e = random_ev(g);
    if (e.is_identity()) continue;
    ASSERT_EQ(mbar_ev(e), weil_height_ev(e).scaled(min_degree_ev(e))) << e.to_string();
  }
}
