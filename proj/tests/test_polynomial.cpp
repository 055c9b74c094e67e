#include <gtest/gtest.h>

#include "mahler/polynomial.hpp"
#include "mahler/radq.hpp"
#include "support.hpp"

using namespace mahler;
using testing_support::near_decimal;

namespace {

// Lehmer's polynomial; 40 digits from an independent 200-digit root finder.
const char* kLehmerPoly = "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1";
const char* kLehmer = "0.1623576120077381394321988035549658077079";
const char* kLog2 = "0.6931471805599453094172321214581765680755";

IntPolynomial random_poly(std::mt19937_64& g, std::size_t max_degree) {
  const std::size_t d = static_cast<std::size_t>(testing_support::uniform(g, 1, static_cast<long>(max_degree)));
  std::vector<BigInt> c(d + 1);
  for (auto& x : c) x = testing_support::uniform(g, -4, 4);
  if (c.back() == 0) c.back() = 1;
  if (c.front() == 0) c.front() = -2;
  return IntPolynomial(c);
}

}  // namespace

TEST(Polynomial, ParseAndPrint) {
  const IntPolynomial l = IntPolynomial::parse(kLehmerPoly);
  EXPECT_EQ(l.degree(), 10u);
  EXPECT_EQ(l.to_string(), kLehmerPoly);
  EXPECT_EQ(l.to_list_string(), "[1,1,0,-1,-1,-1,-1,-1,0,1,1]");
  EXPECT_EQ(IntPolynomial::parse("[1,1,0,-1,-1,-1,-1,-1,0,1,1]"), l);
  EXPECT_EQ(IntPolynomial::parse("3*x^2 - 2x + 5"), (IntPolynomial{5, -2, 3}));
  EXPECT_EQ(IntPolynomial::parse("-x"), (IntPolynomial{0, -1}));
  EXPECT_THROW(IntPolynomial::parse("x^2 +* 1"), InputError);
  EXPECT_THROW(IntPolynomial::parse("0"), InputError);
  EXPECT_THROW(IntPolynomial::parse("[]"), InputError);
}

TEST(Measure, Examples) {
  MeasureOptions opt;
  opt.tol = 1e-9;
  const MeasureResult l = mahler_measure_poly(IntPolynomial::parse(kLehmerPoly), opt);
  EXPECT_FALSE(l.is_exact_zero);
  EXPECT_TRUE(l.value.width_below(1e-9));
  EXPECT_TRUE(near_decimal(l.value, kLehmer, 1e-35));

  EXPECT_TRUE(near_decimal(mahler_measure_poly(IntPolynomial{-2, 1}).value, kLog2, 1e-35));
  EXPECT_TRUE(near_decimal(mahler_measure_poly(IntPolynomial{-1, 2}).value, kLog2, 1e-35));
  const MeasureResult c6 = mahler_measure_poly(IntPolynomial{1, -1, 1});
  EXPECT_TRUE(c6.is_exact_zero);
  EXPECT_TRUE(c6.value.is_exact_zero());
}

TEST(Measure, ToleranceUnreachable) {
  MeasureOptions opt;
  opt.tol = 1e-200;
  opt.precision.start_bits = 64;
  opt.precision.max_bits = 128;
  EXPECT_THROW(mahler_measure_poly(IntPolynomial::parse(kLehmerPoly), opt), ToleranceUnreachable);
}

TEST(Kronecker, Examples) {
  EXPECT_TRUE(is_kronecker(IntPolynomial{1, -1, 1}));
  EXPECT_TRUE(is_kronecker(IntPolynomial{0, 1, 0, 1}));
  EXPECT_FALSE(is_kronecker(IntPolynomial{-2, 1}));
  EXPECT_FALSE(is_kronecker(IntPolynomial::parse(kLehmerPoly)));
  EXPECT_TRUE(is_kronecker(IntPolynomial{-1}));
  EXPECT_FALSE(is_kronecker(IntPolynomial{2}));
  for (unsigned n = 1; n <= 30; ++n) EXPECT_TRUE(is_kronecker(cyclotomic(n))) << n;
  EXPECT_EQ(cyclotomic(12), (IntPolynomial{1, 0, -1, 0, 1}));
}

TEST(Kronecker, MatchesNumericMeasureOnSignedDigitPolys) {
  // Degree <= 6 here; the full degree-8 sweep is an acceptance criterion.
  for (std::size_t d = 1; d <= 6; ++d) {
    std::size_t total = 1;
    for (std::size_t i = 0; i + 1 < d; ++i) total *= 3;
    for (std::size_t code = 0; code < total * 4; ++code) {
      std::vector<BigInt> c(d + 1);
      std::size_t k = code;
      c[0] = (k & 1) ? 1 : -1;
      c[d] = (k & 2) ? 1 : -1;
      k >>= 2;
      for (std::size_t i = 1; i < d; ++i, k /= 3) c[i] = static_cast<long>(k % 3) - 1;
      const IntPolynomial f(c);
      const RealEnclosure m = mahler_measure_numeric(f);
      if (is_kronecker(f)) {
        ASSERT_FALSE(m.certainly_positive()) << f.to_string();
      } else {
        ASSERT_TRUE(m.certainly_positive()) << f.to_string();
      }
    }
  }
}

TEST(Measure, AdditiveOverProducts) {
  auto g = testing_support::rng(11);
  MeasureOptions opt;
  opt.tol = 1e-20;
  for (int i = 0; i < 100; ++i) {
    const IntPolynomial f = random_poly(g, 6), h = random_poly(g, 6);
    const RealEnclosure mf = mahler_measure_poly(f, opt).value, mh = mahler_measure_poly(h, opt).value;
    const RealEnclosure mfh = mahler_measure_poly(f * h, opt).value;
    ASSERT_TRUE(mfh.overlaps(mf + mh)) << f.to_string() << " * " << h.to_string();
  }
}

TEST(Measure, NonnegativeAndReciprocalInvariant) {
  auto g = testing_support::rng(12);
  for (int i = 0; i < 100; ++i) {
    const IntPolynomial f = random_poly(g, 8);
    const RealEnclosure m = mahler_measure_poly(f).value;
    ASSERT_GE(mpfr_sgn(m.hi().get()), 0);
    ASSERT_TRUE(m.overlaps(mahler_measure_poly(f.reversed()).value)) << f.to_string();
  }
}

TEST(Measure, BatchMatchesSerial) {
  auto g = testing_support::rng(13);
  std::vector<IntPolynomial> polys;
  for (int i = 0; i < 64; ++i) polys.push_back(random_poly(g, 8));
  const auto a = measure_batch(polys), b = measure_batch_serial(polys);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].is_exact_zero, b[i].is_exact_zero);
    EXPECT_EQ(a[i].value.to_string(30), b[i].value.to_string(30));
  }
}

TEST(SurdMinPoly, Examples) {
  EXPECT_EQ(surd_min_poly(8, 2), (IntPolynomial{-8, 0, 1}));
  EXPECT_EQ(surd_min_poly(2, 1), (IntPolynomial{-2, 1}));
  EXPECT_EQ(surd_min_poly(4, 2), (IntPolynomial{-2, 1}));
  EXPECT_EQ(surd_min_poly(BigRational(2, 3), 2), (IntPolynomial{-2, 0, 3}));
  EXPECT_EQ(surd_min_poly(BigRational(16, 81), 4), (IntPolynomial{-2, 3}));
  EXPECT_EQ(surd_min_poly(64, 6), (IntPolynomial{-2, 1}));
  EXPECT_EQ(surd_min_poly(8, 6), (IntPolynomial{-2, 0, 1}));
}

// The measure of the minimal polynomial of a positive surd equals M-bar of its class.
TEST(SurdMinPoly, CrossModuleOracle) {
  auto g = testing_support::rng(14);
  const long primes[] = {2, 3, 5, 7};
  MeasureOptions opt;
  opt.tol = 1e-15;
  for (int i = 0; i < 50; ++i) {
    const long p = primes[testing_support::uniform(g, 0, 3)];
    const long L = testing_support::uniform(g, 1, 6);
    long a = 0;
    while (a == 0 || std::gcd(a, L) != 1) a = testing_support::uniform(g, -5, 5);
    const ExponentVector e = ExponentVector::prime_power(p, BigRational(a, L));
    BigInt q;
    mpz_pow_ui(q.get_mpz_t(), BigInt(p).get_mpz_t(), static_cast<unsigned long>(std::abs(a)));
    const BigRational qq = a > 0 ? BigRational(q) : BigRational(1) / BigRational(q);
    const IntPolynomial f = surd_min_poly(qq, static_cast<unsigned long>(L));
    ASSERT_EQ(f.degree(), static_cast<std::size_t>(L));
    ASSERT_EQ(min_degree_ev(e), static_cast<unsigned long>(L));
    const RealEnclosure m = mahler_measure_poly(f, opt).value;
    ASSERT_TRUE(m.overlaps(mbar_ev(e).eval(128))) << e.to_string();
  }
}
