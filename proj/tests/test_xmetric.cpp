#include <gtest/gtest.h>

#include <cmath>

#include "mahler/xmetric.hpp"
#include "oracle/bruteforce.hpp"
#include "support.hpp"

using namespace mahler;
using testing_support::near_decimal;

namespace {

const char* kLog2 = "0.6931471805599453094172321214581765680755";
const char* kLog3 = "1.098612288668109691395245236922525704647";
const char* kLog4 = "1.386294361119890618834464242916353136151";
const char* kSqrt2Log2 = "0.9802581434685471917139017236352333812915";
const char* kHypot = "1.768830409192862015488731195862669672378";  // sqrt((2 log 2)^2 + (log 3)^2)
const char* kThreshold9 = "0.6007995293106400737679249705272297747542";
const char* kThreshold12 = "0.5429005355701491742871161786903205449810";

ExponentVector E(const std::string& s) { return ExponentVector::parse(s); }
XParameter X(const std::string& s) { return XParameter::parse(s); }

SearchConfig with_d(unsigned long d) {
  SearchConfig c;
  c.denominator_bound = d;
  return c;
}

std::vector<std::string> strings(const Factorization& f) { return f.term_strings(); }

LazyReal lazy(const LogValue& v) { return LazyReal::from(v); }

bool leq(const RealEnclosure& a, const RealEnclosure& b) { return !a.certainly_greater(b); }

ExponentVector random_rational_ev(std::mt19937_64& g, long range) {
  ExponentVector::Entries m;
  for (long p : {2, 3, 5}) {
    const long c = testing_support::uniform(g, -range, range);
    if (c) m[p] = c;
  }
  return ExponentVector(m);
}

}  // namespace

TEST(XParameter, ParseAndPrint) {
  EXPECT_EQ(X("inf"), XParameter::infinity());
  EXPECT_EQ(X("3/2").value, BigRational(3, 2));
  EXPECT_EQ(X("0.5").value, BigRational(1, 2));
  EXPECT_EQ(X("2").to_string(), "2");
  EXPECT_EQ(XParameter::infinity().to_string(), "inf");
  EXPECT_THROW(X("0"), InputError);
  EXPECT_THROW(X("-1"), InputError);
}

TEST(CombineX, Examples) {
  const LogValue l2 = LogValue::log_of(2), l3 = LogValue::log_of(3);
  EXPECT_TRUE(near_decimal(combine_x({lazy(l2), lazy(l2)}, X("1")).eval(128), kLog4, 1e-35));
  EXPECT_TRUE(near_decimal(combine_x({lazy(l2), lazy(l2)}, X("inf")).eval(128), kLog2, 1e-35));
  EXPECT_TRUE(near_decimal(combine_x({lazy(l2.scaled(2)), lazy(l3)}, X("2")).eval(128), kHypot, 1e-35));
  EXPECT_TRUE(combine_x({}, X("2")).eval(64).is_exact_zero());
}

TEST(CombineX, MonotoneInX) {
  auto g = testing_support::rng(31);
  for (int i = 0; i < 100; ++i) {
    std::vector<LazyReal> vals;
    for (int k = 0; k < 3; ++k) vals.push_back(LazyReal::constant(BigRational(testing_support::uniform(g, 1, 50), 7)));
    const auto a = combine_x(vals, X("1/2")).eval(128), b = combine_x(vals, X("1")).eval(128);
    const auto c = combine_x(vals, X("2")).eval(128), d = combine_x(vals, X("inf")).eval(128);
    EXPECT_TRUE(leq(b, a) && leq(c, b) && leq(d, c));
  }
}

TEST(MxSearch, Examples) {
  const CertifiedResult a = mx_search(E("4"), X("1/2"));
  EXPECT_TRUE(near_decimal(a.value, kLog4, 1e-35));
  EXPECT_EQ(strings(a.witness), (std::vector<std::string>{"2^2"}));
  EXPECT_EQ(a.certificate, Certificate::Certified);
  EXPECT_EQ(a.exact_form, "2*log(2)");

  const CertifiedResult b = mx_search(E("4"), X("2"), with_d(2));
  EXPECT_TRUE(near_decimal(b.value, kSqrt2Log2, 1e-35));
  EXPECT_EQ(strings(b.witness), (std::vector<std::string>{"2^1", "2^1"}));
  EXPECT_EQ(b.certificate, Certificate::Certified);
  EXPECT_EQ(b.exact_form, "2^(1/2)*(log(2))");

  const CertifiedResult c = mx_search(E("12"), X("inf"));
  EXPECT_TRUE(near_decimal(c.value, kLog3, 1e-35));
  EXPECT_EQ(strings(c.witness), (std::vector<std::string>{"2^1", "2^1", "3^1"}));
  EXPECT_EQ(c.certificate, Certificate::Certified);

  for (const char* x : {"1/2", "1", "2", "inf"}) {
    const CertifiedResult id = mx_search(ExponentVector(), X(x));
    EXPECT_TRUE(id.value.is_exact_zero());
    EXPECT_TRUE(id.witness.terms.empty());
    EXPECT_EQ(id.exact_form, "0");
  }
}

TEST(MxSearch, Errors) {
  EXPECT_THROW(mx_search(E("2^(1/2)"), X("1")), UnsupportedTarget);
  EXPECT_NO_THROW(mx_search(E("2^(1/2)"), X("1"), with_d(2)));
  SearchConfig zero;
  zero.max_terms_override = 0;
  EXPECT_THROW(mx_search(E("12"), X("1"), zero), BudgetZero);
}

TEST(MxSearch, CertificateKinds) {
  SearchConfig capped;
  capped.max_terms_override = 1;
  const CertifiedResult r = mx_search(E("4"), X("2"), capped);
  EXPECT_EQ(r.certificate, Certificate::CappedUpperBound);
  EXPECT_EQ(strings(r.witness), (std::vector<std::string>{"2^2"}));

  SearchConfig c;
  c.c_override = BigRational(1, 2);
  EXPECT_EQ(mx_search(E("4"), X("2"), c).certificate, Certificate::Uncertified);

  // At x = inf the term cap binds when low levels generate the target only with many terms.
  SearchConfig tight;
  tight.infinity_term_cap = 2;
  const CertifiedResult t = mx_search(E("8"), X("inf"), tight);
  EXPECT_EQ(t.certificate, Certificate::CappedUpperBound);
  EXPECT_TRUE(mx_search(E("8"), X("inf")).certificate == Certificate::Certified);
}

TEST(MxSearch, ParallelMatchesSerial) {
  for (const char* t : {"12", "30", "2^3 * 3^-2", "7/10", "2^(3/2)"}) {
    for (const char* x : {"1/2", "1", "3/2", "2", "inf"}) {
      const SearchConfig c = with_d(2);
      const CertifiedResult a = mx_search(E(t), X(x), c), b = mx_search_serial(E(t), X(x), c);
      EXPECT_EQ(strings(a.witness), strings(b.witness)) << t << " x=" << x;
      EXPECT_EQ(a.value.to_string(30), b.value.to_string(30));
      EXPECT_EQ(a.certificate, b.certificate);
    }
  }
}

TEST(MxSearch, WitnessValidityAndBounds) {
  auto g = testing_support::rng(32);
  for (int i = 0; i < 40; ++i) {
    const ExponentVector t = random_rational_ev(g, 2);
    for (const char* xs : {"1/2", "1", "2", "inf"}) {
      const XParameter x = X(xs);
      const CertifiedResult r = mx_search(t, x);
      ASSERT_EQ(r.witness.product(), t);
      for (const auto& w : r.witness.terms) ASSERT_FALSE(w.is_identity());
      // Canonical order: non-decreasing M-bar.
      for (std::size_t k = 1; k < r.witness.terms.size(); ++k) {
        ASSERT_NE(compare_logvalues(mbar_ev(r.witness.terms[k - 1]), mbar_ev(r.witness.terms[k])), Ordering::Greater);
      }
      const RealEnclosure mbar = mbar_ev(t).eval(128);
      ASSERT_TRUE(leq(r.value, mbar));
      if (t.is_identity() || x.infinite) continue;
      // N <= 1 + (B/C)^x.
      const double bound = 1 + std::pow(mbar.hi_double() / std::log(2.0), mpq_get_d(x.value.get_mpq_t()));
      ASSERT_LE(static_cast<double>(r.witness.terms.size()), bound + 1e-9);
      const RealEnclosure c = c_constant().eval(128);
      if (r.witness.terms.size() == 1) {
        ASSERT_TRUE(leq(c, r.value));
      } else {
        const RealEnclosure two_c =
            c * exp(log(RealEnclosure::point(2, 128)) / RealEnclosure::from_rational(x.value, 128));
        ASSERT_TRUE(leq(two_c, r.value)) << t.to_string() << " x=" << xs;
      }
    }
  }
}

TEST(MxSearch, InverseSymmetry) {
  for (const char* t : {"12", "18/5", "2^(1/2) * 3^1", "30"}) {
    for (const char* x : {"1/2", "1", "2", "inf"}) {
      const SearchConfig c = with_d(2);
      const CertifiedResult a = mx_search(E(t), X(x), c), b = mx_search(-E(t), X(x), c);
      ASSERT_TRUE(a.value.overlaps(b.value)) << t << " x=" << x;
      ASSERT_EQ(refine_compare(a.lazy_value, b.lazy_value, {}), Ordering::Tie);
      std::vector<ExponentVector> neg;
      for (const auto& w : a.witness.terms) neg.push_back(-w);
      EXPECT_EQ(Factorization{neg}.product(), b.witness.product());
    }
  }
}

TEST(MxSearch, XTriangleInequality) {
  auto g = testing_support::rng(33);
  for (int i = 0; i < 40; ++i) {
    const ExponentVector u = random_rational_ev(g, 1), v = random_rational_ev(g, 1);
    for (const char* xs : {"1/2", "1", "2", "inf"}) {
      const XParameter x = X(xs);
      const CertifiedResult ru = mx_search(u, x), rv = mx_search(v, x), ruv = mx_search(u + v, x);
      const RealEnclosure rhs = combine_x({ru.lazy_value, rv.lazy_value}, x).eval(128);
      ASSERT_TRUE(leq(ruv.value, rhs)) << u.to_string() << " + " << v.to_string() << " x=" << xs;
    }
  }
}

// For finite x the result never exceeds any explicit factorization.
TEST(MxSearch, PruningSoundnessFuzz) {
  auto g = testing_support::rng(34);
  for (const char* ts : {"12", "30", "18"}) {
    const ExponentVector t = E(ts);
    for (const char* xs : {"1/2", "1", "2"}) {
      const XParameter x = X(xs);
      const CertifiedResult r = mx_search(t, x);
      for (int i = 0; i < 500; ++i) {
        const long k = testing_support::uniform(g, 1, 4);
        std::vector<LazyReal> vals;
        ExponentVector rest = t;
        for (long j = 0; j + 1 < k; ++j) {
          const ExponentVector w = random_rational_ev(g, 2);
          rest = rest - w;
          if (!w.is_identity()) vals.push_back(lazy(mbar_ev(w)));
        }
        if (!rest.is_identity()) vals.push_back(lazy(mbar_ev(rest)));
        const RealEnclosure explicit_value = combine_x(vals, x).eval(128);
        ASSERT_TRUE(leq(r.value, explicit_value)) << ts << " x=" << xs;
      }
    }
  }
}

TEST(MxSearch, MatchesBruteForceOracle) {
  struct X_ {
    const char* text;
    long num, den;
    bool inf;
  };
  const X_ xs[] = {{"1/2", 1, 2, false}, {"1", 1, 1, false}, {"2", 2, 1, false}, {"inf", 1, 1, true}};
  for (long n : {1L, 2L, 6L, 12L, 18L, 20L}) {
    for (const auto& x : xs) {
      const CertifiedResult r = mx_search(ev_from_rational(n), X(x.text));
      const oracle::Answer o = oracle::brute_force(n, x.num, x.den, x.inf);
      ASSERT_TRUE(o.found);
      const std::string ov = oracle::witness_value(o.witness, x.num, x.den, x.inf);
      EXPECT_TRUE(near_decimal(r.value, ov)) << n << " x=" << x.text << " oracle " << ov;
      EXPECT_LE(r.witness.terms.size(), std::max<std::size_t>(o.term_bound, 1));
    }
  }
}

TEST(MxSearch, NotUniformAtDenominatorTwo) {
  for (long p : {2, 3, 5}) {
    const ExponentVector t = ev_from_rational(p * p);
    const CertifiedResult small = mx_search(t, X("1/2"), with_d(2));
    EXPECT_EQ(small.witness.terms.size(), 1u);
    EXPECT_EQ(refine_compare(small.lazy_value, lazy(LogValue::log_of(p, 2)), {}), Ordering::Tie);
    for (const char* xs : {"3/2", "2"}) {
      const XParameter x = X(xs);
      const CertifiedResult r = mx_search(t, x, with_d(2));
      EXPECT_GE(r.witness.terms.size(), 2u);
      const LazyReal expect = combine_x({lazy(LogValue::log_of(p)), lazy(LogValue::log_of(p))}, x);
      EXPECT_EQ(refine_compare(r.lazy_value, expect, {}), Ordering::Tie) << p << " x=" << xs;
      EXPECT_EQ(r.certificate, Certificate::Certified);
    }
  }
}

TEST(Threshold, Examples) {
  const Threshold t4 = smallp_threshold(E("4"));
  EXPECT_FALSE(t4.infinite);
  EXPECT_TRUE(t4.value.contains(1.0));
  EXPECT_TRUE(near_decimal(smallp_threshold(E("9")).value, kThreshold9, 1e-35));
  EXPECT_TRUE(near_decimal(smallp_threshold(E("12")).value, kThreshold12, 1e-35));
  EXPECT_TRUE(smallp_threshold(E("2")).infinite);
  EXPECT_TRUE(smallp_threshold(E("1/2")).infinite);
}

TEST(Threshold, SingleTermBelowThreshold) {
  for (const char* ts : {"4", "9", "12", "25", "10/3"}) {
    const ExponentVector t = E(ts);
    const Threshold th = smallp_threshold(t);
    const BigRational x = make_rational(static_cast<long>(std::floor(th.value.lo_double() * 0.9 * 1000)), 1000);
    const CertifiedResult r = mx_search(t, XParameter::finite(x));
    EXPECT_EQ(r.witness.terms.size(), 1u) << ts;
    EXPECT_EQ(refine_compare(r.lazy_value, lazy(mbar_ev(t)), {}), Ordering::Tie) << ts;
  }
}

TEST(Curve, Examples) {
  const auto c4 = mx_curve(E("4"), {BigRational(1, 2), 1, 2});
  ASSERT_EQ(c4.size(), 3u);
  EXPECT_TRUE(near_decimal(c4[0].value, kLog4, 1e-35));
  EXPECT_TRUE(near_decimal(c4[1].value, kLog4, 1e-35));
  EXPECT_TRUE(near_decimal(c4[2].value, kSqrt2Log2, 1e-35));
  for (const auto& p : mx_curve(E("2"), {BigRational(1, 2), 1, 2, 4})) EXPECT_TRUE(near_decimal(p.value, kLog2, 1e-35));
  for (const auto& p : mx_curve(ExponentVector(), {1, 2})) EXPECT_TRUE(p.value.is_exact_zero());
}

TEST(Curve, Grid) {
  const auto g = default_grid();
  ASSERT_EQ(g.size(), 76u);
  EXPECT_EQ(g.front(), BigRational(1, 4));
  EXPECT_EQ(g.back(), 4);
  EXPECT_EQ(parse_grid("1:2:1/4").size(), 5u);
  EXPECT_THROW(parse_grid("2:1:1/4"), InputError);
  EXPECT_THROW(parse_grid("1:2:0"), InputError);
  EXPECT_THROW(parse_grid("1:2"), InputError);
}

TEST(Curve, ParallelMatchesSerial) {
  const auto grid = parse_grid("1/2:3:1/4");
  const auto a = mx_curve(E("12"), grid), b = mx_curve_serial(E("12"), grid);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].value.to_string(30), b[i].value.to_string(30));
    EXPECT_EQ(a[i].witness.term_strings(), b[i].witness.term_strings());
  }
}

TEST(Continuity, Examples) {
  const auto c4 = mx_curve(E("4"), parse_grid("1:2:1/4"));
  const ContinuityReport r4 = continuity_check(c4, E("4"));
  EXPECT_TRUE(r4.passed());
  EXPECT_EQ(r4.pairs.size(), 4u);

  const auto c2 = mx_curve(E("2"), {BigRational(1, 2), 1, 2, 4});
  EXPECT_TRUE(continuity_check(c2, E("2")).passed());

  auto jumped = c4;
  jumped[2].value = jumped[2].value + RealEnclosure::point(1, 128);
  const ContinuityReport bad = continuity_check(jumped, E("4"));
  EXPECT_FALSE(bad.passed());
  EXPECT_FALSE(bad.monotonicity_violations.empty());
}

TEST(M0, Examples) {
  const M0Report r4 = m0_check(E("4"));
  EXPECT_TRUE(r4.passed());
  EXPECT_EQ(r4.x, BigRational(1, 2));
  const M0Report r12 = m0_check(E("12"));
  EXPECT_TRUE(r12.passed());
  EXPECT_EQ(r12.x, BigRational(271, 1000));
  EXPECT_TRUE(m0_check(E("2")).threshold_infinite);
  EXPECT_TRUE(m0_check(ExponentVector()).trivial);
}

TEST(WeilHx, Examples) {
  EXPECT_TRUE(near_decimal(weil_hx(E("2"), X("1")).eval(128), kLog2, 1e-35));
  EXPECT_TRUE(weil_hx(E("2"), X("2")).eval(128).is_exact_zero());
  EXPECT_TRUE(weil_hx(E("2"), X("inf")).eval(128).is_exact_zero());
  EXPECT_TRUE(weil_hx(ExponentVector(), X("1/2")).eval(128).is_exact_zero());
  EXPECT_TRUE(near_decimal(weil_hx_upper(E("2"), X("2"), 4), "0.3465735902799726547086160607290882840378", 1e-35));
  EXPECT_TRUE(near_decimal(weil_hx_upper(E("2"), X("2"), 1), kLog2, 1e-35));
  const RealEnclosure big = weil_hx_upper(E("2"), X("2"), 1000000);
  EXPECT_TRUE(leq(big, LogValue::log_of(2).eval(128).scaled(BigRational(1, 1000))));
  EXPECT_THROW(weil_hx_upper(E("2"), X("1"), 4), InputError);
}

TEST(Lattice, SpanMembership) {
  EXPECT_TRUE(in_integer_span({{2, 0}, {0, 3}}, {4, -3}));
  EXPECT_FALSE(in_integer_span({{2, 0}, {0, 3}}, {1, 0}));
  EXPECT_TRUE(in_integer_span({{2, 1}, {1, 1}}, {1, 0}));
  EXPECT_TRUE(in_integer_span({}, {0, 0}));
  EXPECT_FALSE(in_integer_span({}, {0, 1}));
}

TEST(Lattice, RankLogValues) {
  const std::vector<LogValue> v = {LogValue::log_of(3), LogValue::log_of(2), LogValue::log_of(2, 2),
                                   LogValue::log_of(2)};
  const ValueRanking r = rank_logvalues(v);
  ASSERT_EQ(r.distinct.size(), 3u);
  EXPECT_EQ(r.rank, (std::vector<std::size_t>{1, 0, 2, 0}));
}
