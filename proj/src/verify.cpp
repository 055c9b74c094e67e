#include "mahler/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "mahler/framework.hpp"
#include "mahler/xmetric.hpp"

namespace mahler {

bool VerifyReport::passed() const {
  return std::all_of(lines.begin(), lines.end(), [](const VerifyLine& l) { return l.pass; });
}

std::string VerifyReport::render() const {
  std::ostringstream out;
  out << "== " << suite << " ==\n";
  std::size_t ok = 0;
  for (const auto& l : lines) {
    out << (l.pass ? "[PASS] " : "[FAIL] ") << l.anchor << " | " << l.detail << "\n";
    ok += l.pass ? 1 : 0;
  }
  out << suite << ": " << ok << "/" << lines.size() << " passed\n";
  return out.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"smallp", "notuniform", "weil", "framework", "continuity"};
  return names;
}

namespace {

std::string num(const RealEnclosure& v) { return v.lo().to_string(12, MPFR_RNDN); }

std::string witness_string(const Factorization& f) {
  std::string s = "[";
  for (std::size_t i = 0; i < f.terms.size(); ++i) s += (i ? ", " : "") + f.terms[i].to_string();
  return s + "]";
}

bool ties(const LazyReal& a, const LazyReal& b, const PrecisionPolicy& policy = {}) {
  try {
    return refine_compare(a, b, policy) == Ordering::Tie;
  } catch (const PrecisionExhausted&) {
    return false;
  }
}

// 2^(1/x) * log p
LazyReal two_root_log(const BigInt& p, const BigRational& x) {
  return LazyReal([p, x](unsigned bits) {
    const unsigned work = bits + 16;
    return pow(RealEnclosure::point(2, work), RealEnclosure::from_rational(1 / x, work)) * log_enclosure(p, work);
  });
}

VerifyReport suite_smallp() {
  VerifyReport r{"smallp", {}};
  const char* anchor = "small-x regime: M_x = M-bar below the threshold";
  for (long n : {4L, 9L, 12L, 25L}) {
    const ExponentVector t = ev_from_rational(BigRational(n));
    const Threshold th = smallp_threshold(t);
    // x = 0.9 * threshold, to the nearest 1/1000.
    const long milli = std::lround(th.value.mid_double() * 900);
    const BigRational x = make_rational(BigInt(milli), BigInt(1000));
    const CertifiedResult res = mx_search(t, XParameter::finite(x));
    const bool tie = ties(res.lazy_value, LazyReal::from(mbar_ev(t)));
    std::ostringstream d;
    d << "target " << n << ": threshold " << num(th.value) << ", x = " << to_string(x) << ", value " << num(res.value)
      << ", witness " << witness_string(res.witness) << ", " << to_string(res.certificate);
    r.lines.push_back({tie && res.witness.terms.size() == 1 && res.certificate == Certificate::Certified, anchor, d.str()});
  }
  {
    const Threshold th = smallp_threshold(ev_from_rational(BigRational(2)));
    r.lines.push_back({th.infinite, "threshold is infinite when M-bar = C", "target 2: M-bar = log 2 = C"});
  }
  for (long n : {4L, 12L}) {
    const ExponentVector t = ev_from_rational(BigRational(n));
    const M0Report m0 = m0_check(t);
    std::ostringstream d;
    d << "target " << n << ": x = " << to_string(m0.x) << ", M_x " << num(m0.result.value) << " vs M-bar "
      << mbar_ev(t).to_string() << ": " << to_string(m0.ordering);
    r.lines.push_back({m0.passed(), "M-bar is the limit of M_x as x -> 0", d.str()});
  }
  return r;
}

VerifyReport suite_notuniform() {
  VerifyReport r{"notuniform", {}};
  SearchConfig cfg;
  cfg.denominator_bound = 2;
  for (long p : {2L, 3L, 5L}) {
    const ExponentVector t = ExponentVector::prime_power(BigInt(p), BigRational(2));
    {
      const CertifiedResult res = mx_search(t, XParameter::finite(make_rational(1, 2)), cfg);
      const bool ok = res.witness.terms.size() == 1 && ties(res.lazy_value, LazyReal::from(LogValue::log_of(BigInt(p), 2)));
      std::ostringstream d;
      d << "p = " << p << ", x = 1/2, D = 2: value " << num(res.value) << ", witness " << witness_string(res.witness);
      r.lines.push_back({ok, "single non-torsion term for small x", d.str()});
    }
    for (const BigRational& x : {make_rational(3, 2), BigRational(2)}) {
      const CertifiedResult res = mx_search(t, XParameter::finite(x), cfg);
      const bool ok = res.witness.terms.size() >= 2 && ties(res.lazy_value, two_root_log(BigInt(p), x)) &&
                      res.certificate == Certificate::Certified;
      std::ostringstream d;
      d << "p = " << p << ", x = " << to_string(x) << ", D = 2: value " << num(res.value) << " = 2^(1/x) log p, witness "
        << witness_string(res.witness) << ", " << to_string(res.certificate);
      r.lines.push_back({ok, "several non-torsion terms for large x", d.str()});
    }
  }
  // Larger denominator bounds search larger subgroups: G_1 in G_2 in G_4, G_1 in G_3.
  const ExponentVector t12 = ev_from_rational(BigRational(12));
  std::vector<CertifiedResult> byD;
  for (unsigned long D : {1UL, 2UL, 3UL, 4UL}) {
    SearchConfig c;
    c.denominator_bound = D;
    byD.push_back(mx_search(t12, XParameter::finite(2), c));
  }
  auto le = [](const CertifiedResult& a, const CertifiedResult& b) {
    return !a.value.certainly_greater(b.value);
  };
  std::ostringstream d;
  d << "target 12, x = 2: D=1 " << num(byD[0].value) << ", D=2 " << num(byD[1].value) << ", D=3 " << num(byD[2].value)
    << ", D=4 " << num(byD[3].value);
  r.lines.push_back({le(byD[1], byD[0]) && le(byD[3], byD[1]) && le(byD[2], byD[0]),
                     "denominator bound comparison", d.str()});
  return r;
}

VerifyReport suite_weil(std::uint64_t seed) {
  VerifyReport r{"weil", {}};
  std::mt19937_64 rng(seed);
  const long primes[] = {2, 3, 5, 7, 11, 13};
  std::vector<ExponentVector> samples;
  for (int i = 0; i < 100; ++i) {
    ExponentVector::Entries entries;
    const int k = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int j = 0; j < k; ++j) {
      const long p = primes[std::uniform_int_distribution<int>(0, 5)(rng)];
      long a = std::uniform_int_distribution<long>(-6, 6)(rng);
      if (a == 0) a = 1;
      const long b = std::uniform_int_distribution<long>(1, 4)(rng);
      entries[BigInt(p)] = make_rational(BigInt(a), BigInt(b));
    }
    samples.emplace_back(std::move(entries));
  }
  const std::vector<XParameter> xs = {XParameter::finite(make_rational(1, 2)), XParameter::finite(1),
                                      XParameter::finite(make_rational(3, 2)), XParameter::infinity()};
  for (const auto& x : xs) {
    const bool below = !x.infinite && x.value <= 1;
    int ok = 0;
    for (const auto& e : samples) {
      // Independent closed form: max of the positive and negative parts of sum e_p log p.
      LogValue pos, neg;
      for (const auto& [p, c] : e.entries()) (c > 0 ? pos : neg).add_term(p, c > 0 ? c : BigRational(-c));
      const LazyReal expected = below ? LazyReal::from(max_logvalue(pos, neg)) : LazyReal();
      if (ties(weil_hx(e, x), expected)) ++ok;
    }
    std::ostringstream d;
    d << "x = " << x.to_string() << ": " << ok << "/100 random vectors match " << (below ? "h" : "0");
    r.lines.push_back({ok == 100, "h_x = h for x <= 1 and 0 for x > 1", d.str()});
  }
  const ExponentVector two = ev_from_rational(BigRational(2));
  const XParameter x2 = XParameter::finite(2);
  const RealEnclosure h = weil_height_ev(two).eval(128);
  const RealEnclosure u1 = weil_hx_upper(two, x2, 1), u4 = weil_hx_upper(two, x2, 4), u6 = weil_hx_upper(two, x2, 1000000);
  const RealEnclosure half_h = h * RealEnclosure::from_rational(make_rational(1, 2), 128);
  const RealEnclosure milli_h = h * RealEnclosure::from_rational(make_rational(1, 1000), 128);
  r.lines.push_back({u1.overlaps(h), "upper bound N^(1/x - 1) h", "x = 2, N = 1: " + num(u1) + " = h"});
  r.lines.push_back({u4.overlaps(half_h), "upper bound N^(1/x - 1) h", "x = 2, N = 4: " + num(u4) + " = h/2"});
  r.lines.push_back({!u6.certainly_greater(milli_h), "upper bound N^(1/x - 1) h",
                     "x = 2, N = 10^6: " + num(u6) + " <= 10^-3 h"});
  bool decreasing = true;
  RealEnclosure prev = u1;
  for (unsigned long n = 10; n <= 1000000; n *= 10) {
    const RealEnclosure cur = weil_hx_upper(two, x2, n);
    if (!cur.certainly_less(prev)) decreasing = false;
    prev = cur;
  }
  r.lines.push_back({decreasing, "upper bound N^(1/x - 1) h", "strictly decreasing over N = 1, 10, ..., 10^6"});
  return r;
}

void add_framework_lines(VerifyReport& r, const FrameworkReport& f) {
  for (const auto& p : f.properties) {
    std::ostringstream d;
    d << f.model << ": " << p.checks << " checks, " << p.violations.size() << " violations";
    if (!p.violations.empty()) d << " (first: " << p.violations.front() << ")";
    r.lines.push_back({p.violations.empty(), p.property, d.str()});
  }
}

VerifyReport suite_framework(std::uint64_t seed) {
  VerifyReport r{"framework", {}};
  const RegisteredModel radq = register_model(radq_group_model({BigInt(2), BigInt(3)}));
  add_framework_lines(r, framework_properties(radq, 200, seed));
  const RegisteredModel ind = register_model(indicator_model(2));
  add_framework_lines(r, framework_properties(ind, 200, seed));

  // Cross-engine: the generic search on the radq model agrees with the dedicated engine.
  const GenericResult g = generic_xmetric(radq, {2, 0}, XParameter::finite(2), {5, 2});
  const CertifiedResult m = mx_search(ev_from_rational(BigRational(4)), XParameter::finite(2));
  r.lines.push_back({ties(g.lazy_value, m.lazy_value), "generic x-metric matches the Rad(Q) engine",
                     "element (2,0) over {2,3}, x = 2: " + num(g.value) + " vs " + num(m.value)});

  GroupModel skew = indicator_model(1);
  skew.name = "skewed";
  skew.height = [](const GroupElement& e) { return LazyReal::constant(e[0] > 0 ? 2 : (e[0] < 0 ? 1 : 0)); };
  bool rejected = false;
  try {
    register_model(skew);
  } catch (const InvalidModel&) {
    rejected = true;
  }
  r.lines.push_back({rejected, "heights must be symmetric", "asymmetric height rejected at registration"});
  return r;
}

VerifyReport suite_continuity() {
  VerifyReport r{"continuity", {}};
  const std::vector<BigRational> grid = default_grid();
  for (long n : {4L, 12L}) {
    const ExponentVector t = ev_from_rational(BigRational(n));
    const std::vector<CurvePoint> curve = mx_curve(t, grid);
    const ContinuityReport rep = continuity_check(curve, t);
    std::ostringstream d1, d2;
    d1 << "target " << n << ": " << curve.size() << " grid points on [1/4, 4], M_x from " << num(curve.front().value)
       << " to " << num(curve.back().value) << ", " << rep.monotonicity_violations.size() << " increases";
    r.lines.push_back({rep.monotonicity_violations.empty(), "M_x is non-increasing in x", d1.str()});
    const std::size_t bad = std::count_if(rep.pairs.begin(), rep.pairs.end(), [](const ContinuityPair& p) { return !p.pass; });
    d2 << "target " << n << ": " << rep.pairs.size() << " adjacent pairs, " << bad << " violations";
    r.lines.push_back({bad == 0, "two-sided continuity bound", d2.str()});
  }
  {
    const ExponentVector t = ev_from_rational(BigRational(2));
    const std::vector<CurvePoint> curve = mx_curve(t, {make_rational(1, 2), 1, 2, 4});
    bool constant = true;
    for (const auto& p : curve) constant = constant && ties(LazyReal::from(LogValue::log_of(BigInt(2))),
                                                             LazyReal([v = p.value](unsigned) { return v; }), {});
    const ContinuityReport rep = continuity_check(curve, t);
    r.lines.push_back({constant && rep.passed(), "two-sided continuity bound", "target 2: constant log 2 on {1/2, 1, 2, 4}"});
  }
  {
    const ExponentVector t = ev_from_rational(BigRational(4));
    std::vector<CurvePoint> curve = mx_curve(t, parse_grid("1:2:1/4"));
    curve[2].value = curve[2].value + RealEnclosure::from_rational(make_rational(1, 2), 128);
    const ContinuityReport rep = continuity_check(curve, t);
    r.lines.push_back({!rep.passed(), "two-sided continuity bound", "target 4: injected upward jump is reported"});
  }
  return r;
}

}  // namespace

std::vector<VerifyReport> run_verify(const std::string& suite, std::uint64_t seed) {
  std::vector<std::string> which;
  if (suite == "all") {
    which = suite_names();
  } else if (std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end()) {
    which = {suite};
  } else {
    throw InputError("unknown verify suite '" + suite + "'");
  }
  std::vector<VerifyReport> out;
  for (const auto& s : which) {
    if (s == "smallp") out.push_back(suite_smallp());
    if (s == "notuniform") out.push_back(suite_notuniform());
    if (s == "weil") out.push_back(suite_weil(seed));
    if (s == "framework") out.push_back(suite_framework(seed));
    if (s == "continuity") out.push_back(suite_continuity());
  }
  return out;
}

}  // namespace mahler
