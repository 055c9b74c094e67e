#include "mahler/xmetric.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace mahler {

const char* to_string(Certificate c) {
  switch (c) {
    case Certificate::Certified: return "certified";
    case Certificate::CappedUpperBound: return "capped_upper_bound";
    case Certificate::Uncertified: return "uncertified";
  }
  return "?";
}

ExponentVector Factorization::product() const {
  ExponentVector sum;
  for (const auto& t : terms) sum += t;
  return sum;
}

std::vector<std::string> Factorization::term_strings() const {
  std::vector<std::string> out;
  for (const auto& t : terms) out.push_back(t.to_string());
  return out;
}

ExponentVector ev_from_coords(const std::vector<BigInt>& primes, const Coord& coords, unsigned long D) {
  ExponentVector::Entries entries;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (coords[i] != 0) entries.emplace(primes[i], make_rational(BigInt(coords[i]), BigInt(D)));
  }
  return ExponentVector(std::move(entries));
}

RemainderBoundFn radq_remainder_bound(const std::vector<BigInt>& primes, unsigned long D) {
  return [primes, D](const Coord& r, unsigned bits) {
    RealEnclosure min_term(bits), pos(bits), neg(bits);
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (r[i] == 0) continue;
      const RealEnclosure lp = log_enclosure(primes[i], bits);
      min_term = max(min_term, lp);
      const RealEnclosure part = lp * RealEnclosure::point(std::labs(r[i]), bits);
      if (r[i] > 0) {
        pos += part;
      } else {
        neg += part;
      }
    }
    RealEnclosure mass = max(pos, neg);
    if (D > 1) mass = mass / RealEnclosure::point(static_cast<long>(D), bits);
    return RemainderBound{min_term, mass};
  };
}

ValueRanking rank_logvalues(const std::vector<LogValue>& values) {
  ValueRanking out;
  std::unordered_map<std::string, std::size_t> seen;
  std::vector<LogValue> distinct;
  for (const auto& v : values) {
    if (seen.emplace(v.to_string(), distinct.size()).second) distinct.push_back(v);
  }
  std::sort(distinct.begin(), distinct.end(),
            [](const LogValue& a, const LogValue& b) { return compare_logvalues(a, b) == Ordering::Less; });
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < distinct.size(); ++i) position.emplace(distinct[i].to_string(), i);
  for (const auto& v : values) out.rank.push_back(position.at(v.to_string()));
  out.distinct = std::move(distinct);
  return out;
}

bool in_integer_span(const std::vector<Coord>& generators, const Coord& v) {
  const std::size_t k = v.size();
  std::vector<std::vector<BigInt>> rows;
  for (const auto& g : generators) {
    std::vector<BigInt> row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = g[i];
    rows.push_back(std::move(row));
  }
  // Echelon form by Euclid on each column.
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, column)
  std::size_t top = 0;
  for (std::size_t col = 0; col < k && top < rows.size(); ++col) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r) {
        if (rows[r][col] != 0 && (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col]))) best = r;
      }
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool cleared = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[top][col].get_mpz_t());
        for (std::size_t i = col; i < k; ++i) rows[r][i] -= q * rows[top][i];
        if (rows[r][col] != 0) cleared = false;
      }
      if (cleared) {
        pivots.emplace_back(top, col);
        ++top;
        break;
      }
    }
  }
  std::vector<BigInt> w(k);
  for (std::size_t i = 0; i < k; ++i) w[i] = v[i];
  for (const auto& [r, col] : pivots) {
    if (!mpz_divisible_p(w[col].get_mpz_t(), rows[r][col].get_mpz_t())) return false;
    const BigInt q = w[col] / rows[r][col];
    for (std::size_t i = col; i < k; ++i) w[i] -= q * rows[r][i];
  }
  return std::all_of(w.begin(), w.end(), [](const BigInt& c) { return c == 0; });
}

namespace {

// The searched subgroup (1/D) Z^support with every candidate of M-bar <= M-bar(target).
struct RadqSpace {
  std::vector<BigInt> primes;
  unsigned long D = 1;
  std::vector<ExponentVector> vectors;  // per term
  std::vector<LogValue> term_values;    // per term
  std::size_t natural_bound = 0;
  LatticeProblem problem;
};

RadqSpace build_space(const ExponentVector& target, const XParameter& x, const SearchConfig& config) {
  if (config.denominator_bound == 0) throw InputError("denominator bound must be >= 1");
  config.precision.validate();
  RadqSpace s;
  s.D = config.denominator_bound;
  const unsigned bits = config.precision.start_bits;
  Coord target_coords;
  for (const auto& [p, e] : target.entries()) {
    const BigRational scaled = e * BigRational(s.D);
    if (scaled.get_den() != 1) {
      throw UnsupportedTarget("exponent " + to_string(e) + " of " + p.get_str() + " has a denominator not dividing D = " +
                              std::to_string(s.D));
    }
    if (!scaled.get_num().fits_slong_p()) throw UnsupportedTarget("exponent too large");
    s.primes.push_back(p);
    target_coords.push_back(scaled.get_num().get_si());
  }
  const LogValue bound = mbar_ev(target);
  const RealEnclosure bound_enc = bound.eval(bits);

  std::vector<long> radius;
  double box = 1;
  for (const auto& p : s.primes) {
    // |t_p| log p <= M-bar(t) <= B for every admissible term.
    const RealEnclosure r = bound_enc * RealEnclosure::point(static_cast<long>(s.D), bits) / log_enclosure(p, bits);
    radius.push_back(mpfr_get_si(r.hi().get(), MPFR_RNDD));
    box *= static_cast<double>(2 * radius.back() + 1);
  }
  if (box > 4e6) throw UnsupportedTarget("search box of " + std::to_string(static_cast<long long>(box)) + " points is too large");

  struct Candidate {
    ExponentVector vector;
    LogValue value;
    Coord coords;
  };
  std::vector<Candidate> cands;
  const std::size_t k = s.primes.size();
  Coord c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = -radius[i];
  for (;;) {
    if (!std::all_of(c.begin(), c.end(), [](long v) { return v == 0; })) {
      ExponentVector e = ev_from_coords(s.primes, c, s.D);
      LogValue m = mbar_ev(e);
      if (compare_logvalues(m, bound, config.precision) != Ordering::Greater) {
        cands.push_back({std::move(e), std::move(m), c});
      }
    }
    std::size_t i = 0;
    while (i < k && c[i] == radius[i]) {
      c[i] = -radius[i];
      ++i;
    }
    if (i == k) break;
    ++c[i];
  }

  std::vector<LogValue> values;
  for (const auto& cand : cands) values.push_back(cand.value);
  const ValueRanking ranking = rank_logvalues(values);
  std::vector<std::size_t> order(cands.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ranking.rank[a] != ranking.rank[b]) return ranking.rank[a] < ranking.rank[b];
    return cands[a].vector < cands[b].vector;
  });

  LatticeProblem& lp = s.problem;
  lp.target = target_coords;
  lp.x = x;
  lp.precision = config.precision;
  for (std::size_t idx : order) {
    lp.terms.push_back(cands[idx].coords);
    lp.rank.push_back(ranking.rank[idx]);
    s.vectors.push_back(cands[idx].vector);
    s.term_values.push_back(cands[idx].value);
  }
  lp.rank_exact = ranking.distinct;
  for (const auto& v : ranking.distinct) lp.rank_value.push_back(LazyReal::from(v));
  lp.remainder_bound = radq_remainder_bound(s.primes, s.D);

  if (x.infinite) {
    if (config.infinity_term_cap == 0) throw BudgetZero();
    s.natural_bound = config.infinity_term_cap;
  } else {
    // N <= 1 + (B / C)^x.
    const RealEnclosure c_enc = config.c_override ? RealEnclosure::from_rational(*config.c_override, bits)
                                                  : c_constant().eval(bits);
    if (!c_enc.certainly_positive()) throw InputError("C override must be positive");
    const RealEnclosure ratio = power_x(bound_enc / c_enc, x);
    const double hi = ratio.hi_double();
    if (!(hi < 1e6)) throw UnsupportedTarget("term-count bound too large for exhaustive search");
    s.natural_bound = 1 + static_cast<std::size_t>(std::floor(hi));
  }
  lp.max_terms = s.natural_bound;
  if (config.max_terms_override) {
    if (*config.max_terms_override == 0) throw BudgetZero();
    lp.max_terms = std::min(lp.max_terms, *config.max_terms_override);
  }
  return s;
}

std::optional<std::string> exact_form_of(const std::vector<LogValue>& values, const XParameter& x) {
  if (values.empty()) return std::string("0");
  if (values.size() == 1) return values.front().to_string();
  if (x.infinite) return values.back().to_string();  // canonical order ends with the largest value
  if (x.value == 1) {
    LogValue sum;
    for (const auto& v : values) sum += v;
    return sum.to_string();
  }
  if (std::all_of(values.begin(), values.end(), [&](const LogValue& v) { return v == values.front(); })) {
    return std::to_string(values.size()) + "^(" + to_string(1 / x.value) + ")*(" + values.front().to_string() + ")";
  }
  return std::nullopt;
}

CertifiedResult run_search(const ExponentVector& target, const XParameter& x, const SearchConfig& config, bool parallel) {
  CertifiedResult out;
  out.stats.precision_bits = config.precision.start_bits;
  if (target.is_identity()) {
    config.precision.validate();
    out.value = RealEnclosure(config.precision.start_bits);
    out.exact_form = "0";
    return out;
  }
  RadqSpace s = build_space(target, x, config);
  const LatticeProblem& lp = s.problem;
  const LatticeSolution sol = parallel ? solve_lattice(lp) : solve_lattice_serial(lp);
  if (!sol.found) throw std::logic_error("decomposition search found no factorization of the target");

  std::vector<LogValue> values;
  for (std::size_t i : sol.indices) {
    out.witness.terms.push_back(s.vectors[i]);
    values.push_back(s.term_values[i]);
  }
  if (out.witness.product() != target) throw std::logic_error("witness does not multiply to the target");
  out.lazy_value = lattice_value(lp, sol.indices);
  out.value = out.lazy_value.eval(config.precision.start_bits);
  out.exact_form = exact_form_of(values, x);
  out.stats.nodes = sol.nodes;
  out.stats.precision_bits = sol.bits_used;
  out.stats.candidates = lp.terms.size();
  out.stats.term_bound = lp.max_terms;

  if (x.infinite) {
    const std::size_t top = lp.rank[sol.indices.back()];
    std::vector<Coord> lower;
    for (std::size_t i = 0; i < lp.terms.size() && lp.rank[i] < top; ++i) lower.push_back(lp.terms[i]);
    // Capped when a smaller maximum might be reachable with more terms than the cap allows.
    out.certificate = in_integer_span(lower, lp.target) ? Certificate::CappedUpperBound : Certificate::Certified;
  } else if (config.c_override) {
    out.certificate = Certificate::Uncertified;
  } else {
    out.certificate = lp.max_terms < s.natural_bound ? Certificate::CappedUpperBound : Certificate::Certified;
  }
  return out;
}

}  // namespace

CertifiedResult mx_search(const ExponentVector& target, const XParameter& x, const SearchConfig& config) {
  return run_search(target, x, config, true);
}

CertifiedResult mx_search_serial(const ExponentVector& target, const XParameter& x, const SearchConfig& config) {
  return run_search(target, x, config, false);
}

Threshold smallp_threshold(const ExponentVector& target, unsigned bits) {
  if (target.is_identity()) throw IdentityInput();
  const LogValue mbar = mbar_ev(target);
  const LogValue c = c_constant();
  Threshold t;
  t.value = RealEnclosure::positive_infinity(bits);
  if (compare_logvalues(mbar, c) == Ordering::Tie) {
    t.infinite = true;
    return t;
  }
  const unsigned work = bits + 32;
  const RealEnclosure gap = log(mbar.eval(work)) - log(c.eval(work));
  t.value = c.eval(work) / gap;
  return t;
}

std::vector<BigRational> parse_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos) throw ParseError("grid must look like a:b:step, got '" + text + "'");
  const BigRational a = parse_rational(text.substr(0, first));
  const BigRational b = parse_rational(text.substr(first + 1, second - first - 1));
  const BigRational step = parse_rational(text.substr(second + 1));
  if (a <= 0) throw InputError("grid start must be positive");
  if (step <= 0) throw InputError("grid step must be positive");
  if (b < a) throw InputError("grid end must not precede its start");
  std::vector<BigRational> out;
  for (BigRational x = a; x <= b; x += step) {
    out.push_back(x);
    if (out.size() > 100000) throw InputError("grid has too many points");
  }
  return out;
}

std::vector<BigRational> default_grid() { return parse_grid("1/4:4:1/20"); }

namespace {

CurvePoint to_point(const BigRational& x, const CertifiedResult& r) {
  CurvePoint pt;
  pt.x = x;
  pt.value = r.value;
  pt.witness = r.witness;
  pt.certificate = r.certificate;
  pt.exact_form = r.exact_form;
  pt.nodes = r.stats.nodes;
  return pt;
}

void check_grid(const std::vector<BigRational>& grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] <= 0) throw InputError("grid values must be positive");
    if (i > 0 && grid[i] <= grid[i - 1]) throw InputError("grid must be strictly ascending");
  }
}

}  // namespace

std::vector<CurvePoint> mx_curve(const ExponentVector& target, const std::vector<BigRational>& grid,
                                 const SearchConfig& config) {
  check_grid(grid);
  std::vector<CurvePoint> out(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = to_point(grid[k], mx_search(target, XParameter::finite(grid[k]), config));
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<CurvePoint> mx_curve_serial(const ExponentVector& target, const std::vector<BigRational>& grid,
                                        const SearchConfig& config) {
  check_grid(grid);
  std::vector<CurvePoint> out;
  for (const auto& x : grid) out.push_back(to_point(x, mx_search_serial(target, XParameter::finite(x), config)));
  return out;
}

bool ContinuityReport::passed() const {
  return monotonicity_violations.empty() &&
         std::all_of(pairs.begin(), pairs.end(), [](const ContinuityPair& p) { return p.pass; });
}

ContinuityReport continuity_check(const std::vector<CurvePoint>& curve, const ExponentVector& target) {
  if (target.is_identity()) throw IdentityInput();
  ContinuityReport report;
  const unsigned bits = 128;
  // K = log(M-bar / C) >= 0; D(x) = -K (x + x_bar + 1) / x^2 increases in x,
  // so its minimum over [x_bar, x_bar + 1] sits at x = x_bar.
  const RealEnclosure K = log(mbar_ev(target).eval(bits)) - log(c_constant().eval(bits));
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const CurvePoint& a = curve[i];
    const CurvePoint& b = curve[i + 1];
    if (b.value.certainly_greater(a.value)) report.monotonicity_violations.push_back(i);
    if (b.x > a.x + 1 || b.x <= a.x) continue;
    const RealEnclosure xb = RealEnclosure::from_rational(a.x, bits);
    const RealEnclosure two_x_plus_one = RealEnclosure::from_rational(2 * a.x + 1, bits);
    const RealEnclosure d_min = -(K * two_x_plus_one / (xb * xb));
    ContinuityPair pair;
    pair.x_bar = a.x;
    pair.y = b.x;
    pair.lower = RealEnclosure::from_rational(b.x - a.x, bits) * d_min;
    pair.middle = log(b.value) - log(a.value);
    pair.pass = !pair.lower.certainly_greater(pair.middle) && !pair.middle.certainly_positive();
    report.pairs.push_back(std::move(pair));
  }
  return report;
}

M0Report m0_check(const ExponentVector& target, const SearchConfig& config) {
  M0Report report;
  if (target.is_identity()) {
    report.trivial = true;
    report.x = 1;
    report.result = mx_search(target, XParameter::finite(1), config);
    return report;
  }
  const Threshold t = smallp_threshold(target);
  if (t.infinite) {
    report.threshold_infinite = true;
    report.x = 1;
  } else {
    const double half = t.value.mid_double() / 2;
    const long milli = std::max(1L, std::lround(half * 1000));
    report.x = make_rational(BigInt(milli), BigInt(1000));
  }
  report.result = mx_search(target, XParameter::finite(report.x), config);
  report.ordering = refine_compare(report.result.lazy_value, LazyReal::from(mbar_ev(target)), config.precision);
  return report;
}

LazyReal weil_hx(const ExponentVector& e, const XParameter& x) {
  if (x.infinite || x.value > 1) return LazyReal();
  return LazyReal::from(weil_height_ev(e));
}

RealEnclosure weil_hx_upper(const ExponentVector& e, const XParameter& x, unsigned long N, unsigned bits) {
  if (x.infinite || x.value <= 1) throw InputError("weil_hx_upper needs a finite x > 1");
  if (N == 0) throw InputError("N must be positive");
  const unsigned work = bits + 16;
  const RealEnclosure n = RealEnclosure::from_integer(BigInt(N), work);
  const RealEnclosure factor = pow(n, RealEnclosure::from_rational(1 / x.value - 1, work));
  return factor * weil_height_ev(e).eval(work);
}

}  // namespace mahler
