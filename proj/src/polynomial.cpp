#include "mahler/polynomial.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <exception>
#include <numbers>
#include <optional>
#include <sstream>

namespace mahler {

IntPolynomial::IntPolynomial(std::vector<BigInt> coefficients) : coefficients_(std::move(coefficients)) {
  while (!coefficients_.empty() && coefficients_.back() == 0) coefficients_.pop_back();
  if (coefficients_.empty()) throw InputError("the zero polynomial is not allowed");
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coefficients)
    : IntPolynomial([&] {
        std::vector<BigInt> c;
        for (long v : coefficients) c.emplace_back(v);
        return c;
      }()) {}

namespace {

std::string strip_spaces(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  return s;
}

bool is_integer_literal(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(i), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

IntPolynomial parse_list(const std::string& s) {
  if (s.size() < 2 || s.back() != ']') throw ParseError("malformed coefficient list: " + s);
  std::vector<BigInt> coeffs;
  std::stringstream body(s.substr(1, s.size() - 2));
  std::string item;
  while (std::getline(body, item, ',')) {
    if (!is_integer_literal(item)) throw ParseError("malformed coefficient: '" + item + "'");
    if (item[0] == '+') item.erase(0, 1);
    coeffs.emplace_back(item);
  }
  if (coeffs.empty()) throw ParseError("empty coefficient list");
  return IntPolynomial(std::move(coeffs));
}

IntPolynomial parse_ascii(const std::string& s) {
  std::vector<BigInt> coeffs;
  std::size_t i = 0;
  bool any = false;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (any) {
      throw ParseError("expected + or - in polynomial: " + s);
    }
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    BigInt coeff = 1;
    bool has_coeff = i > start;
    if (has_coeff) coeff = BigInt(s.substr(start, i - start));
    unsigned long power = 0;
    if (i < s.size() && s[i] == '*') {
      if (!has_coeff) throw ParseError("dangling '*' in polynomial: " + s);
      ++i;
    }
    if (i < s.size() && (s[i] == 'x' || s[i] == 'z')) {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t ps = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == ps) throw ParseError("missing exponent in polynomial: " + s);
        power = std::stoul(s.substr(ps, i - ps));
      }
    } else if (!has_coeff) {
      throw ParseError("malformed term in polynomial: " + s);
    }
    if (coeffs.size() <= power) coeffs.resize(power + 1, BigInt(0));
    coeffs[power] += sign * coeff;
    any = true;
  }
  if (!any) throw ParseError("empty polynomial");
  return IntPolynomial(std::move(coeffs));
}

}  // namespace

IntPolynomial IntPolynomial::parse(const std::string& text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw ParseError("empty polynomial");
  if (s.front() == '[') return parse_list(s);
  return parse_ascii(s);
}

IntPolynomial IntPolynomial::reversed() const {
  std::vector<BigInt> c(coefficients_.rbegin(), coefficients_.rend());
  return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> c(a.coefficients_.size() + b.coefficients_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.coefficients_.size(); ++i) {
    for (std::size_t j = 0; j < b.coefficients_.size(); ++j) c[i + j] += a.coefficients_[i] * b.coefficients_[j];
  }
  return IntPolynomial(std::move(c));
}

std::string IntPolynomial::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = coefficients_.size(); k-- > 0;) {
    const BigInt& c = coefficients_[k];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (c < 0) {
      out << "-";
    } else if (!first) {
      out << "+";
    }
    first = false;
    if (k == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << "x";
    if (k > 1) out << "^" << k;
  }
  return out.str();
}

std::string IntPolynomial::to_list_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    if (i) out << ",";
    out << coefficients_[i].get_str();
  }
  out << "]";
  return out.str();
}

namespace {

using Coeffs = std::vector<BigInt>;

void trim(Coeffs& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

// Division by a monic integer polynomial; returns the quotient when exact.
std::optional<Coeffs> divide_exact_monic(const Coeffs& num, const Coeffs& den) {
  if (num.size() < den.size()) return std::nullopt;
  Coeffs rem = num;
  Coeffs quot(num.size() - den.size() + 1, BigInt(0));
  const std::size_t dd = den.size() - 1;
  for (std::size_t k = quot.size(); k-- > 0;) {
    const BigInt q = rem[k + dd];
    quot[k] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[k + j] -= q * den[j];
  }
  for (std::size_t j = 0; j < dd; ++j) {
    if (rem[j] != 0) return std::nullopt;
  }
  return quot;
}

Coeffs x_power_minus_one(unsigned d) {
  Coeffs c(d + 1, BigInt(0));
  c[0] = -1;
  c[d] = 1;
  return c;
}

Coeffs multiply(const Coeffs& a, const Coeffs& b) {
  Coeffs c(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

int mobius(unsigned n) {
  int mu = 1;
  for (const auto& pp : factor_integer(BigInt(n))) {
    if (pp.exponent > 1) return 0;
    mu = -mu;
  }
  return mu;
}

unsigned long euler_phi(unsigned n) {
  unsigned long phi = n;
  for (const auto& pp : factor_integer(BigInt(n))) {
    const unsigned long p = pp.prime.get_ui();
    phi = phi / p * (p - 1);
  }
  return phi;
}

}  // namespace

IntPolynomial cyclotomic(unsigned n) {
  if (n == 0) throw InputError("cyclotomic index must be positive");
  Coeffs numerator{BigInt(1)};
  std::vector<unsigned> denominators;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    const int mu = mobius(n / d);
    if (mu == 1) numerator = multiply(numerator, x_power_minus_one(d));
    if (mu == -1) denominators.push_back(d);
  }
  for (unsigned d : denominators) numerator = *divide_exact_monic(numerator, x_power_minus_one(d));
  return IntPolynomial(std::move(numerator));
}

bool is_kronecker(const IntPolynomial& f) {
  Coeffs g = f.coefficients();
  std::size_t shift = 0;
  while (g[shift] == 0) ++shift;
  g.erase(g.begin(), g.begin() + static_cast<long>(shift));
  if (abs(g.back()) != 1 || abs(g.front()) != 1) return false;
  const std::size_t degree = g.size() - 1;
  // phi(n) >= sqrt(n/2), so every cyclotomic divisor has index <= 2 deg^2.
  const unsigned limit = static_cast<unsigned>(2 * degree * degree + 2);
  for (unsigned n = 1; n <= limit && g.size() > 1; ++n) {
    if (euler_phi(n) > g.size() - 1) continue;
    const Coeffs phi = cyclotomic(n).coefficients();
    while (g.size() > 1) {
      auto q = divide_exact_monic(g, phi);
      if (!q) break;
      g = std::move(*q);
      trim(g);
    }
  }
  return g.size() == 1 && abs(g[0]) == 1;
}

namespace {

// ---- rational polynomial helpers for the square-free decomposition ----

using QPoly = std::vector<BigRational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

std::size_t qdeg(const QPoly& p) { return p.empty() ? 0 : p.size() - 1; }

void make_monic(QPoly& p) {
  const BigRational lead = p.back();
  for (auto& c : p) c /= lead;
}

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * BigRational(static_cast<unsigned long>(i)));
  trim(d);
  return d;
}

void divmod(const QPoly& num, const QPoly& den, QPoly& quot, QPoly& rem) {
  rem = num;
  trim(rem);
  quot.assign(rem.size() >= den.size() ? rem.size() - den.size() + 1 : 0, BigRational(0));
  while (!rem.empty() && rem.size() >= den.size()) {
    const std::size_t shift = rem.size() - den.size();
    const BigRational q = rem.back() / den.back();
    quot[shift] = q;
    for (std::size_t j = 0; j < den.size(); ++j) rem[shift + j] -= q * den[j];
    rem.pop_back();
    trim(rem);
  }
  trim(quot);
}

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a);
  return a;
}

QPoly exact_quotient(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  divmod(a, b, q, r);
  return q;
}

Coeffs primitive_integer(const QPoly& p) {
  BigInt l = 1;
  for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  Coeffs out;
  BigInt content = 0;
  for (const auto& c : p) {
    BigRational scaled = c * BigRational(l);
    out.push_back(scaled.get_num());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out.back().get_mpz_t());
  }
  for (auto& c : out) c /= content;
  if (out.back() < 0) {
    for (auto& c : out) c = -c;
  }
  return out;
}

struct SquareFreeFactor {
  Coeffs poly;
  unsigned long multiplicity;
};

// Musser's square-free decomposition over Q of a polynomial with nonzero constant term.
std::vector<SquareFreeFactor> square_free(const Coeffs& f) {
  QPoly p(f.begin(), f.end());
  std::vector<SquareFreeFactor> out;
  if (qdeg(p) == 0) return out;
  QPoly c = gcd(p, derivative(p));
  QPoly w = exact_quotient(p, c);
  unsigned long i = 1;
  while (qdeg(w) > 0) {
    QPoly y = gcd(w, c);
    QPoly z = exact_quotient(w, y);
    if (qdeg(z) > 0) out.push_back({primitive_integer(z), i});
    ++i;
    w = std::move(y);
    c = exact_quotient(c, w);
  }
  return out;
}

// ---- complex arithmetic ----

struct MpComplex {
  Mpfr re, im;
  explicit MpComplex(mpfr_prec_t prec) : re(prec), im(prec) {}
};

void cx_set(MpComplex& out, const std::complex<long double>& z) {
  mpfr_set_ld(out.re.get(), z.real(), MPFR_RNDN);
  mpfr_set_ld(out.im.get(), z.imag(), MPFR_RNDN);
}

void cx_mul(MpComplex& out, const MpComplex& a, const MpComplex& b, MpComplex& scratch) {
  // scratch = a * b, then copy
  mpfr_mul(scratch.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_fms(scratch.re.get(), a.im.get(), b.im.get(), scratch.re.get(), MPFR_RNDN);
  mpfr_neg(scratch.re.get(), scratch.re.get(), MPFR_RNDN);
  mpfr_mul(scratch.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_fma(scratch.im.get(), a.im.get(), b.re.get(), scratch.im.get(), MPFR_RNDN);
  mpfr_swap(out.re.get(), scratch.re.get());
  mpfr_swap(out.im.get(), scratch.im.get());
}

void cx_div(MpComplex& out, const MpComplex& a, const MpComplex& b, MpComplex& scratch) {
  Mpfr denom(b.re.precision());
  mpfr_sqr(denom.get(), b.re.get(), MPFR_RNDN);
  mpfr_fma(denom.get(), b.im.get(), b.im.get(), denom.get(), MPFR_RNDN);
  // (a.re b.re + a.im b.im) + i (a.im b.re - a.re b.im)
  mpfr_mul(scratch.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_fma(scratch.re.get(), a.im.get(), b.im.get(), scratch.re.get(), MPFR_RNDN);
  mpfr_mul(scratch.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_fms(scratch.im.get(), a.im.get(), b.re.get(), scratch.im.get(), MPFR_RNDN);
  mpfr_div(out.re.get(), scratch.re.get(), denom.get(), MPFR_RNDN);
  mpfr_div(out.im.get(), scratch.im.get(), denom.get(), MPFR_RNDN);
}

std::vector<std::complex<long double>> aberth_long_double(const Coeffs& g) {
  const std::size_t n = g.size() - 1;
  std::vector<long double> a(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) a[i] = static_cast<long double>(g[i].get_d());
  const long double radius = std::pow(std::fabs(a[0] / a[n]), 1.0L / static_cast<long double>(n));
  std::vector<std::complex<long double>> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) / static_cast<long double>(n) + 0.4L;
    z[k] = std::polar(radius, angle);
  }
  for (int iter = 0; iter < 800; ++iter) {
    long double max_step = 0;
    for (std::size_t k = 0; k < n; ++k) {
      std::complex<long double> p = a[n], dp = 0;
      for (std::size_t i = n; i-- > 0;) {
        dp = dp * z[k] + p;
        p = p * z[k] + a[i];
      }
      if (p == std::complex<long double>(0)) continue;
      const std::complex<long double> ratio = p / dp;
      std::complex<long double> sum = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      }
      const std::complex<long double> step = ratio / (1.0L - ratio * sum);
      z[k] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max(1.0L, std::abs(z[k])));
    }
    if (max_step < 1e-17L) break;
  }
  return z;
}

// Aberth-Ehrlich refinement at MPFR precision `prec`.
void aberth_refine(const Coeffs& g, std::vector<MpComplex>& z, mpfr_prec_t prec, int max_iter) {
  const std::size_t n = g.size() - 1;
  std::vector<Mpfr> a;
  for (const auto& c : g) {
    Mpfr v(prec);
    mpfr_set_z(v.get(), c.get_mpz_t(), MPFR_RNDN);
    a.push_back(std::move(v));
  }
  MpComplex p(prec), dp(prec), scratch(prec), ratio(prec), sum(prec), diff(prec), inv(prec), one(prec), step(prec);
  mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
  Mpfr tmp(prec), eps(prec);
  for (int iter = 0; iter < max_iter; ++iter) {
    bool converged = true;
    for (std::size_t k = 0; k < n; ++k) {
      mpfr_set(p.re.get(), a[n].get(), MPFR_RNDN);
      mpfr_set_zero(p.im.get(), 1);
      mpfr_set_zero(dp.re.get(), 1);
      mpfr_set_zero(dp.im.get(), 1);
      for (std::size_t i = n; i-- > 0;) {
        cx_mul(dp, dp, z[k], scratch);
        mpfr_add(dp.re.get(), dp.re.get(), p.re.get(), MPFR_RNDN);
        mpfr_add(dp.im.get(), dp.im.get(), p.im.get(), MPFR_RNDN);
        cx_mul(p, p, z[k], scratch);
        mpfr_add(p.re.get(), p.re.get(), a[i].get(), MPFR_RNDN);
      }
      if (mpfr_zero_p(p.re.get()) && mpfr_zero_p(p.im.get())) continue;
      cx_div(ratio, p, dp, scratch);
      mpfr_set_zero(sum.re.get(), 1);
      mpfr_set_zero(sum.im.get(), 1);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        mpfr_sub(diff.re.get(), z[k].re.get(), z[j].re.get(), MPFR_RNDN);
        mpfr_sub(diff.im.get(), z[k].im.get(), z[j].im.get(), MPFR_RNDN);
        cx_div(inv, one, diff, scratch);
        mpfr_add(sum.re.get(), sum.re.get(), inv.re.get(), MPFR_RNDN);
        mpfr_add(sum.im.get(), sum.im.get(), inv.im.get(), MPFR_RNDN);
      }
      // step = ratio / (1 - ratio * sum)
      cx_mul(sum, ratio, sum, scratch);
      mpfr_ui_sub(sum.re.get(), 1, sum.re.get(), MPFR_RNDN);
      mpfr_neg(sum.im.get(), sum.im.get(), MPFR_RNDN);
      cx_div(step, ratio, sum, scratch);
      mpfr_sub(z[k].re.get(), z[k].re.get(), step.re.get(), MPFR_RNDN);
      mpfr_sub(z[k].im.get(), z[k].im.get(), step.im.get(), MPFR_RNDN);
      // relative step size test against 2^(8-prec)
      mpfr_hypot(tmp.get(), step.re.get(), step.im.get(), MPFR_RNDN);
      mpfr_hypot(eps.get(), z[k].re.get(), z[k].im.get(), MPFR_RNDN);
      if (mpfr_cmp_ui(eps.get(), 1) < 0) mpfr_set_ui(eps.get(), 1, MPFR_RNDN);
      mpfr_mul_2si(eps.get(), eps.get(), 8 - static_cast<long>(prec), MPFR_RNDN);
      if (mpfr_greater_p(tmp.get(), eps.get())) converged = false;
    }
    if (converged) break;
  }
}

struct ComplexEnclosure {
  RealEnclosure re, im;
};

ComplexEnclosure point_enclosure(const MpComplex& z, unsigned bits) {
  return {RealEnclosure::hull(z.re, z.re, bits), RealEnclosure::hull(z.im, z.im, bits)};
}

ComplexEnclosure operator*(const ComplexEnclosure& a, const ComplexEnclosure& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

RealEnclosure min_abs(const RealEnclosure& a, unsigned bits) {
  RealEnclosure r(bits);
  if (mpfr_sgn(a.lo().get()) > 0) return RealEnclosure::hull(a.lo(), a.lo(), bits);
  if (mpfr_sgn(a.hi().get()) < 0) return -RealEnclosure::hull(a.hi(), a.hi(), bits);
  return r;
}

// Enclosure of |z| for a complex enclosure: [lower bound, upper bound].
RealEnclosure modulus(const ComplexEnclosure& c, unsigned bits) {
  const RealEnclosure re_lo = min_abs(c.re, bits), im_lo = min_abs(c.im, bits);
  const RealEnclosure lower = sqrt(re_lo * re_lo + im_lo * im_lo);
  const RealEnclosure upper = sqrt(c.re * c.re + c.im * c.im);
  return RealEnclosure::hull(lower.lo(), upper.hi(), bits);
}

// Sum of log+|root| over the roots of a square-free primitive polynomial, or
// nullopt when the inclusion disks cannot be separated at this precision.
std::optional<RealEnclosure> certify_log_plus_sum(const Coeffs& g, const std::vector<MpComplex>& z, unsigned bits) {
  const std::size_t n = g.size() - 1;
  std::vector<ComplexEnclosure> pts;
  pts.reserve(n);
  for (const auto& zk : z) pts.push_back(point_enclosure(zk, bits));
  std::vector<RealEnclosure> radius;
  radius.reserve(n);
  const RealEnclosure lead = RealEnclosure::from_integer(abs(g.back()), bits);
  const RealEnclosure degree = RealEnclosure::point(static_cast<long>(n), bits);
  std::vector<std::vector<RealEnclosure>> dist(n, std::vector<RealEnclosure>(n, RealEnclosure(bits)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ComplexEnclosure d{pts[i].re - pts[j].re, pts[i].im - pts[j].im};
      dist[i][j] = dist[j][i] = modulus(d, bits);
      if (!dist[i][j].certainly_positive()) return std::nullopt;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    ComplexEnclosure value{RealEnclosure::from_integer(g[n], bits), RealEnclosure(bits)};
    for (std::size_t k = n; k-- > 0;) {
      value = value * pts[i];
      value.re += RealEnclosure::from_integer(g[k], bits);
    }
    RealEnclosure denom = lead;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) denom = denom * dist[i][j];
    }
    const RealEnclosure w = modulus(value, bits) / denom * degree;
    radius.push_back(RealEnclosure::hull(w.hi(), w.hi(), bits));
  }
  // Disjoint Weierstrass disks D(z_i, n|W_i|) each hold exactly one root.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(radius[i] + radius[j]).certainly_less(dist[i][j])) return std::nullopt;
    }
  }
  RealEnclosure total(bits);
  for (std::size_t i = 0; i < n; ++i) {
    const RealEnclosure m = modulus(pts[i], bits);
    RealEnclosure lo = RealEnclosure::hull(m.lo(), m.lo(), bits) - radius[i];
    RealEnclosure hi = RealEnclosure::hull(m.hi(), m.hi(), bits) + radius[i];
    Mpfr lower = lo.lo();
    if (mpfr_sgn(lower.get()) < 0) mpfr_set_zero(lower.get(), 1);
    total += log_plus(RealEnclosure::hull(lower, hi.hi(), bits));
  }
  return total;
}

// log+ of every root of one square-free factor; tries increasing precision.
class FactorRoots {
 public:
  explicit FactorRoots(Coeffs g) : g_(std::move(g)) {}

  RealEnclosure log_plus_sum(unsigned bits) {
    if (g_.size() == 2) {
      const BigRational root = make_rational(abs(g_[0]), abs(g_[1]));
      return log_plus(RealEnclosure::from_rational(root, bits));
    }
    if (z_.empty()) {
      for (const auto& r : aberth_long_double(g_)) {
        MpComplex c(bits);
        cx_set(c, r);
        z_.push_back(std::move(c));
      }
      refined_bits_ = 64;
    }
    for (int attempt = 0; attempt < 3; ++attempt) {
      if (refined_bits_ < bits || attempt > 0) {
        for (auto& c : z_) {
          mpfr_prec_round(c.re.get(), bits, MPFR_RNDN);
          mpfr_prec_round(c.im.get(), bits, MPFR_RNDN);
        }
        aberth_refine(g_, z_, bits, 60 + 40 * attempt);
        refined_bits_ = bits;
      }
      if (auto s = certify_log_plus_sum(g_, z_, bits)) return *s;
    }
    throw ToleranceUnreachable("root inclusion disks overlap at " + std::to_string(bits) + " bits");
  }

 private:
  Coeffs g_;
  std::vector<MpComplex> z_;
  unsigned refined_bits_ = 0;
};

}  // namespace

RealEnclosure mahler_measure_numeric(const IntPolynomial& f, const MeasureOptions& options) {
  if (!(options.tol > 0)) throw InputError("tolerance must be positive");
  options.precision.validate();
  Coeffs c = f.coefficients();
  std::size_t shift = 0;
  while (c[shift] == 0) ++shift;
  c.erase(c.begin(), c.begin() + static_cast<long>(shift));
  std::vector<SquareFreeFactor> factors = square_free(c);
  std::vector<FactorRoots> roots;
  roots.reserve(factors.size());
  for (const auto& sf : factors) roots.emplace_back(sf.poly);

  const double floor_tol = std::ldexp(1.0, 16 - static_cast<int>(options.precision.max_bits));
  if (options.tol < floor_tol) {
    throw ToleranceUnreachable("tolerance below what " + std::to_string(options.precision.max_bits) + " bits permit");
  }
  for (unsigned bits = options.precision.start_bits;; bits = std::min(options.precision.max_bits, bits * 2)) {
    RealEnclosure total = log(RealEnclosure::from_integer(abs(f.leading()), bits));
    for (std::size_t i = 0; i < roots.size(); ++i) {
      total += roots[i].log_plus_sum(bits).scaled(BigRational(factors[i].multiplicity));
    }
    if (mpfr_sgn(total.lo().get()) < 0) {
      // M(f) >= 0 always.
      Mpfr zero(bits);
      total = RealEnclosure::hull(zero, total.hi(), bits);
    }
    if (mpfr_cmp_d(total.width().get(), options.tol) <= 0) return total;
    if (bits >= options.precision.max_bits) {
      throw ToleranceUnreachable("enclosure width " + total.width().to_string(3, MPFR_RNDU) +
                                 " exceeds tolerance at max precision");
    }
  }
}

MeasureResult mahler_measure_poly(const IntPolynomial& f, const MeasureOptions& options) {
  if (!(options.tol > 0)) throw InputError("tolerance must be positive");
  if (is_kronecker(f)) return {RealEnclosure(options.precision.start_bits), true};
  return {mahler_measure_numeric(f, options), false};
}

IntPolynomial surd_min_poly(const BigRational& q, unsigned long L) {
  if (q <= 0) throw InputError("surd_min_poly requires q > 0");
  if (L == 0) throw InputError("surd_min_poly requires L >= 1");
  BigInt num = q.get_num(), den = q.get_den();
  for (unsigned long d = L; d >= 2; --d) {
    if (L % d != 0) continue;
    BigInt rn, rd;
    const bool exact_num = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), d) != 0;
    const bool exact_den = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), d) != 0;
    if (exact_num && exact_den) {
      num = rn;
      den = rd;
      L /= d;
      break;
    }
  }
  std::vector<BigInt> c(L + 1, BigInt(0));
  c[0] = -num;
  c[L] = den;
  return IntPolynomial(std::move(c));
}

std::vector<MeasureResult> measure_batch_serial(const std::vector<IntPolynomial>& polys, const MeasureOptions& options) {
  std::vector<MeasureResult> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(mahler_measure_poly(p, options));
  return out;
}

std::vector<MeasureResult> measure_batch(const std::vector<IntPolynomial>& polys, const MeasureOptions& options) {
  std::vector<MeasureResult> out(polys.size());
  std::vector<std::exception_ptr> errors(polys.size());
  const long count = static_cast<long>(polys.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = mahler_measure_poly(polys[static_cast<std::size_t>(i)], options);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace mahler
