#include "mahler/exact_arith.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace mahler {

BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InputError("zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

BigRational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ParseError("empty rational");
  auto check_int = [&](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i >= part.size()) throw ParseError("malformed rational: " + text);
    for (; i < part.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) throw ParseError("malformed rational: " + text);
    }
  };
  auto to_int = [](std::string part) {
    if (!part.empty() && part[0] == '+') part.erase(0, 1);
    return BigInt(part);
  };
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    check_int(num);
    check_int(den);
    return make_rational(to_int(num), to_int(den));
  }
  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    // Decimal literal: exact conversion of the written digits.
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    if (frac.empty()) throw ParseError("malformed decimal: " + text);
    check_int(whole);
    check_int(frac);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    BigInt num = BigInt(whole) * scale + BigInt(frac);
    if (negative) num = -num;
    return make_rational(num, scale);
  }
  check_int(s);
  return BigRational(to_int(s));
}

std::string to_string(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

constexpr unsigned kTrialLimit = 1000000;

const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<unsigned> out;
    for (unsigned i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Brent's variant of Pollard rho; n is odd, composite and has no small factor.
BigInt pollard_brent(const BigInt& n) {
  for (unsigned long c = 1;; ++c) {
    BigInt y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto step = [&](const BigInt& v) {
      BigInt t = v * v + c;
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      return t;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = step(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          BigInt d = abs(x - y);
          q = (q * d) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        BigInt d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(const BigInt& n, std::map<BigInt, unsigned long>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  BigInt d = pollard_brent(n);
  split_large(d, out);
  split_large(n / d, out);
}

}  // namespace

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  // BPSW plus Miller-Rabin rounds; deterministic for n < 2^64.
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

std::vector<PrimePower> factor_integer(const BigInt& n) {
  if (n < 1) throw InputError("factor_integer requires n >= 1");
  std::vector<PrimePower> out;
  BigInt m = n;
  for (unsigned p : small_primes()) {
    if (BigInt(p) * p > m) break;
    unsigned long e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) out.push_back({BigInt(p), e});
  }
  if (m == 1) return out;
  const BigInt limit = BigInt(kTrialLimit) * kTrialLimit;
  if (m < limit) {
    out.push_back({m, 1});
    return out;
  }
  std::map<BigInt, unsigned long> large;
  split_large(m, large);
  for (const auto& [p, e] : large) out.push_back({p, e});
  std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return out;
}

void PrecisionPolicy::validate() const {
  if (start_bits < 2 || start_bits > max_bits) throw InputError("precision policy needs 2 <= start_bits <= max_bits");
  if (!(tie_eps > 0)) throw InputError("tie_eps must be positive");
}

LogValue LogValue::log_of(const BigInt& prime, const BigRational& coefficient) {
  LogValue v;
  v.add_term(prime, coefficient);
  return v;
}

void LogValue::add_term(const BigInt& prime, const BigRational& raw) {
  BigRational coefficient = raw;
  coefficient.canonicalize();
  if (coefficient == 0) return;
  auto it = terms_.find(prime);
  if (it == terms_.end()) {
    if (coefficient < 0) throw InputError("LogValue coefficients must be nonnegative");
    terms_.emplace(prime, coefficient);
    return;
  }
  it->second += coefficient;
  if (it->second < 0) throw InputError("LogValue coefficients must be nonnegative");
  if (it->second == 0) terms_.erase(it);
}

LogValue& LogValue::operator+=(const LogValue& other) {
  for (const auto& [p, c] : other.terms_) add_term(p, c);
  return *this;
}

LogValue LogValue::scaled(const BigRational& factor) const {
  if (factor < 0) throw InputError("LogValue scale factor must be nonnegative");
  LogValue out;
  if (factor == 0) return out;
  for (const auto& [p, c] : terms_) out.terms_.emplace(p, c * factor);
  return out;
}

RealEnclosure log_enclosure(const BigInt& n, unsigned bits) {
  thread_local std::map<std::pair<BigInt, unsigned>, RealEnclosure> cache;
  auto key = std::make_pair(n, bits);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const mpfr_prec_t exact_bits = std::max<mpfr_prec_t>(bits, static_cast<mpfr_prec_t>(mpz_sizeinbase(n.get_mpz_t(), 2)) + 1);
  Mpfr arg(exact_bits);
  mpfr_set_z(arg.get(), n.get_mpz_t(), MPFR_RNDN);
  Mpfr lo(bits), hi(bits);
  mpfr_log(lo.get(), arg.get(), MPFR_RNDD);
  mpfr_log(hi.get(), arg.get(), MPFR_RNDU);
  RealEnclosure r = RealEnclosure::hull(lo, hi, bits);
  if (cache.size() > 4096) cache.clear();
  cache.emplace(std::move(key), r);
  return r;
}

RealEnclosure LogValue::eval(unsigned bits) const {
  if (terms_.empty()) return RealEnclosure(bits);
  // Guard bits so the absolute width stays below 2^(3-bits)(1+n) at any magnitude.
  double magnitude = 1.0;
  for (const auto& [p, c] : terms_) {
    magnitude += std::fabs(c.get_d()) * static_cast<double>(mpz_sizeinbase(p.get_mpz_t(), 2));
  }
  const unsigned guard = 8 + static_cast<unsigned>(std::ceil(std::log2(magnitude + terms_.size())));
  const unsigned work = bits + guard;
  RealEnclosure sum(work);
  for (const auto& [p, c] : terms_) {
    RealEnclosure term = log_enclosure(p, work);
    if (c != 1) term = term * RealEnclosure::from_rational(c, work);
    sum += term;
  }
  return sum;
}

RealEnclosure logvalue_eval(const LogValue& v, unsigned bits) { return v.eval(bits); }

std::string LogValue::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    if (c != 1) out << mahler::to_string(c) << "*";
    out << "log(" << p.get_str() << ")";
  }
  return out.str();
}

LazyReal::LazyReal() : evaluator_([](unsigned bits) { return RealEnclosure(bits); }) {}

LazyReal LazyReal::constant(const BigRational& q) {
  return LazyReal([q](unsigned bits) { return RealEnclosure::from_rational(q, bits); });
}

LazyReal LazyReal::from(const LogValue& v) {
  return LazyReal([v](unsigned bits) { return v.eval(bits); });
}

const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Greater: return "Greater";
    case Ordering::Tie: return "Tie";
  }
  return "?";
}

Ordering reverse(Ordering o) {
  if (o == Ordering::Less) return Ordering::Greater;
  if (o == Ordering::Greater) return Ordering::Less;
  return Ordering::Tie;
}

Ordering refine_compare(const LazyReal& a, const LazyReal& b, const PrecisionPolicy& policy, unsigned* bits_used) {
  policy.validate();
  unsigned bits = policy.start_bits;
  for (;;) {
    const RealEnclosure ea = a.eval(bits);
    const RealEnclosure eb = b.eval(bits);
    if (bits_used) *bits_used = std::max(*bits_used, bits);
    if (ea.certainly_less(eb)) return Ordering::Less;
    if (ea.certainly_greater(eb)) return Ordering::Greater;
    if (bits >= policy.max_bits) {
      if (ea.width_below(policy.tie_eps) && eb.width_below(policy.tie_eps)) return Ordering::Tie;
      throw PrecisionExhausted("enclosures " + ea.to_string() + " and " + eb.to_string() +
                               " still overlap at " + std::to_string(bits) + " bits");
    }
    bits = std::min(policy.max_bits, bits * 2);
  }
}

Ordering compare_logvalues(const LogValue& a, const LogValue& b, const PrecisionPolicy& policy) {
  if (a == b) return Ordering::Tie;
  unsigned bits = policy.start_bits;
  for (;;) {
    const RealEnclosure ea = a.eval(bits);
    const RealEnclosure eb = b.eval(bits);
    if (ea.certainly_less(eb)) return Ordering::Less;
    if (ea.certainly_greater(eb)) return Ordering::Greater;
    if (bits >= (1u << 20)) throw PrecisionExhausted("distinct log values not separated: " + a.to_string() + " vs " + b.to_string());
    bits *= 2;
  }
}

const LogValue& max_logvalue(const LogValue& a, const LogValue& b) {
  return compare_logvalues(a, b) == Ordering::Less ? b : a;
}

}  // namespace mahler
