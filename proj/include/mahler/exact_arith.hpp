#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mahler/errors.hpp"
#include "mahler/mpfr_real.hpp"

namespace mahler {

using BigInt = mpz_class;
using BigRational = mpq_class;

// Canonical rational from numerator/denominator; throws InputError on a zero denominator.
BigRational make_rational(const BigInt& num, const BigInt& den);
BigRational parse_rational(const std::string& text);
std::string to_string(const BigRational& q);

struct PrimePower {
  BigInt prime;
  unsigned long exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Prime factorization with strictly ascending primes; 1 maps to {}.
std::vector<PrimePower> factor_integer(const BigInt& n);
bool is_prime(const BigInt& n);

struct PrecisionPolicy {
  unsigned start_bits = 128;
  unsigned max_bits = 1024;
  double tie_eps = 0x1p-64;

  void validate() const;
};

// A formal combination sum c_p * log p with c_p > 0 rational, primes ascending.
class LogValue {
 public:
  LogValue() = default;
  static LogValue log_of(const BigInt& prime, const BigRational& coefficient = 1);

  const std::map<BigInt, BigRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Adds coefficient * log prime; coefficient must keep the entry nonnegative.
  void add_term(const BigInt& prime, const BigRational& coefficient);
  LogValue& operator+=(const LogValue& other);
  friend LogValue operator+(LogValue a, const LogValue& b) { return a += b; }
  LogValue scaled(const BigRational& factor) const;

  RealEnclosure eval(unsigned bits) const;
  std::string to_string() const;

  friend bool operator==(const LogValue&, const LogValue&) = default;

 private:
  std::map<BigInt, BigRational> terms_;
};

RealEnclosure logvalue_eval(const LogValue& v, unsigned bits);
// Enclosure of log p for a prime (or any integer >= 1), cached per thread.
RealEnclosure log_enclosure(const BigInt& n, unsigned bits);

// A real number available as an enclosure at any requested precision.
class LazyReal {
 public:
  using Evaluator = std::function<RealEnclosure(unsigned)>;

  LazyReal();
  explicit LazyReal(Evaluator evaluator) : evaluator_(std::move(evaluator)) {}
  static LazyReal constant(const BigRational& q);
  static LazyReal from(const LogValue& v);

  RealEnclosure eval(unsigned bits) const { return evaluator_(bits); }

 private:
  Evaluator evaluator_;
};

enum class Ordering { Less, Greater, Tie };

const char* to_string(Ordering o);
Ordering reverse(Ordering o);

// Certified comparison by adaptive refinement from policy.start_bits up to
// policy.max_bits. Throws PrecisionExhausted when the enclosures still overlap
// at max_bits while one of them is at least tie_eps wide. The optional out
// parameter receives the highest precision evaluated.
Ordering refine_compare(const LazyReal& a, const LazyReal& b, const PrecisionPolicy& policy,
                        unsigned* bits_used = nullptr);

// Exact comparison of formal log values. Distinct forms are distinct reals
// (logs of primes are linearly independent over Q), so only equal forms tie.
Ordering compare_logvalues(const LogValue& a, const LogValue& b, const PrecisionPolicy& policy = {});

const LogValue& max_logvalue(const LogValue& a, const LogValue& b);

}  // namespace mahler
