#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace mahler {

// Owning wrapper around an mpfr_t. Copies keep the source precision.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec = 128);
  Mpfr(const Mpfr& other);
  Mpfr(Mpfr&& other) noexcept;
  Mpfr& operator=(const Mpfr& other);
  Mpfr& operator=(Mpfr&& other) noexcept;
  ~Mpfr();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(value_, rnd); }
  // Decimal rendering with `digits` significant digits, rounded in `rnd`.
  std::string to_string(int digits, mpfr_rnd_t rnd) const;

 private:
  mpfr_t value_;
};

// A closed real interval [lo, hi] with MPFR endpoints. Every operation rounds
// its lower endpoint toward -inf and its upper endpoint toward +inf, so the
// represented real stays inside the interval.
class RealEnclosure {
 public:
  explicit RealEnclosure(unsigned precision_bits = 128);

  static RealEnclosure point(long value, unsigned bits);
  static RealEnclosure from_integer(const mpz_class& value, unsigned bits);
  static RealEnclosure from_rational(const mpq_class& value, unsigned bits);
  static RealEnclosure hull(const Mpfr& lo, const Mpfr& hi, unsigned bits);
  static RealEnclosure positive_infinity(unsigned bits);

  const Mpfr& lo() const { return lo_; }
  const Mpfr& hi() const { return hi_; }
  unsigned precision_bits() const { return bits_; }

  bool is_exact_zero() const;
  bool contains(double value) const;
  bool contains(const RealEnclosure& inner) const;
  bool overlaps(const RealEnclosure& other) const;
  bool certainly_less(const RealEnclosure& other) const;  // hi < other.lo
  bool certainly_greater(const RealEnclosure& other) const;
  bool certainly_positive() const;
  // Upper bound of hi - lo.
  Mpfr width() const;
  bool width_below(double bound) const;
  double lo_double() const { return lo_.to_double(MPFR_RNDD); }
  double hi_double() const { return hi_.to_double(MPFR_RNDU); }
  double mid_double() const;

  RealEnclosure operator-() const;
  friend RealEnclosure operator+(const RealEnclosure& a, const RealEnclosure& b);
  friend RealEnclosure operator-(const RealEnclosure& a, const RealEnclosure& b);
  friend RealEnclosure operator*(const RealEnclosure& a, const RealEnclosure& b);
  friend RealEnclosure operator/(const RealEnclosure& a, const RealEnclosure& b);
  RealEnclosure& operator+=(const RealEnclosure& other);

  RealEnclosure scaled(const mpq_class& factor) const;

  friend RealEnclosure log(const RealEnclosure& a);
  friend RealEnclosure exp(const RealEnclosure& a);
  friend RealEnclosure sqrt(const RealEnclosure& a);
  // a^e for a >= 0; a containing 0 is allowed when e > 0.
  friend RealEnclosure pow(const RealEnclosure& a, const RealEnclosure& e);
  // max(a, 0) through log: log+ of a nonnegative modulus enclosure.
  friend RealEnclosure log_plus(const RealEnclosure& a);
  friend RealEnclosure max(const RealEnclosure& a, const RealEnclosure& b);
  friend RealEnclosure min(const RealEnclosure& a, const RealEnclosure& b);

  std::string to_string(int digits = 12) const;

 private:
  Mpfr lo_;
  Mpfr hi_;
  unsigned bits_;
};

}  // namespace mahler
