#include "mahler/mpfr_real.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace mahler {

Mpfr::Mpfr(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Mpfr::Mpfr(const Mpfr& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Mpfr::Mpfr(Mpfr&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Mpfr& Mpfr::operator=(const Mpfr& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Mpfr& Mpfr::operator=(Mpfr&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Mpfr::~Mpfr() { mpfr_clear(value_); }

std::string Mpfr::to_string(int digits, mpfr_rnd_t rnd) const {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*R*g", digits, rnd, value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

namespace {

unsigned joint_bits(const RealEnclosure& a, const RealEnclosure& b) {
  return std::max(a.precision_bits(), b.precision_bits());
}

}  // namespace

RealEnclosure::RealEnclosure(unsigned precision_bits)
    : lo_(precision_bits), hi_(precision_bits), bits_(precision_bits) {}

RealEnclosure RealEnclosure::point(long value, unsigned bits) {
  RealEnclosure r(bits);
  mpfr_set_si(r.lo_.get(), value, MPFR_RNDD);
  mpfr_set_si(r.hi_.get(), value, MPFR_RNDU);
  return r;
}

RealEnclosure RealEnclosure::from_integer(const mpz_class& value, unsigned bits) {
  RealEnclosure r(bits);
  mpfr_set_z(r.lo_.get(), value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_.get(), value.get_mpz_t(), MPFR_RNDU);
  return r;
}

RealEnclosure RealEnclosure::from_rational(const mpq_class& value, unsigned bits) {
  RealEnclosure r(bits);
  mpfr_set_q(r.lo_.get(), value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), value.get_mpq_t(), MPFR_RNDU);
  return r;
}

RealEnclosure RealEnclosure::hull(const Mpfr& lo, const Mpfr& hi, unsigned bits) {
  RealEnclosure r(bits);
  mpfr_set(r.lo_.get(), lo.get(), MPFR_RNDD);
  mpfr_set(r.hi_.get(), hi.get(), MPFR_RNDU);
  if (mpfr_greater_p(r.lo_.get(), r.hi_.get())) std::swap(r.lo_, r.hi_);
  return r;
}

RealEnclosure RealEnclosure::positive_infinity(unsigned bits) {
  RealEnclosure r(bits);
  mpfr_set_inf(r.lo_.get(), 1);
  mpfr_set_inf(r.hi_.get(), 1);
  return r;
}

bool RealEnclosure::is_exact_zero() const {
  return mpfr_zero_p(lo_.get()) && mpfr_zero_p(hi_.get());
}

bool RealEnclosure::contains(double value) const {
  return mpfr_cmp_d(lo_.get(), value) <= 0 && mpfr_cmp_d(hi_.get(), value) >= 0;
}

bool RealEnclosure::contains(const RealEnclosure& inner) const {
  return mpfr_lessequal_p(lo_.get(), inner.lo_.get()) &&
         mpfr_greaterequal_p(hi_.get(), inner.hi_.get());
}

bool RealEnclosure::overlaps(const RealEnclosure& other) const {
  return !certainly_less(other) && !certainly_greater(other);
}

bool RealEnclosure::certainly_less(const RealEnclosure& other) const {
  return mpfr_less_p(hi_.get(), other.lo_.get());
}

bool RealEnclosure::certainly_greater(const RealEnclosure& other) const {
  return mpfr_greater_p(lo_.get(), other.hi_.get());
}

bool RealEnclosure::certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }

Mpfr RealEnclosure::width() const {
  Mpfr w(bits_);
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

bool RealEnclosure::width_below(double bound) const {
  return mpfr_cmp_d(width().get(), bound) < 0;
}

double RealEnclosure::mid_double() const {
  Mpfr m(bits_ + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.to_double(MPFR_RNDN);
}

RealEnclosure RealEnclosure::operator-() const {
  RealEnclosure r(bits_);
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

RealEnclosure operator+(const RealEnclosure& a, const RealEnclosure& b) {
  RealEnclosure r(joint_bits(a, b));
  mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

RealEnclosure& RealEnclosure::operator+=(const RealEnclosure& other) {
  if (other.bits_ > bits_) {
    *this = *this + other;
    return *this;
  }
  mpfr_add(lo_.get(), lo_.get(), other.lo_.get(), MPFR_RNDD);
  mpfr_add(hi_.get(), hi_.get(), other.hi_.get(), MPFR_RNDU);
  return *this;
}

RealEnclosure operator-(const RealEnclosure& a, const RealEnclosure& b) {
  RealEnclosure r(joint_bits(a, b));
  mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return r;
}

RealEnclosure operator*(const RealEnclosure& a, const RealEnclosure& b) {
  const unsigned bits = joint_bits(a, b);
  RealEnclosure r(bits);
  Mpfr t(bits);
  const mpfr_srcptr as[2] = {a.lo_.get(), a.hi_.get()};
  const mpfr_srcptr bs[2] = {b.lo_.get(), b.hi_.get()};
  bool first = true;
  for (auto x : as) {
    for (auto y : bs) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

RealEnclosure operator/(const RealEnclosure& a, const RealEnclosure& b) {
  if (mpfr_sgn(b.lo_.get()) <= 0 && mpfr_sgn(b.hi_.get()) >= 0) {
    throw std::domain_error("interval division by an enclosure containing zero");
  }
  const unsigned bits = joint_bits(a, b);
  RealEnclosure inv(bits);
  mpfr_ui_div(inv.lo_.get(), 1, b.hi_.get(), MPFR_RNDD);
  mpfr_ui_div(inv.hi_.get(), 1, b.lo_.get(), MPFR_RNDU);
  return a * inv;
}

RealEnclosure RealEnclosure::scaled(const mpq_class& factor) const {
  return *this * RealEnclosure::from_rational(factor, bits_ + 8);
}

RealEnclosure log(const RealEnclosure& a) {
  if (mpfr_sgn(a.hi_.get()) <= 0) throw std::domain_error("log of a nonpositive enclosure");
  RealEnclosure r(a.bits_);
  if (mpfr_sgn(a.lo_.get()) <= 0) {
    mpfr_set_inf(r.lo_.get(), -1);
  } else {
    mpfr_log(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
  }
  mpfr_log(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
  return r;
}

RealEnclosure exp(const RealEnclosure& a) {
  RealEnclosure r(a.bits_);
  mpfr_exp(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
  mpfr_exp(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
  return r;
}

RealEnclosure sqrt(const RealEnclosure& a) {
  if (mpfr_sgn(a.hi_.get()) < 0) throw std::domain_error("sqrt of a negative enclosure");
  RealEnclosure r(a.bits_);
  if (mpfr_sgn(a.lo_.get()) <= 0) {
    mpfr_set_zero(r.lo_.get(), 1);
  } else {
    mpfr_sqrt(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
  }
  mpfr_sqrt(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
  return r;
}

RealEnclosure pow(const RealEnclosure& a, const RealEnclosure& e) {
  if (mpfr_sgn(a.lo_.get()) > 0) return exp(e * log(a));
  if (mpfr_sgn(e.lo_.get()) <= 0) throw std::domain_error("pow of an enclosure touching zero");
  const unsigned bits = joint_bits(a, e);
  RealEnclosure r(bits);
  if (mpfr_sgn(a.hi_.get()) > 0) {
    RealEnclosure top = RealEnclosure::hull(a.hi_, a.hi_, bits);
    RealEnclosure p = exp(e * log(top));
    r.hi_ = p.hi_;
  }
  return r;
}

RealEnclosure log_plus(const RealEnclosure& a) {
  RealEnclosure r(a.bits_);
  if (mpfr_cmp_ui(a.lo_.get(), 1) > 0) mpfr_log(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
  if (mpfr_cmp_ui(a.hi_.get(), 1) > 0) mpfr_log(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
  return r;
}

RealEnclosure max(const RealEnclosure& a, const RealEnclosure& b) {
  RealEnclosure r(joint_bits(a, b));
  mpfr_max(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

RealEnclosure min(const RealEnclosure& a, const RealEnclosure& b) {
  RealEnclosure r(joint_bits(a, b));
  mpfr_min(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_min(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return r;
}

std::string RealEnclosure::to_string(int digits) const {
  return "[" + lo_.to_string(digits, MPFR_RNDD) + ", " + hi_.to_string(digits, MPFR_RNDU) + "]";
}

}  // namespace mahler
