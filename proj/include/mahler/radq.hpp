#pragma once

#include <map>
#include <string>

#include "mahler/exact_arith.hpp"

namespace mahler {

// A torsion class of Rad(Q): sparse prime -> nonzero rational exponent.
// The empty vector is the identity.
class ExponentVector {
 public:
  using Entries = std::map<BigInt, BigRational>;

  ExponentVector() = default;
  // Zero exponents are dropped; every key must be prime.
  explicit ExponentVector(Entries entries);
  static ExponentVector prime_power(const BigInt& p, const BigRational& exponent);

  // "2^2 * 3^1", "2^(3/2)", "3^-1", "12", "2/3", "1"; composite bases are factored.
  static ExponentVector parse(const std::string& text);

  const Entries& entries() const { return entries_; }
  bool is_identity() const { return entries_.empty(); }
  BigRational exponent(const BigInt& p) const;

  ExponentVector operator-() const;
  friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b);
  friend ExponentVector operator-(const ExponentVector& a, const ExponentVector& b) { return a + (-b); }
  ExponentVector& operator+=(const ExponentVector& other) { return *this = *this + other; }
  ExponentVector scaled(const BigRational& factor) const;

  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;
  // Lexicographic order on the (prime, exponent) entry sequence.
  friend bool operator<(const ExponentVector& a, const ExponentVector& b) { return a.entries_ < b.entries_; }

  std::string to_string() const;

 private:
  Entries entries_;
};

// gamma^L = prod p^(a_p) with gcd(a, L) = 1.
struct SurdForm {
  std::map<BigInt, BigInt> a;
  unsigned long L = 1;
  friend bool operator==(const SurdForm&, const SurdForm&) = default;
};

ExponentVector ev_from_rational(const BigRational& q);
SurdForm ev_reduce(const ExponentVector& e);
LogValue mbar_ev(const ExponentVector& e);
LogValue weil_height_ev(const ExponentVector& e);
unsigned long min_degree_ev(const ExponentVector& e);
// C for the ambient field Q.
LogValue c_constant();

}  // namespace mahler
