#pragma once

#include <string>
#include <vector>

#include "mahler/exact_arith.hpp"

namespace mahler {

// Integer polynomial, coefficients stored constant term first.
class IntPolynomial {
 public:
  explicit IntPolynomial(std::vector<BigInt> coefficients);
  IntPolynomial(std::initializer_list<long> coefficients);

  // Accepts "x^10+x^9-x^7+...+1", "3*x^2 - 2x + 5" and "[1,1,0,-1]" (constant first).
  static IntPolynomial parse(const std::string& text);

  const std::vector<BigInt>& coefficients() const { return coefficients_; }
  std::size_t degree() const { return coefficients_.size() - 1; }
  const BigInt& leading() const { return coefficients_.back(); }
  const BigInt& constant() const { return coefficients_.front(); }

  IntPolynomial reversed() const;
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  std::string to_string() const;       // ASCII form
  std::string to_list_string() const;  // "[c0,c1,...]"

 private:
  std::vector<BigInt> coefficients_;
};

struct MeasureResult {
  RealEnclosure value;
  bool is_exact_zero = false;
};

struct MeasureOptions {
  double tol = 1e-12;
  PrecisionPolicy precision{};
};

// n-th cyclotomic polynomial.
IntPolynomial cyclotomic(unsigned n);

// True iff f = +-x^k times a product of cyclotomic polynomials, decided by exact division.
bool is_kronecker(const IntPolynomial& f);

// log|a| + sum log+|root|; Kronecker polynomials short-circuit to exactly [0, 0].
MeasureResult mahler_measure_poly(const IntPolynomial& f, const MeasureOptions& options = {});

// Root-based certified enclosure without the Kronecker short-circuit.
RealEnclosure mahler_measure_numeric(const IntPolynomial& f, const MeasureOptions& options = {});

// Minimal polynomial of the positive real L-th root of q > 0, after reducing
// (q, L) so that x^L - q is irreducible.
IntPolynomial surd_min_poly(const BigRational& q, unsigned long L);

// Data-parallel kernel: measures of many polynomials (OpenMP), and the serial reference.
std::vector<MeasureResult> measure_batch(const std::vector<IntPolynomial>& polys, const MeasureOptions& options = {});
std::vector<MeasureResult> measure_batch_serial(const std::vector<IntPolynomial>& polys,
                                                const MeasureOptions& options = {});

}  // namespace mahler
