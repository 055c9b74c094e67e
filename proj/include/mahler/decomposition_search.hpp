#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "mahler/exact_arith.hpp"

namespace mahler {

// x in (0, inf], the exponent of the L^x combiner.
struct XParameter {
  bool infinite = false;
  BigRational value{1};

  static XParameter finite(const BigRational& x);
  static XParameter infinity();
  // Rational literal, or "inf" / "infinity".
  static XParameter parse(const std::string& text);

  std::string to_string() const;
  friend bool operator==(const XParameter&, const XParameter&) = default;
};

// v^x for finite x (v >= 0).
RealEnclosure power_x(const RealEnclosure& v, const XParameter& x);

// (sum v_i^x)^(1/x), or max for x = inf; the empty list combines to 0.
LazyReal combine_x(std::vector<LazyReal> values, const XParameter& x);

// ---------------------------------------------------------------------------
// Decomposition search over an integer lattice: write `target` as a sum of
// candidate vectors minimizing the combined value. Shared by the Rad(Q)
// engine and the generic group framework.

using Coord = std::vector<long>;

struct CoordHash {
  std::size_t operator()(const Coord& c) const noexcept;
};

// Lower-bound data for writing a remainder as a sum of candidates: some term
// has value >= min_term, and the values sum to >= mass.
struct RemainderBound {
  RealEnclosure min_term;
  RealEnclosure mass;
};
using RemainderBoundFn = std::function<RemainderBound(const Coord&, unsigned bits)>;

struct LatticeProblem {
  Coord target;
  std::vector<Coord> terms;          // canonical order: value, then tie-break
  std::vector<std::size_t> rank;     // value class of each term, non-decreasing
  std::vector<LazyReal> rank_value;  // strictly increasing value per class
  std::vector<LogValue> rank_exact;  // optional exact value per class
  XParameter x;
  std::size_t max_terms = 1;
  PrecisionPolicy precision;
  RemainderBoundFn remainder_bound;  // optional
};

struct LatticeSolution {
  bool found = false;
  std::vector<std::size_t> indices;  // non-decreasing term indices
  unsigned long long nodes = 0;
  unsigned bits_used = 0;
};

// Exact minimum with canonical tie-break (value, fewer terms, lexicographic
// index list). Root branches run under OpenMP; the result and node count do
// not depend on the thread count.
LatticeSolution solve_lattice(const LatticeProblem& problem);
// Single-threaded reference with one shared incumbent.
LatticeSolution solve_lattice_serial(const LatticeProblem& problem);

// Combined value of a term multiset.
LazyReal lattice_value(const LatticeProblem& problem, const std::vector<std::size_t>& indices);

}  // namespace mahler
