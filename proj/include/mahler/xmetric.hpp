#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mahler/decomposition_search.hpp"
#include "mahler/radq.hpp"

namespace mahler {

enum class Certificate { Certified, CappedUpperBound, Uncertified };
const char* to_string(Certificate c);  // "certified", "capped_upper_bound", "uncertified"

struct Factorization {
  std::vector<ExponentVector> terms;

  ExponentVector product() const;
  std::vector<std::string> term_strings() const;
};

struct SearchStats {
  unsigned long long nodes = 0;
  unsigned precision_bits = 0;
  std::size_t candidates = 0;
  std::size_t term_bound = 0;
};

struct CertifiedResult {
  RealEnclosure value;
  LazyReal lazy_value;
  std::optional<std::string> exact_form;
  Factorization witness;
  Certificate certificate = Certificate::Certified;
  SearchStats stats;
};

struct SearchConfig {
  unsigned long denominator_bound = 1;
  std::optional<std::size_t> max_terms_override;
  PrecisionPolicy precision;
  std::size_t infinity_term_cap = 8;
  // Replaces C = log 2 in the term-count bound; results are flagged uncertified.
  std::optional<BigRational> c_override;
};

// Minimum of the x-combined M-bar over factorizations of `target` into
// nonzero terms with exponent denominators dividing D, supported on the
// primes of the target.
CertifiedResult mx_search(const ExponentVector& target, const XParameter& x, const SearchConfig& config = {});
// Same search on the single-threaded reference kernel.
CertifiedResult mx_search_serial(const ExponentVector& target, const XParameter& x, const SearchConfig& config = {});

struct Threshold {
  bool infinite = false;
  RealEnclosure value;
};

// log 2 / (log M-bar(target) - log C); infinite when M-bar(target) = C.
Threshold smallp_threshold(const ExponentVector& target, unsigned bits = 128);

struct CurvePoint {
  BigRational x;
  RealEnclosure value;
  Factorization witness;
  Certificate certificate = Certificate::Certified;
  std::optional<std::string> exact_form;
  unsigned long long nodes = 0;
};

// "a:b:step" with rational fields; inclusive of b when it lies on the grid.
std::vector<BigRational> parse_grid(const std::string& text);
std::vector<BigRational> default_grid();  // 1/4 : 4 : 1/20

std::vector<CurvePoint> mx_curve(const ExponentVector& target, const std::vector<BigRational>& grid,
                                 const SearchConfig& config = {});
std::vector<CurvePoint> mx_curve_serial(const ExponentVector& target, const std::vector<BigRational>& grid,
                                        const SearchConfig& config = {});

struct ContinuityPair {
  BigRational x_bar, y;
  RealEnclosure lower;   // (y - x_bar) * min D over [x_bar, x_bar + 1]
  RealEnclosure middle;  // log M_y - log M_x_bar
  bool pass = true;
};

struct ContinuityReport {
  std::vector<ContinuityPair> pairs;
  std::vector<std::size_t> monotonicity_violations;  // index i: value(i+1) > value(i)
  bool passed() const;
};

ContinuityReport continuity_check(const std::vector<CurvePoint>& curve, const ExponentVector& target);

struct M0Report {
  bool trivial = false;  // identity target
  bool threshold_infinite = false;
  BigRational x;
  CertifiedResult result;
  Ordering ordering = Ordering::Tie;
  bool passed() const { return ordering == Ordering::Tie; }
};

M0Report m0_check(const ExponentVector& target, const SearchConfig& config = {});

// h_x: the Weil height for x <= 1, zero for x > 1.
LazyReal weil_hx(const ExponentVector& e, const XParameter& x);
// N^(1/x - 1) * h(e) for finite x > 1.
RealEnclosure weil_hx_upper(const ExponentVector& e, const XParameter& x, unsigned long N, unsigned bits = 128);

// Exponent vector sum_i (coords_i / D) e_{primes_i}.
ExponentVector ev_from_coords(const std::vector<BigInt>& primes, const Coord& coords, unsigned long D);
// Pruning data for the lattice (1/D) Z^primes: a remainder needs a term of
// value >= log p for every p it touches, and its half-heights are subadditive.
RemainderBoundFn radq_remainder_bound(const std::vector<BigInt>& primes, unsigned long D);

// Distinct values in ascending order and the class of each input.
struct ValueRanking {
  std::vector<LogValue> distinct;
  std::vector<std::size_t> rank;
};
ValueRanking rank_logvalues(const std::vector<LogValue>& values);

// Membership of v in the Z-span of `generators` (exact echelon form).
bool in_integer_span(const std::vector<Coord>& generators, const Coord& v);

}  // namespace mahler
