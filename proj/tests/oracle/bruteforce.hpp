#pragma once

// Independent reference for M_x at denominator bound 1. Shares no code with
// the library: terms are coprime integer pairs a/b held in machine integers,
// values are log max(a, b), and the optimum is found by shortest paths over
// the lattice of partial products rather than by branch and bound.

#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

struct Term {
  std::int64_t num = 1, den = 1;  // coprime, positive
  std::string str() const;
};

struct Answer {
  double value = 0;           // long-double search, rounded
  std::vector<Term> witness;  // terms in path order
  std::size_t term_bound = 0;
  bool found = true;
};

// x is num/den, or infinite. For x = inf the term count is at most `cap`.
Answer brute_force(std::int64_t target, std::int64_t x_num, std::int64_t x_den, bool infinite, std::size_t cap = 8);

// sum(log max(a,b)^x)^(1/x), or the max for x = inf, evaluated with MPFR at
// `bits` and returned as decimal with 40 significant digits.
std::string witness_value(const std::vector<Term>& witness, std::int64_t x_num, std::int64_t x_den, bool infinite,
                          unsigned bits = 256);

}  // namespace oracle
