#pragma once

#include <mpfr.h>

#include <random>
#include <string>

#include "mahler/mpfr_real.hpp"

namespace testing_support {

// True when `decimal` lies within `slack` of the enclosure.
inline bool near_decimal(const mahler::RealEnclosure& e, const std::string& decimal, double slack = 1e-30) {
  mpfr_t d, lo, hi;
  mpfr_inits2(256, d, lo, hi, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_str(d, decimal.c_str(), 10, MPFR_RNDN);
  mpfr_sub_d(lo, e.lo().get(), slack, MPFR_RNDD);
  mpfr_add_d(hi, e.hi().get(), slack, MPFR_RNDU);
  const bool ok = mpfr_cmp(lo, d) <= 0 && mpfr_cmp(d, hi) <= 0;
  mpfr_clears(d, lo, hi, static_cast<mpfr_ptr>(nullptr));
  return ok;
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline long uniform(std::mt19937_64& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

}  // namespace testing_support
