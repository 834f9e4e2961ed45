#pragma once

// Certified continued fractions and the two-logarithm minima used to rule
// out small exponents.

#include <limits>
#include <utility>
#include <vector>

#include "klucas/numeric.hpp"

namespace klucas {

struct CFExpansion {
  std::vector<BigInt> quotients;
  // (p_i, q_i) for i = 0 .. quotients.size() - 1.
  std::vector<std::pair<BigInt, BigInt>> convergents;
};

// Partial quotients shared by every real in v. Throws PrecisionError (with
// the number of certified quotients in the message) when fewer than count
// can be certified.
CFExpansion cf_expand(const Interval& v, std::size_t count);
// As many certified quotients as v determines, at most max_count.
CFExpansion cf_expand_prefix(const Interval& v, std::size_t max_count);

Interval log3_over_log2(Precision prec);

// Coefficient c = 1 / (a_max + 2) with |v - p/d| > c / d^2 for all d <= denom_bound,
// a_max taken over the computed quotients. DomainError if q_N <= denom_bound.
Rational legendre_gap(const CFExpansion& cf, const BigInt& denom_bound);

struct TwoLogMin {
  long x = 2;
  BigInt z;
  Interval value;  // |(x - 1) log 3 - z log 2|
};

// Minimum of |(x - 1) log 3 - z log 2| over integers z.
TwoLogMin min_two_log_form(long x, Precision prec = kDefaultPrecision);

enum class SmallXVariant { NAtLeast3, N1, N2 };

// rhs = coef / 2^{rate k} + delta(x).
struct SmallXRegime {
  Rational coef{8};
  Rational rate{18, 25};  // 0.72
};

struct RefutationRow {
  long x = 2;
  BigInt z;
  Interval min_value;
  Interval rhs;
  bool refuted = false;  // min_value certainly exceeds rhs
};

// delta(x) for the variant: (2^x-1)/2^{2x}, 2(2^x-1)/3^x or (3^x-1)/6^x.
Rational small_x_delta(SmallXVariant variant, long x);

// k_threshold = +infinity evaluates the limit where the 2^{-rate k} term vanishes.
std::vector<RefutationRow> small_x_refutation(double k_threshold, SmallXVariant variant,
                                              const SmallXRegime& regime = {}, long x_lo = 2,
                                              long x_hi = 10, Precision prec = kDefaultPrecision);

}  // namespace klucas
