#pragma once

// Relative-error estimates for L_n and its powers, checked against exact values.

#include <string>
#include <vector>

#include "klucas/algebraic.hpp"

namespace klucas {

struct RelativeErrorReport {
  Interval nominal;   // main term
  Interval actual;    // enclosure of the exact value
  Interval rel_err;   // actual / nominal - 1
  Interval bound;
  bool within = false;  // |rel_err| <= bound, certified
};

// L_n = 3 * 2^{n-2} (1 + zeta) with |zeta| < 4/2^{(1-c)k} for c <= 0.693 and
// 8.1/2^{(1-c)k} otherwise. Requires 2 <= n < 2^{ck}, 0 < c < 1.
RelativeErrorReport fay_estimate(long k, long n, double c, Precision prec = kDefaultPrecision);

// (L_n)^x = (f(a)(2a-1))^x a^{(n-1)x} (1 + eta) with |eta| < 1.5x e^{1.5x/a^{n-1}} / a^{n-1}.
// Raises the precision when ctx is too coarse; PrecisionError past 2^16 bits.
RelativeErrorReport power_expansion_alpha(long k, long n, long x, const AlgebraicContext& ctx);

// (L_{n+i})^x = 3^x 2^{(n+i-2)x} (1 + xi) with |xi| < 2/2^{(1-2c)k}. Requires
// i in {-1, 0, 1}, n + i >= k + 2, max{n + i, 16x} < 2^{ck} and 0 < c < 1/4.
RelativeErrorReport power_expansion_binary(long k, long n, long i, long x, double c,
                                           Precision prec = kDefaultPrecision);

struct EstimateGrid {
  long k_lo = 8;
  long k_hi = 30;
  long x_lo = 1;
  long x_hi = 8;
  long n_max = 300;
  std::vector<double> fay_c{0.25, 0.39, 0.45, 0.693, 0.72, 0.9};
  std::vector<double> binary_c{0.1, 0.2, 0.24};
  Precision prec = kDefaultPrecision;
};

struct GridSummary {
  std::string lemma;
  std::size_t checked = 0;
  std::size_t within = 0;
  std::vector<std::string> failures;  // "k=..,n=..,..." for each report with within = false

  bool all_within() const { return checked > 0 && checked == within; }
};

GridSummary run_fay_grid(const EstimateGrid& g = {});
GridSummary run_alpha_grid(const EstimateGrid& g = {});
GridSummary run_binary_grid(const EstimateGrid& g = {});

}  // namespace klucas
