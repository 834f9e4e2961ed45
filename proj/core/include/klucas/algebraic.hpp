#pragma once

// Certified algebraic data attached to Psi_k(x) = x^k - x^{k-1} - ... - x - 1.

#include <vector>

#include "klucas/numeric.hpp"

namespace klucas {

// Extra bits carried on top of the requested precision.
inline constexpr Precision kGuardBits = 64;

struct AlgebraicContext {
  long k = 2;
  Precision prec = kDefaultPrecision;  // requested
  Precision working = kDefaultPrecision + kGuardBits;
  Interval alpha;
  // The k-1 non-dominant roots; empty for a dominant-only context.
  std::vector<ComplexBox> other_roots;
  bool dominant_only = false;
  Interval fk_alpha;
  Interval two_alpha_minus_1;
  Interval log_alpha;
  Interval log_fk;
  Interval log_2am1;
  Interval log2;
  Interval log3;
};

struct BinetError {
  Interval value;
  Precision precision = 0;  // precision of the context that certified it
};

// Coefficients of Psi_k from x^k down to x^0: [1, -1, ..., -1].
std::vector<long> char_poly(long k);

// Evaluates Psi_k on an interval or box.
Interval psi(long k, const Interval& x);
ComplexBox psi(long k, const ComplexBox& z);

// Certified enclosure of alpha(k) with width below 2^-prec.
Interval dominant_root(long k, Precision prec);

// Throws PrecisionError when the roots cannot be separated at this precision.
AlgebraicContext build_context(long k, Precision prec, bool dominant_only = false);
// Retries build_context with doubled precision until it succeeds or cap is exceeded.
AlgebraicContext build_context_escalating(long k, Precision prec, bool dominant_only = false,
                                          Precision cap = Precision{1} << 16);

// f_k(v) = (v - 1) / (2 + (k + 1)(v - 2)); DomainError if the denominator can vanish.
Interval fk_at(long k, const Interval& v);
ComplexBox fk_at(long k, const ComplexBox& v);

// e_k(n) = L_n - f_k(alpha)(2 alpha - 1) alpha^{n-1}, certified inside (-1.5, 1.5).
// Raises the precision internally when the supplied context is too coarse.
BinetError binet_error(long k, long n, const AlgebraicContext& ctx);

// All k conjugates: alpha first, then ctx.other_roots. Requires a full context.
std::vector<ComplexBox> all_roots(const AlgebraicContext& ctx);

// Product of (a * root + b) over all conjugates, as a certified integer.
BigInt norm_linear(const AlgebraicContext& ctx, long a, long b);
// N(2 alpha - 1), signed.
BigInt norm_2alpha_minus_1(const AlgebraicContext& ctx);
// N(f_k(alpha)) = N(alpha - 1) / N((k + 1) alpha - 2k), signed.
Rational norm_fk(const AlgebraicContext& ctx);
// (k - 1)^2 / (2^{k+1} k^k - (k + 1)^{k+1}).
Rational norm_fk_closed_form(long k);
// Encloses the product of |root| over all conjugates.
Interval abs_norm_alpha(const AlgebraicContext& ctx);

// Primitive integer minimal polynomial of f_k(alpha), highest degree first,
// with positive leading coefficient.
std::vector<BigInt> minpoly_fk(long k);
// 3 log k.
Interval height_fk_bound(long k, Precision prec);
// Absolute logarithmic height of f_k(alpha) from its conjugates.
Interval height_fk_exact(const AlgebraicContext& ctx);

}  // namespace klucas
