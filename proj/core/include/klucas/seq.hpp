#pragma once

// k-generalized Lucas numbers: L_n = L_{n-1} + ... + L_{n-k} for n >= 2 with
// L_0 = 2, L_1 = 1 and L_{2-k} = ... = L_{-1} = 0, except L_{-1} = -1 when k = 2.

#include <optional>
#include <vector>

#include "klucas/numeric.hpp"

namespace klucas {

struct KIndex {
  long k = 2;
  long n = 0;
};

struct EquationInstance {
  long k = 2;
  long n = 0;
  long m = 0;
  long x = 0;
};

// Throws DomainError unless k >= 2 and n >= 2 - k (n >= -1 when k = 2).
void validate(const KIndex& idx);
void validate(const EquationInstance& inst);

BigInt lucas(const KIndex& idx);
inline BigInt lucas(long k, long n) { return lucas(KIndex{k, n}); }

// L_0 .. L_{n_max}.
std::vector<BigInt> lucas_window(long k, long n_max);

// (L_n)^x with 0^0 = 1.
BigInt power_term(const KIndex& idx, long x);
// Same, from a precomputed term.
BigInt power_of(const BigInt& base, long x);

// (L_{n+1})^x + (L_n)^x - (L_{n-1})^x.
BigInt lhs(const EquationInstance& inst);

// 3 * 2^(n-2) for 2 <= n <= k and 3 * 2^(k-1) - 2 for n = k + 1.
std::optional<BigInt> closed_form_check(const KIndex& idx);

}  // namespace klucas
