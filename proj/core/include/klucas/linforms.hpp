#pragma once

// Lower bounds for linear forms in logarithms and the closed-form envelopes
// that bound the unknowns of the equation.

#include <optional>
#include <string>
#include <vector>

#include "klucas/algebraic.hpp"
#include "klucas/numeric.hpp"
#include "klucas/seq.hpp"

namespace klucas {

// Open interval (lo, hi) that must contain m: nx - 3 < m < (n + 3)x + 3.
struct MRange {
  long lo = 0;
  long hi = 0;
};
MRange m_range(long n, long x);

struct MatveevInput {
  long t = 1;
  long D = 1;
  Interval B;
  std::vector<Interval> A;
  // Which height rule produced each A_i.
  std::vector<std::string> provenance;
};

// -1.4 * 30^{t+3} * t^{4.5} * D^2 (1 + log D)(1 + log B) A_1 ... A_t.
Interval matveev_lower(const MatveevInput& inp);

struct LmnInput {
  long D = 1;
  Interval bprime;
  Interval logA1;
  Interval logA2;
};

// -24.34 D^4 (max{log b' + 0.14, 21/D, 1/2})^2 log A_1 log A_2.
Interval lmn_lower(const LmnInput& inp);

// If p / (log p)^r < T with T > (4r^2)^r, then p < 2^r T (log T)^r.
// Returns the ceiling of that bound; DomainError when T is too small.
BigInt guz_resolve(int r, const Interval& T);

struct EnvelopeBounds {
  long k = 2;
  std::optional<Interval> x_small_n;   // 3.1e14 k^5 (log k)^2 log m
  Interval m_small_n;                  // 6.3e32 k^10 (log k)^5
  std::optional<Interval> x_large_n;   // 2.6e15 n k^4 (log k)^3 log n
  Interval n_large_n;                  // 5.5e27 k^6 (log k)^6
  Interval x_large_n_k;                // 8.7e30 k^7 (log k)^8
  Interval m_large_n;                  // 5.6e44 k^10 (log k)^12
  bool m_small_n_below_2_028k = false;
  bool n_large_n_below_2_024k = false;
  bool m_large_n_below_2_039k = false;
};

EnvelopeBounds envelope_bounds(long k, std::optional<long> n, std::optional<Interval> m,
                               Precision prec = kDefaultPrecision);

// The Matveev data used for the first form when n >= 3, with the A-list
// (6k log k, 0.7, k log 3, k log 3) exactly as it enters the printed product.
MatveevInput gamma1_matveev_input(long k, const Interval& m, Precision prec = kDefaultPrecision);
// Upper bound for x implied by that Matveev bound and |Gamma_1| < 3/2^x.
Interval matveev_x_bound(long k, const Interval& m, Precision prec = kDefaultPrecision);

enum class FormId { G1, G1small, G2, G3, G4, G5 };
std::string to_string(FormId id);
FormId parse_form_id(const std::string& s);

enum class Tri { True, False, Unknown };
std::string to_string(Tri t);

struct LinearFormValue {
  FormId form_id = FormId::G1;
  Interval gamma_value;   // Gamma, from products of powers
  Interval lambda_value;  // Lambda, from the sum of logarithms
  Interval bound;         // the printed upper bound for |Gamma|
  Tri bound_holds = Tri::Unknown;
};

// Evaluates Gamma and Lambda for the instance; DomainError outside the
// regime where the form is defined.
LinearFormValue gamma_value(FormId id, const EquationInstance& inst, const AlgebraicContext& ctx);

}  // namespace klucas
