#pragma once

// Reduction drivers for the concrete linear forms in logarithms attached to
// the equation, with automatic precision escalation.

#include <optional>
#include <string>
#include <vector>

#include "klucas/algebraic.hpp"
#include "klucas/lattice.hpp"

namespace klucas {

// L1: log f + log(2a-1) + (m-1) log a - x log 3 - (n-1)x log 2      (n >= 3)
// L1s: log f + log(2a-1) + (m-1) log a - x log delta, delta in {2,3,6} (n <= 2)
// L2: ... - x log 3 - (n-2)x log 2 - log(2^x + 1 - 2^-x)           (fixed x)
// L3: log f + log(2a-1) + (m-1) log a - x log L_{n+1}                (fixed n)
// L4: (x-1)(log f + log(2a-1)) + ((n-1)x - (m-1)) log a
// L5: L4 + log(1 + a^-x - a^-2x)                                      (fixed x)
enum class ReductionForm { L1, L1s, L2, L3, L4, L5 };

std::string to_string(ReductionForm f);
ReductionForm parse_reduction_form(const std::string& s);

struct ReductionSpec {
  ReductionForm form = ReductionForm::L1;
  long k = 2;
  std::optional<long> x;      // L2, L5
  std::optional<long> n;      // L3
  std::optional<long> delta;  // L1s
  std::string C;              // decimal, e.g. "1e331"; empty selects the default
  std::string c3;             // decimal; empty selects the default
  std::string c4;             // "ln2", "ln1.5", "ln1.4", "lnalpha" or a decimal
  std::string abound;         // decimal coefficient bound; empty selects the default
  Precision prec = kDefaultPrecision;
  Precision prec_cap = Precision{1} << 15;
  // For k = 2, (2a-1) f(a) = a; merge the dependent columns into log a.
  bool merge_k2 = true;
};

// Fills empty fields with the constants used for each form.
ReductionSpec with_defaults(ReductionSpec spec);

// Default coefficient bound for the form, as a real number.
Interval default_abound(const ReductionSpec& spec, Precision prec);

struct ReductionResult {
  ReductionSpec spec;        // with defaults filled in
  Precision precision_used = 0;
  std::vector<std::string> eta_names;
  std::vector<std::string> eta_values;  // short decimal enclosures
  std::vector<BigInt> abounds;
  ReductionOutcome outcome;
  // Bound on the variable the form controls (x, m, n or min{0.7n, x}).
  std::string bounded_variable;
  std::optional<BigInt> variable_bound;
};

// Builds the instance at spec.prec, doubling the precision on floor
// ambiguity up to spec.prec_cap. Does not throw ConditionError.
ReductionResult run_reduction(const ReductionSpec& spec);

// The instance at a fixed precision; throws FloorAmbiguityError from the builder.
ReductionInstance make_instance(const ReductionSpec& spec, const AlgebraicContext& ctx,
                                std::vector<std::string>* names = nullptr);

std::string to_json(const ReductionSpec& spec);
ReductionSpec spec_from_json(const std::string& text);
std::string to_json(const ReductionResult& result);

}  // namespace klucas
