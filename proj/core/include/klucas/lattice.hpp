#pragma once

// Exact lattice reduction and the lattice-distance argument that turns a
// small linear form in logarithms into a bound on its coefficients.

#include <cstddef>
#include <optional>
#include <vector>

#include "klucas/numeric.hpp"

namespace klucas {

using IntVector = std::vector<BigInt>;

// Square lattice basis; cols[j] is the j-th basis vector.
struct LatticeBasis {
  std::size_t dim = 0;
  std::vector<IntVector> cols;

  static LatticeBasis from_columns(std::vector<IntVector> cols);
  static LatticeBasis identity(std::size_t dim);
};

struct GramSchmidtData {
  std::vector<Rational> bstar_norms_sq;
  // mu[i][j] for j < i; the rest is zero.
  std::vector<std::vector<Rational>> mu;
  std::vector<std::vector<Rational>> bstar;
};

// Throws DomainError for a singular basis.
GramSchmidtData gram_schmidt(const LatticeBasis& basis);

// Integral LLL with Lovasz parameter y in (1/4, 1).
LatticeBasis lll_reduce(const LatticeBasis& basis, const Rational& y = Rational(3, 4));

// Size condition |mu_ij| <= 1/2 and Lovasz condition with parameter y, checked exactly.
bool is_lll_reduced(const LatticeBasis& basis, const Rational& y = Rational(3, 4));

BigInt determinant(const LatticeBasis& basis);

// Exact solution z of B z = y.
std::vector<Rational> solve(const LatticeBasis& basis, const IntVector& y);

struct DistanceBound {
  Rational c1_sq;       // c2^{-1} sigma^2 ||b_1||^2
  Interval c1;          // enclosure of sqrt(c1_sq)
  Rational c2;          // max_j ||b_1||^2 / ||b*_j||^2
  Rational sigma;
  Rational b1_norm_sq;
  bool y_in_lattice = false;
  std::optional<std::size_t> i0;  // index that defined sigma (0-based)
};

// Lower bound on the distance from y to the lattice (or on the shortest
// nonzero vector when y is in the lattice). sigma is taken at the largest
// index whose coordinate z_i is not an integer.
DistanceBound distance_lower_bound(const LatticeBasis& reduced, const GramSchmidtData& gs,
                                   const IntVector& y, Precision prec = kDefaultPrecision);

// |eta_0 + a_1 eta_1 + ... + a_n eta_n| <= c3 exp(-c4 H), |a_i| <= A_i.
struct ReductionInstance {
  BigInt C;
  std::vector<Interval> etas;
  std::optional<Interval> eta0;
  std::vector<BigInt> A;
  Interval c3;
  Interval c4;
};

struct ApproxLattice {
  LatticeBasis basis;
  IntVector y;
  IntVector floors;  // floor(C eta_i)
  BigInt floor_eta0 = 0;
};

// Identity rows above a last row of floor(C eta_i). Each floor must be
// certified by an enclosure of width < 1/4; FloorAmbiguityError otherwise.
ApproxLattice build_approx_lattice(const ReductionInstance& inst);

struct ReductionOutcome {
  std::size_t dim = 0;
  Interval c1;
  Rational c1_sq;
  Rational c2;
  Rational sigma;
  Rational b1_norm_sq;
  bool y_in_lattice = false;
  Rational S;      // sum_{i < n} A_i^2
  Rational T;      // (1 + sum A_i) / 2
  Rational T_eff;  // 1 + sum A_i: each floor may be off by up to 1
  bool condition_holds = false;  // c1^2 >= T_eff^2 + S
  bool condition_holds_printed_T = false;  // c1^2 >= T^2 + S
  std::optional<Interval> H_value;
  std::optional<BigInt> H_bound;
  // The exceptional solution a_1 = ... = a_{n-1} = 0, a_n = -floor(C eta_0)/floor(C eta_n),
  // present when it is an admissible integer vector.
  std::optional<BigInt> degenerate_a_n;
  IntVector reduced_b1;
};

// Build, reduce, bound. Never throws ConditionError; check condition_holds.
ReductionOutcome analyze_reduction(const ReductionInstance& inst, Precision prec);
// Same, but throws ConditionError when the gate fails.
ReductionOutcome reduce_and_bound(const ReductionInstance& inst, Precision prec);

}  // namespace klucas
