#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "klucas/errors.hpp"
#include "klucas/lattice.hpp"
#include "oracles.hpp"

using namespace klucas;

namespace {

LatticeBasis random_basis(std::mt19937_64& rng, std::size_t dim) {
  return LatticeBasis::from_columns(oracle::random_nonsingular(rng, dim));
}

}  // namespace

TEST(Lll, TextbookExample) {
  const LatticeBasis b = LatticeBasis::from_columns({{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}});
  const LatticeBasis r = lll_reduce(b);
  const std::vector<IntVector> expect{{0, 1, 0}, {1, 0, 1}, {-1, 0, 2}};
  EXPECT_EQ(r.cols, expect);
  EXPECT_TRUE(is_lll_reduced(r));
  EXPECT_FALSE(is_lll_reduced(b));
}

TEST(Lll, RandomBasesSatisfyDefinitionAndKeepDeterminant) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    const std::size_t dim = 1 + static_cast<std::size_t>(rng() % 5);
    const LatticeBasis b = random_basis(rng, dim);
    const LatticeBasis r = lll_reduce(b);
    ASSERT_TRUE(oracle::lll_reduced(r.cols)) << "case " << i;
    EXPECT_TRUE(is_lll_reduced(r));
    EXPECT_EQ(abs(determinant(r)), abs(oracle::det(b.cols)));
    EXPECT_EQ(determinant(b), oracle::det(b.cols));
    // Each reduced vector lies in the original lattice.
    for (const auto& c : r.cols) {
      for (const auto& z : solve(b, c)) EXPECT_EQ(z.get_den(), 1);
    }
  }
}

TEST(Lll, RejectsBadParameter) {
  const LatticeBasis b = LatticeBasis::identity(2);
  EXPECT_THROW(lll_reduce(b, Rational(1, 4)), DomainError);
  EXPECT_THROW(lll_reduce(b, Rational(1)), DomainError);
  EXPECT_THROW(gram_schmidt(LatticeBasis::from_columns({{1, 2}, {2, 4}})), DomainError);
}

TEST(GramSchmidt, MatchesOracle) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    const LatticeBasis b = random_basis(rng, 4);
    const GramSchmidtData gs = gram_schmidt(b);
    std::vector<mpq_class> norms;
    std::vector<std::vector<mpq_class>> mu;
    oracle::gram_schmidt(b.cols, norms, mu);
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_EQ(gs.bstar_norms_sq[j], norms[j]);
      for (std::size_t t = 0; t < j; ++t) EXPECT_EQ(gs.mu[j][t], mu[j][t]);
    }
  }
}

TEST(DistanceBound, NeverExceedsBoxMinimum) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> d(-60, 60);
  for (int i = 0; i < 200; ++i) {
    const std::size_t dim = 1 + static_cast<std::size_t>(rng() % 5);
    const LatticeBasis r = lll_reduce(random_basis(rng, dim));
    const GramSchmidtData gs = gram_schmidt(r);
    IntVector y(dim, 0);
    if (i % 2) {
      for (auto& e : y) e = d(rng);
    }
    const DistanceBound db = distance_lower_bound(r, gs, y, 128);
    const long R = dim <= 3 ? 6 : dim == 4 ? 4 : 3;
    const mpz_class best = oracle::box_min_dist_sq(r.cols, y, R);
    EXPECT_LE(db.c1_sq, Rational(best)) << "case " << i;
    if (i % 2 == 0) {
      EXPECT_TRUE(db.y_in_lattice);
      EXPECT_EQ(db.sigma, 1);
    }
  }
}

TEST(ApproxLattice, AmbiguousFloorRaises) {
  ReductionInstance inst;
  inst.C = 1000;
  inst.etas = {hull(Interval::from_q(Rational(1, 2), 64), Interval::from_q(Rational(1, 2) + Rational(1, 1000), 64))};
  inst.A = {5};
  inst.c3 = Interval::from_int(1, 64);
  inst.c4 = Interval::from_int(1, 64);
  EXPECT_THROW(build_approx_lattice(inst), FloorAmbiguityError);
}

namespace {

struct Toy {
  std::vector<double> etas;
  std::optional<double> eta0;
  long A = 10;
};

ReductionInstance make(const Toy& t, const BigInt& C) {
  ReductionInstance inst;
  inst.C = C;
  for (double e : t.etas) inst.etas.push_back(Interval::from_double(e, 256));
  if (t.eta0) inst.eta0 = Interval::from_double(*t.eta0, 256);
  inst.A.assign(t.etas.size(), BigInt(t.A));
  inst.c3 = Interval::from_int(1, 256);
  inst.c4 = Interval::from_int(1, 256);
  return inst;
}

}  // namespace

// For every admissible coefficient vector the largest H compatible with
// |Lambda| < c3 exp(-c4 H) must stay below the reported bound.
TEST(Reduction, ToyBoundsHoldByBruteForce) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  int checked = 0;
  for (int i = 0; i < 50; ++i) {
    Toy t;
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 2);
    for (std::size_t j = 0; j < n; ++j) t.etas.push_back(u(rng));
    if (i % 2) t.eta0 = u(rng);
    BigInt C = 1000000;
    ReductionOutcome out;
    for (;;) {
      out = analyze_reduction(make(t, C), 256);
      if (out.condition_holds) break;
      C *= 10;
    }
    ASSERT_TRUE(out.H_value.has_value());
    const double H = out.H_value->hi_d();
    // With eta0 the only excluded vector is (0, .., 0, a_n) at the degenerate a_n.
    auto skip = [&](const std::vector<long>& a) {
      if (!t.eta0) return std::all_of(a.begin(), a.end(), [](long v) { return v == 0; });
      if (!out.degenerate_a_n || a.back() != out.degenerate_a_n->get_si()) return false;
      return std::all_of(a.begin(), a.end() - 1, [](long v) { return v == 0; });
    };
    const long double hstar = oracle::max_log_inverse(t.etas, t.eta0.value_or(0.0), t.A, skip);
    EXPECT_LE(static_cast<double>(hstar), H + 1e-9) << "instance " << i;
    ++checked;
  }
  EXPECT_EQ(checked, 50);
}

TEST(Reduction, ConditionErrorWhenCTooSmall) {
  ReductionInstance inst;
  inst.C = 10;
  inst.etas = {Interval::from_double(0.3, 128), Interval::from_double(1.7, 128)};
  inst.A = {1000, 1000};
  inst.c3 = Interval::from_int(1, 128);
  inst.c4 = Interval::from_int(1, 128);
  EXPECT_THROW(reduce_and_bound(inst, 128), ConditionError);
  const ReductionOutcome o = analyze_reduction(inst, 128);
  EXPECT_FALSE(o.condition_holds);
  EXPECT_FALSE(o.H_bound.has_value());
}

TEST(Solve, ExactRationalSolution) {
  const LatticeBasis b = LatticeBasis::from_columns({{2, 0}, {1, 3}});
  const auto z = solve(b, {3, 3});
  EXPECT_EQ(z[0], Rational(1));
  EXPECT_EQ(z[1], Rational(1));
  const auto w = solve(b, {1, 0});
  EXPECT_EQ(w[0], Rational(1, 2));
  EXPECT_EQ(w[1], Rational(0));
}
