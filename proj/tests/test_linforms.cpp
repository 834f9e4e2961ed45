#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "klucas/errors.hpp"
#include "klucas/linforms.hpp"
#include "oracles.hpp"

using namespace klucas;

namespace {

using oracle::matveev_ref;

double rel(long double a, long double b) { return static_cast<double>(std::fabs((a - b) / b)); }

}  // namespace

TEST(MRange, Examples) {
  const MRange r = m_range(1, 2);
  EXPECT_EQ(r.lo, -1);
  EXPECT_EQ(r.hi, 11);
  EXPECT_THROW(m_range(-1, 2), DomainError);
  EXPECT_THROW(m_range(1, 0), DomainError);
}

TEST(Matveev, HandComputedProducts) {
  const Precision p = 200;
  struct Case {
    long t, D;
    long double B;
    std::vector<long double> A;
  };
  const Case cases[] = {{3, 2, 100.0L, {1.0L, 2.5L, 0.7L}},
                        {4, 5, 1e6L, {6 * 5 * std::log(5.0L), 0.7L, 5 * std::log(3.0L), 5 * std::log(3.0L)}},
                        {2, 1, 3.0L, {1.0L, 1.0L}}};
  for (const auto& c : cases) {
    MatveevInput in;
    in.t = c.t;
    in.D = c.D;
    in.B = Interval::from_double(static_cast<double>(c.B), p);
    for (auto a : c.A) in.A.push_back(Interval::from_double(static_cast<double>(a), p));
    // Reference uses the same double inputs.
    std::vector<long double> A;
    for (auto a : c.A) A.push_back(static_cast<double>(a));
    const long double ref = matveev_ref(c.t, c.D, static_cast<double>(c.B), A);
    EXPECT_LT(rel(matveev_lower(in).mid_d(), ref), 1e-12);
  }
}

TEST(Matveev, RejectsBadInput) {
  MatveevInput in;
  in.t = 2;
  in.D = 1;
  in.B = Interval::from_int(5, 64);
  in.A = {Interval::from_int(1, 64)};
  EXPECT_THROW(matveev_lower(in), DomainError);
}

TEST(Lmn, HandComputedProducts) {
  struct Case {
    long D;
    double bprime, l1, l2;
  };
  const Case cases[] = {{1, 1e10, 0.5, 1.2}, {2, 3.0, 1.0, 2.0}, {4, 1e40, 3.3, 0.9}};
  for (const auto& c : cases) {
    LmnInput in{c.D, Interval::from_double(c.bprime, 200), Interval::from_double(c.l1, 200),
                Interval::from_double(c.l2, 200)};
    const long double ref = oracle::lmn_ref(c.D, c.bprime, c.l1, c.l2);
    EXPECT_LT(rel(lmn_lower(in).mid_d(), ref), 1e-12);
  }
}

TEST(Guz, BeatsBruteForceOracle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const int r = 1 + static_cast<int>(rng() % 4);
    const long double base = std::pow(4.0L * r * r, r);
    const long double T = base * (1.001L + std::ldexp(static_cast<long double>(rng() % 1000000), -10));
    const BigInt b = guz_resolve(r, Interval::from_double(static_cast<double>(T), 128));
    EXPECT_GE(b.get_d(), static_cast<double>(oracle::guz_threshold(r, static_cast<double>(T)))) << r << " " << static_cast<double>(T);
  }
  EXPECT_THROW(guz_resolve(2, Interval::from_int(100, 64)), DomainError);
}

TEST(Envelopes, ComparisonsForLargeK) {
  const EnvelopeBounds e = envelope_bounds(800, 1000, Interval::from_int(5597, 128));
  EXPECT_TRUE(e.m_small_n_below_2_028k);
  EXPECT_TRUE(e.n_large_n_below_2_024k);
  EXPECT_TRUE(e.m_large_n_below_2_039k);
  EXPECT_NEAR(e.m_small_n.mid_d() / 9.0286e65, 1.0, 1e-4);
  EXPECT_NEAR(e.m_large_n.mid_d() / 4.786e83, 1.0, 1e-3);
}

// The domination flags are not expected for tiny k; record the numbers.
TEST(Envelopes, SmallKRatiosRecorded) {
  for (long k : {2L, 10L, 100L, 400L}) {
    const EnvelopeBounds e = envelope_bounds(k, std::nullopt, std::nullopt);
    const double r1 = std::log2(e.m_small_n.mid_d()) / (0.28 * k);
    RecordProperty("k" + std::to_string(k) + "_log2_m_over_0.28k", std::to_string(r1));
    EXPECT_EQ(e.m_small_n_below_2_028k, r1 < 1.0) << k;
  }
}

TEST(Matveev, XBoundForFirstForm) {
  const Interval m = Interval::from_int(5597, 256);
  const MatveevInput in = gamma1_matveev_input(10, m, 256);
  EXPECT_EQ(in.t, 4);
  EXPECT_EQ(in.A.size(), 4u);
  const Interval xb = matveev_x_bound(10, m, 256);
  EXPECT_GT(xb.mid_d(), 1e15);
  EXPECT_LT(xb.mid_d(), 1e22);
}

TEST(Gamma, ProductAndLogRoutesAgree) {
  std::mt19937_64 rng(5);
  for (long k = 2; k <= 6; ++k) {
    const AlgebraicContext ctx = build_context(k, 256, true);
    for (int i = 0; i < 30; ++i) {
      const long n = 3 + static_cast<long>(rng() % 20);
      const long x = 2 + static_cast<long>(rng() % 8);
      const MRange r = m_range(n, x);
      const long m = r.lo + 1 + static_cast<long>(rng() % static_cast<unsigned long>(r.hi - r.lo - 1));
      std::vector<FormId> forms{FormId::G1, FormId::G2};
      if (n > k) forms.insert(forms.end(), {FormId::G3, FormId::G4, FormId::G5});
      for (FormId f : forms) {
        if (m < 1) continue;
        const LinearFormValue v = gamma_value(f, {k, n, m, x}, ctx);
        const Interval one_plus = v.gamma_value + 1;
        if (!one_plus.is_positive()) continue;
        const Interval diff = log(one_plus) - v.lambda_value;
        EXPECT_TRUE(diff.contains_zero()) << to_string(f) << " k=" << k << " n=" << n;
        EXPECT_LT(diff.width_d(), 1e-40);
      }
    }
  }
}

TEST(Gamma, TriStateIsConsistent) {
  const AlgebraicContext ctx = build_context(3, 256, true);
  const MRange r = m_range(4, 2);
  for (long m = std::max(1L, r.lo + 1); m < r.hi; ++m) {
    const LinearFormValue v = gamma_value(FormId::G1, {3, 4, m, 2}, ctx);
    const double g = std::fabs(v.gamma_value.mid_d()), b = v.bound.mid_d();
    EXPECT_EQ(v.bound_holds, g < b ? Tri::True : Tri::False);
  }
  // A true solution: (n, m, k, x) = (0, 3, 2, 2) satisfies the small-n form with delta = 2.
  const AlgebraicContext c2 = build_context(2, 256, true);
  const LinearFormValue s = gamma_value(FormId::G1small, {2, 0, 3, 2}, c2);
  EXPECT_EQ(s.bound_holds, Tri::True);
}

TEST(Gamma, DomainChecks) {
  const AlgebraicContext ctx = build_context(3, 128, true);
  EXPECT_THROW(gamma_value(FormId::G1, {3, 2, 5, 2}, ctx), DomainError);
  EXPECT_THROW(gamma_value(FormId::G3, {3, 3, 5, 2}, ctx), DomainError);
  EXPECT_THROW(gamma_value(FormId::G1, {4, 5, 12, 2}, ctx), DomainError);
  EXPECT_EQ(parse_form_id("G4"), FormId::G4);
  EXPECT_THROW(parse_form_id("G9"), DomainError);
}
