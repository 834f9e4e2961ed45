// One PASS/FAIL line per acceptance criterion, with the wall time of each check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <tuple>

#include "klucas/algebraic.hpp"
#include "klucas/contfrac.hpp"
#include "klucas/errors.hpp"
#include "klucas/estimates.hpp"
#include "klucas/lattice.hpp"
#include "klucas/linforms.hpp"
#include "klucas/reduction.hpp"
#include "klucas/search.hpp"
#include "klucas/seq.hpp"
#include "oracles.hpp"

using namespace klucas;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Verdict()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v.ok = false;
    v.detail = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (v.ok && s > budget_s) {
    v.ok = false;
    v.detail = "over the " + std::to_string(budget_s) + " s budget";
  }
  if (!v.ok) ++failures;
  std::printf("%s %d: %s (%.2f s)%s%s\n", v.ok ? "PASS" : "FAIL", id, name, s,
              v.detail.empty() ? "" : " - ", v.detail.c_str());
  std::fflush(stdout);
}

BigInt two_pow(long e) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return p;
}

std::string where(long k, long n) { return "k=" + std::to_string(k) + " n=" + std::to_string(n); }

Verdict desk_search() {
  Verdict v;
  using Key = std::tuple<long, long, long, long>;  // n, m, k, x
  std::set<Key> expect;
  for (long k = 2; k <= 10; ++k) {
    for (long n = 0; n <= 20; ++n) expect.insert({n, 1, k, 0});
    expect.insert({1, 0, k, 1});
    if (k >= 3) {
      expect.insert({0, 2, k, 1});
      expect.insert({1, 3, k, 2});
    }
  }
  expect.insert({0, 3, 2, 1});
  expect.insert({0, 3, 2, 2});
  std::set<Key> got;
  for (const auto& r : exhaustive_search(preset("desk"))) got.insert({r.n, r.m, r.k, r.x});
  v.require(got == expect, std::to_string(got.size()) + " solutions, expected " +
                               std::to_string(expect.size()));
  return v;
}

Verdict closed_forms() {
  Verdict v;
  for (long k = 2; k <= 30; ++k) {
    const auto w = lucas_window(k, 300);
    for (long n = 2; n <= k; ++n) v.require(w[static_cast<std::size_t>(n)] == 3 * two_pow(n - 2), where(k, n));
    v.require(w[static_cast<std::size_t>(k + 1)] == 3 * two_pow(k - 1) - 2, where(k, k + 1));
    for (long n = k + 1; n <= 300; ++n) v.require(w[static_cast<std::size_t>(n)] < 3 * two_pow(n - 2), where(k, n));
  }
  return v;
}

Verdict binet() {
  Verdict v;
  const Interval lim = Interval::from_q(Rational(3, 2), 320);
  for (long k = 2; k <= 20; ++k) {
    const AlgebraicContext ctx = build_context(k, 256, true);
    for (long n = 2 - k; n <= 300; ++n) {
      const BinetError e = binet_error(k, n, ctx);
      v.require(e.value.certainly_less(lim) && (-lim).certainly_less(e.value), where(k, n));
    }
  }
  return v;
}

Verdict norms() {
  Verdict v;
  for (long k = 2; k <= 12; ++k) {
    const AlgebraicContext ctx = build_context(k, 256);
    v.require(abs(norm_2alpha_minus_1(ctx)) == two_pow(k + 1) - 3, "N(2a-1) k=" + std::to_string(k));
    BigInt kk, k1;
    mpz_ui_pow_ui(kk.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(k));
    mpz_ui_pow_ui(k1.get_mpz_t(), static_cast<unsigned long>(k + 1), static_cast<unsigned long>(k + 1));
    Rational ref(BigInt((k - 1) * (k - 1)), two_pow(k + 1) * kk - k1);
    ref.canonicalize();
    v.require(abs(norm_fk(ctx)) == ref, "N(f) k=" + std::to_string(k));
  }
  const Rational combined[] = {Rational(13, 44), Rational(29, 563), Rational(61, 9584),
                               Rational(125, 205937), Rational(253, 5390272)};
  for (long k = 3; k <= 7; ++k) {
    const AlgebraicContext ctx = build_context(k, 256);
    const Rational q = Rational(abs(norm_2alpha_minus_1(ctx))) * abs(norm_fk(ctx));
    v.require(q == combined[k - 3], "combined k=" + std::to_string(k));
  }
  return v;
}

Verdict root_bounds() {
  Verdict v;
  for (long k = 2; k <= 100; ++k) {
    const AlgebraicContext ctx = build_context(k, 256, true);
    const Precision w = ctx.working;
    const Interval lower = 2 * (1 - pow(Interval::from_int(2, w), -k));
    v.require(lower.certainly_less(ctx.alpha) && ctx.alpha.certainly_less(Interval::from_int(2, w)),
              "alpha bracket k=" + std::to_string(k));
    const bool f_ok = Interval::from_q(Rational(1, 2), w).certainly_less(ctx.fk_alpha) &&
                      mpfr_lessequal_p(ctx.fk_alpha.hi().get(),
                                       Interval::from_q(Rational(3, 4), w).lo().get());
    v.require(f_ok, "f range k=" + std::to_string(k));
  }
  return v;
}

Verdict continued_fraction() {
  Verdict v;
  const CFExpansion cf = cf_expand(log3_over_log2(1024), 188);
  v.require(cf.convergents[97].second > pow10(47), "q_97");
  v.require(cf.convergents[187].second > pow10(89), "q_187");
  BigInt amax = 0;
  for (const auto& a : cf.quotients) amax = std::max(amax, a);
  v.require(amax == 55, "max quotient " + amax.get_str());
  return v;
}

Verdict minima() {
  Verdict v;
  const long expect[] = {28, 11, 16, 23, 5, 33, 6, 22, 18};
  for (long x = 2; x <= 10; ++x) {
    const TwoLogMin m = min_two_log_form(x);
    const auto f = (m.value * 100).certified_floor();
    v.require(f && *f == expect[x - 2], "x=" + std::to_string(x));
  }
  for (const auto& r : small_x_refutation(INFINITY, SmallXVariant::NAtLeast3)) {
    v.require(r.refuted, "refutation x=" + std::to_string(r.x));
  }
  return v;
}

Verdict lll_soundness() {
  Verdict v;
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    const std::size_t dim = 1 + static_cast<std::size_t>(rng() % 5);
    const LatticeBasis b = LatticeBasis::from_columns(oracle::random_nonsingular(rng, dim));
    const LatticeBasis r = lll_reduce(b);
    const std::string tag = "basis " + std::to_string(i);
    v.require(oracle::lll_reduced(r.cols), tag + " not reduced");
    v.require(abs(oracle::det(r.cols)) == abs(oracle::det(b.cols)), tag + " determinant");
    oracle::Vec y(dim);
    std::uniform_int_distribution<long> d(-60, 60);
    for (auto& e : y) e = d(rng);
    const DistanceBound db = distance_lower_bound(r, gram_schmidt(r), y, 128);
    const long R = dim <= 3 ? 6 : dim == 4 ? 4 : 3;
    v.require(db.c1_sq <= Rational(oracle::box_min_dist_sq(r.cols, y, R)), tag + " distance");
  }
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 2);
    std::vector<double> etas;
    for (std::size_t j = 0; j < n; ++j) etas.push_back(u(rng));
    const std::optional<double> eta0 = i % 2 ? std::optional<double>(u(rng)) : std::nullopt;
    const long A = 10;
    BigInt C = 1000000;
    ReductionOutcome out;
    for (;;) {
      ReductionInstance inst;
      inst.C = C;
      for (double e : etas) inst.etas.push_back(Interval::from_double(e, 256));
      if (eta0) inst.eta0 = Interval::from_double(*eta0, 256);
      inst.A.assign(n, BigInt(A));
      inst.c3 = Interval::from_int(1, 256);
      inst.c4 = Interval::from_int(1, 256);
      out = analyze_reduction(inst, 256);
      if (out.condition_holds) break;
      C *= 10;
    }
    auto skip = [&](const std::vector<long>& a) {
      if (!eta0) return std::all_of(a.begin(), a.end(), [](long x) { return x == 0; });
      if (!out.degenerate_a_n || a.back() != out.degenerate_a_n->get_si()) return false;
      return std::all_of(a.begin(), a.end() - 1, [](long x) { return x == 0; });
    };
    const long double hstar = oracle::max_log_inverse(etas, eta0.value_or(0.0), A, skip);
    v.require(out.H_value && static_cast<double>(hstar) <= out.H_value->hi_d() + 1e-9,
              "toy instance " + std::to_string(i));
  }
  return v;
}

Verdict first_form_k2() {
  Verdict v;
  ReductionSpec spec;
  spec.form = ReductionForm::L1;
  spec.k = 2;
  spec.C = "1e331";
  spec.c3 = "4.5";
  spec.c4 = "ln2";
  const ReductionResult r = run_reduction(spec);
  v.require(r.outcome.condition_holds, "c1 > sqrt(T^2 + S) fails");
  v.require(r.variable_bound.has_value(), "no bound");
  if (r.variable_bound) {
    const BigInt& b = *r.variable_bound;
    v.require(b >= 300 && b <= 5000, "bound " + b.get_str());
    v.detail = v.ok ? "x <= " + b.get_str() + " at " + std::to_string(r.precision_used) + " bits" : v.detail;
  }
  v.require(r.precision_used >= 1200, "precision " + std::to_string(r.precision_used));
  return v;
}

Verdict estimate_grids() {
  Verdict v;
  const EstimateGrid g;
  for (const GridSummary& s : {run_fay_grid(g), run_alpha_grid(g), run_binary_grid(g)}) {
    v.require(s.all_within(), s.lemma + ": " + std::to_string(s.within) + "/" + std::to_string(s.checked));
  }
  return v;
}

double rel(long double a, long double b) { return static_cast<double>(std::fabs((a - b) / b)); }

Verdict bound_calculators() {
  Verdict v;
  const Precision p = 200;
  struct MCase {
    long t, D;
    double B;
    std::vector<double> A;
  };
  const MCase mcases[] = {{3, 2, 100.0, {1.0, 2.5, 0.7}},
                          {4, 5, 1e6, {6 * 5 * std::log(5.0), 0.7, 5 * std::log(3.0), 5 * std::log(3.0)}},
                          {2, 1, 3.0, {1.0, 1.0}}};
  for (const auto& c : mcases) {
    MatveevInput in;
    in.t = c.t;
    in.D = c.D;
    in.B = Interval::from_double(c.B, p);
    std::vector<long double> A;
    for (double a : c.A) {
      in.A.push_back(Interval::from_double(a, p));
      A.push_back(a);
    }
    v.require(rel(matveev_lower(in).mid_d(), oracle::matveev_ref(c.t, c.D, c.B, A)) < 1e-12,
              "matveev t=" + std::to_string(c.t));
  }
  struct LCase {
    long D;
    double bprime, l1, l2;
  };
  const LCase lcases[] = {{1, 1e10, 0.5, 1.2}, {2, 3.0, 1.0, 2.0}, {4, 1e40, 3.3, 0.9}};
  for (const auto& c : lcases) {
    const LmnInput in{c.D, Interval::from_double(c.bprime, p), Interval::from_double(c.l1, p),
                      Interval::from_double(c.l2, p)};
    v.require(rel(lmn_lower(in).mid_d(), oracle::lmn_ref(c.D, c.bprime, c.l1, c.l2)) < 1e-12,
              "lmn D=" + std::to_string(c.D));
  }
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const int r = 1 + static_cast<int>(rng() % 4);
    const long double base = std::pow(4.0L * r * r, r);
    const double T = static_cast<double>(base * (1.001L + std::ldexp(static_cast<long double>(rng() % 1000000), -10)));
    const BigInt b = guz_resolve(r, Interval::from_double(T, 128));
    v.require(b.get_d() >= static_cast<double>(oracle::guz_threshold(r, T)), "guz case " + std::to_string(i));
  }
  return v;
}

}  // namespace

int main() {
  criterion(1, "desk search reproduces the solution set", 120, desk_search);
  criterion(2, "closed forms and strict inequality", 60, closed_forms);
  criterion(3, "Binet error below 3/2", 120, binet);
  criterion(4, "norm identities", 60, norms);
  criterion(5, "dominant root and f bounds", 60, root_bounds);
  criterion(6, "continued fraction of log 3 / log 2", 10, continued_fraction);
  criterion(7, "two-logarithm minima and refutation", 1, minima);
  criterion(8, "LLL soundness", 120, lll_soundness);
  criterion(9, "first linear form reduction at k = 2", 600, first_form_k2);
  criterion(10, "estimate grids", 60, estimate_grids);
  criterion(11, "bound calculators", 30, bound_calculators);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
