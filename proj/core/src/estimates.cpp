#include "klucas/estimates.hpp"

#include <cmath>

#include "klucas/errors.hpp"
#include "klucas/seq.hpp"

namespace klucas {

namespace {

bool within(const Interval& rel, const Interval& bound) {
  return mpfr_lessequal_p(abs(rel).hi().get(), bound.lo().get()) != 0;
}

// Whether v < 2^{ck} holds with certainty.
bool below_two_pow(long v, double c, long k, Precision prec) {
  const Interval e = Interval::from_double(c, prec) * Interval::from_int(k, prec);
  return Interval::from_int(v, prec).certainly_less(exp(e * Interval::ln2(prec)));
}

Interval two_pow(const Interval& e) { return exp(e * Interval::ln2(e.precision())); }

RelativeErrorReport exact_report(const BigInt& actual, const BigInt& nominal, Interval bound) {
  const Precision p = bound.precision();
  RelativeErrorReport r;
  r.actual = Interval::from_z(actual, p);
  r.nominal = Interval::from_z(nominal, p);
  r.rel_err = Interval::from_q(Rational(actual - nominal, nominal), p);
  r.bound = std::move(bound);
  r.within = within(r.rel_err, r.bound);
  return r;
}

}  // namespace

RelativeErrorReport fay_estimate(long k, long n, double c, Precision prec) {
  if (k < 2) throw DomainError("order k must be at least 2");
  if (!(c > 0 && c < 1)) throw DomainError("c must lie in (0, 1)");
  if (n < 2 || !below_two_pow(n, c, k, prec)) throw DomainError("need 2 <= n < 2^{ck}");
  BigInt main;
  mpz_ui_pow_ui(main.get_mpz_t(), 2, static_cast<unsigned long>(n - 2));
  main *= 3;
  const Interval num = Interval::from_decimal(c <= 0.693 ? "4" : "8.1", prec);
  const Interval e = Interval::from_double(1 - c, prec) * Interval::from_int(k, prec);
  return exact_report(lucas(k, n), main, num / two_pow(e));
}

RelativeErrorReport power_expansion_alpha(long k, long n, long x, const AlgebraicContext& ctx) {
  if (n < 1 || x < 1) throw DomainError("need n >= 1 and x >= 1");
  if (ctx.k != k) throw DomainError("context built for a different k");
  const BigInt actual = power_of(lucas(k, n), x);
  AlgebraicContext local;
  const AlgebraicContext* c = &ctx;
  for (;;) {
    const Precision p = c->working;
    const Interval an = pow(c->alpha, n - 1);
    RelativeErrorReport r;
    r.actual = Interval::from_z(actual, p);
    r.nominal = pow(c->fk_alpha * c->two_alpha_minus_1, x) * pow(an, x);
    r.rel_err = r.actual / r.nominal - 1;
    const Interval xx = Interval::from_q(Rational(3 * x, 2), p);
    r.bound = xx * exp(xx / an) / an;
    r.within = within(r.rel_err, r.bound);
    if (r.within) return r;
    // A certified violation needs no more precision.
    if (mpfr_greater_p(abs(r.rel_err).lo().get(), r.bound.hi().get())) return r;
    if (c->prec * 2 > (Precision{1} << 16)) {
      throw PrecisionError("cannot decide the power expansion at k=" + std::to_string(k) +
                           ", n=" + std::to_string(n) + ", x=" + std::to_string(x));
    }
    local = build_context(k, c->prec * 2, true);
    c = &local;
  }
}

RelativeErrorReport power_expansion_binary(long k, long n, long i, long x, double c,
                                           Precision prec) {
  if (k < 2) throw DomainError("order k must be at least 2");
  if (i < -1 || i > 1) throw DomainError("i must be -1, 0 or 1");
  if (!(c > 0 && c < 0.25)) throw DomainError("c must lie in (0, 1/4)");
  if (x < 1) throw DomainError("need x >= 1");
  const long ni = n + i;
  if (ni < k + 2) throw DomainError("need n + i >= k + 2");
  if (!below_two_pow(std::max(ni, 16 * x), c, k, prec)) {
    throw DomainError("need max{n + i, 16x} < 2^{ck}");
  }
  BigInt main, t;
  mpz_ui_pow_ui(main.get_mpz_t(), 3, static_cast<unsigned long>(x));
  mpz_ui_pow_ui(t.get_mpz_t(), 2, static_cast<unsigned long>((ni - 2) * x));
  main *= t;
  const Interval e = Interval::from_double(1 - 2 * c, prec) * Interval::from_int(k, prec);
  return exact_report(power_of(lucas(k, ni), x), main, Interval::from_int(2, prec) / two_pow(e));
}

namespace {

void tally(GridSummary& s, const RelativeErrorReport& r, const std::string& where) {
  ++s.checked;
  if (r.within) {
    ++s.within;
  } else {
    s.failures.push_back(where);
  }
}

}  // namespace

GridSummary run_fay_grid(const EstimateGrid& g) {
  GridSummary s{"fay_estimate", 0, 0, {}};
  for (double c : g.fay_c) {
    for (long k = g.k_lo; k <= g.k_hi; ++k) {
      for (long n = 2; n <= g.n_max && below_two_pow(n, c, k, g.prec); ++n) {
        tally(s, fay_estimate(k, n, c, g.prec),
              "k=" + std::to_string(k) + ",n=" + std::to_string(n) + ",c=" + std::to_string(c));
      }
    }
  }
  return s;
}

GridSummary run_alpha_grid(const EstimateGrid& g) {
  GridSummary s{"power_expansion_alpha", 0, 0, {}};
  for (long k = g.k_lo; k <= g.k_hi; ++k) {
    // Enough bits that |eta| ~ a^{-(n-1)} is resolved without escalation.
    const Precision p = std::max<Precision>(g.prec, 2 * g.n_max + 64);
    const AlgebraicContext ctx = build_context(k, p, true);
    for (long x = g.x_lo; x <= g.x_hi; ++x) {
      for (long n = 1; n <= g.n_max; ++n) {
        tally(s, power_expansion_alpha(k, n, x, ctx),
              "k=" + std::to_string(k) + ",n=" + std::to_string(n) + ",x=" + std::to_string(x));
      }
    }
  }
  return s;
}

GridSummary run_binary_grid(const EstimateGrid& g) {
  GridSummary s{"power_expansion_binary", 0, 0, {}};
  for (double c : g.binary_c) {
    for (long k = g.k_lo; k <= g.k_hi; ++k) {
      for (long x = g.x_lo; x <= g.x_hi; ++x) {
        if (!below_two_pow(16 * x, c, k, g.prec)) break;
        for (long ni = k + 2; ni <= g.n_max + 1 && below_two_pow(ni, c, k, g.prec); ++ni) {
          for (long i = -1; i <= 1; ++i) {
            const long n = ni - i;
            if (n > g.n_max) continue;
            tally(s, power_expansion_binary(k, n, i, x, c, g.prec),
                  "k=" + std::to_string(k) + ",n=" + std::to_string(n) + ",i=" +
                      std::to_string(i) + ",x=" + std::to_string(x) + ",c=" + std::to_string(c));
          }
        }
      }
    }
  }
  return s;
}

}  // namespace klucas
