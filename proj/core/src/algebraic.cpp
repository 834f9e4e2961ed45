#include "klucas/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "klucas/errors.hpp"
#include "klucas/seq.hpp"

namespace klucas {

namespace {

void require_order(long k) {
  if (k < 2) throw DomainError("order k must be at least 2, got " + std::to_string(k));
}

// Point complex number for Newton refinement (round-to-nearest).
struct PointC {
  Float re;
  Float im;
  explicit PointC(Precision p) : re(p), im(p) {}
};

void pc_mul(PointC& out, const PointC& a, const PointC& b, Float& t1, Float& t2) {
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  Float re(out.re.precision());
  mpfr_sub(re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(out.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_swap(out.re.get(), re.get());
}

// One Newton step z <- z - Psi(z)/Psi'(z); returns log2 of the step size.
long newton_step(long k, PointC& z) {
  const Precision p = z.re.precision();
  PointC val(p), der(p), tmp(p);
  Float t1(p), t2(p);
  mpfr_set_ui(val.re.get(), 1, MPFR_RNDN);
  for (long i = 0; i < k; ++i) {
    // der = der * z + val; val = val * z - 1
    pc_mul(tmp, der, z, t1, t2);
    mpfr_add(der.re.get(), tmp.re.get(), val.re.get(), MPFR_RNDN);
    mpfr_add(der.im.get(), tmp.im.get(), val.im.get(), MPFR_RNDN);
    pc_mul(tmp, val, z, t1, t2);
    mpfr_sub_ui(val.re.get(), tmp.re.get(), 1, MPFR_RNDN);
    mpfr_set(val.im.get(), tmp.im.get(), MPFR_RNDN);
  }
  // step = val / der
  Float d(p);
  mpfr_sqr(t1.get(), der.re.get(), MPFR_RNDN);
  mpfr_sqr(t2.get(), der.im.get(), MPFR_RNDN);
  mpfr_add(d.get(), t1.get(), t2.get(), MPFR_RNDN);
  if (mpfr_zero_p(d.get())) throw PrecisionError("Newton refinement hit a critical point");
  PointC step(p);
  mpfr_mul(t1.get(), val.re.get(), der.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), val.im.get(), der.im.get(), MPFR_RNDN);
  mpfr_add(step.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(step.re.get(), step.re.get(), d.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), val.im.get(), der.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), val.re.get(), der.im.get(), MPFR_RNDN);
  mpfr_sub(step.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(step.im.get(), step.im.get(), d.get(), MPFR_RNDN);
  mpfr_sub(z.re.get(), z.re.get(), step.re.get(), MPFR_RNDN);
  mpfr_sub(z.im.get(), z.im.get(), step.im.get(), MPFR_RNDN);
  mpfr_hypot(t1.get(), step.re.get(), step.im.get(), MPFR_RNDU);
  if (mpfr_zero_p(t1.get())) return -static_cast<long>(p) - 1;
  return static_cast<long>(mpfr_get_exp(t1.get()));
}

// Simultaneous approximation of all roots in double precision.
std::vector<std::complex<double>> aberth(long k) {
  using cd = std::complex<double>;
  const auto n = static_cast<std::size_t>(k);
  auto eval = [k](cd z, cd& dp) {
    cd p = 1.0;
    dp = 0.0;
    for (long i = 0; i < k; ++i) {
      dp = dp * z + p;
      p = p * z - 1.0;
    }
    return p;
  };
  std::vector<cd> z(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.25) / static_cast<double>(k);
    z[j] = std::polar(1.1, t + 0.4);
  }
  for (int iter = 0; iter < 2000; ++iter) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      cd dp;
      cd p = eval(z[i], dp);
      if (dp == 0.0) dp = 1e-300;
      cd w = p / dp;
      cd s = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) s += 1.0 / (z[i] - z[j]);
      }
      cd step = w / (1.0 - w * s);
      z[i] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(z[i])));
    }
    if (worst < 1e-15) break;
  }
  return z;
}

Interval point(const Float& v, Precision p) { return Interval::from_bounds(v, v).with_precision(p); }

// Sign of h(x) = x^k (x - 2) + 1 at the point x; h shares the sign of Psi on (1, inf).
int h_sign(long k, const Float& x, Precision p) {
  Interval X = point(x, p);
  Interval h = pow(X, k) * (X - 2) + 1;
  if (h.is_positive()) return 1;
  if (h.is_negative()) return -1;
  return 0;
}

Interval alpha_at_working(long k, Precision working, Precision target) {
  // Newton on h from x0 = 2 decreases monotonically to alpha (h is convex there).
  Float x(working), hx(working), dx(working), t(working);
  mpfr_set_ui(x.get(), 2, MPFR_RNDN);
  for (int iter = 0; iter < 10000; ++iter) {
    // h = x^k (x - 2) + 1,  h' = x^{k-1} ((k + 1) x - 2k)
    mpfr_pow_ui(t.get(), x.get(), static_cast<unsigned long>(k - 1), MPFR_RNDN);
    mpfr_mul(hx.get(), t.get(), x.get(), MPFR_RNDN);
    mpfr_sub_ui(dx.get(), x.get(), 2, MPFR_RNDN);
    mpfr_mul(hx.get(), hx.get(), dx.get(), MPFR_RNDN);
    mpfr_add_ui(hx.get(), hx.get(), 1, MPFR_RNDN);
    mpfr_mul_ui(dx.get(), x.get(), static_cast<unsigned long>(k + 1), MPFR_RNDN);
    mpfr_sub_ui(dx.get(), dx.get(), static_cast<unsigned long>(2 * k), MPFR_RNDN);
    mpfr_mul(dx.get(), dx.get(), t.get(), MPFR_RNDN);
    mpfr_div(hx.get(), hx.get(), dx.get(), MPFR_RNDN);
    mpfr_sub(x.get(), x.get(), hx.get(), MPFR_RNDN);
    if (mpfr_zero_p(hx.get()) ||
        mpfr_get_exp(hx.get()) < -static_cast<mpfr_exp_t>(working) + 4) {
      break;
    }
  }
  // Bracket with radius 2^-(target + 8).
  Float lo(working), hi(working), eps(working);
  mpfr_set_ui_2exp(eps.get(), 1, -static_cast<mpfr_exp_t>(target) - 8, MPFR_RNDN);
  mpfr_sub(lo.get(), x.get(), eps.get(), MPFR_RNDD);
  mpfr_add(hi.get(), x.get(), eps.get(), MPFR_RNDU);
  if (mpfr_cmp_ui(lo.get(), 1) <= 0 || h_sign(k, lo, working) >= 0 || h_sign(k, hi, working) <= 0) {
    throw PrecisionError("could not certify the dominant root for k=" + std::to_string(k));
  }
  return Interval::from_bounds(lo, hi);
}

Interval enclose_disk(const Interval& center, const Interval& radius) {
  Float r = radius.hi();
  Float nr(r.precision());
  mpfr_neg(nr.get(), r.get(), MPFR_RNDD);
  return center + Interval::from_bounds(nr, r);
}

std::vector<ComplexBox> isolate_other_roots(long k, const Interval& alpha, Precision working) {
  auto approx = aberth(k);
  // Drop the approximation closest to alpha.
  const double a = alpha.mid_d();
  std::size_t dom = 0;
  for (std::size_t i = 1; i < approx.size(); ++i) {
    if (std::abs(approx[i] - a) < std::abs(approx[dom] - a)) dom = i;
  }
  approx.erase(approx.begin() + static_cast<std::ptrdiff_t>(dom));
  std::sort(approx.begin(), approx.end(), [](auto u, auto v) {
    return std::arg(u) != std::arg(v) ? std::arg(u) < std::arg(v) : std::abs(u) < std::abs(v);
  });

  std::vector<ComplexBox> centers;
  centers.reserve(static_cast<std::size_t>(k));
  centers.emplace_back(point(alpha.mid(), working), Interval(working));
  for (auto z0 : approx) {
    PointC z(working);
    mpfr_set_d(z.re.get(), z0.real(), MPFR_RNDN);
    mpfr_set_d(z.im.get(), z0.imag(), MPFR_RNDN);
    for (int iter = 0; iter < 200; ++iter) {
      if (newton_step(k, z) < -static_cast<long>(working) + 6) break;
    }
    // One more step to settle the last bits.
    newton_step(k, z);
    centers.emplace_back(point(z.re, working), point(z.im, working));
  }

  // Inclusion disks: all roots lie in the union of
  // |z - (z_i - W_i)| <= (k - 1)|W_i|, W_i = Psi(z_i) / prod_{j != i} (z_i - z_j),
  // and a component made of m disks holds exactly m roots.
  const std::size_t n = centers.size();
  std::vector<ComplexBox> mid(n);
  std::vector<Interval> rad(n);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexBox prod = ComplexBox::real(Interval::from_int(1, working));
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) prod = prod * (centers[i] - centers[j]);
    }
    if (prod.contains_zero()) throw PrecisionError("root approximations collide");
    ComplexBox w = psi(k, centers[i]) / prod;
    mid[i] = centers[i] - w;
    rad[i] = w.abs() * (k - 1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!sqr(rad[i] + rad[j]).certainly_less((mid[i] - mid[j]).norm_sq())) {
        throw PrecisionError("root inclusion disks overlap for k=" + std::to_string(k));
      }
    }
  }
  std::vector<ComplexBox> out;
  out.reserve(n - 1);
  const Interval one = Interval::from_int(1, working);
  for (std::size_t i = 1; i < n; ++i) {
    if (!(mid[i].abs() + rad[i]).certainly_less(one)) {
      throw PrecisionError("could not certify a non-dominant root inside the unit disk");
    }
    out.emplace_back(enclose_disk(mid[i].re, rad[i]), enclose_disk(mid[i].im, rad[i]));
  }
  return out;
}

BigInt require_integer(const ComplexBox& z, const char* what) {
  if (!z.im.contains_zero()) throw PrecisionError(std::string(what) + ": imaginary part not zero");
  auto v = z.re.unique_integer();
  if (!v) throw PrecisionError(std::string(what) + ": no unique integer in " + z.re.to_string(10));
  return *v;
}

}  // namespace

std::vector<long> char_poly(long k) {
  require_order(k);
  std::vector<long> c(static_cast<std::size_t>(k) + 1, -1);
  c[0] = 1;
  return c;
}

Interval psi(long k, const Interval& x) {
  require_order(k);
  Interval acc = Interval::from_int(1, x.precision());
  for (long i = 0; i < k; ++i) acc = acc * x - 1;
  return acc;
}

ComplexBox psi(long k, const ComplexBox& z) {
  require_order(k);
  const Interval one = Interval::from_int(1, z.precision());
  ComplexBox acc = ComplexBox::real(one);
  for (long i = 0; i < k; ++i) acc = acc * z - one;
  return acc;
}

Interval dominant_root(long k, Precision prec) {
  require_order(k);
  return alpha_at_working(k, prec + kGuardBits, prec);
}

AlgebraicContext build_context(long k, Precision prec, bool dominant_only) {
  require_order(k);
  if (prec < 64) throw DomainError("precision must be at least 64 bits");
  AlgebraicContext ctx;
  ctx.k = k;
  ctx.prec = prec;
  ctx.working = prec + kGuardBits;
  ctx.dominant_only = dominant_only;
  const Precision w = ctx.working;
  ctx.alpha = alpha_at_working(k, w, prec);
  if (!dominant_only) ctx.other_roots = isolate_other_roots(k, ctx.alpha, w);
  ctx.fk_alpha = fk_at(k, ctx.alpha);
  ctx.two_alpha_minus_1 = ctx.alpha * 2 - 1;
  ctx.log_alpha = log(ctx.alpha);
  ctx.log_fk = log(ctx.fk_alpha);
  ctx.log_2am1 = log(ctx.two_alpha_minus_1);
  ctx.log2 = Interval::ln2(w);
  ctx.log3 = log(Interval::from_int(3, w));
  return ctx;
}

AlgebraicContext build_context_escalating(long k, Precision prec, bool dominant_only,
                                          Precision cap) {
  for (Precision p = prec;; p *= 2) {
    try {
      return build_context(k, p, dominant_only);
    } catch (const PrecisionError&) {
      if (p * 2 > cap) throw;
    }
  }
}

Interval fk_at(long k, const Interval& v) {
  require_order(k);
  Interval den = (v - 2) * (k + 1) + 2;
  if (den.contains_zero()) throw DomainError("f_k pole: denominator interval contains zero");
  return (v - 1) / den;
}

ComplexBox fk_at(long k, const ComplexBox& v) {
  require_order(k);
  const Precision p = v.precision();
  ComplexBox den = v * Interval::from_int(k + 1, p) - Interval::from_int(2 * k, p);
  if (den.contains_zero()) throw DomainError("f_k pole: denominator box contains zero");
  return (v - Interval::from_int(1, p)) / den;
}

BinetError binet_error(long k, long n, const AlgebraicContext& ctx) {
  validate(KIndex{k, n});
  if (ctx.k != k) throw DomainError("context built for a different k");
  const BigInt L = lucas(k, n);
  const Interval bound = Interval::from_q(Rational(3, 2), ctx.working);
  AlgebraicContext local;
  const AlgebraicContext* c = &ctx;
  for (;;) {
    Interval main = c->fk_alpha * c->two_alpha_minus_1 * pow(c->alpha, n - 1);
    Interval e = Interval::from_z(L, c->working) - main;
    if (abs(e).certainly_less(bound)) return {e, c->prec};
    if (e.width_d() < 1e-6 || c->prec * 2 > (Precision{1} << 16)) {
      throw PrecisionError("cannot certify |e_k(n)| < 1.5 for k=" + std::to_string(k) +
                           ", n=" + std::to_string(n) + ": " + e.to_string(12));
    }
    local = build_context(k, c->prec * 2, true);
    c = &local;
  }
}

std::vector<ComplexBox> all_roots(const AlgebraicContext& ctx) {
  if (ctx.dominant_only) throw DomainError("conjugates unavailable in a dominant-only context");
  std::vector<ComplexBox> r;
  r.reserve(ctx.other_roots.size() + 1);
  r.push_back(ComplexBox::real(ctx.alpha));
  r.insert(r.end(), ctx.other_roots.begin(), ctx.other_roots.end());
  return r;
}

BigInt norm_linear(const AlgebraicContext& ctx, long a, long b) {
  const Precision p = ctx.working;
  ComplexBox prod = ComplexBox::real(Interval::from_int(1, p));
  for (const auto& r : all_roots(ctx)) {
    prod = prod * (r * Interval::from_int(a, p) + Interval::from_int(b, p));
  }
  return require_integer(prod, "norm");
}

BigInt norm_2alpha_minus_1(const AlgebraicContext& ctx) { return norm_linear(ctx, 2, -1); }

Rational norm_fk(const AlgebraicContext& ctx) {
  BigInt num = norm_linear(ctx, 1, -1);
  BigInt den = norm_linear(ctx, ctx.k + 1, -2 * ctx.k);
  if (den == 0) throw DomainError("f_k denominator has zero norm");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational norm_fk_closed_form(long k) {
  require_order(k);
  BigInt kk, k1;
  mpz_ui_pow_ui(kk.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(k));
  mpz_ui_pow_ui(k1.get_mpz_t(), static_cast<unsigned long>(k + 1), static_cast<unsigned long>(k + 1));
  BigInt two;
  mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(k + 1));
  Rational q(BigInt((k - 1) * (k - 1)), BigInt(two * kk - k1));
  q.canonicalize();
  return q;
}

Interval abs_norm_alpha(const AlgebraicContext& ctx) {
  Interval prod = Interval::from_int(1, ctx.working);
  for (const auto& r : all_roots(ctx)) prod = prod * r.abs();
  return prod;
}

std::vector<BigInt> minpoly_fk(long k) {
  require_order(k);
  // alpha = (2k g - 1) / ((k + 1) g - 1) with g = f_k(alpha); clear denominators in Psi.
  using Poly = std::vector<BigInt>;  // lowest degree first
  auto mul = [](const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
  };
  const Poly u{BigInt(-1), BigInt(2 * k)};
  const Poly v{BigInt(-1), BigInt(k + 1)};
  const auto K = static_cast<std::size_t>(k);
  std::vector<Poly> up(K + 1, Poly{BigInt(1)}), vp(K + 1, Poly{BigInt(1)});
  for (std::size_t i = 1; i <= K; ++i) {
    up[i] = mul(up[i - 1], u);
    vp[i] = mul(vp[i - 1], v);
  }
  Poly q(K + 1, BigInt(0));
  for (std::size_t i = 0; i <= K; ++i) {
    const long c = i == K ? 1 : -1;
    Poly term = mul(up[i], vp[K - i]);
    for (std::size_t d = 0; d < term.size(); ++d) q[d] += c * term[d];
  }
  BigInt g = 0;
  for (const auto& c : q) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (q.back() < 0) g = -g;
  for (auto& c : q) c /= g;
  std::reverse(q.begin(), q.end());
  return q;
}

Interval height_fk_bound(long k, Precision prec) {
  require_order(k);
  return log(Interval::from_int(k, prec)) * 3;
}

Interval height_fk_exact(const AlgebraicContext& ctx) {
  const Precision p = ctx.working;
  const auto poly = minpoly_fk(ctx.k);
  Interval sum = log(Interval::from_z(abs(poly.front()), p));
  const Interval one = Interval::from_int(1, p);
  for (const auto& r : all_roots(ctx)) {
    sum = sum + log(max(one, fk_at(ctx.k, r).abs()));
  }
  return sum / ctx.k;
}

}  // namespace klucas
