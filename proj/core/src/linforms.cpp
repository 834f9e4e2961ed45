#include "klucas/linforms.hpp"

#include "klucas/errors.hpp"

namespace klucas {

MRange m_range(long n, long x) {
  if (n < 0) throw DomainError("n must be nonnegative");
  if (x < 1) throw DomainError("x must be at least 1");
  return {n * x - 3, (n + 3) * x + 3};
}

Interval matveev_lower(const MatveevInput& inp) {
  if (inp.t < 1 || inp.D < 1) throw DomainError("Matveev input needs t >= 1 and D >= 1");
  if (static_cast<long>(inp.A.size()) != inp.t) throw DomainError("Matveev input needs t values A_i");
  const Precision p = inp.B.precision();
  if (inp.B.lo_d() < 1.0) throw DomainError("Matveev input needs B >= 1");
  const Interval t = Interval::from_int(inp.t, p);
  const Interval D = Interval::from_int(inp.D, p);
  Interval v = Interval::from_decimal("1.4", p) * pow(Interval::from_int(30, p), inp.t + 3) *
               pow(t, 4) * sqrt(t) * sqr(D) * (log(D) + 1) * (log(inp.B) + 1);
  for (const auto& a : inp.A) {
    if (a.lo().sign() < 0) throw DomainError("Matveev A_i must be nonnegative");
    v = v * a;
  }
  return -v;
}

Interval lmn_lower(const LmnInput& inp) {
  if (inp.D < 1) throw DomainError("LMN input needs D >= 1");
  if (!inp.logA1.is_positive() || !inp.logA2.is_positive() || !inp.bprime.is_positive()) {
    throw DomainError("LMN input needs positive log A_i and b'");
  }
  const Precision p = inp.bprime.precision();
  Interval m = max(log(inp.bprime) + Interval::from_decimal("0.14", p),
                   max(Interval::from_q(Rational(21, inp.D), p), Interval::from_q(Rational(1, 2), p)));
  Interval v = Interval::from_decimal("24.34", p) * pow(Interval::from_int(inp.D, p), 4) * sqr(m) *
               inp.logA1 * inp.logA2;
  return -v;
}

BigInt guz_resolve(int r, const Interval& T) {
  if (r < 1) throw DomainError("guz_resolve needs r >= 1");
  const Precision p = T.precision();
  Interval floor_T = pow(Interval::from_int(4L * r * r, p), r);
  if (!T.certainly_greater(floor_T)) throw DomainError("guz_resolve needs T > (4r^2)^r");
  Interval b = pow(Interval::from_int(2, p), r) * T * pow(log(T), r);
  return b.ceil_hi();
}

namespace {

Interval dec(const char* s, Precision p) { return Interval::from_decimal(s, p); }

}  // namespace

EnvelopeBounds envelope_bounds(long k, std::optional<long> n, std::optional<Interval> m,
                               Precision prec) {
  if (k < 2) throw DomainError("order k must be at least 2");
  const Interval K = Interval::from_int(k, prec);
  const Interval lk = log(K);
  EnvelopeBounds e;
  e.k = k;
  if (m) e.x_small_n = dec("3.1e14", prec) * pow(K, 5) * sqr(lk) * log(*m);
  e.m_small_n = dec("6.3e32", prec) * pow(K, 10) * pow(lk, 5);
  if (n) {
    if (*n < 2) throw DomainError("the n-dependent envelope needs n >= 2");
    const Interval N = Interval::from_int(*n, prec);
    e.x_large_n = dec("2.6e15", prec) * N * pow(K, 4) * pow(lk, 3) * log(N);
  }
  e.n_large_n = dec("5.5e27", prec) * pow(K, 6) * pow(lk, 6);
  e.x_large_n_k = dec("8.7e30", prec) * pow(K, 7) * pow(lk, 8);
  e.m_large_n = dec("5.6e44", prec) * pow(K, 10) * pow(lk, 12);
  const Interval ln2 = Interval::ln2(prec);
  auto two_pow = [&](const char* c) { return exp(dec(c, prec) * K * ln2); };
  e.m_small_n_below_2_028k = e.m_small_n.certainly_less(two_pow("0.28"));
  e.n_large_n_below_2_024k = e.n_large_n.certainly_less(two_pow("0.24"));
  e.m_large_n_below_2_039k = e.m_large_n.certainly_less(two_pow("0.39"));
  return e;
}

MatveevInput gamma1_matveev_input(long k, const Interval& m, Precision prec) {
  if (k < 2) throw DomainError("order k must be at least 2");
  const Interval K = Interval::from_int(k, prec);
  const Interval l3 = log(Interval::from_int(3, prec));
  MatveevInput in;
  in.t = 4;
  in.D = k;
  in.B = m.with_precision(prec);
  in.A = {K * log(K) * 6, dec("0.7", prec), K * l3, K * l3};
  in.provenance = {"k*h((2a-1)f) < k(log 3 + 3 log k) <= 6k log k", "log a < 0.7",
                   "k*h(3) = k log 3", "printed as k log 3"};
  return in;
}

Interval matveev_x_bound(long k, const Interval& m, Precision prec) {
  Interval lower = matveev_lower(gamma1_matveev_input(k, m, prec));
  return (log(Interval::from_int(3, prec)) - lower) / Interval::ln2(prec);
}

std::string to_string(FormId id) {
  switch (id) {
    case FormId::G1: return "G1";
    case FormId::G1small: return "G1small";
    case FormId::G2: return "G2";
    case FormId::G3: return "G3";
    case FormId::G4: return "G4";
    case FormId::G5: return "G5";
  }
  return "?";
}

FormId parse_form_id(const std::string& s) {
  for (FormId id : {FormId::G1, FormId::G1small, FormId::G2, FormId::G3, FormId::G4, FormId::G5}) {
    if (to_string(id) == s) return id;
  }
  throw DomainError("unknown linear form '" + s + "'");
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

LinearFormValue gamma_value(FormId id, const EquationInstance& inst, const AlgebraicContext& ctx) {
  validate(inst);
  if (inst.k != ctx.k) throw DomainError("context built for a different k");
  const long k = inst.k, n = inst.n, m = inst.m, x = inst.x;
  const Precision p = ctx.working;
  const Interval one = Interval::from_int(1, p);
  const Interval two = Interval::from_int(2, p);
  const Interval three = Interval::from_int(3, p);
  const Interval& a = ctx.alpha;
  const Interval F = ctx.fk_alpha * ctx.two_alpha_minus_1;
  const Interval logF = ctx.log_fk + ctx.log_2am1;
  auto need = [&](bool ok, const char* what) {
    if (!ok) throw DomainError(to_string(id) + " is defined only for " + what);
  };

  LinearFormValue out;
  out.form_id = id;
  Interval gamma(p), lambda(p), bound(p);
  switch (id) {
    case FormId::G1: {
      need(n >= 3 && m >= 1, "n >= 3, m >= 1");
      gamma = pow(three, -x) * pow(two, -(n - 1) * x) * F * pow(a, m - 1) - 1;
      lambda = logF + ctx.log_alpha * (m - 1) - ctx.log3 * x - ctx.log2 * ((n - 1) * x);
      bound = three / pow(two, x);
      break;
    }
    case FormId::G1small: {
      need(n <= 2 && m >= 1, "n in {0, 1, 2}, m >= 1");
      const long delta = n == 0 ? 2 : n == 1 ? 3 : 6;
      const Interval d = Interval::from_int(delta, p);
      gamma = pow(d, -x) * F * pow(a, m - 1) - 1;
      lambda = logF + ctx.log_alpha * (m - 1) - log(d) * x;
      bound = three * pow(two / three, x);
      break;
    }
    case FormId::G2: {
      need(n >= 3 && m >= 1 && x >= 1, "n >= 3, m >= 1, x >= 1");
      const Interval w = pow(two, x) + 1 - pow(two, -x);
      gamma = pow(three * pow(two, n - 2), x) * w / F * pow(a, -(m - 1)) - 1;
      lambda = ctx.log3 * x + ctx.log2 * ((n - 2) * x) + log(w) - logF - ctx.log_alpha * (m - 1);
      bound = two / pow(a, m - 1);
      break;
    }
    case FormId::G3: {
      need(n > k && x >= 2 && m >= 1, "n > k, x >= 2, m >= 1");
      const Interval L = Interval::from_z(lucas(k, n + 1), p);
      gamma = F * pow(a, m - 1) * pow(L, -x) - 1;
      lambda = logF + ctx.log_alpha * (m - 1) - log(L) * x;
      bound = one / pow(Interval::from_decimal("1.4", p), x);
      break;
    }
    case FormId::G4: {
      need(n > k && x >= 2, "n > k, x >= 2");
      gamma = pow(F, 1 - x) * pow(a, m - 1 - (n - 1) * x) - 1;
      lambda = logF * (1 - x) + ctx.log_alpha * (m - 1 - (n - 1) * x);
      const Interval e = min(Interval::from_q(Rational(7 * n, 10), p), Interval::from_int(x, p));
      bound = Interval::from_int(27, p) / exp(e * ctx.log_alpha);
      break;
    }
    case FormId::G5: {
      need(n > k && x >= 2, "n > k, x >= 2");
      const Interval w = one + pow(a, -x) - pow(a, -2 * x);
      gamma = pow(F, x - 1) * pow(a, (n - 1) * x - (m - 1)) * w - 1;
      lambda = logF * (x - 1) + ctx.log_alpha * ((n - 1) * x - (m - 1)) + log(w);
      const Interval e = Interval::from_q(Rational(97 * n - 500, 100), p);
      bound = three / exp(e * ctx.log_alpha);
      break;
    }
  }
  out.gamma_value = gamma;
  out.lambda_value = lambda;
  out.bound = bound;
  const Interval g = abs(gamma);
  if (g.certainly_less(bound)) {
    out.bound_holds = Tri::True;
  } else if (mpfr_greaterequal_p(g.lo().get(), bound.hi().get())) {
    out.bound_holds = Tri::False;
  } else {
    out.bound_holds = Tri::Unknown;
  }
  return out;
}

}  // namespace klucas
