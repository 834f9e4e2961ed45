#include "klucas/contfrac.hpp"

#include <algorithm>
#include <cmath>

#include "klucas/errors.hpp"

namespace klucas {

namespace {

std::vector<BigInt> cf_of_rational(Rational r, std::size_t max_count) {
  std::vector<BigInt> out;
  r.canonicalize();
  BigInt num = r.get_num(), den = r.get_den();
  while (den != 0 && out.size() < max_count) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    BigInt rem = num - q * den;
    out.push_back(q);
    num = den;
    den = rem;
  }
  return out;
}

void fill_convergents(CFExpansion& cf) {
  BigInt p_prev = 1, q_prev = 0, p = cf.quotients.front(), q = 1;
  cf.convergents.clear();
  cf.convergents.emplace_back(p, q);
  for (std::size_t i = 1; i < cf.quotients.size(); ++i) {
    BigInt pn = cf.quotients[i] * p + p_prev;
    BigInt qn = cf.quotients[i] * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = pn;
    q = qn;
    cf.convergents.emplace_back(p, q);
  }
}

}  // namespace

CFExpansion cf_expand_prefix(const Interval& v, std::size_t max_count) {
  // Both endpoints are exact rationals; a prefix shared by their canonical
  // expansions, with both continuing past it, holds on the whole interval.
  const auto lo = cf_of_rational(v.lo_exact(), max_count + 1);
  const auto hi = cf_of_rational(v.hi_exact(), max_count + 1);
  CFExpansion cf;
  for (std::size_t i = 0; i < max_count; ++i) {
    if (i + 1 >= lo.size() || i + 1 >= hi.size() || lo[i] != hi[i]) break;
    cf.quotients.push_back(lo[i]);
  }
  if (!cf.quotients.empty()) fill_convergents(cf);
  return cf;
}

CFExpansion cf_expand(const Interval& v, std::size_t count) {
  CFExpansion cf = cf_expand_prefix(v, count);
  if (cf.quotients.size() < count) {
    throw PrecisionError("only " + std::to_string(cf.quotients.size()) + " of " +
                         std::to_string(count) + " partial quotients are certified at " +
                         std::to_string(v.precision()) + " bits");
  }
  return cf;
}

Interval log3_over_log2(Precision prec) {
  return log(Interval::from_int(3, prec)) / Interval::ln2(prec);
}

Rational legendre_gap(const CFExpansion& cf, const BigInt& denom_bound) {
  if (cf.convergents.empty() || cf.convergents.back().second <= denom_bound) {
    throw DomainError("expansion too short: the last convergent denominator must exceed the bound");
  }
  BigInt a_max = 0;
  for (std::size_t i = 1; i < cf.quotients.size(); ++i) a_max = std::max(a_max, BigInt(cf.quotients[i]));
  return Rational(BigInt(1), a_max + 2);
}

TwoLogMin min_two_log_form(long x, Precision prec) {
  if (x < 2) throw DomainError("min_two_log_form needs x >= 2");
  const Interval l3 = log(Interval::from_int(3, prec));
  const Interval l2 = Interval::ln2(prec);
  const Interval target = l3 * (x - 1);
  const BigInt base = (target / l2).floor_lo();
  std::vector<std::pair<BigInt, Interval>> cands;
  for (long d = -1; d <= 2; ++d) {
    BigInt z = base + d;
    if (z < 0) continue;
    cands.emplace_back(z, abs(target - l2 * Interval::from_z(z, prec)));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i) {
    if (cands[i].second.mid_d() < cands[best].second.mid_d()) best = i;
  }
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (i != best && !cands[best].second.certainly_less(cands[i].second)) {
      throw PrecisionError("cannot separate the candidate minima at x = " + std::to_string(x));
    }
  }
  return {x, cands[best].first, cands[best].second};
}

namespace {

Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}

}  // namespace

Rational small_x_delta(SmallXVariant variant, long x) {
  if (x < 0) throw DomainError("x must be nonnegative");
  const auto ux = static_cast<unsigned long>(x);
  BigInt a, b;
  switch (variant) {
    case SmallXVariant::NAtLeast3:
      mpz_ui_pow_ui(a.get_mpz_t(), 2, ux);
      mpz_ui_pow_ui(b.get_mpz_t(), 2, 2 * ux);
      return canonical(Rational(a - 1, b));
    case SmallXVariant::N1:
      mpz_ui_pow_ui(a.get_mpz_t(), 2, ux);
      mpz_ui_pow_ui(b.get_mpz_t(), 3, ux);
      return canonical(Rational(2 * (a - 1), b));
    case SmallXVariant::N2:
      mpz_ui_pow_ui(a.get_mpz_t(), 3, ux);
      mpz_ui_pow_ui(b.get_mpz_t(), 6, ux);
      return canonical(Rational(a - 1, b));
  }
  throw DomainError("unknown variant");
}

std::vector<RefutationRow> small_x_refutation(double k_threshold, SmallXVariant variant,
                                              const SmallXRegime& regime, long x_lo, long x_hi,
                                              Precision prec) {
  if (x_lo < 2 || x_hi < x_lo) throw DomainError("need 2 <= x_lo <= x_hi");
  if (std::isnan(k_threshold) || k_threshold < 0) throw DomainError("k_threshold must be >= 0");
  Interval tail(prec);
  if (!std::isinf(k_threshold)) {
    const Interval kk = Interval::from_double(k_threshold, prec);
    tail = Interval::from_q(regime.coef, prec) /
           exp(Interval::from_q(regime.rate, prec) * kk * Interval::ln2(prec));
  }
  std::vector<RefutationRow> rows;
  for (long x = x_lo; x <= x_hi; ++x) {
    TwoLogMin mn = min_two_log_form(x, prec);
    RefutationRow r;
    r.x = x;
    r.z = mn.z;
    r.min_value = mn.value;
    r.rhs = tail + Interval::from_q(small_x_delta(variant, x), prec);
    r.refuted = r.rhs.certainly_less(r.min_value);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace klucas
