#pragma once

// Independent reference computations used by the tests. They share no code
// with the library beyond the GMP/MPFR types.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

// L_{2-k} .. L_{n_max} by the plain recurrence; element i holds L_{i + 2 - k}.
inline std::vector<mpz_class> lucas_table(long k, long n_max) {
  const long off = k - 2;
  std::vector<mpz_class> t(static_cast<std::size_t>(n_max + off + 1), 0);
  auto at = [&](long n) -> mpz_class& { return t[static_cast<std::size_t>(n + off)]; };
  at(0) = 2;
  if (n_max >= 1) at(1) = 1;
  for (long n = 2; n <= n_max; ++n) {
    mpz_class s = 0;
    for (long j = 1; j <= k; ++j) s += at(n - j);
    at(n) = s;
  }
  return t;
}

inline mpz_class lucas(long k, long n) {
  if (k == 2 && n == -1) return -1;
  if (n < 0) return 0;
  return lucas_table(k, n).back();
}

// Psi_k(q) = q^k - q^{k-1} - ... - 1 exactly.
inline mpq_class psi(long k, const mpq_class& q) {
  mpq_class acc = 1;
  for (long i = 0; i < k; ++i) acc = acc * q - 1;
  return acc;
}

// prod (a alpha_i + b) = a^k (-1)^k Psi(-b/a).
inline mpq_class norm_linear(long k, long a, long b) {
  mpz_class ak;
  mpz_pow_ui(ak.get_mpz_t(), mpz_class(a).get_mpz_t(), static_cast<unsigned long>(k));
  mpq_class v = mpq_class(ak) * psi(k, mpq_class(-b, a));
  if (k % 2) v = -v;
  v.canonicalize();
  return v;
}

// Dominant root by plain bisection on [1.5, 2] with MPFR at the given precision.
inline double alpha_bisect(long k) {
  mpfr_t lo, hi, mid, val, tmp;
  mpfr_inits2(200, lo, hi, mid, val, tmp, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(lo, 1.5, MPFR_RNDN);
  mpfr_set_d(hi, 2.0, MPFR_RNDN);
  for (int it = 0; it < 180; ++it) {
    mpfr_add(mid, lo, hi, MPFR_RNDN);
    mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
    // Horner for x^k - x^{k-1} - ... - 1.
    mpfr_set_ui(val, 1, MPFR_RNDN);
    for (long i = 0; i < k; ++i) {
      mpfr_mul(val, val, mid, MPFR_RNDN);
      mpfr_sub_ui(val, val, 1, MPFR_RNDN);
    }
    if (mpfr_sgn(val) > 0) {
      mpfr_set(hi, mid, MPFR_RNDN);
    } else {
      mpfr_set(lo, mid, MPFR_RNDN);
    }
  }
  const double r = mpfr_get_d(lo, MPFR_RNDN);
  mpfr_clears(lo, hi, mid, val, tmp, static_cast<mpfr_ptr>(nullptr));
  return r;
}

// Partial quotients of log 3 / log 2 from a plain MPFR quotient rounded to a rational.
inline std::vector<mpz_class> cf_log3_log2(std::size_t count, mpfr_prec_t bits) {
  mpfr_t a, b;
  mpfr_inits2(bits, a, b, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_ui(a, 3, MPFR_RNDN);
  mpfr_log(a, a, MPFR_RNDN);
  mpfr_const_log2(b, MPFR_RNDN);
  mpfr_div(a, a, b, MPFR_RNDN);
  mpz_class m;
  const long e = mpfr_get_z_2exp(m.get_mpz_t(), a);
  mpz_class den = 1;
  if (e >= 0) {
    m <<= e;
  } else {
    den <<= -e;
  }
  mpfr_clears(a, b, static_cast<mpfr_ptr>(nullptr));
  std::vector<mpz_class> q;
  while (den != 0 && q.size() < count) {
    mpz_class t;
    mpz_fdiv_q(t.get_mpz_t(), m.get_mpz_t(), den.get_mpz_t());
    q.push_back(t);
    mpz_class r = m - t * den;
    m = den;
    den = r;
  }
  return q;
}

using Vec = std::vector<mpz_class>;
using Basis = std::vector<Vec>;  // columns

inline mpz_class dot(const Vec& a, const Vec& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Textbook Gram-Schmidt over Q: returns |b*_i|^2 and mu.
inline void gram_schmidt(const Basis& b, std::vector<mpq_class>& norms,
                         std::vector<std::vector<mpq_class>>& mu) {
  const std::size_t n = b.size();
  std::vector<std::vector<mpq_class>> bs(n, std::vector<mpq_class>(b[0].size()));
  norms.assign(n, 0);
  mu.assign(n, std::vector<mpq_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < b[i].size(); ++t) bs[i][t] = b[i][t];
    for (std::size_t j = 0; j < i; ++j) {
      mpq_class num = 0;
      for (std::size_t t = 0; t < b[i].size(); ++t) num += mpq_class(b[i][t]) * bs[j][t];
      mu[i][j] = num / norms[j];
      for (std::size_t t = 0; t < b[i].size(); ++t) bs[i][t] -= mu[i][j] * bs[j][t];
    }
    for (std::size_t t = 0; t < b[i].size(); ++t) norms[i] += bs[i][t] * bs[i][t];
  }
}

// Size reduction and the Lovasz condition with parameter 3/4.
inline bool lll_reduced(const Basis& b) {
  std::vector<mpq_class> norms;
  std::vector<std::vector<mpq_class>> mu;
  gram_schmidt(b, norms, mu);
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (abs(mu[i][j]) > mpq_class(1, 2)) return false;
    }
    if (i > 0) {
      const mpq_class lhs = norms[i] + mu[i][i - 1] * mu[i][i - 1] * norms[i - 1];
      if (lhs < mpq_class(3, 4) * norms[i - 1]) return false;
    }
  }
  return true;
}

// Cofactor expansion; fine for dim <= 6.
inline mpz_class det(const Basis& b) {
  const std::size_t n = b.size();
  if (n == 1) return b[0][0];
  mpz_class s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Basis minor;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == c) continue;
      Vec col(b[j].begin() + 1, b[j].end());
      minor.push_back(col);
    }
    const mpz_class d = det(minor);
    s += (c % 2 ? -1 : 1) * b[c][0] * d;
  }
  return s;
}

// min |B z - y|^2 over integer z with |z_i| <= R, excluding B z = y.
inline mpz_class box_min_dist_sq(const Basis& b, const Vec& y, long R) {
  const std::size_t n = b.size(), d = y.size();
  std::vector<long> z(n, -R);
  mpz_class best = -1;
  for (;;) {
    Vec v(d, 0);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t t = 0; t < d; ++t) v[t] += z[j] * b[j][t];
    }
    mpz_class s = 0;
    for (std::size_t t = 0; t < d; ++t) {
      const mpz_class e = v[t] - y[t];
      s += e * e;
    }
    if (s != 0 && (best < 0 || s < best)) best = s;
    std::size_t i = 0;
    while (i < n && z[i] == R) z[i++] = -R;
    if (i == n) break;
    ++z[i];
  }
  return best;
}

// Nonsingular dim x dim integer matrix, as columns, with entries in [-bound, bound].
inline Basis random_nonsingular(std::mt19937_64& rng, std::size_t dim, long bound = 50) {
  std::uniform_int_distribution<long> d(-bound, bound);
  for (;;) {
    Basis cols(dim, Vec(dim));
    for (auto& c : cols) {
      for (auto& e : c) e = d(rng);
    }
    if (det(cols) != 0) return cols;
  }
}

// -L for L = 1.4 * 30^{t+3} * t^{4.5} * D^2 (1 + log D)(1 + log B) * prod A_i.
inline long double matveev_ref(long t, long D, long double B, const std::vector<long double>& A) {
  long double v = 1.4L * std::pow(30.0L, t + 3) * std::pow(static_cast<long double>(t), 4.5L) *
                  D * D * (1 + std::log(static_cast<long double>(D))) * (1 + std::log(B));
  for (auto a : A) v *= a;
  return -v;
}

// -24.34 D^4 max{log b' + 0.14, 21/D, 1/2}^2 log A1 log A2.
inline long double lmn_ref(long D, long double bprime, long double l1, long double l2) {
  const long double m = std::max({std::log(bprime) + 0.14L, 21.0L / D, 0.5L});
  return -24.34L * std::pow(static_cast<long double>(D), 4) * m * m * l1 * l2;
}

// Largest p with p / (log p)^r < T, by bisection on log p past the minimum at e^r.
inline long double guz_threshold(int r, long double T) {
  long double lo = r, hi = 4000;
  for (int i = 0; i < 200; ++i) {
    const long double mid = (lo + hi) / 2;
    const long double f = std::exp(mid) / std::pow(mid, r);
    (f < T ? lo : hi) = mid;
  }
  return std::exp(hi);
}

// max over a in the box |a_i| <= A (a != 0) of log(1 / |eta0 + sum a_i eta_i|),
// skipping vectors for which skip(a) holds. Returns -inf when nothing qualifies.
inline long double max_log_inverse(const std::vector<double>& etas, double eta0, long A,
                                   const std::function<bool(const std::vector<long>&)>& skip) {
  const std::size_t n = etas.size();
  std::vector<long> a(n, -A);
  long double best = -std::numeric_limits<long double>::infinity();
  for (;;) {
    if (!skip(a)) {
      long double lam = eta0;
      for (std::size_t j = 0; j < n; ++j) lam += static_cast<long double>(a[j]) * etas[j];
      if (lam != 0) best = std::max(best, std::log(1.0L / std::fabs(lam)));
    }
    std::size_t j = 0;
    while (j < n && a[j] == A) a[j++] = -A;
    if (j == n) break;
    ++a[j];
  }
  return best;
}

}  // namespace oracle
