#include "klucas/lattice.hpp"

#include <string>
#include <utility>

#include "klucas/errors.hpp"

namespace klucas {

namespace {

BigInt dot(const IntVector& a, const IntVector& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_square(const LatticeBasis& b) {
  if (b.cols.size() != b.dim) throw DomainError("basis must have dim columns");
  for (const auto& c : b.cols) {
    if (c.size() != b.dim) throw DomainError("basis columns must have length dim");
  }
}

// Nearest integer to a/b for b > 0, ties rounded up.
BigInt round_div(const BigInt& a, const BigInt& b) {
  BigInt num = 2 * a + b;
  BigInt den = 2 * b;
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

BigInt exact_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Rational dist_to_nearest_int(const Rational& q) {
  BigInt f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  Rational frac = q - Rational(f);
  Rational other = Rational(1) - frac;
  return frac < other ? frac : other;
}

}  // namespace

LatticeBasis LatticeBasis::from_columns(std::vector<IntVector> cols) {
  LatticeBasis b;
  b.dim = cols.size();
  b.cols = std::move(cols);
  check_square(b);
  return b;
}

LatticeBasis LatticeBasis::identity(std::size_t dim) {
  LatticeBasis b;
  b.dim = dim;
  b.cols.assign(dim, IntVector(dim, BigInt(0)));
  for (std::size_t i = 0; i < dim; ++i) b.cols[i][i] = 1;
  return b;
}

GramSchmidtData gram_schmidt(const LatticeBasis& basis) {
  check_square(basis);
  const std::size_t n = basis.dim;
  GramSchmidtData gs;
  gs.bstar_norms_sq.resize(n);
  gs.mu.assign(n, std::vector<Rational>(n, Rational(0)));
  gs.bstar.assign(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = Rational(basis.cols[i][r]);
    std::vector<Rational> bi = v;
    for (std::size_t j = 0; j < i; ++j) {
      Rational mu = dot(bi, gs.bstar[j]) / gs.bstar_norms_sq[j];
      gs.mu[i][j] = mu;
      for (std::size_t r = 0; r < n; ++r) v[r] -= mu * gs.bstar[j][r];
    }
    gs.bstar_norms_sq[i] = dot(v, v);
    if (gs.bstar_norms_sq[i] == 0) throw DomainError("singular basis");
    gs.bstar[i] = std::move(v);
  }
  return gs;
}

LatticeBasis lll_reduce(const LatticeBasis& basis, const Rational& y) {
  check_square(basis);
  if (y <= Rational(1, 4) || y >= 1) throw DomainError("LLL parameter must lie in (1/4, 1)");
  const std::size_t n = basis.dim;
  if (n == 0) return basis;
  const BigInt yp = y.get_num(), yq = y.get_den();
  // 1-based bookkeeping: b[1..n], d[0..n], lam[i][j] for j < i.
  std::vector<IntVector> b(n + 1);
  for (std::size_t i = 0; i < n; ++i) b[i + 1] = basis.cols[i];
  std::vector<BigInt> d(n + 1, BigInt(0));
  std::vector<std::vector<BigInt>> lam(n + 1, std::vector<BigInt>(n + 1, BigInt(0)));
  d[0] = 1;
  d[1] = dot(b[1], b[1]);
  if (d[1] == 0) throw DomainError("singular basis");

  auto red = [&](std::size_t k, std::size_t l) {
    BigInt twice = 2 * lam[k][l];
    if (abs(twice) > d[l]) {
      BigInt q = round_div(lam[k][l], d[l]);
      for (std::size_t r = 0; r < n; ++r) b[k][r] -= q * b[l][r];
      lam[k][l] -= q * d[l];
      for (std::size_t i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
    }
  };

  std::size_t k = 2, kmax = 1;
  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        BigInt u = dot(b[k], b[j]);
        for (std::size_t i = 1; i < j; ++i) u = exact_div(d[i] * u - lam[k][i] * lam[j][i], d[i - 1]);
        if (j < k) {
          lam[k][j] = u;
        } else {
          if (u == 0) throw DomainError("singular basis");
          d[k] = u;
        }
      }
    }
    red(k, k - 1);
    const BigInt& l = lam[k][k - 1];
    if (yq * (d[k] * d[k - 2] + l * l) < yp * d[k - 1] * d[k - 1]) {
      std::swap(b[k], b[k - 1]);
      for (std::size_t j = 1; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
      const BigInt lm = lam[k][k - 1];
      const BigInt B = exact_div(d[k - 2] * d[k] + lm * lm, d[k - 1]);
      for (std::size_t i = k + 1; i <= kmax; ++i) {
        BigInt t = lam[i][k];
        lam[i][k] = exact_div(d[k] * lam[i][k - 1] - lm * t, d[k - 1]);
        lam[i][k - 1] = exact_div(B * t + lm * lam[i][k], d[k]);
      }
      d[k - 1] = B;
      if (k > 2) --k;
    } else {
      for (std::size_t l2 = k - 1; l2-- > 1;) red(k, l2);
      ++k;
    }
  }
  LatticeBasis out;
  out.dim = n;
  out.cols.assign(b.begin() + 1, b.end());
  return out;
}

bool is_lll_reduced(const LatticeBasis& basis, const Rational& y) {
  GramSchmidtData gs = gram_schmidt(basis);
  const std::size_t n = basis.dim;
  const Rational half(1, 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (abs(gs.mu[i][j]) > half) return false;
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    const Rational& mu = gs.mu[i][i - 1];
    // ||b*_i + mu b*_{i-1}||^2 = ||b*_i||^2 + mu^2 ||b*_{i-1}||^2 by orthogonality.
    Rational lhs = gs.bstar_norms_sq[i] + mu * mu * gs.bstar_norms_sq[i - 1];
    if (lhs < y * gs.bstar_norms_sq[i - 1]) return false;
  }
  return true;
}

BigInt determinant(const LatticeBasis& basis) {
  check_square(basis);
  const std::size_t n = basis.dim;
  if (n == 0) return 1;
  // Bareiss fraction-free elimination on the column matrix.
  std::vector<IntVector> a(n, IntVector(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r][c] = basis.cols[c][r];
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t p = 0; p + 1 < n; ++p) {
    if (a[p][p] == 0) {
      std::size_t s = p + 1;
      while (s < n && a[s][p] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[p], a[s]);
      sign = -sign;
    }
    for (std::size_t i = p + 1; i < n; ++i) {
      for (std::size_t j = p + 1; j < n; ++j) {
        a[i][j] = exact_div(a[i][j] * a[p][p] - a[i][p] * a[p][j], prev);
      }
    }
    prev = a[p][p];
  }
  return sign * a[n - 1][n - 1];
}

std::vector<Rational> solve(const LatticeBasis& basis, const IntVector& y) {
  check_square(basis);
  const std::size_t n = basis.dim;
  if (y.size() != n) throw DomainError("target vector has the wrong length");
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = Rational(basis.cols[c][r]);
    a[r][n] = Rational(y[r]);
  }
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t s = p;
    while (s < n && a[s][p] == 0) ++s;
    if (s == n) throw DomainError("singular basis");
    std::swap(a[p], a[s]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == p || a[i][p] == 0) continue;
      Rational f = a[i][p] / a[p][p];
      for (std::size_t j = p; j <= n; ++j) a[i][j] -= f * a[p][j];
    }
  }
  std::vector<Rational> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = a[i][n] / a[i][i];
  return z;
}

DistanceBound distance_lower_bound(const LatticeBasis& reduced, const GramSchmidtData& gs,
                                   const IntVector& y, Precision prec) {
  const std::size_t n = reduced.dim;
  DistanceBound out;
  const std::vector<Rational> z = solve(reduced, y);
  out.y_in_lattice = true;
  for (std::size_t i = n; i-- > 0;) {
    if (z[i].get_den() != 1) {
      out.y_in_lattice = false;
      out.i0 = i;
      out.sigma = dist_to_nearest_int(z[i]);
      break;
    }
  }
  if (out.y_in_lattice) out.sigma = 1;
  out.b1_norm_sq = Rational(dot(reduced.cols[0], reduced.cols[0]));
  out.c2 = 0;
  for (const auto& bs : gs.bstar_norms_sq) {
    Rational r = out.b1_norm_sq / bs;
    if (r > out.c2) out.c2 = r;
  }
  out.c1_sq = out.sigma * out.sigma * out.b1_norm_sq / out.c2;
  out.c1 = sqrt(Interval::from_q(out.c1_sq, prec));
  return out;
}

ApproxLattice build_approx_lattice(const ReductionInstance& inst) {
  const std::size_t n = inst.etas.size();
  if (n == 0) throw DomainError("approximation lattice needs at least one eta");
  if (inst.C <= 0) throw DomainError("C must be positive");
  const Rational quarter(1, 4);
  auto certified_floor = [&](const Interval& eta, const std::string& what) {
    Interval v = Interval::from_z(inst.C, eta.precision()) * eta;
    auto f = v.certified_floor();
    if (!f || !(v.hi_exact() - v.lo_exact() < quarter)) {
      throw FloorAmbiguityError("floor(C*" + what + ") not certified at " +
                                std::to_string(eta.precision()) + " bits");
    }
    return *f;
  };
  ApproxLattice out;
  out.basis = LatticeBasis::identity(n);
  out.floors.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out.floors[j] = certified_floor(inst.etas[j], "eta_" + std::to_string(j + 1));
    out.basis.cols[j][n - 1] = out.floors[j];
  }
  out.y.assign(n, BigInt(0));
  if (inst.eta0) {
    out.floor_eta0 = certified_floor(*inst.eta0, "eta_0");
    out.y[n - 1] = -out.floor_eta0;
  }
  return out;
}

ReductionOutcome analyze_reduction(const ReductionInstance& inst, Precision prec) {
  const std::size_t n = inst.etas.size();
  if (inst.A.size() != n) throw DomainError("need one coefficient bound per eta");
  ApproxLattice lat = build_approx_lattice(inst);
  LatticeBasis red = lll_reduce(lat.basis);
  GramSchmidtData gs = gram_schmidt(red);
  DistanceBound db = distance_lower_bound(red, gs, lat.y, prec);

  ReductionOutcome out;
  out.dim = n;
  out.c1 = db.c1;
  out.c1_sq = db.c1_sq;
  out.c2 = db.c2;
  out.sigma = db.sigma;
  out.b1_norm_sq = db.b1_norm_sq;
  out.y_in_lattice = db.y_in_lattice;
  out.reduced_b1 = red.cols[0];
  BigInt sumA = 0;
  out.S = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sumA += inst.A[i];
    if (i + 1 < n) out.S += Rational(inst.A[i] * inst.A[i]);
  }
  out.T = Rational(1 + sumA, 2);
  out.T.canonicalize();
  out.T_eff = Rational(1 + sumA);
  out.condition_holds = out.c1_sq >= out.T_eff * out.T_eff + out.S;
  out.condition_holds_printed_T = out.c1_sq >= out.T * out.T + out.S;

  const BigInt last = lat.floors[n - 1];
  if (last != 0 && lat.floor_eta0 % last == 0) {
    BigInt a = -lat.floor_eta0 / last;
    if (abs(a) <= inst.A[n - 1]) out.degenerate_a_n = a;
  }

  if (out.condition_holds) {
    Interval root = sqrt(Interval::from_q(out.c1_sq - out.S, prec)) - Interval::from_q(out.T_eff, prec);
    if (root.is_positive()) {
      Interval H = (log(Interval::from_z(inst.C, prec) * inst.c3.with_precision(prec)) - log(root)) /
                   inst.c4.with_precision(prec);
      out.H_value = H;
      BigInt hb;
      mpfr_get_z(hb.get_mpz_t(), H.hi().get(), MPFR_RNDD);
      out.H_bound = hb;
    } else {
      out.condition_holds = false;
    }
  }
  return out;
}

ReductionOutcome reduce_and_bound(const ReductionInstance& inst, Precision prec) {
  ReductionOutcome out = analyze_reduction(inst, prec);
  if (!out.condition_holds) {
    throw ConditionError("c1^2 < T^2 + S (c1 ~ " + out.c1.mid_string(4) +
                         "); increase C and the working precision");
  }
  return out;
}

}  // namespace klucas
