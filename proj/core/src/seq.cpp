#include "klucas/seq.hpp"

#include <string>

#include "klucas/errors.hpp"

namespace klucas {

void validate(const KIndex& idx) {
  if (idx.k < 2) throw DomainError("order k must be at least 2, got " + std::to_string(idx.k));
  const long lowest = idx.k == 2 ? -1 : 2 - idx.k;
  if (idx.n < lowest) {
    throw DomainError("index n=" + std::to_string(idx.n) + " is below " + std::to_string(lowest) +
                      " for k=" + std::to_string(idx.k));
  }
}

void validate(const EquationInstance& inst) {
  if (inst.k < 2) throw DomainError("order k must be at least 2");
  if (inst.n < 0 || inst.m < 0 || inst.x < 0) {
    throw DomainError("n, m and x must be nonnegative");
  }
}

std::vector<BigInt> lucas_window(long k, long n_max) {
  validate(KIndex{k, 0});
  if (n_max < 0) throw DomainError("n_max must be nonnegative");
  std::vector<BigInt> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  out.emplace_back(2);
  if (n_max == 0) return out;
  out.emplace_back(1);
  // Running sum L_{n-1} + ... + L_{n-k}; the terms below index 0 that it
  // starts with are all zero.
  BigInt window = 3;
  for (long n = 2; n <= n_max; ++n) {
    BigInt next = window;
    window += next;
    if (n - k >= 0) window -= out[static_cast<std::size_t>(n - k)];
    out.push_back(std::move(next));
  }
  return out;
}

BigInt lucas(const KIndex& idx) {
  validate(idx);
  if (idx.n < 0) return (idx.k == 2 && idx.n == -1) ? BigInt(-1) : BigInt(0);
  if (idx.n <= 1) return idx.n == 0 ? BigInt(2) : BigInt(1);
  // Rolling window without keeping the whole prefix.
  const auto k = static_cast<std::size_t>(idx.k);
  std::vector<BigInt> ring(k);
  for (long j = 2 - idx.k; j <= 1; ++j) {
    BigInt v = j == 0 ? 2 : j == 1 ? 1 : (idx.k == 2 && j == -1) ? -1 : 0;
    ring[static_cast<std::size_t>(((j % idx.k) + idx.k) % idx.k)] = v;
  }
  BigInt sum = 0;
  for (const auto& v : ring) sum += v;
  for (long n = 2; n <= idx.n; ++n) {
    auto slot = static_cast<std::size_t>(n % idx.k);
    BigInt next = sum;
    sum += next;
    sum -= ring[slot];
    ring[slot] = std::move(next);
  }
  return ring[static_cast<std::size_t>(idx.n % idx.k)];
}

BigInt power_of(const BigInt& base, long x) {
  if (x < 0) throw DomainError("exponent x must be nonnegative");
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(x));
  return r;
}

BigInt power_term(const KIndex& idx, long x) { return power_of(lucas(idx), x); }

BigInt lhs(const EquationInstance& inst) {
  validate(inst);
  BigInt a = power_term({inst.k, inst.n + 1}, inst.x);
  BigInt b = power_term({inst.k, inst.n}, inst.x);
  BigInt c = power_term({inst.k, inst.n - 1}, inst.x);
  return a + b - c;
}

std::optional<BigInt> closed_form_check(const KIndex& idx) {
  if (idx.k < 2 || idx.n < 2 || idx.n > idx.k + 1) return std::nullopt;
  BigInt p;
  if (idx.n <= idx.k) {
    mpz_mul_2exp(p.get_mpz_t(), BigInt(3).get_mpz_t(), static_cast<mp_bitcnt_t>(idx.n - 2));
    return p;
  }
  mpz_mul_2exp(p.get_mpz_t(), BigInt(3).get_mpz_t(), static_cast<mp_bitcnt_t>(idx.k - 1));
  return BigInt(p - 2);
}

}  // namespace klucas
