#include "klucas/numeric.hpp"

#include <algorithm>
#include <cstdlib>

#include "klucas/errors.hpp"

namespace klucas {

// ---------------------------------------------------------------- Float

Float::Float(Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

Float::Float(const Float& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Float::Float(Float&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

Float& Float::operator=(const Float& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Float& Float::operator=(Float&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Float::~Float() { mpfr_clear(value_); }

Rational Float::to_rational() const {
  if (!mpfr_number_p(value_)) throw DomainError("non-finite value has no rational form");
  if (mpfr_zero_p(value_)) return Rational(0);
  BigInt mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), value_);
  Rational r(mant);
  if (e >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}

// ---------------------------------------------------------------- Interval

namespace {

Precision join(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

std::string format_directed(mpfr_srcptr v, int digits, char mode) {
  char* buf = nullptr;
  int n = 0;
  if (mode == 'D') {
    n = mpfr_asprintf(&buf, "%.*RDe", digits, v);
  } else if (mode == 'U') {
    n = mpfr_asprintf(&buf, "%.*RUe", digits, v);
  } else {
    n = mpfr_asprintf(&buf, "%.*RNe", digits, v);
  }
  if (n < 0 || buf == nullptr) return "?";
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

}  // namespace

Interval::Interval(Precision prec) : lo_(prec), hi_(prec) {}

Interval Interval::from_int(long v, Precision prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
  mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
  return r;
}

Interval Interval::from_z(const BigInt& v, Precision prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_q(const Rational& value, Precision prec) {
  Rational v = value;
  v.canonicalize();
  Interval r(prec);
  mpfr_set_q(r.lo_.get(), v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), v.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_double(double v, Precision prec) {
  Interval r(prec);
  mpfr_set_d(r.lo_.get(), v, MPFR_RNDD);
  mpfr_set_d(r.hi_.get(), v, MPFR_RNDU);
  return r;
}

Interval Interval::from_decimal(const std::string& text, Precision prec) {
  Interval r(prec);
  if (mpfr_set_str(r.lo_.get(), text.c_str(), 10, MPFR_RNDD) != 0 ||
      mpfr_set_str(r.hi_.get(), text.c_str(), 10, MPFR_RNDU) != 0) {
    throw DomainError("not a decimal number: '" + text + "'");
  }
  return r;
}

Interval Interval::from_bounds(const Float& lo, const Float& hi) {
  if (mpfr_cmp(lo.get(), hi.get()) > 0) throw DomainError("interval bounds out of order");
  Interval r(std::max(lo.precision(), hi.precision()));
  mpfr_set(r.lo_.get(), lo.get(), MPFR_RNDD);
  mpfr_set(r.hi_.get(), hi.get(), MPFR_RNDU);
  return r;
}

Interval Interval::ln2(Precision prec) {
  Interval r(prec);
  mpfr_const_log2(r.lo_.get(), MPFR_RNDD);
  mpfr_const_log2(r.hi_.get(), MPFR_RNDU);
  return r;
}

double Interval::mid_d() const { return mid().to_double(); }

Float Interval::mid() const {
  Float m(precision() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m;
}

Float Interval::width() const {
  Float w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

double Interval::width_d() const { return mpfr_get_d(width().get(), MPFR_RNDU); }

bool Interval::contains(const Interval& other) const {
  return mpfr_lessequal_p(lo_.get(), other.lo_.get()) &&
         mpfr_lessequal_p(other.hi_.get(), hi_.get());
}

bool Interval::contains(const BigInt& v) const {
  return mpfr_cmp_z(lo_.get(), v.get_mpz_t()) <= 0 && mpfr_cmp_z(hi_.get(), v.get_mpz_t()) >= 0;
}

bool Interval::contains(const Rational& v) const {
  return mpfr_cmp_q(lo_.get(), v.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), v.get_mpq_t()) >= 0;
}

bool Interval::contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }

bool Interval::certainly_less(const Interval& other) const {
  return mpfr_less_p(hi_.get(), other.lo_.get());
}

std::optional<BigInt> Interval::unique_integer() const {
  if (!mpfr_number_p(lo_.get()) || !mpfr_number_p(hi_.get())) return std::nullopt;
  BigInt c;
  mpfr_get_z(c.get_mpz_t(), lo_.get(), MPFR_RNDU);
  BigInt f;
  mpfr_get_z(f.get_mpz_t(), hi_.get(), MPFR_RNDD);
  if (c == f) return c;
  return std::nullopt;
}

std::optional<BigInt> Interval::certified_floor() const {
  if (!mpfr_number_p(lo_.get()) || !mpfr_number_p(hi_.get())) return std::nullopt;
  BigInt a = floor_lo();
  BigInt b;
  mpfr_get_z(b.get_mpz_t(), hi_.get(), MPFR_RNDD);
  if (a == b) return a;
  return std::nullopt;
}

BigInt Interval::floor_lo() const {
  if (!mpfr_number_p(lo_.get())) throw PrecisionError("non-finite interval endpoint");
  BigInt z;
  mpfr_get_z(z.get_mpz_t(), lo_.get(), MPFR_RNDD);
  return z;
}

BigInt Interval::ceil_hi() const {
  if (!mpfr_number_p(hi_.get())) throw PrecisionError("non-finite interval endpoint");
  BigInt z;
  mpfr_get_z(z.get_mpz_t(), hi_.get(), MPFR_RNDU);
  return z;
}

Interval Interval::with_precision(Precision prec) const {
  Interval r(prec);
  mpfr_set(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

Interval& Interval::operator+=(const Interval& rhs) { return *this = *this + rhs; }
Interval& Interval::operator-=(const Interval& rhs) { return *this = *this - rhs; }
Interval& Interval::operator*=(const Interval& rhs) { return *this = *this * rhs; }
Interval& Interval::operator/=(const Interval& rhs) { return *this = *this / rhs; }

std::string Interval::to_string(int digits) const {
  return "[" + lo_string(digits) + ", " + hi_string(digits) + "]";
}

std::string Interval::lo_string(int digits) const { return format_directed(lo_.get(), digits, 'D'); }
std::string Interval::hi_string(int digits) const { return format_directed(hi_.get(), digits, 'U'); }
std::string Interval::mid_string(int digits) const {
  return format_directed(mid().get(), digits, 'N');
}

Interval operator+(const Interval& a, const Interval& b) {
  Precision p = join(a, b);
  Float lo(p), hi(p);
  mpfr_add(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return Interval::from_bounds(lo, hi);
}

Interval operator-(const Interval& a, const Interval& b) {
  Precision p = join(a, b);
  Float lo(p), hi(p);
  mpfr_sub(lo.get(), a.lo().get(), b.hi().get(), MPFR_RNDD);
  mpfr_sub(hi.get(), a.hi().get(), b.lo().get(), MPFR_RNDU);
  return Interval::from_bounds(lo, hi);
}

namespace {

using BinOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

// Min/max over the four endpoint combinations, rounded outward.
Interval corners(const Interval& a, const Interval& b, BinOp op) {
  Precision p = join(a, b);
  Float lo(p), hi(p), t(p);
  mpfr_srcptr as[2] = {a.lo().get(), a.hi().get()};
  mpfr_srcptr bs[2] = {b.lo().get(), b.hi().get()};
  bool first = true;
  for (auto x : as) {
    for (auto y : bs) {
      op(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      op(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return Interval::from_bounds(lo, hi);
}

}  // namespace

Interval operator*(const Interval& a, const Interval& b) { return corners(a, b, mpfr_mul); }

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw DomainError("interval division by an interval containing zero");
  return corners(a, b, mpfr_div);
}

Interval operator+(const Interval& a, long b) { return a + Interval::from_int(b, a.precision()); }
Interval operator-(const Interval& a, long b) { return a - Interval::from_int(b, a.precision()); }
Interval operator-(long a, const Interval& b) { return Interval::from_int(a, b.precision()) - b; }
Interval operator*(const Interval& a, long b) { return a * Interval::from_int(b, a.precision()); }
Interval operator*(long a, const Interval& b) { return b * a; }
Interval operator/(const Interval& a, long b) { return a / Interval::from_int(b, a.precision()); }
Interval operator/(long a, const Interval& b) { return Interval::from_int(a, b.precision()) / b; }

Interval abs(const Interval& x) {
  if (x.lo().sign() >= 0) return x;
  if (x.hi().sign() <= 0) return -x;
  Float lo(x.precision()), hi(x.precision());
  mpfr_neg(hi.get(), x.lo().get(), MPFR_RNDU);
  mpfr_max(hi.get(), hi.get(), x.hi().get(), MPFR_RNDU);
  return Interval::from_bounds(lo, hi);
}

namespace {

using UnOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

// Image of an increasing function.
Interval monotone(const Interval& x, UnOp op) {
  Float lo(x.precision()), hi(x.precision());
  op(lo.get(), x.lo().get(), MPFR_RNDD);
  op(hi.get(), x.hi().get(), MPFR_RNDU);
  return Interval::from_bounds(lo, hi);
}

}  // namespace

Interval sqr(const Interval& x) { return pow(x, 2); }

Interval sqrt(const Interval& x) {
  if (x.lo().sign() < 0) throw DomainError("sqrt of an interval reaching below zero");
  return monotone(x, mpfr_sqrt);
}

Interval log(const Interval& x) {
  if (x.lo().sign() <= 0) throw DomainError("log of an interval not strictly positive");
  return monotone(x, mpfr_log);
}

Interval exp(const Interval& x) { return monotone(x, mpfr_exp); }

Interval pow(const Interval& x, long n) {
  if (n == 0) return Interval::from_int(1, x.precision());
  if (n < 0) return 1 / pow(x, -n);
  unsigned long e = static_cast<unsigned long>(n);
  const Interval base = (n % 2 == 0) ? abs(x) : x;
  Float lo(x.precision()), hi(x.precision());
  mpfr_pow_ui(lo.get(), base.lo().get(), e, MPFR_RNDD);
  mpfr_pow_ui(hi.get(), base.hi().get(), e, MPFR_RNDU);
  return Interval::from_bounds(lo, hi);
}

Interval max(const Interval& a, const Interval& b) {
  Precision p = join(a, b);
  Float lo(p), hi(p);
  mpfr_max(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return Interval::from_bounds(lo, hi);
}

Interval min(const Interval& a, const Interval& b) {
  Precision p = join(a, b);
  Float lo(p), hi(p);
  mpfr_min(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_min(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return Interval::from_bounds(lo, hi);
}

Interval hull(const Interval& a, const Interval& b) {
  Precision p = join(a, b);
  Float lo(p), hi(p);
  mpfr_min(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
  mpfr_max(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
  return Interval::from_bounds(lo, hi);
}

// ---------------------------------------------------------------- ComplexBox

ComplexBox ComplexBox::real(const Interval& r) { return {r, Interval(r.precision())}; }

Interval ComplexBox::norm_sq() const { return sqr(re) + sqr(im); }

Interval ComplexBox::abs() const { return sqrt(norm_sq()); }

ComplexBox ComplexBox::midpoint() const {
  Float r = re.mid(), i = im.mid();
  return {Interval::from_bounds(r, r).with_precision(precision()),
          Interval::from_bounds(i, i).with_precision(precision())};
}

std::string ComplexBox::to_string(int digits) const {
  return re.to_string(digits) + " + " + im.to_string(digits) + "i";
}

ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) { return {a.re + b.re, a.im + b.im}; }
ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) { return {a.re - b.re, a.im - b.im}; }

ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexBox operator/(const ComplexBox& a, const ComplexBox& b) {
  Interval d = b.norm_sq();
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

ComplexBox operator*(const ComplexBox& a, const Interval& b) { return {a.re * b, a.im * b}; }
ComplexBox operator+(const ComplexBox& a, const Interval& b) { return {a.re + b, a.im}; }
ComplexBox operator-(const ComplexBox& a, const Interval& b) { return {a.re - b, a.im}; }

// ---------------------------------------------------------------- BigInt helpers

BigInt pow10(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Rational parse_decimal(const std::string& text) {
  if (text.empty()) throw DomainError("empty numeric literal");
  auto epos = text.find_first_of("eE");
  std::string mant = text.substr(0, epos);
  long exp10 = 0;
  if (epos != std::string::npos) {
    const std::string es = text.substr(epos + 1);
    char* end = nullptr;
    exp10 = std::strtol(es.c_str(), &end, 10);
    if (es.empty() || *end != '\0') throw DomainError("bad exponent in '" + text + "'");
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant.erase(0, 1);
  }
  auto dot = mant.find('.');
  if (dot != std::string::npos) {
    exp10 -= static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  if (mant.empty() || mant.find_first_not_of("0123456789") != std::string::npos) {
    throw DomainError("not a decimal literal: '" + text + "'");
  }
  Rational v{BigInt(mant, 10)};
  if (exp10 >= 0) {
    v *= pow10(static_cast<unsigned long>(exp10));
  } else {
    v /= pow10(static_cast<unsigned long>(-exp10));
  }
  v.canonicalize();
  return neg ? Rational(-v) : v;
}

BigInt parse_bigint(const std::string& text) {
  const Rational v = parse_decimal(text);
  if (v.get_den() != 1) throw DomainError("literal is not an integer: '" + text + "'");
  return v.get_num();
}

std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

}  // namespace klucas
