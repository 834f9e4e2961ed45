#pragma once

// Exact integers/rationals (GMP) and outward-rounded real intervals (MPFR).
//
// Every Interval operation rounds its lower endpoint toward -inf and its upper
// endpoint toward +inf, so the true value of any expression built from
// Interval operations is contained in the result. The precision of a result
// is the larger of the operand precisions.

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>

namespace klucas {

using BigInt = mpz_class;
using Rational = mpq_class;
using Precision = mpfr_prec_t;

inline constexpr Precision kDefaultPrecision = 256;

// Owning wrapper over mpfr_t.
class Float {
 public:
  explicit Float(Precision prec = kDefaultPrecision);
  Float(const Float& other);
  Float(Float&& other) noexcept;
  Float& operator=(const Float& other);
  Float& operator=(Float&& other) noexcept;
  ~Float();

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  Precision precision() const noexcept { return mpfr_get_prec(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(value_); }

  // Exact value as a rational; throws DomainError for inf/nan.
  Rational to_rational() const;

 private:
  mpfr_t value_;
};

// A closed real interval [lo, hi] with dyadic endpoints.
class Interval {
 public:
  // The degenerate interval [0, 0].
  explicit Interval(Precision prec = kDefaultPrecision);

  static Interval from_int(long v, Precision prec);
  static Interval from_z(const BigInt& v, Precision prec);
  static Interval from_q(const Rational& v, Precision prec);
  // Exact for prec >= 53.
  static Interval from_double(double v, Precision prec);
  // Parses a decimal literal such as "4.5" or "6.3e32", rounding outward.
  static Interval from_decimal(const std::string& text, Precision prec);
  static Interval from_bounds(const Float& lo, const Float& hi);
  static Interval ln2(Precision prec);

  Precision precision() const noexcept { return lo_.precision(); }
  const Float& lo() const noexcept { return lo_; }
  const Float& hi() const noexcept { return hi_; }
  double lo_d() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
  double mid_d() const;
  Float mid() const;
  // Upper bound on hi - lo.
  Float width() const;
  double width_d() const;

  bool contains(const Interval& other) const;
  bool contains(const BigInt& v) const;
  bool contains(const Rational& v) const;
  bool contains_zero() const;
  bool is_positive() const { return lo_.sign() > 0; }
  bool is_negative() const { return hi_.sign() < 0; }
  // Every point of *this is strictly below every point of other.
  bool certainly_less(const Interval& other) const;
  bool certainly_greater(const Interval& other) const { return other.certainly_less(*this); }

  // The integer inside the interval when there is exactly one.
  std::optional<BigInt> unique_integer() const;
  // floor(v), when it is the same for every v in the interval.
  std::optional<BigInt> certified_floor() const;
  BigInt floor_lo() const;
  BigInt ceil_hi() const;

  Rational lo_exact() const { return lo_.to_rational(); }
  Rational hi_exact() const { return hi_.to_rational(); }

  Interval with_precision(Precision prec) const;

  Interval operator-() const;
  Interval& operator+=(const Interval& rhs);
  Interval& operator-=(const Interval& rhs);
  Interval& operator*=(const Interval& rhs);
  Interval& operator/=(const Interval& rhs);

  // "[lo, hi]" with the endpoints printed with directed rounding.
  std::string to_string(int digits = 20) const;
  std::string lo_string(int digits = 20) const;
  std::string hi_string(int digits = 20) const;
  std::string mid_string(int digits = 20) const;

 private:
  Float lo_;
  Float hi_;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
// Throws DomainError when b contains zero.
Interval operator/(const Interval& a, const Interval& b);
Interval operator+(const Interval& a, long b);
Interval operator-(const Interval& a, long b);
Interval operator-(long a, const Interval& b);
Interval operator*(const Interval& a, long b);
Interval operator*(long a, const Interval& b);
Interval operator/(const Interval& a, long b);
Interval operator/(long a, const Interval& b);

Interval abs(const Interval& x);
Interval sqr(const Interval& x);
Interval sqrt(const Interval& x);
Interval log(const Interval& x);
Interval exp(const Interval& x);
Interval pow(const Interval& x, long n);
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);
Interval hull(const Interval& a, const Interval& b);

// Rectangle in the complex plane.
struct ComplexBox {
  Interval re;
  Interval im;

  explicit ComplexBox(Precision prec = kDefaultPrecision) : re(prec), im(prec) {}
  ComplexBox(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
  static ComplexBox real(const Interval& r);

  Precision precision() const { return re.precision(); }
  // Encloses |z| over the box.
  Interval abs() const;
  Interval norm_sq() const;
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  // Collapses both coordinates to their midpoints.
  ComplexBox midpoint() const;
  std::string to_string(int digits = 20) const;
};

ComplexBox operator+(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator-(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator*(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator/(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator*(const ComplexBox& a, const Interval& b);
ComplexBox operator+(const ComplexBox& a, const Interval& b);
ComplexBox operator-(const ComplexBox& a, const Interval& b);

// 10^e as an exact integer.
BigInt pow10(unsigned long e);
// Exact value of a decimal literal such as "0.72", "-3" or "6.3e32".
Rational parse_decimal(const std::string& text);
// Parses "123", "-7", "1e331" or "2.5e3" (the latter must be integral).
BigInt parse_bigint(const std::string& text);
// Floor of log2(|v|) + 1, 0 for v == 0.
std::size_t bit_length(const BigInt& v);

}  // namespace klucas
