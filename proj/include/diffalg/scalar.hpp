#pragma once

#include <gmpxx.h>

#include <string>

namespace diffalg {

using Rational = mpq_class;

// Returns the canonical lowest-terms string of a rational: "n" or "n/d" with
// d > 0 and gcd(|n|, d) = 1.
std::string rational_str(const Rational& r);

// Parses "INT" or "INT/POSINT" (no whitespace, base-10) into a canonical
// rational. Throws ParseError on anything else, including a zero or negative
// denominator.
Rational parse_rational(const std::string& text);

// Exact Gaussian rational, an element of Q(i). Both parts are kept canonical
// (lowest terms, positive denominator) at all times, so operator== is
// structural equality of values. GMP's mpq_class does NOT canonicalize on
// construction from num/den, hence every constructor here does it explicitly.
class Scalar {
 public:
  Scalar() : re_(0), im_(0) {}
  Scalar(long v) : re_(v), im_(0) {}  // NOLINT: implicit for 0/1 literals
  explicit Scalar(const Rational& re) : re_(re), im_(0) { canon(); }
  Scalar(const Rational& re, const Rational& im) : re_(re), im_(im) { canon(); }

  // num/den with den != 0; canonicalizes (so rational(-6, 8) == rational(-3, 4)).
  static Scalar rational(long num, long den);
  // (ren/red) + (imn/imd) i
  static Scalar complex(long ren, long red, long imn, long imd);
  static Scalar i() { return Scalar(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return is_real() && re_ == 1; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);  // throws DomainError on zero divisor

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  // Multiplicative inverse; throws DomainError on zero.
  Scalar inverse() const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // Total order (real part first, then imaginary part); used only to make
  // containers and emitted listings deterministic, it has no algebraic meaning.
  friend bool operator<(const Scalar& a, const Scalar& b) {
    int c = cmp(a.re_, b.re_);
    if (c != 0) return c < 0;
    return cmp(a.im_, b.im_) < 0;
  }

  // Canonical text form: "RAT" when imaginary part is zero, otherwise
  // "(RAT)+(RAT)i". Round-trips exactly through parse_scalar.
  std::string str() const;

 private:
  void canon() {
    re_.canonicalize();
    im_.canonicalize();
  }

  Rational re_, im_;
};

// Parses the canonical scalar grammar: INT | INT/POSINT | (RAT)+(RAT)i.
// No interior whitespace. Throws ParseError on malformed input.
Scalar parse_scalar(const std::string& text);

}  // namespace diffalg
