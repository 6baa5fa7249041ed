#include "diffalg/scalar.hpp"

#include <cstddef>

#include "diffalg/errors.hpp"

namespace diffalg {

namespace {

bool is_digits(const std::string& s, std::size_t from, std::size_t to) {
  if (from >= to) return false;
  for (std::size_t k = from; k < to; ++k) {
    if (s[k] < '0' || s[k] > '9') return false;
  }
  return true;
}

// Validates "INT" or "INT/POSINT" over [from, to) and returns the rational.
Rational parse_rational_range(const std::string& s, std::size_t from,
                              std::size_t to) {
  if (from >= to) throw ParseError("empty rational");
  std::size_t slash = std::string::npos;
  for (std::size_t k = from; k < to; ++k) {
    if (s[k] == '/') {
      if (slash != std::string::npos) throw ParseError("rational with two '/'");
      slash = k;
    }
  }
  std::size_t num_end = (slash == std::string::npos) ? to : slash;
  std::size_t num_start = from;
  if (num_start < num_end && (s[num_start] == '-' || s[num_start] == '+')) {
    if (s[num_start] == '+') throw ParseError("leading '+' not allowed in rational");
    ++num_start;
  }
  if (!is_digits(s, num_start, num_end))
    throw ParseError("bad integer in rational: '" + s.substr(from, to - from) + "'");
  mpz_class num(s.substr(from, num_end - from), 10);
  mpz_class den(1);
  if (slash != std::string::npos) {
    if (!is_digits(s, slash + 1, to))
      throw ParseError("bad denominator in rational: '" + s.substr(from, to - from) + "'");
    den = mpz_class(s.substr(slash + 1, to - slash - 1), 10);
    if (sgn(den) <= 0)
      throw ParseError("denominator must be positive in '" + s.substr(from, to - from) + "'");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

std::string rational_str(const Rational& r) { return r.get_str(); }

Rational parse_rational(const std::string& text) {
  return parse_rational_range(text, 0, text.size());
}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return Scalar(r);
}

Scalar Scalar::complex(long ren, long red, long imn, long imd) {
  if (red == 0 || imd == 0) throw DomainError("zero denominator");
  Rational re(ren, red), im(imn, imd);
  re.canonicalize();
  im.canonicalize();
  return Scalar(re, im);
}

Scalar Scalar::operator-() const { return Scalar(Rational(-re_), Rational(-im_)); }

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = re;
  im_ = im;
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DomainError("division by zero scalar");
  Rational norm = re_ * re_ + im_ * im_;
  return Scalar(Rational(re_ / norm), Rational(-im_ / norm));
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

std::string Scalar::str() const {
  if (is_real()) return rational_str(re_);
  return "(" + rational_str(re_) + ")+(" + rational_str(im_) + ")i";
}

Scalar parse_scalar(const std::string& text) {
  if (text.empty()) throw ParseError("empty scalar");
  if (text[0] != '(') return Scalar(parse_rational(text));
  // (RAT)+(RAT)i
  std::size_t close1 = text.find(')');
  if (close1 == std::string::npos) throw ParseError("unclosed '(' in scalar '" + text + "'");
  if (close1 + 2 >= text.size() || text[close1 + 1] != '+' || text[close1 + 2] != '(')
    throw ParseError("expected ')+(' in scalar '" + text + "'");
  std::size_t close2 = text.find(')', close1 + 3);
  if (close2 == std::string::npos) throw ParseError("unclosed '(' in scalar '" + text + "'");
  if (close2 + 2 != text.size() || text[close2 + 1] != 'i')
    throw ParseError("expected trailing ')i' in scalar '" + text + "'");
  Rational re = parse_rational_range(text, 1, close1);
  Rational im = parse_rational_range(text, close1 + 3, close2);
  return Scalar(re, im);
}

}  // namespace diffalg
