#pragma once

#include <string>
#include <vector>

#include "diffalg/scalar.hpp"

namespace diffalg {

// A presentation of a diffusion algebra on generators D_1 .. D_N: a directed
// coefficient g(a, b) for every ordered pair a != b and a scalar x(a) per
// generator. For indices a < b the pair carries one relation
//
//   g(a,b) D_a D_b - g(b,a) D_b D_a = x(b) D_a - x(a) D_b
//
// so g(a,b) with a < b is the "upper" coefficient (must be nonzero and real)
// and g(b,a) the "lower" one (any real value, zero meaning the reversed word
// does not appear). x values may be complex.
//
// Indices are 1-based everywhere in the public interface.
class Presentation {
 public:
  // All x and g values zero; callers must fill in the uppers before the
  // presentation becomes valid.
  explicit Presentation(int n);

  // All uppers 1, all lowers 0, all x 0: the canonical valid base most
  // builders start from.
  static Presentation canonical_base(int n);

  int generators() const { return n_; }

  const Scalar& x(int a) const;
  void set_x(int a, const Scalar& v);

  const Scalar& g(int a, int b) const;
  void set_g(int a, int b, const Scalar& v);

  // Structural validity: n >= 1, every upper coefficient nonzero, every
  // g value real. Returns one human-readable line per violation.
  std::vector<std::string> validate() const;
  bool is_valid() const { return validate().empty(); }
  // Throws ConstraintError listing all violations if not valid.
  void ensure_valid() const;

  friend bool operator==(const Presentation& a, const Presentation& b);
  friend bool operator!=(const Presentation& a, const Presentation& b) {
    return !(a == b);
  }

 private:
  void check_index(int a) const;

  int n_;
  std::vector<Scalar> x_;  // x_[a-1]
  std::vector<Scalar> g_;  // g_[(a-1) * n_ + (b-1)], a != b
};

// Canonical text form. Layout (stable and byte-exact for round trips):
//   generators N
//   x A = SCALAR          one line per nonzero x, A ascending
//   g A B = SCALAR        per pair a < b in lex order: the upper line always,
//                         then the lower line only when nonzero
std::string emit_presentation(const Presentation& p);

// Parses the text form. '#' starts a comment, blank lines are skipped,
// whitespace around '=' is free. Missing x or lower-g lines default to zero;
// a missing upper line is an error, as are duplicate assignments and indices
// outside 1..N. Does not require validity (values are taken as written).
Presentation parse_presentation(const std::string& text);

// File wrappers; throw ParseError when the file cannot be read.
Presentation load_presentation_file(const std::string& path);
void save_presentation_file(const Presentation& p, const std::string& path);

}  // namespace diffalg
