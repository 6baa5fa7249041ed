#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "diffalg/scalar.hpp"

namespace diffalg {

// A word in the free monoid on the generators; letters are 1-based indices.
using Word = std::vector<int>;

std::string word_str(const Word& w);  // "D1 D3 D2"; empty word prints "1"

// Parses a whitespace-separated list of 1-based indices ("1 3 2") into a
// word; n bounds the letters. Throws ParseError.
Word parse_word(const std::string& text, int n);

// Graded-lex priority on words: longer words first, then lexicographically
// larger first. Returns true when a should be processed before b.
struct WordPriorityLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() > b.size();
    return a > b;
  }
};

// A PBW basis monomial: a word with weakly decreasing letters, stored as
// runs (index, exponent) with strictly decreasing indices.
class PBWMonomial {
 public:
  PBWMonomial() = default;  // the empty monomial, i.e. 1

  // Requires a weakly decreasing word; throws DomainError otherwise.
  static PBWMonomial from_word(const Word& w);
  static PBWMonomial single(int index) { return from_word(Word{index}); }

  Word to_word() const;
  int degree() const;
  const std::vector<std::pair<int, int>>& runs() const { return runs_; }

  std::string str() const;  // "D3^2 D1"; empty monomial prints "1"

  friend bool operator==(const PBWMonomial& a, const PBWMonomial& b) {
    return a.runs_ == b.runs_;
  }
  friend bool operator!=(const PBWMonomial& a, const PBWMonomial& b) {
    return !(a == b);
  }

 private:
  std::vector<std::pair<int, int>> runs_;
};

// Graded-lex order on monomials, higher priority first (same order as
// WordPriorityLess on the expanded words).
struct MonomialPriorityLess {
  bool operator()(const PBWMonomial& a, const PBWMonomial& b) const;
};

// A finite scalar combination of PBW monomials. Zero coefficients are never
// stored, so equality is structural.
class PBWPolynomial {
 public:
  using Terms = std::map<PBWMonomial, Scalar, MonomialPriorityLess>;

  PBWPolynomial() = default;

  void add(const PBWMonomial& m, const Scalar& c);

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }

  PBWPolynomial& operator+=(const PBWPolynomial& o);
  PBWPolynomial& operator-=(const PBWPolynomial& o);
  friend PBWPolynomial operator+(PBWPolynomial a, const PBWPolynomial& b) {
    return a += b;
  }
  friend PBWPolynomial operator-(PBWPolynomial a, const PBWPolynomial& b) {
    return a -= b;
  }

  friend bool operator==(const PBWPolynomial& a, const PBWPolynomial& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const PBWPolynomial& a, const PBWPolynomial& b) {
    return !(a == b);
  }

  // Deterministic text form: terms in priority order, "coef * monomial"
  // joined with " + "; the zero polynomial prints "0".
  std::string str() const;

 private:
  Terms terms_;
};

}  // namespace diffalg
