#include "diffalg/pbw.hpp"

#include <sstream>

#include "diffalg/errors.hpp"

namespace diffalg {

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += " ";
    out += "D" + std::to_string(w[k]);
  }
  return out;
}

Word parse_word(const std::string& text, int n) {
  std::istringstream in(text);
  Word w;
  std::string tok;
  while (in >> tok) {
    for (char c : tok)
      if (c < '0' || c > '9') throw ParseError("bad word letter '" + tok + "'");
    long v = std::stol(tok);
    if (v < 1 || v > n)
      throw ParseError("word letter " + tok + " out of range 1.." + std::to_string(n));
    w.push_back(static_cast<int>(v));
  }
  if (w.empty()) throw ParseError("empty word");
  return w;
}

PBWMonomial PBWMonomial::from_word(const Word& w) {
  PBWMonomial m;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k > 0 && w[k] > w[k - 1])
      throw DomainError("word is not weakly decreasing: " + word_str(w));
    if (!m.runs_.empty() && m.runs_.back().first == w[k])
      ++m.runs_.back().second;
    else
      m.runs_.push_back({w[k], 1});
  }
  return m;
}

Word PBWMonomial::to_word() const {
  Word w;
  for (const auto& [idx, exp] : runs_)
    for (int k = 0; k < exp; ++k) w.push_back(idx);
  return w;
}

int PBWMonomial::degree() const {
  int d = 0;
  for (const auto& [idx, exp] : runs_) d += exp;
  return d;
}

std::string PBWMonomial::str() const {
  if (runs_.empty()) return "1";
  std::string out;
  for (std::size_t k = 0; k < runs_.size(); ++k) {
    if (k) out += " ";
    out += "D" + std::to_string(runs_[k].first);
    if (runs_[k].second > 1) out += "^" + std::to_string(runs_[k].second);
  }
  return out;
}

bool MonomialPriorityLess::operator()(const PBWMonomial& a, const PBWMonomial& b) const {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return a.to_word() > b.to_word();
}

void PBWPolynomial::add(const PBWMonomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

PBWPolynomial& PBWPolynomial::operator+=(const PBWPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

PBWPolynomial& PBWPolynomial::operator-=(const PBWPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

std::string PBWPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += c.str() + " * " + m.str();
  }
  return out;
}

}  // namespace diffalg
