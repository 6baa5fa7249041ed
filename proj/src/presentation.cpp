#include "diffalg/presentation.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "diffalg/errors.hpp"

namespace diffalg {

Presentation::Presentation(int n) : n_(n) {
  if (n < 1) throw DomainError("presentation needs at least one generator");
  x_.assign(static_cast<std::size_t>(n), Scalar(0));
  g_.assign(static_cast<std::size_t>(n) * n, Scalar(0));
}

Presentation Presentation::canonical_base(int n) {
  Presentation p(n);
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) p.set_g(a, b, Scalar(1));
  return p;
}

void Presentation::check_index(int a) const {
  if (a < 1 || a > n_)
    throw DomainError("generator index " + std::to_string(a) + " out of range 1.." +
                      std::to_string(n_));
}

const Scalar& Presentation::x(int a) const {
  check_index(a);
  return x_[static_cast<std::size_t>(a - 1)];
}

void Presentation::set_x(int a, const Scalar& v) {
  check_index(a);
  x_[static_cast<std::size_t>(a - 1)] = v;
}

const Scalar& Presentation::g(int a, int b) const {
  check_index(a);
  check_index(b);
  if (a == b) throw DomainError("g requires two distinct indices");
  return g_[static_cast<std::size_t>(a - 1) * n_ + (b - 1)];
}

void Presentation::set_g(int a, int b, const Scalar& v) {
  check_index(a);
  check_index(b);
  if (a == b) throw DomainError("g requires two distinct indices");
  g_[static_cast<std::size_t>(a - 1) * n_ + (b - 1)] = v;
}

std::vector<std::string> Presentation::validate() const {
  std::vector<std::string> out;
  for (int a = 1; a <= n_; ++a) {
    for (int b = 1; b <= n_; ++b) {
      if (a == b) continue;
      const Scalar& v = g(a, b);
      if (!v.is_real())
        out.push_back("g " + std::to_string(a) + " " + std::to_string(b) +
                      " must be real, got " + v.str());
      if (a < b && v.is_zero())
        out.push_back("g " + std::to_string(a) + " " + std::to_string(b) +
                      " must be nonzero (upper coefficient)");
    }
  }
  return out;
}

void Presentation::ensure_valid() const {
  std::vector<std::string> v = validate();
  if (v.empty()) return;
  std::string msg = "invalid presentation:";
  for (const std::string& line : v) msg += " [" + line + "]";
  throw ConstraintError(msg);
}

bool operator==(const Presentation& a, const Presentation& b) {
  return a.n_ == b.n_ && a.x_ == b.x_ && a.g_ == b.g_;
}

std::string emit_presentation(const Presentation& p) {
  std::ostringstream out;
  int n = p.generators();
  out << "generators " << n << "\n";
  for (int a = 1; a <= n; ++a) {
    if (!p.x(a).is_zero()) out << "x " << a << " = " << p.x(a).str() << "\n";
  }
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      out << "g " << a << " " << b << " = " << p.g(a, b).str() << "\n";
      if (!p.g(b, a).is_zero())
        out << "g " << b << " " << a << " = " << p.g(b, a).str() << "\n";
    }
  }
  return out.str();
}

namespace {

// Strips comments and surrounding whitespace; returns empty for blank lines.
std::string clean_line(const std::string& raw) {
  std::string s = raw;
  std::size_t hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_index(const std::string& tok, int n, const std::string& line) {
  for (char c : tok)
    if (c < '0' || c > '9') throw ParseError("bad index '" + tok + "' in line '" + line + "'");
  long v = 0;
  try {
    v = std::stol(tok);
  } catch (const std::exception&) {
    throw ParseError("bad index '" + tok + "' in line '" + line + "'");
  }
  if (v < 1 || v > n)
    throw ParseError("index " + tok + " out of range 1.." + std::to_string(n) +
                     " in line '" + line + "'");
  return static_cast<int>(v);
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::vector<std::string> lines;
  while (std::getline(in, raw)) {
    std::string s = clean_line(raw);
    if (!s.empty()) lines.push_back(s);
  }
  if (lines.empty()) throw ParseError("empty presentation text");

  std::istringstream head(lines[0]);
  std::string kw;
  long n_long = 0;
  head >> kw >> n_long;
  std::string rest;
  if (kw != "generators" || head.fail() || (head >> rest))
    throw ParseError("first line must be 'generators N', got '" + lines[0] + "'");
  if (n_long < 1 || n_long > 100000) throw ParseError("generator count out of range");
  int n = static_cast<int>(n_long);

  Presentation p(n);
  std::set<std::pair<int, int>> g_seen;  // (a, b)
  std::set<int> x_seen;

  for (std::size_t k = 1; k < lines.size(); ++k) {
    const std::string& line = lines[k];
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("missing '=' in line '" + line + "'");
    std::string lhs = line.substr(0, eq);
    std::string rhs = clean_line(line.substr(eq + 1));
    if (rhs.empty()) throw ParseError("missing value in line '" + line + "'");
    for (char c : rhs)
      if (c == ' ' || c == '\t')
        throw ParseError("scalar may not contain spaces in line '" + line + "'");

    std::istringstream lt(lhs);
    std::string kind;
    lt >> kind;
    if (kind == "x") {
      std::string ta, extra;
      lt >> ta;
      if (lt.fail() || (lt >> extra)) throw ParseError("expected 'x A = SCALAR' in '" + line + "'");
      int a = parse_index(ta, n, line);
      if (!x_seen.insert(a).second)
        throw ParseError("duplicate x assignment for index " + ta);
      p.set_x(a, parse_scalar(rhs));
    } else if (kind == "g") {
      std::string ta, tb, extra;
      lt >> ta >> tb;
      if (lt.fail() || (lt >> extra))
        throw ParseError("expected 'g A B = SCALAR' in '" + line + "'");
      int a = parse_index(ta, n, line);
      int b = parse_index(tb, n, line);
      if (a == b) throw ParseError("g indices must differ in line '" + line + "'");
      if (!g_seen.insert({a, b}).second)
        throw ParseError("duplicate g assignment for pair " + ta + " " + tb);
      p.set_g(a, b, parse_scalar(rhs));
    } else {
      throw ParseError("unknown line '" + line + "'");
    }
  }

  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (!g_seen.count({a, b}))
        throw ParseError("missing upper coefficient line 'g " + std::to_string(a) + " " +
                         std::to_string(b) + " = ...'");
  return p;
}

Presentation load_presentation_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_presentation(buf.str());
}

void save_presentation_file(const Presentation& p, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write file '" + path + "'");
  f << emit_presentation(p);
}

}  // namespace diffalg
