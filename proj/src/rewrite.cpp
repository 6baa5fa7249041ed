#include "diffalg/rewrite.hpp"

#include <algorithm>
#include <set>

#include "diffalg/errors.hpp"

namespace diffalg {

PBWPolynomial rewrite_pair(const Presentation& p, int a, int b) {
  if (!(a < b)) throw DomainError("rewrite_pair needs a < b");
  const Scalar& upper = p.g(a, b);
  if (upper.is_zero()) throw ConstraintError("upper coefficient g(a,b) must be nonzero");
  Scalar q = p.g(b, a) / upper;
  PBWPolynomial out;
  out.add(PBWMonomial::from_word(Word{b, a}), q);
  out.add(PBWMonomial::single(a), p.x(b) / upper);
  out.add(PBWMonomial::single(b), -(p.x(a) / upper));
  return out;
}

std::string free_poly_str(const FreePoly& s) {
  if (s.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : s) {
    if (!first) out += " + ";
    first = false;
    out += c.str() + " * " + word_str(w);
  }
  return out;
}

namespace {

void add_term(FreePoly& s, const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = s.find(w);
  if (it == s.end()) {
    s.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) s.erase(it);
}

// Applies the pair rewrite at position i of word w carrying coefficient c,
// merging the three resulting terms into s. The (w, c) term itself must
// already have been removed from s by the caller.
void apply_step(const Presentation& p, FreePoly& s, const Word& w, std::size_t i,
                const Scalar& c) {
  int a = w[i], b = w[i + 1];
  const Scalar& upper = p.g(a, b);
  Scalar q = p.g(b, a) / upper;

  Word swapped = w;
  std::swap(swapped[i], swapped[i + 1]);
  add_term(s, swapped, c * q);

  Word keep_left = w;  // drop the right letter, keep D_a
  keep_left.erase(keep_left.begin() + static_cast<long>(i) + 1);
  add_term(s, keep_left, c * (p.x(b) / upper));

  Word keep_right = w;  // drop the left letter, keep D_b
  keep_right.erase(keep_right.begin() + static_cast<long>(i));
  add_term(s, keep_right, -(c * (p.x(a) / upper)));
}

// Leftmost ascending adjacent position, or npos when the word is weakly
// decreasing (i.e. already a basis monomial).
std::size_t first_ascent(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] < w[i + 1]) return i;
  return static_cast<std::size_t>(-1);
}

long long ascent_pair_count(const Word& w) {
  long long cnt = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[i] < w[j]) ++cnt;
  return cnt;
}

std::pair<int, long long> pending_measure(const FreePoly& s) {
  if (s.empty()) return {0, 0};
  int d = static_cast<int>(s.begin()->first.size());
  long long sum = 0;
  for (const auto& [w, c] : s) {
    if (static_cast<int>(w.size()) != d) break;  // priority order: degree d first
    sum += ascent_pair_count(w);
  }
  return {d, sum};
}

}  // namespace

PBWPolynomial normalize_free(const Presentation& p, FreePoly pending,
                             NormalizeTrace* trace) {
  PBWPolynomial out;
  while (!pending.empty()) {
    auto it = pending.begin();  // highest priority
    Word w = it->first;
    Scalar c = it->second;
    std::size_t i = first_ascent(w);
    if (i == static_cast<std::size_t>(-1)) {
      pending.erase(it);
      out.add(PBWMonomial::from_word(w), c);
      continue;
    }
    if (trace) trace->measures.push_back(pending_measure(pending));
    pending.erase(it);
    apply_step(p, pending, w, i, c);
  }
  return out;
}

PBWPolynomial normalize(const Presentation& p, const Word& w, NormalizeTrace* trace) {
  FreePoly pending;
  add_term(pending, w, Scalar(1));
  return normalize_free(p, std::move(pending), trace);
}

namespace {

// Explorer behind normalize_all_paths. Rewriting acts on one term at a time,
// so the terminal values reachable from a word are found by trying every
// reducible position first and then combining, linearly, every terminal value
// of each term of the one-step image. Per-word sets are memoized. When every
// branch set is a singleton this yields exactly the word's unique normal
// form; any disagreement between two reducible positions survives the linear
// combination, so a non-reduction-unique word always reports two or more
// terminal values.
class AllPathsExplorer {
 public:
  AllPathsExplorer(const Presentation& p, std::size_t max_states)
      : p_(p), max_states_(max_states) {}

  const std::vector<PBWPolynomial>& explore(const Word& w) {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    count_state();

    std::vector<PBWPolynomial> out;
    std::set<std::string> seen;
    bool reducible = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] >= w[i + 1]) continue;
      reducible = true;
      FreePoly image;
      apply_step(p_, image, w, i, Scalar(1));

      std::vector<PBWPolynomial> sums{PBWPolynomial()};
      for (const auto& [u, c] : image) {
        const std::vector<PBWPolynomial>& branch = explore(u);
        std::vector<PBWPolynomial> next;
        next.reserve(sums.size() * branch.size());
        for (const PBWPolynomial& base : sums) {
          for (const PBWPolynomial& f : branch) {
            count_state();
            PBWPolynomial acc = base;
            for (const auto& [m, fc] : f.terms()) acc.add(m, c * fc);
            next.push_back(std::move(acc));
          }
        }
        sums = std::move(next);
      }
      for (PBWPolynomial& s : sums)
        if (seen.insert(s.str()).second) out.push_back(std::move(s));
    }
    if (!reducible) {
      PBWPolynomial self;
      self.add(PBWMonomial::from_word(w), Scalar(1));
      out.push_back(std::move(self));
    }
    return memo_.emplace(w, std::move(out)).first->second;
  }

 private:
  void count_state() {
    if (++states_ > max_states_)
      throw StateCapError("normalize_all_paths exceeded " + std::to_string(max_states_) +
                          " distinct states");
  }

  const Presentation& p_;
  std::size_t max_states_;
  std::size_t states_ = 0;
  std::map<Word, std::vector<PBWPolynomial>> memo_;
};

}  // namespace

std::vector<PBWPolynomial> normalize_all_paths(const Presentation& p, const Word& w,
                                               std::size_t max_states) {
  AllPathsExplorer explorer(p, max_states);
  std::vector<PBWPolynomial> out = explorer.explore(w);
  std::sort(out.begin(), out.end(),
            [](const PBWPolynomial& a, const PBWPolynomial& b) { return a.str() < b.str(); });
  return out;
}

TripleCheck check_triple(const Presentation& p, int a, int b, int c) {
  if (!(a < b && b < c)) throw DomainError("check_triple needs a < b < c");
  Word w{a, b, c};

  FreePoly via0, via1;
  apply_step(p, via0, w, 0, Scalar(1));
  apply_step(p, via1, w, 1, Scalar(1));

  PBWPolynomial left = normalize_free(p, std::move(via0));
  PBWPolynomial right = normalize_free(p, std::move(via1));

  TripleCheck res;
  res.difference = left - right;
  res.passed = res.difference.is_zero();
  return res;
}

DiamondReport is_pbw(const Presentation& p) {
  p.ensure_valid();
  DiamondReport report;
  int n = p.generators();
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      for (int c = b + 1; c <= n; ++c) {
        ++report.triples_checked;
        TripleCheck t = check_triple(p, a, b, c);
        if (!t.passed) {
          report.passed = false;
          report.failures.push_back({a, b, c, std::move(t.difference)});
        }
      }
    }
  }
  return report;
}

}  // namespace diffalg
