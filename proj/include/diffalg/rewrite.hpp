#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "diffalg/pbw.hpp"
#include "diffalg/presentation.hpp"

namespace diffalg {

// Rewrites the ascending length-2 word D_a D_b (a < b) into the span of
// basis-compatible words:
//   D_a D_b -> q D_b D_a + (x(b) / g(a,b)) D_a - (x(a) / g(a,b)) D_b
// with q = g(b,a) / g(a,b). Terms with zero coefficient are dropped, so e.g.
// a pure q-relation yields a single term and a fully degenerate pair yields
// the zero polynomial.
PBWPolynomial rewrite_pair(const Presentation& p, int a, int b);

// A scalar combination of free words, the working state during reduction.
// Iteration order is the processing priority (longer words first, then
// lexicographically larger first).
using FreePoly = std::map<Word, Scalar, WordPriorityLess>;

// Deterministic text form of a working state (diagnostics).
std::string free_poly_str(const FreePoly& s);

// Termination instrumentation: one entry per rewrite application, recorded
// just before the step, of
//   (max degree among pending terms,
//    sum over pending terms of that degree of their ascending-pair count
//    #{p < q : w[p] < w[q]}).
// The sequence is strictly lexicographically decreasing, which is the
// termination argument for the reduction.
struct NormalizeTrace {
  std::vector<std::pair<int, long long>> measures;
};

// Reduces a word to its PBW normal form. Strategy (deterministic): take the
// highest-priority pending term, rewrite its leftmost ascending adjacent
// pair; terms that are already weakly decreasing move to the output.
PBWPolynomial normalize(const Presentation& p, const Word& w,
                        NormalizeTrace* trace = nullptr);

// Same, starting from an arbitrary combination of words.
PBWPolynomial normalize_free(const Presentation& p, FreePoly pending,
                             NormalizeTrace* trace = nullptr);

// Oracle for strategy independence: explores every reducible-position choice
// at every step, memoized per word with branch results combined linearly, and
// returns all terminal results, sorted by text form and deduplicated. The
// result is a singleton exactly when the word is reduction-unique. Throws
// StateCapError once more than max_states states are visited.
std::vector<PBWPolynomial> normalize_all_paths(const Presentation& p, const Word& w,
                                               std::size_t max_states = 100000);

// Result of the local confluence check for one triple a < b < c.
struct TripleCheck {
  bool passed = true;
  // Normal form reached by first rewriting at position 0 minus the one
  // reached by first rewriting at position 1; zero iff passed.
  PBWPolynomial difference;
};

// Reduces D_a D_b D_c along both first-step choices and compares the
// completed normal forms.
TripleCheck check_triple(const Presentation& p, int a, int b, int c);

struct TripleFailure {
  int a = 0, b = 0, c = 0;
  PBWPolynomial difference;
};

struct DiamondReport {
  bool passed = true;
  long long triples_checked = 0;
  std::vector<TripleFailure> failures;  // ascending lex order of (a, b, c)
};

// Full diamond check over all C(N,3) index triples in ascending lex order.
// With fewer than three generators there is nothing to check and the report
// passes vacuously.
DiamondReport is_pbw(const Presentation& p);

}  // namespace diffalg
