#include "diffalg/transform.hpp"

#include <sstream>

#include "diffalg/classify.hpp"
#include "diffalg/errors.hpp"

namespace diffalg {

Presentation rescale(const Presentation& p, const std::vector<Scalar>& kappa) {
  int n = p.generators();
  if (static_cast<int>(kappa.size()) != n)
    throw ConstraintError("kappa must list one value per generator");
  for (int a = 1; a <= n; ++a)
    if (kappa[static_cast<std::size_t>(a - 1)].is_zero())
      throw ConstraintError("kappa[" + std::to_string(a) + "] must be nonzero");
  Presentation q = p;
  for (int a = 1; a <= n; ++a)
    q.set_x(a, p.x(a) / kappa[static_cast<std::size_t>(a - 1)]);
  return q;
}

Presentation permute(const Presentation& p, const std::vector<int>& sigma) {
  int n = p.generators();
  if (static_cast<int>(sigma.size()) != n)
    throw DomainError("sigma must list one image per generator");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : sigma) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
      throw DomainError("sigma must be a permutation of 1.." + std::to_string(n));
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
  auto s = [&](int a) { return sigma[static_cast<std::size_t>(a - 1)]; };

  std::vector<std::pair<int, int>> flipped_zero;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (s(a) > s(b) && p.g(b, a).is_zero()) flipped_zero.push_back({a, b});
  if (!flipped_zero.empty()) {
    std::ostringstream msg;
    msg << "relabeling flips pairs with zero lower coefficient:";
    for (auto [a, b] : flipped_zero) msg << " (" << a << "," << b << ")";
    throw OrderViolationError(msg.str());
  }

  Presentation q(n);
  for (int a = 1; a <= n; ++a) {
    q.set_x(s(a), p.x(a));
    for (int b = 1; b <= n; ++b)
      if (a != b) q.set_g(s(a), s(b), p.g(a, b));
  }
  return q;
}

Presentation mirror(const Presentation& p) {
  int n = p.generators();
  auto m = [n](int a) { return n + 1 - a; };
  Presentation q(n);
  for (int u = 1; u <= n; ++u) {
    q.set_x(u, -p.x(m(u)));
    for (int v = 1; v <= n; ++v)
      if (u != v) q.set_g(u, v, p.g(m(v), m(u)));
  }
  return q;
}

Presentation shift_c_to_d(const Presentation& p) {
  FamilyAssignment fa = classify_family(p);
  if (fa.family != Family::C)
    throw NotApplicableError("presentation does not have exactly one x-carrying generator");
  const std::vector<Scalar>& ls = fa.spec.lambda_r;
  bool applicable = !ls.empty();
  for (const Scalar& l : ls)
    if (l.is_zero() || l != ls[0]) applicable = false;
  if (!applicable)
    throw NotApplicableError(
        "no nonzero Lambda_a, or shift does not homogenize the relation set");
  Presentation q = p;
  q.set_x(fa.spec.I[0], Scalar(0));
  return q;
}

}  // namespace diffalg
