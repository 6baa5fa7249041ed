#include "diffalg/classify.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "diffalg/construct.hpp"
#include "diffalg/errors.hpp"

namespace diffalg {

std::string component_tag_name(ComponentTag t) {
  switch (t) {
    case ComponentTag::Plain: return "plain";
    case ComponentTag::S: return "S";
    case ComponentTag::TCirc: return "T_circ";
    case ComponentTag::TBullet: return "T_bullet";
  }
  throw DomainError("unknown component tag");
}

int Decomposition::M_S() const {
  int k = 0;
  for (const auto& c : components) k += c.tag == ComponentTag::S;
  return k;
}
int Decomposition::M_TCirc() const {
  int k = 0;
  for (const auto& c : components) k += c.tag == ComponentTag::TCirc;
  return k;
}
int Decomposition::M_TBullet() const {
  int k = 0;
  for (const auto& c : components) k += c.tag == ComponentTag::TBullet;
  return k;
}
int Decomposition::M_T() const { return M_TCirc() + M_TBullet(); }

namespace {

bool coupled(const Presentation& p, int a, int b) {
  return !p.g(a, b).is_zero() && !p.g(b, a).is_zero();
}

std::string members_str(const std::vector<int>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += " ";
    out += std::to_string(v[k]);
  }
  return out;
}

// Index of the adjacent I-gap strictly containing the component, or -1.
int containing_gap(const std::vector<int>& comp, const std::vector<int>& I) {
  if (comp.empty() || I.size() < 2) return -1;
  for (std::size_t k = 0; k + 1 < I.size(); ++k)
    if (I[k] < comp.front() && comp.back() < I[k + 1]) return static_cast<int>(k);
  return -1;
}

}  // namespace

Decomposition decompose(const Presentation& p) {
  p.ensure_valid();
  Decomposition d;
  int n = p.generators();
  for (int a = 1; a <= n; ++a)
    (p.x(a).is_zero() ? d.R : d.I).push_back(a);

  std::vector<int> root(d.R.size());
  for (std::size_t k = 0; k < root.size(); ++k) root[k] = static_cast<int>(k);
  std::function<int(int)> find = [&](int v) {
    while (root[static_cast<std::size_t>(v)] != v)
      v = root[static_cast<std::size_t>(v)] =
          root[static_cast<std::size_t>(root[static_cast<std::size_t>(v)])];
    return v;
  };
  for (std::size_t a = 0; a < d.R.size(); ++a)
    for (std::size_t b = a + 1; b < d.R.size(); ++b)
      if (coupled(p, d.R[a], d.R[b]))
        root[static_cast<std::size_t>(find(static_cast<int>(a)))] =
            find(static_cast<int>(b));

  std::map<int, std::vector<int>> groups;
  for (std::size_t k = 0; k < d.R.size(); ++k)
    groups[find(static_cast<int>(k))].push_back(d.R[k]);

  for (auto& [r, members] : groups) {
    Component c;
    std::sort(members.begin(), members.end());
    c.members = members;
    if (d.N_I() >= 2) {
      bool two_sided = false;
      for (int m : c.members)
        for (int i : d.I) two_sided = two_sided || coupled(p, m, i);
      if (two_sided)
        c.tag = ComponentTag::S;
      else
        c.tag = containing_gap(c.members, d.I) >= 0 ? ComponentTag::TBullet
                                                    : ComponentTag::TCirc;
    }
    d.components.push_back(std::move(c));
  }
  std::sort(d.components.begin(), d.components.end(),
            [](const Component& a, const Component& b) {
              return a.members.front() < b.members.front();
            });
  return d;
}

namespace {

// Upper-minus-lower difference of the I-pair i < j.
Scalar lambda_of(const Presentation& p, int i, int j) {
  return p.g(i, j) - p.g(j, i);
}

// The signed coupling constants of a one-sided component toward each core
// index: value(t -> i) is -v below i and +v above i for T_circ, and the
// single available side for T_bullet. Returns per-I values and appends
// violations instead of throwing.
struct SideValues {
  bool has_below = false, has_above = false;
  Scalar below, above;  // raw upper coefficients g(t,i) resp. g(i,t)
};

SideValues side_values(const Presentation& p, const std::vector<int>& comp, int i,
                       const std::string& comp_str,
                       std::vector<StructureViolation>* out) {
  SideValues sv;
  bool bad_below = false, bad_above = false;
  for (int t : comp) {
    if (t < i) {
      if (!sv.has_below) {
        sv.below = p.g(t, i);
        sv.has_below = true;
      } else if (p.g(t, i) != sv.below) {
        bad_below = true;
      }
    } else {
      if (!sv.has_above) {
        sv.above = p.g(i, t);
        sv.has_above = true;
      } else if (p.g(i, t) != sv.above) {
        bad_above = true;
      }
    }
  }
  if (out && (bad_below || bad_above))
    out->push_back({"one-sided-coupling-constancy",
                    "component {" + comp_str + "} couples non-constantly toward index " +
                        std::to_string(i)});
  return sv;
}

}  // namespace

std::vector<StructureViolation> verify_structure(const Presentation& p,
                                                 const Decomposition& d) {
  std::vector<StructureViolation> out;
  int ni = d.N_I();

  bool sym_uniform = false, diff_form = false;
  if (ni >= 3) {
    sym_uniform = true;
    const Scalar& g0 = p.g(d.I[0], d.I[1]);
    for (std::size_t a = 0; a < d.I.size() && sym_uniform; ++a)
      for (std::size_t b = a + 1; b < d.I.size(); ++b)
        if (p.g(d.I[a], d.I[b]) != g0 || p.g(d.I[b], d.I[a]) != g0) {
          sym_uniform = false;
          break;
        }
    diff_form = true;
    for (std::size_t a = 0; a < d.I.size() && diff_form; ++a)
      for (std::size_t b = a + 1; b < d.I.size(); ++b)
        if (!p.g(d.I[b], d.I[a]).is_zero()) {
          diff_form = false;
          break;
        }
    if (diff_form) {
      for (std::size_t a = 0; a < d.I.size() && diff_form; ++a)
        for (std::size_t b = a + 1; b < d.I.size() && diff_form; ++b)
          for (std::size_t c = b + 1; c < d.I.size(); ++c)
            if (p.g(d.I[a], d.I[c]) != p.g(d.I[a], d.I[b]) + p.g(d.I[b], d.I[c])) {
              diff_form = false;
              break;
            }
    }
    if (!sym_uniform && !diff_form)
      out.push_back({"intra-core-typing",
                     "the coefficients among the x-carrying indices are neither one "
                     "common symmetric value nor of difference form"});

    if (sym_uniform) {
      // Every member of a two-sided component couples symmetrically with one
      // value toward every core index.
      for (const Component& c : d.components) {
        if (c.tag != ComponentTag::S) continue;
        for (int s : c.members) {
          bool ok = true;
          const Scalar& v0 = p.g(d.I[0], s);
          for (int i : d.I)
            if (p.g(i, s) != v0 || p.g(s, i) != v0) ok = false;
          if (!ok)
            out.push_back({"two-sided-coupling-uniformity",
                           "index " + std::to_string(s) +
                               " does not couple symmetrically and uniformly to the "
                               "x-carrying indices"});
        }
      }
    }
    if (diff_form) {
      for (const Component& c : d.components)
        if (c.tag == ComponentTag::S)
          out.push_back({"difference-kind-with-two-sided-component",
                         "component {" + members_str(c.members) +
                             "} is two-sidedly coupled, which the difference form "
                             "does not admit"});
    }
  }

  if (ni >= 2) {
    for (const Component& c : d.components) {
      if (c.tag != ComponentTag::TCirc && c.tag != ComponentTag::TBullet) continue;
      std::string cs = members_str(c.members);

      if (c.tag == ComponentTag::TCirc) {
        // Signed constant v_i toward each core index; v_i - v_j tracks the
        // intra-core upper/lower difference.
        std::vector<Scalar> v(d.I.size());
        for (std::size_t k = 0; k < d.I.size(); ++k) {
          SideValues sv = side_values(p, c.members, d.I[k], cs, &out);
          if (sv.has_below && sv.has_above && sv.above != -sv.below)
            out.push_back({"one-sided-sign-law",
                           "component {" + cs + "} couples around index " +
                               std::to_string(d.I[k]) + " without the sign flip"});
          v[k] = sv.has_above ? sv.above : -sv.below;
        }
        for (std::size_t a = 0; a < d.I.size(); ++a)
          for (std::size_t b = a + 1; b < d.I.size(); ++b)
            if (v[a] - v[b] != lambda_of(p, d.I[a], d.I[b]))
              out.push_back({"coupling-difference-tracking",
                             "component {" + cs + "} couplings toward indices " +
                                 std::to_string(d.I[a]) + " and " + std::to_string(d.I[b]) +
                                 " do not track the intra-core difference"});
      } else {
        int gap = containing_gap(c.members, d.I);
        if (gap < 0) continue;  // cannot happen for a TBullet tag
        std::vector<Scalar> w(d.I.size());
        for (std::size_t k = 0; k < d.I.size(); ++k) {
          SideValues sv = side_values(p, c.members, d.I[k], cs, &out);
          w[k] = sv.has_above ? sv.above : sv.below;
        }
        for (std::size_t a = 0; a < d.I.size(); ++a) {
          for (std::size_t b = a + 1; b < d.I.size(); ++b) {
            bool both_below = static_cast<int>(b) <= gap;
            bool both_above = static_cast<int>(a) >= gap + 1;
            if (!both_below && !both_above) continue;
            Scalar want = lambda_of(p, d.I[a], d.I[b]);
            if (both_above) want = -want;
            if (w[a] - w[b] != want)
              out.push_back({"coupling-difference-tracking",
                             "component {" + cs + "} couplings toward indices " +
                                 std::to_string(d.I[a]) + " and " + std::to_string(d.I[b]) +
                                 " do not track the intra-core difference"});
          }
        }
      }
    }
  }

  if (ni == 1) {
    int i = d.I[0];
    for (const Component& c : d.components) {
      Scalar l0 = p.g(i, c.members[0]) - p.g(c.members[0], i);
      for (int r : c.members)
        if (p.g(i, r) - p.g(r, i) != l0) {
          out.push_back({"coupling-difference-constancy",
                         "component {" + members_str(c.members) +
                             "} has a non-constant coupling difference toward index " +
                             std::to_string(i)});
          break;
        }
    }
  }
  return out;
}

namespace {

std::string refined_three_name(Family family, const Decomposition& d) {
  auto pos_name = [](int a) {
    return a == 1 ? std::string("alpha") : a == 2 ? std::string("beta") : std::string("gamma");
  };
  switch (family) {
    case Family::AI: return "A_I";
    case Family::AII: return "A_II";
    case Family::D: return "D";
    case Family::B: {
      int r = d.R[0];
      switch (d.components[0].tag) {
        case ComponentTag::S: return "B(1)/pos-" + pos_name(r);
        case ComponentTag::TBullet: return "B(2)";
        case ComponentTag::TCirc: return r == 3 ? "B(3)" : "B(4)";
        case ComponentTag::Plain: break;
      }
      throw InternalInconsistencyError("untagged component in a three-generator B member");
    }
    case Family::C: {
      std::string pos = pos_name(d.I[0]);
      return (d.M_R() == 1 ? "C(1)/pos-" : "C(2)/pos-") + pos;
    }
  }
  throw DomainError("unknown family");
}

}  // namespace

FamilyAssignment classify_family(const Presentation& p) {
  p.ensure_valid();
  DiamondReport rep = is_pbw(p);
  if (!rep.passed) {
    const TripleFailure& f = rep.failures.front();
    throw NotPBWError("diamond check failed on " + std::to_string(rep.failures.size()) +
                      " of " + std::to_string(rep.triples_checked) +
                      " triples; first failure at (" + std::to_string(f.a) + "," +
                      std::to_string(f.b) + "," + std::to_string(f.c) + ")");
  }
  Decomposition d = decompose(p);
  {
    auto sviol = verify_structure(p, d);
    if (!sviol.empty())
      throw InternalInconsistencyError(
          "structure violation on a diamond-passing presentation: " + sviol[0].code +
          " (" + sviol[0].detail + ")");
  }

  FamilyAssignment fa;
  fa.decomposition = d;
  FamilySpec spec;
  spec.n = p.generators();
  spec.I = d.I;
  for (int i : d.I) spec.x[i] = p.x(i);

  int ni = d.N_I();
  if (ni == 0) {
    fa.family = Family::D;
    for (const Component& c : d.components) spec.r_comps.push_back(c.members);
  } else if (ni == 1) {
    fa.family = Family::C;
    int ci = d.I[0];
    for (const Component& c : d.components) {
      spec.r_comps.push_back(c.members);
      spec.lambda_r.push_back(p.g(ci, c.members[0]) - p.g(c.members[0], ci));
    }
    for (int r : d.R) spec.g_r[r] = p.g(ci, r);
  } else if (ni == 2) {
    fa.family = Family::B;
    int bi = d.I[0], bj = d.I[1];
    spec.g = p.g(bi, bj);
    spec.lambda = p.g(bi, bj) - p.g(bj, bi);
    for (const Component& c : d.components) {
      switch (c.tag) {
        case ComponentTag::S: {
          for (int s : c.members) {
            Scalar gs = p.g(bi, s);
            spec.S.push_back(s);
            spec.g_s[s] = gs;
            if (p.g(s, bi) != gs - spec.lambda || p.g(s, bj) != gs ||
                p.g(bj, s) != gs - spec.lambda)
              throw InternalInconsistencyError(
                  "index " + std::to_string(s) +
                  " of a two-sided component does not follow the expected coupling "
                  "pattern");
          }
          break;
        }
        case ComponentTag::TCirc: {
          int t0 = c.members[0];
          spec.t_circ.push_back(c.members);
          spec.g_circ.push_back(t0 > bi ? p.g(bi, t0) : -p.g(t0, bi));
          break;
        }
        case ComponentTag::TBullet: {
          int t0 = c.members[0];
          spec.t_bullet.push_back(c.members);
          spec.g_bullet.push_back({p.g(bi, t0), p.g(t0, bj)});
          break;
        }
        case ComponentTag::Plain:
          throw InternalInconsistencyError("untagged component with a two-index core");
      }
    }
  } else {
    int i0 = d.I[0];
    bool sym = p.g(d.I[0], d.I[1]) == p.g(d.I[1], d.I[0]);
    if (sym) {
      fa.family = Family::AI;
      spec.g = p.g(d.I[0], d.I[1]);
    } else {
      fa.family = Family::AII;
      spec.g_i[i0] = Scalar(0);  // canonical gauge
      for (int j : d.I)
        if (j != i0) spec.g_i[j] = -p.g(i0, j);
    }
    for (const Component& c : d.components) {
      int t0 = c.members[0];
      switch (c.tag) {
        case ComponentTag::S: {
          for (int s : c.members) {
            spec.S.push_back(s);
            spec.g_s[s] = p.g(i0, s);
          }
          break;
        }
        case ComponentTag::TCirc: {
          Scalar v0 = t0 > i0 ? p.g(i0, t0) : -p.g(t0, i0);
          spec.t_circ.push_back(c.members);
          // A_II stores the offset from g_{i0} = 0, so v0 works for both kinds.
          spec.g_circ.push_back(v0);
          break;
        }
        case ComponentTag::TBullet: {
          int iN = d.I.back();
          Scalar below = p.g(i0, t0);
          Scalar above = p.g(t0, iN);
          if (!sym) above += spec.g_i.at(iN);
          spec.t_bullet.push_back(c.members);
          spec.g_bullet.push_back({below, above});
          break;
        }
        case ComponentTag::Plain:
          throw InternalInconsistencyError("untagged component with a multi-index core");
      }
    }
  }
  spec.family = fa.family;

  // Every x-free pair that deviates from the neutral values is recorded, so
  // the spec rebuilds the presentation bit-exactly.
  for (std::size_t a = 0; a < d.R.size(); ++a) {
    for (std::size_t b = a + 1; b < d.R.size(); ++b) {
      int r1 = d.R[a], r2 = d.R[b];
      const Scalar& up = p.g(r1, r2);
      const Scalar& lo = p.g(r2, r1);
      if (!(up == Scalar(1) && lo.is_zero())) spec.redges.push_back({r1, r2, up, lo});
    }
  }

  if (p.generators() == 3) fa.refined = refined_three_name(fa.family, d);
  fa.spec = spec.canonicalized();

  // Rebuild cross-check: extraction and placement are independent routes, so
  // a mismatch here means one of them is wrong.
  try {
    Presentation rebuilt = build_family(fa.spec);
    if (rebuilt != p)
      throw InternalInconsistencyError(
          "rebuilding the extracted description does not reproduce the presentation");
  } catch (const ConstraintError& e) {
    throw InternalInconsistencyError(
        std::string("extracted description fails validation: ") + e.what());
  }
  return fa;
}

PhysicalReport check_physical(const Presentation& p) {
  p.ensure_valid();
  PhysicalReport rep;
  int n = p.generators();
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      if (sgn(p.g(a, b).re()) <= 0)
        rep.violations.push_back("g " + std::to_string(a) + " " + std::to_string(b) +
                                 " must be positive, got " + p.g(a, b).str());
      if (sgn(p.g(b, a).re()) < 0)
        rep.violations.push_back("g " + std::to_string(b) + " " + std::to_string(a) +
                                 " must be nonnegative, got " + p.g(b, a).str());
    }
  }
  Decomposition d = decompose(p);
  if (d.N_I() >= 2) {
    for (const Component& c : d.components) {
      if (c.tag != ComponentTag::TCirc) continue;
      bool below = c.members.back() < d.I.front();
      bool above = c.members.front() > d.I.back();
      if (!below && !above)
        rep.violations.push_back(
            "one-sided component {" + members_str(c.members) +
            "} must lie entirely below or entirely above the x-carrying range");
    }
  }
  rep.physical = rep.violations.empty();
  return rep;
}

std::string format_diamond(const DiamondReport& r) {
  std::ostringstream out;
  out << "PBW: " << (r.passed ? "yes" : "no")
      << ", triples checked: " << r.triples_checked << "\n";
  for (const TripleFailure& f : r.failures)
    out << "fail " << f.a << " " << f.b << " " << f.c
        << ": difference = " << f.difference.str() << "\n";
  return out.str();
}

std::string format_classification(const FamilyAssignment& fa, const PhysicalReport& ph) {
  std::ostringstream out;
  const Decomposition& d = fa.decomposition;
  out << "family: " << family_name(fa.family) << "\n";
  if (!fa.refined.empty()) out << "refined: " << fa.refined << "\n";
  out << "generators: " << fa.spec.n << "\n";
  out << "N_I: " << d.N_I() << "\n";
  out << "N_R: " << d.N_R() << "\n";
  out << "M_R: " << d.M_R() << "\n";
  out << "M_S: " << d.M_S() << "\n";
  out << "M_T: " << d.M_T() << "\n";
  out << "M_T_circ: " << d.M_TCirc() << "\n";
  out << "M_T_bullet: " << d.M_TBullet() << "\n";
  if (!d.I.empty()) out << "I: " << members_str(d.I) << "\n";
  if (!d.R.empty()) out << "R: " << members_str(d.R) << "\n";
  for (std::size_t k = 0; k < d.components.size(); ++k)
    out << "component " << (k + 1) << ": tag = " << component_tag_name(d.components[k].tag)
        << ", members = " << members_str(d.components[k].members) << "\n";
  {
    std::istringstream spec_text(emit_family_spec(fa.spec));
    std::string line;
    while (std::getline(spec_text, line)) out << "spec: " << line << "\n";
  }
  out << "physical: " << (ph.physical ? "yes" : "no") << "\n";
  for (const std::string& v : ph.violations) out << "violation: " << v << "\n";
  return out.str();
}

}  // namespace diffalg
