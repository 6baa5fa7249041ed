#include "diffalg/construct.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "diffalg/classify.hpp"
#include "diffalg/errors.hpp"

namespace diffalg {

const std::vector<ThreeType>& all_three_types() {
  static const std::vector<ThreeType> types = {
      ThreeType::AI,         ThreeType::AII,        ThreeType::B1PosAlpha,
      ThreeType::B1PosBeta,  ThreeType::B1PosGamma, ThreeType::B2,
      ThreeType::B3,         ThreeType::B4,         ThreeType::C1PosAlpha,
      ThreeType::C1PosBeta,  ThreeType::C1PosGamma, ThreeType::C2PosAlpha,
      ThreeType::C2PosBeta,  ThreeType::C2PosGamma, ThreeType::D3,
  };
  return types;
}

std::string three_type_name(ThreeType t) {
  switch (t) {
    case ThreeType::AI: return "A_I";
    case ThreeType::AII: return "A_II";
    case ThreeType::B1PosAlpha: return "B(1)/pos-alpha";
    case ThreeType::B1PosBeta: return "B(1)/pos-beta";
    case ThreeType::B1PosGamma: return "B(1)/pos-gamma";
    case ThreeType::B2: return "B(2)";
    case ThreeType::B3: return "B(3)";
    case ThreeType::B4: return "B(4)";
    case ThreeType::C1PosAlpha: return "C(1)/pos-alpha";
    case ThreeType::C1PosBeta: return "C(1)/pos-beta";
    case ThreeType::C1PosGamma: return "C(1)/pos-gamma";
    case ThreeType::C2PosAlpha: return "C(2)/pos-alpha";
    case ThreeType::C2PosBeta: return "C(2)/pos-beta";
    case ThreeType::C2PosGamma: return "C(2)/pos-gamma";
    case ThreeType::D3: return "D";
  }
  throw DomainError("unknown template type");
}

ThreeType parse_three_type(const std::string& name) {
  for (ThreeType t : all_three_types())
    if (three_type_name(t) == name) return t;
  throw ParseError("unknown template type '" + name + "'");
}

std::vector<std::string> three_type_param_keys(ThreeType t) {
  switch (t) {
    case ThreeType::AI: return {"g", "x1", "x2", "x3"};
    case ThreeType::AII: return {"g1", "g2", "g3", "x1", "x2", "x3"};
    case ThreeType::B1PosAlpha: return {"g", "gs", "Lambda", "x2", "x3"};
    case ThreeType::B1PosBeta: return {"g", "gs", "Lambda", "x1", "x3"};
    case ThreeType::B1PosGamma: return {"g", "gs", "Lambda", "x1", "x2"};
    case ThreeType::B2: return {"g12", "g13", "g31", "g23", "x1", "x3"};
    case ThreeType::B3: return {"g", "gs", "Lambda", "x1", "x2"};
    case ThreeType::B4: return {"g", "gs", "Lambda", "x2", "x3"};
    case ThreeType::C1PosAlpha: return {"x1", "g2", "g3", "Lambda", "ru", "rl"};
    case ThreeType::C1PosBeta: return {"x2", "g1", "g3", "Lambda", "ru", "rl"};
    case ThreeType::C1PosGamma: return {"x3", "g1", "g2", "Lambda", "ru", "rl"};
    case ThreeType::C2PosAlpha: return {"x1", "g12", "g21", "g13", "g31"};
    case ThreeType::C2PosBeta: return {"x2", "g12", "g21", "g23", "g32"};
    case ThreeType::C2PosGamma: return {"x3", "g13", "g31", "g23", "g32"};
    case ThreeType::D3: return {"q21", "q31", "q32"};
  }
  throw DomainError("unknown template type");
}

namespace {

struct ParamReader {
  const ParamMap& params;
  explicit ParamReader(ThreeType t, const ParamMap& p) : params(p) {
    std::vector<std::string> keys = three_type_param_keys(t);
    std::set<std::string> want(keys.begin(), keys.end());
    for (const auto& [k, v] : p)
      if (!want.count(k))
        throw ParseError("unknown parameter key '" + k + "' for template " +
                         three_type_name(t));
    for (const std::string& k : keys)
      if (!p.count(k))
        throw ParseError("missing parameter '" + k + "' for template " +
                         three_type_name(t));
  }
  const Scalar& operator()(const std::string& key) const { return params.at(key); }
};

void need(bool ok, const std::string& condition) {
  if (!ok) throw ConstraintError(condition);
}

void need_real(const Scalar& v, const std::string& key) {
  need(v.is_real(), key + " must be real");
}

void need_x(const ParamReader& P, const std::string& key) {
  need(!P(key).is_zero(), key + " must be nonzero");
}

}  // namespace

Presentation build_three_unchecked(ThreeType t, const ParamMap& params) {
  ParamReader P(t, params);
  Presentation p = Presentation::canonical_base(3);
  auto set_pair = [&](int a, int b, const Scalar& up, const Scalar& lo) {
    p.set_g(a, b, up);
    p.set_g(b, a, lo);
  };
  switch (t) {
    case ThreeType::AI: {
      const Scalar& g = P("g");
      set_pair(1, 2, g, g);
      set_pair(1, 3, g, g);
      set_pair(2, 3, g, g);
      p.set_x(1, P("x1"));
      p.set_x(2, P("x2"));
      p.set_x(3, P("x3"));
      break;
    }
    case ThreeType::AII: {
      set_pair(1, 2, P("g1") - P("g2"), Scalar(0));
      set_pair(1, 3, P("g1") - P("g3"), Scalar(0));
      set_pair(2, 3, P("g2") - P("g3"), Scalar(0));
      p.set_x(1, P("x1"));
      p.set_x(2, P("x2"));
      p.set_x(3, P("x3"));
      break;
    }
    case ThreeType::B1PosAlpha: {
      const Scalar &g = P("g"), &gs = P("gs"), &L = P("Lambda");
      set_pair(2, 3, g, g - L);
      set_pair(1, 2, gs - L, gs);
      set_pair(1, 3, gs, gs - L);
      p.set_x(2, P("x2"));
      p.set_x(3, P("x3"));
      break;
    }
    case ThreeType::B1PosBeta: {
      const Scalar &g = P("g"), &gs = P("gs"), &L = P("Lambda");
      set_pair(1, 3, g, g - L);
      set_pair(1, 2, gs, gs - L);
      set_pair(2, 3, gs, gs - L);
      p.set_x(1, P("x1"));
      p.set_x(3, P("x3"));
      break;
    }
    case ThreeType::B1PosGamma: {
      const Scalar &g = P("g"), &gs = P("gs"), &L = P("Lambda");
      set_pair(1, 2, g, g - L);
      set_pair(1, 3, gs, gs - L);
      set_pair(2, 3, gs - L, gs);
      p.set_x(1, P("x1"));
      p.set_x(2, P("x2"));
      break;
    }
    case ThreeType::B2: {
      set_pair(1, 2, P("g12"), Scalar(0));
      set_pair(1, 3, P("g13"), P("g31"));
      set_pair(2, 3, P("g23"), Scalar(0));
      p.set_x(1, P("x1"));
      p.set_x(3, P("x3"));
      break;
    }
    case ThreeType::B3: {
      const Scalar &g = P("g"), &gs = P("gs"), &L = P("Lambda");
      set_pair(1, 2, g, g - L);
      set_pair(1, 3, gs, Scalar(0));
      set_pair(2, 3, gs - L, Scalar(0));
      p.set_x(1, P("x1"));
      p.set_x(2, P("x2"));
      break;
    }
    case ThreeType::B4: {
      const Scalar &g = P("g"), &gs = P("gs"), &L = P("Lambda");
      set_pair(2, 3, g, g - L);
      set_pair(1, 2, gs - L, Scalar(0));
      set_pair(1, 3, gs, Scalar(0));
      p.set_x(2, P("x2"));
      p.set_x(3, P("x3"));
      break;
    }
    case ThreeType::C1PosAlpha: {
      const Scalar& L = P("Lambda");
      set_pair(1, 2, P("g2"), P("g2") - L);
      set_pair(1, 3, P("g3"), P("g3") - L);
      set_pair(2, 3, P("ru"), P("rl"));
      p.set_x(1, P("x1"));
      break;
    }
    case ThreeType::C1PosBeta: {
      const Scalar& L = P("Lambda");
      set_pair(1, 2, P("g1") - L, P("g1"));
      set_pair(2, 3, P("g3"), P("g3") - L);
      set_pair(1, 3, P("ru"), P("rl"));
      p.set_x(2, P("x2"));
      break;
    }
    case ThreeType::C1PosGamma: {
      const Scalar& L = P("Lambda");
      set_pair(1, 3, P("g1") - L, P("g1"));
      set_pair(2, 3, P("g2") - L, P("g2"));
      set_pair(1, 2, P("ru"), P("rl"));
      p.set_x(3, P("x3"));
      break;
    }
    case ThreeType::C2PosAlpha: {
      set_pair(1, 2, P("g12"), P("g21"));
      set_pair(1, 3, P("g13"), P("g31"));
      p.set_x(1, P("x1"));
      break;
    }
    case ThreeType::C2PosBeta: {
      set_pair(1, 2, P("g12"), P("g21"));
      set_pair(2, 3, P("g23"), P("g32"));
      p.set_x(2, P("x2"));
      break;
    }
    case ThreeType::C2PosGamma: {
      set_pair(1, 3, P("g13"), P("g31"));
      set_pair(2, 3, P("g23"), P("g32"));
      p.set_x(3, P("x3"));
      break;
    }
    case ThreeType::D3: {
      set_pair(1, 2, Scalar(1), P("q21"));
      set_pair(1, 3, Scalar(1), P("q31"));
      set_pair(2, 3, Scalar(1), P("q32"));
      break;
    }
  }
  return p;
}

Presentation build_three(ThreeType t, const ParamMap& params) {
  ParamReader P(t, params);
  for (const std::string& key : three_type_param_keys(t)) {
    if (key[0] == 'x') {
      need_x(P, key);
    } else {
      need_real(P(key), key);
    }
  }
  switch (t) {
    case ThreeType::AI:
      need(!P("g").is_zero(), "g must be nonzero");
      break;
    case ThreeType::AII:
      need(P("g1") != P("g2") && P("g1") != P("g3") && P("g2") != P("g3"),
           "g1, g2, g3 must be pairwise distinct");
      break;
    case ThreeType::B1PosBeta:
      need(!P("g").is_zero(), "g must be nonzero");
      need(!P("gs").is_zero(), "gs must be nonzero");
      break;
    case ThreeType::B1PosAlpha:
    case ThreeType::B1PosGamma:
    case ThreeType::B3:
    case ThreeType::B4:
      need(!P("g").is_zero(), "g must be nonzero");
      need(!P("gs").is_zero(), "gs must be nonzero");
      need(P("gs") != P("Lambda"), "gs must differ from Lambda");
      break;
    case ThreeType::B2:
      need(!P("g12").is_zero(), "g12 must be nonzero");
      need(!P("g13").is_zero(), "g13 must be nonzero");
      need(!P("g23").is_zero(), "g23 must be nonzero");
      break;
    case ThreeType::C1PosAlpha:
      need(!P("g2").is_zero(), "g2 must be nonzero");
      need(!P("g3").is_zero(), "g3 must be nonzero");
      need(!P("ru").is_zero(), "ru must be nonzero");
      break;
    case ThreeType::C1PosBeta:
      need(P("g1") != P("Lambda"), "g1 must differ from Lambda");
      need(!P("g3").is_zero(), "g3 must be nonzero");
      need(!P("ru").is_zero(), "ru must be nonzero");
      break;
    case ThreeType::C1PosGamma:
      need(P("g1") != P("Lambda"), "g1 must differ from Lambda");
      need(P("g2") != P("Lambda"), "g2 must differ from Lambda");
      need(!P("ru").is_zero(), "ru must be nonzero");
      break;
    case ThreeType::C2PosAlpha:
      need(!P("g12").is_zero(), "g12 must be nonzero");
      need(!P("g13").is_zero(), "g13 must be nonzero");
      break;
    case ThreeType::C2PosBeta:
      need(!P("g12").is_zero(), "g12 must be nonzero");
      need(!P("g23").is_zero(), "g23 must be nonzero");
      break;
    case ThreeType::C2PosGamma:
      need(!P("g13").is_zero(), "g13 must be nonzero");
      need(!P("g23").is_zero(), "g23 must be nonzero");
      break;
    case ThreeType::D3:
      break;
  }
  return build_three_unchecked(t, params);
}

// ---------------------------------------------------------------------------
// Family builder.

namespace {

Presentation place_family(const FamilySpec& s) {
  Presentation p = Presentation::canonical_base(s.n);
  for (const auto& [i, v] : s.x) p.set_x(i, v);

  // Offset of the coupling constant toward core index i relative to the
  // stored one-sided component parameters.
  auto base = [&](int i) -> Scalar {
    switch (s.family) {
      case Family::AII: return s.g_i.at(i);
      case Family::B: return i == s.I[0] ? Scalar(0) : -s.lambda;
      default: return Scalar(0);
    }
  };

  switch (s.family) {
    case Family::AI:
      for (std::size_t a = 0; a < s.I.size(); ++a)
        for (std::size_t b = a + 1; b < s.I.size(); ++b) {
          p.set_g(s.I[a], s.I[b], s.g);
          p.set_g(s.I[b], s.I[a], s.g);
        }
      for (int sm : s.S)
        for (int i : s.I) {
          p.set_g(i, sm, s.g_s.at(sm));
          p.set_g(sm, i, s.g_s.at(sm));
        }
      break;
    case Family::AII:
      for (std::size_t a = 0; a < s.I.size(); ++a)
        for (std::size_t b = a + 1; b < s.I.size(); ++b) {
          p.set_g(s.I[a], s.I[b], s.g_i.at(s.I[a]) - s.g_i.at(s.I[b]));
          p.set_g(s.I[b], s.I[a], Scalar(0));
        }
      break;
    case Family::B: {
      int bi = s.I[0], bj = s.I[1];
      p.set_g(bi, bj, s.g);
      p.set_g(bj, bi, s.g - s.lambda);
      for (int sm : s.S) {
        const Scalar& gs = s.g_s.at(sm);
        p.set_g(bi, sm, gs);
        p.set_g(sm, bi, gs - s.lambda);
        p.set_g(sm, bj, gs);
        p.set_g(bj, sm, gs - s.lambda);
      }
      break;
    }
    case Family::C: {
      int ci = s.I[0];
      for (std::size_t a = 0; a < s.r_comps.size(); ++a)
        for (int r : s.r_comps[a]) {
          p.set_g(ci, r, s.g_r.at(r));
          p.set_g(r, ci, s.g_r.at(r) - s.lambda_r[a]);
        }
      break;
    }
    case Family::D:
      break;
  }

  for (std::size_t a = 0; a < s.t_circ.size(); ++a) {
    for (int t : s.t_circ[a]) {
      for (int i : s.I) {
        Scalar v = s.g_circ[a] + base(i);
        if (t > i) {
          p.set_g(i, t, v);
          p.set_g(t, i, Scalar(0));
        } else {
          p.set_g(t, i, -v);
          p.set_g(i, t, Scalar(0));
        }
      }
    }
  }
  for (std::size_t b = 0; b < s.t_bullet.size(); ++b) {
    for (int t : s.t_bullet[b]) {
      for (int i : s.I) {
        if (i < t) {
          // Core index below the component; A_II offsets by +g_i.
          Scalar w = s.g_bullet[b].first;
          if (s.family == Family::AII) w += s.g_i.at(i);
          p.set_g(i, t, w);
          p.set_g(t, i, Scalar(0));
        } else {
          // Core index above the component; A_II offsets by -g_i.
          Scalar w = s.g_bullet[b].second;
          if (s.family == Family::AII) w -= s.g_i.at(i);
          p.set_g(t, i, w);
          p.set_g(i, t, Scalar(0));
        }
      }
    }
  }

  for (const REdge& e : s.redges) {
    p.set_g(e.r1, e.r2, e.upper);
    p.set_g(e.r2, e.r1, e.lower);
  }
  return p;
}

}  // namespace

Presentation build_family(const FamilySpec& spec) {
  spec.ensure_valid();
  return place_family(spec.canonicalized());
}

Presentation build_family_unchecked(const FamilySpec& spec) {
  std::vector<std::string> shape = spec.shape_violations();
  if (!shape.empty()) throw ConstraintError(shape[0]);
  return place_family(spec.canonicalized());
}

// ---------------------------------------------------------------------------
// Blending.

const std::vector<BlockKindInfo>& elementary_blocks() {
  static const std::vector<BlockKindInfo> catalog = {
      {BlockKind::AI_S, Family::AI, "A_I(I,S)", "S", "any position"},
      {BlockKind::AI_TCirc, Family::AI, "A_I(I,T_circ)", "T_circ",
       "outside every adjacent core gap"},
      {BlockKind::AI_TBullet, Family::AI, "A_I(I,T_bullet)", "T_bullet",
       "inside one adjacent core gap"},
      {BlockKind::AII_TCirc, Family::AII, "A_II(I,T_circ)", "T_circ",
       "outside every adjacent core gap"},
      {BlockKind::AII_TBullet, Family::AII, "A_II(I,T_bullet)", "T_bullet",
       "inside one adjacent core gap"},
      {BlockKind::B_S, Family::B, "B(I,S)", "S", "any position"},
      {BlockKind::B_TCirc, Family::B, "B(I,T_circ)", "T_circ",
       "outside the core gap"},
      {BlockKind::B_TBullet, Family::B, "B(I,T_bullet)", "T_bullet",
       "inside the core gap"},
      {BlockKind::C_R, Family::C, "C(I,R)", "R", "any position"},
      {BlockKind::D_R, Family::D, "D(R)", "R", "any position"},
  };
  return catalog;
}

const BlockKindInfo& block_kind_info(BlockKind k) {
  for (const BlockKindInfo& info : elementary_blocks())
    if (info.kind == k) return info;
  throw DomainError("unknown block kind");
}

std::string block_kind_name(BlockKind k) { return block_kind_info(k).name; }

namespace {

// The x-free component of a single-component spec, with its kind-category
// ("S", "T_circ", "T_bullet", "R"); empty members for a pure-core spec.
std::pair<std::vector<int>, std::string> single_u_component(const FamilySpec& spec) {
  FamilySpec s = spec.canonicalized();
  std::vector<std::pair<std::vector<int>, std::string>> found;
  for (const auto& sub : s_subcomponents(s)) found.push_back({sub, "S"});
  for (const auto& c : s.t_circ) found.push_back({c, "T_circ"});
  for (const auto& c : s.t_bullet) found.push_back({c, "T_bullet"});
  for (const auto& c : s.r_comps) found.push_back({c, "R"});
  if (found.size() > 1)
    throw ConstraintError("building block needs at most one x-free component");
  if (found.empty()) return {{}, ""};
  return found[0];
}

std::string default_u_kind(Family f) {
  switch (f) {
    case Family::AI: return "S";
    case Family::AII: return "T_circ";
    case Family::B: return "S";
    case Family::C: return "R";
    case Family::D: return "R";
  }
  throw DomainError("unknown family");
}

BlockKind kind_for(Family f, const std::string& u_kind) {
  for (const BlockKindInfo& info : elementary_blocks())
    if (info.family == f && info.u_kind == u_kind) return info.kind;
  throw ConstraintError("family " + family_name(f) + " has no block with a " + u_kind +
                        " component");
}

}  // namespace

BuildingBlock make_block(const FamilySpec& spec) {
  spec.ensure_valid();
  auto [members, u_kind] = single_u_component(spec);
  if (u_kind.empty()) u_kind = default_u_kind(spec.family);
  BuildingBlock b;
  b.kind = kind_for(spec.family, u_kind);
  b.spec = spec.canonicalized();
  return b;
}

BuildingBlock make_block(BlockKind kind, const FamilySpec& spec) {
  BuildingBlock b = make_block(spec);
  const BlockKindInfo& want = block_kind_info(kind);
  auto [members, u_kind] = single_u_component(spec);
  if (spec.canonicalized().family != want.family ||
      (!u_kind.empty() && u_kind != want.u_kind))
    throw ConstraintError("spec does not match block kind " + std::string(want.name));
  b.kind = kind;
  return b;
}

std::string plan_token_str(const PlanToken& t) {
  return t.is_I ? std::string("I") : "U" + std::to_string(t.block);
}

namespace {

// Per-block index pattern: true at the positions (ascending local index) that
// belong to the shared core.
std::vector<bool> block_pattern(const BuildingBlock& b) {
  std::set<int> icore(b.spec.I.begin(), b.spec.I.end());
  std::vector<bool> pat;
  for (int a = 1; a <= b.spec.n; ++a) pat.push_back(icore.count(a) > 0);
  return pat;
}

}  // namespace

Presentation blend(const BlendPlan& plan) {
  if (plan.blocks.empty()) throw ConstraintError("blend plan needs at least one block");

  std::vector<Presentation> built;
  built.reserve(plan.blocks.size());
  for (const BuildingBlock& b : plan.blocks) built.push_back(build_family(b.spec));

  const FamilySpec& first = plan.blocks[0].spec;
  std::size_t ni = first.I.size();
  for (const BuildingBlock& b : plan.blocks) {
    if (b.spec.family != first.family)
      throw ConstraintError("blocks must share the family");
    if (b.spec.I.size() != ni)
      throw ConstraintError("blocks disagree on the shared core size");
  }
  const Presentation& p0 = built[0];
  for (std::size_t l = 1; l < plan.blocks.size(); ++l) {
    const FamilySpec& s = plan.blocks[l].spec;
    for (std::size_t k = 0; k < ni; ++k)
      if (built[l].x(s.I[k]) != p0.x(first.I[k]))
        throw ConstraintError("blocks disagree on the shared x values");
    for (std::size_t a = 0; a < ni; ++a)
      for (std::size_t b = 0; b < ni; ++b)
        if (a != b &&
            built[l].g(s.I[a], s.I[b]) != p0.g(first.I[a], first.I[b]))
          throw ConstraintError("blocks disagree on the intra-core coefficients");
  }

  // Token counts.
  std::size_t icount = 0;
  std::vector<std::size_t> ucount(plan.blocks.size(), 0);
  for (const PlanToken& t : plan.order) {
    if (t.is_I) {
      ++icount;
    } else {
      if (t.block < 1 || t.block > static_cast<int>(plan.blocks.size()))
        throw ConstraintError("token refers to a block that does not exist");
      ++ucount[static_cast<std::size_t>(t.block - 1)];
    }
  }
  if (icount != ni)
    throw ConstraintError("token order must contain exactly the shared core count of I tokens");
  for (std::size_t l = 0; l < plan.blocks.size(); ++l)
    if (ucount[l] != static_cast<std::size_t>(plan.blocks[l].spec.n) - ni)
      throw ConstraintError("token count for block " + std::to_string(l + 1) +
                            " must match its x-free size");

  // Pattern consistency + local-to-global maps.
  std::vector<std::vector<bool>> pattern;
  for (const BuildingBlock& b : plan.blocks) pattern.push_back(block_pattern(b));
  std::vector<std::size_t> consumed(plan.blocks.size(), 0);
  // loc2glob[l][local-1] = global index
  std::vector<std::vector<int>> loc2glob(plan.blocks.size());
  for (std::size_t l = 0; l < plan.blocks.size(); ++l)
    loc2glob[l].assign(static_cast<std::size_t>(plan.blocks[l].spec.n), 0);

  int global = 0;
  for (const PlanToken& t : plan.order) {
    ++global;
    if (t.is_I) {
      for (std::size_t l = 0; l < plan.blocks.size(); ++l) {
        if (consumed[l] >= pattern[l].size() || !pattern[l][consumed[l]])
          throw ConstraintError("token order violates block " + std::to_string(l + 1) +
                                "'s index pattern");
        loc2glob[l][consumed[l]] = global;
        ++consumed[l];
      }
    } else {
      std::size_t l = static_cast<std::size_t>(t.block - 1);
      if (consumed[l] >= pattern[l].size() || pattern[l][consumed[l]])
        throw ConstraintError("token order violates block " + std::to_string(t.block) +
                              "'s index pattern");
      loc2glob[l][consumed[l]] = global;
      ++consumed[l];
    }
  }

  int n = global;
  Presentation out = Presentation::canonical_base(n);

  // Transfer per block; the pattern check makes every local->global map
  // order-preserving, so upper stays upper.
  for (std::size_t l = 0; l < plan.blocks.size(); ++l) {
    int nl = plan.blocks[l].spec.n;
    for (int a = 1; a <= nl; ++a) {
      int ga = loc2glob[l][static_cast<std::size_t>(a - 1)];
      out.set_x(ga, built[l].x(a));
      for (int b = 1; b <= nl; ++b) {
        if (a == b) continue;
        out.set_g(ga, loc2glob[l][static_cast<std::size_t>(b - 1)], built[l].g(a, b));
      }
    }
  }
  return out;
}

void for_each_interleaving(const std::vector<BuildingBlock>& blocks,
                           const std::function<bool(const std::vector<PlanToken>&)>& fn) {
  if (blocks.empty()) throw ConstraintError("blend plan needs at least one block");
  std::vector<std::vector<bool>> pattern;
  std::size_t total = 0, ni = blocks[0].spec.I.size();
  for (const BuildingBlock& b : blocks) {
    if (b.spec.I.size() != ni)
      throw ConstraintError("blocks disagree on the shared core size");
    pattern.push_back(block_pattern(b));
    total += static_cast<std::size_t>(b.spec.n) - ni;
  }
  total += ni;

  std::vector<std::size_t> consumed(blocks.size(), 0);
  std::vector<PlanToken> order;
  order.reserve(total);
  bool stop = false;

  std::function<void()> rec = [&]() {
    if (stop) return;
    if (order.size() == total) {
      if (!fn(order)) stop = true;
      return;
    }
    // Shared-core token first (lexicographically smallest), then each block.
    bool core_ok = true;
    for (std::size_t l = 0; l < blocks.size(); ++l)
      if (consumed[l] >= pattern[l].size() || !pattern[l][consumed[l]]) {
        core_ok = false;
        break;
      }
    if (core_ok) {
      for (std::size_t l = 0; l < blocks.size(); ++l) ++consumed[l];
      order.push_back({true, 0});
      rec();
      order.pop_back();
      for (std::size_t l = 0; l < blocks.size(); ++l) --consumed[l];
    }
    for (std::size_t l = 0; l < blocks.size() && !stop; ++l) {
      if (consumed[l] < pattern[l].size() && !pattern[l][consumed[l]]) {
        ++consumed[l];
        order.push_back({false, static_cast<int>(l + 1)});
        rec();
        order.pop_back();
        --consumed[l];
      }
    }
  };
  rec();
}

mpz_class count_interleavings(const std::vector<BuildingBlock>& blocks) {
  mpz_class count = 0;
  for_each_interleaving(blocks, [&](const std::vector<PlanToken>&) {
    ++count;
    return true;
  });
  return count;
}

BlendPlan find_blend_plan(const Presentation& p) {
  FamilyAssignment fa = classify_family(p);
  const Decomposition& d = fa.decomposition;
  const FamilySpec& full = fa.spec;

  // Cross-component pairs other than the neutral ones cannot come out of a
  // blend, whose blocks only carry intra-component information.
  {
    std::map<int, int> comp_of;
    for (std::size_t k = 0; k < d.components.size(); ++k)
      for (int m : d.components[k].members) comp_of[m] = static_cast<int>(k);
    for (std::size_t a = 0; a < d.R.size(); ++a)
      for (std::size_t b = a + 1; b < d.R.size(); ++b) {
        int r1 = d.R[a], r2 = d.R[b];
        if (comp_of[r1] == comp_of[r2]) continue;
        if (!(p.g(r1, r2) == Scalar(1) && p.g(r2, r1).is_zero()))
          throw NotApplicableError(
              "cross-component coefficients deviate from the neutral values; not in "
              "the image of blend");
      }
  }

  BlendPlan plan;
  if (d.components.empty()) {
    plan.blocks.push_back(make_block(full));
    for (std::size_t k = 0; k < d.I.size(); ++k) plan.order.push_back({true, 0});
    return plan;
  }

  for (std::size_t k = 0; k < d.components.size(); ++k) {
    const Component& comp = d.components[k];
    std::vector<int> indices = d.I;
    indices.insert(indices.end(), comp.members.begin(), comp.members.end());
    std::sort(indices.begin(), indices.end());
    std::map<int, int> to_local;
    for (std::size_t a = 0; a < indices.size(); ++a)
      to_local[indices[a]] = static_cast<int>(a + 1);

    FamilySpec s;
    s.family = full.family;
    s.n = static_cast<int>(indices.size());
    for (int i : d.I) s.I.push_back(to_local[i]);
    std::sort(s.I.begin(), s.I.end());
    for (int i : d.I) s.x[to_local[i]] = full.x.at(i);
    s.g = full.g;
    s.lambda = full.lambda;
    for (const auto& [i, v] : full.g_i) s.g_i[to_local[i]] = v;

    std::vector<int> local_members;
    for (int m : comp.members) local_members.push_back(to_local[m]);
    std::sort(local_members.begin(), local_members.end());

    switch (comp.tag) {
      case ComponentTag::S:
        s.S = local_members;
        for (int m : comp.members) s.g_s[to_local[m]] = full.g_s.at(m);
        break;
      case ComponentTag::TCirc: {
        s.t_circ.push_back(local_members);
        for (std::size_t a = 0; a < full.t_circ.size(); ++a)
          if (full.t_circ[a] == comp.members) s.g_circ.push_back(full.g_circ[a]);
        break;
      }
      case ComponentTag::TBullet: {
        s.t_bullet.push_back(local_members);
        for (std::size_t b = 0; b < full.t_bullet.size(); ++b)
          if (full.t_bullet[b] == comp.members) s.g_bullet.push_back(full.g_bullet[b]);
        break;
      }
      case ComponentTag::Plain: {
        s.r_comps.push_back(local_members);
        for (std::size_t a = 0; a < full.r_comps.size(); ++a)
          if (full.r_comps[a] == comp.members && a < full.lambda_r.size())
            s.lambda_r.push_back(full.lambda_r[a]);
        for (int m : comp.members)
          if (full.g_r.count(m)) s.g_r[to_local[m]] = full.g_r.at(m);
        break;
      }
    }
    for (const REdge& e : full.redges) {
      bool member1 = std::find(comp.members.begin(), comp.members.end(), e.r1) !=
                     comp.members.end();
      bool member2 = std::find(comp.members.begin(), comp.members.end(), e.r2) !=
                     comp.members.end();
      if (member1 && member2)
        s.redges.push_back({to_local[e.r1], to_local[e.r2], e.upper, e.lower});
    }
    plan.blocks.push_back(make_block(s));
  }

  std::map<int, int> comp_ordinal;
  for (std::size_t k = 0; k < d.components.size(); ++k)
    for (int m : d.components[k].members) comp_ordinal[m] = static_cast<int>(k + 1);
  for (int a = 1; a <= p.generators(); ++a) {
    if (comp_ordinal.count(a))
      plan.order.push_back({false, comp_ordinal[a]});
    else
      plan.order.push_back({true, 0});
  }
  return plan;
}

std::string emit_blend_plan(const BlendPlan& plan) {
  std::ostringstream out;
  out << "blend\n";
  for (const BuildingBlock& b : plan.blocks) {
    out << "block\n";
    out << emit_family_spec(b.spec);
    out << "endblock\n";
  }
  out << "order";
  for (const PlanToken& t : plan.order) out << " " << plan_token_str(t);
  out << "\n";
  return out.str();
}

namespace {

std::string clean_plan_line(const std::string& raw) {
  std::string s = raw;
  std::size_t hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

BlendPlan parse_blend_plan(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    std::string s = clean_plan_line(raw);
    if (!s.empty()) lines.push_back(s);
  }
  if (lines.empty() || lines[0] != "blend")
    throw ParseError("plan must start with a 'blend' line");

  BlendPlan plan;
  std::size_t k = 1;
  while (k < lines.size() && lines[k] == "block") {
    ++k;
    std::vector<std::string> body;
    while (k < lines.size() && lines[k] != "endblock") body.push_back(lines[k++]);
    if (k >= lines.size()) throw ParseError("unterminated block (missing 'endblock')");
    ++k;
    plan.blocks.push_back(make_block(parse_family_spec_lines(body)));
  }
  if (plan.blocks.empty()) throw ParseError("plan needs at least one block");
  if (k == lines.size()) return plan;  // blocks only; order left empty
  if (lines[k].rfind("order", 0) != 0)
    throw ParseError("plan must end with an 'order ...' line");
  {
    std::istringstream ot(lines[k]);
    std::string tok;
    ot >> tok;  // "order"
    while (ot >> tok) {
      if (tok == "I") {
        plan.order.push_back({true, 0});
      } else if (tok.size() >= 2 && tok[0] == 'U') {
        int b = 0;
        try {
          b = std::stoi(tok.substr(1));
        } catch (const std::exception&) {
          throw ParseError("bad order token '" + tok + "'");
        }
        if (b < 1 || b > static_cast<int>(plan.blocks.size()))
          throw ParseError("order token '" + tok + "' refers to a missing block");
        plan.order.push_back({false, b});
      } else {
        throw ParseError("bad order token '" + tok + "'");
      }
    }
  }
  if (k + 1 != lines.size()) throw ParseError("unexpected lines after the order line");
  return plan;
}

BlendPlan load_blend_plan_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_blend_plan(buf.str());
}

}  // namespace diffalg
