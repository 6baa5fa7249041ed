#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "diffalg/classify.hpp"
#include "diffalg/construct.hpp"
#include "diffalg/errors.hpp"
#include "testutil.hpp"

using namespace diffalg;

namespace {

// The symbolic description equivalent to each three-generator template at the
// shared sample parameters; an independent route to the same coefficients.
FamilySpec sample_spec(ThreeType t) {
  FamilySpec s;
  s.n = 3;
  switch (t) {
    case ThreeType::AI:
      s.family = Family::AI;
      s.I = {1, 2, 3};
      s.g = Scalar(2);
      s.x = {{1, Scalar(1)}, {2, Scalar(2)}, {3, Scalar(3)}};
      break;
    case ThreeType::AII:
      s.family = Family::AII;
      s.I = {1, 2, 3};
      s.g_i = {{1, Scalar(0)}, {2, Scalar(1)}, {3, Scalar(3)}};
      s.x = {{1, Scalar(1)}, {2, Scalar(2)}, {3, Scalar(3)}};
      break;
    case ThreeType::B1PosAlpha:
      s.family = Family::B;
      s.I = {2, 3};
      s.S = {1};
      s.g = Scalar(2);
      s.lambda = Scalar(1);
      s.g_s = {{1, Scalar(3)}};
      s.x = {{2, Scalar(1)}, {3, Scalar(2)}};
      break;
    case ThreeType::B1PosBeta:
      s.family = Family::B;
      s.I = {1, 3};
      s.S = {2};
      s.g = Scalar(2);
      s.lambda = Scalar(1);
      s.g_s = {{2, Scalar(3)}};
      s.x = {{1, Scalar(1)}, {3, Scalar(2)}};
      break;
    case ThreeType::B1PosGamma:
      s.family = Family::B;
      s.I = {1, 2};
      s.S = {3};
      s.g = Scalar(2);
      s.lambda = Scalar(1);
      s.g_s = {{3, Scalar(3)}};
      s.x = {{1, Scalar(1)}, {2, Scalar(2)}};
      break;
    case ThreeType::B2:
      s.family = Family::B;
      s.I = {1, 3};
      s.t_bullet = {{2}};
      s.g = Scalar(3);
      s.lambda = Scalar(2);
      s.g_bullet = {{Scalar(2), Scalar(4)}};
      s.x = {{1, Scalar(1)}, {3, Scalar(2)}};
      break;
    case ThreeType::B3:
      s.family = Family::B;
      s.I = {1, 2};
      s.t_circ = {{3}};
      s.g = Scalar(2);
      s.lambda = Scalar(1);
      s.g_circ = {Scalar(3)};
      s.x = {{1, Scalar(1)}, {2, Scalar(2)}};
      break;
    case ThreeType::B4:
      s.family = Family::B;
      s.I = {2, 3};
      s.t_circ = {{1}};
      s.g = Scalar(2);
      s.lambda = Scalar(1);
      s.g_circ = {Scalar(-2)};  // negated below-side value, i.e. Lambda - 3
      s.x = {{2, Scalar(1)}, {3, Scalar(2)}};
      break;
    case ThreeType::C1PosAlpha:
      s.family = Family::C;
      s.I = {1};
      s.r_comps = {{2, 3}};
      s.lambda_r = {Scalar(1)};
      s.g_r = {{2, Scalar(2)}, {3, Scalar(3)}};
      s.redges = {{2, 3, Scalar(2), Scalar(1)}};
      s.x = {{1, Scalar(1)}};
      break;
    case ThreeType::C1PosBeta:
      s.family = Family::C;
      s.I = {2};
      s.r_comps = {{1, 3}};
      s.lambda_r = {Scalar(1)};
      s.g_r = {{1, Scalar(3)}, {3, Scalar(2)}};
      s.redges = {{1, 3, Scalar(2), Scalar(1)}};
      s.x = {{2, Scalar(1)}};
      break;
    case ThreeType::C1PosGamma:
      s.family = Family::C;
      s.I = {3};
      s.r_comps = {{1, 2}};
      s.lambda_r = {Scalar(1)};
      s.g_r = {{1, Scalar(3)}, {2, Scalar(4)}};
      s.redges = {{1, 2, Scalar(2), Scalar(1)}};
      s.x = {{3, Scalar(1)}};
      break;
    case ThreeType::C2PosAlpha:
      s.family = Family::C;
      s.I = {1};
      s.r_comps = {{2}, {3}};
      s.lambda_r = {Scalar(1), Scalar(2)};
      s.g_r = {{2, Scalar(2)}, {3, Scalar(3)}};
      s.x = {{1, Scalar(1)}};
      break;
    case ThreeType::C2PosBeta:
      s.family = Family::C;
      s.I = {2};
      s.r_comps = {{1}, {3}};
      s.lambda_r = {Scalar(-1), Scalar(2)};
      s.g_r = {{1, Scalar(1)}, {3, Scalar(3)}};
      s.x = {{2, Scalar(1)}};
      break;
    case ThreeType::C2PosGamma:
      s.family = Family::C;
      s.I = {3};
      s.r_comps = {{1}, {2}};
      s.lambda_r = {Scalar(-1), Scalar(-2)};
      s.g_r = {{1, Scalar(1)}, {2, Scalar(1)}};
      s.x = {{3, Scalar(1)}};
      break;
    case ThreeType::D3:
      s.family = Family::D;
      s.r_comps = {{1, 2, 3}};
      s.redges = {{1, 2, Scalar(1), Scalar(5)},
                  {2, 3, Scalar(1), Scalar::rational(1, 2)}};
      break;
  }
  return s;
}

FamilySpec c_block(int lambda, int gr, const Scalar& x1) {
  FamilySpec s;
  s.family = Family::C;
  s.n = 2;
  s.I = {1};
  s.r_comps = {{2}};
  s.lambda_r = {Scalar(lambda)};
  s.g_r = {{2, Scalar(gr)}};
  s.x = {{1, x1}};
  return s;
}

// Every valid token order by filtering raw permutations of the token multiset
// against the per-block index patterns; the independent route for the
// interleaving enumerator.
std::vector<std::vector<PlanToken>> brute_orders(const std::vector<BuildingBlock>& blocks) {
  std::size_t ni = blocks[0].spec.I.size();
  std::vector<int> toks(ni, 0);
  for (std::size_t l = 0; l < blocks.size(); ++l)
    toks.insert(toks.end(), static_cast<std::size_t>(blocks[l].spec.n) - ni,
                static_cast<int>(l + 1));
  std::sort(toks.begin(), toks.end());

  auto core_position = [&](std::size_t l, std::size_t pos) {
    const std::vector<int>& I = blocks[l].spec.I;
    return std::find(I.begin(), I.end(), static_cast<int>(pos + 1)) != I.end();
  };

  std::vector<std::vector<PlanToken>> out;
  do {
    std::vector<std::size_t> consumed(blocks.size(), 0);
    bool ok = true;
    for (int tk : toks) {
      if (tk == 0) {
        for (std::size_t l = 0; l < blocks.size(); ++l) {
          if (!core_position(l, consumed[l])) ok = false;
          ++consumed[l];
        }
      } else {
        std::size_t l = static_cast<std::size_t>(tk - 1);
        if (core_position(l, consumed[l])) ok = false;
        ++consumed[l];
      }
      if (!ok) break;
    }
    if (ok) {
      std::vector<PlanToken> o;
      for (int tk : toks)
        o.push_back(tk == 0 ? PlanToken{true, 0} : PlanToken{false, tk});
      out.push_back(std::move(o));
    }
  } while (std::next_permutation(toks.begin(), toks.end()));
  return out;
}

std::vector<std::vector<PlanToken>> collect_orders(const std::vector<BuildingBlock>& blocks) {
  std::vector<std::vector<PlanToken>> out;
  for_each_interleaving(blocks, [&](const std::vector<PlanToken>& o) {
    out.push_back(o);
    return true;
  });
  return out;
}

}  // namespace

TEST_CASE("template catalog") {
  CHECK(all_three_types().size() == 15);
  for (ThreeType t : all_three_types())
    CHECK(parse_three_type(three_type_name(t)) == t);
  CHECK_THROWS_AS(parse_three_type("B(9)"), ParseError);
  CHECK(three_type_param_keys(ThreeType::AI) ==
        std::vector<std::string>{"g", "x1", "x2", "x3"});
  CHECK(three_type_param_keys(ThreeType::D3) ==
        std::vector<std::string>{"q21", "q31", "q32"});
}

TEST_CASE("parameter keys are checked before building") {
  ParamMap m = testutil::sample_three_params(ThreeType::AI);
  m.erase("g");
  CHECK_THROWS_WITH_AS(build_three(ThreeType::AI, m),
                       "parse error: missing parameter 'g' for template A_I", ParseError);
  m = testutil::sample_three_params(ThreeType::AI);
  m["q21"] = Scalar(1);
  CHECK_THROWS_WITH_AS(build_three(ThreeType::AI, m),
                       "parse error: unknown parameter key 'q21' for template A_I", ParseError);
  CHECK_THROWS_AS(build_three_unchecked(ThreeType::AI, ParamMap{}), ParseError);
}

TEST_CASE("template restrictions reject bad parameters") {
  auto with = [](ThreeType t, const std::string& key, const Scalar& v) {
    ParamMap m = testutil::sample_three_params(t);
    m[key] = v;
    return m;
  };
  CHECK_THROWS_WITH_AS(build_three(ThreeType::AI, with(ThreeType::AI, "g", Scalar(0))),
                       "constraint violated: g must be nonzero", ConstraintError);
  CHECK_THROWS_WITH_AS(build_three(ThreeType::AII, with(ThreeType::AII, "g2", Scalar(0))),
                       "constraint violated: g1, g2, g3 must be pairwise distinct",
                       ConstraintError);
  CHECK_THROWS_WITH_AS(
      build_three(ThreeType::B1PosAlpha, with(ThreeType::B1PosAlpha, "gs", Scalar(1))),
      "constraint violated: gs must differ from Lambda", ConstraintError);
  CHECK_THROWS_WITH_AS(
      build_three(ThreeType::B1PosBeta, with(ThreeType::B1PosBeta, "gs", Scalar(0))),
      "constraint violated: gs must be nonzero", ConstraintError);
  CHECK_THROWS_WITH_AS(build_three(ThreeType::B2, with(ThreeType::B2, "g23", Scalar(0))),
                       "constraint violated: g23 must be nonzero", ConstraintError);
  CHECK_THROWS_WITH_AS(
      build_three(ThreeType::C1PosAlpha, with(ThreeType::C1PosAlpha, "ru", Scalar(0))),
      "constraint violated: ru must be nonzero", ConstraintError);
  CHECK_THROWS_WITH_AS(
      build_three(ThreeType::C1PosBeta, with(ThreeType::C1PosBeta, "g1", Scalar(1))),
      "constraint violated: g1 must differ from Lambda", ConstraintError);
  CHECK_THROWS_WITH_AS(
      build_three(ThreeType::C1PosGamma, with(ThreeType::C1PosGamma, "g2", Scalar(1))),
      "constraint violated: g2 must differ from Lambda", ConstraintError);
  CHECK_THROWS_WITH_AS(
      build_three(ThreeType::C2PosAlpha, with(ThreeType::C2PosAlpha, "g13", Scalar(0))),
      "constraint violated: g13 must be nonzero", ConstraintError);
  CHECK_THROWS_WITH_AS(build_three(ThreeType::B2, with(ThreeType::B2, "x1", Scalar(0))),
                       "constraint violated: x1 must be nonzero", ConstraintError);
  CHECK_THROWS_WITH_AS(build_three(ThreeType::AI, with(ThreeType::AI, "g", Scalar::i())),
                       "constraint violated: g must be real", ConstraintError);
  CHECK_THROWS_WITH_AS(build_three(ThreeType::D3, with(ThreeType::D3, "q21", Scalar::i())),
                       "constraint violated: q21 must be real", ConstraintError);
}

TEST_CASE("violated restrictions place an invalid coefficient table") {
  ParamMap m = testutil::sample_three_params(ThreeType::B1PosAlpha);
  m["gs"] = m["Lambda"];
  Presentation p = build_three_unchecked(ThreeType::B1PosAlpha, m);
  CHECK(p.g(1, 2).is_zero());
  CHECK(!p.validate().empty());
  CHECK_THROWS_AS(is_pbw(p), ConstraintError);

  ParamMap a = testutil::sample_three_params(ThreeType::AII);
  a["g2"] = a["g1"];
  CHECK(!build_three_unchecked(ThreeType::AII, a).validate().empty());
}

TEST_CASE("off-pattern coefficients genuinely break confluence") {
  Presentation p = build_three(ThreeType::B1PosBeta,
                               testutil::sample_three_params(ThreeType::B1PosBeta));
  p.set_g(2, 3, p.g(2, 3) + Scalar(1));
  CHECK(p.validate().empty());
  CHECK(!is_pbw(p).passed);

  Presentation c = build_three(ThreeType::C1PosBeta,
                               testutil::sample_three_params(ThreeType::C1PosBeta));
  c.set_g(3, 2, c.g(3, 2) + Scalar(1));
  CHECK(c.validate().empty());
  CHECK(!is_pbw(c).passed);
}

TEST_CASE("fifteen templates agree with the general builder") {
  for (ThreeType t : all_three_types()) {
    Presentation via_template = build_three(t, testutil::sample_three_params(t));
    Presentation via_spec = build_family(sample_spec(t));
    CHECK(via_template == via_spec);
    CHECK(is_pbw(via_template).passed);
  }
}

TEST_CASE("family spec text form round-trips") {
  for (ThreeType t : all_three_types()) {
    FamilySpec s = sample_spec(t);
    CAPTURE(three_type_name(t));
    INFO("emitted:\n", emit_family_spec(s));
    INFO("re-emitted:\n", emit_family_spec(parse_family_spec(emit_family_spec(s))));
    CHECK(parse_family_spec(emit_family_spec(s)) == s);
  }
  CHECK_THROWS_AS(parse_family_spec("family Z\nsets\nn = 3\nparams\n"), ParseError);
  CHECK_THROWS_AS(parse_family_spec(""), ParseError);
}

TEST_CASE("spec shape problems are rejected as such") {
  FamilySpec s = sample_spec(ThreeType::AI);
  s.S = {2};  // overlaps I
  CHECK(!s.validate().empty());
  CHECK_THROWS_AS(build_family(s), ConstraintError);
  CHECK_THROWS_AS(build_family_unchecked(s), ConstraintError);

  FamilySpec c = sample_spec(ThreeType::C1PosAlpha);
  c.t_circ = {{2}};  // wrong component kind for the family
  CHECK(!c.validate().empty());

  FamilySpec mis = sample_spec(ThreeType::B3);
  mis.g_circ.clear();  // misaligned parameter list
  CHECK(!mis.validate().empty());

  FamilySpec gap = sample_spec(ThreeType::B2);
  gap.I = {1, 2};  // {3} no longer sits inside the core gap
  gap.x = {{1, Scalar(1)}, {2, Scalar(2)}};
  gap.t_bullet = {{3}};
  CHECK(!gap.validate().empty());

  FamilySpec edge = sample_spec(ThreeType::D3);
  edge.redges.push_back({3, 2, Scalar(1), Scalar(1)});
  CHECK(!edge.validate().empty());

  FamilySpec dis = sample_spec(ThreeType::D3);
  dis.redges = {{1, 2, Scalar(1), Scalar(0)}};  // one-sided pairs do not connect
  CHECK(!dis.validate().empty());
}

TEST_CASE("parameter problems leave the shape placeable") {
  FamilySpec s = sample_spec(ThreeType::AI);
  s.g = Scalar(0);
  CHECK(!s.validate().empty());
  CHECK_THROWS_AS(build_family(s), ConstraintError);
  Presentation p = build_family_unchecked(s);
  CHECK(!p.validate().empty());
}

TEST_CASE("one-sided components attach to an asymmetric core by offset") {
  FamilySpec circ;
  circ.family = Family::AII;
  circ.n = 4;
  circ.I = {1, 2, 3};
  circ.g_i = {{1, Scalar(0)}, {2, Scalar(1)}, {3, Scalar(3)}};
  circ.t_circ = {{4}};
  circ.g_circ = {Scalar(2)};
  circ.x = {{1, Scalar(1)}, {2, Scalar(2)}, {3, Scalar(3)}};
  Presentation p = build_family(circ);
  CHECK(p.g(1, 4) == Scalar(2));
  CHECK(p.g(2, 4) == Scalar(3));
  CHECK(p.g(3, 4) == Scalar(5));
  CHECK(is_pbw(p).passed);

  // Flipping the offset sign is not a family member and fails the diamond.
  Presentation wrong = p;
  wrong.set_g(2, 4, Scalar(1));
  wrong.set_g(3, 4, Scalar(-1));
  CHECK(!is_pbw(wrong).passed);

  FamilySpec bullet;
  bullet.family = Family::AII;
  bullet.n = 4;
  bullet.I = {1, 2, 4};
  bullet.g_i = {{1, Scalar(0)}, {2, Scalar(1)}, {4, Scalar(3)}};
  bullet.t_bullet = {{3}};
  bullet.g_bullet = {{Scalar(5), Scalar(7)}};
  bullet.x = {{1, Scalar(1)}, {2, Scalar(2)}, {4, Scalar(3)}};
  Presentation q = build_family(bullet);
  CHECK(q.g(1, 3) == Scalar(5));
  CHECK(q.g(2, 3) == Scalar(6));
  CHECK(q.g(3, 4) == Scalar(4));
  CHECK(is_pbw(q).passed);
}

TEST_CASE("block catalog") {
  CHECK(elementary_blocks().size() == 10);
  CHECK(block_kind_name(BlockKind::B_TBullet) == "B(I,T_bullet)");
  CHECK(block_kind_info(BlockKind::C_R).u_kind == std::string("R"));
  CHECK(block_kind_info(BlockKind::AII_TBullet).family == Family::AII);
}

TEST_CASE("block kind derivation") {
  CHECK(make_block(sample_spec(ThreeType::B1PosAlpha)).kind == BlockKind::B_S);
  CHECK(make_block(sample_spec(ThreeType::B2)).kind == BlockKind::B_TBullet);
  CHECK(make_block(sample_spec(ThreeType::B3)).kind == BlockKind::B_TCirc);
  CHECK(make_block(sample_spec(ThreeType::C1PosAlpha)).kind == BlockKind::C_R);
  CHECK(make_block(sample_spec(ThreeType::D3)).kind == BlockKind::D_R);
  CHECK(make_block(sample_spec(ThreeType::AI)).kind == BlockKind::AI_S);     // pure core
  CHECK(make_block(sample_spec(ThreeType::AII)).kind == BlockKind::AII_TCirc);  // pure core

  // Two components cannot form one block.
  CHECK_THROWS_AS(make_block(sample_spec(ThreeType::C2PosAlpha)), ConstraintError);
  // Kind request contradicting the actual component.
  CHECK_THROWS_AS(make_block(BlockKind::B_TCirc, sample_spec(ThreeType::B2)),
                  ConstraintError);
  CHECK(make_block(BlockKind::B_TBullet, sample_spec(ThreeType::B2)).kind ==
        BlockKind::B_TBullet);
}

TEST_CASE("blending two single-component blocks") {
  BlendPlan plan;
  plan.blocks = {make_block(c_block(1, 2, Scalar(1))), make_block(c_block(2, 3, Scalar(1)))};
  plan.order = {{true, 0}, {false, 1}, {false, 2}};
  Presentation direct = build_three(ThreeType::C2PosAlpha,
                                    testutil::sample_three_params(ThreeType::C2PosAlpha));
  CHECK(blend(plan) == direct);

  // Swapping the token order swaps the roles of the two components.
  plan.order = {{true, 0}, {false, 2}, {false, 1}};
  Presentation swapped = blend(plan);
  CHECK(swapped.g(1, 2) == Scalar(3));
  CHECK(swapped.g(2, 1) == Scalar(1));
  CHECK(swapped.g(1, 3) == Scalar(2));
  CHECK(swapped.g(3, 1) == Scalar(1));
}

TEST_CASE("blend validates its inputs") {
  CHECK_THROWS_WITH_AS(blend(BlendPlan{}),
                       "constraint violated: blend plan needs at least one block",
                       ConstraintError);

  BlendPlan plan;
  plan.blocks = {make_block(c_block(1, 2, Scalar(1))), make_block(c_block(2, 3, Scalar(2)))};
  plan.order = {{true, 0}, {false, 1}, {false, 2}};
  CHECK_THROWS_WITH_AS(blend(plan),
                       "constraint violated: blocks disagree on the shared x values",
                       ConstraintError);

  plan.blocks[1] = make_block(c_block(2, 3, Scalar(1)));
  plan.order = {{true, 0}, {false, 1}};
  CHECK_THROWS_WITH_AS(blend(plan),
                       "constraint violated: token count for block 2 must match its x-free size",
                       ConstraintError);

  plan.order = {{false, 1}, {true, 0}, {false, 2}};
  CHECK_THROWS_WITH_AS(blend(plan),
                       "constraint violated: token order violates block 1's index pattern",
                       ConstraintError);

  plan.order = {{true, 0}, {false, 1}, {false, 3}};
  CHECK_THROWS_WITH_AS(blend(plan),
                       "constraint violated: token refers to a block that does not exist",
                       ConstraintError);

  BlendPlan fam;
  fam.blocks = {make_block(sample_spec(ThreeType::AI)),
                make_block(sample_spec(ThreeType::AII))};
  fam.order = {{true, 0}, {true, 0}, {true, 0}};
  CHECK_THROWS_WITH_AS(blend(fam), "constraint violated: blocks must share the family",
                       ConstraintError);

  BlendPlan core;
  FamilySpec other = sample_spec(ThreeType::AI);
  other.g = Scalar(3);
  core.blocks = {make_block(sample_spec(ThreeType::AI)), make_block(other)};
  core.order = {{true, 0}, {true, 0}, {true, 0}};
  CHECK_THROWS_WITH_AS(blend(core),
                       "constraint violated: blocks disagree on the intra-core coefficients",
                       ConstraintError);
}

TEST_CASE("a three-kind composite matches its direct description") {
  FamilySpec bullet;
  bullet.family = Family::B;
  bullet.n = 3;
  bullet.I = {1, 3};
  bullet.t_bullet = {{2}};
  bullet.g = Scalar(2);
  bullet.lambda = Scalar(1);
  bullet.g_bullet = {{Scalar(3), Scalar(4)}};
  bullet.x = {{1, Scalar(1)}, {3, Scalar(2)}};

  FamilySpec circ;
  circ.family = Family::B;
  circ.n = 3;
  circ.I = {1, 2};
  circ.t_circ = {{3}};
  circ.g = Scalar(2);
  circ.lambda = Scalar(1);
  circ.g_circ = {Scalar(3)};
  circ.x = {{1, Scalar(1)}, {2, Scalar(2)}};

  FamilySpec side;
  side.family = Family::B;
  side.n = 3;
  side.I = {2, 3};
  side.S = {1};
  side.g = Scalar(2);
  side.lambda = Scalar(1);
  side.g_s = {{1, Scalar(3)}};
  side.x = {{2, Scalar(1)}, {3, Scalar(2)}};

  std::vector<BuildingBlock> blocks = {make_block(bullet), make_block(circ),
                                       make_block(side)};

  // The composite admits exactly one interleaving.
  auto orders = collect_orders(blocks);
  CHECK(orders == brute_orders(blocks));
  REQUIRE(orders.size() == 1);
  CHECK(count_interleavings(blocks) == 1);
  std::vector<PlanToken> want = {{false, 3}, {true, 0}, {false, 1}, {true, 0}, {false, 2}};
  CHECK(orders[0] == want);

  BlendPlan plan{blocks, orders[0]};
  FamilySpec direct;
  direct.family = Family::B;
  direct.n = 5;
  direct.I = {2, 4};
  direct.S = {1};
  direct.t_bullet = {{3}};
  direct.t_circ = {{5}};
  direct.g = Scalar(2);
  direct.lambda = Scalar(1);
  direct.g_s = {{1, Scalar(3)}};
  direct.g_bullet = {{Scalar(3), Scalar(4)}};
  direct.g_circ = {Scalar(3)};
  direct.x = {{2, Scalar(1)}, {4, Scalar(2)}};
  CHECK(blend(plan) == build_family(direct));
}

TEST_CASE("interleaving enumeration matches brute force") {
  std::vector<BuildingBlock> two = {make_block(c_block(1, 2, Scalar(1))),
                                    make_block(c_block(2, 3, Scalar(1)))};
  auto orders = collect_orders(two);
  CHECK(orders == brute_orders(two));
  REQUIRE(orders.size() == 2);
  CHECK(orders[0] == std::vector<PlanToken>{{true, 0}, {false, 1}, {false, 2}});
  CHECK(orders[1] == std::vector<PlanToken>{{true, 0}, {false, 2}, {false, 1}});
  CHECK(count_interleavings(two) == 2);

  FamilySpec wide;  // one component straddling the single x-carrying index
  wide.family = Family::C;
  wide.n = 3;
  wide.I = {2};
  wide.r_comps = {{1, 3}};
  wide.lambda_r = {Scalar(1)};
  wide.g_r = {{1, Scalar(3)}, {3, Scalar(2)}};
  wide.redges = {{1, 3, Scalar(2), Scalar(1)}};
  wide.x = {{2, Scalar(1)}};
  std::vector<BuildingBlock> mixed = {make_block(wide), make_block(c_block(1, 2, Scalar(1)))};
  auto morders = collect_orders(mixed);
  CHECK(morders == brute_orders(mixed));
  CHECK(count_interleavings(mixed) == morders.size());

  std::vector<BuildingBlock> multi = {
      make_block(sample_spec(ThreeType::C1PosAlpha)),
      make_block(c_block(1, 2, Scalar(1)))};
  auto xorders = collect_orders(multi);
  CHECK(xorders == brute_orders(multi));
  CHECK(xorders.size() == 3);

  // Early stop after the first order.
  int seen = 0;
  for_each_interleaving(two, [&](const std::vector<PlanToken>&) {
    ++seen;
    return false;
  });
  CHECK(seen == 1);
}

TEST_CASE("plan recovery reproduces the presentation") {
  Presentation p = build_family(sample_spec(ThreeType::B1PosAlpha));
  BlendPlan plan = find_blend_plan(p);
  REQUIRE(plan.blocks.size() == 1);
  CHECK(plan.blocks[0].kind == BlockKind::B_S);
  CHECK(plan.order == std::vector<PlanToken>{{false, 1}, {true, 0}, {true, 0}});
  CHECK(blend(plan) == p);

  Presentation pure = build_three(ThreeType::AI, testutil::sample_three_params(ThreeType::AI));
  BlendPlan pp = find_blend_plan(pure);
  REQUIRE(pp.blocks.size() == 1);
  CHECK(pp.order == std::vector<PlanToken>{{true, 0}, {true, 0}, {true, 0}});
  CHECK(blend(pp) == pure);

  FamilySpec multi;
  multi.family = Family::AI;
  multi.n = 6;
  multi.I = {1, 3, 5};
  multi.S = {2};
  multi.t_bullet = {{4}};
  multi.t_circ = {{6}};
  multi.g = Scalar(2);
  multi.g_s = {{2, Scalar(3)}};
  multi.g_bullet = {{Scalar(4), Scalar(5)}};
  multi.g_circ = {Scalar(7)};
  multi.x = {{1, Scalar(1)}, {3, Scalar(2)}, {5, Scalar::i()}};
  Presentation big = build_family(multi);
  BlendPlan bp = find_blend_plan(big);
  REQUIRE(bp.blocks.size() == 3);
  CHECK(bp.blocks[0].kind == BlockKind::AI_S);
  CHECK(bp.blocks[1].kind == BlockKind::AI_TBullet);
  CHECK(bp.blocks[2].kind == BlockKind::AI_TCirc);
  std::vector<PlanToken> want = {{true, 0}, {false, 1}, {true, 0},
                                 {false, 2}, {true, 0}, {false, 3}};
  CHECK(bp.order == want);
  CHECK(blend(bp) == big);
}

TEST_CASE("plan recovery refuses non-neutral cross-component pairs") {
  FamilySpec s = sample_spec(ThreeType::C2PosAlpha);
  s.redges = {{2, 3, Scalar(2), Scalar(0)}};
  Presentation p = build_family(s);
  CHECK_THROWS_AS(find_blend_plan(p), NotApplicableError);
}

TEST_CASE("plan text form") {
  Presentation p = build_family(sample_spec(ThreeType::B2));
  BlendPlan plan = find_blend_plan(p);
  std::string text = emit_blend_plan(plan);
  BlendPlan back = parse_blend_plan(text);
  CHECK(back.order == plan.order);
  CHECK(blend(back) == p);

  // Plans may stop after the blocks; the order is then left to the caller.
  BlendPlan headless = parse_blend_plan(
      "blend\nblock\n" + emit_family_spec(c_block(1, 2, Scalar(1))) + "endblock\n");
  CHECK(headless.blocks.size() == 1);
  CHECK(headless.order.empty());

  CHECK_THROWS_AS(parse_blend_plan("order I\n"), ParseError);
  CHECK_THROWS_AS(parse_blend_plan("blend\norder I\n"), ParseError);
  CHECK_THROWS_AS(
      parse_blend_plan("blend\nblock\n" + emit_family_spec(c_block(1, 2, Scalar(1)))),
      ParseError);
  CHECK_THROWS_AS(parse_blend_plan(text + "order Q\n"), ParseError);
  std::string bad_ref = text.substr(0, text.rfind("order")) + "order I U7\n";
  CHECK_THROWS_AS(parse_blend_plan(bad_ref), ParseError);
}

TEST_CASE("random single-component specs make blocks of their kind") {
  testutil::Rng rng(5150);
  for (int trial = 0; trial < 25; ++trial) {
    int n = rng.uni(2, 5);
    Family fam = testutil::rand_family_for_n(rng, n);
    FamilySpec spec = testutil::rand_family_spec(rng, fam, n);
    Presentation p = build_family(spec);
    BlendPlan plan = find_blend_plan(p);
    CHECK(blend(plan) == p);
    for (const BuildingBlock& b : plan.blocks)
      CHECK(block_kind_info(b.kind).family == fam);
  }
}
