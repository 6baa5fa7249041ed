#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "diffalg/family_spec.hpp"
#include "diffalg/presentation.hpp"

namespace diffalg {

// The fifteen three-generator templates: the nine structural types, with the
// positional exchange variants of B(1), C(1) and C(2) spelled out.
enum class ThreeType {
  AI,
  AII,
  B1PosAlpha,
  B1PosBeta,
  B1PosGamma,
  B2,
  B3,
  B4,
  C1PosAlpha,
  C1PosBeta,
  C1PosGamma,
  C2PosAlpha,
  C2PosBeta,
  C2PosGamma,
  D3,
};

const std::vector<ThreeType>& all_three_types();
std::string three_type_name(ThreeType t);  // "A_I", "B(1)/pos-beta", ...
ThreeType parse_three_type(const std::string& name);

using ParamMap = std::map<std::string, Scalar>;

// Parameter keys expected by build_three for the given template, in canonical
// order. Keys: "x1".."x3" (the x values allowed by the template), "g"
// (principal coefficient), "gs" (secondary coefficient), "Lambda"
// (upper-minus-lower difference), "ru"/"rl" (free coefficient pair of the
// x-free two-element component), "g1".."g3" (per-index parameters),
// "g12".. (explicit directed coefficients), "q21".. (lower-coefficient
// ratios of the x-free template).
std::vector<std::string> three_type_param_keys(ThreeType t);

// Builds the template instance. Throws ConstraintError naming the violated
// restriction when a parameter breaks the template's conditions, and
// ParseError when a required key is missing or an unknown key appears.
Presentation build_three(ThreeType t, const ParamMap& params);

// Places the same coefficients WITHOUT enforcing the parameter restrictions
// (shape checks still apply). Exists so tests and diagnostics can produce
// the exact presentation a violated restriction would yield.
Presentation build_three_unchecked(ThreeType t, const ParamMap& params);

// General family builder; validates spec (see FamilySpec::validate) unless
// the unchecked variant is used.
Presentation build_family(const FamilySpec& spec);
Presentation build_family_unchecked(const FamilySpec& spec);

// ---------------------------------------------------------------------------
// Blending: combining single-component family members that agree on their
// x-carrying core into one larger member.

// The elementary block kinds: which intra-I form is combined with which kind
// of x-free component. C and D carry no sub-kind (their components are
// untagged).
enum class BlockKind {
  AI_S,
  AI_TCirc,
  AI_TBullet,
  AII_TCirc,
  AII_TBullet,
  B_S,
  B_TCirc,
  B_TBullet,
  C_R,
  D_R,
};

struct BlockKindInfo {
  BlockKind kind;
  Family family;
  const char* name;       // "A_I(I,S)" ...
  const char* u_kind;     // "S", "T_circ", "T_bullet", "R"
  const char* placement;  // where the component may sit relative to I
};

// The full catalog (10 kinds).
const std::vector<BlockKindInfo>& elementary_blocks();
std::string block_kind_name(BlockKind k);
const BlockKindInfo& block_kind_info(BlockKind k);

// A single-component family member used as a blending ingredient. The spec
// must contain at most one x-free component, matching the kind (exactly zero
// components only for the degenerate pure-core block).
struct BuildingBlock {
  BlockKind kind = BlockKind::D_R;
  FamilySpec spec;
};

// Validates the shape and returns the block. Throws ConstraintError.
BuildingBlock make_block(BlockKind kind, const FamilySpec& spec);

// Derives the kind from a single-component spec.
BuildingBlock make_block(const FamilySpec& spec);

// One position of the combined index line: either the next shared x-carrying
// index or the next x-free index of block `block` (1-based ordinal).
struct PlanToken {
  bool is_I = true;
  int block = 0;

  friend bool operator==(const PlanToken& a, const PlanToken& b) {
    return a.is_I == b.is_I && a.block == b.block;
  }
};

std::string plan_token_str(const PlanToken& t);  // "I" or "U2"

struct BlendPlan {
  std::vector<BuildingBlock> blocks;
  std::vector<PlanToken> order;
};

// Combines the blocks along the token order. Requirements checked: at least
// one block, identical x-carrying cores (same count, same per-position x
// values, identical intra-core coefficients), compatible families, token
// counts matching the block sizes, and every block's interleaving pattern
// consistent with its own index order. Cross-block x-free pairs get the
// neutral coefficients (upper 1, lower 0).
Presentation blend(const BlendPlan& plan);

// All token orders valid for the given blocks, in lexicographic backtracking
// order (shared-core position first). The callback returns false to stop
// early. Counting never materializes the orders.
void for_each_interleaving(const std::vector<BuildingBlock>& blocks,
                           const std::function<bool(const std::vector<PlanToken>&)>& fn);
mpz_class count_interleavings(const std::vector<BuildingBlock>& blocks);

// Decomposes a classified presentation into elementary blocks plus the token
// order that reproduces it: blend(find_blend_plan(p)) == p exactly.
// Pure-core presentations yield one degenerate block with no x-free part.
BlendPlan find_blend_plan(const Presentation& p);

// Plan text form:
//   blend
//   block ... endblock        (one family-spec body per block)
//   order I U1 I U2 ...
std::string emit_blend_plan(const BlendPlan& plan);
BlendPlan parse_blend_plan(const std::string& text);
BlendPlan load_blend_plan_file(const std::string& path);

}  // namespace diffalg
