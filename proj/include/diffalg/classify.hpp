#pragma once

#include <string>
#include <vector>

#include "diffalg/family_spec.hpp"
#include "diffalg/presentation.hpp"
#include "diffalg/rewrite.hpp"

namespace diffalg {

// Kind of an x-free component relative to the x-carrying set I (meaningful
// when |I| >= 2; Plain otherwise):
//   S        some member is coupled to I in both directions,
//   TBullet  one-sided and contained in the open gap between two I-indices
//            that are adjacent within I,
//   TCirc    one-sided, not inside any such gap.
enum class ComponentTag { Plain, S, TCirc, TBullet };

std::string component_tag_name(ComponentTag t);  // "plain", "S", "T_circ", "T_bullet"

struct Component {
  std::vector<int> members;  // ascending
  ComponentTag tag = ComponentTag::Plain;
};

// Splits the index set by x-support and groups the rest into coupling
// components (indices r, r' belong together iff g(r,r') g(r',r) != 0,
// transitively).
struct Decomposition {
  std::vector<int> I;  // ascending: indices with x != 0
  std::vector<int> R;  // ascending: the rest
  std::vector<Component> components;  // ordered by least member

  int N_I() const { return static_cast<int>(I.size()); }
  int N_R() const { return static_cast<int>(R.size()); }
  int M_R() const { return static_cast<int>(components.size()); }
  int M_S() const;
  int M_T() const;
  int M_TCirc() const;
  int M_TBullet() const;
};

Decomposition decompose(const Presentation& p);

// One violated structural-coherence condition. The conditions are the
// pattern laws that every presentation passing the diamond check obeys;
// running them on arbitrary valid presentations is a fast structural filter
// and a cross-check of the classifier.
struct StructureViolation {
  std::string code;    // stable machine-readable identifier
  std::string detail;  // human-readable, with the offending indices
};

// Checks, scoped by |I|:
//   |I| >= 3: the intra-I block is uniformly of symmetric kind (all
//             g(i,j) = g(j,i), one common value) or of difference kind
//             (g(j,i) = 0 for i < j and g(i,j) + g(j,k) = g(i,k)); in the
//             difference kind no component may be two-sidedly coupled.
//   |I| >= 2: along every component, couplings to a fixed I-side are
//             constant, one-sided components couple with opposite signs
//             around each I (value -v below, +v above up to the
//             upper/lower difference), and the difference
//             Lambda(i,j) = g(i,j) - g(j,i) matches the component's
//             coupling pattern for every I-pair.
//   |I| == 1: within each component the difference g(i,r) - g(r,i) is
//             constant.
std::vector<StructureViolation> verify_structure(const Presentation& p,
                                                 const Decomposition& d);

// Family assignment plus the recovered symbolic description.
struct FamilyAssignment {
  Family family = Family::D;
  std::string refined;  // three-generator refined type name; empty otherwise
  Decomposition decomposition;
  FamilySpec spec;  // canonical; build_family(spec) reproduces the input exactly
};

// Requires the diamond check to pass (throws NotPBWError otherwise) and then
// reads off the family and its parameters. A passing presentation whose
// coefficients do not fit the family pattern indicates a library bug and
// raises InternalInconsistencyError.
FamilyAssignment classify_family(const Presentation& p);

struct PhysicalReport {
  bool physical = true;
  std::vector<std::string> violations;
};

// Positivity screen: every upper coefficient strictly positive, every lower
// nonnegative, and (when |I| >= 2) every one-sided outside component lies
// entirely below min(I) or entirely above max(I).
PhysicalReport check_physical(const Presentation& p);

// Line-oriented "key: value" report of an assignment plus the positivity
// verdict; stable ordering, suitable for golden tests.
std::string format_classification(const FamilyAssignment& fa, const PhysicalReport& ph);

// Same for a diamond report.
std::string format_diamond(const DiamondReport& r);

}  // namespace diffalg
