#pragma once

#include <vector>

#include "diffalg/presentation.hpp"
#include "diffalg/scalar.hpp"

namespace diffalg {

// Generator rescaling D_a -> kappa[a-1] * D_a: the g coefficients are
// unchanged, x'(a) = x(a) / kappa[a-1]. Every kappa must be nonzero
// (ConstraintError otherwise). Preserves the diamond property and the family.
Presentation rescale(const Presentation& p, const std::vector<Scalar>& kappa);

// Relabeling a -> sigma[a-1] (sigma a bijection of 1..n). The relation of the
// pair {a, b} is carried over verbatim: g'(sigma a, sigma b) = g(a, b),
// x'(sigma a) = x(a). A pair whose order flips needs a nonzero lower
// coefficient to serve as the new upper one; otherwise the relabeling leaves
// the contract's shape and an OrderViolationError lists every such pair.
Presentation permute(const Presentation& p, const std::vector<int>& sigma);

// Index reversal m(a) = n+1-a combined with reversing all products (an
// antiautomorphism): g'(u, v) = g(m(v), m(u)), x'(u) = -x(m(u)). Total on
// valid presentations (the new upper coefficients are exactly the old upper
// ones) and an involution. Preserves the diamond property; exchanges the
// "component above the core" and "component below the core" template shapes.
Presentation mirror(const Presentation& p);

// For a single-x-generator presentation whose components all share one
// common nonzero coupling difference Lambda, the substitution
// D_i -> D_i - x(i)/Lambda removes the x value and produces an x-free
// presentation (family D) with identical g coefficients. Throws
// NotApplicableError("no nonzero Lambda_a, or shift does not homogenize the
// relation set") when the differences vanish, differ between components, or
// there is no component; and when the presentation is not of the
// single-x-generator family at all.
Presentation shift_c_to_d(const Presentation& p);

}  // namespace diffalg
