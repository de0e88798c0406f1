#pragma once

#include "chebproj/ect_system.hpp"
#include "chebproj/knot_tuple.hpp"
#include "chebproj/smooth_fn.hpp"

namespace chebproj {

/// Relative knot-snapping threshold: knots closer than this times the
/// interval length are treated as confluent, since the determinant ratio
/// becomes ill-conditioned below that scale.
inline constexpr double kKnotSnapRel = 1e-8;

/// Generalized divided difference [t_1..t_m]_u f for the monomial system of
/// `sys` (m = knots.size() = sys.size()): ratio of the confluent collocation
/// determinant with f in the last column over the one with u_m there.
/// Handles confluent knots; evaluated through sign/log determinant pairs so
/// clustered knots do not underflow.
double divided_difference(const EctSystem& sys, const KnotTuple& knots, const SmoothFn& f);
double divided_difference(const DualEctSystem& sys, const KnotTuple& knots, const SmoothFn& f);

/// Difference of the two sides of the recursion
/// [t_1..t_m] f = ([t_2..t_m] f - [t_1..t_{m-1}] f) / (same applied to u_m),
/// where the shorter differences use the truncated system u_1..u_{m-1}.
/// Requires t_1 != t_m. Used as a cross-validation oracle only.
double dd_recursion_residual(const EctSystem& sys, const KnotTuple& knots, const SmoothFn& f);

}  // namespace chebproj
