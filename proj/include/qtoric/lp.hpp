#pragma once

#include <vector>

#include "qtoric/matrix.hpp"

namespace qtoric {

enum class Rel { LE, GE, EQ };

struct LinearConstraint {
    Vector coeffs;
    Rel rel;
    Scalar rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Scalar value;
    Vector x;
};

// Maximizes c.x subject to the constraints and x >= 0 with a two-phase dense
// simplex under Bland's rule. Transcendental parameters are replaced by their
// witness values first; the remaining arithmetic is exact over Q and square
// roots, so every pivot decision is certified.
LpResult maximize(const Vector& c, const std::vector<LinearConstraint>& constraints, const Witness& w);

// Is 0 in the convex hull of the points?
bool zero_in_convex_hull(const std::vector<Vector>& points, const Witness& w);

} // namespace qtoric
