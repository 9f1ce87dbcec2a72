#pragma once

#include <vector>

#include "hypflow/metric.hpp"

namespace hypflow {

inline constexpr double kDelaunayTol = 1e-9; // absolute, on the angle sum

struct FlipEvent {
    int edge = -1;
    double angle_sum = 0; // pre-flip value
    int new_vi = -1, new_vj = -1;
};

using FlipLog = std::vector<FlipEvent>;

struct DelaunayReport {
    std::vector<double> edge_angle_sum; // alpha_ij^k + alpha_ij^l per edge
    std::vector<int> violations;        // edges with sum > pi + tol
    int flips_performed = 0;
    bool ok() const { return violations.empty(); }
};

// angle sum of one hinge at an already realized metric
double edge_angle_sum(const Triangulation& tri, const DecoratedMetric& metric, int e);
double edge_angle_sum(const ConformalClass& cc, const Vec& h, int e);

DelaunayReport is_weighted_delaunay(const ConformalClass& cc, const Vec& h,
                                    double tol = kDelaunayTol);

// Flips until every hinge satisfies the weighted Delaunay condition at h,
// rewriting cc.tri and the flipped edges' inversive distances in place.
// Boundary ties (within tol of pi) are left alone. Returns the flip count.
// flip_budget <= 0 means the default of 50 * E.
int make_weighted_delaunay(ConformalClass& cc, const Vec& h, FlipLog* log = nullptr,
                           int flip_budget = 0, double tol = kDelaunayTol);

// Flip-invariant curvature: retriangulates cc to weighted Delaunay at h, then
// takes the angle defect there. cc acts as the triangulation hint and carries
// the Delaunay triangulation out.
Vec extended_curvature(ConformalClass& cc, const Vec& h, FlipLog* log = nullptr);

// value-preserving convenience for callers that must not keep the new hint
Vec extended_curvature_copy(const ConformalClass& cc, const Vec& h);

} // namespace hypflow
