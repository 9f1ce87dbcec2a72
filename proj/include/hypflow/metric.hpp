#pragma once

#include <vector>

#include <Eigen/Core>

#include "hypflow/surface.hpp"

namespace hypflow {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kSeparationMargin = 1e-12; // class edges need I > 1 + margin

// A discrete conformal class: combinatorics, one inversive distance per edge
// and reference radii per vertex. Everything metric is a function of the
// conformal factor h; surgery rewrites the triangulation and the flipped
// edge's inversive distance together (see delaunay.hpp), so treat a class
// undergoing surgery as owned by a single run and share by copying.
struct ConformalClass {
    Triangulation tri;
    std::vector<double> inversive; // per edge id
    Vec ref_radii;                 // per vertex

    int num_vertices() const { return tri.num_vertices(); }
    int num_edges() const { return tri.num_edges(); }
};

// per-edge lengths and per-vertex radii realized at a specific factor
struct DecoratedMetric {
    std::vector<double> length;
    Vec radius;
};

struct ValidationReport {
    std::vector<int> bad_faces; // triangle inequality fails
    std::vector<int> bad_edges; // separation fails (I <= 1 + margin)
    bool ok() const { return bad_faces.empty() && bad_edges.empty(); }
};

double h_from_r(double r);
double r_from_h(double h);
Vec h_from_r(const Vec& r);
Vec r_from_h(const Vec& h);

// class whose reference metric is the given decorated metric
ConformalClass make_class_from_lengths(Triangulation tri, const std::vector<double>& lengths,
                                       const Vec& radii);
ConformalClass make_class_from_inversive(Triangulation tri, std::vector<double> inversive,
                                         const Vec& radii);

// conformal coordinate u with u = 0 at the reference radii
Vec u_from_h(const ConformalClass& cc, const Vec& h);

// Realize the decorated metric at factor h through the inversive-distance
// formula. The result need not satisfy the triangle inequalities on cc.tri;
// validate() reports that, and surgery handles it.
DecoratedMetric realize(const ConformalClass& cc, const Vec& h);

// Same metric through the conformal-change formula in u-coordinates; kept as
// an independently computed cross-check of realize().
DecoratedMetric realize_via_conformal_change(const ConformalClass& cc, const Vec& h);

ValidationReport validate(const DecoratedMetric& metric, const Triangulation& tri);

// reference factor h0 with realize(cc, h0) equal to the reference metric
Vec reference_factor(const ConformalClass& cc);

// recomputed inversive distances of a realized metric (class invariance check)
std::vector<double> inversive_of(const DecoratedMetric& metric, const Triangulation& tri);

} // namespace hypflow
