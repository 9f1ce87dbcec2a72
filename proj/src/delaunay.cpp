#include "hypflow/delaunay.hpp"

#include <cmath>
#include <deque>
#include <string>

#include "hypflow/curvature.hpp"
#include "hypflow/hypgeom.hpp"

namespace hypflow {

namespace {

// interior intersection angle of one face circle with one of its edges,
// continued through non-intersecting configurations
double side_angle(const Triangulation& tri, const DecoratedMetric& metric, int he) {
    const int f = tri.face(he);
    const auto hes = tri.face_halfedges(f);
    int pos = 0;
    while (hes[pos] != he) ++pos;
    const int h0 = hes[pos], h1 = hes[(pos + 1) % 3], h2 = hes[(pos + 2) % 3];
    const int vi = tri.origin(h0), vj = tri.origin(h1), vk = tri.origin(h2);
    const auto cosines = face_edge_circle_cosines(
        metric.length[tri.edge(h0)], metric.length[tri.edge(h1)], metric.length[tri.edge(h2)],
        metric.radius[vi], metric.radius[vj], metric.radius[vk]);
    return angle_from_cos_extended(cosines[0]);
}

} // namespace

double edge_angle_sum(const Triangulation& tri, const DecoratedMetric& metric, int e) {
    const int a = 2 * e;
    if (tri.face(a) == tri.face(a ^ 1))
        throw SelfGluedEdge("edge " + std::to_string(e) + " has the same face on both sides");
    return side_angle(tri, metric, a) + side_angle(tri, metric, a ^ 1);
}

double edge_angle_sum(const ConformalClass& cc, const Vec& h, int e) {
    return edge_angle_sum(cc.tri, realize(cc, h), e);
}

DelaunayReport is_weighted_delaunay(const ConformalClass& cc, const Vec& h, double tol) {
    const DecoratedMetric metric = realize(cc, h);
    DelaunayReport rep;
    rep.edge_angle_sum.resize(cc.num_edges());
    for (int e = 0; e < cc.num_edges(); ++e) {
        if (cc.tri.face(2 * e) == cc.tri.face(2 * e + 1)) {
            rep.edge_angle_sum[e] = 0.0; // self-glued: no hinge, no condition
            continue;
        }
        rep.edge_angle_sum[e] = edge_angle_sum(cc.tri, metric, e);
        if (rep.edge_angle_sum[e] > M_PI + tol) rep.violations.push_back(e);
    }
    return rep;
}

int make_weighted_delaunay(ConformalClass& cc, const Vec& h, FlipLog* log, int flip_budget,
                           double tol) {
    Triangulation& tri = cc.tri;
    const Vec radius = r_from_h(h);
    DecoratedMetric metric;
    metric.radius = radius;
    metric.length.resize(cc.num_edges());
    for (int e = 0; e < cc.num_edges(); ++e) {
        const auto [a, b] = tri.edge_vertices(e);
        metric.length[e] = length_from_inversive(radius[a], radius[b], cc.inversive[e]);
    }

    if (flip_budget <= 0) flip_budget = 50 * cc.num_edges();

    std::deque<int> queue;
    std::vector<char> queued(cc.num_edges(), 1);
    for (int e = 0; e < cc.num_edges(); ++e) queue.push_back(e);

    int flips = 0;
    while (!queue.empty()) {
        const int e = queue.front();
        queue.pop_front();
        queued[e] = 0;

        if (tri.face(2 * e) == tri.face(2 * e + 1)) continue; // self-glued: nothing to test
        const double sum = edge_angle_sum(tri, metric, e);
        if (!(sum > M_PI + tol)) continue;

        if (flips >= flip_budget)
            throw FlipBudgetExceeded("make_weighted_delaunay exceeded " +
                                     std::to_string(flip_budget) + " flips");

        const Hinge hg = hinge_of(tri, e);
        HingeLengths len;
        len.ij = metric.length[e];
        len.jk = metric.length[hg.boundary_edge[0]];
        len.ik = metric.length[hg.boundary_edge[1]];
        len.il = metric.length[hg.boundary_edge[2]];
        len.jl = metric.length[hg.boundary_edge[3]];
        const double l_new = flip_length(len);

        // both new faces {i,l,k}, {l,j,k} must be admissible
        if (!triangle_admissible(len.il, l_new, len.ik) ||
            !triangle_admissible(len.jl, l_new, len.jk))
            throw DegenerateTriangle("flip of edge " + std::to_string(e) +
                                     " would create an inadmissible triangle");

        const double inv_new = inversive_from_length(radius[hg.vk], radius[hg.vl], l_new);
        if (!(inv_new > 1.0 + kSeparationMargin))
            throw SeparationViolated("flip of edge " + std::to_string(e) +
                                     " violates vertex-circle separation");

        tri.flip(e);
        metric.length[e] = l_new;
        cc.inversive[e] = inv_new;
        ++flips;
        if (log) log->push_back({e, sum, hg.vk, hg.vl});

        for (int be : hg.boundary_edge) {
            if (!queued[be]) {
                queued[be] = 1;
                queue.push_back(be);
            }
        }
    }
    return flips;
}

Vec extended_curvature(ConformalClass& cc, const Vec& h, FlipLog* log) {
    make_weighted_delaunay(cc, h, log);
    return angle_defect(cc, h);
}

Vec extended_curvature_copy(const ConformalClass& cc, const Vec& h) {
    ConformalClass tmp = cc;
    return extended_curvature(tmp, h);
}

} // namespace hypflow
