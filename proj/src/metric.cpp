#include "hypflow/metric.hpp"

#include <cmath>
#include <string>

#include "hypflow/hypgeom.hpp"

namespace hypflow {

double h_from_r(double r) {
    if (!(r > 0)) throw NonPositiveFactor("radius must be positive");
    return -std::log(std::tanh(0.5 * r));
}

double r_from_h(double h) {
    if (!(h > 0)) throw NonPositiveFactor("conformal factor must be positive");
    return 2.0 * std::atanh(std::exp(-h));
}

Vec h_from_r(const Vec& r) {
    Vec h(r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) h[i] = h_from_r(r[i]);
    return h;
}

Vec r_from_h(const Vec& h) {
    Vec r(h.size());
    for (Eigen::Index i = 0; i < h.size(); ++i) r[i] = r_from_h(h[i]);
    return r;
}

ConformalClass make_class_from_inversive(Triangulation tri, std::vector<double> inversive,
                                         const Vec& radii) {
    if (static_cast<int>(inversive.size()) != tri.num_edges())
        throw ParseError("inversive distance count does not match edge count");
    if (static_cast<int>(radii.size()) != tri.num_vertices())
        throw ParseError("radius count does not match vertex count");
    for (Eigen::Index i = 0; i < radii.size(); ++i)
        if (!(radii[i] > 0)) throw NonPositiveFactor("reference radius must be positive");
    for (int e = 0; e < tri.num_edges(); ++e)
        if (!(inversive[e] > 1.0 + kSeparationMargin))
            throw SeparationViolated("edge " + std::to_string(e) + ": inversive distance " +
                                     std::to_string(inversive[e]) + " is not > 1");
    return ConformalClass{std::move(tri), std::move(inversive), radii};
}

ConformalClass make_class_from_lengths(Triangulation tri, const std::vector<double>& lengths,
                                       const Vec& radii) {
    if (static_cast<int>(lengths.size()) != tri.num_edges())
        throw ParseError("length count does not match edge count");
    std::vector<double> inv(lengths.size());
    for (int e = 0; e < tri.num_edges(); ++e) {
        const auto [a, b] = tri.edge_vertices(e);
        inv[e] = inversive_from_length(radii[a], radii[b], lengths[e]);
    }
    return make_class_from_inversive(std::move(tri), std::move(inv), radii);
}

Vec u_from_h(const ConformalClass& cc, const Vec& h) {
    // sinh(r(h)) = 1/sinh(h), so u = -log(sinh h) - log(sinh r0)
    Vec u(h.size());
    for (Eigen::Index i = 0; i < h.size(); ++i) {
        if (!(h[i] > 0)) throw NonPositiveFactor("conformal factor must be positive");
        u[i] = -std::log(std::sinh(h[i])) - std::log(std::sinh(cc.ref_radii[i]));
    }
    return u;
}

DecoratedMetric realize(const ConformalClass& cc, const Vec& h) {
    DecoratedMetric m;
    m.radius = r_from_h(h);
    m.length.resize(cc.num_edges());
    for (int e = 0; e < cc.num_edges(); ++e) {
        const auto [a, b] = cc.tri.edge_vertices(e);
        m.length[e] = length_from_inversive(m.radius[a], m.radius[b], cc.inversive[e]);
    }
    return m;
}

DecoratedMetric realize_via_conformal_change(const ConformalClass& cc, const Vec& h) {
    const Vec u = u_from_h(cc, h);
    DecoratedMetric ref;
    ref.radius = cc.ref_radii;
    DecoratedMetric m;
    m.radius = r_from_h(h);
    m.length.resize(cc.num_edges());
    for (int e = 0; e < cc.num_edges(); ++e) {
        const auto [a, b] = cc.tri.edge_vertices(e);
        const double r0a = cc.ref_radii[a], r0b = cc.ref_radii[b];
        const double l0 = length_from_inversive(r0a, r0b, cc.inversive[e]);
        const double ch = std::exp(u[a] + u[b]) * (std::cosh(l0) - std::cosh(r0a) * std::cosh(r0b)) +
                          std::sqrt((1.0 + std::exp(2 * u[a]) * std::sinh(r0a) * std::sinh(r0a)) *
                                    (1.0 + std::exp(2 * u[b]) * std::sinh(r0b) * std::sinh(r0b)));
        m.length[e] = acosh_stable(ch);
    }
    return m;
}

ValidationReport validate(const DecoratedMetric& metric, const Triangulation& tri) {
    ValidationReport rep;
    for (int f = 0; f < tri.num_faces(); ++f) {
        const auto e = tri.face_edges_opposite(f);
        if (!triangle_admissible(metric.length[e[0]], metric.length[e[1]], metric.length[e[2]]))
            rep.bad_faces.push_back(f);
    }
    for (int e = 0; e < tri.num_edges(); ++e) {
        const auto [a, b] = tri.edge_vertices(e);
        const double inv = inversive_from_length(metric.radius[a], metric.radius[b], metric.length[e]);
        if (!(inv > 1.0 + kSeparationMargin)) rep.bad_edges.push_back(e);
    }
    return rep;
}

Vec reference_factor(const ConformalClass& cc) { return h_from_r(cc.ref_radii); }

std::vector<double> inversive_of(const DecoratedMetric& metric, const Triangulation& tri) {
    std::vector<double> inv(tri.num_edges());
    for (int e = 0; e < tri.num_edges(); ++e) {
        const auto [a, b] = tri.edge_vertices(e);
        inv[e] = inversive_from_length(metric.radius[a], metric.radius[b], metric.length[e]);
    }
    return inv;
}

} // namespace hypflow
