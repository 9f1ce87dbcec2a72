#include "hypflow/hypgeom.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hypflow {

bool triangle_admissible(double a, double b, double c, double tol) {
    if (!(a > 0) || !(b > 0) || !(c > 0)) return false;
    return a + b > c + tol && b + c > a + tol && c + a > b + tol;
}

double length_from_inversive(double r_i, double r_j, double inversive) {
    if (!(r_i > 0) || !(r_j > 0))
        throw NonPositiveFactor("vertex radius must be positive");
    if (inversive < 1.0)
        throw SeparationViolated("inversive distance " + std::to_string(inversive) +
                                 " < 1: vertex-circles not separated");
    const double ch = inversive * std::sinh(r_i) * std::sinh(r_j) + std::cosh(r_i) * std::cosh(r_j);
    return acosh_stable(ch);
}

double inversive_from_length(double r_i, double r_j, double length) {
    return (std::cosh(length) - std::cosh(r_i) * std::cosh(r_j)) /
           (std::sinh(r_i) * std::sinh(r_j));
}

double interior_angle(double a, double b, double c) {
    if (!triangle_admissible(a, b, c))
        throw DegenerateTriangle("side lengths violate the triangle inequality");
    const double num = std::cosh(a) * std::cosh(b) - std::cosh(c);
    const double den = std::sinh(a) * std::sinh(b);
    const double x = std::clamp(num / den, -1.0, 1.0);
    return std::acos(x);
}

double triangle_area(double a, double b, double c) {
    const double sum = interior_angle(b, c, a) + interior_angle(c, a, b) + interior_angle(a, b, c);
    return M_PI - sum;
}

namespace {

// third hyperboloid point at distances (d_from_i, d_from_j) of
// pi=(1,0,0), pj=(cosh base, sinh base, 0); y gets the requested sign
Mink3 apex_point(double base, double d_from_i, double d_from_j, double y_sign) {
    const double t = std::cosh(d_from_i);
    const double x = (t * std::cosh(base) - std::cosh(d_from_j)) / std::sinh(base);
    const double y2 = t * t - x * x - 1.0;
    if (!(y2 > 0))
        throw DegenerateTriangle("triangle does not embed (collinear or impossible lengths)");
    return {t, x, y_sign * std::sqrt(y2)};
}

} // namespace

HingeEmbedding embed_hinge(const HingeLengths& len) {
    if (!triangle_admissible(len.ij, len.jk, len.ik) || !triangle_admissible(len.ij, len.jl, len.il))
        throw DegenerateTriangle("hinge face violates the triangle inequality");
    HingeEmbedding emb;
    emb.pi = {1, 0, 0};
    emb.pj = {std::cosh(len.ij), std::sinh(len.ij), 0};
    emb.pk = apex_point(len.ij, len.ik, len.jk, +1.0);
    emb.pl = apex_point(len.ij, len.il, len.jl, -1.0);
    return emb;
}

Mink3 orthocircle(const Mink3& p_i, const Mink3& p_j, const Mink3& p_k,
                  double r_i, double r_j, double r_k) {
    // solve <f, p_m> = -cosh(r_m) for m = i,j,k: rows are J*p_m
    const double m[3][3] = {{-p_i.t, p_i.x, p_i.y},
                            {-p_j.t, p_j.x, p_j.y},
                            {-p_k.t, p_k.x, p_k.y}};
    const double rhs[3] = {-std::cosh(r_i), -std::cosh(r_j), -std::cosh(r_k)};

    // Cramer with the scale of the matrix as the singularity gauge
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    double scale = 0;
    for (const auto& row : m)
        for (double v : row) scale = std::max(scale, std::abs(v));
    if (std::abs(det) <= 1e-14 * scale * scale * scale)
        throw SingularSystem("orthocircle: vertex positions are linearly dependent");

    auto det3 = [&](int col) {
        double a[3][3];
        for (int r = 0; r < 3; ++r)
            for (int c2 = 0; c2 < 3; ++c2) a[r][c2] = (c2 == col) ? rhs[r] : m[r][c2];
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
               a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    return {det3(0) / det, det3(1) / det, det3(2) / det};
}

double edge_circle_cos(const Mink3& f, const Mink3& pa, const Mink3& pb, const Mink3& opposite) {
    Mink3 n = mcross(pa, pb);
    const double nn = mdot(n, n);
    if (!(nn > 0))
        throw DegenerateTriangle("edge endpoints do not span a geodesic");
    n = (1.0 / std::sqrt(nn)) * n;
    if (mdot(n, opposite) < 0) n = -1.0 * n; // orient toward the opposite vertex

    const double s2 = 1.0 + mdot(f, f);
    if (!(s2 > 0))
        throw SingularSystem("face circle degenerated to a geodesic");
    return mdot(f, n) / std::sqrt(s2);
}

double angle_from_cos_extended(double x) {
    if (x > 1.0) return -std::acosh(x);
    if (x < -1.0) return M_PI + std::acosh(-x);
    return std::acos(x);
}

double edge_circle_angle(const Mink3& f, const Mink3& pa, const Mink3& pb, const Mink3& opposite) {
    return angle_from_cos_extended(edge_circle_cos(f, pa, pb, opposite));
}

std::array<double, 3> face_edge_circle_cosines(double l_ij, double l_jk, double l_ki,
                                               double r_i, double r_j, double r_k) {
    if (!triangle_admissible(l_ij, l_jk, l_ki))
        throw DegenerateTriangle("face violates the triangle inequality");
    const Mink3 pi{1, 0, 0};
    const Mink3 pj{std::cosh(l_ij), std::sinh(l_ij), 0};
    const Mink3 pk = apex_point(l_ij, l_ki, l_jk, +1.0);
    const Mink3 f = orthocircle(pi, pj, pk, r_i, r_j, r_k);
    return {edge_circle_cos(f, pi, pj, pk),
            edge_circle_cos(f, pj, pk, pi),
            edge_circle_cos(f, pk, pi, pj)};
}

double flip_length(const HingeLengths& len) {
    const HingeEmbedding emb = embed_hinge(len);
    return hyp_distance(emb.pk, emb.pl);
}

} // namespace hypflow
