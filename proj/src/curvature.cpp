#include "hypflow/curvature.hpp"

#include <cmath>

#include "hypflow/hypgeom.hpp"

namespace hypflow {

namespace {

struct FaceAngles {
    double theta[3]; // angle at corner m (opposite edge m)
};

// lengths a[m] = length of the edge opposite corner m
FaceAngles face_angles(double a0, double a1, double a2) {
    FaceAngles fa;
    fa.theta[0] = interior_angle(a1, a2, a0);
    fa.theta[1] = interior_angle(a2, a0, a1);
    fa.theta[2] = interior_angle(a0, a1, a2);
    return fa;
}

} // namespace

Vec cone_angles(const Triangulation& tri, const std::vector<double>& lengths) {
    Vec theta = Vec::Zero(tri.num_vertices());
    for (int f = 0; f < tri.num_faces(); ++f) {
        const auto v = tri.face_vertices(f);
        const auto e = tri.face_edges_opposite(f);
        const FaceAngles fa = face_angles(lengths[e[0]], lengths[e[1]], lengths[e[2]]);
        for (int m = 0; m < 3; ++m) theta[v[m]] += fa.theta[m];
    }
    return theta;
}

Vec cone_angles(const ConformalClass& cc, const Vec& h) {
    return cone_angles(cc.tri, realize(cc, h).length);
}

Vec angle_defect(const Triangulation& tri, const std::vector<double>& lengths) {
    Vec K = cone_angles(tri, lengths);
    for (Eigen::Index i = 0; i < K.size(); ++i) K[i] = 2.0 * M_PI - K[i];
    return K;
}

Vec angle_defect(const ConformalClass& cc, const Vec& h) {
    return angle_defect(cc.tri, realize(cc, h).length);
}

Vec alpha_curvature(const Vec& defect, const Vec& h, double alpha) {
    Vec R(defect.size());
    for (Eigen::Index i = 0; i < defect.size(); ++i) R[i] = defect[i] * std::exp(-alpha * h[i]);
    return R;
}

double total_area(const Triangulation& tri, const std::vector<double>& lengths) {
    double area = 0;
    for (int f = 0; f < tri.num_faces(); ++f) {
        const auto e = tri.face_edges_opposite(f);
        area += triangle_area(lengths[e[0]], lengths[e[1]], lengths[e[2]]);
    }
    return area;
}

namespace {

// Per-face derivative block of the three corner angles with respect to the
// conformal factors of the three corners, corner radii treated as independent
// (so loops and multi-edges fall out correctly). D[a][b] = dtheta_a/dh_b.
struct FaceBlock {
    double D[3][3];
    double len[3]; // edge lengths, edge m opposite corner m
};

FaceBlock face_block(const ConformalClass& cc, const Vec& h, const DecoratedMetric& metric, int f) {
    const Triangulation& tri = cc.tri;
    const auto v = tri.face_vertices(f);
    const auto e = tri.face_edges_opposite(f);

    FaceBlock blk;
    double a[3];
    for (int m = 0; m < 3; ++m) a[m] = blk.len[m] = metric.length[e[m]];

    const FaceAngles fa = face_angles(a[0], a[1], a[2]);

    // dtheta_m / d(length of edge n): with D0 = sin(theta_m) sinh(adjacent sides)
    double T[3][3];
    for (int m = 0; m < 3; ++m) {
        const int p = (m + 1) % 3, q = (m + 2) % 3;
        const double denom = std::sin(fa.theta[m]) * std::sinh(a[p]) * std::sinh(a[q]);
        T[m][m] = std::sinh(a[m]) / denom;
        T[m][p] = -std::cos(fa.theta[q]) * std::sinh(a[m]) / denom;
        T[m][q] = -std::cos(fa.theta[p]) * std::sinh(a[m]) / denom;
    }

    // d(length of edge n) / dh at each of its two corner slots; edge n joins
    // corners n+1 and n+2
    double S[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}; // S[n][slot corner]
    for (int n = 0; n < 3; ++n) {
        const int p = (n + 1) % 3, q = (n + 2) % 3;
        const double I = cc.inversive[e[n]];
        const double rp = metric.radius[v[p]], rq = metric.radius[v[q]];
        const double sl = std::sinh(a[n]);
        const double dl_drp = (I * std::cosh(rp) * std::sinh(rq) + std::sinh(rp) * std::cosh(rq)) / sl;
        const double dl_drq = (I * std::sinh(rp) * std::cosh(rq) + std::cosh(rp) * std::sinh(rq)) / sl;
        S[n][p] = dl_drp * (-1.0 / std::sinh(h[v[p]]));
        S[n][q] = dl_drq * (-1.0 / std::sinh(h[v[q]]));
    }

    for (int m = 0; m < 3; ++m)
        for (int b = 0; b < 3; ++b) {
            double d = 0;
            for (int n = 0; n < 3; ++n) d += T[m][n] * S[n][b];
            blk.D[m][b] = d;
        }
    return blk;
}

} // namespace

Mat jacobian(const ConformalClass& cc, const Vec& h) {
    const Triangulation& tri = cc.tri;
    const DecoratedMetric metric = realize(cc, h);
    Mat L = Mat::Zero(tri.num_vertices(), tri.num_vertices());
    for (int f = 0; f < tri.num_faces(); ++f) {
        const auto v = tri.face_vertices(f);
        const FaceBlock blk = face_block(cc, h, metric, f);
        for (int m = 0; m < 3; ++m)
            for (int b = 0; b < 3; ++b) L(v[m], v[b]) -= blk.D[m][b];
    }
    return L;
}

JacobianSplit jacobian_split(const ConformalClass& cc, const Vec& h) {
    const Triangulation& tri = cc.tri;
    const DecoratedMetric metric = realize(cc, h);
    const int nv = tri.num_vertices();

    JacobianSplit out;
    out.A = Vec::Zero(nv);
    out.LB = Mat::Zero(nv, nv);
    out.edge_w.assign(tri.num_edges(), 0.0);

    for (int f = 0; f < tri.num_faces(); ++f) {
        const auto v = tri.face_vertices(f);
        const auto e = tri.face_edges_opposite(f);
        const FaceBlock blk = face_block(cc, h, metric, f);
        for (int m = 0; m < 3; ++m) {
            const int p = (m + 1) % 3, q = (m + 2) % 3;
            // edge m spans corners p,q: this face's side contributes -D[p][q]
            out.edge_w[e[m]] -= blk.D[p][q];
            // area-derivative diagonal, accumulated per ordered corner pair
            out.A[v[p]] += (std::cosh(blk.len[m]) - 1.0) * blk.D[p][q];
            out.A[v[q]] += (std::cosh(blk.len[m]) - 1.0) * blk.D[q][p];
        }
    }

    for (int e = 0; e < tri.num_edges(); ++e) {
        const auto [a, b] = tri.edge_vertices(e);
        if (a == b) continue; // loop weights multiply f_j - f_i = 0
        out.LB(a, b) += out.edge_w[e];
        out.LB(b, a) += out.edge_w[e];
    }
    for (int i = 0; i < nv; ++i) out.LB(i, i) = -out.LB.row(i).sum();
    return out;
}

Vec laplace_apply(const Mat& L, const Vec& h, double alpha, const Vec& f) {
    Vec out = L * f;
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] *= std::exp(-alpha * h[i]);
    return out;
}

Vec laplace_apply_hinge(const JacobianSplit& split, const Triangulation& tri, const Vec& h,
                        double alpha, const Vec& f) {
    Vec out = Vec::Zero(f.size());
    for (int e = 0; e < tri.num_edges(); ++e) {
        const auto [a, b] = tri.edge_vertices(e);
        if (a == b) continue;
        out[a] += split.edge_w[e] * (f[b] - f[a]);
        out[b] += split.edge_w[e] * (f[a] - f[b]);
    }
    for (Eigen::Index i = 0; i < f.size(); ++i)
        out[i] = (out[i] + split.A[i] * f[i]) * std::exp(-alpha * h[i]);
    return out;
}

} // namespace hypflow
