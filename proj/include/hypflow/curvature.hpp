#pragma once

#include <vector>

#include "hypflow/metric.hpp"

namespace hypflow {

// cone angle at each vertex (sum of incident interior angles)
Vec cone_angles(const Triangulation& tri, const std::vector<double>& lengths);
Vec cone_angles(const ConformalClass& cc, const Vec& h);

// angle defect K_i = 2*pi - cone angle
Vec angle_defect(const Triangulation& tri, const std::vector<double>& lengths);
Vec angle_defect(const ConformalClass& cc, const Vec& h);

// componentwise K_i * exp(-alpha*h_i)
Vec alpha_curvature(const Vec& defect, const Vec& h, double alpha);

double total_area(const Triangulation& tri, const std::vector<double>& lengths);

// Jacobian L_ij = dK_i/dh_j on the class triangulation (no surgery), via the
// hyperbolic law-of-cosines derivatives chained through dr/dh = -1/sinh(h).
Mat jacobian(const ConformalClass& cc, const Vec& h);

// L = L_A + L_B with L_A = diag(A), L_B the zero-row-sum edge-weight part.
// A is computed from the area-derivative formula, so the reconstruction
// L_A + L_B == L is a genuine identity check rather than bookkeeping.
struct JacobianSplit {
    Vec A;                      // diagonal of L_A
    Mat LB;                     // symmetric, zero row sums, loops excluded
    std::vector<double> edge_w; // per-edge weight w_e (loops included)
};
JacobianSplit jacobian_split(const ConformalClass& cc, const Vec& h);

// discrete alpha-Laplacian applied through the matrix: e^{-alpha h} .* (L f)
Vec laplace_apply(const Mat& L, const Vec& h, double alpha, const Vec& f);
// same operator through the hinge form sum_j w_ij (f_j - f_i) + A_i f_i, scaled
Vec laplace_apply_hinge(const JacobianSplit& split, const Triangulation& tri, const Vec& h,
                        double alpha, const Vec& f);

// gradient of the potential: K_i - Rbar_i * e^{alpha h_i}, with K the
// flip-invariant extended curvature (the class is retriangulated internally)
Vec potential_grad(const ConformalClass& cc, const Vec& h, double alpha, const Vec& target);

// Potential difference W(h_b) - W(h_a) by adaptive Gauss-Legendre quadrature
// of the gradient along the straight segment, subdividing across flip events.
double potential_diff(const ConformalClass& cc, const Vec& h_a, const Vec& h_b, double alpha,
                      const Vec& target, double tol = 1e-10);

} // namespace hypflow
