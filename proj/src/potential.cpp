#include <cmath>

#include "hypflow/curvature.hpp"
#include "hypflow/delaunay.hpp"

namespace hypflow {

Vec potential_grad(const ConformalClass& cc, const Vec& h, double alpha, const Vec& target) {
    Vec g = extended_curvature_copy(cc, h);
    for (Eigen::Index i = 0; i < g.size(); ++i) g[i] -= target[i] * std::exp(alpha * h[i]);
    return g;
}

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1,1]
constexpr int kGL = 16;
constexpr double kNode[kGL] = {
    -0.98940093499164993, -0.94457502307323258, -0.86563120238783175, -0.75540440835500303,
    -0.61787624440264375, -0.45801677765722739, -0.28160355077925891, -0.09501250983763744,
    0.09501250983763744,  0.28160355077925891,  0.45801677765722739,  0.61787624440264375,
    0.75540440835500303,  0.86563120238783175,  0.94457502307323258,  0.98940093499164993};
constexpr double kWeight[kGL] = {
    0.027152459411754095, 0.062253523938647893, 0.095158511682492785, 0.12462897125553387,
    0.14959598881657673,  0.16915651939500254,  0.18260341504492359,  0.18945061045506850,
    0.18945061045506850,  0.18260341504492359,  0.16915651939500254,  0.14959598881657673,
    0.12462897125553387,  0.095158511682492785, 0.062253523938647893, 0.027152459411754095};

struct SegmentIntegrator {
    const ConformalClass& cc;
    const Vec& h_a;
    Vec dir; // h_b - h_a
    double alpha;
    const Vec& target;
    double tol;
    int max_depth = 40;

    // directional derivative of the potential at parameter s; flips happen on
    // a private copy and their count marks a crossed cell wall
    double integrand(double s, int* flips) const {
        const Vec h = h_a + s * dir;
        ConformalClass tmp = cc;
        FlipLog log;
        const Vec K = extended_curvature(tmp, h, &log);
        if (flips) *flips = static_cast<int>(log.size());
        double val = 0;
        for (Eigen::Index i = 0; i < h.size(); ++i)
            val += (K[i] - target[i] * std::exp(alpha * h[i])) * dir[i];
        return val;
    }

    double gauss(double s0, double s1, int* flips_lo, int* flips_hi) const {
        const double mid = 0.5 * (s0 + s1), half = 0.5 * (s1 - s0);
        double acc = 0;
        int fl = 0, fh = 0;
        for (int q = 0; q < kGL; ++q) {
            int flips = 0;
            acc += kWeight[q] * integrand(mid + half * kNode[q], &flips);
            if (q == 0) fl = flips;
            if (q == kGL - 1) fh = flips;
        }
        if (flips_lo) *flips_lo = fl;
        if (flips_hi) *flips_hi = fh;
        return acc * half;
    }

    double refine(double s0, double s1, double whole, int flips_lo, int flips_hi,
                  int depth) const {
        const double mid = 0.5 * (s0 + s1);
        int fll, flh, frl, frh;
        const double left = gauss(s0, mid, &fll, &flh);
        const double right = gauss(mid, s1, &frl, &frh);
        const double err = std::abs(left + right - whole);
        // a change in flip count across the interval marks a kink: keep
        // splitting until the interval is resolved even if the estimate looks
        // converged at coarse scale
        const bool kink = (flips_lo != flips_hi) && (s1 - s0) > 1e-6;
        if (err < tol * std::max(1.0, std::abs(whole)) && !kink) return left + right;
        if (depth <= 0)
            throw QuadratureNotConverged("potential quadrature did not converge");
        return refine(s0, mid, left, flips_lo, flh, depth - 1) +
               refine(mid, s1, right, frl, flips_hi, depth - 1);
    }

    double run() const {
        int fl, fh;
        const double whole = gauss(0.0, 1.0, &fl, &fh);
        return refine(0.0, 1.0, whole, fl, fh, max_depth);
    }
};

} // namespace

double potential_diff(const ConformalClass& cc, const Vec& h_a, const Vec& h_b, double alpha,
                      const Vec& target, double tol) {
    Vec dir = h_b - h_a;
    if (dir.lpNorm<Eigen::Infinity>() == 0.0) return 0.0;
    SegmentIntegrator integ{cc, h_a, std::move(dir), alpha, target, tol};
    return integ.run();
}

} // namespace hypflow
