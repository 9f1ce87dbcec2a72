#include "hypflow/solver.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "hypflow/curvature.hpp"
#include "hypflow/delaunay.hpp"

namespace hypflow {

PrecheckVerdict existence_precheck(int euler_characteristic, double alpha, const Vec& target) {
    for (Eigen::Index i = 0; i < target.size(); ++i)
        if (!(target[i] < 2.0 * M_PI))
            throw TargetOutOfRange("target curvature must be < 2*pi at every vertex");
    if (alpha < 0 && euler_characteristic < 0 && target.maxCoeff() <= 0)
        return PrecheckVerdict::case_i;
    if (alpha > 0 && target.minCoeff() > 0) return PrecheckVerdict::case_ii;
    if (alpha == 0 && target.sum() > 2.0 * M_PI * euler_characteristic)
        return PrecheckVerdict::case_iii;
    return PrecheckVerdict::not_guaranteed;
}

std::string to_string(PrecheckVerdict v) {
    switch (v) {
        case PrecheckVerdict::case_i: return "guaranteed (i): alpha<0, chi<0, target<=0";
        case PrecheckVerdict::case_ii: return "guaranteed (ii): alpha>0, target>0";
        case PrecheckVerdict::case_iii: return "guaranteed (iii): alpha=0, sum(target)>2*pi*chi";
        default: return "not guaranteed";
    }
}

SolveResult newton_solve(const ConformalClass& cc, const Vec& h0, const SolveConfig& config) {
    existence_precheck(cc.tri.euler_characteristic(), config.alpha, config.target);

    SolveResult res;
    res.final_class = cc;
    ConformalClass& state = res.final_class;
    Vec h = h0;
    for (Eigen::Index i = 0; i < h.size(); ++i)
        if (!(h[i] > 0)) throw NonPositiveFactor("initial conformal factor must be positive");

    res.guaranteed_regime = true;
    for (Eigen::Index i = 0; i < config.target.size(); ++i)
        if (config.alpha * config.target[i] < 0) res.guaranteed_regime = false;
    if (!res.guaranteed_regime)
        res.message = "alpha*target >= 0 fails: concavity not guaranteed; ";

    make_weighted_delaunay(state, h);

    double gain = 0.0;
    for (int iter = 0; iter < config.max_iter; ++iter) {
        const Vec K = angle_defect(state, h);
        Vec g(h.size());
        for (Eigen::Index i = 0; i < h.size(); ++i)
            g[i] = K[i] - config.target[i] * std::exp(config.alpha * h[i]);
        const double gnorm = g.lpNorm<Eigen::Infinity>();

        if (gnorm < config.grad_tol) {
            res.h = h;
            res.iterations = iter;
            res.converged = true;
            res.message += "converged";
            return res;
        }

        // Hess W = L - alpha * diag(target * e^{alpha h})
        Mat H = jacobian(state, h);
        for (Eigen::Index i = 0; i < h.size(); ++i)
            H(i, i) -= config.alpha * config.target[i] * std::exp(config.alpha * h[i]);

        Vec dir;
        Eigen::LDLT<Mat> ldlt(-H); // -H positive definite in the guaranteed regime
        bool newton_ok = (ldlt.info() == Eigen::Success && ldlt.isPositive());
        if (newton_ok) {
            dir = ldlt.solve(g);
            newton_ok = dir.allFinite() && g.dot(dir) > 0;
        }
        if (!newton_ok) {
            if (res.guaranteed_regime)
                throw SingularHessian("Newton system not negative definite in guaranteed regime");
            dir = g; // gradient ascent fallback
        }

        // clamp to keep h above the positivity floor
        double step_max = 1.0;
        for (Eigen::Index i = 0; i < h.size(); ++i)
            if (dir[i] < 0) step_max = std::min(step_max, (config.h_floor - h[i]) / dir[i]);

        const double slope = g.dot(dir);
        double step = step_max;
        bool accepted = false;
        double inc = 0;
        for (int tries = 0; tries < 60; ++tries) {
            const Vec h_try = h + step * dir;
            try {
                inc = potential_diff(state, h, h_try, config.alpha, config.target);
            } catch (const Error&) {
                step *= config.backtrack;
                continue;
            }
            if (inc >= config.armijo * step * slope) {
                accepted = true;
                break;
            }
            step *= config.backtrack;
        }
        if (!accepted)
            throw LineSearchFailed("no acceptable step along the ascent direction at iteration " +
                                   std::to_string(iter));

        h += step * dir;
        gain += inc;
        FlipLog log;
        make_weighted_delaunay(state, h, &log);
        res.log.push_back({iter, gnorm, step, gain, static_cast<int>(log.size())});
    }

    res.h = h;
    res.iterations = config.max_iter;
    res.converged = false;
    res.message += "iteration budget exhausted";
    return res;
}

} // namespace hypflow
