#include "hypflow/flows.hpp"

#include <algorithm>
#include <cmath>

#include "hypflow/curvature.hpp"
#include "hypflow/solver.hpp"

namespace hypflow {

Vec ricci_rhs(ConformalClass& cc, const Vec& h, double alpha, const Vec& target) {
    const Vec K = extended_curvature(cc, h);
    return alpha_curvature(K, h, alpha) - target;
}

Vec calabi_rhs(ConformalClass& cc, const Vec& h, double alpha, const Vec& target) {
    const Vec K = extended_curvature(cc, h);
    const Vec f = target - alpha_curvature(K, h, alpha);
    const Mat L = jacobian(cc, h);
    return laplace_apply(L, h, alpha, f);
}

namespace {

// RHS on a fixed triangulation (surgery disabled); degeneracies propagate
Vec rhs_fixed(const ConformalClass& cc, const Vec& h, const FlowConfig& config, FlowKind kind) {
    const Vec K = angle_defect(cc, h);
    if (kind == FlowKind::ricci) return alpha_curvature(K, h, config.alpha) - config.target;
    const Vec f = config.target - alpha_curvature(K, h, config.alpha);
    return laplace_apply(jacobian(cc, h), h, config.alpha, f);
}

Vec rhs_eval(ConformalClass& scratch, const Vec& h, const FlowConfig& config, FlowKind kind) {
    for (Eigen::Index i = 0; i < h.size(); ++i)
        if (!(h[i] > 0)) throw NonPositiveFactor("conformal factor left R_>0 during a step");
    if (!config.surgery) return rhs_fixed(scratch, h, config, kind);
    return kind == FlowKind::ricci ? ricci_rhs(scratch, h, config.alpha, config.target)
                                   : calabi_rhs(scratch, h, config.alpha, config.target);
}

Vec try_step(const FlowState& state, const FlowConfig& config, FlowKind kind, double dt) {
    ConformalClass scratch = state.cc;
    const Vec k1 = rhs_eval(scratch, state.h, config, kind);
    if (config.stepper == Stepper::euler) return state.h + dt * k1;
    const Vec k2 = rhs_eval(scratch, state.h + (0.5 * dt) * k1, config, kind);
    const Vec k3 = rhs_eval(scratch, state.h + (0.5 * dt) * k2, config, kind);
    const Vec k4 = rhs_eval(scratch, state.h + dt * k3, config, kind);
    return state.h + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace

int step_with_surgery(FlowState& state, const FlowConfig& config, FlowKind kind, FlipLog* log) {
    const double shrink = config.adaptivity > 1.0 ? config.adaptivity : 2.0;
    for (;;) {
        try {
            const Vec h_new = try_step(state, config, kind, state.dt);
            FlipLog step_log;
            int flips = 0;
            if (config.surgery) flips = make_weighted_delaunay(state.cc, h_new, &step_log);
            state.t += state.dt;
            state.h = h_new;
            if (log) log->insert(log->end(), step_log.begin(), step_log.end());
            return flips;
        } catch (const DegenerateTriangle&) {
        } catch (const NonPositiveFactor&) {
        } catch (const SeparationViolated&) {
        } catch (const SingularSystem&) {
        }
        state.dt /= shrink;
        if (state.dt < config.dt_min)
            throw StepUnderflow("step size underflow: persistent degeneracy at t = " +
                                std::to_string(state.t));
    }
}

namespace {

// potential gradient at h on a scratch copy (extended curvature)
Vec pot_grad(const ConformalClass& cc, const Vec& h, const FlowConfig& config) {
    ConformalClass tmp = cc;
    Vec g = extended_curvature(tmp, h);
    for (Eigen::Index i = 0; i < g.size(); ++i)
        g[i] -= config.target[i] * std::exp(config.alpha * h[i]);
    return g;
}

} // namespace

FlowResult run_flow(const ConformalClass& cc, const Vec& h0, const FlowConfig& config,
                    FlowKind kind) {
    FlowResult res;
    res.final_class = cc;
    FlowState state{res.final_class, h0, 0.0, config.dt};

    const PrecheckVerdict verdict =
        existence_precheck(cc.tri.euler_characteristic(), config.alpha, config.target);
    if (verdict == PrecheckVerdict::not_guaranteed)
        res.message = "existence not guaranteed by any sufficient condition; ";

    for (Eigen::Index i = 0; i < h0.size(); ++i)
        if (!(h0[i] > 0)) throw NonPositiveFactor("initial conformal factor must be positive");

    if (config.surgery) make_weighted_delaunay(state.cc, state.h);
    res.min_factor_seen = state.h.minCoeff();

    double gain = 0.0;
    int last_flips = 0;
    Vec curv = alpha_curvature(angle_defect(state.cc, state.h), state.h, config.alpha);
    double err = (curv - config.target).lpNorm<Eigen::Infinity>();

    auto record = [&]() {
        FlowRecord rec;
        rec.t = state.t;
        rec.h = state.h;
        rec.alpha_curv = curv;
        rec.sup_err = err;
        rec.potential_gain = gain;
        rec.flips = last_flips;
        res.trace.records.push_back(std::move(rec));
    };

    record();
    Vec g_prev = pot_grad(state.cc, state.h, config);

    long step = 0;
    try {
        while (true) {
            if (err < config.eps) {
                if (res.trace.records.back().t != state.t) record();
                res.status = FlowStatus::converged;
                res.message += "converged";
                break;
            }
            if (state.t >= config.max_time || step >= config.max_steps) {
                if (res.trace.records.back().t != state.t) record();
                res.status = FlowStatus::max_time;
                res.message += "time or step budget reached";
                break;
            }

            const Vec h_old = state.h;
            FlipLog step_log;
            last_flips = step_with_surgery(state, config, kind, &step_log);
            ++step;
            for (const auto& ev : step_log) res.trace.flips.push_back({state.t, ev});

            // Simpson increment of the potential along the accepted segment
            const Vec dh = state.h - h_old;
            const Vec g_mid = pot_grad(state.cc, h_old + 0.5 * dh, config);
            const Vec g_new = pot_grad(state.cc, state.h, config);
            gain += dh.dot(g_prev + 4.0 * g_mid + g_new) / 6.0;
            g_prev = g_new;

            curv = alpha_curvature(angle_defect(state.cc, state.h), state.h, config.alpha);
            err = (curv - config.target).lpNorm<Eigen::Infinity>();
            res.min_factor_seen = std::min(res.min_factor_seen, state.h.minCoeff());

            if (!config.surgery && res.delaunay_clean) {
                if (!is_weighted_delaunay(state.cc, state.h).ok()) res.delaunay_clean = false;
            }

            if ((step % std::max(1, config.record_every)) == 0) record();

            // regrow dt toward the configured value after rejections
            if (state.dt < config.dt)
                state.dt = std::min(config.dt, state.dt * (config.adaptivity > 1.0
                                                               ? config.adaptivity
                                                               : 2.0));
        }
    } catch (const Error& caught) {
        if (res.trace.records.back().t != state.t) record();
        res.status = FlowStatus::failed;
        res.message += std::string("failed: ") + caught.what();
    }

    res.h = state.h;
    return res;
}

MonitorReport monitor_max_principle(const FlowTrace& trace, const Vec& target, double tol) {
    MonitorReport rep;
    if (trace.records.empty()) {
        rep.applicable = false;
        rep.note = "empty trace";
        return rep;
    }
    const Vec m0 = trace.records.front().alpha_curv - target;
    const bool super = m0.minCoeff() >= 0;
    const bool sub = m0.maxCoeff() <= 0;
    if (!super && !sub) {
        rep.applicable = false;
        rep.note = "mixed signs at t = 0: principle not applicable";
        return rep;
    }
    rep.note = super ? "supersolution start" : "subsolution start";
    for (size_t n = 0; n < trace.records.size(); ++n) {
        const Vec m = trace.records[n].alpha_curv - target;
        const double margin = super ? m.minCoeff() : -m.maxCoeff();
        if (margin < rep.worst || n == 0) {
            rep.worst = margin;
            rep.worst_index = static_cast<long>(n);
        }
    }
    rep.ok = rep.worst >= -tol;
    return rep;
}

MonitorReport monitor_potential(const FlowTrace& trace, double dt) {
    MonitorReport rep;
    if (trace.records.size() < 2) {
        rep.note = "trace too short";
        return rep;
    }
    double rate = 0;
    for (size_t n = 1; n < trace.records.size(); ++n) {
        const double inc = trace.records[n].potential_gain - trace.records[n - 1].potential_gain;
        const double span = trace.records[n].t - trace.records[n - 1].t;
        if (span > 0) rate = std::max(rate, std::abs(inc) / span);
    }
    const double tol_w = std::max(1e-12, rate * dt * dt);
    rep.note = "tol_W = " + std::to_string(tol_w);
    rep.worst = 0;
    for (size_t n = 1; n < trace.records.size(); ++n) {
        const double inc = trace.records[n].potential_gain - trace.records[n - 1].potential_gain;
        if (inc < rep.worst) {
            rep.worst = inc;
            rep.worst_index = static_cast<long>(n);
        }
    }
    rep.ok = rep.worst >= -tol_w;
    return rep;
}

} // namespace hypflow
