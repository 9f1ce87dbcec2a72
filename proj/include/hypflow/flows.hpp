#pragma once

#include <limits>
#include <string>
#include <vector>

#include "hypflow/delaunay.hpp"
#include "hypflow/metric.hpp"

namespace hypflow {

enum class Stepper { euler, rk4 };
enum class FlowKind { ricci, calabi };
enum class FlowStatus { converged, max_time, failed };

struct FlowConfig {
    double alpha = 0.0;
    Vec target; // prescribed curvature per vertex
    Stepper stepper = Stepper::rk4;
    double dt = 0.05;
    double dt_min = 1e-9;
    double adaptivity = 2.0; // halving/regrowth factor on rejected/smooth steps
    double eps = 1e-10;      // stop when sup|R_alpha - target| < eps
    double max_time = std::numeric_limits<double>::infinity();
    long max_steps = 1000000;
    int flip_budget_per_step = 0; // <=0: default 50*E
    bool surgery = true;          // false: fixed triangulation, degeneracy fails
    int record_every = 1;
};

struct FlowRecord {
    double t = 0;
    Vec h;
    Vec alpha_curv;
    double sup_err = 0;
    double potential_gain = 0; // W increment accumulated since the start
    int flips = 0;             // surgery flips at this step
};

struct TimedFlipEvent {
    double t = 0;
    FlipEvent event;
};

struct FlowTrace {
    std::vector<FlowRecord> records;
    std::vector<TimedFlipEvent> flips;
};

struct FlowResult {
    Vec h;
    FlowTrace trace;
    FlowStatus status = FlowStatus::failed;
    std::string message;
    ConformalClass final_class;  // triangulation after the last surgery
    double min_factor_seen = 0;  // lower bound witness for h along the run
    bool delaunay_clean = true;  // no-surgery runs: no violation ever observed
};

// dh/dt for the Ricci flow: R_alpha - target, with the flip-invariant
// curvature (cc is retriangulated toward Delaunay in place)
Vec ricci_rhs(ConformalClass& cc, const Vec& h, double alpha, const Vec& target);

// dh/dt for the Calabi flow: Delta_alpha(target - R_alpha)
Vec calabi_rhs(ConformalClass& cc, const Vec& h, double alpha, const Vec& target);

struct FlowState {
    ConformalClass cc;
    Vec h;
    double t = 0;
    double dt = 0;
};

// One accepted stepper step followed by surgery; halves dt on degeneracy,
// throws StepUnderflow when dt would drop below dt_min.
// Returns the surgery flip count of the accepted step.
int step_with_surgery(FlowState& state, const FlowConfig& config, FlowKind kind,
                      FlipLog* log = nullptr);

FlowResult run_flow(const ConformalClass& cc, const Vec& h0, const FlowConfig& config,
                    FlowKind kind);

struct MonitorReport {
    bool applicable = true;
    bool ok = true;
    double worst = 0;      // most violating signed margin
    long worst_index = -1; // record index of the worst violation
    std::string note;
};

// sign preservation of M = R_alpha - target along a Ricci trace
MonitorReport monitor_max_principle(const FlowTrace& trace, const Vec& target, double tol = 1e-7);

// per-step monotonicity of the potential up to stepper error C*dt^2
MonitorReport monitor_potential(const FlowTrace& trace, double dt);

} // namespace hypflow
