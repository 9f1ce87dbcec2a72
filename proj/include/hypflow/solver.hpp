#pragma once

#include <string>
#include <vector>

#include "hypflow/metric.hpp"

namespace hypflow {

enum class PrecheckVerdict { case_i, case_ii, case_iii, not_guaranteed };

// Sufficient-condition check for the prescribed-curvature problem:
//   (i)  alpha < 0, chi < 0, target <= 0
//   (ii) alpha > 0, target > 0
//   (iii) alpha = 0 and sum(target) > 2*pi*chi.
// Every target entry must be < 2*pi; otherwise TargetOutOfRange.
PrecheckVerdict existence_precheck(int euler_characteristic, double alpha, const Vec& target);

std::string to_string(PrecheckVerdict v);

struct SolveConfig {
    double alpha = 0.0;
    Vec target;
    double grad_tol = 1e-10; // stop on sup|grad W|
    int max_iter = 100;
    double backtrack = 0.5;  // step shrink factor
    double armijo = 1e-4;    // sufficient-increase constant
    double h_floor = 1e-8;   // positivity guard
};

struct SolveIterRecord {
    int iter = 0;
    double grad_norm = 0;
    double step = 0;
    double potential_gain = 0;
    int flips = 0;
};

struct SolveResult {
    Vec h;
    int iterations = 0;
    bool converged = false;
    bool guaranteed_regime = true; // alpha * target >= 0 componentwise
    std::vector<SolveIterRecord> log;
    ConformalClass final_class;
    std::string message;
};

// Newton ascent of the concave potential; each accepted iterate is followed
// by surgery to weighted Delaunay. Outside the guaranteed regime the solver
// falls back to gradient ascent whenever the Newton system is unusable.
SolveResult newton_solve(const ConformalClass& cc, const Vec& h0, const SolveConfig& config);

} // namespace hypflow
