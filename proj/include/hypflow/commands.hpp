#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hypflow/flows.hpp"
#include "hypflow/solver.hpp"

namespace hypflow {

// exit codes shared by every subcommand
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitUsage = 4;

struct RunOptions {
    std::vector<std::string> meshes;
    std::optional<double> alpha;
    std::string target_spec; // scalar literal or path to a JSON array
    std::string kind = "ricci";
    double dt = 0.05;
    double eps = 1e-10;
    long max_steps = 1000000;
    std::string stepper = "rk4";
    std::string out;   // mesh output path (directory when several meshes)
    std::string trace; // trace/iteration-log path (directory when several)
    int jobs = 1;
    bool no_surgery = false;
    // solver knobs
    double grad_tol = 1e-10;
    int max_iter = 100;
};

int cmd_check(const std::string& mesh_path, std::ostream& out);
int cmd_curvature(const std::string& mesh_path, std::optional<double> alpha, std::ostream& out);
int cmd_flow(const RunOptions& opt, std::ostream& out);
int cmd_solve(const RunOptions& opt, std::ostream& out);
int cmd_fixture(const std::string& kind, std::uint64_t seed, const std::string& out_path,
                std::ostream& out);

// formatting helpers shared with the trace writers (17 significant digits)
std::string fmt17(double x);
void write_trace_csv(const std::string& path, const FlowTrace& trace);
void write_flip_log(const std::string& path, const FlowTrace& trace);
void write_solve_log(const std::string& path, const std::vector<SolveIterRecord>& log);

// parse --target: scalar literal or JSON-array file; n = vertex count
Vec parse_target(const std::string& spec, int n);

} // namespace hypflow
