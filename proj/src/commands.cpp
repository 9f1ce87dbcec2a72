#include "hypflow/commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "hypflow/curvature.hpp"
#include "hypflow/fixtures.hpp"
#include "hypflow/meshio.hpp"

namespace hypflow {

namespace fs = std::filesystem;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

Vec parse_target(const std::string& spec, int n) {
    if (spec.empty()) throw ParseError("no target curvature given");
    try {
        size_t used = 0;
        const double value = std::stod(spec, &used);
        if (used == spec.size()) return Vec::Constant(n, value);
    } catch (const std::exception&) {
        // not a scalar: treat as a path
    }
    std::ifstream in(spec);
    if (!in) throw ParseError("cannot open target file: " + spec);
    nlohmann::json doc;
    try {
        in >> doc;
        const auto values = doc.get<std::vector<double>>();
        if (static_cast<int>(values.size()) != n)
            throw ParseError("target file has " + std::to_string(values.size()) +
                             " entries for " + std::to_string(n) + " vertices");
        return Eigen::Map<const Vec>(values.data(), n);
    } catch (const nlohmann::json::exception& err) {
        throw ParseError(std::string("target file must be a JSON array: ") + err.what());
    }
}

void write_trace_csv(const std::string& path, const FlowTrace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open trace file: " + path);
    if (trace.records.empty()) return;
    const Eigen::Index n = trace.records.front().h.size();
    out << "t";
    for (Eigen::Index i = 0; i < n; ++i) out << ",h_" << (i + 1);
    for (Eigen::Index i = 0; i < n; ++i) out << ",Ralpha_" << (i + 1);
    out << ",sup_err,dW,flips\n";
    for (const FlowRecord& rec : trace.records) {
        out << fmt17(rec.t);
        for (Eigen::Index i = 0; i < n; ++i) out << ',' << fmt17(rec.h[i]);
        for (Eigen::Index i = 0; i < n; ++i) out << ',' << fmt17(rec.alpha_curv[i]);
        out << ',' << fmt17(rec.sup_err) << ',' << fmt17(rec.potential_gain) << ',' << rec.flips
            << '\n';
    }
}

void write_flip_log(const std::string& path, const FlowTrace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open flip log file: " + path);
    for (const TimedFlipEvent& ev : trace.flips) {
        nlohmann::json line;
        line["t"] = ev.t;
        line["edge"] = ev.event.edge;
        line["angle_sum"] = ev.event.angle_sum;
        line["joins"] = {ev.event.new_vi, ev.event.new_vj};
        out << line.dump() << '\n';
    }
}

void write_solve_log(const std::string& path, const std::vector<SolveIterRecord>& log) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open iteration log file: " + path);
    out << "iter,g_inf,step,dW,flips\n";
    for (const SolveIterRecord& rec : log)
        out << rec.iter << ',' << fmt17(rec.grad_norm) << ',' << fmt17(rec.step) << ','
            << fmt17(rec.potential_gain) << ',' << rec.flips << '\n';
}

namespace {

int exit_code_for(const Error& err) {
    if (dynamic_cast<const ParseError*>(&err) || dynamic_cast<const NonManifoldEdge*>(&err) ||
        dynamic_cast<const InconsistentOrientation*>(&err) ||
        dynamic_cast<const TargetOutOfRange*>(&err))
        return kExitValidation;
    return kExitNumerical;
}

struct LoadedMesh {
    MeshFile file;
    ConformalClass cc;
    Vec h0;
};

LoadedMesh load(const std::string& path) {
    LoadedMesh lm{read_mesh_file(path), {}, {}};
    lm.cc = class_of(lm.file);
    lm.h0 = reference_factor(lm.cc);
    return lm;
}

double gauss_bonnet_residual(const ConformalClass& cc, const Vec& h) {
    const Vec K = angle_defect(cc, h);
    const double area = total_area(cc.tri, realize(cc, h).length);
    return K.sum() - area - 2.0 * M_PI * cc.tri.euler_characteristic();
}

// one flow/solve run may write beside other runs: derive per-mesh paths
std::string output_path(const std::string& base, const std::string& mesh_path, size_t count,
                        const std::string& suffix) {
    if (base.empty()) return "";
    if (count == 1) return base;
    const fs::path stem = fs::path(mesh_path).stem();
    fs::create_directories(base);
    return (fs::path(base) / (stem.string() + suffix)).string();
}

} // namespace

int cmd_check(const std::string& mesh_path, std::ostream& out) {
    try {
        const LoadedMesh lm = load(mesh_path);
        const DecoratedMetric metric = realize(lm.cc, lm.h0);
        const ValidationReport rep = validate(metric, lm.cc.tri);

        out << "vertices " << lm.cc.num_vertices() << "  edges " << lm.cc.num_edges()
            << "  faces " << lm.cc.tri.num_faces() << "  euler "
            << lm.cc.tri.euler_characteristic() << "\n";
        double min_inv = lm.cc.inversive.empty() ? 0.0 : lm.cc.inversive[0];
        for (double v : lm.cc.inversive) min_inv = std::min(min_inv, v);
        out << "separation: " << (rep.bad_edges.empty() ? "ok" : "FAIL") << " (min inversive "
            << fmt17(min_inv) << ")\n";
        if (!rep.bad_edges.empty()) {
            out << "  violating edges:";
            for (int e : rep.bad_edges) out << ' ' << e;
            out << "\n";
        }
        out << "admissibility: " << (rep.bad_faces.empty() ? "ok" : "FAIL") << "\n";
        if (!rep.bad_faces.empty()) {
            out << "  violating faces:";
            for (int f : rep.bad_faces) out << ' ' << f;
            out << "\n";
        }

        bool delaunay_ok = false;
        double max_sum = 0;
        if (rep.ok()) {
            const DelaunayReport drep = is_weighted_delaunay(lm.cc, lm.h0);
            delaunay_ok = drep.ok();
            for (double s : drep.edge_angle_sum) max_sum = std::max(max_sum, s);
            out << "delaunay: " << (delaunay_ok ? "ok" : "FAIL") << " (max angle sum "
                << fmt17(max_sum) << ")\n";
            out << "gauss-bonnet residual: " << fmt17(gauss_bonnet_residual(lm.cc, lm.h0))
                << "\n";
        } else {
            out << "delaunay: skipped (metric not admissible)\n";
        }

        const bool clean = rep.ok() && delaunay_ok;
        out << (clean ? "clean\n" : "not clean\n");
        return clean ? kExitOk : kExitValidation;
    } catch (const Error& err) {
        out << "error: " << err.what() << "\n";
        return exit_code_for(err);
    }
}

int cmd_curvature(const std::string& mesh_path, std::optional<double> alpha, std::ostream& out) {
    try {
        const LoadedMesh lm = load(mesh_path);
        const double a = alpha ? *alpha : lm.file.alpha.value_or(0.0);
        const Vec K = angle_defect(lm.cc, lm.h0);
        const Vec R = alpha_curvature(K, lm.h0, a);

        out << "alpha " << fmt17(a) << "\n";
        out << "vertex,K,h,Ralpha\n";
        for (Eigen::Index i = 0; i < K.size(); ++i)
            out << i << ',' << fmt17(K[i]) << ',' << fmt17(lm.h0[i]) << ',' << fmt17(R[i])
                << '\n';
        out << "sum_K " << fmt17(K.sum()) << "  two_pi_chi "
            << fmt17(2.0 * M_PI * lm.cc.tri.euler_characteristic()) << "\n";
        out << "gauss-bonnet residual: " << fmt17(gauss_bonnet_residual(lm.cc, lm.h0)) << "\n";
        return kExitOk;
    } catch (const Error& err) {
        out << "error: " << err.what() << "\n";
        return exit_code_for(err);
    }
}

namespace {

struct RunOutcome {
    int code = kExitOk;
    std::string report;
};

RunOutcome flow_one(const RunOptions& opt, const std::string& mesh_path, size_t mesh_count) {
    std::ostringstream out;
    RunOutcome outcome;
    try {
        const LoadedMesh lm = load(mesh_path);
        FlowConfig config;
        config.alpha = opt.alpha ? *opt.alpha : lm.file.alpha.value_or(0.0);
        if (!opt.target_spec.empty())
            config.target = parse_target(opt.target_spec, lm.cc.num_vertices());
        else if (lm.file.target)
            config.target = *lm.file.target;
        else
            throw ParseError("no target curvature: pass --target or embed target_curvature");
        config.dt = opt.dt;
        config.eps = opt.eps;
        config.max_steps = opt.max_steps;
        config.stepper = opt.stepper == "euler" ? Stepper::euler : Stepper::rk4;
        config.surgery = !opt.no_surgery;

        const FlowKind kind = opt.kind == "calabi" ? FlowKind::calabi : FlowKind::ricci;
        const PrecheckVerdict verdict = existence_precheck(lm.cc.tri.euler_characteristic(),
                                                           config.alpha, config.target);
        out << mesh_path << ": existence precheck: " << to_string(verdict) << "\n";

        const FlowResult res = run_flow(lm.cc, lm.h0, config, kind);
        const std::string trace_path = output_path(opt.trace, mesh_path, mesh_count, "_trace.csv");
        if (!trace_path.empty()) {
            write_trace_csv(trace_path, res.trace);
            write_flip_log(trace_path + ".flips.jsonl", res.trace);
        }
        const std::string mesh_out = output_path(opt.out, mesh_path, mesh_count, "_final.json");
        if (!mesh_out.empty())
            write_mesh_file(mesh_out, mesh_of_state(res.final_class, res.h, true,
                                                    config.target, config.alpha));

        out << "status: "
            << (res.status == FlowStatus::converged
                    ? "converged"
                    : (res.status == FlowStatus::max_time ? "budget reached" : "failed"))
            << " (" << res.message << ")\n";
        out << "steps " << (res.trace.records.size() - 1) << "  flips " << res.trace.flips.size()
            << "  final sup_err " << fmt17(res.trace.records.back().sup_err) << "\n";
        outcome.code = res.status == FlowStatus::converged ? kExitOk : kExitNumerical;
    } catch (const Error& err) {
        out << mesh_path << ": error: " << err.what() << "\n";
        outcome.code = exit_code_for(err);
    }
    outcome.report = out.str();
    return outcome;
}

RunOutcome solve_one(const RunOptions& opt, const std::string& mesh_path, size_t mesh_count) {
    std::ostringstream out;
    RunOutcome outcome;
    try {
        const LoadedMesh lm = load(mesh_path);
        SolveConfig config;
        config.alpha = opt.alpha ? *opt.alpha : lm.file.alpha.value_or(0.0);
        if (!opt.target_spec.empty())
            config.target = parse_target(opt.target_spec, lm.cc.num_vertices());
        else if (lm.file.target)
            config.target = *lm.file.target;
        else
            throw ParseError("no target curvature: pass --target or embed target_curvature");
        config.grad_tol = opt.grad_tol;
        config.max_iter = opt.max_iter;

        const PrecheckVerdict verdict = existence_precheck(lm.cc.tri.euler_characteristic(),
                                                           config.alpha, config.target);
        out << mesh_path << ": existence precheck: " << to_string(verdict) << "\n";

        const SolveResult res = newton_solve(lm.cc, lm.h0, config);
        const std::string log_path = output_path(opt.trace, mesh_path, mesh_count, "_iters.csv");
        if (!log_path.empty()) write_solve_log(log_path, res.log);
        const std::string mesh_out = output_path(opt.out, mesh_path, mesh_count, "_solved.json");
        if (!mesh_out.empty())
            write_mesh_file(mesh_out, mesh_of_state(res.final_class, res.h, true,
                                                    config.target, config.alpha));

        out << "status: " << (res.converged ? "converged" : "not converged") << " ("
            << res.message << ")\n";
        out << "iterations " << res.iterations << "\n";
        outcome.code = res.converged ? kExitOk : kExitNumerical;
    } catch (const Error& err) {
        out << mesh_path << ": error: " << err.what() << "\n";
        outcome.code = exit_code_for(err);
    }
    outcome.report = out.str();
    return outcome;
}

template <typename RunFn>
int run_many(const RunOptions& opt, std::ostream& out, RunFn one) {
    if (opt.meshes.empty()) {
        out << "error: no mesh files given\n";
        return kExitUsage;
    }
    std::vector<RunOutcome> outcomes(opt.meshes.size());
    const int jobs = std::max(1, opt.jobs);
    if (jobs == 1 || opt.meshes.size() == 1) {
        for (size_t m = 0; m < opt.meshes.size(); ++m)
            outcomes[m] = one(opt, opt.meshes[m], opt.meshes.size());
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> cursor{0};
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                for (size_t m = cursor.fetch_add(1); m < opt.meshes.size();
                     m = cursor.fetch_add(1))
                    outcomes[m] = one(opt, opt.meshes[m], opt.meshes.size());
            });
        for (auto& th : pool) th.join();
    }
    int code = kExitOk;
    for (const RunOutcome& oc : outcomes) {
        out << oc.report;
        code = std::max(code, oc.code);
    }
    return code;
}

} // namespace

int cmd_flow(const RunOptions& opt, std::ostream& out) { return run_many(opt, out, flow_one); }
int cmd_solve(const RunOptions& opt, std::ostream& out) { return run_many(opt, out, solve_one); }

int cmd_fixture(const std::string& kind, std::uint64_t seed, const std::string& out_path,
                std::ostream& out) {
    try {
        FixtureKind fk;
        if (kind == "sphere")
            fk = FixtureKind::sphere;
        else if (kind == "torus")
            fk = FixtureKind::torus;
        else if (kind == "genus2")
            fk = FixtureKind::genus2;
        else {
            out << "error: unknown fixture kind '" << kind << "'\n";
            return kExitUsage;
        }
        const ConformalClass cc = fixture_class(fk, seed);
        const MeshFile mesh = mesh_of_state(cc, reference_factor(cc), false);
        if (out_path.empty()) {
            out << mesh_to_json(mesh);
        } else {
            write_mesh_file(out_path, mesh);
            out << "wrote " << out_path << " (" << cc.num_vertices() << " vertices, euler "
                << cc.tri.euler_characteristic() << ")\n";
        }
        return kExitOk;
    } catch (const Error& err) {
        out << "error: " << err.what() << "\n";
        return exit_code_for(err);
    }
}

} // namespace hypflow
