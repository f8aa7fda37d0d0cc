#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "hfbs/csv.hpp"
#include "hfbs/fbs.hpp"
#include "hfbs/lpfbs.hpp"
#include "hfbs/metrics.hpp"
#include "hfbs/plant_config.hpp"
#include "hfbs/trajgen.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitUnstable = 4;

struct RectArg {
    double length = 0.0, width = 0.0;
};

RectArg parse_rect(const std::string& s) {
    RectArg r;
    char extra;
    if (std::sscanf(s.c_str(), "%lf x %lf %c", &r.length, &r.width, &extra) != 2)
        throw CLI::ValidationError("--rect", "expected LENGTHxWIDTH, e.g. 120x20");
    return r;
}

hfbs::CouplingMode coupling_from(const std::string& s) {
    return s == "lpv" ? hfbs::CouplingMode::lpv : hfbs::CouplingMode::nonlinear;
}

hfbs::LoadedPlant load_plant_reporting(const std::string& path,
                                       hfbs::CouplingMode mode) {
    hfbs::LoadedPlant lp = hfbs::load_plant_config(path, mode);
    std::cerr << "plant '" << path << "': " << lp.stability.summary() << "\n";
    return lp;
}

// geometric path for contour error: explicit rectangle or path file wins,
// otherwise the polyline traced by the reference trajectory itself
hfbs::PathSpec resolve_path(const std::string& rect, const std::string& path_file,
                            const hfbs::Trajectory& ref) {
    if (!rect.empty()) {
        const RectArg r = parse_rect(rect);
        return hfbs::rectangle_path(r.length, r.width);
    }
    if (!path_file.empty()) return hfbs::read_path_file(path_file);
    hfbs::PathSpec spec;
    for (Eigen::Index k = 0; k < ref.size(); ++k) {
        Eigen::Vector2d p(ref.x[k], ref.y[k]);
        if (spec.waypoints.empty() || (p - spec.waypoints.back()).norm() > 0.0)
            spec.waypoints.push_back(p);
    }
    spec.validate();
    return spec;
}

struct TrajgenOpts {
    std::string rect, path_file, out = "trajectory.csv";
    hfbs::MotionLimits limits;
    double ts = 0.0;
};

int run_trajgen(const TrajgenOpts& o) {
    hfbs::PathSpec path;
    if (!o.rect.empty()) {
        const RectArg r = parse_rect(o.rect);
        path = hfbs::rectangle_path(r.length, r.width);
    } else {
        path = hfbs::read_path_file(o.path_file);
    }
    const hfbs::Trajectory traj = hfbs::sample_trajectory(path, o.limits, o.ts);
    hfbs::write_trajectory_csv(o.out, traj);
    std::cout << traj.size() << " points -> " << o.out << "\n";
    return 0;
}

struct CompensateOpts {
    std::string plant, traj, out = "commands.csv", diagnostics;
    std::string method = "fbs";
    std::string coupling = "nonlinear";
    int n = -1;
    double n_fraction = 0.0;
    int m = 5;
    hfbs::WindowConfig window;
    bool allow_unstable = false;
    double tol = hfbs::kDefaultSvdTol;
};

void write_diagnostics(const CompensateOpts& o, const hfbs::LoadedPlant& lp, int n,
                       double res_x, double res_y, double solve_seconds,
                       int batches) {
    if (o.diagnostics.empty()) return;
    std::ofstream out(o.diagnostics);
    if (!out) throw std::runtime_error("cannot open '" + o.diagnostics + "'");
    out << "method = " << o.method << "\n";
    out << "n = " << n << "\n";
    out << "m = " << o.m << "\n";
    out << "residual_rms_x_mm = " << hfbs::format_full(res_x) << "\n";
    out << "residual_rms_y_mm = " << hfbs::format_full(res_y) << "\n";
    out << "solve_seconds = " << hfbs::format_full(solve_seconds) << "\n";
    if (batches >= 0) out << "batches_solved = " << batches << "\n";
    out << "plant_stability = " << lp.stability.summary() << "\n";
}

int run_compensate(const CompensateOpts& o) {
    const hfbs::LoadedPlant lp = load_plant_reporting(o.plant, coupling_from(o.coupling));
    const hfbs::Trajectory ref = hfbs::read_trajectory_csv(o.traj);
    const int E = static_cast<int>(ref.size()) - 1;

    if (o.method != "none" && !lp.stability.all_stable && !o.allow_unstable) {
        std::cerr << "refusing to compensate against an unstable plant model "
                     "(use --allow-unstable to override)\n";
        return kExitUnstable;
    }

    hfbs::Trajectory cmd;
    cmd.sample_period = ref.sample_period;
    double res_x = 0.0, res_y = 0.0, solve_seconds = 0.0;
    int batches = -1;
    int n = o.n;
    if (n < 0 && o.n_fraction > 0.0) n = static_cast<int>(std::llround(o.n_fraction * E));

    if (o.method == "none") {
        cmd.x = ref.x;
        cmd.y = ref.y;
    } else if (o.method == "fbs" || o.method == "fbs_racking_coupled" ||
               o.method == "fbs_racking_decoupled") {
        if (n < 0) throw std::runtime_error("method '" + o.method +
                                            "' needs --n or --n-fraction");
        const hfbs::BasisMatrix basis = hfbs::build_basis_matrix(E, n, o.m);
        if (o.method == "fbs") {
            const auto sx = hfbs::solve_standard(lp.plant.gxx, ref.x, basis, o.tol);
            const auto sy = hfbs::solve_standard(lp.plant.gyy, ref.y, basis, o.tol);
            cmd.x = sx.command;
            cmd.y = sy.command;
            res_x = sx.residual_rms;
            res_y = sy.residual_rms;
            solve_seconds = sx.solve_seconds + sy.solve_seconds;
        } else {
            const auto solver = (o.method == "fbs_racking_coupled")
                                    ? hfbs::solve_coupled_lpv
                                    : hfbs::solve_decoupled_lpv;
            const auto r = solver(lp.plant, ref.x, ref.y, basis, basis, o.tol);
            cmd.x = r.xdm;
            cmd.y = r.ydm;
            res_x = r.residual_rms_x;
            res_y = r.residual_rms_y;
            solve_seconds = r.solve_seconds;
        }
    } else if (o.method == "lpfbs" || o.method == "lpfbs_racking") {
        hfbs::WindowConfig cfg = o.window;
        cfg.m = o.m;
        cfg.svd_tol = o.tol;
        if (o.method == "lpfbs") {
            const auto rx = hfbs::lpfbs_standard(lp.plant.gxx, ref.x, cfg);
            const auto ry = hfbs::lpfbs_standard(lp.plant.gyy, ref.y, cfg);
            cmd.x = rx.command;
            cmd.y = ry.command;
            batches = rx.batches_solved;
        } else {
            const auto r = hfbs::lpfbs_decoupled(lp.plant, ref.x, ref.y, cfg);
            cmd.x = r.xdm;
            cmd.y = r.ydm;
            batches = r.batches_solved;
        }
        n = -1;
    } else {
        throw std::runtime_error("unknown method '" + o.method + "'");
    }

    hfbs::write_command_csv(o.out, cmd);
    write_diagnostics(o, lp, n, res_x, res_y, solve_seconds, batches);
    std::cout << "method " << o.method << ": " << cmd.size() << " command samples -> "
              << o.out << "\n";
    return 0;
}

struct SimulateOpts {
    std::string plant, commands, ref, out = "output.csv";
    std::string coupling = "nonlinear";
};

int run_simulate(const SimulateOpts& o) {
    const auto mode = coupling_from(o.coupling);
    const hfbs::LoadedPlant lp = load_plant_reporting(o.plant, mode);
    const hfbs::Trajectory cmd = hfbs::read_command_csv(o.commands);
    Eigen::VectorXd xd = cmd.x;
    if (!o.ref.empty()) {
        const hfbs::Trajectory ref = hfbs::read_trajectory_csv(o.ref);
        if (ref.size() != cmd.size())
            throw std::runtime_error("--ref length does not match the command file");
        xd = ref.x;
    } else if (mode == hfbs::CouplingMode::lpv) {
        throw std::runtime_error("--coupling lpv needs --ref for the scheduling "
                                 "parameter");
    }
    if (!lp.stability.all_stable)
        std::cerr << "warning: simulating an unstable plant model\n";
    const hfbs::SimulationResult res = hfbs::simulate_hframe(lp.plant, cmd.x, cmd.y, xd);
    hfbs::write_output_csv(o.out, res, cmd.sample_period);
    std::cout << res.x.size() << " output samples -> " << o.out << "\n";
    return 0;
}

struct EvaluateOpts {
    std::string ref, out_csv, rect, path_file, out = "errors.csv";
};

int run_evaluate(const EvaluateOpts& o) {
    const hfbs::Trajectory ref = hfbs::read_trajectory_csv(o.ref);
    const hfbs::OutputSeries sim = hfbs::read_output_csv(o.out_csv);
    if (sim.traj.size() != ref.size())
        throw std::runtime_error("reference and output files differ in length");
    const hfbs::PathSpec path = resolve_path(o.rect, o.path_file, ref);
    const hfbs::ErrorReport rep = hfbs::evaluate_errors(path, ref, sim.traj);
    hfbs::write_error_csv(o.out, rep, ref.sample_period);
    std::cout << "rms_ex_mm=" << hfbs::format_full(rep.rms_tracking_x)
              << " rms_ey_mm=" << hfbs::format_full(rep.rms_tracking_y)
              << " rms_contour_mm=" << hfbs::format_full(rep.rms_contour) << "\n";
    return 0;
}

struct BenchmarkOpts {
    std::string plant, traj, rect, path_file, out = "benchmark.csv";
    std::vector<double> fractions = {0.01, 0.05, 0.1, 0.15, 0.2, 0.25};
    int m = 5;
    int repeats = 3;
    std::string coupling = "nonlinear";
    bool allow_unstable = false;
};

int run_benchmark(const BenchmarkOpts& o) {
    const hfbs::LoadedPlant lp = load_plant_reporting(o.plant, coupling_from(o.coupling));
    if (!lp.stability.all_stable && !o.allow_unstable) {
        std::cerr << "refusing to benchmark against an unstable plant model "
                     "(use --allow-unstable to override)\n";
        return kExitUnstable;
    }
    const hfbs::Trajectory ref = hfbs::read_trajectory_csv(o.traj);
    const hfbs::PathSpec path = resolve_path(o.rect, o.path_file, ref);
    const auto rows = hfbs::benchmark_sweep(lp.plant, ref, path, o.fractions, o.m,
                                            o.repeats);
    for (const auto& r : rows)
        if (r.skipped)
            std::cerr << "skipped n=" << r.n << " (below m+1)\n";
    hfbs::write_benchmark_csv(o.out, rows);
    std::cout << rows.size() << " sweep points -> " << o.out << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"filtered B-spline feedforward compensation for coupled "
                 "H-frame motion stages"};
    app.require_subcommand(1);

    TrajgenOpts tg;
    auto* tgc = app.add_subcommand("trajgen", "generate a sampled reference trajectory");
    auto* tg_rect = tgc->add_option("--rect", tg.rect, "rectangle LENGTHxWIDTH in mm");
    tgc->add_option("--path", tg.path_file, "polyline path file (x,y per line)")
        ->excludes(tg_rect);
    tgc->add_option("--vmax", tg.limits.vmax, "max velocity, mm/s")->required();
    tgc->add_option("--amax", tg.limits.amax, "max acceleration, mm/s^2")->required();
    tgc->add_option("--jmax", tg.limits.jmax, "max jerk, mm/s^3")->required();
    tgc->add_option("--ts", tg.ts, "sample period, s")->required();
    tgc->add_option("-o,--out", tg.out, "output trajectory CSV");

    CompensateOpts co;
    auto* cc = app.add_subcommand("compensate", "solve for feedforward commands");
    cc->add_option("--plant", co.plant, "plant config file")->required();
    cc->add_option("--traj", co.traj, "reference trajectory CSV")->required();
    cc->add_option("--method", co.method,
                   "none|fbs|fbs_racking_coupled|fbs_racking_decoupled|lpfbs|"
                   "lpfbs_racking")
        ->required();
    cc->add_option("--n", co.n, "control points minus 1");
    cc->add_option("--n-fraction", co.n_fraction, "n as a fraction of E");
    cc->add_option("--m", co.m, "B-spline degree");
    cc->add_option("--nup", co.window.n_up, "LPFBS coefficients committed per batch");
    cc->add_option("--nc", co.window.n_c, "LPFBS coefficient slots per batch");
    cc->add_option("--lc", co.window.l_c, "LPFBS trajectory points per batch");
    cc->add_option("--L", co.window.l, "LPFBS knot spacing in samples");
    cc->add_option("--fir", co.window.fir_len, "truncated FIR length (0 = auto)");
    cc->add_option("--tol", co.tol, "SVD relative cutoff");
    cc->add_option("--coupling", co.coupling, "nonlinear|lpv");
    cc->add_flag("--allow-unstable", co.allow_unstable,
                 "proceed even if the plant model is unstable");
    cc->add_option("-o,--out", co.out, "output command CSV");
    cc->add_option("--diagnostics", co.diagnostics, "diagnostics text file");

    SimulateOpts so;
    auto* sc = app.add_subcommand("simulate", "run commands through the plant model");
    sc->add_option("--plant", so.plant, "plant config file")->required();
    sc->add_option("--commands", so.commands, "command CSV")->required();
    sc->add_option("--ref", so.ref, "reference trajectory CSV (lpv scheduling)");
    sc->add_option("--coupling", so.coupling, "nonlinear|lpv");
    sc->add_option("-o,--out", so.out, "output CSV");

    EvaluateOpts eo;
    auto* ec = app.add_subcommand("evaluate", "tracking and contour error report");
    ec->add_option("--ref", eo.ref, "reference trajectory CSV")->required();
    ec->add_option("--sim", eo.out_csv, "simulated output CSV")->required();
    ec->add_option("--rect", eo.rect, "rectangle LENGTHxWIDTH for the contour path");
    ec->add_option("--path", eo.path_file, "path file for the contour path");
    ec->add_option("-o,--out", eo.out, "per-sample error CSV");

    BenchmarkOpts bo;
    auto* bc = app.add_subcommand("benchmark",
                                  "coupled vs decoupled accuracy/timing sweep");
    bc->add_option("--plant", bo.plant, "plant config file")->required();
    bc->add_option("--traj", bo.traj, "reference trajectory CSV")->required();
    bc->add_option("--fractions", bo.fractions, "n fractions of E")->delimiter(',');
    bc->add_option("--m", bo.m, "B-spline degree");
    bc->add_option("--repeats", bo.repeats, "timing repeats (median)");
    bc->add_option("--rect", bo.rect, "rectangle LENGTHxWIDTH for the contour path");
    bc->add_option("--path", bo.path_file, "path file for the contour path");
    bc->add_option("--coupling", bo.coupling, "nonlinear|lpv");
    bc->add_flag("--allow-unstable", bo.allow_unstable,
                 "proceed even if the plant model is unstable");
    bc->add_option("-o,--out", bo.out, "benchmark CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (tgc->parsed()) {
            if (tg.rect.empty() == tg.path_file.empty())
                throw CLI::ValidationError("trajgen",
                                           "exactly one of --rect/--path is required");
            return run_trajgen(tg);
        }
        if (cc->parsed()) return run_compensate(co);
        if (sc->parsed()) return run_simulate(so);
        if (ec->parsed()) return run_evaluate(eo);
        if (bc->parsed()) return run_benchmark(bo);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
