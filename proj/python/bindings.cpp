#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hfbs/csv.hpp"
#include "hfbs/fbs.hpp"
#include "hfbs/lpfbs.hpp"
#include "hfbs/metrics.hpp"
#include "hfbs/plant_config.hpp"
#include "hfbs/splines.hpp"
#include "hfbs/sysmodel.hpp"
#include "hfbs/trajgen.hpp"

namespace py = pybind11;
using namespace hfbs;

PYBIND11_MODULE(_core, m) {
    m.doc() = "filtered B-spline feedforward compensation for H-frame motion stages";

    py::enum_<KnotMode>(m, "KnotMode")
        .value("normalized", KnotMode::normalized)
        .value("open_ended", KnotMode::open_ended);

    py::class_<KnotVector>(m, "KnotVector")
        .def_readonly("values", &KnotVector::values)
        .def_readonly("degree", &KnotVector::degree)
        .def_readonly("mode", &KnotVector::mode);

    py::class_<BasisMatrix>(m, "BasisMatrix")
        .def_readonly("entries", &BasisMatrix::entries)
        .def_readonly("degree", &BasisMatrix::degree)
        .def_readonly("knots", &BasisMatrix::knots)
        .def_readonly("sample_parameters", &BasisMatrix::sample_parameters);

    m.def("eval_basis", &eval_basis, py::arg("j"), py::arg("m"), py::arg("xi"),
          py::arg("knots"));
    m.def("build_normalized_knots", &build_normalized_knots, py::arg("m"), py::arg("n"));
    m.def("build_open_knots", &build_open_knots, py::arg("m"), py::arg("L"),
          py::arg("Ts"), py::arg("count"));
    m.def("build_basis_matrix", &build_basis_matrix, py::arg("E"), py::arg("n"),
          py::arg("m"));

    py::class_<DiscreteTransferFunction>(m, "DiscreteTransferFunction")
        .def(py::init<std::vector<double>, std::vector<double>, double>(),
             py::arg("numerator"), py::arg("denominator"), py::arg("sample_period"))
        .def_static("gain", &DiscreteTransferFunction::gain, py::arg("b"),
                    py::arg("sample_period"))
        .def_property_readonly("numerator", &DiscreteTransferFunction::numerator)
        .def_property_readonly("denominator", &DiscreteTransferFunction::denominator)
        .def_property_readonly("sample_period", &DiscreteTransferFunction::sample_period)
        .def("dc_gain", &DiscreteTransferFunction::dc_gain)
        .def("pole_magnitudes", &DiscreteTransferFunction::pole_magnitudes)
        .def("stable", &DiscreteTransferFunction::stable, py::arg("margin") = 1.0)
        .def("biproper", &DiscreteTransferFunction::biproper);

    m.def("impulse_response", &impulse_response, py::arg("tf"), py::arg("length"));
    m.def("filter_signal", &filter_signal, py::arg("tf"), py::arg("u"));

    py::class_<LiftedMatrix>(m, "LiftedMatrix")
        .def_readonly("entries", &LiftedMatrix::entries);
    m.def("lift", &lift, py::arg("tf"), py::arg("E"));
    m.def("lift_fir", &lift_fir, py::arg("taps"), py::arg("first_tap_index"),
          py::arg("E"));

    py::class_<FilteredBasisMatrix>(m, "FilteredBasisMatrix")
        .def_readonly("entries", &FilteredBasisMatrix::entries);
    m.def(
        "filter_basis",
        [](const DiscreteTransferFunction& tf, const BasisMatrix& basis) {
            return filter_basis(tf, basis);
        },
        py::arg("tf"), py::arg("basis"));

    py::enum_<CouplingMode>(m, "CouplingMode")
        .value("nonlinear", CouplingMode::nonlinear)
        .value("lpv", CouplingMode::lpv);

    py::class_<HFramePlant>(m, "HFramePlant")
        .def(py::init<DiscreteTransferFunction, DiscreteTransferFunction,
                      DiscreteTransferFunction, CouplingMode>(),
             py::arg("gxx"), py::arg("gyy"), py::arg("gxtheta"),
             py::arg("coupling_mode") = CouplingMode::nonlinear)
        .def_readonly("gxx", &HFramePlant::gxx)
        .def_readonly("gyy", &HFramePlant::gyy)
        .def_readonly("gxtheta", &HFramePlant::gxtheta)
        .def_readwrite("coupling_mode", &HFramePlant::coupling_mode)
        .def("all_stable", &HFramePlant::all_stable);

    py::class_<Trajectory>(m, "Trajectory")
        .def(py::init([](Eigen::VectorXd x, Eigen::VectorXd y, double ts) {
                 return Trajectory{std::move(x), std::move(y), ts};
             }),
             py::arg("x"), py::arg("y"), py::arg("sample_period"))
        .def_readwrite("x", &Trajectory::x)
        .def_readwrite("y", &Trajectory::y)
        .def_readwrite("sample_period", &Trajectory::sample_period);

    py::class_<SimulationResult>(m, "SimulationResult")
        .def_readonly("x", &SimulationResult::x)
        .def_readonly("y", &SimulationResult::y)
        .def_readonly("theta", &SimulationResult::theta);
    m.def("simulate_hframe", &simulate_hframe, py::arg("plant"), py::arg("xdm"),
          py::arg("ydm"), py::arg("xd"));
    m.def("racking_accel", &racking_accel, py::arg("y1dd"), py::arg("y2dd"),
          py::arg("Lg"));

    m.def("pseudo_solve", &pseudo_solve, py::arg("A"), py::arg("b"),
          py::arg("tol") = kDefaultSvdTol);

    py::class_<ControlPoints>(m, "ControlPoints")
        .def_readonly("px", &ControlPoints::px)
        .def_readonly("py", &ControlPoints::py);

    py::class_<StandardSolveResult>(m, "StandardSolveResult")
        .def_readonly("control_points", &StandardSolveResult::control_points)
        .def_readonly("command", &StandardSolveResult::command)
        .def_readonly("predicted", &StandardSolveResult::predicted)
        .def_readonly("residual_rms", &StandardSolveResult::residual_rms)
        .def_readonly("solve_seconds", &StandardSolveResult::solve_seconds);

    py::class_<CompensationResult>(m, "CompensationResult")
        .def_readonly("control_points", &CompensationResult::control_points)
        .def_readonly("xdm", &CompensationResult::xdm)
        .def_readonly("ydm", &CompensationResult::ydm)
        .def_readonly("residual_rms_x", &CompensationResult::residual_rms_x)
        .def_readonly("residual_rms_y", &CompensationResult::residual_rms_y)
        .def_readonly("solve_seconds", &CompensationResult::solve_seconds);

    m.def("solve_standard", &solve_standard, py::arg("tf"), py::arg("rd"),
          py::arg("basis"), py::arg("tol") = kDefaultSvdTol);
    m.def("solve_coupled_lpv", &solve_coupled_lpv, py::arg("plant"), py::arg("xd"),
          py::arg("yd"), py::arg("basis_x"), py::arg("basis_y"),
          py::arg("tol") = kDefaultSvdTol);
    m.def("solve_decoupled_lpv", &solve_decoupled_lpv, py::arg("plant"), py::arg("xd"),
          py::arg("yd"), py::arg("basis_x"), py::arg("basis_y"),
          py::arg("tol") = kDefaultSvdTol);

    py::class_<ExactInverseResult>(m, "ExactInverseResult")
        .def_readonly("xdm", &ExactInverseResult::xdm)
        .def_readonly("ydm", &ExactInverseResult::ydm);
    m.def("exact_inverse_reference", &exact_inverse_reference, py::arg("plant"),
          py::arg("xd"), py::arg("yd"));

    py::class_<WindowConfig>(m, "WindowConfig")
        .def(py::init<>())
        .def_readwrite("n_up", &WindowConfig::n_up)
        .def_readwrite("n_c", &WindowConfig::n_c)
        .def_readwrite("l_c", &WindowConfig::l_c)
        .def_readwrite("l", &WindowConfig::l)
        .def_readwrite("m", &WindowConfig::m)
        .def_readwrite("fir_len", &WindowConfig::fir_len)
        .def_readwrite("svd_tol", &WindowConfig::svd_tol)
        .def("validate", &WindowConfig::validate);

    py::class_<TruncatedImpulse>(m, "TruncatedImpulse")
        .def_readonly("taps", &TruncatedImpulse::taps)
        .def_readonly("discarded_fraction", &TruncatedImpulse::discarded_fraction);
    m.def("truncate_impulse", &truncate_impulse, py::arg("tf"), py::arg("fir_len"));
    m.def("default_fir_len", &default_fir_len, py::arg("tf"),
          py::arg("tail_fraction") = 1e-4);

    py::class_<LpfbsRunResult>(m, "LpfbsRunResult")
        .def_readonly("command", &LpfbsRunResult::command)
        .def_readonly("batches_solved", &LpfbsRunResult::batches_solved);
    py::class_<LpvLpfbsRunResult>(m, "LpvLpfbsRunResult")
        .def_readonly("xdm", &LpvLpfbsRunResult::xdm)
        .def_readonly("ydm", &LpvLpfbsRunResult::ydm)
        .def_readonly("batches_solved", &LpvLpfbsRunResult::batches_solved);
    m.def("lpfbs_standard", &lpfbs_standard, py::arg("tf"), py::arg("ref"),
          py::arg("cfg"));
    m.def("lpfbs_coupled", &lpfbs_coupled, py::arg("plant"), py::arg("xd"),
          py::arg("yd"), py::arg("cfg"));
    m.def("lpfbs_decoupled", &lpfbs_decoupled, py::arg("plant"), py::arg("xd"),
          py::arg("yd"), py::arg("cfg"));

    py::class_<MotionLimits>(m, "MotionLimits")
        .def(py::init([](double v, double a, double j) {
                 return MotionLimits{v, a, j};
             }),
             py::arg("vmax"), py::arg("amax"), py::arg("jmax"))
        .def_readwrite("vmax", &MotionLimits::vmax)
        .def_readwrite("amax", &MotionLimits::amax)
        .def_readwrite("jmax", &MotionLimits::jmax);

    py::class_<PathSpec>(m, "PathSpec")
        .def(py::init<>())
        .def_readwrite("waypoints", &PathSpec::waypoints)
        .def_readwrite("closed", &PathSpec::closed);

    m.def("jerk_limited_profile", &jerk_limited_profile, py::arg("distance"),
          py::arg("limits"), py::arg("Ts"));
    m.def("rectangle_path", &rectangle_path, py::arg("length"), py::arg("width"));
    m.def("sample_trajectory", &sample_trajectory, py::arg("path"), py::arg("limits"),
          py::arg("Ts"));
    m.def("synthetic_plant", &synthetic_plant, py::arg("resonance_x_hz"),
          py::arg("resonance_y_hz"), py::arg("resonance_rack_hz"), py::arg("damping"),
          py::arg("rack_gain"), py::arg("Ts"),
          py::arg("mode") = CouplingMode::nonlinear);

    py::class_<ErrorReport>(m, "ErrorReport")
        .def_readonly("tracking_x", &ErrorReport::tracking_x)
        .def_readonly("tracking_y", &ErrorReport::tracking_y)
        .def_readonly("contour", &ErrorReport::contour)
        .def_readonly("arc_length", &ErrorReport::arc_length)
        .def_readonly("rms_tracking_x", &ErrorReport::rms_tracking_x)
        .def_readonly("rms_tracking_y", &ErrorReport::rms_tracking_y)
        .def_readonly("rms_contour", &ErrorReport::rms_contour);

    m.def("rms", &rms, py::arg("v"));
    m.def("tracking_error", &tracking_error, py::arg("reference"), py::arg("output"));
    m.def("contour_error", &contour_error, py::arg("path"), py::arg("output"));
    m.def("evaluate_errors", &evaluate_errors, py::arg("path"), py::arg("reference"),
          py::arg("output"));

    py::class_<BenchmarkRow>(m, "BenchmarkRow")
        .def_readonly("n", &BenchmarkRow::n)
        .def_readonly("rms_contour_coupled", &BenchmarkRow::rms_contour_coupled)
        .def_readonly("rms_contour_decoupled", &BenchmarkRow::rms_contour_decoupled)
        .def_readonly("time_coupled", &BenchmarkRow::time_coupled)
        .def_readonly("time_decoupled", &BenchmarkRow::time_decoupled)
        .def_readonly("skipped", &BenchmarkRow::skipped);
    m.def("benchmark_sweep", &benchmark_sweep, py::arg("plant"), py::arg("trajectory"),
          py::arg("path"), py::arg("n_fractions"), py::arg("m"), py::arg("repeats"));

    py::class_<PlantStabilityReport>(m, "PlantStabilityReport")
        .def_readonly("poles_gxx", &PlantStabilityReport::poles_gxx)
        .def_readonly("poles_gyy", &PlantStabilityReport::poles_gyy)
        .def_readonly("poles_gxtheta", &PlantStabilityReport::poles_gxtheta)
        .def_readonly("all_stable", &PlantStabilityReport::all_stable)
        .def("summary", &PlantStabilityReport::summary);

    py::class_<LoadedPlant>(m, "LoadedPlant")
        .def_readonly("plant", &LoadedPlant::plant)
        .def_readonly("stability", &LoadedPlant::stability)
        .def_readonly("synthetic", &LoadedPlant::synthetic);
    m.def("load_plant_config", &load_plant_config, py::arg("path"),
          py::arg("mode") = CouplingMode::nonlinear);
}
