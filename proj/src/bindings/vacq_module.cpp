#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vacq/analysis.hpp"
#include "vacq/errors.hpp"
#include "vacq/model.hpp"
#include "vacq/oracles.hpp"
#include "vacq/qbd.hpp"
#include "vacq/stability.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Matrix-analytic solver for multi-phase working-vacation queues";

  py::register_exception<vacq::UnstableError>(m, "UnstableError");
  py::register_exception<vacq::NonConvergenceError>(m, "NonConvergenceError");
  py::register_exception<vacq::RankDeficiencyError>(m, "RankDeficiencyError");
  py::register_exception<vacq::NegativeMassError>(m, "NegativeMassError");
  py::register_exception<vacq::IllConditionedError>(m, "IllConditionedError");

  py::class_<vacq::StateLabel>(m, "StateLabel")
      .def(py::init<int, int>(), py::arg("level"), py::arg("phase"))
      .def_readwrite("level", &vacq::StateLabel::level)
      .def_readwrite("phase", &vacq::StateLabel::phase)
      .def("__repr__",
           [](const vacq::StateLabel& s) {
             return "(" + std::to_string(s.level) + "," + std::to_string(s.phase) + ")";
           })
      .def("__eq__", [](const vacq::StateLabel& a, const vacq::StateLabel& b) { return a == b; });

  py::class_<vacq::VacationModel>(m, "VacationModel")
      .def(py::init<double, double, std::vector<double>>(), py::arg("arrival_rate"),
           py::arg("base_rate"), py::arg("decay"))
      .def_static("four_phase", &vacq::VacationModel::four_phase, py::arg("arrival_rate"),
                  py::arg("base_rate"), py::arg("a"), py::arg("b"))
      .def_static("five_phase", &vacq::VacationModel::five_phase, py::arg("arrival_rate"),
                  py::arg("base_rate"), py::arg("a"), py::arg("b"), py::arg("c"))
      .def_property_readonly("arrival_rate", &vacq::VacationModel::arrival_rate)
      .def_property_readonly("base_rate", &vacq::VacationModel::base_rate)
      .def_property_readonly("decay", &vacq::VacationModel::decay)
      .def_property_readonly("phase_count", &vacq::VacationModel::phase_count)
      .def("service_rate", &vacq::VacationModel::service_rate, py::arg("phase"))
      .def("scaled", &vacq::VacationModel::scaled, py::arg("t"));

  py::class_<vacq::BlockSet>(m, "BlockSet")
      .def_readonly("a00", &vacq::BlockSet::a00)
      .def_readonly("a01", &vacq::BlockSet::a01)
      .def_readonly("a02", &vacq::BlockSet::a02)
      .def_readonly("a10", &vacq::BlockSet::a10)
      .def_readonly("a11", &vacq::BlockSet::a11)
      .def_readonly("big_a0", &vacq::BlockSet::big_a0)
      .def_readonly("big_a1", &vacq::BlockSet::big_a1)
      .def_readonly("big_a2", &vacq::BlockSet::big_a2)
      .def_readonly("b11", &vacq::BlockSet::b11)
      .def_readonly("b12", &vacq::BlockSet::b12)
      .def_readonly("b21", &vacq::BlockSet::b21)
      .def_readonly("boundary_states", &vacq::BlockSet::boundary_states)
      .def_readonly("repeating_state_offsets", &vacq::BlockSet::repeating_state_offsets)
      .def_readonly("phase_count", &vacq::BlockSet::phase_count);

  m.def("build_blocks", &vacq::build_blocks, py::arg("model"));
  m.def("transient_states", &vacq::transient_states, py::arg("model"));

  py::class_<vacq::StabilityProfile>(m, "StabilityProfile")
      .def_readonly("total_rates", &vacq::StabilityProfile::total_rates)
      .def_readonly("sojourn_weights", &vacq::StabilityProfile::sojourn_weights)
      .def_readonly("mean_service_rate", &vacq::StabilityProfile::mean_service_rate)
      .def_readonly("stable", &vacq::StabilityProfile::stable);

  m.def("stability_profile", &vacq::stability_profile, py::arg("model"), py::arg("lambda_"));
  m.def("stability_polynomial_5ph", &vacq::stability_polynomial_5ph, py::arg("model"),
        py::arg("lambda_"));
  m.def("mean_rate_gap_4ph", &vacq::mean_rate_gap_4ph, py::arg("a"), py::arg("b"), py::arg("mu"),
        py::arg("lambda_"));
  m.def("critical_arrival_rate", &vacq::critical_arrival_rate, py::arg("model"));

  py::enum_<vacq::CubicKind>(m, "CubicKind")
      .value("Quadratic", vacq::CubicKind::Quadratic)
      .value("NegativeCubic", vacq::CubicKind::NegativeCubic)
      .value("PositiveCubic", vacq::CubicKind::PositiveCubic);

  py::class_<vacq::RateGapAnalysis>(m, "RateGapAnalysis")
      .def_readonly("f_coefficients", &vacq::RateGapAnalysis::f_coefficients)
      .def_readonly("discriminant_a", &vacq::RateGapAnalysis::discriminant_a)
      .def_readonly("kind", &vacq::RateGapAnalysis::kind)
      .def_readonly("roots", &vacq::RateGapAnalysis::roots)
      .def("f", &vacq::RateGapAnalysis::f, py::arg("lambda_"));

  m.def("analyze_rate_gap_4ph", &vacq::analyze_rate_gap_4ph, py::arg("a"), py::arg("b"),
        py::arg("mu"));

  py::class_<vacq::RateMatrixSolution>(m, "RateMatrixSolution")
      .def_readonly("r", &vacq::RateMatrixSolution::r)
      .def_readonly("residual", &vacq::RateMatrixSolution::residual)
      .def_readonly("iterations", &vacq::RateMatrixSolution::iterations)
      .def_readonly("spectral_radius", &vacq::RateMatrixSolution::spectral_radius);

  m.def(
      "solve_rate_matrix",
      [](const vacq::BlockSet& b, double tol, int max_iter) {
        return vacq::solve_rate_matrix(b, tol, max_iter);
      },
      py::arg("blocks"), py::arg("tol") = 1e-14, py::arg("max_iter") = 100000);

  py::class_<vacq::StationarySolution>(m, "StationarySolution")
      .def_readonly("pi0", &vacq::StationarySolution::pi0)
      .def_readonly("pi1", &vacq::StationarySolution::pi1)
      .def_readonly("rate_matrix", &vacq::StationarySolution::rate_matrix)
      .def_readonly("boundary_labels", &vacq::StationarySolution::boundary_labels)
      .def("pi_block", &vacq::StationarySolution::pi_block, py::arg("j"));

  m.def("solve_boundary", &vacq::solve_boundary, py::arg("blocks"), py::arg("rate_matrix"));
  m.def("expected_customers_block_indexed", &vacq::expected_customers_block_indexed,
        py::arg("solution"));
  m.def("expected_customers_exact", &vacq::expected_customers_exact, py::arg("solution"));
  m.def("spectral_radius", &vacq::spectral_radius, py::arg("matrix"), py::arg("tol") = 1e-12,
        py::arg("max_iter") = 10000);

  py::class_<vacq::TruncatedSolveResult>(m, "TruncatedSolveResult")
      .def_readonly("states", &vacq::TruncatedSolveResult::states)
      .def_readonly("probabilities", &vacq::TruncatedSolveResult::probabilities)
      .def_readonly("tail_mass", &vacq::TruncatedSolveResult::tail_mass)
      .def_readonly("expected_customers", &vacq::TruncatedSolveResult::expected_customers)
      .def_readonly("reliable", &vacq::TruncatedSolveResult::reliable)
      .def("probability_of", &vacq::TruncatedSolveResult::probability_of, py::arg("state"));

  m.def("truncated_direct_solve", &vacq::truncated_direct_solve, py::arg("model"),
        py::arg("max_level"));

  py::class_<vacq::SimulationEstimate>(m, "SimulationEstimate")
      .def_readonly("mean_customers", &vacq::SimulationEstimate::mean_customers)
      .def_readonly("std_error", &vacq::SimulationEstimate::std_error)
      .def_readonly("horizon", &vacq::SimulationEstimate::horizon)
      .def_readonly("warmup", &vacq::SimulationEstimate::warmup)
      .def_readonly("seed", &vacq::SimulationEstimate::seed)
      .def_readonly("replications", &vacq::SimulationEstimate::replications)
      .def_readonly("drift_warning", &vacq::SimulationEstimate::drift_warning);

  m.def("simulate", &vacq::simulate, py::arg("model"), py::arg("horizon"), py::arg("warmup"),
        py::arg("seed"), py::arg("replications"));

  py::enum_<vacq::PointStatus>(m, "PointStatus")
      .value("Ok", vacq::PointStatus::Ok)
      .value("Unstable", vacq::PointStatus::Unstable)
      .value("NearCritical", vacq::PointStatus::NearCritical);

  py::class_<vacq::SweepPoint>(m, "SweepPoint")
      .def_readonly("lambda_", &vacq::SweepPoint::lambda)
      .def_readonly("mu", &vacq::SweepPoint::mu)
      .def_readonly("rho", &vacq::SweepPoint::rho)
      .def_readonly("el_vacation", &vacq::SweepPoint::el_vacation)
      .def_readonly("el_mm1", &vacq::SweepPoint::el_mm1)
      .def_readonly("status_vacation", &vacq::SweepPoint::status_vacation)
      .def_readonly("status_mm1", &vacq::SweepPoint::status_mm1);

  py::class_<vacq::CrossoverResult>(m, "CrossoverResult")
      .def_readonly("k1", &vacq::CrossoverResult::k1)
      .def_readonly("k1_refined", &vacq::CrossoverResult::k1_refined)
      .def_readonly("k1_exact", &vacq::CrossoverResult::k1_exact)
      .def_readonly("k2", &vacq::CrossoverResult::k2)
      .def_readonly("grid_step", &vacq::CrossoverResult::grid_step)
      .def_readonly("bracket_rho_low", &vacq::CrossoverResult::bracket_rho_low)
      .def_readonly("bracket_diff_low", &vacq::CrossoverResult::bracket_diff_low)
      .def_readonly("bracket_rho_high", &vacq::CrossoverResult::bracket_rho_high)
      .def_readonly("bracket_diff_high", &vacq::CrossoverResult::bracket_diff_high);

  m.def("mm1_expected_customers", &vacq::mm1_expected_customers, py::arg("lambda_"),
        py::arg("service_rate"));
  m.def("find_crossover_k1", &vacq::find_crossover_k1, py::arg("a"), py::arg("b"), py::arg("c"),
        py::arg("mu"), py::arg("grid_step") = 1e-4);
  m.def("sweep_rho", &vacq::sweep_rho, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("mu"),
        py::arg("rho_grid"));
  m.def("sweep_surface", &vacq::sweep_surface, py::arg("a"), py::arg("b"), py::arg("c"),
        py::arg("lambda_grid"), py::arg("mu_grid"));
  m.def("make_grid", &vacq::make_grid, py::arg("start"), py::arg("stop"), py::arg("step"));
}
