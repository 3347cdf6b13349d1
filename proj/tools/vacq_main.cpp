// vacq: stationary analysis of multi-phase working-vacation queues.
//
// Exit codes: 0 success, 2 invalid arguments, 3 instability where stability
// is required, 4 verification failure.

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vacq/analysis.hpp"
#include "vacq/errors.hpp"
#include "vacq/model.hpp"
#include "vacq/oracles.hpp"
#include "vacq/qbd.hpp"
#include "vacq/reporting.hpp"
#include "vacq/rng.hpp"
#include "vacq/stability.hpp"

// tools/verify.cpp
int run_verify(int samples, std::uint64_t seed, double tol, int max_iter);

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitUnstable = 3;
constexpr int kExitVerification = 4;

struct ModelOptions {
  double lambda = 0.0;
  double mu = 100.0;
  double a = 0.99;
  double b = 0.98;
  double c = 0.1;
  std::vector<double> decay;  // overrides a/b/c when given
  int phases = 0;             // consistency check only

  vacq::VacationModel build() const {
    std::vector<double> d = decay;
    if (d.empty()) d = {1.0, a, b, c};
    if (phases > 0 && phases != static_cast<int>(d.size()) + 1) {
      throw std::invalid_argument("--phases disagrees with the decay list length");
    }
    return vacq::VacationModel(lambda, mu, d);
  }
};

struct SolverOptions {
  double tol = 1e-14;
  int max_iter = 100000;
};

void add_model_flags(CLI::App* cmd, ModelOptions* opt, bool need_lambda) {
  auto* lam = cmd->add_option("--lambda", opt->lambda, "Arrival rate");
  if (need_lambda) lam->required();
  cmd->add_option("--mu", opt->mu, "Base (fresh-server) service rate")->capture_default_str();
  cmd->add_option("--a", opt->a, "Second-phase decay factor")->capture_default_str();
  cmd->add_option("--b", opt->b, "Third-phase decay factor")->capture_default_str();
  cmd->add_option("--c", opt->c, "Fourth-phase decay factor (5-phase model)")
      ->capture_default_str();
  cmd->add_option("--decay", opt->decay,
                  "Full decay list starting at 1 (overrides --a/--b/--c)")
      ->delimiter(',');
  cmd->add_option("--phases", opt->phases, "Expected phase count (consistency check)");
}

void add_solver_flags(CLI::App* cmd, SolverOptions* opt) {
  cmd->add_option("--tol", opt->tol, "Rate-matrix iteration tolerance")->capture_default_str();
  cmd->add_option("--max-iter", opt->max_iter, "Rate-matrix iteration cap")
      ->capture_default_str();
}

std::unique_ptr<std::ostream> open_output(const std::string& path, std::ostream*& os) {
  if (path.empty() || path == "-") {
    os = &std::cout;
    return nullptr;
  }
  auto file = std::make_unique<std::ofstream>(path);
  if (!*file) throw std::invalid_argument("cannot open output file: " + path);
  os = file.get();
  return file;
}

std::string yes_no(bool v) { return v ? "yes" : "no"; }

int run_analyze(const ModelOptions& mopt, const SolverOptions& sopt) {
  const vacq::VacationModel model = mopt.build();
  if (model.arrival_rate() <= 0.0) {
    throw std::invalid_argument("analyze requires --lambda > 0");
  }
  const auto profile = vacq::stability_profile(model, model.arrival_rate());
  std::cout << "lambda              " << vacq::format_numeric(model.arrival_rate()) << "\n"
            << "mu                  " << vacq::format_numeric(model.base_rate()) << "\n"
            << "phases              " << model.phase_count() << "\n"
            << "mean_service_rate   " << vacq::format_numeric(profile.mean_service_rate) << "\n"
            << "stable_drift        " << yes_no(profile.stable) << "\n";
  if (model.phase_count() == 5) {
    const double p = vacq::stability_polynomial_5ph(model, model.arrival_rate());
    std::cout << "stability_polynomial " << vacq::format_numeric(p) << "\n"
              << "stable_polynomial   " << yes_no(p < 0.0) << "\n";
  }
  const double mm1_rate = model.decay().back() * model.base_rate();
  std::cout << "mm1_service_rate    " << vacq::format_numeric(mm1_rate) << "\n";
  if (model.arrival_rate() < mm1_rate) {
    std::cout << "el_mm1              "
              << vacq::format_numeric(
                     vacq::mm1_expected_customers(model.arrival_rate(), mm1_rate))
              << "\n";
  } else {
    std::cout << "el_mm1              unstable\n";
  }
  if (!profile.stable) {
    std::cout << "el_block_indexed    unstable\n"
              << "el_exact            unstable\n";
    std::cerr << "model is unstable at lambda = " << model.arrival_rate() << "\n";
    return kExitUnstable;
  }
  const vacq::BlockSet blocks = vacq::build_blocks(model);
  const auto r = vacq::solve_rate_matrix(blocks, sopt.tol, sopt.max_iter);
  const auto sol = vacq::solve_boundary(blocks, r);
  std::cout << "spectral_radius_R   " << vacq::format_numeric(r.spectral_radius) << "\n"
            << "r_iterations        " << r.iterations << "\n"
            << "r_residual          " << vacq::format_numeric(r.residual) << "\n"
            << "el_block_indexed    "
            << vacq::format_numeric(vacq::expected_customers_block_indexed(sol)) << "\n"
            << "el_exact            " << vacq::format_numeric(vacq::expected_customers_exact(sol))
            << "\n";
  return kExitOk;
}

int run_stability(const ModelOptions& mopt) {
  const vacq::VacationModel model = mopt.build();
  if (model.arrival_rate() <= 0.0) {
    throw std::invalid_argument("stability requires --lambda > 0");
  }
  const auto profile = vacq::stability_profile(model, model.arrival_rate());
  std::cout << "total_rates        ";
  for (Eigen::Index i = 0; i < profile.total_rates.size(); ++i) {
    std::cout << (i ? "," : "") << vacq::format_numeric(profile.total_rates(i));
  }
  std::cout << "\nsojourn_weights    ";
  for (Eigen::Index i = 0; i < profile.sojourn_weights.size(); ++i) {
    std::cout << (i ? "," : "") << vacq::format_numeric(profile.sojourn_weights(i));
  }
  std::cout << "\nmean_service_rate  " << vacq::format_numeric(profile.mean_service_rate)
            << "\nstable             " << yes_no(profile.stable) << "\n";
  if (const auto crit = vacq::critical_arrival_rate(model)) {
    std::cout << "critical_lambda    " << vacq::format_numeric(*crit) << "\n";
  } else {
    std::cout << "critical_lambda    none (no stable region)\n";
  }
  if (model.phase_count() == 5) {
    std::cout << "stability_polynomial "
              << vacq::format_numeric(
                     vacq::stability_polynomial_5ph(model, model.arrival_rate()))
              << "\n";
  }
  if (model.phase_count() >= 4) {
    const double a = model.decay()[1];
    const double b = model.decay()[2];
    const auto gap = vacq::analyze_rate_gap_4ph(a, b, model.base_rate());
    const char* kind = gap.kind == vacq::CubicKind::Quadratic ? "quadratic"
                       : gap.kind == vacq::CubicKind::NegativeCubic ? "negative-cubic"
                                                                    : "positive-cubic";
    std::cout << "rate_gap_kind      " << kind << "\nrate_gap_f         ";
    for (std::size_t i = 0; i < gap.f_coefficients.size(); ++i) {
      std::cout << (i ? "," : "") << vacq::format_numeric(gap.f_coefficients[i]);
    }
    std::cout << "\nrate_gap_A         " << vacq::format_numeric(gap.discriminant_a)
              << "\nrate_gap_roots     ";
    for (std::size_t i = 0; i < gap.roots.size(); ++i) {
      std::cout << (i ? "," : "") << vacq::format_numeric(gap.roots[i]);
    }
    std::cout << "\nrate_gap_value     "
              << vacq::format_numeric(
                     vacq::mean_rate_gap_4ph(a, b, model.base_rate(), model.arrival_rate()))
              << "\n";
  } else {
    std::cout << "rate_gap_report    requires >= 4 phases\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stationary analysis of multi-phase working-vacation queues"};
  app.require_subcommand(1);

  ModelOptions mopt;
  SolverOptions sopt;
  std::string output;
  std::string format_name = "csv";

  auto* analyze = app.add_subcommand("analyze", "Stability, R matrix and E[L] for one model");
  add_model_flags(analyze, &mopt, true);
  add_solver_flags(analyze, &sopt);

  auto* stability = app.add_subcommand("stability", "Stability profile and rate-gap report");
  add_model_flags(stability, &mopt, true);

  auto* scan = app.add_subcommand("scan", "Load sweep: E[L] of both systems vs rho");
  double rho_min = 1e-4, rho_max = 0.15, rho_step = 1e-4;
  add_model_flags(scan, &mopt, false);
  scan->add_option("--rho-min", rho_min, "First load")->capture_default_str();
  scan->add_option("--rho-max", rho_max, "Last load (inclusive)")->capture_default_str();
  scan->add_option("--rho-step", rho_step, "Grid step")->capture_default_str();
  scan->add_option("--output,-o", output, "Output path (default stdout)");
  scan->add_option("--format", format_name, "csv or jsonl")->capture_default_str();

  auto* surface = app.add_subcommand("surface", "E[L] of both systems over a (lambda,mu) grid");
  double lam_min = 1, lam_max = 200, lam_step = 1;
  double mu_min = 1, mu_max = 200, mu_step = 1;
  add_model_flags(surface, &mopt, false);
  surface->add_option("--lambda-min", lam_min)->capture_default_str();
  surface->add_option("--lambda-max", lam_max)->capture_default_str();
  surface->add_option("--lambda-step", lam_step)->capture_default_str();
  surface->add_option("--mu-min", mu_min)->capture_default_str();
  surface->add_option("--mu-max", mu_max)->capture_default_str();
  surface->add_option("--mu-step", mu_step)->capture_default_str();
  surface->add_option("--output,-o", output, "Output path (default stdout)");
  surface->add_option("--format", format_name, "csv or jsonl")->capture_default_str();

  auto* crossover =
      app.add_subcommand("crossover", "Load k1 where the two systems have equal E[L]");
  double grid_step = 1e-4;
  add_model_flags(crossover, &mopt, false);
  crossover->add_option("--grid-step", grid_step, "Scan step over (0, c)")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Seeded event simulation estimate of E[L]");
  double horizon = 0.0, warmup = -1.0;
  std::uint64_t seed = 1;
  int replications = 20;
  add_model_flags(simulate, &mopt, true);
  simulate->add_option("--horizon", horizon, "Model-time horizon (default ~1e6 events)");
  simulate->add_option("--warmup", warmup, "Model-time warmup (default horizon/100)");
  simulate->add_option("--seed", seed, "Master seed")->capture_default_str();
  simulate->add_option("--replications", replications, "Independent replications")
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run the seeded invariant suites");
  int samples = 500;
  std::uint64_t vseed = 7;
  verify->add_option("--samples", samples, "Sample count per suite")->capture_default_str();
  verify->add_option("--seed", vseed, "Sampling seed")->capture_default_str();
  add_solver_flags(verify, &sopt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze) return run_analyze(mopt, sopt);
    if (*stability) return run_stability(mopt);

    vacq::OutputFormat format;
    if (format_name == "csv") {
      format = vacq::OutputFormat::Csv;
    } else if (format_name == "jsonl") {
      format = vacq::OutputFormat::JsonLines;
    } else {
      throw std::invalid_argument("--format must be csv or jsonl");
    }

    if (*scan) {
      const vacq::VacationModel model = mopt.build();  // validates the decay triple
      if (model.phase_count() != 5) {
        throw std::invalid_argument("scan compares the 5-phase system against M/M/1");
      }
      const auto d = model.decay();
      const auto points =
          vacq::sweep_rho(d[1], d[2], d[3], model.base_rate(),
                          vacq::make_grid(rho_min, rho_max, rho_step));
      std::ostream* os = nullptr;
      const auto file = open_output(output, os);
      vacq::write_rho_sweep(*os, points, format);
      return kExitOk;
    }
    if (*surface) {
      const vacq::VacationModel probe = mopt.build();
      if (probe.phase_count() != 5) {
        throw std::invalid_argument("surface compares the 5-phase system against M/M/1");
      }
      const auto d = probe.decay();
      const auto points = vacq::sweep_surface(d[1], d[2], d[3],
                                              vacq::make_grid(lam_min, lam_max, lam_step),
                                              vacq::make_grid(mu_min, mu_max, mu_step));
      std::ostream* os = nullptr;
      const auto file = open_output(output, os);
      vacq::write_surface(*os, points, format);
      return kExitOk;
    }
    if (*crossover) {
      const vacq::VacationModel probe = mopt.build();
      if (probe.phase_count() != 5) {
        throw std::invalid_argument("crossover compares the 5-phase system against M/M/1");
      }
      const auto d = probe.decay();
      const auto res = vacq::find_crossover_k1(d[1], d[2], d[3], probe.base_rate(), grid_step);
      if (!res) {
        std::cout << "no crossover: the E[L] difference keeps one sign on the stable range\n";
        return kExitOk;
      }
      std::cout << "k1                 " << vacq::format_numeric(res->k1) << "\n"
                << "k1_refined         " << vacq::format_numeric(res->k1_refined) << "\n";
      if (res->k1_exact) {
        std::cout << "k1_exact           " << vacq::format_numeric(*res->k1_exact) << "\n";
      } else {
        std::cout << "k1_exact           none\n";
      }
      std::cout << "k2                 " << vacq::format_numeric(res->k2) << "\n"
                << "grid_step          " << vacq::format_numeric(res->grid_step) << "\n"
                << "bracket_low        " << vacq::format_numeric(res->bracket_rho_low) << " "
                << vacq::format_numeric(res->bracket_diff_low) << "\n"
                << "bracket_high       " << vacq::format_numeric(res->bracket_rho_high) << " "
                << vacq::format_numeric(res->bracket_diff_high) << "\n";
      return kExitOk;
    }
    if (*simulate) {
      const vacq::VacationModel model = mopt.build();
      if (horizon <= 0.0) {
        // default: about 1e6 expected events at the high-level event rate
        double inv_sum = 0.0;
        for (int i = 1; i <= model.phase_count(); ++i) {
          const double rate = model.total_rate(i);
          if (rate <= 0.0) throw std::invalid_argument("cannot derive a horizon for lambda = 0");
          inv_sum += 1.0 / rate;
        }
        horizon = 1e6 * inv_sum / model.phase_count();
      }
      if (warmup < 0.0) warmup = horizon / 100.0;
      const auto est = vacq::simulate(model, horizon, warmup, seed, replications);
      std::cout << "mean_customers     " << vacq::format_numeric(est.mean_customers) << "\n"
                << "std_error          " << vacq::format_numeric(est.std_error) << "\n"
                << "horizon            " << vacq::format_numeric(est.horizon) << "\n"
                << "warmup             " << vacq::format_numeric(est.warmup) << "\n"
                << "seed               " << est.seed << "\n"
                << "replications       " << est.replications << "\n"
                << "drift_warning      " << yes_no(est.drift_warning) << "\n";
      return kExitOk;
    }
    if (*verify) {
      const int failures = run_verify(samples, vseed, sopt.tol, sopt.max_iter);
      return failures == 0 ? kExitOk : kExitVerification;
    }
  } catch (const vacq::UnstableError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnstable;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
