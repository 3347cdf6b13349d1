#ifndef VACQ_ANALYSIS_HPP
#define VACQ_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

namespace vacq {

enum class PointStatus { Ok, Unstable, NearCritical };

std::string to_string(PointStatus s);

/// One grid point of a load sweep or a (lambda, mu) surface. Numeric values
/// are absent exactly when the corresponding status is not Ok. The
/// fatigue-queue value is the block-indexed estimator (the one the
/// crossover threshold is defined against).
struct SweepPoint {
  double lambda = 0.0;
  double mu = 0.0;
  double rho = 0.0;
  std::optional<double> el_vacation;
  std::optional<double> el_mm1;
  PointStatus status_vacation = PointStatus::Ok;
  PointStatus status_mm1 = PointStatus::Ok;
};

/// M/M/1 mean number in system, lambda / (service_rate - lambda).
/// Throws UnstableError when lambda >= service_rate.
double mm1_expected_customers(double lambda, double service_rate);

/// Location of the load interval (k1, k2) on which the 5-phase system beats
/// the M/M/1 baseline with rate c*mu. k1 comes from the grid scan with
/// sign-change interpolation (d_i / (d_i - d_{i+1}) within the bracketing
/// cell); k1_refined bisects the block-indexed difference to |d| < 1e-8;
/// k1_exact does the same with the exact estimator. k2 = c is the baseline's
/// own stability boundary.
struct CrossoverResult {
  double k1 = 0.0;
  double k1_refined = 0.0;
  std::optional<double> k1_exact;
  double k2 = 0.0;
  double grid_step = 0.0;
  double bracket_rho_low = 0.0;
  double bracket_diff_low = 0.0;
  double bracket_rho_high = 0.0;
  double bracket_diff_high = 0.0;
};

/// Scans rho over (0, c) with the given step and locates the first sign
/// change of el_vacation - el_mm1 across the stable range. Returns nullopt
/// when the difference keeps one sign there (reported, not fatal).
/// Requires 0 < c < b < a < 1, grid_step > 0.
std::optional<CrossoverResult> find_crossover_k1(double a, double b, double c, double mu,
                                                 double grid_step);

/// One record per grid load; unstable points are marked, never extrapolated.
/// Points with spectral radius above 0.999 are skipped as near-critical.
std::vector<SweepPoint> sweep_rho(double a, double b, double c, double mu,
                                  const std::vector<double>& rho_grid);

/// Product-grid sweep over (lambda, mu), lambda-major order.
std::vector<SweepPoint> sweep_surface(double a, double b, double c,
                                      const std::vector<double>& lambda_grid,
                                      const std::vector<double>& mu_grid);

/// Evenly spaced grid {start, start+step, ...} up to stop inclusive
/// (within half a step).
std::vector<double> make_grid(double start, double stop, double step);

}  // namespace vacq

#endif
