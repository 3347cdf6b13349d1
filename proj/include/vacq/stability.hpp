#ifndef VACQ_STABILITY_HPP
#define VACQ_STABILITY_HPP

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

#include "vacq/model.hpp"

namespace vacq {

/// Sojourn-weighted mean service rate at large levels.
///
/// v_i = lambda + mu_i for the working phases, v_m = lambda / 2 for the
/// rest phase; w_i is the fraction of time spent in phase i during one
/// fatigue cycle; g_bar = sum w_i mu_i. The chain is positive recurrent
/// iff lambda < g_bar(lambda).
struct StabilityProfile {
  Eigen::VectorXd total_rates;
  Eigen::VectorXd sojourn_weights;
  double mean_service_rate = 0.0;
  bool stable = false;
};

/// Requires lambda > 0 (the rest-phase weight is 2/lambda).
StabilityProfile stability_profile(const VacationModel& model, double lambda);

/// Load polynomial for the 5-phase model, k = lambda / mu:
///   P(k) = k^2(ab+ac+bc+a+b+c) + 2k^3(a+b+c+1) + 3k^4 - abc,
/// with decay (1, a, b, c). Stable iff P(k) < 0. Equivalent to the drift
/// condition lambda < g_bar(lambda); the test suite checks the equivalence
/// on dense grids. Requires phase_count == 5; lambda >= 0.
double stability_polynomial_5ph(const VacationModel& model, double lambda);

/// g_bar(lambda) - b*mu for the 4-phase model with decay (1, a, b): how far
/// the long-run mean service rate falls below the slowest working rate.
/// Negative throughout the stable region for every 0 < b < a < 1.
double mean_rate_gap_4ph(double a, double b, double mu, double lambda);

enum class CubicKind { Quadratic, NegativeCubic, PositiveCubic };

/// Structure of the gap numerator for the 4-phase model.
///
/// mean_rate_gap_4ph(\a,b,mu,lambda) = -mu * f(lambda) / D(lambda) with
/// D > 0 and f cubic in lambda:
///   f = (4b-a-1) x^3 + 2mu(ab+b-a+2b^2) x^2 + 3mu^2 b^2(a+1) x + 2ab^2 mu^3.
/// -b*mu is always a root; the remaining roots come from the deflated
/// quadratic (4b-a-1) x^2 + mu(3ab-2a+3b) x + 2ab mu^2, with discriminant
/// A^2 = mu^2 (9a^2b^2 - 4a^2b - 14ab^2 + 4a^2 - 4ab + 9b^2).
struct RateGapAnalysis {
  std::array<double, 4> f_coefficients{};  // ascending: f0 + f1 x + f2 x^2 + f3 x^3
  double discriminant_a = 0.0;             // A (without the mu factor)
  CubicKind kind = CubicKind::Quadratic;   // sign of 4b - a - 1, tolerance 1e-12
  std::vector<double> roots;               // real roots, ascending

  double f(double lambda) const;           // Horner evaluation
};

RateGapAnalysis analyze_rate_gap_4ph(double a, double b, double mu);

/// Largest stable arrival rate: the unique lambda* with g_bar(lambda*) =
/// lambda*, found by bisection to machine precision. Returns nullopt when
/// no stable region exists (phase_count == 3).
std::optional<double> critical_arrival_rate(const VacationModel& model);

}  // namespace vacq

#endif
