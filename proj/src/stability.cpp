#include "vacq/stability.hpp"

#include <cmath>
#include <stdexcept>

namespace vacq {

StabilityProfile stability_profile(const VacationModel& model, double lambda) {
  if (!(std::isfinite(lambda) && lambda > 0.0)) {
    throw std::invalid_argument("stability_profile requires lambda > 0");
  }
  const int m = model.phase_count();
  StabilityProfile p;
  p.total_rates.resize(m);
  for (int i = 1; i < m; ++i) p.total_rates(i - 1) = lambda + model.service_rate(i);
  p.total_rates(m - 1) = lambda / 2;
  Eigen::VectorXd inv = p.total_rates.cwiseInverse();
  p.sojourn_weights = inv / inv.sum();
  double g = 0.0;
  for (int i = 1; i < m; ++i) g += p.sojourn_weights(i - 1) * model.service_rate(i);
  p.mean_service_rate = g;
  p.stable = lambda < g;
  return p;
}

double stability_polynomial_5ph(const VacationModel& model, double lambda) {
  if (model.phase_count() != 5) {
    throw std::invalid_argument("stability polynomial is defined for 5-phase models");
  }
  if (!(std::isfinite(lambda) && lambda >= 0.0)) {
    throw std::invalid_argument("lambda must be finite and >= 0");
  }
  const double a = model.decay()[1];
  const double b = model.decay()[2];
  const double c = model.decay()[3];
  const double k = lambda / model.base_rate();
  const double k2 = k * k;
  return k2 * (a * b + a * c + b * c + a + b + c) + 2 * k2 * k * (a + b + c + 1) +
         3 * k2 * k2 - a * b * c;
}

double mean_rate_gap_4ph(double a, double b, double mu, double lambda) {
  const VacationModel model(lambda, mu, {1.0, a, b});
  return stability_profile(model, lambda).mean_service_rate - b * mu;
}

double RateGapAnalysis::f(double lambda) const {
  const auto& c = f_coefficients;
  return ((c[3] * lambda + c[2]) * lambda + c[1]) * lambda + c[0];
}

RateGapAnalysis analyze_rate_gap_4ph(double a, double b, double mu) {
  if (!(0.0 < b && b < a && a < 1.0)) {
    throw std::invalid_argument("need 0 < b < a < 1");
  }
  if (!(std::isfinite(mu) && mu > 0.0)) {
    throw std::invalid_argument("mu must be finite and > 0");
  }
  RateGapAnalysis r;
  const double c3 = 4 * b - a - 1;
  r.f_coefficients = {2 * a * b * b * mu * mu * mu, 3 * mu * mu * b * b * (a + 1),
                      2 * mu * (a * b + b - a + 2 * b * b), c3};
  const double radicand =
      9 * a * a * b * b - 4 * a * a * b - 14 * a * b * b + 4 * a * a - 4 * a * b + 9 * b * b;
  r.discriminant_a = radicand >= 0.0 ? std::sqrt(radicand) : std::nan("");

  constexpr double kKindTol = 1e-12;  // measure-zero boundary, affects labels only
  if (std::abs(c3) <= kKindTol) {
    r.kind = CubicKind::Quadratic;
  } else {
    r.kind = c3 < 0 ? CubicKind::NegativeCubic : CubicKind::PositiveCubic;
  }

  // -b*mu is always a root; the rest come from the deflated quadratic
  //   c3 x^2 + p x + q, evaluated in cancellation-safe form.
  const double p = mu * (3 * a * b - 2 * a + 3 * b);
  const double q = 2 * a * b * mu * mu;
  r.roots.push_back(-b * mu);
  if (r.kind == CubicKind::Quadratic) {
    r.roots.push_back(-q / p);
  } else {
    const double disc = p * p - 4 * c3 * q;
    if (disc >= 0.0) {
      const double t = -(p + std::copysign(std::sqrt(disc), p)) / 2;
      r.roots.push_back(t / c3);
      r.roots.push_back(q / t);
    }
  }
  std::sort(r.roots.begin(), r.roots.end());
  return r;
}

std::optional<double> critical_arrival_rate(const VacationModel& model) {
  const auto drift = [&](double lambda) {
    return stability_profile(model, lambda).mean_service_rate - lambda;
  };
  double lo = model.base_rate() * 1e-12;
  if (drift(lo) <= 0.0) return std::nullopt;  // no stable region (3 phases)
  double hi = model.base_rate();
  while (drift(hi) > 0.0) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (drift(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace vacq
