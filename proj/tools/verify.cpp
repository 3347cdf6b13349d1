// Seeded invariant suites behind `vacq verify`: rate-gap sampling,
// polynomial/drift equivalence, and the three-way oracle agreement.

#include <cmath>
#include <cstdint>
#include <iostream>

#include "vacq/analysis.hpp"
#include "vacq/model.hpp"
#include "vacq/oracles.hpp"
#include "vacq/qbd.hpp"
#include "vacq/rng.hpp"
#include "vacq/stability.hpp"

namespace {

struct SuiteResult {
  int checked = 0;
  int failed = 0;
};

void report(const char* name, const SuiteResult& r) {
  std::cout << name << ": " << (r.checked - r.failed) << "/" << r.checked << " passed";
  if (r.failed) std::cout << "  [" << r.failed << " FAILED]";
  std::cout << "\n";
}

// uniform over {0 < b < a < 1}
void sample_pair(vacq::SplitMix64& rng, double& a, double& b) {
  const double x = rng.next_uniform();
  const double y = rng.next_uniform();
  a = std::max(x, y);
  b = std::min(x, y);
  if (b <= 0.0 || a >= 1.0 || a == b) {  // vanishing-probability edge draws
    a = 0.75;
    b = 0.25;
  }
}

SuiteResult rate_gap_suite(int samples, vacq::SplitMix64& rng) {
  SuiteResult res;
  const double mu = 1.0;
  for (int s = 0; s < samples; ++s) {
    double a = 0, b = 0;
    sample_pair(rng, a, b);
    const auto model = vacq::VacationModel::four_phase(1.0, mu, a, b);
    const auto crit = vacq::critical_arrival_rate(model);
    if (!crit) {
      ++res.checked;
      ++res.failed;  // a 4-phase model always has a stable region
      continue;
    }
    const auto gap_poly = vacq::analyze_rate_gap_4ph(a, b, mu);
    for (int k = 1; k <= 20; ++k) {
      const double lambda = *crit * k / 21.0;
      const double gap = vacq::mean_rate_gap_4ph(a, b, mu, lambda);
      const double f = gap_poly.f(lambda);
      ++res.checked;
      if (!(gap < 0.0)) {
        ++res.failed;
        continue;
      }
      if (std::abs(f) > 1e-12 && !((gap < 0.0) == (f > 0.0))) ++res.failed;
    }
  }
  return res;
}

SuiteResult polynomial_equivalence_suite(int samples, vacq::SplitMix64& rng) {
  SuiteResult res;
  for (int s = 0; s < samples; ++s) {
    double u[3] = {rng.next_uniform(), rng.next_uniform(), rng.next_uniform()};
    std::sort(u, u + 3);
    const double c = u[0], b = u[1], a = u[2];
    if (!(0.0 < c && c < b && b < a && a < 1.0)) continue;
    const double mu = std::exp(std::log(0.1) + rng.next_uniform() * std::log(1e4 / 0.1));
    const double lambda = rng.next_uniform() * 2.0 * mu + 1e-12;
    const auto model = vacq::VacationModel::five_phase(lambda, mu, a, b, c);
    const double p = vacq::stability_polynomial_5ph(model, lambda);
    if (std::abs(p) <= 1e-10) continue;
    const auto profile = vacq::stability_profile(model, lambda);
    ++res.checked;
    if ((p < 0.0) != (lambda < profile.mean_service_rate)) ++res.failed;
  }
  return res;
}

SuiteResult oracle_triangle_suite(vacq::SplitMix64& rng, double tol, int max_iter) {
  SuiteResult res;
  const double loads[] = {0.01, 0.03, 0.08};
  const double mus[] = {1.0, 100.0};
  for (const double mu : mus) {
    for (const double load : loads) {
      const auto model = vacq::VacationModel::five_phase(load * mu, mu, 0.99, 0.98, 0.1);
      const auto blocks = vacq::build_blocks(model);
      const auto sol = vacq::solve_boundary(blocks, vacq::solve_rate_matrix(blocks, tol, max_iter));
      const double exact = vacq::expected_customers_exact(sol);
      const auto trunc = vacq::truncated_direct_solve(model, 300);
      ++res.checked;
      if (!(std::abs(exact - trunc.expected_customers) <= 1e-8 * trunc.expected_customers)) {
        ++res.failed;
      }
      // horizon sized to about 3e5 expected events
      double inv_sum = 0.0;
      for (int i = 1; i <= model.phase_count(); ++i) inv_sum += 1.0 / model.total_rate(i);
      const double horizon = 3e5 * inv_sum / model.phase_count();
      const auto sim = vacq::simulate(model, horizon, horizon / 100.0, rng.next_u64(), 10);
      ++res.checked;
      if (!(std::abs(sim.mean_customers - exact) <= 3.0 * sim.std_error)) ++res.failed;
    }
  }
  return res;
}

}  // namespace

int run_verify(int samples, std::uint64_t seed, double tol, int max_iter) {
  vacq::SplitMix64 rng(seed);
  const SuiteResult gap = rate_gap_suite(samples, rng);
  report("rate-gap sampling        ", gap);
  const SuiteResult poly = polynomial_equivalence_suite(samples, rng);
  report("polynomial equivalence   ", poly);
  const SuiteResult oracle = oracle_triangle_suite(rng, tol, max_iter);
  report("oracle triangle          ", oracle);
  const int failures = gap.failed + poly.failed + oracle.failed;
  std::cout << "total: " << (gap.checked + poly.checked + oracle.checked - failures) << "/"
            << (gap.checked + poly.checked + oracle.checked) << " passed\n";
  return failures;
}
