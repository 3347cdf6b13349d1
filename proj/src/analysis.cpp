#include "vacq/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "vacq/errors.hpp"
#include "vacq/qbd.hpp"
#include "vacq/stability.hpp"

namespace vacq {

namespace {

constexpr double kNearCriticalRadius = 0.999;  // skip hopeless solves near the boundary

struct VacationPoint {
  PointStatus status = PointStatus::Ok;
  double el_block_indexed = 0.0;
  double el_exact = 0.0;
};

/// Both estimators for the 5-phase system at load rho (lambda = rho * mu).
VacationPoint vacation_point(double a, double b, double c, double mu, double rho) {
  VacationPoint p;
  const VacationModel model = VacationModel::five_phase(rho * mu, mu, a, b, c);
  if (stability_polynomial_5ph(model, model.arrival_rate()) >= 0.0) {
    p.status = PointStatus::Unstable;
    return p;
  }
  const BlockSet blocks = build_blocks(model);
  const RateMatrixSolution r = solve_rate_matrix(blocks);
  if (r.spectral_radius > kNearCriticalRadius) {
    p.status = PointStatus::NearCritical;
    return p;
  }
  const StationarySolution sol = solve_boundary(blocks, r);
  p.el_block_indexed = expected_customers_block_indexed(sol);
  p.el_exact = expected_customers_exact(sol);
  return p;
}

void require_decay_triple(double a, double b, double c) {
  if (!(0.0 < c && c < b && b < a && a < 1.0)) {
    throw std::invalid_argument("need 0 < c < b < a < 1");
  }
}

}  // namespace

std::string to_string(PointStatus s) {
  switch (s) {
    case PointStatus::Ok: return "ok";
    case PointStatus::Unstable: return "unstable";
    case PointStatus::NearCritical: return "near-critical";
  }
  return "?";
}

double mm1_expected_customers(double lambda, double service_rate) {
  if (!(lambda >= 0.0) || !(service_rate > 0.0)) {
    throw std::invalid_argument("rates must be nonnegative (service rate positive)");
  }
  if (lambda >= service_rate) {
    throw UnstableError("M/M/1 requires lambda < service_rate");
  }
  return lambda / (service_rate - lambda);
}

std::vector<double> make_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be > 0");
  std::vector<double> grid;
  const int n = static_cast<int>(std::floor((stop - start) / step + 0.5));
  grid.reserve(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    const double x = start + i * step;
    if (x > stop + step / 2) break;
    grid.push_back(x);
  }
  return grid;
}

std::optional<CrossoverResult> find_crossover_k1(double a, double b, double c, double mu,
                                                 double grid_step) {
  require_decay_triple(a, b, c);
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be > 0");
  if (!(grid_step > 0.0)) throw std::invalid_argument("grid_step must be > 0");

  // both differences at rho, or nullopt when either system is unstable there
  struct DiffPair {
    double indexed;
    double exact;
  };
  const auto diff_at = [&](double rho) -> std::optional<DiffPair> {
    if (rho <= 0.0 || rho >= c) return std::nullopt;
    const VacationPoint p = vacation_point(a, b, c, mu, rho);
    if (p.status != PointStatus::Ok) return std::nullopt;
    const double mm1 = mm1_expected_customers(rho * mu, c * mu);
    return DiffPair{p.el_block_indexed - mm1, p.el_exact - mm1};
  };

  // bisection on a sign change bracketed by (lo, hi)
  const auto refine = [&](double lo, double d_lo, double hi, bool exact) {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      const auto p = diff_at(mid);
      if (!p) break;
      const double d = exact ? p->exact : p->indexed;
      if (std::abs(d) < 1e-8) return mid;
      if ((d > 0) == (d_lo > 0)) {
        lo = mid;
        d_lo = d;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  std::optional<CrossoverResult> found;
  std::optional<double> k1_exact;
  std::optional<double> prev_rho;
  std::optional<DiffPair> prev;
  for (int i = 1;; ++i) {
    const double rho = i * grid_step;
    if (rho >= c) break;
    const auto d = diff_at(rho);
    if (d && prev) {
      if (!found && prev->indexed * d->indexed < 0) {
        CrossoverResult res;
        res.grid_step = grid_step;
        res.k2 = c;
        res.bracket_rho_low = *prev_rho;
        res.bracket_diff_low = prev->indexed;
        res.bracket_rho_high = rho;
        res.bracket_diff_high = d->indexed;
        // linear interpolation inside the bracketing cell
        res.k1 = *prev_rho + grid_step * prev->indexed / (prev->indexed - d->indexed);
        res.k1_refined = refine(*prev_rho, prev->indexed, rho, false);
        found = res;
      }
      if (!k1_exact && prev->exact * d->exact < 0) {
        k1_exact = refine(*prev_rho, prev->exact, rho, true);
      }
    }
    if (d) {
      prev_rho = rho;
      prev = d;
    }
    if (found && k1_exact) break;
  }
  if (found) found->k1_exact = k1_exact;
  return found;
}

std::vector<SweepPoint> sweep_rho(double a, double b, double c, double mu,
                                  const std::vector<double>& rho_grid) {
  require_decay_triple(a, b, c);
  std::vector<SweepPoint> out;
  out.reserve(rho_grid.size());
  for (const double rho : rho_grid) {
    SweepPoint pt;
    pt.rho = rho;
    pt.mu = mu;
    pt.lambda = rho * mu;
    const VacationPoint p = vacation_point(a, b, c, mu, rho);
    pt.status_vacation = p.status;
    if (p.status == PointStatus::Ok) pt.el_vacation = p.el_block_indexed;
    if (rho < c) {
      pt.el_mm1 = mm1_expected_customers(rho * mu, c * mu);
    } else {
      pt.status_mm1 = PointStatus::Unstable;
    }
    out.push_back(pt);
  }
  return out;
}

std::vector<SweepPoint> sweep_surface(double a, double b, double c,
                                      const std::vector<double>& lambda_grid,
                                      const std::vector<double>& mu_grid) {
  require_decay_triple(a, b, c);
  std::vector<SweepPoint> out;
  out.reserve(lambda_grid.size() * mu_grid.size());
  for (const double lambda : lambda_grid) {
    for (const double mu : mu_grid) {
      SweepPoint pt;
      pt.lambda = lambda;
      pt.mu = mu;
      pt.rho = lambda / mu;
      const VacationPoint p = vacation_point(a, b, c, mu, pt.rho);
      pt.status_vacation = p.status;
      if (p.status == PointStatus::Ok) pt.el_vacation = p.el_block_indexed;
      if (lambda < c * mu) {
        pt.el_mm1 = mm1_expected_customers(lambda, c * mu);
      } else {
        pt.status_mm1 = PointStatus::Unstable;
      }
      out.push_back(pt);
    }
  }
  return out;
}

}  // namespace vacq
