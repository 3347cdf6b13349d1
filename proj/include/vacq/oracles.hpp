#ifndef VACQ_ORACLES_HPP
#define VACQ_ORACLES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "vacq/model.hpp"
#include "vacq/rng.hpp"

namespace vacq {

/// Stationary distribution of the window-truncated chain, restricted to the
/// closed class of (0,3). Ground truth for the matrix-analytic pipeline.
struct TruncatedSolveResult {
  std::vector<StateLabel> states;  // class members, sorted
  Eigen::VectorXd probabilities;   // aligned with states, sums to 1
  double tail_mass = 0.0;          // mass on the top two levels
  double expected_customers = 0.0;
  bool reliable = false;           // tail_mass <= 1e-8

  /// 0 for states outside the class (or the window).
  double probability_of(StateLabel s) const;
};

/// Direct linear solve of pi Q = 0, pi.1 = 1 on the truncated window
/// (max_level >= 20). Out-of-window targets fold to the highest in-class
/// level with the same phase. Throws UnstableError when the drift condition
/// fails, IllConditionedError if the sparse solve reports failure.
TruncatedSolveResult truncated_direct_solve(const VacationModel& model, int max_level);

/// Replication-averaged time-average of the number in system.
struct SimulationEstimate {
  double mean_customers = 0.0;
  double std_error = 0.0;  // between-replication; NaN for a single replication
  double horizon = 0.0;
  double warmup = 0.0;
  std::uint64_t seed = 0;
  int replications = 0;
  bool drift_warning = false;  // model fails the stability condition
};

/// Event-by-event exponential-race simulation of one replication starting
/// from (0,3). Two draws per competing-event step, in fixed order: first
/// the dwell time, then the branch. on_transition(t, from, to) fires after
/// each jump. Returns the time average of the level over (warmup, horizon].
template <class OnTransition>
double simulate_time_average(const VacationModel& model, double horizon, double warmup,
                             SplitMix64& rng, OnTransition&& on_transition) {
  const int m = model.phase_count();
  const double lam = model.arrival_rate();
  StateLabel s{0, 3};
  double t = 0.0;
  CompensatedSum area;
  while (t < horizon) {
    double rate = 0.0;
    bool race = false;
    if (s.phase == m) {
      rate = lam / 2;
    } else if (s.level == 0) {
      rate = lam;
    } else {
      rate = lam + model.service_rate(s.phase);
      race = true;
    }
    if (rate <= 0.0) {  // absorbing (lam == 0 at level 0)
      if (horizon > warmup) area.add(s.level * (horizon - std::max(t, warmup)));
      break;
    }
    const double dwell = rng.next_exponential(rate);
    const double t_next = t + dwell;
    const double lo = std::max(t, warmup);
    const double hi = std::min(t_next, horizon);
    if (hi > lo) area.add(static_cast<double>(s.level) * (hi - lo));
    if (t_next >= horizon) break;
    StateLabel next{};
    if (s.phase == m) {
      next = {s.level + 2, 1};
    } else if (s.level == 0) {
      next = {1, s.phase + 1};
    } else {
      const double u = rng.next_uniform();
      if (u * rate < model.service_rate(s.phase)) {
        next = {s.level - 1, s.phase + 1};
      } else {
        next = {s.level + 1, s.phase + 1};
      }
    }
    (void)race;
    on_transition(t_next, s, next);
    s = next;
    t = t_next;
  }
  return area.value() / (horizon - warmup);
}

/// Seeded multi-replication estimate. Replication r runs on its own
/// SplitMix64 stream whose seed is the (r+1)-th output of SplitMix64(seed),
/// so results do not depend on execution order. Bit-exact for fixed
/// (seed, replications, horizon, warmup).
SimulationEstimate simulate(const VacationModel& model, double horizon, double warmup,
                            std::uint64_t seed, int replications);

}  // namespace vacq

#endif
