#include "vacq/oracles.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>

#include "vacq/errors.hpp"
#include "vacq/stability.hpp"

namespace vacq {

double TruncatedSolveResult::probability_of(StateLabel s) const {
  const auto it = std::lower_bound(states.begin(), states.end(), s);
  if (it == states.end() || *it != s) return 0.0;
  return probabilities(static_cast<Eigen::Index>(it - states.begin()));
}

TruncatedSolveResult truncated_direct_solve(const VacationModel& model, int max_level) {
  if (max_level < 20) throw std::invalid_argument("max_level must be >= 20");
  if (model.arrival_rate() > 0.0 && !stability_profile(model, model.arrival_rate()).stable) {
    throw UnstableError("model fails the drift stability condition");
  }

  // class of (0,3) inside the window, using the untruncated transition rules
  const StateLabel start{0, 3};
  std::vector<StateLabel> states;
  {
    std::deque<StateLabel> queue{start};
    std::map<StateLabel, bool> seen{{start, true}};
    while (!queue.empty()) {
      const StateLabel s = queue.front();
      queue.pop_front();
      visit_transitions(model, s, [&](StateLabel to, double rate) {
        if (rate <= 0.0 || to.level > max_level) return;
        if (!seen.count(to)) {
          seen.emplace(to, true);
          queue.push_back(to);
        }
      });
    }
    states.reserve(seen.size());
    for (const auto& [s, _] : seen) states.push_back(s);
    std::sort(states.begin(), states.end());
  }
  std::map<StateLabel, int> index;
  for (std::size_t k = 0; k < states.size(); ++k) index[states[k]] = static_cast<int>(k);

  // fold an out-of-window target onto the highest in-class level of the same phase
  const auto fold = [&](StateLabel to) {
    to.level = max_level;
    while (to.level >= 0 && !index.count(to)) --to.level;
    if (to.level < 0) throw std::logic_error("no in-class fold target");
    return to;
  };

  const int n = static_cast<int>(states.size());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(3 * n));
  for (const StateLabel s : states) {
    const int row = index[s];
    visit_transitions(model, s, [&](StateLabel to, double rate) {
      if (rate <= 0.0) return;
      if (to.level > max_level) to = fold(to);
      trip.emplace_back(row, index.at(to), rate);
      trip.emplace_back(row, row, -rate);
    });
  }

  // pi Q = 0 with the balance equation of (0,3) swapped for pi . 1 = 1
  const int c = index.at(start);
  std::vector<Eigen::Triplet<double>> sys;
  sys.reserve(trip.size() + static_cast<std::size_t>(n));
  for (const auto& t : trip) {
    if (t.col() != c) sys.emplace_back(t.col(), t.row(), t.value());  // transposed
  }
  for (int i = 0; i < n; ++i) sys.emplace_back(c, i, 1.0);
  Eigen::SparseMatrix<double> mat(n, n);
  mat.setFromTriplets(sys.begin(), sys.end());
  mat.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(mat);
  if (lu.info() != Eigen::Success) {
    throw IllConditionedError("sparse factorization of the truncated system failed");
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(c) = 1.0;
  Eigen::VectorXd pi = lu.solve(rhs);
  if (lu.info() != Eigen::Success) {
    throw IllConditionedError("sparse solve of the truncated system failed");
  }
  // scrub subnormal noise so reported probabilities are cleanly nonnegative
  for (int i = 0; i < n; ++i) {
    if (std::abs(pi(i)) < std::numeric_limits<double>::min()) pi(i) = 0.0;
  }

  TruncatedSolveResult res;
  res.states = std::move(states);
  res.probabilities = std::move(pi);
  double el = 0.0;
  double tail = 0.0;
  for (int i = 0; i < n; ++i) {
    const int level = res.states[static_cast<std::size_t>(i)].level;
    el += level * res.probabilities(i);
    if (level >= max_level - 1) tail += res.probabilities(i);
  }
  res.expected_customers = el;
  res.tail_mass = tail;
  res.reliable = tail <= 1e-8;
  return res;
}

SimulationEstimate simulate(const VacationModel& model, double horizon, double warmup,
                            std::uint64_t seed, int replications) {
  if (!(warmup >= 0.0) || !(horizon > warmup)) {
    throw std::invalid_argument("need horizon > warmup >= 0");
  }
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");

  SimulationEstimate est;
  est.horizon = horizon;
  est.warmup = warmup;
  est.seed = seed;
  est.replications = replications;
  est.drift_warning =
      model.arrival_rate() > 0.0 && !stability_profile(model, model.arrival_rate()).stable;

  // per-replication stream seeds drawn up front; execution order cannot matter
  std::vector<std::uint64_t> stream_seeds(static_cast<std::size_t>(replications));
  SplitMix64 master(seed);
  for (auto& s : stream_seeds) s = master.next_u64();

  std::vector<double> means(static_cast<std::size_t>(replications));
  for (int r = 0; r < replications; ++r) {
    SplitMix64 rng(stream_seeds[static_cast<std::size_t>(r)]);
    means[static_cast<std::size_t>(r)] =
        simulate_time_average(model, horizon, warmup, rng, [](double, StateLabel, StateLabel) {});
  }

  CompensatedSum sum;
  for (const double v : means) sum.add(v);
  est.mean_customers = sum.value() / replications;
  if (replications >= 2) {
    CompensatedSum sq;
    for (const double v : means) {
      const double d = v - est.mean_customers;
      sq.add(d * d);
    }
    est.std_error = std::sqrt(sq.value() / (replications - 1) / replications);
  } else {
    est.std_error = std::nan("");
  }
  return est;
}

}  // namespace vacq
