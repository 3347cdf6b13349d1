#ifndef VACQ_MODEL_HPP
#define VACQ_MODEL_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <compare>
#include <iosfwd>
#include <vector>

namespace vacq {

/// A state (n, i): n customers in the system, server in fatigue phase i.
/// Phase 1 is the fresh server, phases 2..m-1 are progressively slower
/// working phases, phase m is the full rest phase (no service).
struct StateLabel {
  int level;
  int phase;
  friend auto operator<=>(const StateLabel&, const StateLabel&) = default;
};

std::ostream& operator<<(std::ostream& os, const StateLabel& s);

/// Parameters of the m-phase fatigue queue.
///
/// Every transition advances the phase: a service completion moves
/// (n, i) -> (n-1, i+1) at rate mu_i = decay[i-1] * base_rate, an arrival
/// moves (n, i) -> (n+1, i+1) at rate arrival_rate, and from the rest
/// phase the chain jumps (n, m) -> (n+2, 1) at rate arrival_rate / 2
/// (two arrivals accumulate while the server rests). At level 0 only
/// arrivals occur.
class VacationModel {
public:
  /// Validates and constructs. decay must start at 1 and be strictly
  /// decreasing with positive entries; phase count m = decay.size() + 1 >= 3.
  /// arrival_rate may be 0 (useful for degenerate simulations); base_rate > 0.
  VacationModel(double arrival_rate, double base_rate, std::vector<double> decay);

  static VacationModel four_phase(double arrival_rate, double base_rate, double a, double b);
  static VacationModel five_phase(double arrival_rate, double base_rate, double a, double b,
                                  double c);

  double arrival_rate() const { return arrival_rate_; }
  double base_rate() const { return base_rate_; }
  const std::vector<double>& decay() const { return decay_; }
  int phase_count() const { return static_cast<int>(decay_.size()) + 1; }

  /// mu_i for working phases 1..m-1; 0 for the rest phase m.
  double service_rate(int phase) const;

  /// Total outflow rate of a high-level state in phase i:
  /// arrival_rate + mu_i for i < m, arrival_rate / 2 for i = m.
  double total_rate(int phase) const;

  /// Rescales both arrival and service rates by t > 0 (time-unit change).
  VacationModel scaled(double t) const;

private:
  double arrival_rate_;
  double base_rate_;
  std::vector<double> decay_;
};

/// All generator blocks of the queue, in one validated bundle.
///
/// a00/a01/a02/a10/a11 are the m x m level blocks of the raw generator
/// (levels listed 0, 1, 2, ...). The 2m x 2m blocks pair two consecutive
/// levels, because the rest-phase jump spans two levels: repeating block
/// j >= 1 covers levels (2j, 2j+1). The boundary covers what is left of
/// levels 0 and 1 after dropping the three never-revisited states
/// (0,1), (0,2), (1,1): states (0,3)..(0,m), (1,2)..(1,m).
struct BlockSet {
  Eigen::MatrixXd a00, a01, a02, a10, a11;     // m x m
  Eigen::MatrixXd big_a0, big_a1, big_a2;      // 2m x 2m
  Eigen::MatrixXd b11;                         // (2m-3) x (2m-3)
  Eigen::MatrixXd b12;                         // (2m-3) x 2m
  Eigen::MatrixXd b21;                         // 2m x (2m-3)
  std::vector<StateLabel> boundary_states;     // row order of b11
  Eigen::VectorXd repeating_state_offsets;     // m ones then m twos
  int phase_count = 0;
};

BlockSet build_blocks(const VacationModel& model);

/// States visited at most finitely often from any start: always
/// {(0,1), (0,2), (1,1)}. (0,1) and (1,1) have no inflow at all; (0,2)
/// is fed only by (1,1).
std::vector<StateLabel> transient_states(const VacationModel& model);

/// Finite generator over all states with level <= max_level. Transitions
/// whose target level exceeds the window are redirected to the highest
/// representable level with the same target phase, so rows sum to zero
/// exactly.
struct TruncatedGenerator {
  Eigen::SparseMatrix<double> q;
  std::vector<StateLabel> states;  // level-major, phases 1..m
  int max_level = 0;
  int phase_count = 0;
  int index_of(StateLabel s) const { return s.level * phase_count + (s.phase - 1); }
};

TruncatedGenerator build_truncated_generator(const VacationModel& model, int max_level);

/// Membership masks of the closed communicating class containing (0,3).
///
/// For even m the chain (minus the three transient states) is irreducible
/// and both masks are all-true. For odd m the parity of level+phase is
/// conserved by every transition, the state space splits into two closed
/// classes, and only the class of (0,3) is reachable from the designated
/// start. block_mask applies identically to every repeating block.
struct ClassStructure {
  std::vector<bool> boundary_mask;  // size 2m-3, aligned with BlockSet::boundary_states
  std::vector<bool> block_mask;     // size 2m
};

ClassStructure reference_class(const BlockSet& blocks);

/// Dense level-paired generator [B11 B12; B21 A1 A0; A2 A1 A0; ...] with
/// `repeating_blocks` copies of the repeating row. The last block's upward
/// outflow is cut, so its rows do not sum to zero; all earlier rows do.
Eigen::MatrixXd assemble_qbd_generator(const BlockSet& blocks, int repeating_blocks);

/// Enumerates the raw (untruncated) transitions out of state s.
template <class F>
void visit_transitions(const VacationModel& model, StateLabel s, F&& f) {
  const int m = model.phase_count();
  const double lam = model.arrival_rate();
  if (s.phase == m) {
    f(StateLabel{s.level + 2, 1}, lam / 2);
  } else if (s.level == 0) {
    f(StateLabel{1, s.phase + 1}, lam);
  } else {
    f(StateLabel{s.level - 1, s.phase + 1}, model.service_rate(s.phase));
    f(StateLabel{s.level + 1, s.phase + 1}, lam);
  }
}

}  // namespace vacq

#endif
