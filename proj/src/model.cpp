#include "vacq/model.hpp"

#include <cmath>
#include <deque>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

namespace vacq {

std::ostream& operator<<(std::ostream& os, const StateLabel& s) {
  return os << '(' << s.level << ',' << s.phase << ')';
}

VacationModel::VacationModel(double arrival_rate, double base_rate, std::vector<double> decay)
    : arrival_rate_(arrival_rate), base_rate_(base_rate), decay_(std::move(decay)) {
  if (!(std::isfinite(arrival_rate_) && arrival_rate_ >= 0.0)) {
    throw std::invalid_argument("arrival rate must be finite and >= 0");
  }
  if (!(std::isfinite(base_rate_) && base_rate_ > 0.0)) {
    throw std::invalid_argument("base service rate must be finite and > 0");
  }
  if (decay_.size() < 2) {
    throw std::invalid_argument("at least 3 phases required (decay needs >= 2 entries)");
  }
  if (decay_.front() != 1.0) {
    throw std::invalid_argument("decay must start at 1 (the fresh-server rate is mu itself)");
  }
  for (std::size_t i = 0; i < decay_.size(); ++i) {
    if (!(std::isfinite(decay_[i]) && decay_[i] > 0.0)) {
      throw std::invalid_argument("decay factors must be finite and > 0");
    }
    if (i > 0 && !(decay_[i] < decay_[i - 1])) {
      throw std::invalid_argument("decay factors must be strictly decreasing");
    }
  }
}

VacationModel VacationModel::four_phase(double arrival_rate, double base_rate, double a,
                                        double b) {
  return VacationModel(arrival_rate, base_rate, {1.0, a, b});
}

VacationModel VacationModel::five_phase(double arrival_rate, double base_rate, double a, double b,
                                        double c) {
  return VacationModel(arrival_rate, base_rate, {1.0, a, b, c});
}

double VacationModel::service_rate(int phase) const {
  if (phase < 1 || phase > phase_count()) {
    throw std::invalid_argument("phase out of range");
  }
  if (phase == phase_count()) return 0.0;
  return decay_[static_cast<std::size_t>(phase - 1)] * base_rate_;
}

double VacationModel::total_rate(int phase) const {
  if (phase == phase_count()) return arrival_rate_ / 2;
  return arrival_rate_ + service_rate(phase);
}

VacationModel VacationModel::scaled(double t) const {
  if (!(std::isfinite(t) && t > 0.0)) {
    throw std::invalid_argument("scale factor must be finite and > 0");
  }
  return VacationModel(arrival_rate_ * t, base_rate_ * t, decay_);
}

BlockSet build_blocks(const VacationModel& model) {
  const int m = model.phase_count();
  const double lam = model.arrival_rate();
  BlockSet bs;
  bs.phase_count = m;

  bs.a00 = Eigen::MatrixXd::Zero(m, m);
  bs.a01 = Eigen::MatrixXd::Zero(m, m);
  bs.a02 = Eigen::MatrixXd::Zero(m, m);
  bs.a10 = Eigen::MatrixXd::Zero(m, m);
  bs.a11 = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m - 1; ++i) {
    const double mu_i = model.service_rate(i + 1);
    bs.a00(i, i) = -lam;
    bs.a01(i, i + 1) = lam;
    bs.a10(i, i + 1) = mu_i;
    bs.a11(i, i) = -(lam + mu_i);
  }
  bs.a00(m - 1, m - 1) = -lam / 2;
  bs.a11(m - 1, m - 1) = -lam / 2;
  bs.a02(m - 1, 0) = lam / 2;

  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(m, m);
  bs.big_a0 = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  bs.big_a0.topLeftCorner(m, m) = bs.a02;
  bs.big_a0.bottomLeftCorner(m, m) = bs.a01;
  bs.big_a0.bottomRightCorner(m, m) = bs.a02;
  bs.big_a1 = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  bs.big_a1.topLeftCorner(m, m) = bs.a11;
  bs.big_a1.topRightCorner(m, m) = bs.a01;
  bs.big_a1.bottomLeftCorner(m, m) = bs.a10;
  bs.big_a1.bottomRightCorner(m, m) = bs.a11;
  bs.big_a2 = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  bs.big_a2.topRightCorner(m, m) = bs.a10;
  (void)zero;

  // boundary: (0,3)..(0,m) then (1,2)..(1,m)
  const int nb = 2 * m - 3;
  bs.boundary_states.reserve(static_cast<std::size_t>(nb));
  for (int i = 3; i <= m; ++i) bs.boundary_states.push_back({0, i});
  for (int i = 2; i <= m; ++i) bs.boundary_states.push_back({1, i});
  const auto b0 = [](int i) { return i - 3; };                      // (0,i) row
  const auto b1 = [m](int i) { return (m - 2) + (i - 2); };         // (1,i) row

  bs.b11 = Eigen::MatrixXd::Zero(nb, nb);
  for (int i = 3; i < m; ++i) {
    bs.b11(b0(i), b0(i)) = -lam;
    bs.b11(b0(i), b1(i + 1)) = lam;  // (0,i) -> (1,i+1)
  }
  bs.b11(b0(m), b0(m)) = -lam / 2;
  for (int i = 2; i < m; ++i) {
    const double mu_i = model.service_rate(i);
    bs.b11(b1(i), b1(i)) = -(lam + mu_i);
    bs.b11(b1(i), b0(i + 1)) = mu_i;  // (1,i) -> (0,i+1)
  }
  bs.b11(b1(m), b1(m)) = -lam / 2;

  // first repeating block covers levels (2,3); column order (2,1..m),(3,1..m)
  bs.b12 = Eigen::MatrixXd::Zero(nb, 2 * m);
  bs.b12(b0(m), 0) = lam / 2;  // (0,m) -> (2,1)
  for (int i = 2; i < m; ++i) {
    bs.b12(b1(i), i) = lam;  // (1,i) -> (2,i+1)
  }
  bs.b12(b1(m), m) = lam / 2;  // (1,m) -> (3,1)

  bs.b21 = Eigen::MatrixXd::Zero(2 * m, nb);
  for (int i = 1; i < m; ++i) {
    bs.b21(i - 1, b1(i + 1)) = model.service_rate(i);  // (2,i) -> (1,i+1)
  }

  bs.repeating_state_offsets = Eigen::VectorXd::Ones(2 * m);
  bs.repeating_state_offsets.tail(m).setConstant(2.0);
  return bs;
}

std::vector<StateLabel> transient_states(const VacationModel& model) {
  (void)model;  // structural: independent of rates and decay
  return {{0, 1}, {0, 2}, {1, 1}};
}

TruncatedGenerator build_truncated_generator(const VacationModel& model, int max_level) {
  if (max_level < 4) {
    throw std::invalid_argument("max_level must be >= 4 to contain the boundary structure");
  }
  const int m = model.phase_count();
  TruncatedGenerator gen;
  gen.max_level = max_level;
  gen.phase_count = m;
  const int n_states = (max_level + 1) * m;
  gen.states.reserve(static_cast<std::size_t>(n_states));
  for (int n = 0; n <= max_level; ++n) {
    for (int i = 1; i <= m; ++i) gen.states.push_back({n, i});
  }
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(3 * n_states));
  for (const StateLabel s : gen.states) {
    const int row = gen.index_of(s);
    visit_transitions(model, s, [&](StateLabel to, double rate) {
      if (rate <= 0.0) return;
      to.level = std::min(to.level, max_level);  // redirect, same target phase
      trip.emplace_back(row, gen.index_of(to), rate);
      trip.emplace_back(row, row, -rate);
    });
  }
  gen.q.resize(n_states, n_states);
  gen.q.setFromTriplets(trip.begin(), trip.end());
  return gen;
}

ClassStructure reference_class(const BlockSet& blocks) {
  const int m = blocks.phase_count;
  const int nb = 2 * m - 3;
  const int nblk = 2 * m;
  // nodes: [0, nb) boundary, then three repeating blocks
  const int n_nodes = nb + 3 * nblk;
  const auto blk = [&](int j, int k) { return nb + j * nblk + k; };  // j in {0,1,2}
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_nodes));
  const auto link = [&](int from, int to, double rate) {
    if (rate > 0.0) adj[static_cast<std::size_t>(from)].push_back(to);
  };
  for (int r = 0; r < nb; ++r) {
    for (int c = 0; c < nb; ++c) {
      if (r != c) link(r, c, blocks.b11(r, c));
    }
    for (int c = 0; c < nblk; ++c) link(r, blk(0, c), blocks.b12(r, c));
  }
  for (int j = 0; j < 3; ++j) {
    for (int r = 0; r < nblk; ++r) {
      for (int c = 0; c < nblk; ++c) {
        if (r != c) link(blk(j, r), blk(j, c), blocks.big_a1(r, c));
        if (j + 1 < 3) link(blk(j, r), blk(j + 1, c), blocks.big_a0(r, c));
        if (j > 0) link(blk(j, r), blk(j - 1, c), blocks.big_a2(r, c));
      }
      if (j == 0) {
        for (int c = 0; c < nb; ++c) link(blk(0, r), c, blocks.b21(r, c));
      }
    }
  }
  std::vector<bool> seen(static_cast<std::size_t>(n_nodes), false);
  std::deque<int> queue;
  seen[0] = true;  // boundary row 0 is (0,3)
  queue.push_back(0);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const int v : adj[static_cast<std::size_t>(u)]) {
      if (v >= 0 && !seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        queue.push_back(v);
      }
    }
  }
  ClassStructure cs;
  cs.boundary_mask.assign(seen.begin(), seen.begin() + nb);
  cs.block_mask.assign(static_cast<std::size_t>(nblk), false);
  for (int k = 0; k < nblk; ++k) {
    cs.block_mask[static_cast<std::size_t>(k)] = seen[static_cast<std::size_t>(blk(0, k))];
    // the class pattern repeats across blocks; a mismatch would mean the
    // block graph above is wrong
    if (seen[static_cast<std::size_t>(blk(0, k))] != seen[static_cast<std::size_t>(blk(1, k))]) {
      throw std::logic_error("repeating-block class mask is not block-invariant");
    }
  }
  return cs;
}

Eigen::MatrixXd assemble_qbd_generator(const BlockSet& blocks, int repeating_blocks) {
  if (repeating_blocks < 1) {
    throw std::invalid_argument("need at least one repeating block");
  }
  const int m = blocks.phase_count;
  const int nb = 2 * m - 3;
  const int nblk = 2 * m;
  const int n = nb + repeating_blocks * nblk;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  q.topLeftCorner(nb, nb) = blocks.b11;
  q.block(0, nb, nb, nblk) = blocks.b12;
  q.block(nb, 0, nblk, nb) = blocks.b21;
  for (int j = 0; j < repeating_blocks; ++j) {
    const int r = nb + j * nblk;
    q.block(r, r, nblk, nblk) = blocks.big_a1;
    if (j + 1 < repeating_blocks) q.block(r, r + nblk, nblk, nblk) = blocks.big_a0;
    if (j > 0) q.block(r, r - nblk, nblk, nblk) = blocks.big_a2;
  }
  return q;
}

}  // namespace vacq
