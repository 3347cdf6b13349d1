#include "vacq/qbd.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vacq/errors.hpp"

namespace vacq {

namespace {

RateMatrixSolution solve_rate_matrix_impl(
    const BlockSet& blocks, double tol, int max_iter,
    const std::function<void(const Eigen::MatrixXd&)>* on_iterate) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  const auto n = blocks.big_a1.rows();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(blocks.big_a1);
  if (!lu.isInvertible()) {
    throw SingularMatrixError("A1 is singular; the model blocks are malformed");
  }
  const Eigen::MatrixXd a1_inv = lu.inverse();
  const Eigen::MatrixXd base = -blocks.big_a0 * a1_inv;  // iteration affine term
  const Eigen::MatrixXd a2_a1_inv = blocks.big_a2 * a1_inv;

  RateMatrixSolution sol;
  sol.r = Eigen::MatrixXd::Zero(n, n);
  double diff = std::numeric_limits<double>::infinity();
  int it = 0;
  while (it < max_iter) {
    ++it;
    Eigen::MatrixXd next = base - sol.r * sol.r * a2_a1_inv;
    diff = (next - sol.r).cwiseAbs().maxCoeff();
    sol.r = std::move(next);
    if (on_iterate) (*on_iterate)(sol.r);
    if (diff < tol) break;
  }
  sol.iterations = it;
  sol.residual =
      (sol.r * sol.r * blocks.big_a2 + sol.r * blocks.big_a1 + blocks.big_a0).cwiseAbs().maxCoeff();
  if (diff >= tol) {
    std::ostringstream msg;
    msg << "rate-matrix iteration did not reach tol " << tol << " in " << max_iter
        << " iterations (last step " << diff << ", residual " << sol.residual << ")";
    throw NonConvergenceError(it, sol.residual, msg.str());
  }
  sol.spectral_radius = spectral_radius(sol.r);
  return sol;
}

}  // namespace

RateMatrixSolution solve_rate_matrix(const BlockSet& blocks, double tol, int max_iter) {
  return solve_rate_matrix_impl(blocks, tol, max_iter, nullptr);
}

RateMatrixSolution solve_rate_matrix(
    const BlockSet& blocks, double tol, int max_iter,
    const std::function<void(const Eigen::MatrixXd&)>& on_iterate) {
  return solve_rate_matrix_impl(blocks, tol, max_iter, &on_iterate);
}

double spectral_radius(const Eigen::MatrixXd& m, double tol, int max_iter) {
  const auto n = m.rows();
  if (n == 0) return 0.0;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
  double est = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd w = m * v;
    const double norm = w.cwiseAbs().maxCoeff();
    if (norm == 0.0) return 0.0;
    const double prev = est;
    est = norm;
    v = w / norm;
    if (it > 0 && std::abs(est - prev) <= tol * std::max(1.0, est)) break;
  }
  return est;
}

Eigen::VectorXd StationarySolution::pi_block(int j) const {
  if (j < 1) throw std::invalid_argument("repeating blocks are indexed from 1");
  Eigen::RowVectorXd v = pi1.transpose();
  for (int k = 1; k < j; ++k) v = v * rate_matrix.r;
  return v.transpose();
}

StationarySolution solve_boundary(const BlockSet& blocks, const RateMatrixSolution& r) {
  const int m = blocks.phase_count;
  const int nb = 2 * m - 3;
  const int nblk = 2 * m;
  const int n = nb + nblk;

  Eigen::MatrixXd big = Eigen::MatrixXd::Zero(n, n);
  big.topLeftCorner(nb, nb) = blocks.b11;
  big.topRightCorner(nb, nblk) = blocks.b12;
  big.bottomLeftCorner(nblk, nb) = blocks.b21;
  big.bottomRightCorner(nblk, nblk) = blocks.big_a1 + r.r * blocks.big_a2;

  Eigen::PartialPivLU<Eigen::MatrixXd> i_minus_r(Eigen::MatrixXd::Identity(nblk, nblk) - r.r);
  Eigen::VectorXd norm_col(n);
  norm_col.head(nb).setOnes();
  norm_col.tail(nblk) = i_minus_r.solve(Eigen::VectorXd::Ones(nblk));

  // restrict to the communicating class of (0,3); the complementary parity
  // class (odd phase counts) carries no mass and would add a second null
  // direction to the balance system
  const ClassStructure cls = reference_class(blocks);
  std::vector<int> keep;
  keep.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < nb; ++i) {
    if (cls.boundary_mask[static_cast<std::size_t>(i)]) keep.push_back(i);
  }
  for (int k = 0; k < nblk; ++k) {
    if (cls.block_mask[static_cast<std::size_t>(k)]) keep.push_back(nb + k);
  }
  const int nk = static_cast<int>(keep.size());
  Eigen::MatrixXd sub(nk, nk);
  Eigen::VectorXd sub_norm(nk);
  for (int i = 0; i < nk; ++i) {
    sub_norm(i) = norm_col(keep[static_cast<std::size_t>(i)]);
    for (int j = 0; j < nk; ++j) {
      sub(i, j) = big(keep[static_cast<std::size_t>(i)], keep[static_cast<std::size_t>(j)]);
    }
  }

  // the kept balance equations leave a one-dimensional null space; swap the
  // most dependent equation (last in the pivot order) for the normalization
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub);
  qr.setThreshold(1e-10);
  if (qr.rank() != nk - 1) {
    std::ostringstream msg;
    msg << "boundary balance system has null space of dimension " << (nk - qr.rank())
        << " (expected 1); the model is malformed";
    throw RankDeficiencyError(msg.str());
  }
  const int dropped = qr.colsPermutation().indices()(nk - 1);
  Eigen::MatrixXd square = sub;
  square.col(dropped) = sub_norm;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nk);
  rhs(dropped) = 1.0;
  const Eigen::VectorXd x = square.transpose().partialPivLu().solve(rhs);

  const double dropped_residual = std::abs(x.dot(sub.col(dropped)));
  if (!(dropped_residual < 1e-10)) {
    std::ostringstream msg;
    msg << "dropped balance equation has residual " << dropped_residual
        << "; stationary solve is inconsistent";
    throw RankDeficiencyError(msg.str());
  }
  if (x.minCoeff() < -1e-10) {
    std::ostringstream msg;
    msg << "stationary vector has negative component " << x.minCoeff();
    throw NegativeMassError(msg.str());
  }

  StationarySolution sol;
  sol.pi0 = Eigen::VectorXd::Zero(nb);
  sol.pi1 = Eigen::VectorXd::Zero(nblk);
  for (int i = 0; i < nk; ++i) {
    const int idx = keep[static_cast<std::size_t>(i)];
    if (idx < nb) {
      sol.pi0(idx) = x(i);
    } else {
      sol.pi1(idx - nb) = x(i);
    }
  }
  sol.rate_matrix = r;
  sol.boundary_labels = blocks.boundary_states;
  sol.repeating_state_offsets = blocks.repeating_state_offsets;
  sol.phase_count = m;
  return sol;
}

double expected_customers_block_indexed(const StationarySolution& sol) {
  const auto n = sol.pi1.size();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(Eigen::MatrixXd::Identity(n, n) - sol.rate_matrix.r);
  const Eigen::VectorXd u = lu.solve(Eigen::VectorXd::Ones(n));
  const Eigen::VectorXd v = lu.solve(u);  // (I-R)^{-2} 1
  const Eigen::VectorXd w = lu.solve(sol.repeating_state_offsets);
  return sol.pi1.dot(v + w);
}

double expected_customers_exact(const StationarySolution& sol) {
  const int m = sol.phase_count;
  const auto n = sol.pi1.size();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(Eigen::MatrixXd::Identity(n, n) - sol.rate_matrix.r);
  const Eigen::VectorXd u = lu.solve(Eigen::VectorXd::Ones(n));
  const Eigen::VectorXd v = lu.solve(u);
  Eigen::VectorXd second_half = Eigen::VectorXd::Zero(n);  // level 2j+1 marker
  second_half.tail(m).setOnes();
  const Eigen::VectorXd w = lu.solve(second_half);
  double boundary = 0.0;
  for (Eigen::Index i = 0; i < sol.pi0.size(); ++i) {
    boundary += sol.pi0(i) * sol.boundary_labels[static_cast<std::size_t>(i)].level;
  }
  return boundary + sol.pi1.dot(2.0 * v + w);
}

}  // namespace vacq
