#include <doctest.h>

#include <deque>
#include <random>
#include <set>

#include "support.hpp"
#include "vacq/model.hpp"

using namespace vacq;

TEST_CASE("model validation") {
  CHECK_THROWS_AS(VacationModel(1.0, 1.0, {1.0}), std::invalid_argument);            // m < 3
  CHECK_THROWS_AS(VacationModel(1.0, 1.0, {1.0, 0.5, 0.7}), std::invalid_argument);  // not monotone
  CHECK_THROWS_AS(VacationModel(1.0, 1.0, {0.9, 0.5}), std::invalid_argument);       // d1 != 1
  CHECK_THROWS_AS(VacationModel(1.0, 1.0, {1.0, 0.5, 0.0}), std::invalid_argument);  // zero factor
  CHECK_THROWS_AS(VacationModel(-1.0, 1.0, {1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(VacationModel(1.0, 0.0, {1.0, 0.5}), std::invalid_argument);
  CHECK_NOTHROW(VacationModel(0.0, 1.0, {1.0, 0.5}));  // lambda = 0 is allowed
  const auto m = VacationModel::five_phase(2.0, 100.0, 0.99, 0.98, 0.1);
  CHECK(m.phase_count() == 5);
  CHECK(m.service_rate(1) == 100.0);
  CHECK(m.service_rate(4) == doctest::Approx(10.0));
  CHECK(m.service_rate(5) == 0.0);
}

TEST_CASE("block entries for the five-phase model") {
  const auto model = VacationModel(1.0, 1.0, {1.0, 0.99, 0.98, 0.1});
  const BlockSet bs = build_blocks(model);
  REQUIRE(bs.a10.rows() == 5);
  CHECK(bs.a10(0, 1) == 1.0);
  CHECK(bs.a10(1, 2) == 0.99);
  CHECK(bs.a10(2, 3) == 0.98);
  CHECK(bs.a10(3, 4) == 0.1);
  CHECK(bs.a02(4, 0) == 0.5);  // (n,5) -> (n+2,1) at lambda/2
  CHECK(bs.a02.cwiseAbs().sum() == 0.5);
  CHECK(bs.a00.diagonal().head(4).isConstant(-1.0));
  CHECK(bs.a00(4, 4) == -0.5);
  CHECK(bs.a11(0, 0) == -2.0);
  CHECK(bs.a11(4, 4) == -0.5);
}

TEST_CASE("paired-level blocks are assembled exactly from the small blocks") {
  std::mt19937_64 gen(7);
  for (const int phases : {3, 4, 5, 7}) {
    const auto model = testing::random_model(gen, phases, 0.7, 3.0);
    const BlockSet bs = build_blocks(model);
    const int m = phases;
    CHECK(bs.big_a0.topLeftCorner(m, m) == bs.a02);
    CHECK(bs.big_a0.topRightCorner(m, m).isZero(0.0));
    CHECK(bs.big_a0.bottomLeftCorner(m, m) == bs.a01);
    CHECK(bs.big_a0.bottomRightCorner(m, m) == bs.a02);
    CHECK(bs.big_a1.topLeftCorner(m, m) == bs.a11);
    CHECK(bs.big_a1.topRightCorner(m, m) == bs.a01);
    CHECK(bs.big_a1.bottomLeftCorner(m, m) == bs.a10);
    CHECK(bs.big_a1.bottomRightCorner(m, m) == bs.a11);
    CHECK(bs.big_a2.topRightCorner(m, m) == bs.a10);
    CHECK(bs.big_a2.topLeftCorner(m, m).isZero(0.0));
    CHECK(bs.big_a2.bottomRows(m).isZero(0.0));
  }
}

TEST_CASE("generator rows are conserved") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int phases = 3 + static_cast<int>(gen() % 6);
    const auto model = testing::random_model(gen, phases, 0.1 + (gen() % 100) / 25.0,
                                             0.5 + (gen() % 100) / 10.0);
    const BlockSet bs = build_blocks(model);
    const Eigen::VectorXd level0 = (bs.a00 + bs.a01 + bs.a02).rowwise().sum();
    const Eigen::VectorXd interior = (bs.a10 + bs.a11 + bs.a01 + bs.a02).rowwise().sum();
    CHECK(level0.cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(interior.cwiseAbs().maxCoeff() <= 1e-12);
    // off-diagonals nonnegative, diagonals of a11/b11 negative
    for (const Eigen::MatrixXd* blk : {&bs.a00, &bs.a01, &bs.a02, &bs.a10, &bs.a11, &bs.b11,
                                       &bs.b12, &bs.b21, &bs.big_a0, &bs.big_a1, &bs.big_a2}) {
      for (Eigen::Index i = 0; i < blk->rows(); ++i) {
        for (Eigen::Index j = 0; j < blk->cols(); ++j) {
          if (i != j || blk->rows() != blk->cols()) CHECK((*blk)(i, j) >= 0.0);
        }
      }
    }
    CHECK(bs.a11.diagonal().maxCoeff() < 0.0);
    CHECK(bs.b11.diagonal().maxCoeff() < 0.0);
  }
}

TEST_CASE("boundary blocks match the five-phase reference layout") {
  // hand-checked boundary blocks for m = 5 with distinct rates
  const double lam = 2.5, mu = 3.0, a = 0.9, b = 0.6, c = 0.2;
  const auto model = VacationModel::five_phase(lam, mu, a, b, c);
  const BlockSet bs = build_blocks(model);
  Eigen::MatrixXd b11(7, 7);
  const double mu2 = a * mu, mu3 = b * mu, mu4 = c * mu;
  b11 << -lam, 0, 0, 0, 0, lam, 0,                  //
      0, -lam, 0, 0, 0, 0, lam,                     //
      0, 0, -lam / 2, 0, 0, 0, 0,                   //
      mu2, 0, 0, -(lam + mu2), 0, 0, 0,             //
      0, mu3, 0, 0, -(lam + mu3), 0, 0,             //
      0, 0, mu4, 0, 0, -(lam + mu4), 0,             //
      0, 0, 0, 0, 0, 0, -lam / 2;
  CHECK((bs.b11 - b11).cwiseAbs().maxCoeff() == 0.0);

  Eigen::MatrixXd b12 = Eigen::MatrixXd::Zero(7, 10);
  b12(2, 0) = lam / 2;  // (0,5) -> (2,1)
  b12(3, 2) = lam;      // (1,2) -> (2,3)
  b12(4, 3) = lam;
  b12(5, 4) = lam;
  b12(6, 5) = lam / 2;  // (1,5) -> (3,1)
  CHECK((bs.b12 - b12).cwiseAbs().maxCoeff() == 0.0);

  Eigen::MatrixXd b21 = Eigen::MatrixXd::Zero(10, 7);
  b21(0, 3) = mu;   // (2,1) -> (1,2)
  b21(1, 4) = mu2;  // (2,2) -> (1,3)
  b21(2, 5) = mu3;
  b21(3, 6) = mu4;  // (2,4) -> (1,5)
  CHECK((bs.b21 - b21).cwiseAbs().maxCoeff() == 0.0);

  const std::vector<StateLabel> expected = {{0, 3}, {0, 4}, {0, 5}, {1, 2},
                                            {1, 3}, {1, 4}, {1, 5}};
  CHECK(bs.boundary_states == expected);
  CHECK(bs.repeating_state_offsets.head(5).isConstant(1.0));
  CHECK(bs.repeating_state_offsets.tail(5).isConstant(2.0));
}

TEST_CASE("transient states are structural") {
  const std::vector<StateLabel> expected = {{0, 1}, {0, 2}, {1, 1}};
  std::mt19937_64 gen(3);
  for (const int phases : {3, 4, 5, 6, 7}) {
    const auto model = testing::random_model(gen, phases, 1.3, 2.0);
    CHECK(transient_states(model) == expected);
  }
}

TEST_CASE("transient set equals the complement of reachability from (0,3)") {
  // breadth-first search over the truncated graph (redirects included)
  std::mt19937_64 rng(5);
  const auto model = testing::random_model(rng, 7, 0.8, 4.0);
  const int max_level = 12;
  const TruncatedGenerator gen = build_truncated_generator(model, max_level);
  std::vector<bool> seen(gen.states.size(), false);
  std::deque<int> queue{gen.index_of({0, 3})};
  seen[static_cast<std::size_t>(queue.front())] = true;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v = 0; v < static_cast<int>(gen.states.size()); ++v) {
      if (v != u && gen.q.coeff(u, v) > 0.0 && !seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        queue.push_back(v);
      }
    }
  }
  std::vector<StateLabel> unreachable;
  for (std::size_t k = 0; k < gen.states.size(); ++k) {
    if (!seen[k]) unreachable.push_back(gen.states[k]);
  }
  const std::vector<StateLabel> expected = {{0, 1}, {0, 2}, {1, 1}};
  CHECK(unreachable == expected);
}

TEST_CASE("truncated generator structure") {
  const auto model = VacationModel(0.8, 1.7, {1.0, 0.99, 0.98, 0.1});
  CHECK_THROWS_AS(build_truncated_generator(model, 3), std::invalid_argument);
  const TruncatedGenerator gen = build_truncated_generator(model, 4);
  REQUIRE(gen.states.size() == 25);
  const Eigen::VectorXd row_sums = Eigen::MatrixXd(gen.q).rowwise().sum();
  CHECK(row_sums.cwiseAbs().maxCoeff() <= 1e-12);
  const double lam = model.arrival_rate();
  // (0,3): -lambda on the diagonal, +lambda at (1,4)
  CHECK(gen.q.coeff(gen.index_of({0, 3}), gen.index_of({0, 3})) == -lam);
  CHECK(gen.q.coeff(gen.index_of({0, 3}), gen.index_of({1, 4})) == lam);
  // (2,5): -lambda/2 on the diagonal, +lambda/2 at (4,1)
  CHECK(gen.q.coeff(gen.index_of({2, 5}), gen.index_of({2, 5})) == -lam / 2);
  CHECK(gen.q.coeff(gen.index_of({2, 5}), gen.index_of({4, 1})) == lam / 2);
  // redirects: the rest-phase jump from max_level-1 lands at max_level
  CHECK(gen.q.coeff(gen.index_of({3, 5}), gen.index_of({4, 1})) == lam / 2);
}

TEST_CASE("assembled truncated generator is a proper CTMC") {
  const auto model = VacationModel(2.0, 10.0, {1.0, 0.99, 0.98, 0.1});
  const TruncatedGenerator gen = build_truncated_generator(model, 50);
  const Eigen::MatrixXd q(gen.q);
  double min_offdiag = 0.0;
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
      if (i != j) min_offdiag = std::min(min_offdiag, q(i, j));
    }
  }
  CHECK(min_offdiag >= 0.0);
  CHECK(q.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("assembled level-paired generator conserves interior rows") {
  std::mt19937_64 gen(13);
  for (const int phases : {4, 5}) {
    const auto model = testing::random_model(gen, phases, 0.6, 2.0);
    const BlockSet bs = build_blocks(model);
    const int blocks = 6;
    const Eigen::MatrixXd q = assemble_qbd_generator(bs, blocks);
    const Eigen::VectorXd sums = q.rowwise().sum();
    const int interior = static_cast<int>(q.rows()) - 2 * phases;  // all but the last block
    CHECK(sums.head(interior).cwiseAbs().maxCoeff() <= 1e-12);
    // the cut block leaks exactly its upward rates
    CHECK(sums.tail(2 * phases).minCoeff() < 0.0);
  }
}

TEST_CASE("assembled generator matches the direct truncation on the interior") {
  const auto model = VacationModel(0.9, 4.0, {1.0, 0.8, 0.35, 0.15});
  const BlockSet bs = build_blocks(model);
  const int repeating = 5;                    // levels 2..11
  const Eigen::MatrixXd q = assemble_qbd_generator(bs, repeating);
  const TruncatedGenerator direct = build_truncated_generator(model, 2 * repeating + 3);
  // map paired coordinates -> direct indices
  const int m = model.phase_count();
  std::vector<int> to_direct;
  for (const StateLabel s : bs.boundary_states) to_direct.push_back(direct.index_of(s));
  for (int j = 1; j <= repeating; ++j) {
    for (int half = 0; half < 2; ++half) {
      for (int ph = 1; ph <= m; ++ph) {
        to_direct.push_back(direct.index_of({2 * j + half, ph}));
      }
    }
  }
  // interior rows (all but the cut block) must agree entrywise with the
  // direct truncated generator
  const int n_interior = static_cast<int>(q.rows()) - 2 * m;
  for (int i = 0; i < n_interior; ++i) {
    for (int j = 0; j < static_cast<int>(q.cols()); ++j) {
      if (i == j) continue;
      CHECK(q(i, j) ==
            direct.q.coeff(to_direct[static_cast<std::size_t>(i)],
                           to_direct[static_cast<std::size_t>(j)]));
    }
  }
}

TEST_CASE("reference class masks") {
  SUBCASE("even phase count: one class") {
    const auto model = VacationModel::four_phase(1.0, 2.0, 0.9, 0.5);
    const ClassStructure cs = reference_class(build_blocks(model));
    for (const bool x : cs.boundary_mask) CHECK(x);
    for (const bool x : cs.block_mask) CHECK(x);
  }
  SUBCASE("odd phase count: level+phase parity of (0,3)") {
    const auto model = VacationModel::five_phase(1.0, 2.0, 0.9, 0.5, 0.2);
    const BlockSet bs = build_blocks(model);
    const ClassStructure cs = reference_class(bs);
    for (std::size_t i = 0; i < bs.boundary_states.size(); ++i) {
      const StateLabel s = bs.boundary_states[i];
      CHECK(cs.boundary_mask[i] == (((s.level + s.phase) % 2) == 1));
    }
    const int m = 5;
    for (int k = 0; k < 2 * m; ++k) {
      const int level_offset = k < m ? 0 : 1;
      const int phase = k < m ? k + 1 : k - m + 1;
      CHECK(cs.block_mask[static_cast<std::size_t>(k)] ==
            (((level_offset + phase) % 2) == 1));
    }
  }
}
