// Copyright (c) 2026 The lpball Authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lpball/core.hpp"
#include "lpball/rng.hpp"

using lpball::LpBall;
using lpball::Position;
using lpball::Rng;
using lpball::Vector;
using Vec = Vector<double>;

TEST_CASE("lp_norm_p basic values") {
  Vec zero = Vec::Zero(3);
  CHECK(lpball::lp_norm_p(zero, 0.5) == 0.0);

  Vec pm(2);
  pm << 1.0, -1.0;
  CHECK(lpball::lp_norm_p(pm, 0.5) == doctest::Approx(2.0).epsilon(1e-15));

  Vec q(2);
  q << 0.25, 0.0;
  CHECK(lpball::lp_norm_p(q, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("lp_norm_p homogeneity") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(12));
    const double p = 0.1 + 0.8 * rng.uniform();
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.normal();
    const double c = -3.0 + 6.0 * rng.uniform();
    const double lhs = lpball::lp_norm_p((c * x).eval(), p);
    const double rhs = std::pow(std::abs(c), p) * lpball::lp_norm_p(x, p);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("lp_norm_p dominates the p-th power of the euclidean norm") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(10));
    const double p = 0.1 + 0.8 * rng.uniform();
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.normal();
    CHECK(lpball::lp_norm_p(x, p) >= std::pow(x.norm(), p) - 1e-12);

    Vec onehot = Vec::Zero(n);
    onehot[static_cast<int>(rng.below(n))] = rng.normal();
    const double lhs = lpball::lp_norm_p(onehot, p);
    CHECK(lhs == doctest::Approx(std::pow(onehot.norm(), p)).epsilon(1e-12));
  }
}

TEST_CASE("classify_position cases and exhaustiveness") {
  LpBall<double> ball(0.5, 1.0);

  Vec boundary(1);
  boundary << 1.0;  // |1|^0.5 = 1 = gamma
  CHECK(lpball::classify_position(boundary, ball, 1e-8) == Position::Boundary);

  Vec zero = Vec::Zero(4);
  CHECK(lpball::classify_position(zero, ball, 1e-8) == Position::Interior);

  Vec outside(1);
  outside << 4.0;  // |4|^0.5 = 2 = gamma + 1
  CHECK(lpball::classify_position(outside, ball, 1e-8) == Position::Infeasible);

  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const double lpn = 2.0 * rng.uniform();
    const Position pos = lpball::classify_norm_p(lpn, ball, 1e-8);
    const int matches = (pos == Position::Interior) + (pos == Position::Boundary) +
                        (pos == Position::Infeasible);
    CHECK(matches == 1);
    if (std::abs(lpn - ball.gamma) <= 1e-8) CHECK(pos == Position::Boundary);
    if (lpn < ball.gamma - 1e-8) CHECK(pos == Position::Interior);
    if (lpn > ball.gamma + 1e-8) CHECK(pos == Position::Infeasible);
  }
}

TEST_CASE("LpBall validates parameters") {
  CHECK_THROWS_AS(LpBall<double>(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(LpBall<double>(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(LpBall<double>(0.5, 0.0), std::invalid_argument);
  CHECK(LpBall<double>(0.5, 4.0).vertex_magnitude() == doctest::Approx(16.0));
}

TEST_CASE("SolverConfig validation") {
  lpball::SolverConfig<double> cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.eta = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.eta = 0.5;
  cfg.beta = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = lpball::SolverConfig<double>::for_lipschitz(4.0);
  CHECK(cfg.beta == doctest::Approx(0.125));
}

TEST_CASE("snap_small_to_zero and support helpers") {
  Vec x(4);
  x << 1e-15, -2.0, 0.0, 5e-15;
  lpball::snap_small_to_zero(x, 1e-14);
  CHECK(x[0] == 0.0);
  CHECK(x[3] == 0.0);
  CHECK(x[1] == -2.0);
  CHECK(lpball::support_size(x) == 1);
  CHECK(lpball::support_indices(x) == std::vector<lpball::Index>{1});
}

TEST_CASE("rng streams are deterministic and distinct") {
  Rng a(42, 1), b(42, 1), c(42, 2);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a.bits(), vb = b.bits(), vc = c.bits();
    all_equal = all_equal && (va == vb);
    any_diff = any_diff || (va != vc);
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("rng below is in range") {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) CHECK(rng.below(7) < 7);
}
