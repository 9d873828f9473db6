// Copyright (c) 2026 The lpball Authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lpball/rng.hpp"
#include "lpball/solver.hpp"
#include "lpball/wproj.hpp"
#include "oracles.hpp"

using lpball::Index;
using lpball::LpBall;
using lpball::Rng;
using Vec = lpball::Vector<double>;

TEST_CASE("weighted projection hand examples") {
  Vec v(2), w(2);
  v << 0.9, 0.5;
  w << 1.0, 1.0;
  auto [y, lambda] = lpball::weighted_nonneg_l1_project(v, w, 1.0);
  CHECK(y[0] == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(y[1] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(lambda == doctest::Approx(0.2).epsilon(1e-12));

  v << 0.1, 0.1;
  auto [y2, lambda2] = lpball::weighted_nonneg_l1_project(v, w, 1.0);
  CHECK((y2 - v).norm() == 0.0);
  CHECK(lambda2 == 0.0);
}

TEST_CASE("weighted projection rejects bad input") {
  Vec v(2), w(2);
  v << 1.0, 1.0;
  w << 1.0, -1.0;
  CHECK_THROWS_AS(lpball::weighted_nonneg_l1_project(v, w, 1.0), std::invalid_argument);
  w << 1.0, 1.0;
  CHECK_THROWS_AS(lpball::weighted_nonneg_l1_project(v, w, -1.0), std::invalid_argument);
}

TEST_CASE("weighted projection matches the brute-force oracle") {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(10));
    Vec v(n), w(n);
    for (int i = 0; i < n; ++i) {
      v[i] = 2.0 * rng.normal();
      w[i] = 0.05 + 2.0 * rng.uniform();
    }
    const double c = 2.0 * rng.uniform();
    auto [y, lambda] = lpball::weighted_nonneg_l1_project(v, w, c);
    auto [yo, lo] = lpball::testing::brute_nonneg_weighted_l1(v, w, c);
    CHECK((y - yo).lpNorm<Eigen::Infinity>() <= 1e-8);
    CHECK(lambda == doctest::Approx(lo).epsilon(1e-7));
    // complementary slackness and exact nonnegativity
    CHECK(lambda * (c - w.dot(y)) <= 1e-10);
    CHECK(lambda * (c - w.dot(y)) >= -1e-10);
    CHECK((y.array() >= 0.0).all());
  }
}

TEST_CASE("weighted projection scaling invariance") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(8));
    Vec v(n), w(n);
    for (int i = 0; i < n; ++i) {
      v[i] = 2.0 * rng.normal();
      w[i] = 0.1 + rng.uniform();
    }
    const double c = 1.5 * rng.uniform();
    const double t = 0.1 + 5.0 * rng.uniform();
    auto [y, l] = lpball::weighted_nonneg_l1_project(v, w, c);
    auto [yt, lt] = lpball::weighted_nonneg_l1_project<double>(t * v, w, t * c);
    (void)l;
    (void)lt;
    CHECK((yt - t * y).lpNorm<Eigen::Infinity>() <= 1e-9 * (1.0 + t));
  }
}

TEST_CASE("weighted projection with zero budget") {
  Vec v(3), w(3);
  v << 1.0, -2.0, 3.0;
  w << 1.0, 1.0, 2.0;
  auto [y, lambda] = lpball::weighted_nonneg_l1_project(v, w, 0.0);
  CHECK(y.norm() == 0.0);
  CHECK(lambda == doctest::Approx(1.5));  // max v_i / w_i over positive entries
}

TEST_CASE("l1 ball projection") {
  Vec inside(2);
  inside << 0.3, -0.2;
  CHECK((lpball::l1_ball_project(inside, 1.0) - inside).norm() == 0.0);

  Vec axis(2);
  axis << 2.0, 0.0;
  Vec proj = lpball::l1_ball_project(axis, 1.0);
  CHECK(proj[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(proj[1] == 0.0);

  CHECK_THROWS_AS(lpball::l1_ball_project(axis, 0.0), std::invalid_argument);

  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(10));
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = 2.5 * rng.normal();
    const double radius = 0.2 + 3.0 * rng.uniform();
    const Vec got = lpball::l1_ball_project(v, radius);
    const Vec want = lpball::testing::brute_l1_ball(v, radius);
    CHECK((got - want).lpNorm<Eigen::Infinity>() <= 1e-8);
    CHECK(got.lpNorm<1>() <= radius + 1e-10);
  }
}

TEST_CASE("hard threshold") {
  Vec v(3);
  v << 3.0, -1.0, 2.0;
  Vec kept = lpball::hard_threshold(v, 2);
  CHECK(kept[0] == 3.0);
  CHECK(kept[1] == 0.0);
  CHECK(kept[2] == 2.0);
  CHECK((lpball::hard_threshold(v, 3) - v).norm() == 0.0);
  CHECK(lpball::hard_threshold(v, 0).norm() == 0.0);
  CHECK_THROWS_AS(lpball::hard_threshold(v, 4), std::invalid_argument);

  // ties keep the smaller index
  Vec ties(4);
  ties << 1.0, -1.0, 1.0, 1.0;
  Vec kept2 = lpball::hard_threshold(ties, 2);
  CHECK(kept2[0] == 1.0);
  CHECK(kept2[1] == -1.0);
  CHECK(kept2[2] == 0.0);
  CHECK(kept2[3] == 0.0);
}

TEST_CASE("solve_p2 one-dimensional hand example") {
  Vec x_k(1), grad(1);
  x_k << 1.0;
  grad << -2.0;
  LpBall<double> ball(0.5, 1.0);
  auto res = lpball::solve_p2(x_k, grad, ball, 0.5, 1e-14);
  CHECK(res.x_next[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.lambda == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(res.xi == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("solve_p2 with zero gradient is a fixed point") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(8));
    const double p = 0.3 + 0.5 * rng.uniform();
    Vec x_k(n);
    for (int i = 0; i < n; ++i) x_k[i] = rng.normal();
    const double gamma = lpball::lp_norm_p(x_k, p);
    LpBall<double> ball(p, gamma);
    auto res = lpball::solve_p2(x_k, Vec::Zero(n).eval(), ball, 0.4, 1e-14);
    CHECK((res.x_next - x_k).lpNorm<Eigen::Infinity>() <= 1e-12);
    CHECK(res.lambda == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(res.decrease == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("solve_p2 matches the brute-force oracle on random boundary points") {
  Rng rng(314);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(8));
    const double p = 0.25 + 0.6 * rng.uniform();
    Vec x_k(n);
    for (int i = 0; i < n; ++i) x_k[i] = rng.normal();
    // occasionally zero out some coordinates so the pinned set is exercised
    for (int i = 0; i < n; ++i)
      if (rng.uniform() < 0.3) x_k[i] = 0.0;
    if (x_k.norm() == 0.0) x_k[0] = 1.0;
    const double gamma = lpball::lp_norm_p(x_k, p);
    LpBall<double> ball(p, gamma);
    Vec grad(n);
    for (int i = 0; i < n; ++i) grad[i] = 2.0 * rng.normal();
    const double beta = 0.05 + 0.5 * rng.uniform();

    auto res = lpball::solve_p2(x_k, grad, ball, beta, 1e-14);
    const Vec want = lpball::testing::brute_p2(x_k, grad, p, gamma, beta);
    CHECK((res.x_next - want).lpNorm<Eigen::Infinity>() <= 1e-8);
  }
}

TEST_CASE("solve_p2 feasibility, support shrinkage and decrease identity") {
  Rng rng(2718);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(10));
    const double p = 0.25 + 0.6 * rng.uniform();
    Vec x_k(n);
    for (int i = 0; i < n; ++i) x_k[i] = rng.normal();
    const double gamma = lpball::lp_norm_p(x_k, p);
    LpBall<double> ball(p, gamma);
    Vec grad(n);
    for (int i = 0; i < n; ++i) grad[i] = 3.0 * rng.normal();
    const double beta = 0.05 + 0.5 * rng.uniform();

    auto res = lpball::solve_p2(x_k, grad, ball, beta, 1e-14);

    // linearized budget, sign cone, pinned zeros
    double lin = 0.0;
    for (int i = 0; i < n; ++i) {
      if (x_k[i] == 0.0) {
        CHECK(res.x_next[i] == 0.0);
        continue;
      }
      const double w = p * std::pow(std::abs(x_k[i]), p - 1.0);
      lin += lpball::sign_of(x_k[i]) * w * (res.x_next[i] - x_k[i]);
      CHECK(lpball::sign_of(x_k[i]) * res.x_next[i] >= 0.0);
    }
    CHECK(lin <= 1e-12 * p * gamma + 1e-12);

    // feasible for the lp ball itself
    CHECK(lpball::lp_norm_p(res.x_next, p) <= gamma + 1e-8);

    // support never grows, signs never flip
    for (int i = 0; i < n; ++i)
      if (res.x_next[i] != 0.0) CHECK(lpball::sign_of(res.x_next[i]) == lpball::sign_of(x_k[i]));

    // decrease identity against the direct proximal objective difference
    const Vec u = x_k - beta * grad;
    const double p_old = (x_k - u).squaredNorm() / (2.0 * beta);
    const double p_new = (res.x_next - u).squaredNorm() / (2.0 * beta);
    CHECK(res.decrease == doctest::Approx(p_old - p_new).epsilon(1e-9));
    CHECK(res.decrease >= -1e-12);
    CHECK(res.decrease >= (res.x_next - x_k).squaredNorm() / (2.0 * beta) - 1e-9);
  }
}

TEST_CASE("solve_p2 fixed point certifies stationarity") {
  // If the projection returns x_k itself, the pair (x_k, xi) satisfies the
  // boundary first-order conditions.
  Rng rng(13);
  int fixed_points = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(6));
    const double p = 0.3 + 0.5 * rng.uniform();
    Vec x_k(n);
    for (int i = 0; i < n; ++i) x_k[i] = rng.normal();
    const double gamma = lpball::lp_norm_p(x_k, p);
    LpBall<double> ball(p, gamma);

    // gradient aligned with the constraint normal so x_k is stationary
    const double xi_true = 0.5 + rng.uniform();
    Vec grad(n);
    for (int i = 0; i < n; ++i)
      grad[i] = -xi_true * p * std::pow(std::abs(x_k[i]), p - 1.0) * lpball::sign_of(x_k[i]);

    auto res = lpball::solve_p2(x_k, grad, ball, 0.3, 1e-14);
    if ((res.x_next - x_k).norm() <= 1e-10) {
      ++fixed_points;
      double viol = 0.0;
      for (int i = 0; i < n; ++i)
        viol = std::max(viol, std::abs(grad[i] + res.xi * p *
                                                     std::pow(std::abs(x_k[i]), p - 1.0) *
                                                     lpball::sign_of(x_k[i])));
      CHECK(viol <= 1e-8);
      CHECK(lpball::residual_s2(x_k, res.x_next, res.xi, grad, ball) <= 1e-8);
    }
  }
  CHECK(fixed_points == 300);  // constructed gradients always make x_k stationary
}

TEST_CASE("solve_p2 rejects empty support") {
  Vec x_k = Vec::Zero(3), grad = Vec::Zero(3);
  LpBall<double> ball(0.5, 1.0);
  CHECK_THROWS_AS(lpball::solve_p2(x_k, grad, ball, 0.5, 1e-14), std::runtime_error);
}
