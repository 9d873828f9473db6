// Copyright (c) 2026 The lpball Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lpball/core.hpp"

namespace lpball {

/// Result of the boundary projection subproblem: the projected point, the
/// multiplier lambda of the budget row in the transformed coordinates, its
/// rescaling xi = lambda / beta, and the decrease of the proximal objective.
template <typename Scalar>
struct ProjectionResult {
  Vector<Scalar> x_next;
  Scalar lambda = Scalar(0);
  Scalar xi = Scalar(0);
  Scalar decrease = Scalar(0);
};

/// Exact minimizer of 1/2 ||y - v||^2 subject to y >= 0 and w'y <= c, with all
/// w_i > 0. The KKT system gives y_i = max(v_i - lambda w_i, 0); when the
/// budget binds, lambda is found by a descending scan over the breakpoints
/// v_i / w_i, which satisfies the constraint exactly up to roundoff.
/// Returns (y, lambda).
template <typename Scalar>
std::pair<Vector<Scalar>, Scalar> weighted_nonneg_l1_project(const Vector<Scalar>& v,
                                                             const Vector<Scalar>& w, Scalar c) {
  const Index n = v.size();
  if (w.size() != n)
    throw std::invalid_argument("weighted_nonneg_l1_project: v and w sizes differ");
  if (!(c >= Scalar(0)))
    throw std::invalid_argument("weighted_nonneg_l1_project: budget must be nonnegative");
  for (Index i = 0; i < n; ++i)
    if (!(w[i] > Scalar(0)))
      throw std::invalid_argument("weighted_nonneg_l1_project: weights must be positive");

  if (c == Scalar(0)) {
    Scalar lambda(0);
    for (Index i = 0; i < n; ++i)
      if (v[i] > Scalar(0)) lambda = std::max(lambda, v[i] / w[i]);
    return {Vector<Scalar>::Zero(n), lambda};
  }

  Vector<Scalar> y = v.cwiseMax(Scalar(0));
  if (w.dot(y) <= c) return {std::move(y), Scalar(0)};

  struct Breakpoint {
    Scalar t;
    Index i;
  };
  std::vector<Breakpoint> bps;
  bps.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    if (v[i] > Scalar(0)) bps.push_back({v[i] / w[i], i});
  std::sort(bps.begin(), bps.end(), [](const Breakpoint& a, const Breakpoint& b) {
    return a.t != b.t ? a.t > b.t : a.i < b.i;
  });

  // Largest prefix whose piecewise-linear root still lies below its last
  // breakpoint; the scan condition is monotone so the first failure ends it.
  Scalar sum_wv(0), sum_ww(0), lambda(0);
  for (const Breakpoint& bp : bps) {
    sum_wv += w[bp.i] * v[bp.i];
    sum_ww += w[bp.i] * w[bp.i];
    const Scalar cand = (sum_wv - c) / sum_ww;
    if (bp.t > cand)
      lambda = cand;
    else
      break;
  }

  y = (v - lambda * w).cwiseMax(Scalar(0));
  return {std::move(y), lambda};
}

/// Euclidean projection onto {x : ||x||_1 <= radius} by sign splitting on top
/// of the weighted nonnegative projection with unit weights.
template <typename Scalar>
Vector<Scalar> l1_ball_project(const Vector<Scalar>& v, Scalar radius) {
  if (!(radius > Scalar(0))) throw std::invalid_argument("l1_ball_project: radius must be positive");
  if (v.template lpNorm<1>() <= radius) return v;
  const Vector<Scalar> ones = Vector<Scalar>::Ones(v.size());
  auto [y, lambda] = weighted_nonneg_l1_project<Scalar>(v.cwiseAbs(), ones, radius);
  (void)lambda;
  Vector<Scalar> out(v.size());
  for (Index i = 0; i < v.size(); ++i) out[i] = sign_of(v[i]) * y[i];
  return out;
}

/// Keeps the s entries of largest magnitude (ties broken toward the smaller
/// index) and zeros the rest.
template <typename Scalar>
Vector<Scalar> hard_threshold(const Vector<Scalar>& v, Index s) {
  const Index n = v.size();
  if (s < 0 || s > n) throw std::invalid_argument("hard_threshold: s must lie in [0, n]");
  if (s == n) return v;
  Vector<Scalar> out = Vector<Scalar>::Zero(n);
  if (s == 0) return out;
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index(0));
  std::nth_element(idx.begin(), idx.begin() + (s - 1), idx.end(), [&](Index a, Index b) {
    const Scalar fa = std::abs(v[a]), fb = std::abs(v[b]);
    return fa != fb ? fa > fb : a < b;
  });
  for (Index j = 0; j < s; ++j) out[idx[static_cast<std::size_t>(j)]] = v[idx[static_cast<std::size_t>(j)]];
  return out;
}

/// Gradient projection step from a boundary point x_k: project
/// u = x_k - beta * grad onto the weighted l1 linearization of the lp ball
/// restricted to the sign cone of x_k, keeping the zero coordinates pinned.
/// The budget constant is p * gamma analytically (equal to sum_i w_i |x_k_i|
/// on the boundary), which avoids cancellation in the constraint.
template <typename Scalar>
ProjectionResult<Scalar> solve_p2(const Vector<Scalar>& x_k, const Vector<Scalar>& grad,
                                  const LpBall<Scalar>& ball, Scalar beta, Scalar zero_tol) {
  if (!(beta > Scalar(0))) throw std::invalid_argument("solve_p2: beta must be positive");
  if (grad.size() != x_k.size()) throw std::invalid_argument("solve_p2: size mismatch");

  std::vector<Index> inactive;
  for (Index i = 0; i < x_k.size(); ++i)
    if (std::abs(x_k[i]) > zero_tol) inactive.push_back(i);
  if (inactive.empty())
    throw std::runtime_error("solve_p2: boundary point with empty support");

  const Index r = static_cast<Index>(inactive.size());
  Vector<Scalar> v(r), w(r);
  for (Index j = 0; j < r; ++j) {
    const Index i = inactive[static_cast<std::size_t>(j)];
    const Scalar sgn = sign_of(x_k[i]);
    v[j] = sgn * (x_k[i] - beta * grad[i]);
    w[j] = ball.p * std::pow(std::abs(x_k[i]), ball.p - Scalar(1));
  }
  const Scalar budget = ball.p * ball.gamma;

  auto [y, lambda] = weighted_nonneg_l1_project<Scalar>(v, w, budget);

  ProjectionResult<Scalar> result;
  result.x_next = Vector<Scalar>::Zero(x_k.size());
  for (Index j = 0; j < r; ++j) {
    const Index i = inactive[static_cast<std::size_t>(j)];
    result.x_next[i] = sign_of(x_k[i]) * y[j];
  }
  result.lambda = lambda;
  result.xi = lambda / beta;

  const Vector<Scalar> delta = result.x_next - x_k;
  result.decrease = -grad.dot(delta) - delta.squaredNorm() / (Scalar(2) * beta);
  return result;
}

}  // namespace lpball
