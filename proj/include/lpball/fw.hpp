// Copyright (c) 2026 The lpball Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lpball/core.hpp"

namespace lpball {

template <typename Scalar>
struct FWStep {
  Vector<Scalar> s;
  Scalar gap = Scalar(0);          // grad' (x - s) >= 0
  Scalar alpha_trial = Scalar(0);  // Armijo-safe trial stepsize
  Scalar alpha_used = Scalar(0);
  bool hit_boundary = false;
};

/// Global minimizer of grad's over the lp ball: a one-hot vector of magnitude
/// gamma^{1/p} at the largest |grad_i|, signed against the gradient. Ties go
/// to the smallest index. A zero gradient has no distinguished vertex; the
/// caller should treat that point as stationary.
template <typename Scalar>
Vector<Scalar> fw_direction(const Vector<Scalar>& grad, const LpBall<Scalar>& ball) {
  Index imax = 0;
  Scalar best(0);
  for (Index i = 0; i < grad.size(); ++i) {
    const Scalar a = std::abs(grad[i]);
    if (a > best) {
      best = a;
      imax = i;
    }
  }
  if (best == Scalar(0))
    throw std::invalid_argument("fw_direction: zero gradient (stationary point)");
  Vector<Scalar> s = Vector<Scalar>::Zero(grad.size());
  s[imax] = -sign_of(grad[imax]) * ball.vertex_magnitude();
  return s;
}

/// Linearized gap grad' (x - s); nonnegative when s solves the vertex
/// subproblem, and an upper bound on f(x) - f* for convex f.
template <typename Scalar>
Scalar fw_gap(const Vector<Scalar>& grad, const Vector<Scalar>& x, const Vector<Scalar>& s) {
  return grad.dot(x - s);
}

/// Trial stepsize min(1, 2 (1-eta) gap / (L ||d||^2)); the Armijo condition
/// f(x) - f(x + a d) >= eta * a * gap holds for every a up to this value.
template <typename Scalar>
Scalar trial_stepsize(Scalar gap, const Vector<Scalar>& d, Scalar lipschitz, Scalar eta) {
  if (!(gap > Scalar(0))) throw std::invalid_argument("trial_stepsize: gap must be positive");
  if (!(lipschitz > Scalar(0))) throw std::invalid_argument("trial_stepsize: L must be positive");
  if (!(eta > Scalar(0)) || !(eta < Scalar(1)))
    throw std::invalid_argument("trial_stepsize: eta must lie in (0, 1)");
  const Scalar dnorm2 = d.squaredNorm();
  if (dnorm2 == Scalar(0))
    throw std::invalid_argument("trial_stepsize: zero direction (stationary point)");
  return std::min(Scalar(1), Scalar(2) * (Scalar(1) - eta) * gap / (lipschitz * dnorm2));
}

/// Root of phi(a) = ||x + a (s - x)||_p^p - gamma on (0, alpha_hi] by
/// bisection, given phi(0) < 0 and phi(alpha_hi) >= 0. phi is evaluated as
/// the plain sum over the coordinates the segment actually moves (s is
/// one-hot, so that set is small), the rest contributing a constant.
/// Stops at |phi| <= tol or after 200 halvings.
template <typename Scalar>
Scalar boundary_bisection(const Vector<Scalar>& x, const Vector<Scalar>& s, Scalar alpha_hi,
                          const LpBall<Scalar>& ball, Scalar tol) {
  if (!(alpha_hi > Scalar(0)))
    throw std::invalid_argument("boundary_bisection: alpha_hi must be positive");
  if (!(tol > Scalar(0))) throw std::invalid_argument("boundary_bisection: tol must be positive");
  if (s.size() != x.size()) throw std::invalid_argument("boundary_bisection: size mismatch");

  std::vector<Index> moving;
  Scalar base(0);
  for (Index i = 0; i < x.size(); ++i) {
    if (s[i] != x[i]) {
      moving.push_back(i);
    } else if (x[i] != Scalar(0)) {
      base += std::pow(std::abs(x[i]), ball.p);
    }
  }
  const auto phi = [&](Scalar alpha) {
    Scalar acc = base;
    for (Index i : moving) {
      const Scalar a = std::abs(x[i] + alpha * (s[i] - x[i]));
      if (a != Scalar(0)) acc += std::pow(a, ball.p);
    }
    return acc - ball.gamma;
  };

  if (!(phi(Scalar(0)) < Scalar(0)))
    throw std::invalid_argument("boundary_bisection: x is not strictly inside the ball");
  if (phi(alpha_hi) < Scalar(0))
    throw std::invalid_argument("boundary_bisection: segment stays feasible up to alpha_hi");

  Scalar lo(0), hi(alpha_hi);
  for (int it = 0; it < 200; ++it) {
    const Scalar mid = (lo + hi) / Scalar(2);
    const Scalar pm = phi(mid);
    if (std::abs(pm) <= tol) return mid;
    if (pm > Scalar(0))
      hi = mid;
    else
      lo = mid;
  }
  return (lo + hi) / Scalar(2);
}

}  // namespace lpball
