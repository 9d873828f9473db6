// Copyright (c) 2026 The lpball Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "lpball/core.hpp"
#include "lpball/rng.hpp"

namespace lpball {

/// Smooth objective interface: value, gradient and a Lipschitz constant of
/// the gradient. Oracles are immutable after construction and safe to
/// evaluate concurrently.
template <typename Scalar>
class ObjectiveOracle {
 public:
  virtual ~ObjectiveOracle() = default;
  virtual Scalar value(const Vector<Scalar>& x) const = 0;
  virtual void gradient(const Vector<Scalar>& x, Vector<Scalar>& g) const = 0;
  virtual Scalar lipschitz() const = 0;

  Vector<Scalar> gradient(const Vector<Scalar>& x) const {
    Vector<Scalar> g;
    gradient(x, g);
    return g;
  }
};

/// f(x) = 1/2 ||x - y||_2^2, the Euclidean distance to a fixed target; L = 1.
template <typename Scalar>
class QuadraticDistance final : public ObjectiveOracle<Scalar> {
 public:
  using ObjectiveOracle<Scalar>::gradient;

  explicit QuadraticDistance(Vector<Scalar> y) : y_(std::move(y)) {}

  Scalar value(const Vector<Scalar>& x) const override {
    return Scalar(0.5) * (x - y_).squaredNorm();
  }
  void gradient(const Vector<Scalar>& x, Vector<Scalar>& g) const override { g = x - y_; }
  Scalar lipschitz() const override { return Scalar(1); }

  const Vector<Scalar>& target() const { return y_; }

 private:
  Vector<Scalar> y_;
};

/// Power iteration estimate of lambda_max(A'A), the Lipschitz constant of the
/// least-squares gradient. Works matrix-free with two matvecs per sweep and a
/// deterministic seeded start, so repeated runs give identical estimates.
/// Converges from below; a zero matrix sets `degenerate` and returns 0.
template <typename Scalar>
Scalar power_method_lmax(const Matrix<Scalar>& A, int max_iters, Scalar tol, bool& degenerate) {
  if (A.size() == 0) throw std::invalid_argument("power_method_lmax: empty matrix");
  if (max_iters < 1) throw std::invalid_argument("power_method_lmax: need at least one iteration");
  degenerate = false;

  Rng rng(0x70776d73ULL);  // fixed internal stream
  Vector<Scalar> v(A.cols());
  for (Index i = 0; i < v.size(); ++i) v[i] = Scalar(rng.normal());
  v /= v.norm();

  Vector<Scalar> z(A.rows()), w(A.cols());
  Scalar lam_prev(0), lam(0);
  for (int it = 0; it < max_iters; ++it) {
    z.noalias() = A * v;
    lam = z.squaredNorm();  // Rayleigh quotient of A'A at the unit vector v
    w.noalias() = A.transpose() * z;
    const Scalar wn = w.norm();
    if (wn == Scalar(0)) {
      degenerate = true;
      return Scalar(0);
    }
    v = w / wn;
    if (it > 0 && std::abs(lam - lam_prev) <= tol * std::max(Scalar(1), std::abs(lam))) break;
    lam_prev = lam;
  }
  return lam;
}

template <typename Scalar>
Scalar power_method_lmax(const Matrix<Scalar>& A, int max_iters, Scalar tol) {
  bool degenerate = false;
  return power_method_lmax(A, max_iters, tol, degenerate);
}

/// f(x) = 1/2 ||A x - b||_2^2. The gradient A'(Ax - b) is formed from two
/// matrix-vector products; A'A is never materialized. The cached Lipschitz
/// constant is the power-method estimate inflated by 1%, covering the
/// finite-iteration bias of the estimate (which approaches from below).
template <typename Scalar>
class LeastSquares final : public ObjectiveOracle<Scalar> {
 public:
  using ObjectiveOracle<Scalar>::gradient;

  LeastSquares(Matrix<Scalar> A, Vector<Scalar> b) : A_(std::move(A)), b_(std::move(b)) {
    if (A_.rows() != b_.size())
      throw std::invalid_argument("LeastSquares: A rows must match b length");
    bool degenerate = false;
    lmax_ = power_method_lmax(A_, 1500, Scalar(1e-11), degenerate);
    lipschitz_ = degenerate ? Scalar(0) : Scalar(1.01) * lmax_;
  }

  Scalar value(const Vector<Scalar>& x) const override {
    return Scalar(0.5) * (A_ * x - b_).squaredNorm();
  }
  void gradient(const Vector<Scalar>& x, Vector<Scalar>& g) const override {
    Vector<Scalar> r = A_ * x;
    r -= b_;
    g.noalias() = A_.transpose() * r;
  }
  Scalar lipschitz() const override { return lipschitz_; }

  Scalar lmax_estimate() const { return lmax_; }
  const Matrix<Scalar>& A() const { return A_; }
  const Vector<Scalar>& b() const { return b_; }

 private:
  Matrix<Scalar> A_;
  Vector<Scalar> b_;
  Scalar lmax_ = Scalar(0);
  Scalar lipschitz_ = Scalar(0);
};

/// Largest coordinatewise discrepancy between the oracle gradient and central
/// finite differences of the oracle value at x.
template <typename Scalar>
Scalar finite_diff_check(const ObjectiveOracle<Scalar>& obj, const Vector<Scalar>& x, Scalar h) {
  if (!(h > Scalar(0))) throw std::invalid_argument("finite_diff_check: h must be positive");
  const Vector<Scalar> g = obj.gradient(x);
  Vector<Scalar> xp = x, xm = x;
  Scalar worst(0);
  for (Index i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + h;
    xm[i] = x[i] - h;
    const Scalar fd = (obj.value(xp) - obj.value(xm)) / (Scalar(2) * h);
    worst = std::max(worst, std::abs(fd - g[i]));
    xp[i] = x[i];
    xm[i] = x[i];
  }
  return worst;
}

}  // namespace lpball
