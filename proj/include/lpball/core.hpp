// Copyright (c) 2026 The lpball Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpball {

inline constexpr const char* kVersion = "0.1.0";

template <typename Scalar>
using Vector = Eigen::Vector<Scalar, Eigen::Dynamic>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Index = Eigen::Index;

template <typename Scalar>
inline Scalar sign_of(Scalar x) {
  return x > Scalar(0) ? Scalar(1) : (x < Scalar(0) ? Scalar(-1) : Scalar(0));
}

/// The nonconvex lp ball {x : sum_i |x_i|^p <= gamma} with exponent 0 < p < 1.
template <typename Scalar>
struct LpBall {
  Scalar p;
  Scalar gamma;

  LpBall(Scalar p_in, Scalar gamma_in) : p(p_in), gamma(gamma_in) {
    if (!(p > Scalar(0)) || !(p < Scalar(1)))
      throw std::invalid_argument("LpBall: p must lie in (0, 1)");
    if (!(gamma > Scalar(0)))
      throw std::invalid_argument("LpBall: gamma must be positive");
  }

  /// Magnitude gamma^{1/p} of the nonzero entry of a one-hot boundary point.
  Scalar vertex_magnitude() const { return std::pow(gamma, Scalar(1) / p); }
};

/// sum_i |x_i|^p. Zero entries contribute exactly zero.
template <typename Derived>
typename Derived::Scalar lp_norm_p(const Eigen::MatrixBase<Derived>& x,
                                   typename Derived::Scalar p) {
  using Scalar = typename Derived::Scalar;
  Scalar acc(0);
  for (Index i = 0; i < x.size(); ++i) {
    const Scalar a = std::abs(x.coeff(i));
    if (a != Scalar(0)) acc += std::pow(a, p);
  }
  return acc;
}

enum class Position { Interior, Boundary, Infeasible };

inline const char* to_string(Position pos) {
  switch (pos) {
    case Position::Interior: return "Interior";
    case Position::Boundary: return "Boundary";
    default: return "Infeasible";
  }
}

template <typename Scalar>
Position classify_norm_p(Scalar lpnorm, const LpBall<Scalar>& ball, Scalar boundary_tol) {
  if (std::abs(lpnorm - ball.gamma) <= boundary_tol) return Position::Boundary;
  return lpnorm < ball.gamma ? Position::Interior : Position::Infeasible;
}

template <typename Derived, typename Scalar>
Position classify_position(const Eigen::MatrixBase<Derived>& x, const LpBall<Scalar>& ball,
                           Scalar boundary_tol) {
  return classify_norm_p(lp_norm_p(x, Scalar(ball.p)), ball, boundary_tol);
}

/// Coordinates with |x_i| <= zero_tol become exact zeros, keeping the
/// active/inactive split well defined (the weights |x_i|^{p-1} blow up at 0).
template <typename Scalar>
void snap_small_to_zero(Vector<Scalar>& x, Scalar zero_tol) {
  for (Index i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) <= zero_tol) x[i] = Scalar(0);
}

template <typename Scalar>
Index support_size(const Vector<Scalar>& x) {
  Index n = 0;
  for (Index i = 0; i < x.size(); ++i)
    if (x[i] != Scalar(0)) ++n;
  return n;
}

template <typename Scalar>
std::vector<Index> support_indices(const Vector<Scalar>& x) {
  std::vector<Index> idx;
  for (Index i = 0; i < x.size(); ++i)
    if (x[i] != Scalar(0)) idx.push_back(i);
  return idx;
}

template <typename Scalar>
struct SolverConfig {
  Scalar eta = Scalar(0.5);            // Armijo slope fraction, in (0,1)
  Scalar beta = Scalar(0.5);           // projection stepsize, must stay below 1/L
  Scalar boundary_tol = Scalar(1e-8);  // |lp_norm_p(x) - gamma| window for the boundary
  Scalar step_tol = Scalar(1e-5);      // stop when a projection step moves less than this
  Scalar gap_tol = Scalar(1e-5);       // stop when the linearized gap falls below this
  Scalar bisection_tol = Scalar(1e-8);
  Scalar zero_tol = Scalar(1e-14);
  long max_iter = 100000;

  void validate() const {
    if (!(eta > Scalar(0)) || !(eta < Scalar(1)))
      throw std::invalid_argument("SolverConfig: eta must lie in (0, 1)");
    if (!(beta > Scalar(0)))
      throw std::invalid_argument("SolverConfig: beta must be positive");
    if (!(boundary_tol > Scalar(0)) || !(step_tol > Scalar(0)) || !(gap_tol > Scalar(0)) ||
        !(bisection_tol > Scalar(0)) || !(zero_tol > Scalar(0)))
      throw std::invalid_argument("SolverConfig: tolerances must be positive");
    if (max_iter <= 0) throw std::invalid_argument("SolverConfig: max_iter must be positive");
  }

  static SolverConfig for_lipschitz(Scalar lipschitz) {
    SolverConfig cfg;
    cfg.beta = Scalar(0.5) / lipschitz;
    return cfg;
  }
};

enum class Branch { FWInterior, FWBoundaryHit, Projection };

inline const char* to_string(Branch b) {
  switch (b) {
    case Branch::FWInterior: return "FWInterior";
    case Branch::FWBoundaryHit: return "FWBoundaryHit";
    default: return "Projection";
  }
}

enum class TerminationReason { BoundaryStall, FWGapSmall, MaxIter };

inline const char* to_string(TerminationReason r) {
  switch (r) {
    case TerminationReason::BoundaryStall: return "BoundaryStall";
    case TerminationReason::FWGapSmall: return "FWGapSmall";
    default: return "MaxIter";
  }
}

/// One row of the iteration trace. Values describe the transition from x^k to
/// x^{k+1}: f_value, lpnorm_p and support_size are taken at the new iterate,
/// the gap / decrease quantities at the point the step was computed from.
template <typename Scalar>
struct IterateRecord {
  long k = 0;
  Branch branch = Branch::FWInterior;
  Scalar f_value = Scalar(0);
  Scalar stepsize = Scalar(0);              // alpha on FW branches, beta on projections
  Scalar step_norm = Scalar(0);             // ||x^{k+1} - x^k||_2
  std::optional<Scalar> fw_gap;             // FW branches only
  std::optional<Scalar> proj_decrease;      // projection branches only
  std::optional<Scalar> residual_s2;        // projection branches only
  Scalar lpnorm_p = Scalar(0);
  Index support_size = 0;
};

}  // namespace lpball
