// Copyright (c) 2026 The lpball Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cassert>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lpball/core.hpp"
#include "lpball/fw.hpp"
#include "lpball/objectives.hpp"
#include "lpball/wproj.hpp"

namespace lpball {

template <typename Scalar>
struct SolveReport {
  Vector<Scalar> x_final;
  Scalar f_initial = Scalar(0);
  Scalar f_final = Scalar(0);
  TerminationReason reason = TerminationReason::MaxIter;
  std::vector<IterateRecord<Scalar>> trace;  // trace.size() == iterations
  long iterations = 0;
  double wall_time_s = 0.0;
  std::optional<Scalar> residual_s2;  // at the final projection step, if any
  std::optional<Scalar> fw_gap_final;
  std::optional<Scalar> xi_final;  // multiplier from the final projection step
};

/// Squared stationarity residual of a projection step, measured on the
/// surviving support: || p xi sgn(x^k) |x^k|^{p-1} + grad f(x^k) ||_2^2 over
/// the nonzeros of x_next. By the projection KKT system this equals
/// (1/beta^2) || (x^k - x_next) restricted to that support ||^2.
template <typename Scalar>
Scalar residual_s2(const Vector<Scalar>& x_k, const Vector<Scalar>& x_next, Scalar xi,
                   const Vector<Scalar>& grad, const LpBall<Scalar>& ball) {
  Scalar acc(0);
  for (Index i = 0; i < x_next.size(); ++i) {
    if (x_next[i] == Scalar(0)) continue;
    assert(x_k[i] != Scalar(0) && "surviving support must come from the previous support");
    const Scalar term =
        ball.p * xi * sign_of(x_k[i]) * std::pow(std::abs(x_k[i]), ball.p - Scalar(1)) + grad[i];
    acc += term * term;
  }
  return acc;
}

/// Per-coordinate averaged optimality and feasibility residuals of a
/// candidate projection x of y onto the lp ball, with multiplier lambda:
///   R_opt = (1/n) sum_i |(x_i - y_i) x_i + lambda p |x_i|^p|
///   R_fea = (1/n) | ||x||_p^p - gamma |
template <typename Scalar>
std::pair<Scalar, Scalar> r_opt_r_fea(const Vector<Scalar>& x, const Vector<Scalar>& y,
                                      Scalar lambda, const LpBall<Scalar>& ball) {
  const Scalar n = static_cast<Scalar>(x.size());
  Scalar opt(0);
  for (Index i = 0; i < x.size(); ++i) {
    const Scalar xp = x[i] == Scalar(0) ? Scalar(0) : std::pow(std::abs(x[i]), ball.p);
    opt += std::abs((x[i] - y[i]) * x[i] + lambda * ball.p * xp);
  }
  const Scalar fea = std::abs(lp_norm_p(x, ball.p) - ball.gamma);
  return {opt / n, fea / n};
}

/// Least-squares fit of the boundary multiplier over the support of x, for
/// runs that terminated on a Frank-Wolfe branch and never produced one.
template <typename Scalar>
Scalar fit_projection_multiplier(const Vector<Scalar>& x, const Vector<Scalar>& y, Scalar p) {
  Scalar num(0), den(0);
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] == Scalar(0)) continue;
    const Scalar a = (x[i] - y[i]) * x[i];
    const Scalar b = p * std::pow(std::abs(x[i]), p);
    num += a * b;
    den += b * b;
  }
  return den > Scalar(0) ? std::max(Scalar(0), -num / den) : Scalar(0);
}

/// Checks the worst-case iteration bound: the first iteration whose recorded
/// error falls below epsilon (squared gap on interior FW steps, stationarity
/// residual on projection steps) must come no later than
/// ceil(2 (f0 - f_lower) / (min{C1, C2} epsilon) + 1), where
/// C1 = eta (1-eta) / (2 L gamma^{2/p}) and C2 = beta / 2. Assumes convex f
/// and a valid lower bound f_lower.
template <typename Scalar>
bool complexity_monitor(const std::vector<IterateRecord<Scalar>>& trace, Scalar f0,
                        Scalar f_lower, Scalar lipschitz, Scalar eta, Scalar beta,
                        const LpBall<Scalar>& ball, Scalar epsilon) {
  const Scalar c1 = eta * (Scalar(1) - eta) /
                    (Scalar(2) * lipschitz * std::pow(ball.gamma, Scalar(2) / ball.p));
  const Scalar c2 = beta / Scalar(2);
  const Scalar bound = std::ceil(Scalar(2) * (f0 - f_lower) / (std::min(c1, c2) * epsilon) + Scalar(1));
  for (const IterateRecord<Scalar>& rec : trace) {
    const bool fw_hit = rec.branch == Branch::FWInterior && rec.fw_gap.has_value() &&
                        (*rec.fw_gap) * (*rec.fw_gap) < epsilon;
    const bool proj_hit = rec.branch == Branch::Projection && rec.residual_s2.has_value() &&
                          *rec.residual_s2 < epsilon;
    if (fw_hit || proj_hit) return static_cast<Scalar>(rec.k) <= bound;
  }
  return false;
}

/// The hybrid driver. From an interior iterate it takes a Frank-Wolfe step
/// toward the vertex minimizer of the linearized objective, shortened by
/// bisection if the trial point leaves the ball; from a boundary iterate it
/// solves the sign-cone weighted-l1 projection subproblem. Terminates when a
/// boundary step stalls (||x^{k+1} - x^k|| <= step_tol), when the interior
/// gap falls below gap_tol, or at max_iter.
template <typename Scalar>
class HybridSolver {
 public:
  using Callback = std::function<void(const IterateRecord<Scalar>&, const Vector<Scalar>&)>;

  HybridSolver(const ObjectiveOracle<Scalar>& objective, LpBall<Scalar> ball,
               SolverConfig<Scalar> config)
      : obj_(objective), ball_(std::move(ball)), cfg_(config) {
    cfg_.validate();
    const Scalar lipschitz = obj_.lipschitz();
    if (lipschitz > Scalar(0) && !(cfg_.beta < Scalar(1) / lipschitz))
      throw std::invalid_argument("HybridSolver: beta must lie in (0, 1/L)");
  }

  const LpBall<Scalar>& ball() const { return ball_; }
  const SolverConfig<Scalar>& config() const { return cfg_; }

  SolveReport<Scalar> solve(const Vector<Scalar>& x0, const Callback& callback = {}) const {
    const auto t_start = std::chrono::steady_clock::now();
    const Scalar lipschitz = obj_.lipschitz();

    Vector<Scalar> x = x0;
    snap_small_to_zero(x, cfg_.zero_tol);
    Scalar lpn = lp_norm_p(x, ball_.p);
    if (lpn > ball_.gamma + cfg_.boundary_tol)
      throw std::invalid_argument("HybridSolver::solve: x0 lies outside the lp ball");

    SolveReport<Scalar> report;
    report.f_initial = obj_.value(x);
    Scalar f = report.f_initial;

    Vector<Scalar> grad(x.size()), trial(x.size()), d(x.size());
    const Scalar cross_tol = std::min(cfg_.bisection_tol, cfg_.boundary_tol);

    for (long k = 0; k < cfg_.max_iter; ++k) {
      const Position pos = classify_norm_p(lpn, ball_, cfg_.boundary_tol);
      if (pos == Position::Infeasible)
        throw std::runtime_error("HybridSolver::solve: iterate left the feasible set");
      obj_.gradient(x, grad);

      if (pos == Position::Interior) {
        if ((grad.array() == Scalar(0)).all()) {
          report.reason = TerminationReason::FWGapSmall;
          report.fw_gap_final = Scalar(0);
          break;
        }
        FWStep<Scalar> step;
        step.s = fw_direction(grad, ball_);
        step.gap = fw_gap(grad, x, step.s);
        if (step.gap <= cfg_.gap_tol) {
          report.reason = TerminationReason::FWGapSmall;
          report.fw_gap_final = step.gap;
          break;
        }
        d = step.s - x;
        step.alpha_trial = trial_stepsize(step.gap, d, lipschitz, cfg_.eta);
        trial = x + step.alpha_trial * d;
        const Scalar trial_lpn = lp_norm_p(trial, ball_.p);

        if (trial_lpn <= ball_.gamma) {
          step.alpha_used = step.alpha_trial;
          step.hit_boundary = false;
        } else if (trial_lpn - ball_.gamma <= cross_tol) {
          step.alpha_used = step.alpha_trial;  // trial already sits on the boundary
          step.hit_boundary = true;
        } else {
          step.alpha_used = boundary_bisection(x, step.s, step.alpha_trial, ball_, cross_tol);
          step.hit_boundary = true;
        }
        const Scalar alpha = step.alpha_used;
        const Scalar gap = step.gap;
        const bool hit = step.hit_boundary;

        x += alpha * d;
        lpn = lp_norm_p(x, ball_.p);
        const Scalar f_new = obj_.value(x);

#ifndef NDEBUG
        const Scalar slack = Scalar(1e-6) * (Scalar(1) + std::abs(f));
        if (!hit) {
          const Scalar c1 = cfg_.eta * (Scalar(1) - cfg_.eta) /
                            (Scalar(2) * lipschitz * std::pow(ball_.gamma, Scalar(2) / ball_.p));
          assert(f - f_new >= std::min(cfg_.eta * gap, c1 * gap * gap) - slack);
        } else {
          assert(f - f_new >= cfg_.eta * alpha * gap - slack);
        }
#endif

        IterateRecord<Scalar> rec;
        rec.k = k;
        rec.branch = hit ? Branch::FWBoundaryHit : Branch::FWInterior;
        rec.f_value = f_new;
        rec.stepsize = alpha;
        rec.step_norm = alpha * d.norm();
        rec.fw_gap = gap;
        rec.lpnorm_p = lpn;
        rec.support_size = support_size(x);
        report.trace.push_back(rec);
        if (callback) callback(rec, x);
        f = f_new;
      } else {
        const ProjectionResult<Scalar> proj = solve_p2(x, grad, ball_, cfg_.beta, cfg_.zero_tol);
        const Scalar es2 = residual_s2(x, proj.x_next, proj.xi, grad, ball_);
        const Scalar step = (proj.x_next - x).norm();

        x = proj.x_next;
        lpn = lp_norm_p(x, ball_.p);
        const Scalar f_new = obj_.value(x);

#ifndef NDEBUG
        // the analytic budget p*gamma leaves iterates within boundary_tol of
        // the subproblem set, so the decrease bounds hold up to that slack
        const Scalar slack = Scalar(1e-6) * (Scalar(1) + std::abs(f));
        assert(proj.decrease >= -slack);
        assert(proj.decrease >= step * step / (Scalar(2) * cfg_.beta) - slack);
        assert(f - f_new >= proj.decrease - slack);
#endif

        IterateRecord<Scalar> rec;
        rec.k = k;
        rec.branch = Branch::Projection;
        rec.f_value = f_new;
        rec.stepsize = cfg_.beta;
        rec.step_norm = step;
        rec.proj_decrease = proj.decrease;
        rec.residual_s2 = es2;
        rec.lpnorm_p = lpn;
        rec.support_size = support_size(x);
        report.trace.push_back(rec);
        if (callback) callback(rec, x);
        f = f_new;
        report.residual_s2 = es2;
        report.xi_final = proj.xi;

        if (step <= cfg_.step_tol) {
          report.reason = TerminationReason::BoundaryStall;
          break;
        }
      }
    }

    report.x_final = std::move(x);
    report.f_final = f;
    report.iterations = static_cast<long>(report.trace.size());
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
  }

 private:
  const ObjectiveOracle<Scalar>& obj_;
  LpBall<Scalar> ball_;
  SolverConfig<Scalar> cfg_;
};

}  // namespace lpball
