// Copyright (c) 2026 The lpball Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <stdexcept>

#include "lpball/objectives.hpp"
#include "lpball/solver.hpp"
#include "lpball/wproj.hpp"

namespace lpball {

template <typename Scalar>
struct BaselineConfig {
  Scalar stepsize;  // typically 0.5 / lambda_max(A'A)
  long max_iter = 100000;
  Scalar step_tol = Scalar(1e-5);
};

namespace detail {

// Shared projected-gradient loop; `project` maps the gradient step back onto
// the constraint set and `constraint_measure` fills the lpnorm_p trace slot
// (nonzero count for the l0 ball, l1 norm for the l1 ball).
template <typename Scalar, typename Project, typename Measure>
SolveReport<Scalar> projected_gradient_loop(const ObjectiveOracle<Scalar>& objective,
                                            const BaselineConfig<Scalar>& cfg,
                                            const Vector<Scalar>& x0, Project&& project,
                                            Measure&& constraint_measure) {
  if (!(cfg.stepsize > Scalar(0)))
    throw std::invalid_argument("baseline: stepsize must be positive");
  const auto t_start = std::chrono::steady_clock::now();

  SolveReport<Scalar> report;
  Vector<Scalar> x = x0;
  report.f_initial = objective.value(x);
  Scalar f = report.f_initial;
  Vector<Scalar> grad(x.size());

  for (long k = 0; k < cfg.max_iter; ++k) {
    objective.gradient(x, grad);
    Vector<Scalar> x_new = project(x - cfg.stepsize * grad);
    const Scalar step = (x_new - x).norm();
    x = std::move(x_new);
    f = objective.value(x);

    IterateRecord<Scalar> rec;
    rec.k = k;
    rec.branch = Branch::Projection;
    rec.f_value = f;
    rec.stepsize = cfg.stepsize;
    rec.step_norm = step;
    rec.lpnorm_p = constraint_measure(x);
    rec.support_size = support_size(x);
    report.trace.push_back(rec);

    if (step <= cfg.step_tol) {
      report.reason = TerminationReason::BoundaryStall;
      break;
    }
  }

  report.x_final = std::move(x);
  report.f_final = f;
  report.iterations = static_cast<long>(report.trace.size());
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return report;
}

}  // namespace detail

/// Iterative hard thresholding: gradient step, then keep the s largest
/// entries. Descent is not guaranteed without matrix conditioning
/// assumptions, so f is recorded but not asserted monotone.
template <typename Scalar>
SolveReport<Scalar> iht_solve(const ObjectiveOracle<Scalar>& objective, Index s,
                              const BaselineConfig<Scalar>& cfg, const Vector<Scalar>& x0) {
  if (s <= 0 || s > x0.size()) throw std::invalid_argument("iht_solve: s must lie in (0, n]");
  return detail::projected_gradient_loop<Scalar>(
      objective, cfg, x0, [s](const Vector<Scalar>& v) { return hard_threshold(v, s); },
      [](const Vector<Scalar>& x) { return static_cast<Scalar>(support_size(x)); });
}

/// Projected gradient on the l1 ball of the given radius.
template <typename Scalar>
SolveReport<Scalar> l1_gpm_solve(const ObjectiveOracle<Scalar>& objective, Scalar radius,
                                 const BaselineConfig<Scalar>& cfg, const Vector<Scalar>& x0) {
  if (!(radius > Scalar(0))) throw std::invalid_argument("l1_gpm_solve: radius must be positive");
  return detail::projected_gradient_loop<Scalar>(
      objective, cfg, x0, [radius](const Vector<Scalar>& v) { return l1_ball_project(v, radius); },
      [](const Vector<Scalar>& x) { return x.template lpNorm<1>(); });
}

}  // namespace lpball
