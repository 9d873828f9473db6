// Copyright (c) 2026 The lpball Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lpball/core.hpp"

namespace lpball::bench {

using Vec = Vector<double>;
using Mat = Matrix<double>;

enum class ExperimentKind { LpProjection, SparseRecovery };
enum class GammaRule { FractionOfNorm, EqualsS };
enum class SolverKind { Hybrid, L1Gpm, Iht };

const char* to_string(SolverKind kind);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::LpProjection;
  std::vector<int> n_values = {100};
  int n = 1000;  // recovery
  int m = 0;     // recovery (single m; m_values for sweeps)
  int s = 100;   // recovery
  std::vector<double> p_values = {0.8};
  GammaRule gamma_rule = GammaRule::FractionOfNorm;
  double gamma_fraction = 1e-2;
  int trials = 50;
  std::uint64_t seed = 1;
  std::vector<int> m_values;
  std::vector<SolverKind> solvers = {SolverKind::Hybrid, SolverKind::L1Gpm, SolverKind::Iht};
  long max_iter = 100000;
  std::vector<double> fnz_thresholds = {1e-3, 1e-4, 1e-5};
};

/// Fills ExperimentSpec fields present in a JSON config file; missing keys
/// keep their defaults.
ExperimentSpec spec_from_json_file(const std::string& path, ExperimentSpec base = {});

struct ProjectionTrialRow {
  std::string solver;
  int n = 0;
  double p = 0.0;
  int trial = 0;
  double objective = 0.0;
  double r_fea = 0.0;
  double time_s = 0.0;
  long iterations = 0;
  bool ok = true;  // failed trials carry nan objective in the CSV
};

struct ProjectionSummary {
  int n = 0;
  double p = 0.0;
  int trials_ok = 0;
  double mean_objective = 0.0;
  double mean_r_fea = 0.0;
  double mean_time_s = 0.0;
};

struct RecoveryTrialRow {
  std::string solver;
  int m = 0;
  int trial = 0;
  double rel_error = 0.0;
  bool success = false;
  double time_s = 0.0;
  long iterations = 0;
  bool ok = true;
};

struct FalseNonzeroRow {
  std::string solver;
  double threshold = 0.0;
  int trial = 0;
  long count = 0;
};

struct SuccessRatePoint {
  std::string solver;
  int m = 0;
  double rate = 0.0;
  int trials = 0;
};

struct RecoveryInstance {
  Mat A;
  Vec b;
  Vec x_hat;
};

/// y with i.i.d. standard normal entries, deterministic in (seed, trial).
Vec gen_projection_instance(int n, std::uint64_t seed, std::uint64_t trial = 0);

/// Sparse +-1 signal of support size exactly s at uniform positions, Gaussian
/// A, and b = A x_hat + eps with eps ~ N(0, 1e-4).
RecoveryInstance gen_recovery_instance(int n, int m, int s, std::uint64_t seed,
                                       std::uint64_t trial = 0);

std::vector<ProjectionTrialRow> run_projection_experiment(const ExperimentSpec& spec);
std::vector<ProjectionSummary> summarize_projection(const std::vector<ProjectionTrialRow>& rows);

struct RecoveryResult {
  std::vector<RecoveryTrialRow> rows;
  std::vector<FalseNonzeroRow> false_nonzeros;
};

RecoveryResult run_recovery_experiment(const ExperimentSpec& spec);
std::vector<SuccessRatePoint> summarize_recovery(const std::vector<RecoveryTrialRow>& rows);

void write_projection_csv(std::ostream& out, const std::vector<ProjectionTrialRow>& rows,
                          const ExperimentSpec& spec);
void write_recovery_csv(std::ostream& out, const std::vector<RecoveryTrialRow>& rows,
                        const ExperimentSpec& spec);
void write_false_nonzeros_csv(std::ostream& out, const std::vector<FalseNonzeroRow>& rows,
                              const ExperimentSpec& spec);

}  // namespace lpball::bench
