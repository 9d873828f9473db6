// Copyright (c) 2026 The lpball Authors
// SPDX-License-Identifier: Apache-2.0
#include "lpball/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "lpball/baselines.hpp"
#include "lpball/objectives.hpp"
#include "lpball/rng.hpp"
#include "lpball/solver.hpp"

namespace lpball::bench {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string join_ints(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string join_doubles(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += fmt(xs[i]);
  }
  return out;
}

void write_metadata(std::ostream& out, const ExperimentSpec& spec, const char* what) {
  const SolverConfig<double> defaults;
  out << "# lpball " << kVersion << " bench=" << what << "\n";
  out << "# seed=" << spec.seed << " prng=" << kPrngId << " trials=" << spec.trials << "\n";
  if (spec.kind == ExperimentKind::LpProjection) {
    out << "# n=" << join_ints(spec.n_values) << " p=" << join_doubles(spec.p_values)
        << " gamma_rule=fraction(" << fmt(spec.gamma_fraction) << ") max_iter=" << spec.max_iter
        << "\n";
  } else {
    out << "# n=" << spec.n << " s=" << spec.s << " m=" << join_ints(spec.m_values)
        << " p=" << join_doubles(spec.p_values)
        << " gamma_rule=" << (spec.gamma_rule == GammaRule::EqualsS ? "equals_s" : "fraction")
        << " max_iter=" << spec.max_iter << "\n";
  }
  out << "# eta=" << fmt(defaults.eta) << " boundary_tol=" << fmt(defaults.boundary_tol)
      << " step_tol=" << fmt(defaults.step_tol) << " gap_tol=" << fmt(defaults.gap_tol)
      << " bisection_tol=" << fmt(defaults.bisection_tol) << " zero_tol=" << fmt(defaults.zero_tol)
      << "\n";
}

std::uint64_t recovery_stream(int m, int trial) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(m)) << 32) ^
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(trial));
}

}  // namespace

const char* to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::Hybrid: return "hybrid";
    case SolverKind::L1Gpm: return "l1gpm";
    default: return "iht";
  }
}

ExperimentSpec spec_from_json_file(const std::string& path, ExperimentSpec base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json j;
  in >> j;

  if (j.contains("kind")) {
    const std::string kind = j["kind"];
    if (kind == "projection")
      base.kind = ExperimentKind::LpProjection;
    else if (kind == "recovery")
      base.kind = ExperimentKind::SparseRecovery;
    else
      throw std::runtime_error("config: unknown kind '" + kind + "'");
  }
  if (j.contains("n_values")) base.n_values = j["n_values"].get<std::vector<int>>();
  if (j.contains("n")) base.n = j["n"];
  if (j.contains("m")) base.m = j["m"];
  if (j.contains("s")) base.s = j["s"];
  if (j.contains("p_values")) base.p_values = j["p_values"].get<std::vector<double>>();
  if (j.contains("gamma_rule")) {
    const std::string rule = j["gamma_rule"];
    if (rule == "fraction")
      base.gamma_rule = GammaRule::FractionOfNorm;
    else if (rule == "equals_s")
      base.gamma_rule = GammaRule::EqualsS;
    else
      throw std::runtime_error("config: unknown gamma_rule '" + rule + "'");
  }
  if (j.contains("gamma_fraction")) base.gamma_fraction = j["gamma_fraction"];
  if (j.contains("trials")) base.trials = j["trials"];
  if (j.contains("seed")) base.seed = j["seed"];
  if (j.contains("m_values")) base.m_values = j["m_values"].get<std::vector<int>>();
  if (j.contains("max_iter")) base.max_iter = j["max_iter"];
  if (j.contains("fnz_thresholds"))
    base.fnz_thresholds = j["fnz_thresholds"].get<std::vector<double>>();
  if (j.contains("solvers")) {
    base.solvers.clear();
    for (const auto& name : j["solvers"]) {
      const std::string sn = name;
      if (sn == "hybrid")
        base.solvers.push_back(SolverKind::Hybrid);
      else if (sn == "l1gpm")
        base.solvers.push_back(SolverKind::L1Gpm);
      else if (sn == "iht")
        base.solvers.push_back(SolverKind::Iht);
      else
        throw std::runtime_error("config: unknown solver '" + sn + "'");
    }
  }
  return base;
}

Vec gen_projection_instance(int n, std::uint64_t seed, std::uint64_t trial) {
  if (n < 1) throw std::invalid_argument("gen_projection_instance: n must be positive");
  Rng rng(seed, trial);
  Vec y(n);
  for (int i = 0; i < n; ++i) y[i] = rng.normal();
  return y;
}

RecoveryInstance gen_recovery_instance(int n, int m, int s, std::uint64_t seed,
                                       std::uint64_t trial) {
  if (s <= 0 || s > n) throw std::invalid_argument("gen_recovery_instance: need 0 < s <= n");
  if (m < 1) throw std::invalid_argument("gen_recovery_instance: m must be positive");
  Rng rng(seed, recovery_stream(m, static_cast<int>(trial)));

  // draw order is fixed: support, signs, A (row major), noise
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < s; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  std::sort(idx.begin(), idx.begin() + s);

  RecoveryInstance inst;
  inst.x_hat = Vec::Zero(n);
  for (int i = 0; i < s; ++i) inst.x_hat[idx[static_cast<std::size_t>(i)]] = rng.sign();

  inst.A.resize(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) inst.A(i, j) = rng.normal();

  Vec eps(m);
  for (int i = 0; i < m; ++i) eps[i] = 1e-2 * rng.normal();  // variance 1e-4
  inst.b = inst.A * inst.x_hat + eps;
  return inst;
}

std::vector<ProjectionTrialRow> run_projection_experiment(const ExperimentSpec& spec) {
  std::vector<ProjectionTrialRow> rows;
  for (int n : spec.n_values) {
    for (double p : spec.p_values) {
      for (int trial = 0; trial < spec.trials; ++trial) {
        const Vec y = gen_projection_instance(n, spec.seed, static_cast<std::uint64_t>(trial));
        const double gamma = spec.gamma_fraction * lp_norm_p(y, p);

        ProjectionTrialRow row;
        row.solver = "hybrid";
        row.n = n;
        row.p = p;
        row.trial = trial;
        try {
          QuadraticDistance<double> objective(y);
          SolverConfig<double> cfg;  // eta 0.5, beta 0.5 = 0.5/L with L = 1
          cfg.max_iter = spec.max_iter;
          HybridSolver<double> solver(objective, LpBall<double>(p, gamma), cfg);
          const auto report = solver.solve(Vec::Zero(n).eval());
          row.objective = report.f_final;
          row.r_fea = std::abs(lp_norm_p(report.x_final, p) - gamma) / n;
          row.time_s = report.wall_time_s;
          row.iterations = report.iterations;
        } catch (const std::exception&) {
          row.ok = false;
          row.objective = std::numeric_limits<double>::quiet_NaN();
          row.r_fea = std::numeric_limits<double>::quiet_NaN();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::vector<ProjectionSummary> summarize_projection(const std::vector<ProjectionTrialRow>& rows) {
  std::map<std::pair<int, double>, ProjectionSummary> groups;
  for (const auto& row : rows) {
    if (!row.ok) continue;
    auto& g = groups[{row.n, row.p}];
    g.n = row.n;
    g.p = row.p;
    g.trials_ok += 1;
    g.mean_objective += row.objective;
    g.mean_r_fea += row.r_fea;
    g.mean_time_s += row.time_s;
  }
  std::vector<ProjectionSummary> out;
  for (auto& [key, g] : groups) {
    if (g.trials_ok > 0) {
      g.mean_objective /= g.trials_ok;
      g.mean_r_fea /= g.trials_ok;
      g.mean_time_s /= g.trials_ok;
    }
    out.push_back(g);
  }
  return out;
}

RecoveryResult run_recovery_experiment(const ExperimentSpec& spec) {
  RecoveryResult result;
  std::vector<int> ms = spec.m_values;
  if (ms.empty() && spec.m > 0) ms.push_back(spec.m);
  if (ms.empty()) throw std::invalid_argument("run_recovery_experiment: no m values");
  if (spec.p_values.size() > 1)
    throw std::invalid_argument("run_recovery_experiment: a single p is used per sweep");
  const int m_largest = *std::max_element(ms.begin(), ms.end());
  const double p = spec.p_values.empty() ? 0.5 : spec.p_values.front();

  for (int m : ms) {
    for (int trial = 0; trial < spec.trials; ++trial) {
      const RecoveryInstance inst =
          gen_recovery_instance(spec.n, m, spec.s, spec.seed, static_cast<std::uint64_t>(trial));
      const LeastSquares<double> objective(inst.A, inst.b);
      const double stepsize = 0.5 / objective.lmax_estimate();
      const double xhat_norm = inst.x_hat.norm();

      for (SolverKind kind : spec.solvers) {
        RecoveryTrialRow row;
        row.solver = to_string(kind);
        row.m = m;
        row.trial = trial;
        Vec x_final;
        try {
          if (kind == SolverKind::Hybrid) {
            const double gamma = spec.gamma_rule == GammaRule::EqualsS
                                     ? static_cast<double>(spec.s)
                                     : spec.gamma_fraction * lp_norm_p(inst.x_hat, p);
            SolverConfig<double> cfg;
            cfg.beta = stepsize;
            cfg.max_iter = spec.max_iter;
            HybridSolver<double> solver(objective, LpBall<double>(p, gamma), cfg);
            const auto report = solver.solve(Vec::Zero(spec.n).eval());
            x_final = report.x_final;
            row.time_s = report.wall_time_s;
            row.iterations = report.iterations;
          } else {
            BaselineConfig<double> cfg{stepsize, spec.max_iter};
            const auto report =
                kind == SolverKind::L1Gpm
                    ? l1_gpm_solve(objective, static_cast<double>(spec.s), cfg,
                                   Vec::Zero(spec.n).eval())
                    : iht_solve(objective, spec.s, cfg, Vec::Zero(spec.n).eval());
            x_final = report.x_final;
            row.time_s = report.wall_time_s;
            row.iterations = report.iterations;
          }
          row.rel_error = (x_final - inst.x_hat).norm() / xhat_norm;
          row.success = row.rel_error < 1e-3;
        } catch (const std::exception&) {
          row.ok = false;
          row.rel_error = std::numeric_limits<double>::quiet_NaN();
        }
        result.rows.push_back(row);

        if (row.ok && row.success && m == m_largest) {
          for (double threshold : spec.fnz_thresholds) {
            FalseNonzeroRow fnz;
            fnz.solver = row.solver;
            fnz.threshold = threshold;
            fnz.trial = trial;
            fnz.count = 0;
            for (int i = 0; i < spec.n; ++i)
              if (inst.x_hat[i] == 0.0 && std::abs(x_final[i]) >= threshold) ++fnz.count;
            result.false_nonzeros.push_back(fnz);
          }
        }
      }
    }
  }
  return result;
}

std::vector<SuccessRatePoint> summarize_recovery(const std::vector<RecoveryTrialRow>& rows) {
  std::map<std::pair<std::string, int>, std::pair<int, int>> groups;  // (successes, total)
  for (const auto& row : rows) {
    if (!row.ok) continue;
    auto& g = groups[{row.solver, row.m}];
    g.first += row.success ? 1 : 0;
    g.second += 1;
  }
  std::vector<SuccessRatePoint> out;
  for (const auto& [key, g] : groups) {
    SuccessRatePoint pt;
    pt.solver = key.first;
    pt.m = key.second;
    pt.trials = g.second;
    pt.rate = g.second > 0 ? static_cast<double>(g.first) / g.second : 0.0;
    out.push_back(pt);
  }
  return out;
}

void write_projection_csv(std::ostream& out, const std::vector<ProjectionTrialRow>& rows,
                          const ExperimentSpec& spec) {
  write_metadata(out, spec, "projection");
  out << "solver,n,p,trial,objective,r_fea,time_s,iterations\n";
  for (const auto& r : rows) {
    out << r.solver << "," << r.n << "," << fmt(r.p) << "," << r.trial << "," << fmt(r.objective)
        << "," << fmt(r.r_fea) << "," << fmt(r.time_s) << "," << r.iterations << "\n";
  }
}

void write_recovery_csv(std::ostream& out, const std::vector<RecoveryTrialRow>& rows,
                        const ExperimentSpec& spec) {
  write_metadata(out, spec, "recovery");
  out << "solver,m,trial,rel_error,success,time_s,iterations\n";
  for (const auto& r : rows) {
    out << r.solver << "," << r.m << "," << r.trial << "," << fmt(r.rel_error) << ","
        << (r.success ? 1 : 0) << "," << fmt(r.time_s) << "," << r.iterations << "\n";
  }
}

void write_false_nonzeros_csv(std::ostream& out, const std::vector<FalseNonzeroRow>& rows,
                              const ExperimentSpec& spec) {
  write_metadata(out, spec, "recovery-false-nonzeros");
  out << "solver,threshold,trial,count\n";
  for (const auto& r : rows)
    out << r.solver << "," << fmt(r.threshold) << "," << r.trial << "," << r.count << "\n";
}

}  // namespace lpball::bench
