// Copyright (c) 2026 The lpball Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: single solves from JSON problem files plus the two
// benchmark drivers with CSV output.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpball/baselines.hpp"
#include "lpball/bench.hpp"
#include "lpball/objectives.hpp"
#include "lpball/solver.hpp"

namespace {

using json = nlohmann::json;
using Vec = lpball::Vector<double>;
using Mat = lpball::Matrix<double>;

Vec vec_from_json(const json& j) {
  Vec v(static_cast<lpball::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<lpball::Index>(i)] = j[i];
  return v;
}

json vec_to_json(const Vec& v) {
  json j = json::array();
  for (lpball::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

Mat mat_from_json(const json& j) {
  const auto rows = static_cast<lpball::Index>(j.size());
  if (rows == 0) throw std::runtime_error("input: matrix A is empty");
  const auto cols = static_cast<lpball::Index>(j[0].size());
  Mat A(rows, cols);
  for (lpball::Index i = 0; i < rows; ++i) {
    if (static_cast<lpball::Index>(j[i].size()) != cols)
      throw std::runtime_error("input: ragged matrix A");
    for (lpball::Index k = 0; k < cols; ++k) A(i, k) = j[i][k];
  }
  return A;
}

std::string derive_fnz_path(const std::string& out) {
  const std::string suffix = ".csv";
  if (out.size() > suffix.size() && out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0)
    return out.substr(0, out.size() - suffix.size()) + ".fnz.csv";
  return out + ".fnz.csv";
}

int run_solve(const std::string& objective, double p, const std::string& gamma_arg,
              const std::string& input_path, const std::string& out_path, double eta,
              const std::string& beta_arg, long max_iter, bool with_trace) {
  std::ifstream in(input_path);
  if (!in) {
    std::cerr << "cannot open input file: " << input_path << "\n";
    return 1;
  }
  json jin;
  in >> jin;

  std::optional<lpball::QuadraticDistance<double>> proj_obj;
  std::optional<lpball::LeastSquares<double>> ls_obj;
  const lpball::ObjectiveOracle<double>* oracle = nullptr;
  Vec target;  // projection target, for the residual report
  lpball::Index n = 0;

  if (objective == "proj") {
    if (!jin.contains("y")) throw std::runtime_error("input: projection problems need \"y\"");
    target = vec_from_json(jin["y"]);
    n = target.size();
    proj_obj.emplace(target);
    oracle = &*proj_obj;
  } else {
    if (!jin.contains("A") || !jin.contains("b"))
      throw std::runtime_error("input: least-squares problems need \"A\" and \"b\"");
    Mat A = mat_from_json(jin["A"]);
    n = A.cols();
    ls_obj.emplace(std::move(A), vec_from_json(jin["b"]));
    oracle = &*ls_obj;
  }

  double gamma;
  if (gamma_arg == "auto") {
    if (objective != "proj")
      throw std::runtime_error("--gamma auto is defined only for --objective proj "
                               "(gamma = 1e-2 ||y||_p^p); pass a value for ls");
    gamma = 1e-2 * lpball::lp_norm_p(target, p);
  } else {
    gamma = std::stod(gamma_arg);
  }

  lpball::SolverConfig<double> cfg;
  cfg.eta = eta;
  cfg.max_iter = max_iter;
  if (beta_arg == "auto")
    cfg.beta = ls_obj ? 0.5 / ls_obj->lmax_estimate() : 0.5 / oracle->lipschitz();
  else
    cfg.beta = std::stod(beta_arg);

  lpball::LpBall<double> ball(p, gamma);
  lpball::HybridSolver<double> solver(*oracle, ball, cfg);
  const auto report = solver.solve(Vec::Zero(n).eval());

  json jout;
  jout["objective"] = objective;
  jout["p"] = p;
  jout["gamma"] = gamma;
  jout["beta"] = cfg.beta;
  jout["f_initial"] = report.f_initial;
  jout["f_final"] = report.f_final;
  jout["reason"] = lpball::to_string(report.reason);
  jout["iterations"] = report.iterations;
  jout["wall_time_s"] = report.wall_time_s;
  jout["lpnorm_p"] = lpball::lp_norm_p(report.x_final, p);
  jout["support_size"] = lpball::support_size(report.x_final);
  if (report.fw_gap_final) jout["fw_gap_final"] = *report.fw_gap_final;
  if (report.residual_s2) jout["residual_s2"] = *report.residual_s2;
  if (objective == "proj") {
    const double lambda = report.xi_final
                              ? *report.xi_final
                              : lpball::fit_projection_multiplier(report.x_final, target, p);
    const auto [r_opt, r_fea] = lpball::r_opt_r_fea(report.x_final, target, lambda, ball);
    jout["lambda"] = lambda;
    jout["r_opt"] = r_opt;
    jout["r_fea"] = r_fea;
  }
  jout["x_final"] = vec_to_json(report.x_final);
  if (with_trace) {
    json jtrace = json::array();
    for (const auto& rec : report.trace) {
      json jr;
      jr["k"] = rec.k;
      jr["branch"] = lpball::to_string(rec.branch);
      jr["f"] = rec.f_value;
      jr["stepsize"] = rec.stepsize;
      jr["step_norm"] = rec.step_norm;
      if (rec.fw_gap) jr["fw_gap"] = *rec.fw_gap;
      if (rec.proj_decrease) jr["proj_decrease"] = *rec.proj_decrease;
      if (rec.residual_s2) jr["residual_s2"] = *rec.residual_s2;
      jr["lpnorm_p"] = rec.lpnorm_p;
      jr["support_size"] = rec.support_size;
      jtrace.push_back(std::move(jr));
    }
    jout["trace"] = std::move(jtrace);
  }

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot open output file: " << out_path << "\n";
    return 1;
  }
  out << jout.dump(2) << "\n";
  std::cout << "f_final=" << report.f_final << " reason=" << lpball::to_string(report.reason)
            << " iterations=" << report.iterations << " time_s=" << report.wall_time_s << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solvers and benchmarks for smooth minimization over nonconvex lp balls"};
  app.require_subcommand(1);

  // --- solve ---
  auto* solve_cmd = app.add_subcommand("solve", "solve one problem from a JSON file");
  std::string objective = "proj", gamma_arg = "auto", input_path, out_path = "solution.json";
  std::string beta_arg = "auto";
  double p = 0.5, eta = 0.5;
  long max_iter = 100000;
  bool with_trace = false;
  solve_cmd->add_option("--objective", objective, "proj (1/2||x-y||^2) or ls (1/2||Ax-b||^2)")
      ->check(CLI::IsMember({"proj", "ls"}));
  solve_cmd->add_option("--p", p, "lp ball exponent in (0,1)")->required();
  solve_cmd->add_option("--gamma", gamma_arg, "ball radius, or 'auto' (proj: 1e-2 ||y||_p^p)");
  solve_cmd->add_option("--input", input_path, "problem JSON: {\"y\":[...]} or {\"A\":[[...]],\"b\":[...]}")
      ->required();
  solve_cmd->add_option("--out", out_path, "output JSON path");
  solve_cmd->add_option("--eta", eta, "Armijo parameter");
  solve_cmd->add_option("--beta", beta_arg, "projection stepsize, or 'auto' (0.5/L)");
  solve_cmd->add_option("--max-iter", max_iter, "iteration cap");
  solve_cmd->add_flag("--trace", with_trace, "include the per-iteration trace in the output");

  // --- bench ---
  auto* bench_cmd = app.add_subcommand("bench", "benchmark drivers");
  bench_cmd->require_subcommand(1);

  auto* bproj = bench_cmd->add_subcommand("projection", "lp-ball projection study");
  lpball::bench::ExperimentSpec pspec;
  pspec.kind = lpball::bench::ExperimentKind::LpProjection;
  std::string pout = "results.csv", pconfig;
  bproj->add_option("--n", pspec.n_values, "problem sizes")->delimiter(',');
  bproj->add_option("--p", pspec.p_values, "lp exponents")->delimiter(',');
  bproj->add_option("--trials", pspec.trials, "trials per (n, p)");
  bproj->add_option("--seed", pspec.seed, "base seed");
  bproj->add_option("--gamma-fraction", pspec.gamma_fraction, "gamma = fraction * ||y||_p^p");
  bproj->add_option("--max-iter", pspec.max_iter, "iteration cap per solve");
  bproj->add_option("--out", pout, "per-trial CSV path");
  bproj->add_option("--config", pconfig, "JSON config mirroring the experiment fields");

  auto* brec = bench_cmd->add_subcommand("recovery", "sparse signal recovery study");
  lpball::bench::ExperimentSpec rspec;
  rspec.kind = lpball::bench::ExperimentKind::SparseRecovery;
  rspec.p_values = {0.5};
  rspec.gamma_rule = lpball::bench::GammaRule::EqualsS;
  rspec.trials = 10;
  rspec.max_iter = 20000;
  for (int m = 50; m <= 1000; m += 50) rspec.m_values.push_back(m);  // default sweep
  std::string rout = "curve.csv", rconfig, fnz_out;
  std::vector<std::string> solver_names = {"hybrid", "l1gpm", "iht"};
  brec->add_option("--n", rspec.n, "signal dimension");
  brec->add_option("--s", rspec.s, "signal sparsity (also the ball radius: gamma = s)");
  brec->add_option("--m", rspec.m_values, "measurement counts (default 50,100,...,1000)")
      ->delimiter(',');
  brec->add_option("--p", rspec.p_values, "lp exponent for the hybrid solver")->delimiter(',');
  brec->add_option("--solvers", solver_names, "subset of hybrid,l1gpm,iht")->delimiter(',');
  brec->add_option("--trials", rspec.trials, "trials per m");
  brec->add_option("--seed", rspec.seed, "base seed");
  brec->add_option("--max-iter", rspec.max_iter, "iteration cap per solve");
  brec->add_option("--out", rout, "per-trial CSV path");
  brec->add_option("--fnz-out", fnz_out, "false-nonzero CSV path (default: <out>.fnz.csv)");
  brec->add_option("--config", rconfig, "JSON config mirroring the experiment fields");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd)
      return run_solve(objective, p, gamma_arg, input_path, out_path, eta, beta_arg, max_iter,
                       with_trace);

    if (*bproj) {
      if (!pconfig.empty()) pspec = lpball::bench::spec_from_json_file(pconfig, pspec);
      const auto rows = lpball::bench::run_projection_experiment(pspec);
      std::ofstream out(pout);
      if (!out) throw std::runtime_error("cannot open " + pout);
      lpball::bench::write_projection_csv(out, rows, pspec);
      for (const auto& s : lpball::bench::summarize_projection(rows))
        std::printf("n=%-7d p=%-5g mean_objective=%-12.6f mean_r_fea=%.3e mean_time_s=%.4f (%d trials)\n",
                    s.n, s.p, s.mean_objective, s.mean_r_fea, s.mean_time_s, s.trials_ok);
      std::cout << "wrote " << pout << "\n";
      return 0;
    }

    if (*brec) {
      if (!rconfig.empty()) rspec = lpball::bench::spec_from_json_file(rconfig, rspec);
      rspec.solvers.clear();
      for (const auto& name : solver_names) {
        if (name == "hybrid")
          rspec.solvers.push_back(lpball::bench::SolverKind::Hybrid);
        else if (name == "l1gpm")
          rspec.solvers.push_back(lpball::bench::SolverKind::L1Gpm);
        else if (name == "iht")
          rspec.solvers.push_back(lpball::bench::SolverKind::Iht);
        else
          throw std::runtime_error("unknown solver: " + name);
      }
      const auto result = lpball::bench::run_recovery_experiment(rspec);
      std::ofstream out(rout);
      if (!out) throw std::runtime_error("cannot open " + rout);
      lpball::bench::write_recovery_csv(out, result.rows, rspec);
      const std::string fnz_path = fnz_out.empty() ? derive_fnz_path(rout) : fnz_out;
      std::ofstream fout(fnz_path);
      if (!fout) throw std::runtime_error("cannot open " + fnz_path);
      lpball::bench::write_false_nonzeros_csv(fout, result.false_nonzeros, rspec);
      for (const auto& pt : lpball::bench::summarize_recovery(result.rows))
        std::printf("solver=%-7s m=%-5d success_rate=%.2f (%d trials)\n", pt.solver.c_str(), pt.m,
                    pt.rate, pt.trials);
      std::cout << "wrote " << rout << " and " << fnz_path << "\n";
      return 0;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
