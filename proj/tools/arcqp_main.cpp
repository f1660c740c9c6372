// Batch front-end for the arc-search box-QP solver: loads a problem file
// (or the built-in saturated LQR demo), runs the solver, and writes the
// solution, iteration log and trajectory data as CSV.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <map>
#include <string>

#include "arcqp/lqr.hpp"
#include "arcqp/problem_io.hpp"
#include "arcqp/qp_core.hpp"
#include "arcqp/solver.hpp"

namespace fs = std::filesystem;
using namespace arcqp;

namespace {

struct CliConfig {
  SolverOptions solver;
  std::string out_dir = ".";
  std::string log = "csv";
};

void add_common_flags(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--theta", cfg.solver.theta,
                  "neighborhood radius, in (0, 0.19]")
      ->check(CLI::Range(1e-8, 0.19))
      ->capture_default_str();
  cmd->add_option("--eps", cfg.solver.eps, "termination tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--sigma", cfg.solver.sigma,
                  "duality-gap floor, must stay below eps")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-iter", cfg.solver.max_iter, "iteration limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  const std::map<std::string, SolveMode> modes{
      {"practical", SolveMode::practical},
      {"theoretical", SolveMode::theoretical}};
  cmd->add_option("--mode", cfg.solver.mode, "step-size mode")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case))
      ->default_str("practical");
  cmd->add_option("--out-dir", cfg.out_dir, "directory for CSV outputs")
      ->capture_default_str();
  cmd->add_option("--log", cfg.log, "iteration log emission")
      ->check(CLI::IsMember({"none", "csv"}))
      ->capture_default_str();
}

int exit_code_for(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged:
      return 0;
    case SolveStatus::numerical_failure:
      return 3;
    case SolveStatus::mu_below_sigma:
      return 4;
    case SolveStatus::max_iter_reached:
      return 5;
  }
  return 3;
}

void print_summary(const SolveReport& rep) {
  std::printf("status: %s\n", to_string(rep.status).c_str());
  std::printf("iterations: %zu\n", rep.iterations.size());
  if (rep.status == SolveStatus::numerical_failure) {
    std::fprintf(stderr, "error: %s\n", rep.message.c_str());
  }
}

int run_box_qp(const BoxQP& qp, const CliConfig& cfg) {
  const SolveReport rep = solve(qp, cfg.solver);
  const fs::path dir(cfg.out_dir);
  write_solution_csv(dir / "solution.csv", rep.final.x);
  if (cfg.log == "csv") {
    write_iteration_log_csv(dir / "iterations.csv", rep.iterations);
  }
  print_summary(rep);
  std::printf("objective: %s\n", format_double(rep.objective).c_str());
  return exit_code_for(rep.status);
}

int run_lqr(const LqrProblem& raw, double weight_scale_h,
            const CliConfig& cfg) {
  const LqrProblem lqr = scale_stage_costs(raw, weight_scale_h);
  const CondensedQP cond = condense(lqr);
  const SolveReport rep = solve(cond.qp, cfg.solver);

  const Matrix u = unstack_controls(rep.final.x, cond.m);
  const SimulationResult sim = simulate(lqr, u);

  const fs::path dir(cfg.out_dir);
  write_controls_csv(dir / "controls.csv", u);
  write_trajectory_csv(dir / "trajectory.csv", sim.states);
  if (cfg.log == "csv") {
    write_iteration_log_csv(dir / "iterations.csv", rep.iterations);
  }

  const double max_abs_u = u.cwiseAbs().maxCoeff();
  if (max_abs_u > 1.0 + 1e-9) {
    std::fprintf(stderr, "warning: control exceeds the unit box by %g\n",
                 max_abs_u - 1.0);
  }
  int saturated = 0;
  for (Index s = 0; s < u.cols(); ++s) {
    for (Index i = 0; i < u.rows(); ++i) {
      if (std::abs(u(i, s)) >= 1.0 - 1e-6) ++saturated;
    }
  }

  print_summary(rep);
  std::printf("objective: %s\n",
              format_double(sim.cost).c_str());
  std::printf("condensed objective: %s\n",
              format_double(rep.objective + cond.objective_offset).c_str());
  std::printf("saturated samples: %d / %lld\n", saturated,
              static_cast<long long>(u.size()));
  return exit_code_for(rep.status);
}

/// Double integrator-like oscillator with a saturating actuator, horizon
/// 500 at sampling step 0.1. Converges in about 27 iterations at the
/// default settings.
LqrProblem demo_problem() {
  const double h = 0.1;
  LqrProblem lqr;
  lqr.A.resize(2, 2);
  lqr.A << 1.0, h, -h, 1.0;
  lqr.B.resize(2, 1);
  lqr.B << 0.0, h;
  lqr.P = Matrix::Zero(2, 2);
  lqr.P.diagonal() << 2.0, 1.0;
  lqr.Q = lqr.P;
  lqr.R = Matrix::Constant(1, 1, 6.0);
  lqr.N = 500;
  lqr.x0.resize(2);
  lqr.x0 << 15.0, 5.0;
  return lqr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arc-search interior-point solver for box-constrained QPs"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string qp_path;
  std::string lqr_path;

  CLI::App* cmd_solve = app.add_subcommand(
      "solve-qp", "solve a box QP problem file");
  cmd_solve->add_option("file", qp_path, "problem JSON (type box_qp)")
      ->required();
  add_common_flags(cmd_solve, cfg);

  CLI::App* cmd_lqr = app.add_subcommand(
      "lqr", "condense and solve a saturated LQR problem file");
  cmd_lqr->add_option("file", lqr_path, "problem JSON (type lqr)")
      ->required();
  add_common_flags(cmd_lqr, cfg);

  CLI::App* cmd_demo = app.add_subcommand(
      "demo", "run the built-in saturated LQR design example");
  add_common_flags(cmd_demo, cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    validate_options(cfg.solver);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  try {
    if (cmd_solve->parsed()) {
      ProblemFile pf;
      try {
        pf = load_problem(qp_path);
      } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
      }
      if (pf.kind != ProblemFile::Kind::box_qp) {
        std::fprintf(stderr, "error: %s is not a box_qp problem\n",
                     qp_path.c_str());
        return 2;
      }
      return run_box_qp(pf.qp, cfg);
    }
    if (cmd_lqr->parsed()) {
      ProblemFile pf;
      try {
        pf = load_problem(lqr_path);
      } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
      }
      if (pf.kind != ProblemFile::Kind::lqr) {
        std::fprintf(stderr, "error: %s is not an lqr problem\n",
                     lqr_path.c_str());
        return 2;
      }
      return run_lqr(pf.lqr, pf.weight_scale_h, cfg);
    }
    // demo
    return run_lqr(demo_problem(), 0.1, cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
