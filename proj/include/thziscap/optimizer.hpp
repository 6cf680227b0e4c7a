#pragma once

#include <functional>

#include "thziscap/link.hpp"

namespace thziscap {

struct SolverConfig {
  double bisection_tol = 1e-6;
  double grid_step = 0.01;
  int max_iterations = 256;
};

void validate(const SolverConfig& cfg);

/// Root of fn on [lo, hi] by bisection; requires a sign change.
/// Throws std::invalid_argument when the endpoints do not bracket.
double bisect_root(const std::function<double(double)>& fn, double lo, double hi,
                   double tol, int max_iterations = 256);

/// Argmax of a unimodal fn on [lo, hi] by golden-section search.
double golden_section_max(const std::function<double(double)>& fn, double lo,
                          double hi, double tol, int max_iterations = 512);

/// rho0 range over which a constraint threshold is attainable for some
/// rho1. peak is the maximizer of the feasibility margin.
struct FeasibleInterval {
  double lo = 0.0;
  double hi = 0.0;
  double peak = 0.0;
  bool empty = true;
};

enum class SolveStatus { Optimal, Infeasible, FellBackToGrid };

const char* to_string(SolveStatus status);

struct OptimizationOutcome {
  double objective = 0.0;
  double rho0 = 0.0;
  double rho1 = 0.0;
  FeasibleInterval interval{};
  long evaluations = 0;
  SolveStatus status = SolveStatus::Infeasible;
};

/// Endpoint signs of the unimodality brackets the divide-and-conquer
/// scheme relies on. g is the bracket of dE/drho0 (rho1-free); h is
/// dR/drho0 evaluated at rho1 = 0. When a sign assumption fails the
/// solvers fall back to exhaustive grid search.
struct AssumptionReport {
  double g_at_0 = 0, g_at_1 = 0;
  double h_at_0 = 0, h_at_1 = 0;
  bool energy_margin_unimodal = false;
  bool rate_margin_unimodal = false;
};

AssumptionReport sanity_check_assumptions(const LinkObjectives& objectives);

/// rho0 interval where R(rho0, rho1) >= r_eps is attainable (at rho1=0).
FeasibleInterval feasible_interval_p1(const LinkObjectives& objectives, double r_eps,
                                      const SolverConfig& cfg);

/// rho0 interval where E(rho0, rho1) >= e_eps is attainable (at rho1=1).
FeasibleInterval feasible_interval_p2(const LinkObjectives& objectives, double e_eps,
                                      const SolverConfig& cfg);

/// max E subject to R >= r_eps. rho1 sits on the rate constraint
/// boundary (E is nondecreasing in rho1), rho0 scans the feasible
/// interval on the solver grid.
OptimizationOutcome maximize_energy_subject_to_rate(const LinkObjectives& objectives,
                                                    double r_eps, const SolverConfig& cfg);

/// max R subject to E >= e_eps; rho1 sits on the energy constraint
/// boundary (R is nonincreasing in rho1).
OptimizationOutcome maximize_rate_subject_to_energy(const LinkObjectives& objectives,
                                                    double e_eps, const SolverConfig& cfg);

/// Exhaustive verification oracle: scans the full (rho0, rho1) grid,
/// testing feasibility directly on the objective values, and refines
/// each rho0 column with a bisection on the raw constraint so that the
/// reported optimum is not limited by rho1 quantization. Independent of
/// the interval/boundary algebra used by the solvers.
OptimizationOutcome grid_oracle_p1(const LinkObjectives& objectives, double r_eps,
                                   double step);
OptimizationOutcome grid_oracle_p2(const LinkObjectives& objectives, double e_eps,
                                   double step);

/// Plain grid maximization of an arbitrary objective over
/// [0,1-step] x [0,1] under a feasibility predicate.
OptimizationOutcome grid_search(const std::function<double(double, double)>& objective,
                                const std::function<bool(double, double)>& feasible,
                                double step);

}  // namespace thziscap
