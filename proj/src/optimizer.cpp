#include "thziscap/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace thziscap {

namespace {

constexpr double kRho0Top = 1.0 - 1e-9;  // open right end of the rho0 domain
constexpr double kConstraintSlack = 1e-9;

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

void validate(const SolverConfig& cfg) {
  if (!(cfg.bisection_tol > 0.0 && cfg.bisection_tol < cfg.grid_step && cfg.grid_step < 1.0))
    throw std::domain_error("solver config requires 0 < bisection_tol < grid_step < 1");
  if (cfg.max_iterations < 8) throw std::domain_error("max_iterations too small");
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::FellBackToGrid: return "fell_back_to_grid";
  }
  return "unknown";
}

double bisect_root(const std::function<double(double)>& fn, double lo, double hi,
                   double tol, int max_iterations) {
  double flo = fn(lo);
  double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("bisect_root: endpoints do not bracket a sign change");
  for (int i = 0; i < max_iterations && (hi - lo) > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = fn(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double golden_section_max(const std::function<double(double)>& fn, double lo, double hi,
                          double tol, int max_iterations) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  for (int i = 0; i < max_iterations && (b - a) > tol; ++i) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = fn(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = fn(x2);
    }
  }
  return 0.5 * (a + b);
}

AssumptionReport sanity_check_assumptions(const LinkObjectives& obj) {
  const ChannelSnapshot& s = obj.channel();
  const SystemParams& p = obj.params();
  AssumptionReport r{};

  // Bracket of dE/drho0 for the fixed-efficiency model:
  //   g(rho0) = (1-rho0)*8*alpha*T*l0^2*exp(-2*alpha*T*rho0) - R_ebw^2
  const double l0 = p.initial_misalignment_m;
  const double alpha = p.misalignment_decay_per_s;
  const double T = p.total_time_s;
  const double rebw2 = s.r_ebw_m * s.r_ebw_m;
  r.g_at_0 = 8.0 * alpha * T * l0 * l0 - rebw2;
  r.g_at_1 = -rebw2;

  // dR/drho0 at rho1 = 0; the rho0=1 end uses the closed-form limit.
  r.h_at_0 = obj.dR_drho0(0.0, 0.0);
  const double pr1 = obj.received_power_at(1.0);
  r.h_at_1 = -T * std::log1p(pr1 / p.noise_power_w) / 0.6931471805599453;

  // g(0) > 0 is equivalent to a positive left-end slope of the energy
  // margin for the nonlinear model too: both reduce to 8*alpha*T*l0^2 >
  // R_ebw^2. The right-end signs are negative by construction.
  r.energy_margin_unimodal = r.g_at_0 > 0.0 && r.g_at_1 < 0.0;
  r.rate_margin_unimodal = r.h_at_0 > 0.0 && r.h_at_1 < 0.0;
  return r;
}

namespace {

// Shared interval construction: margin(rho0) >= 0 defines feasibility.
FeasibleInterval margin_interval(const std::function<double(double)>& margin,
                                 const SolverConfig& cfg) {
  FeasibleInterval out{};
  out.peak = golden_section_max(margin, 0.0, kRho0Top, cfg.bisection_tol,
                                cfg.max_iterations);
  const double at_peak = margin(out.peak);
  if (!(at_peak >= 0.0)) {
    out.empty = true;
    return out;
  }
  out.empty = false;
  const double at_lo = margin(0.0);
  out.lo = at_lo >= 0.0 ? 0.0
                        : bisect_root(margin, 0.0, out.peak, cfg.bisection_tol,
                                      cfg.max_iterations);
  const double at_hi = margin(kRho0Top);
  out.hi = at_hi >= 0.0 ? kRho0Top
                        : bisect_root(margin, out.peak, kRho0Top, cfg.bisection_tol,
                                      cfg.max_iterations);
  return out;
}

struct GridBest {
  double objective = -std::numeric_limits<double>::infinity();
  double rho0 = nan_value();
  double rho1 = nan_value();
  bool found = false;
};

void consider(GridBest& best, double objective, double rho0, double rho1) {
  if (!best.found || objective > best.objective) {
    best = {objective, rho0, rho1, true};
  }
}

OptimizationOutcome infeasible_outcome(const FeasibleInterval& interval, long evals) {
  OptimizationOutcome out{};
  out.objective = nan_value();
  out.rho0 = nan_value();
  out.rho1 = nan_value();
  out.interval = interval;
  out.evaluations = evals;
  out.status = SolveStatus::Infeasible;
  return out;
}

}  // namespace

// Every route (intervals, solvers, oracles) treats "value >= eps" as
// "value >= eps - kConstraintSlack"; boundary-active optima stay inside
// the same floored feasible set everywhere.
FeasibleInterval feasible_interval_p1(const LinkObjectives& obj, double r_eps,
                                      const SolverConfig& cfg) {
  validate(cfg);
  if (r_eps < 0.0) throw std::domain_error("r_eps must be >= 0");
  const double floor = r_eps - kConstraintSlack;
  return margin_interval([&](double rho0) { return obj.rate(rho0, 0.0) - floor; }, cfg);
}

FeasibleInterval feasible_interval_p2(const LinkObjectives& obj, double e_eps,
                                      const SolverConfig& cfg) {
  validate(cfg);
  if (e_eps < 0.0) throw std::domain_error("e_eps must be >= 0");
  const double floor = e_eps - kConstraintSlack;
  return margin_interval([&](double rho0) { return obj.energy(rho0, 1.0) - floor; }, cfg);
}

namespace {

// Scan the rho0 grid inside [lo, hi], placing rho1 on the constraint
// boundary supplied by boundary_rho1 (clamped to [0,1]); widest-sense
// ties keep the smallest rho0.
GridBest scan_interval(const FeasibleInterval& interval, double step,
                       const std::function<double(double)>& boundary_rho1,
                       const std::function<double(double, double)>& objective) {
  GridBest best{};
  const double hi = std::min(interval.hi, 1.0 - step);
  const long k_lo = static_cast<long>(std::ceil(interval.lo / step - 1e-12));
  const long k_hi = static_cast<long>(std::floor(hi / step + 1e-12));
  for (long k = k_lo; k <= k_hi; ++k) {
    const double rho0 = static_cast<double>(k) * step;
    double rho1 = boundary_rho1(rho0);
    if (!std::isfinite(rho1)) continue;
    rho1 = std::clamp(rho1, 0.0, 1.0);
    consider(best, objective(rho0, rho1), rho0, rho1);
  }
  if (!best.found && !interval.empty) {
    // Interval narrower than the grid: fall back to its peak.
    const double rho0 = std::min(interval.peak, 1.0 - step);
    double rho1 = std::clamp(boundary_rho1(rho0), 0.0, 1.0);
    consider(best, objective(rho0, rho1), rho0, rho1);
  }
  return best;
}

OptimizationOutcome from_best(const GridBest& best, const FeasibleInterval& interval,
                              long evals, SolveStatus status) {
  OptimizationOutcome out{};
  out.objective = best.objective;
  out.rho0 = best.rho0;
  out.rho1 = best.rho1;
  out.interval = interval;
  out.evaluations = evals;
  out.status = status;
  return out;
}

}  // namespace

OptimizationOutcome maximize_energy_subject_to_rate(const LinkObjectives& obj,
                                                    double r_eps, const SolverConfig& cfg) {
  validate(cfg);
  obj.reset_evaluations();
  const AssumptionReport assumptions = sanity_check_assumptions(obj);
  if (!assumptions.rate_margin_unimodal) {
    OptimizationOutcome out = grid_oracle_p1(obj, r_eps, cfg.grid_step);
    if (out.status == SolveStatus::Optimal) out.status = SolveStatus::FellBackToGrid;
    return out;
  }
  const FeasibleInterval interval = feasible_interval_p1(obj, r_eps, cfg);
  if (interval.empty) return infeasible_outcome(interval, obj.evaluations());

  // E is nondecreasing in rho1, so the rate boundary is optimal.
  const GridBest best = scan_interval(
      interval, cfg.grid_step,
      [&](double rho0) { return obj.rho1_upper_for_rate(rho0, r_eps - kConstraintSlack); },
      [&](double rho0, double rho1) { return obj.energy(rho0, rho1); });
  if (!best.found) return infeasible_outcome(interval, obj.evaluations());
  return from_best(best, interval, obj.evaluations(), SolveStatus::Optimal);
}

OptimizationOutcome maximize_rate_subject_to_energy(const LinkObjectives& obj,
                                                    double e_eps, const SolverConfig& cfg) {
  validate(cfg);
  obj.reset_evaluations();
  const AssumptionReport assumptions = sanity_check_assumptions(obj);
  if (!assumptions.energy_margin_unimodal) {
    OptimizationOutcome out = grid_oracle_p2(obj, e_eps, cfg.grid_step);
    if (out.status == SolveStatus::Optimal) out.status = SolveStatus::FellBackToGrid;
    return out;
  }
  const FeasibleInterval interval = feasible_interval_p2(obj, e_eps, cfg);
  if (interval.empty) return infeasible_outcome(interval, obj.evaluations());

  // R is nonincreasing in rho1, so the energy boundary is optimal.
  const GridBest best = scan_interval(
      interval, cfg.grid_step,
      [&](double rho0) {
        const double rho1 = obj.rho1_lower_for_energy(rho0, e_eps - kConstraintSlack);
        return rho1 > 1.0 + 1e-12 ? nan_value() : rho1;
      },
      [&](double rho0, double rho1) { return obj.rate(rho0, rho1); });
  if (!best.found) return infeasible_outcome(interval, obj.evaluations());
  return from_best(best, interval, obj.evaluations(), SolveStatus::Optimal);
}

OptimizationOutcome grid_search(const std::function<double(double, double)>& objective,
                                const std::function<bool(double, double)>& feasible,
                                double step) {
  if (!(step > 0.0 && step < 1.0)) throw std::domain_error("grid step must be in (0, 1)");
  GridBest best{};
  long evals = 0;
  const long n0 = static_cast<long>(std::floor((1.0 - step) / step + 1e-12));
  const long n1 = static_cast<long>(std::floor(1.0 / step + 1e-12));
  for (long i = 0; i <= n0; ++i) {
    const double rho0 = static_cast<double>(i) * step;
    for (long j = 0; j <= n1; ++j) {
      const double rho1 = std::min(static_cast<double>(j) * step, 1.0);
      ++evals;
      if (!feasible(rho0, rho1)) continue;
      consider(best, objective(rho0, rho1), rho0, rho1);
    }
  }
  if (!best.found) return infeasible_outcome(FeasibleInterval{}, evals);
  return from_best(best, FeasibleInterval{}, evals, SolveStatus::Optimal);
}

namespace {

// Column refinement shared by the two oracles: locate the rho1 where
// `keep(rho1)` flips, by bisection on the raw constraint evaluations.
double column_boundary(const std::function<bool(double)>& feasible_at, bool lower_boundary) {
  // lower_boundary: feasible set is [b, 1]; otherwise it is [0, b].
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 52; ++i) {
    const double mid = 0.5 * (lo + hi);
    const bool ok = feasible_at(mid);
    if (lower_boundary) {
      (ok ? hi : lo) = mid;
    } else {
      (ok ? lo : hi) = mid;
    }
  }
  return lower_boundary ? hi : lo;
}

}  // namespace

OptimizationOutcome grid_oracle_p1(const LinkObjectives& obj, double r_eps, double step) {
  if (!(step > 0.0 && step < 1.0)) throw std::domain_error("grid step must be in (0, 1)");
  const long before = obj.evaluations();
  GridBest best{};
  const long n0 = static_cast<long>(std::floor((1.0 - step) / step + 1e-12));
  const long n1 = static_cast<long>(std::floor(1.0 / step + 1e-12));
  for (long i = 0; i <= n0; ++i) {
    const double rho0 = static_cast<double>(i) * step;
    for (long j = 0; j <= n1; ++j) {
      const double rho1 = std::min(static_cast<double>(j) * step, 1.0);
      if (obj.rate(rho0, rho1) + kConstraintSlack < r_eps) continue;
      consider(best, obj.energy(rho0, rho1), rho0, rho1);
    }
    // The column optimum sits where the rate constraint becomes active;
    // refine it so grid quantization in rho1 does not bias the oracle.
    if (obj.rate(rho0, 0.0) + kConstraintSlack >= r_eps &&
        obj.rate(rho0, 1.0) + kConstraintSlack < r_eps) {
      const double b = column_boundary(
          [&](double rho1) { return obj.rate(rho0, rho1) + kConstraintSlack >= r_eps; },
          /*lower_boundary=*/false);
      consider(best, obj.energy(rho0, b), rho0, b);
    }
  }
  FeasibleInterval none{};
  if (!best.found) return infeasible_outcome(none, obj.evaluations() - before);
  return from_best(best, none, obj.evaluations() - before, SolveStatus::Optimal);
}

OptimizationOutcome grid_oracle_p2(const LinkObjectives& obj, double e_eps, double step) {
  if (!(step > 0.0 && step < 1.0)) throw std::domain_error("grid step must be in (0, 1)");
  const long before = obj.evaluations();
  GridBest best{};
  const long n0 = static_cast<long>(std::floor((1.0 - step) / step + 1e-12));
  const long n1 = static_cast<long>(std::floor(1.0 / step + 1e-12));
  for (long i = 0; i <= n0; ++i) {
    const double rho0 = static_cast<double>(i) * step;
    for (long j = 0; j <= n1; ++j) {
      const double rho1 = std::min(static_cast<double>(j) * step, 1.0);
      if (obj.energy(rho0, rho1) + kConstraintSlack < e_eps) continue;
      consider(best, obj.rate(rho0, rho1), rho0, rho1);
    }
    if (obj.energy(rho0, 1.0) + kConstraintSlack >= e_eps &&
        obj.energy(rho0, 0.0) + kConstraintSlack < e_eps) {
      const double b = column_boundary(
          [&](double rho1) { return obj.energy(rho0, rho1) + kConstraintSlack >= e_eps; },
          /*lower_boundary=*/true);
      consider(best, obj.rate(rho0, b), rho0, b);
    }
  }
  FeasibleInterval none{};
  if (!best.found) return infeasible_outcome(none, obj.evaluations() - before);
  return from_best(best, none, obj.evaluations() - before, SolveStatus::Optimal);
}

}  // namespace thziscap
