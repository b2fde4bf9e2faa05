#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "effdemand/model.hpp"

namespace effdemand {

struct SolverConfig {
  double tol_abs = 1e-10;
  int max_iter = 200;
  double damping = 1.0;  // alpha in (0, 1]
  int bracket_expansion_limit = 60;

  /// Throws ErrorCode::invalid_parameter when a field is out of range.
  void validate() const;

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

enum class TraceStatus { converged, max_iter, bracket_failure };

std::string_view status_name(TraceStatus status) noexcept;

struct TracePoint {
  double value = 0.0;
  double residual = 0.0;
};

/// Every evaluated iterate in order, with the residual exactly as computed.
struct IterationTrace {
  std::vector<TracePoint> points;
  TraceStatus status = TraceStatus::max_iter;

  bool converged() const noexcept { return status == TraceStatus::converged; }
};

struct SolveResult {
  double value = 0.0;
  IterationTrace trace;

  bool converged() const noexcept { return trace.converged(); }
};

using ScalarFn = std::function<double(double)>;

/// Bisection on [lo, hi]. Requires a sign change (either endpoint may be
/// infinite-valued). Stops once the bracket is no wider than tol_abs, a zero
/// is hit exactly, or the bracket can no longer be split in double
/// precision. Returns the bracket endpoint with the smaller |f|.
SolveResult bisect_root(const ScalarFn& f, double lo, double hi,
                        const SolverConfig& cfg);

/// Halvings needed to shrink [lo, hi] to tol.
int bisection_iterations_needed(double lo, double hi, double tol);

/// x <- (1 - alpha) x + alpha g(x) until |step| <= tol_abs. Non-convergence
/// is reported through the trace status, not thrown. The trace holds one
/// point per evaluation of g, including the final iterate.
SolveResult fixed_point(const ScalarFn& g, double x0, const SolverConfig& cfg);

/// Crossing of aggregate demand and supply at fixed investment, capped at
/// full employment. The rate field is NaN: the money market is not solved.
EquilibriumReport solve_effective_demand(const Economy& eco, double investment,
                                         const SolverConfig& cfg = {});

/// Closed-form inverse of the hyperbolic liquidity function.
double interest_rate_closed_form(const LiquidityFunction& lp, double money,
                                 double income, double wage_unit);

/// Money-market clearing by bisection, bracketing upward from the floor.
SolveResult interest_rate_bisect(const LiquidityFunction& lp, double money,
                                 double income, double wage_unit,
                                 const SolverConfig& cfg = {});

/// The unique r > r_floor with L1(Y) + L2(r) = M. Throws
/// ErrorCode::insufficient_money when M <= kappa * Y * W. The hyperbolic
/// family has an exact inverse, so no iteration is involved;
/// interest_rate_bisect is the independent cross-check.
double solve_interest_rate(const LiquidityFunction& lp, double money,
                           double income, double wage_unit);

/// Simultaneous money market, investment and goods market. Damped fixed
/// point on Y with g(Y) = min(Y_full, C(Y) + I(r(Y)) + public investment).
EquilibriumReport solve_general_equilibrium(const Economy& eco,
                                            const SolverConfig& cfg = {});

}  // namespace effdemand
