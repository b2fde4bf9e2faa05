#include "effdemand/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "effdemand/errors.hpp"

namespace effdemand {

namespace {

bool same_sign(double a, double b) { return std::signbit(a) == std::signbit(b); }

void require_finite_value(double v, const char* what) {
  if (std::isnan(v)) {
    throw Error(ErrorCode::domain, std::string(what) + " evaluated to NaN");
  }
}

void require_money_above_transactions(const LiquidityFunction& lp, double money,
                                      double income, double wage_unit) {
  const double l1 = lp.transactions_demand(income, wage_unit);
  if (!(money > l1)) {
    std::ostringstream os;
    os << "money supply " << money << " does not exceed transactions demand "
       << l1 << " at income " << income << "; no interest rate clears the money market";
    throw Error(ErrorCode::insufficient_money, os.str());
  }
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tol_abs > 0.0) || !std::isfinite(tol_abs)) {
    throw Error(ErrorCode::invalid_parameter, "solver.tol_abs must be > 0");
  }
  if (max_iter < 1) {
    throw Error(ErrorCode::invalid_parameter, "solver.max_iter must be >= 1");
  }
  if (!(damping > 0.0 && damping <= 1.0)) {
    throw Error(ErrorCode::invalid_parameter, "solver.damping must lie in (0, 1]");
  }
  if (bracket_expansion_limit < 0) {
    throw Error(ErrorCode::invalid_parameter,
                "solver.bracket_expansion_limit must be >= 0");
  }
}

std::string_view status_name(TraceStatus status) noexcept {
  switch (status) {
    case TraceStatus::converged: return "converged";
    case TraceStatus::max_iter: return "max-iter";
    case TraceStatus::bracket_failure: return "bracket-failure";
  }
  return "unknown";
}

int bisection_iterations_needed(double lo, double hi, double tol) {
  if (!(hi - lo > tol)) return 0;
  return static_cast<int>(std::ceil(std::log2((hi - lo) / tol)));
}

SolveResult bisect_root(const ScalarFn& f, double lo, double hi,
                        const SolverConfig& cfg) {
  cfg.validate();
  if (!(lo < hi)) {
    std::ostringstream os;
    os << "bisection needs lo < hi, got [" << lo << ", " << hi << "]";
    throw Error(ErrorCode::domain, os.str());
  }
  double flo = f(lo);
  double fhi = f(hi);
  require_finite_value(flo, "f(lo)");
  require_finite_value(fhi, "f(hi)");

  SolveResult result;
  if (flo == 0.0 || fhi == 0.0) {
    result.value = flo == 0.0 ? lo : hi;
    result.trace.status = TraceStatus::converged;
    return result;
  }
  if (same_sign(flo, fhi)) {
    std::ostringstream os;
    os << "no sign change on [" << lo << ", " << hi << "]: f(lo) = " << flo
       << ", f(hi) = " << fhi;
    throw Error(ErrorCode::no_sign_change, os.str());
  }

  auto& trace = result.trace;
  trace.status = TraceStatus::max_iter;
  for (int it = 0; it < cfg.max_iter; ++it) {
    if (hi - lo <= cfg.tol_abs) {
      trace.status = TraceStatus::converged;
      break;
    }
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) {
      // Adjacent doubles: the bracket is as tight as the format allows.
      trace.status = TraceStatus::converged;
      break;
    }
    const double fm = f(mid);
    require_finite_value(fm, "f(mid)");
    trace.points.push_back({mid, fm});
    if (fm == 0.0) {
      lo = hi = mid;
      flo = fhi = 0.0;
      trace.status = TraceStatus::converged;
      break;
    }
    if (same_sign(fm, flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  if (trace.status != TraceStatus::converged && hi - lo <= cfg.tol_abs) {
    trace.status = TraceStatus::converged;
  }
  result.value = std::abs(flo) <= std::abs(fhi) ? lo : hi;
  return result;
}

SolveResult fixed_point(const ScalarFn& g, double x0, const SolverConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(x0)) {
    throw Error(ErrorCode::domain, "fixed-point start must be finite");
  }
  const double alpha = cfg.damping;
  SolveResult result;
  auto& trace = result.trace;
  trace.status = TraceStatus::max_iter;

  auto evaluate = [&](double x) {
    const double gx = g(x);
    if (!std::isfinite(gx)) {
      std::ostringstream os;
      os << "fixed-point map left its domain at x = " << x;
      throw Error(ErrorCode::domain, os.str());
    }
    trace.points.push_back({x, gx - x});
    return gx;
  };

  double x = x0;
  for (int n = 0; n < cfg.max_iter; ++n) {
    const double gx = evaluate(x);
    const double next = (1.0 - alpha) * x + alpha * gx;
    const bool done = std::abs(next - x) <= cfg.tol_abs;
    x = next;
    if (done) {
      trace.status = TraceStatus::converged;
      break;
    }
  }
  evaluate(x);
  result.value = x;
  return result;
}

EquilibriumReport solve_effective_demand(const Economy& eco, double investment,
                                         const SolverConfig& cfg) {
  cfg.validate();
  if (!(investment >= 0.0) || !std::isfinite(investment)) {
    std::ostringstream os;
    os << "investment must be finite and >= 0, got " << investment;
    throw Error(ErrorCode::domain, os.str());
  }
  auto excess = [&](double n) {
    return aggregate_demand(eco, n, investment) - aggregate_supply(eco, n);
  };

  EquilibriumReport report;
  report.rate = std::numeric_limits<double>::quiet_NaN();
  report.investment = investment;

  const double n_full = eco.full_employment();
  const double at_zero = excess(0.0);
  if (at_zero < 0.0) {
    throw Error(ErrorCode::invalid_parameter,
                "excess demand is negative at zero employment");
  }
  const double at_full = excess(n_full);
  if (at_full >= 0.0) {
    report.employment = n_full;
    report.income = aggregate_supply(eco, n_full);
    report.residual = at_full;
    report.converged = true;
    report.at_full_employment = true;
    return report;
  }
  if (at_zero == 0.0) {
    report.residual = 0.0;
    report.converged = true;
    return report;
  }

  // Bisect in employment at a tolerance that bounds the residual in wage units.
  SolverConfig inner = cfg;
  inner.tol_abs = cfg.tol_abs / eco.productivity();
  const auto root = bisect_root(excess, 0.0, n_full, inner);
  report.employment = root.value;
  report.income = aggregate_supply(eco, root.value);
  report.residual = excess(root.value);
  report.iterations = static_cast<int>(root.trace.points.size());
  report.converged = root.converged() && std::abs(report.residual) <= cfg.tol_abs;
  return report;
}

double interest_rate_closed_form(const LiquidityFunction& lp, double money,
                                 double income, double wage_unit) {
  require_money_above_transactions(lp, money, income, wage_unit);
  const auto& p = lp.params();
  const double speculative = money - lp.transactions_demand(income, wage_unit);
  return p.rate_floor + std::pow(p.speculative_scale / speculative, 1.0 / p.curvature);
}

SolveResult interest_rate_bisect(const LiquidityFunction& lp, double money,
                                 double income, double wage_unit,
                                 const SolverConfig& cfg) {
  cfg.validate();
  require_money_above_transactions(lp, money, income, wage_unit);
  const double floor = lp.params().rate_floor;
  const double l1 = lp.transactions_demand(income, wage_unit);
  auto excess = [&](double r) {
    if (r <= floor) return std::numeric_limits<double>::infinity();
    return l1 + lp.speculative_demand(r) - money;
  };

  double width = 1.0;
  int doublings = 0;
  while (excess(floor + width) > 0.0) {
    if (++doublings > cfg.bracket_expansion_limit) {
      SolveResult failed;
      failed.value = std::numeric_limits<double>::quiet_NaN();
      failed.trace.status = TraceStatus::bracket_failure;
      return failed;
    }
    width *= 2.0;
  }
  return bisect_root(excess, floor, floor + width, cfg);
}

double solve_interest_rate(const LiquidityFunction& lp, double money,
                           double income, double wage_unit) {
  return interest_rate_closed_form(lp, money, income, wage_unit);
}

EquilibriumReport solve_general_equilibrium(const Economy& eco,
                                            const SolverConfig& cfg) {
  cfg.validate();
  const auto& lp = eco.liquidity();
  const double money = eco.money_supply();
  const double wage = eco.wage_unit();
  const double y_full = eco.full_employment_income();

  auto rate_at = [&](double y) { return solve_interest_rate(lp, money, y, wage); };
  auto investment_at = [&](double y) {
    return eco.mec().investment(rate_at(y)) + eco.public_investment();
  };
  auto demand_at = [&](double y) {
    return eco.consumption().consumption(y) + investment_at(y);
  };

  auto finish = [&](double y, EquilibriumReport report) {
    report.income = y;
    report.employment = y / eco.productivity();
    report.rate = rate_at(y);
    report.investment = eco.mec().investment(report.rate) + eco.public_investment();
    report.residual = eco.consumption().consumption(y) + report.investment - y;
    report.at_rate_floor = report.rate - lp.params().rate_floor <= cfg.tol_abs;
    return report;
  };

  // g(Y) - Y is strictly decreasing, so non-negative excess at the ceiling
  // means the equilibrium is the ceiling itself.
  if (money > lp.transactions_demand(y_full, wage) && demand_at(y_full) >= y_full) {
    EquilibriumReport report;
    report.converged = true;
    report.at_full_employment = true;
    report = finish(y_full, report);
    report.employment = eco.full_employment();
    return report;
  }

  // Start below the solution: Y_hi solves the goods market at the rate for
  // zero income, Y_lo at the rate for Y_hi, and Y_lo <= Y* <= Y_hi.
  double start = 0.0;
  const auto upper = solve_effective_demand(eco, investment_at(0.0), cfg);
  if (upper.converged && money > lp.transactions_demand(upper.income, wage)) {
    const auto lower = solve_effective_demand(eco, investment_at(upper.income), cfg);
    if (lower.converged) start = lower.income;
  }

  auto g = [&](double y) { return std::min(y_full, demand_at(y)); };
  // Stepping at tol * alpha bounds the final residual by tol.
  SolverConfig inner = cfg;
  inner.tol_abs = cfg.tol_abs * cfg.damping;
  const auto fp = fixed_point(g, start, inner);

  EquilibriumReport report = finish(fp.value, {});
  report.iterations = static_cast<int>(fp.trace.points.size()) - 1;
  report.converged = fp.converged() && std::abs(report.residual) <= cfg.tol_abs;
  return report;
}

}  // namespace effdemand
