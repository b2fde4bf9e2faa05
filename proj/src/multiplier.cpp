#include "effdemand/multiplier.hpp"

#include <cmath>
#include <sstream>

#include "effdemand/errors.hpp"

namespace effdemand {

namespace {

EquilibriumReport uncapped_equilibrium(const Economy& eco, double investment,
                                       const SolverConfig& cfg) {
  auto report = solve_effective_demand(eco, investment, cfg);
  if (report.at_full_employment) {
    std::ostringstream os;
    os << "equilibrium at investment " << investment
       << " is capped at full employment; the multiplier is undefined there";
    throw Error(ErrorCode::full_employment, os.str());
  }
  if (!report.converged) {
    std::ostringstream os;
    os << "effective demand did not converge at investment " << investment
       << " (residual " << report.residual << ")";
    throw Error(ErrorCode::non_convergence, os.str());
  }
  return report;
}

}  // namespace

double local_multiplier(const ConsumptionFunction& cf, double income) {
  const double c = cf.marginal(income);
  if (c >= 1.0) {
    std::ostringstream os;
    os << "marginal propensity " << c << " >= 1 at income " << income;
    throw Error(ErrorCode::degenerate, os.str());
  }
  return 1.0 / (1.0 - c);
}

double finite_multiplier(const Economy& eco, double i1, double i2,
                         const SolverConfig& cfg) {
  if (i1 == i2) {
    throw Error(ErrorCode::domain, "finite multiplier needs two distinct investment levels");
  }
  const auto first = uncapped_equilibrium(eco, i1, cfg);
  const auto second = uncapped_equilibrium(eco, i2, cfg);
  return (second.income - first.income) / (i2 - i1);
}

ExpansionPath expansion_path(const Economy& eco, double i1, double i2,
                             const SolverConfig& cfg) {
  if (!(i2 > i1)) {
    throw Error(ErrorCode::domain, "expansion path needs i2 > i1");
  }
  const auto start = uncapped_equilibrium(eco, i1, cfg);
  uncapped_equilibrium(eco, i2, cfg);

  ExpansionPath path;
  path.initial_income = start.income;
  path.investment_step = i2 - i1;

  const auto& cf = eco.consumption();
  auto round = [&](double income) {
    const double demand = cf.consumption(income) + i2;
    path.rounds.push_back({income, demand});
    return demand;
  };
  SolverConfig undamped = cfg;
  undamped.damping = 1.0;
  const auto fp = fixed_point(round, start.income, undamped);

  path.terminal_income = fp.value;
  path.status = fp.trace.status;
  path.realized_multiplier = (path.terminal_income - path.initial_income) / path.investment_step;
  return path;
}

}  // namespace effdemand
