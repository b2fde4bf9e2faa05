#pragma once

#include <vector>

#include "effdemand/model.hpp"
#include "effdemand/solvers.hpp"

namespace effdemand {

/// One application of g(Y) = C(Y) + I2: income in hand and the demand it
/// generates, which becomes the next round's income.
struct ExpansionRound {
  double income = 0.0;
  double demand = 0.0;
};

struct ExpansionPath {
  double initial_income = 0.0;   // Y1, equilibrium at I1
  double investment_step = 0.0;  // I2 - I1
  std::vector<ExpansionRound> rounds;
  double terminal_income = 0.0;  // Y2
  double realized_multiplier = 0.0;
  TraceStatus status = TraceStatus::max_iter;
};

/// k = 1 / (1 - c(Y)).
double local_multiplier(const ConsumptionFunction& cf, double income);

/// (Y*(I2) - Y*(I1)) / (I2 - I1) from two full effective-demand solves.
/// Throws ErrorCode::full_employment when either equilibrium is capped.
double finite_multiplier(const Economy& eco, double i1, double i2,
                         const SolverConfig& cfg = {});

/// Round-by-round path from the equilibrium at I1 to the one at I2 > I1,
/// holding investment at I2 (no money-market feedback). Always undamped.
ExpansionPath expansion_path(const Economy& eco, double i1, double i2,
                             const SolverConfig& cfg = {});

}  // namespace effdemand
