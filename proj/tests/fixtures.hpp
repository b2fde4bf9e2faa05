#pragma once

#include <cmath>

#include "effdemand/model.hpp"

namespace fixtures {

/// Linear consumption with the money market decoupled from income
/// (kappa = 0), so the rate depends on the money supply alone.
inline effdemand::Economy decoupled_linear(double c0, double c, double money = 60.0,
                                        double n_full = 1e6) {
  effdemand::MacroParams m;
  m.money_supply = money;
  m.full_employment = n_full;
  return effdemand::Economy(effdemand::ConsumptionFunction::linear(c0, c),
                         effdemand::MecSchedule({50.0, 10.0}),
                         effdemand::LiquidityFunction({0.0, 1.0, 1.0, 0.0}), m);
}

/// Liquidity-trap construction. Speculative demand is made extremely
/// rate-elastic (curvature 10) and the scale is chosen so that, at the
/// target speculative balance, the rate sits only `spread` above the floor:
///   A = speculative_balance * spread^curvature.
/// A 10% rise in money then moves r - r_floor by the factor 1.1^(-1/10),
/// about 0.95% of a spread that is itself under 5% of r.
struct TrapRecipe {
  double rate_floor = 0.02;
  double spread = 0.001;
  double curvature = 10.0;
  double speculative_balance = 1000.0;
  double transactions = 0.01;
};

inline effdemand::Economy liquidity_trap(const TrapRecipe& recipe = {}) {
  effdemand::LiquidityParams lp;
  lp.transactions = recipe.transactions;
  lp.curvature = recipe.curvature;
  lp.rate_floor = recipe.rate_floor;
  lp.speculative_scale = recipe.speculative_balance * std::pow(recipe.spread, recipe.curvature);
  effdemand::MacroParams m;
  // Transactions demand at the goods-market equilibrium is small; a rough
  // allowance keeps the speculative balance close to its target.
  const double income_guess = (10.0 + 100.0 * std::exp(-10.0 * (recipe.rate_floor + recipe.spread))) / 0.2;
  m.money_supply = recipe.speculative_balance + recipe.transactions * income_guess;
  m.full_employment = 1e5;
  return effdemand::Economy(effdemand::ConsumptionFunction::linear(10.0, 0.8),
                         effdemand::MecSchedule({100.0, 10.0}), effdemand::LiquidityFunction(lp), m);
}

}  // namespace fixtures
