#pragma once

// Building blocks of the effective-demand model. Real aggregates (income,
// consumption, investment, supply) are measured in wage units; only money
// supply and money demand are in money units, bridged by the wage unit W.

#include <string_view>
#include <variant>
#include <vector>

namespace effdemand {

// ---------------------------------------------------------------------------
// Propensity to consume
// ---------------------------------------------------------------------------

/// C(Y) = autonomous + mpc * Y
struct LinearConsumption {
  double autonomous = 0.0;
  double mpc = 0.0;

  friend bool operator==(const LinearConsumption&,
                         const LinearConsumption&) = default;
};

/// C(Y) = autonomous + (initial_mpc / decay) * (1 - exp(-decay * Y)).
/// The marginal propensity initial_mpc * exp(-decay * Y) falls with income.
struct SaturatingConsumption {
  double autonomous = 0.0;
  double initial_mpc = 0.0;
  double decay = 0.0;

  friend bool operator==(const SaturatingConsumption&,
                         const SaturatingConsumption&) = default;
};

struct Knot {
  double income = 0.0;
  double consumption = 0.0;

  friend bool operator==(const Knot&, const Knot&) = default;
};

/// Linear interpolation through knots; the first knot sits at zero income and
/// the last segment is extended beyond the final knot.
struct PiecewiseConsumption {
  std::vector<Knot> knots;

  friend bool operator==(const PiecewiseConsumption&,
                         const PiecewiseConsumption&) = default;
};

enum class ConsumptionFamily { linear, saturating_mpc, piecewise_linear };

std::string_view family_name(ConsumptionFamily family) noexcept;

using ConsumptionParams =
    std::variant<LinearConsumption, SaturatingConsumption, PiecewiseConsumption>;

/// A validated concave consumption function. Construction enforces
/// 0 < c(Y) < 1, non-increasing c(Y) and C(0) >= 0.
class ConsumptionFunction {
 public:
  explicit ConsumptionFunction(ConsumptionParams params);

  static ConsumptionFunction linear(double autonomous, double mpc);
  static ConsumptionFunction saturating(double autonomous, double initial_mpc,
                                        double decay);
  static ConsumptionFunction piecewise(std::vector<Knot> knots);

  ConsumptionFamily family() const noexcept;
  const ConsumptionParams& params() const noexcept { return params_; }

  /// Consumption demand at income `income` (wage units, >= 0).
  double consumption(double income) const;
  /// Analytic derivative C'(Y). Right-continuous at piecewise knots.
  double marginal(double income) const;
  double autonomous() const noexcept;

  friend bool operator==(const ConsumptionFunction&,
                         const ConsumptionFunction&) = default;

 private:
  ConsumptionParams params_;
};

// ---------------------------------------------------------------------------
// Marginal efficiency of capital
// ---------------------------------------------------------------------------

/// I(r) = max(floor, (1 + optimism) * base_investment * exp(-rate_sensitivity * r))
struct MecParams {
  double base_investment = 0.0;
  double rate_sensitivity = 0.0;
  double optimism = 0.0;
  double floor = 0.0;

  friend bool operator==(const MecParams&, const MecParams&) = default;
};

class MecSchedule {
 public:
  explicit MecSchedule(const MecParams& params);

  const MecParams& params() const noexcept { return params_; }
  double investment(double rate) const;
  /// dI/dr, zero where the floor binds.
  double slope(double rate) const;

  friend bool operator==(const MecSchedule&, const MecSchedule&) = default;

 private:
  MecParams params_;
};

// ---------------------------------------------------------------------------
// Liquidity preference
// ---------------------------------------------------------------------------

/// L(Y, r) = transactions * Y * W + speculative_scale * (r - rate_floor)^(-curvature)
struct LiquidityParams {
  double transactions = 0.0;
  double speculative_scale = 0.0;
  double curvature = 0.0;
  double rate_floor = 0.0;

  friend bool operator==(const LiquidityParams&,
                         const LiquidityParams&) = default;
};

class LiquidityFunction {
 public:
  explicit LiquidityFunction(const LiquidityParams& params);

  const LiquidityParams& params() const noexcept { return params_; }

  /// Transactions and precautionary demand L1, in money units.
  double transactions_demand(double income, double wage_unit = 1.0) const;
  /// Speculative demand L2; throws ErrorCode::rate_floor for r <= floor.
  double speculative_demand(double rate) const;
  double demand(double income, double rate, double wage_unit = 1.0) const;

  friend bool operator==(const LiquidityFunction&,
                         const LiquidityFunction&) = default;

 private:
  LiquidityParams params_;
};

// ---------------------------------------------------------------------------
// Economy
// ---------------------------------------------------------------------------

struct MacroParams {
  double money_supply = 0.0;     // money units
  double productivity = 1.0;     // wage units of output per employment unit
  double full_employment = 0.0;  // employment units
  double wage_unit = 1.0;        // money per employment unit
  double public_investment = 0.0;  // exogenous investment, wage units

  friend bool operator==(const MacroParams&, const MacroParams&) = default;
};

class Economy {
 public:
  Economy(ConsumptionFunction consumption, MecSchedule mec,
          LiquidityFunction liquidity, const MacroParams& macro);

  const ConsumptionFunction& consumption() const noexcept { return consumption_; }
  const MecSchedule& mec() const noexcept { return mec_; }
  const LiquidityFunction& liquidity() const noexcept { return liquidity_; }
  const MacroParams& macro() const noexcept { return macro_; }

  double money_supply() const noexcept { return macro_.money_supply; }
  double productivity() const noexcept { return macro_.productivity; }
  double full_employment() const noexcept { return macro_.full_employment; }
  double wage_unit() const noexcept { return macro_.wage_unit; }
  double public_investment() const noexcept { return macro_.public_investment; }
  /// Income at full employment, productivity * full_employment.
  double full_employment_income() const noexcept {
    return macro_.productivity * macro_.full_employment;
  }

  Economy with_consumption(ConsumptionFunction consumption) const;
  Economy with_mec(const MecParams& params) const;
  Economy with_liquidity(const LiquidityParams& params) const;
  Economy with_macro(const MacroParams& macro) const;

  friend bool operator==(const Economy&, const Economy&) = default;

 private:
  ConsumptionFunction consumption_;
  MecSchedule mec_;
  LiquidityFunction liquidity_;
  MacroParams macro_;
};

/// Solved dependent variables with solver diagnostics.
struct EquilibriumReport {
  double employment = 0.0;  // N*
  double income = 0.0;      // Y*, wage units
  double rate = 0.0;        // r*
  double investment = 0.0;  // I*, private plus public, wage units
  double residual = 0.0;    // demand minus supply at the solution, wage units
  int iterations = 0;
  bool converged = false;
  bool at_full_employment = false;
  bool at_rate_floor = false;
};

// Free-function forms of the model evaluations.

double eval_consumption(const ConsumptionFunction& cf, double income);
double marginal_propensity(const ConsumptionFunction& cf, double income);
double eval_investment(const MecSchedule& mec, double rate);
double eval_liquidity(const LiquidityFunction& lp, double income, double rate,
                      double wage_unit = 1.0);

/// Z(N) = productivity * N for 0 <= N <= full employment.
double aggregate_supply(const Economy& eco, double employment);
/// D(N) = C(Z(N)) + investment.
double aggregate_demand(const Economy& eco, double employment,
                        double investment);

}  // namespace effdemand
