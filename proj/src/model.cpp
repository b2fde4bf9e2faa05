#include "effdemand/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "effdemand/errors.hpp"

namespace effdemand {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::invalid_parameter, what);
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    invalid(std::string(name) + " must be finite");
  }
}

void require_mpc_bounds(double mpc, const char* where) {
  require_finite(mpc, where);
  if (mpc >= 1.0) {
    std::ostringstream os;
    os << where << ": marginal propensity " << mpc
       << " >= 1 violates the fundamental psychological law (0 < c < 1)";
    invalid(os.str());
  }
  if (mpc <= 0.0) {
    std::ostringstream os;
    os << where << ": marginal propensity " << mpc
       << " <= 0 violates the fundamental psychological law (0 < c < 1)";
    invalid(os.str());
  }
}

void require_income(double income) {
  if (!(income >= 0.0)) {
    std::ostringstream os;
    os << "income must be >= 0, got " << income;
    throw Error(ErrorCode::domain, os.str());
  }
}

double segment_slope(const Knot& a, const Knot& b) {
  return (b.consumption - a.consumption) / (b.income - a.income);
}

struct Validate {
  void operator()(const LinearConsumption& p) const {
    require_finite(p.autonomous, "consumption.c0");
    if (p.autonomous < 0.0) invalid("consumption.c0: autonomous consumption must be >= 0");
    require_mpc_bounds(p.mpc, "consumption.c");
  }
  void operator()(const SaturatingConsumption& p) const {
    require_finite(p.autonomous, "consumption.c0");
    if (p.autonomous < 0.0) invalid("consumption.c0: autonomous consumption must be >= 0");
    require_mpc_bounds(p.initial_mpc, "consumption.c_hi");
    require_finite(p.decay, "consumption.lambda");
    if (p.decay <= 0.0) invalid("consumption.lambda: MPC decay rate must be > 0");
  }
  void operator()(const PiecewiseConsumption& p) const {
    const auto& k = p.knots;
    if (k.size() < 2) invalid("consumption.knots: at least two knots are required");
    for (const auto& knot : k) {
      require_finite(knot.income, "consumption.knots income");
      require_finite(knot.consumption, "consumption.knots consumption");
    }
    if (k.front().income != 0.0) invalid("consumption.knots: first knot must be at zero income");
    if (k.front().consumption < 0.0) invalid("consumption.knots: C(0) must be >= 0");
    double previous = 1.0;
    for (std::size_t i = 1; i < k.size(); ++i) {
      if (!(k[i].income > k[i - 1].income)) {
        invalid("consumption.knots: incomes must be strictly increasing");
      }
      const double s = segment_slope(k[i - 1], k[i]);
      require_mpc_bounds(s, "consumption.knots segment");
      if (s > previous) {
        invalid("consumption.knots: segment slopes must be non-increasing (concavity)");
      }
      previous = s;
    }
  }
};

std::size_t piecewise_segment(const std::vector<Knot>& knots, double income) {
  const auto it = std::upper_bound(
      knots.begin(), knots.end(), income,
      [](double y, const Knot& k) { return y < k.income; });
  const auto idx = static_cast<std::size_t>(std::distance(knots.begin(), it));
  // idx >= 1 because knots[0].income == 0 <= income.
  return std::min(idx - 1, knots.size() - 2);
}

}  // namespace

std::string_view family_name(ConsumptionFamily family) noexcept {
  switch (family) {
    case ConsumptionFamily::linear: return "linear";
    case ConsumptionFamily::saturating_mpc: return "saturating-mpc";
    case ConsumptionFamily::piecewise_linear: return "piecewise-linear";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------

ConsumptionFunction::ConsumptionFunction(ConsumptionParams params)
    : params_(std::move(params)) {
  std::visit(Validate{}, params_);
}

ConsumptionFunction ConsumptionFunction::linear(double autonomous, double mpc) {
  return ConsumptionFunction(LinearConsumption{autonomous, mpc});
}

ConsumptionFunction ConsumptionFunction::saturating(double autonomous,
                                                    double initial_mpc,
                                                    double decay) {
  return ConsumptionFunction(SaturatingConsumption{autonomous, initial_mpc, decay});
}

ConsumptionFunction ConsumptionFunction::piecewise(std::vector<Knot> knots) {
  return ConsumptionFunction(PiecewiseConsumption{std::move(knots)});
}

ConsumptionFamily ConsumptionFunction::family() const noexcept {
  return static_cast<ConsumptionFamily>(params_.index());
}

double ConsumptionFunction::consumption(double income) const {
  require_income(income);
  if (const auto* p = std::get_if<LinearConsumption>(&params_)) {
    return p->autonomous + p->mpc * income;
  }
  if (const auto* p = std::get_if<SaturatingConsumption>(&params_)) {
    return p->autonomous -
           (p->initial_mpc / p->decay) * std::expm1(-p->decay * income);
  }
  const auto& k = std::get<PiecewiseConsumption>(params_).knots;
  const auto i = piecewise_segment(k, income);
  return k[i].consumption + segment_slope(k[i], k[i + 1]) * (income - k[i].income);
}

double ConsumptionFunction::marginal(double income) const {
  require_income(income);
  if (const auto* p = std::get_if<LinearConsumption>(&params_)) {
    return p->mpc;
  }
  if (const auto* p = std::get_if<SaturatingConsumption>(&params_)) {
    return p->initial_mpc * std::exp(-p->decay * income);
  }
  const auto& k = std::get<PiecewiseConsumption>(params_).knots;
  const auto i = piecewise_segment(k, income);
  return segment_slope(k[i], k[i + 1]);
}

double ConsumptionFunction::autonomous() const noexcept {
  if (const auto* p = std::get_if<LinearConsumption>(&params_)) return p->autonomous;
  if (const auto* p = std::get_if<SaturatingConsumption>(&params_)) return p->autonomous;
  return std::get<PiecewiseConsumption>(params_).knots.front().consumption;
}

// ---------------------------------------------------------------------------

MecSchedule::MecSchedule(const MecParams& params) : params_(params) {
  require_finite(params.base_investment, "mec.i0");
  require_finite(params.rate_sensitivity, "mec.eta");
  require_finite(params.optimism, "mec.epsilon");
  require_finite(params.floor, "mec.i_min");
  if (params.base_investment < 0.0) invalid("mec.i0: base investment must be >= 0");
  if (params.rate_sensitivity <= 0.0) invalid("mec.eta: interest sensitivity must be > 0");
  if (params.optimism <= -1.0) invalid("mec.epsilon: optimism shift must be > -1");
  if (params.floor < 0.0) invalid("mec.i_min: investment floor must be >= 0");
}

double MecSchedule::investment(double rate) const {
  if (!(rate >= 0.0)) {
    std::ostringstream os;
    os << "interest rate must be >= 0, got " << rate;
    throw Error(ErrorCode::domain, os.str());
  }
  const double schedule = (1.0 + params_.optimism) * params_.base_investment *
                          std::exp(-params_.rate_sensitivity * rate);
  return std::max(params_.floor, schedule);
}

double MecSchedule::slope(double rate) const {
  const double schedule = (1.0 + params_.optimism) * params_.base_investment *
                          std::exp(-params_.rate_sensitivity * rate);
  if (schedule <= params_.floor) return 0.0;
  return -params_.rate_sensitivity * schedule;
}

// ---------------------------------------------------------------------------

LiquidityFunction::LiquidityFunction(const LiquidityParams& params)
    : params_(params) {
  require_finite(params.transactions, "liquidity.kappa");
  require_finite(params.speculative_scale, "liquidity.a");
  require_finite(params.curvature, "liquidity.gamma");
  require_finite(params.rate_floor, "liquidity.r_floor");
  if (params.transactions < 0.0) invalid("liquidity.kappa: transactions coefficient must be >= 0");
  if (params.speculative_scale <= 0.0) invalid("liquidity.a: speculative scale must be > 0");
  if (params.curvature <= 0.0) invalid("liquidity.gamma: speculative curvature must be > 0");
  if (params.rate_floor < 0.0) invalid("liquidity.r_floor: rate floor must be >= 0");
}

double LiquidityFunction::transactions_demand(double income, double wage_unit) const {
  require_income(income);
  return params_.transactions * income * wage_unit;
}

double LiquidityFunction::speculative_demand(double rate) const {
  if (!(rate > params_.rate_floor)) {
    std::ostringstream os;
    os << "interest rate " << rate << " is at or below the liquidity floor "
       << params_.rate_floor;
    throw Error(ErrorCode::rate_floor, os.str());
  }
  return params_.speculative_scale *
         std::pow(rate - params_.rate_floor, -params_.curvature);
}

double LiquidityFunction::demand(double income, double rate, double wage_unit) const {
  return transactions_demand(income, wage_unit) + speculative_demand(rate);
}

// ---------------------------------------------------------------------------

Economy::Economy(ConsumptionFunction consumption, MecSchedule mec,
                 LiquidityFunction liquidity, const MacroParams& macro)
    : consumption_(std::move(consumption)),
      mec_(std::move(mec)),
      liquidity_(std::move(liquidity)),
      macro_(macro) {
  require_finite(macro.money_supply, "economy.money_supply");
  require_finite(macro.productivity, "economy.productivity");
  require_finite(macro.full_employment, "economy.full_employment");
  require_finite(macro.wage_unit, "economy.wage_unit");
  require_finite(macro.public_investment, "economy.public_investment");
  if (macro.money_supply <= 0.0) invalid("economy.money_supply: money supply must be > 0");
  if (macro.productivity <= 0.0) invalid("economy.productivity: productivity must be > 0");
  if (macro.full_employment <= 0.0) invalid("economy.full_employment: full employment must be > 0");
  if (macro.wage_unit <= 0.0) invalid("economy.wage_unit: wage unit must be > 0");
  if (macro.public_investment < 0.0) invalid("economy.public_investment: public investment must be >= 0");
}

Economy Economy::with_consumption(ConsumptionFunction consumption) const {
  return Economy(std::move(consumption), mec_, liquidity_, macro_);
}

Economy Economy::with_mec(const MecParams& params) const {
  return Economy(consumption_, MecSchedule(params), liquidity_, macro_);
}

Economy Economy::with_liquidity(const LiquidityParams& params) const {
  return Economy(consumption_, mec_, LiquidityFunction(params), macro_);
}

Economy Economy::with_macro(const MacroParams& macro) const {
  return Economy(consumption_, mec_, liquidity_, macro);
}

// ---------------------------------------------------------------------------

double eval_consumption(const ConsumptionFunction& cf, double income) {
  return cf.consumption(income);
}

double marginal_propensity(const ConsumptionFunction& cf, double income) {
  return cf.marginal(income);
}

double eval_investment(const MecSchedule& mec, double rate) {
  return mec.investment(rate);
}

double eval_liquidity(const LiquidityFunction& lp, double income, double rate,
                      double wage_unit) {
  return lp.demand(income, rate, wage_unit);
}

double aggregate_supply(const Economy& eco, double employment) {
  if (!(employment >= 0.0 && employment <= eco.full_employment())) {
    std::ostringstream os;
    os << "employment " << employment << " outside [0, " << eco.full_employment() << "]";
    throw Error(ErrorCode::domain, os.str());
  }
  return eco.productivity() * employment;
}

double aggregate_demand(const Economy& eco, double employment, double investment) {
  if (!(investment >= 0.0)) {
    std::ostringstream os;
    os << "investment must be >= 0, got " << investment;
    throw Error(ErrorCode::domain, os.str());
  }
  return eco.consumption().consumption(aggregate_supply(eco, employment)) + investment;
}

}  // namespace effdemand
