#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "effdemand/curve_table.hpp"
#include "effdemand/model.hpp"
#include "effdemand/solvers.hpp"

namespace effdemand {

enum class ShockKind { fiscal, monetary, optimism };

/// fiscal: wage units of public investment added to private investment;
/// monetary: money units added to the money supply;
/// optimism: added to the MEC optimism shift.
struct PolicyShock {
  ShockKind kind = ShockKind::fiscal;
  double magnitude = 0.0;
};

std::string_view shock_name(ShockKind kind) noexcept;

/// The economy after the shock; throws when the result is invalid.
Economy apply_shock(const Economy& eco, const PolicyShock& shock);

struct ComparativeReport {
  PolicyShock shock;
  EquilibriumReport baseline;
  EquilibriumReport shocked;
  double d_income = 0.0;
  double d_employment = 0.0;
  double d_rate = 0.0;
  double d_investment = 0.0;
  /// d_income / magnitude; fiscal shocks off the employment ceiling only.
  std::optional<double> multiplier;
};

ComparativeReport policy_experiment(const Economy& eco, const PolicyShock& shock,
                                    const SolverConfig& cfg = {});

// ---------------------------------------------------------------------------
// Parameter paths
// ---------------------------------------------------------------------------

struct ParameterInfo {
  std::string_view path;
  std::string_view unit;
};

/// Every sweepable path, e.g. "economy.money_supply" or "mec.epsilon".
std::span<const ParameterInfo> parameter_paths() noexcept;

double get_parameter(const Economy& eco, std::string_view path);
/// Copy of `eco` with one numeric field replaced, fully revalidated.
Economy with_parameter(const Economy& eco, std::string_view path, double value);

/// One general-equilibrium solve per grid point. Columns: the parameter,
/// income, employment, rate, investment, converged; plus a status label per
/// row. Failed points keep their row with absent cells. `threads` > 1 solves
/// points concurrently; the table is identical either way.
CurveTable sweep_parameter(const Economy& eco, std::string_view path,
                           std::span<const double> grid,
                           const SolverConfig& cfg = {}, unsigned threads = 1);

// ---------------------------------------------------------------------------
// Figure data
// ---------------------------------------------------------------------------

enum class Figure { fig1, fig2, fig3, fig4_mec, fig4_liquidity };

std::string_view figure_name(Figure figure) noexcept;
std::optional<Figure> parse_figure(std::string_view name) noexcept;

struct CurveOptions {
  /// fig3 investment levels; default I1 = equilibrium I*, I2 = 1.25 * I1.
  std::optional<double> investment_low;
  std::optional<double> investment_high;
  /// fig4-mec optimism levels (absolute values of the shift).
  std::vector<double> optimism_levels{-0.2, 0.0, 0.2};
  /// fig4-liquidity incomes; default 0.25, 0.5 and 1 times full-employment income.
  std::vector<double> income_levels;
};

/// Curves behind each figure. The grid is employment for fig1-fig3 and the
/// interest rate for the fig4 variants.
///   fig1: employment | supply Z | demand D at the equilibrium investment
///   fig2: income (= productivity * N) | supply | consumption | demand
///   fig3: income | 45-degree line | C+I1 | C+I2 | expansion-path rounds
///         (path columns fill the first rows and are absent afterwards)
///   fig4-mec: rate | investment per optimism level
///   fig4-liquidity: rate | money demand per income level | money supply
CurveTable sample_curves(const Economy& eco, Figure figure,
                         std::span<const double> grid,
                         const SolverConfig& cfg = {},
                         const CurveOptions& options = {});

/// n evenly spaced points from `from` to `to` inclusive (n == 1 gives `from`).
std::vector<double> linspace(double from, double to, int n);

}  // namespace effdemand
