#include "effdemand/statics.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "effdemand/errors.hpp"
#include "effdemand/multiplier.hpp"

namespace effdemand {

namespace {

constexpr std::array kParameters{
    ParameterInfo{"consumption.c0", "wage units"},
    ParameterInfo{"consumption.c", ""},
    ParameterInfo{"consumption.c_hi", ""},
    ParameterInfo{"consumption.lambda", "per wage unit"},
    ParameterInfo{"mec.i0", "wage units"},
    ParameterInfo{"mec.eta", "per unit rate"},
    ParameterInfo{"mec.epsilon", ""},
    ParameterInfo{"mec.i_min", "wage units"},
    ParameterInfo{"liquidity.kappa", "money per wage unit"},
    ParameterInfo{"liquidity.a", "money units"},
    ParameterInfo{"liquidity.gamma", ""},
    ParameterInfo{"liquidity.r_floor", "rate"},
    ParameterInfo{"economy.money_supply", "money units"},
    ParameterInfo{"economy.productivity", "wage units per employment unit"},
    ParameterInfo{"economy.full_employment", "employment units"},
    ParameterInfo{"economy.wage_unit", "money per employment unit"},
    ParameterInfo{"economy.public_investment", "wage units"},
};

const ParameterInfo& find_parameter(std::string_view path) {
  for (const auto& p : kParameters) {
    if (p.path == path) return p;
  }
  throw Error(ErrorCode::usage, "unknown parameter path '" + std::string(path) + "'");
}

[[noreturn]] void wrong_family(std::string_view path, std::string_view family) {
  throw Error(ErrorCode::usage, "parameter path '" + std::string(path) +
                                    "' does not exist for the " +
                                    std::string(family) + " consumption family");
}

/// Visits the double addressed by `path` inside copies of the parameter
/// blocks, then rebuilds a validated economy from them.
Economy edit_parameter(const Economy& eco, std::string_view path,
                       const std::function<void(double&)>& edit) {
  find_parameter(path);
  auto family = family_name(eco.consumption().family());
  if (path.starts_with("consumption.")) {
    auto params = eco.consumption().params();
    const auto field = path.substr(12);
    if (auto* p = std::get_if<LinearConsumption>(&params)) {
      if (field == "c0") edit(p->autonomous);
      else if (field == "c") edit(p->mpc);
      else wrong_family(path, family);
    } else if (auto* p = std::get_if<SaturatingConsumption>(&params)) {
      if (field == "c0") edit(p->autonomous);
      else if (field == "c_hi") edit(p->initial_mpc);
      else if (field == "lambda") edit(p->decay);
      else wrong_family(path, family);
    } else {
      wrong_family(path, family);
    }
    return eco.with_consumption(ConsumptionFunction(std::move(params)));
  }
  if (path.starts_with("mec.")) {
    auto p = eco.mec().params();
    const auto field = path.substr(4);
    if (field == "i0") edit(p.base_investment);
    else if (field == "eta") edit(p.rate_sensitivity);
    else if (field == "epsilon") edit(p.optimism);
    else edit(p.floor);
    return eco.with_mec(p);
  }
  if (path.starts_with("liquidity.")) {
    auto p = eco.liquidity().params();
    const auto field = path.substr(10);
    if (field == "kappa") edit(p.transactions);
    else if (field == "a") edit(p.speculative_scale);
    else if (field == "gamma") edit(p.curvature);
    else edit(p.rate_floor);
    return eco.with_liquidity(p);
  }
  auto m = eco.macro();
  const auto field = path.substr(8);
  if (field == "money_supply") edit(m.money_supply);
  else if (field == "productivity") edit(m.productivity);
  else if (field == "full_employment") edit(m.full_employment);
  else if (field == "wage_unit") edit(m.wage_unit);
  else edit(m.public_investment);
  return eco.with_macro(m);
}

std::string short_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void require_increasing(std::span<const double> grid, const char* what) {
  if (grid.empty()) {
    throw Error(ErrorCode::domain, std::string(what) + " grid is empty");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) {
      throw Error(ErrorCode::domain, std::string(what) + " grid has a non-finite point");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw Error(ErrorCode::domain, std::string(what) + " grid must be strictly increasing");
    }
  }
}

void require_within(std::span<const double> grid, double lo, double hi,
                    bool open_lo, const char* what) {
  for (double x : grid) {
    const bool below = open_lo ? !(x > lo) : !(x >= lo);
    if (below || x > hi) {
      std::ostringstream os;
      os << what << " grid point " << x << " outside " << (open_lo ? "(" : "[")
         << lo << ", " << hi << "]";
      throw Error(ErrorCode::domain, os.str());
    }
  }
}

const Column kIncome{"income", "wage units"};
const Column kEmployment{"employment", "employment units"};
const Column kRate{"rate", "per period"};
const Column kInvestment{"investment", "wage units"};

}  // namespace

std::string_view shock_name(ShockKind kind) noexcept {
  switch (kind) {
    case ShockKind::fiscal: return "fiscal";
    case ShockKind::monetary: return "monetary";
    case ShockKind::optimism: return "optimism";
  }
  return "unknown";
}

Economy apply_shock(const Economy& eco, const PolicyShock& shock) {
  if (!std::isfinite(shock.magnitude)) {
    throw Error(ErrorCode::invalid_parameter, "shock magnitude must be finite");
  }
  switch (shock.kind) {
    case ShockKind::fiscal:
      return with_parameter(eco, "economy.public_investment",
                            eco.public_investment() + shock.magnitude);
    case ShockKind::monetary:
      return with_parameter(eco, "economy.money_supply",
                            eco.money_supply() + shock.magnitude);
    case ShockKind::optimism:
      return with_parameter(eco, "mec.epsilon",
                            eco.mec().params().optimism + shock.magnitude);
  }
  return eco;
}

ComparativeReport policy_experiment(const Economy& eco, const PolicyShock& shock,
                                    const SolverConfig& cfg) {
  const Economy shocked_economy = apply_shock(eco, shock);
  ComparativeReport report;
  report.shock = shock;
  report.baseline = solve_general_equilibrium(eco, cfg);
  report.shocked = solve_general_equilibrium(shocked_economy, cfg);
  report.d_income = report.shocked.income - report.baseline.income;
  report.d_employment = report.shocked.employment - report.baseline.employment;
  report.d_rate = report.shocked.rate - report.baseline.rate;
  report.d_investment = report.shocked.investment - report.baseline.investment;
  if (shock.kind == ShockKind::fiscal && shock.magnitude != 0.0 &&
      !report.baseline.at_full_employment && !report.shocked.at_full_employment) {
    report.multiplier = report.d_income / shock.magnitude;
  }
  return report;
}

std::span<const ParameterInfo> parameter_paths() noexcept { return kParameters; }

double get_parameter(const Economy& eco, std::string_view path) {
  double value = 0.0;
  edit_parameter(eco, path, [&](double& field) { value = field; });
  return value;
}

Economy with_parameter(const Economy& eco, std::string_view path, double value) {
  return edit_parameter(eco, path, [&](double& field) { field = value; });
}

CurveTable sweep_parameter(const Economy& eco, std::string_view path,
                           std::span<const double> grid, const SolverConfig& cfg,
                           unsigned threads) {
  const auto& info = find_parameter(path);
  get_parameter(eco, path);  // rejects family mismatches up front
  require_increasing(grid, "sweep");
  cfg.validate();

  CurveTable table;
  table.columns = {{std::string(info.path), std::string(info.unit)},
                   kIncome, kEmployment, kRate, kInvestment, {"converged", ""}};
  table.rows.resize(grid.size());
  table.status.resize(grid.size());

  auto solve_point = [&](std::size_t i) {
    auto& row = table.rows[i];
    row.assign(table.columns.size(), std::nullopt);
    row[0] = grid[i];
    row[5] = 0.0;
    try {
      const auto report = solve_general_equilibrium(with_parameter(eco, path, grid[i]), cfg);
      if (!report.converged) {
        table.status[i] = "not-converged";
        return;
      }
      row[1] = report.income;
      row[2] = report.employment;
      row[3] = report.rate;
      row[4] = report.investment;
      row[5] = 1.0;
      table.status[i] = "ok";
    } catch (const Error& e) {
      table.status[i] = std::string(error_code_name(e.code()));
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, grid.size());
  if (workers == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) solve_point(i);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < grid.size(); i += workers) solve_point(i);
      });
    }
  }
  return table;
}

std::string_view figure_name(Figure figure) noexcept {
  switch (figure) {
    case Figure::fig1: return "fig1";
    case Figure::fig2: return "fig2";
    case Figure::fig3: return "fig3";
    case Figure::fig4_mec: return "fig4-mec";
    case Figure::fig4_liquidity: return "fig4-liquidity";
  }
  return "unknown";
}

std::optional<Figure> parse_figure(std::string_view name) noexcept {
  for (auto f : {Figure::fig1, Figure::fig2, Figure::fig3, Figure::fig4_mec,
                 Figure::fig4_liquidity}) {
    if (figure_name(f) == name) return f;
  }
  return std::nullopt;
}

CurveTable sample_curves(const Economy& eco, Figure figure,
                         std::span<const double> grid, const SolverConfig& cfg,
                         const CurveOptions& options) {
  require_increasing(grid, figure_name(figure).data());
  CurveTable table;
  const auto& cf = eco.consumption();

  if (figure == Figure::fig1 || figure == Figure::fig2 || figure == Figure::fig3) {
    require_within(grid, 0.0, eco.full_employment(), false, "employment");
  }

  switch (figure) {
    case Figure::fig1: {
      const double investment = solve_general_equilibrium(eco, cfg).investment;
      table.columns = {kEmployment, {"supply", "wage units"}, {"demand", "wage units"}};
      for (double n : grid) {
        table.rows.push_back({n, aggregate_supply(eco, n),
                              aggregate_demand(eco, n, investment)});
      }
      break;
    }
    case Figure::fig2: {
      const double investment = solve_general_equilibrium(eco, cfg).investment;
      table.columns = {kIncome, {"supply", "wage units"},
                       {"consumption", "wage units"}, {"demand", "wage units"}};
      for (double n : grid) {
        const double y = aggregate_supply(eco, n);
        const double c = cf.consumption(y);
        table.rows.push_back({y, y, c, c + investment});
      }
      break;
    }
    case Figure::fig3: {
      const double i1 = options.investment_low
                            ? *options.investment_low
                            : solve_general_equilibrium(eco, cfg).investment;
      const double i2 = options.investment_high
                            ? *options.investment_high
                            : (i1 > 0.0 ? 1.25 * i1 : 1.0);
      if (!(i1 >= 0.0 && i2 > i1)) {
        throw Error(ErrorCode::domain, "fig3 needs 0 <= i1 < i2");
      }
      table.columns = {kIncome,
                       {"diagonal", "wage units"},
                       {"demand_i1", "wage units"},
                       {"demand_i2", "wage units"},
                       {"path_income", "wage units"},
                       {"path_demand", "wage units"}};
      std::vector<ExpansionRound> rounds;
      try {
        rounds = expansion_path(eco, i1, i2, cfg).rounds;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::full_employment &&
            e.code() != ErrorCode::non_convergence) {
          throw;
        }
      }
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const double y = aggregate_supply(eco, grid[k]);
        const double c = cf.consumption(y);
        std::vector<Cell> row{y, y, c + i1, c + i2, std::nullopt, std::nullopt};
        if (k < rounds.size()) {
          row[4] = rounds[k].income;
          row[5] = rounds[k].demand;
        }
        table.rows.push_back(std::move(row));
      }
      break;
    }
    case Figure::fig4_mec: {
      require_within(grid, 0.0, INFINITY, false, "rate");
      std::vector<MecSchedule> schedules;
      table.columns = {kRate};
      for (double level : options.optimism_levels) {
        auto p = eco.mec().params();
        p.optimism = level;
        schedules.emplace_back(p);
        table.columns.push_back({"investment[epsilon=" + short_number(level) + "]",
                                 "wage units"});
      }
      for (double r : grid) {
        std::vector<Cell> row{r};
        for (const auto& s : schedules) row.emplace_back(s.investment(r));
        table.rows.push_back(std::move(row));
      }
      break;
    }
    case Figure::fig4_liquidity: {
      const auto& lp = eco.liquidity();
      require_within(grid, lp.params().rate_floor, INFINITY, true, "rate");
      std::vector<double> incomes = options.income_levels;
      if (incomes.empty()) {
        const double y_full = eco.full_employment_income();
        incomes = {0.25 * y_full, 0.5 * y_full, y_full};
      }
      table.columns = {kRate};
      for (double y : incomes) {
        table.columns.push_back({"money_demand[Y=" + short_number(y) + "]", "money units"});
      }
      table.columns.push_back({"money_supply", "money units"});
      for (double r : grid) {
        std::vector<Cell> row{r};
        for (double y : incomes) row.emplace_back(lp.demand(y, r, eco.wage_unit()));
        row.emplace_back(eco.money_supply());
        table.rows.push_back(std::move(row));
      }
      break;
    }
  }
  table.validate();
  return table;
}

std::vector<double> linspace(double from, double to, int n) {
  if (n < 1) throw Error(ErrorCode::domain, "grid needs at least one point");
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = from;
    return out;
  }
  const double step = (to - from) / (n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = from + step * i;
  out.back() = to;
  return out;
}

}  // namespace effdemand
