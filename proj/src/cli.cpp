#include "effdemand/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "effdemand/csv.hpp"
#include "effdemand/errors.hpp"
#include "effdemand/multiplier.hpp"
#include "effdemand/scenario.hpp"
#include "effdemand/statics.hpp"

namespace effdemand {

namespace {

struct GlobalFlags {
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::optional<double> damping;
  std::string out;
};

/// Solver problems the command still reports on, mapped to exit 3.
struct SolverStatus {
  std::string message;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse:
    case ErrorCode::invalid_parameter:
    case ErrorCode::usage:
    case ErrorCode::domain:
      return kExitInput;
    default:
      return kExitSolver;
  }
}

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  std::replace(text.begin(), text.end(), '\r', ' ');
  return text;
}

std::string yes_no(bool flag) { return flag ? "yes" : "no"; }

std::string value_text(double v) {
  return std::isnan(v) ? "n/a" : format_number(v);
}

class Aligned {
 public:
  void row(const std::string& label, const std::vector<std::string>& values) {
    rows_.push_back({label, values});
  }
  std::string str() const {
    std::size_t label_width = 0;
    std::vector<std::size_t> widths;
    for (const auto& [label, values] : rows_) {
      label_width = std::max(label_width, label.size());
      if (widths.size() < values.size()) widths.resize(values.size(), 0);
      for (std::size_t i = 0; i < values.size(); ++i) {
        widths[i] = std::max(widths[i], values[i].size());
      }
    }
    std::ostringstream os;
    for (const auto& [label, values] : rows_) {
      std::string line = label + std::string(label_width - label.size(), ' ');
      for (std::size_t i = 0; i < values.size(); ++i) {
        line += "  " + values[i];
        if (i + 1 < values.size()) line += std::string(widths[i] - values[i].size(), ' ');
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      os << line << '\n';
    }
    return os.str();
  }

 private:
  std::vector<std::pair<std::string, std::vector<std::string>>> rows_;
};

Scenario load_with_overrides(const std::string& file, const GlobalFlags& flags) {
  auto scenario = load_scenario(file);
  if (flags.tol) scenario.solver.tol_abs = *flags.tol;
  if (flags.max_iter) scenario.solver.max_iter = *flags.max_iter;
  if (flags.damping) scenario.solver.damping = *flags.damping;
  scenario.solver.validate();
  return scenario;
}

std::string report_text(const EquilibriumReport& r) {
  Aligned t;
  t.row("employment", {value_text(r.employment)});
  t.row("income", {value_text(r.income)});
  t.row("rate", {value_text(r.rate)});
  t.row("investment", {value_text(r.investment)});
  t.row("residual", {value_text(r.residual)});
  t.row("iterations", {std::to_string(r.iterations)});
  t.row("converged", {yes_no(r.converged)});
  t.row("at_full_employment", {yes_no(r.at_full_employment)});
  t.row("at_rate_floor", {yes_no(r.at_rate_floor)});
  return t.str();
}

CurveTable report_table(const EquilibriumReport& r) {
  CurveTable t;
  t.columns = {{"employment", "employment units"}, {"income", "wage units"},
               {"rate", "per period"}, {"investment", "wage units"},
               {"residual", "wage units"}, {"iterations", ""}, {"converged", ""},
               {"at_full_employment", ""}, {"at_rate_floor", ""}};
  t.rows.push_back({r.employment, r.income, r.rate, r.investment, r.residual,
                    static_cast<double>(r.iterations), r.converged ? 1.0 : 0.0,
                    r.at_full_employment ? 1.0 : 0.0, r.at_rate_floor ? 1.0 : 0.0});
  return t;
}

std::vector<double> grid_or(std::optional<double> from, std::optional<double> to,
                            int steps, double default_from, double default_to) {
  return linspace(from.value_or(default_from), to.value_or(default_to), steps);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Effective demand, interest and multiplier engine", "effdemand"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags flags;
  app.add_option("--tol", flags.tol, "Absolute solver tolerance");
  app.add_option("--max-iter", flags.max_iter, "Iteration budget");
  app.add_option("--damping", flags.damping, "Fixed-point damping in (0, 1]");
  app.add_option("--out", flags.out, "Write data output to this file instead of stdout");

  std::string scenario_file;

  auto* eq = app.add_subcommand("equilibrium", "Solve the general equilibrium");
  eq->add_option("scenario", scenario_file, "Scenario file")->required();
  bool eq_csv = false;
  eq->add_flag("--csv", eq_csv, "Print the report as CSV");

  auto* mult = app.add_subcommand("multiplier", "Finite multiplier between two investment levels");
  mult->add_option("scenario", scenario_file, "Scenario file")->required();
  double i1 = 0.0, i2 = 0.0;
  mult->add_option("--i1", i1, "Initial investment (wage units)")->required();
  mult->add_option("--i2", i2, "New investment (wage units)")->required();
  bool with_path = false;
  mult->add_flag("--path", with_path, "Emit the round-by-round expansion path as CSV");

  auto* pol = app.add_subcommand("policy", "Comparative statics of one policy shock");
  pol->add_option("scenario", scenario_file, "Scenario file")->required();
  std::optional<double> fiscal, monetary, optimism;
  auto* o_fiscal = pol->add_option("--fiscal", fiscal, "Public investment shock (wage units)");
  auto* o_monetary = pol->add_option("--monetary", monetary, "Money supply shock (money units)");
  auto* o_optimism = pol->add_option("--optimism", optimism, "Optimism shift");
  o_fiscal->excludes(o_monetary)->excludes(o_optimism);
  o_monetary->excludes(o_optimism);

  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and solve at each point");
  sweep->add_option("scenario", scenario_file, "Scenario file")->required();
  std::string param;
  double sweep_from = 0.0, sweep_to = 0.0;
  int sweep_steps = 11;
  unsigned threads = 1;
  sweep->add_option("--param", param, "Parameter path, e.g. economy.money_supply")->required();
  sweep->add_option("--from", sweep_from, "First grid value")->required();
  sweep->add_option("--to", sweep_to, "Last grid value")->required();
  sweep->add_option("--steps", sweep_steps, "Number of grid points")->check(CLI::PositiveNumber);
  sweep->add_option("--threads", threads, "Solve grid points concurrently")->check(CLI::PositiveNumber);

  auto* curves = app.add_subcommand("curves", "Data behind one of the model figures");
  curves->add_option("scenario", scenario_file, "Scenario file")->required();
  std::string figure_tag;
  curves->add_option("--figure", figure_tag, "fig1|fig2|fig3|fig4-mec|fig4-liquidity")->required();
  std::optional<double> curve_from, curve_to, curve_i1, curve_i2;
  int curve_steps = 101;
  curves->add_option("--from", curve_from, "First grid value");
  curves->add_option("--to", curve_to, "Last grid value");
  curves->add_option("--steps", curve_steps, "Number of grid points")->check(CLI::PositiveNumber);
  curves->add_option("--i1", curve_i1, "fig3 initial investment");
  curves->add_option("--i2", curve_i2, "fig3 new investment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "E_USAGE: " << one_line(e.what()) << '\n';
    return kExitInput;
  }

  std::string data;
  std::optional<SolverStatus> status;
  try {
    const auto scenario = load_with_overrides(scenario_file, flags);
    const auto& eco = scenario.economy;
    const auto& cfg = scenario.solver;

    if (eq->parsed()) {
      const auto report = solve_general_equilibrium(eco, cfg);
      data = eq_csv ? emit_csv(report_table(report)) : report_text(report);
      if (!report.converged) {
        status = SolverStatus{"general equilibrium did not converge (residual " +
                              format_number(report.residual) + ")"};
      }
    } else if (mult->parsed()) {
      if (with_path) {
        const auto path = expansion_path(eco, i1, i2, cfg);
        CurveTable t;
        t.columns = {{"round", ""}, {"income", "wage units"}, {"demand", "wage units"},
                     {"cumulative_increment", "wage units"}};
        for (std::size_t k = 0; k < path.rounds.size(); ++k) {
          const auto& r = path.rounds[k];
          t.rows.push_back({static_cast<double>(k), r.income, r.demand,
                            r.income - path.initial_income});
        }
        data = emit_csv(t);
        if (path.status != TraceStatus::converged) {
          status = SolverStatus{"expansion path did not converge"};
        }
      } else {
        const double k = finite_multiplier(eco, i1, i2, cfg);
        const auto y1 = solve_effective_demand(eco, i1, cfg).income;
        const auto y2 = solve_effective_demand(eco, i2, cfg).income;
        Aligned t;
        t.row("i1", {format_number(i1)});
        t.row("i2", {format_number(i2)});
        t.row("income_i1", {format_number(y1)});
        t.row("income_i2", {format_number(y2)});
        t.row("finite_multiplier", {format_number(k)});
        t.row("local_multiplier_i1", {format_number(local_multiplier(eco.consumption(), y1))});
        t.row("local_multiplier_i2", {format_number(local_multiplier(eco.consumption(), y2))});
        data = t.str();
      }
    } else if (pol->parsed()) {
      PolicyShock shock;
      if (fiscal) shock = {ShockKind::fiscal, *fiscal};
      else if (monetary) shock = {ShockKind::monetary, *monetary};
      else if (optimism) shock = {ShockKind::optimism, *optimism};
      else throw Error(ErrorCode::usage, "policy needs one of --fiscal, --monetary, --optimism");

      const auto rep = policy_experiment(eco, shock, cfg);
      Aligned t;
      t.row("shock", {std::string(shock_name(shock.kind)), format_number(shock.magnitude)});
      t.row("", {"baseline", "shocked", "delta"});
      t.row("income", {value_text(rep.baseline.income), value_text(rep.shocked.income),
                       value_text(rep.d_income)});
      t.row("employment", {value_text(rep.baseline.employment),
                           value_text(rep.shocked.employment), value_text(rep.d_employment)});
      t.row("rate", {value_text(rep.baseline.rate), value_text(rep.shocked.rate),
                     value_text(rep.d_rate)});
      t.row("investment", {value_text(rep.baseline.investment),
                           value_text(rep.shocked.investment), value_text(rep.d_investment)});
      t.row("converged", {yes_no(rep.baseline.converged), yes_no(rep.shocked.converged)});
      t.row("at_full_employment", {yes_no(rep.baseline.at_full_employment),
                                   yes_no(rep.shocked.at_full_employment)});
      t.row("at_rate_floor", {yes_no(rep.baseline.at_rate_floor),
                              yes_no(rep.shocked.at_rate_floor)});
      t.row("multiplier", {rep.multiplier ? format_number(*rep.multiplier) : "n/a"});
      data = t.str();
      if (!rep.baseline.converged || !rep.shocked.converged) {
        status = SolverStatus{"policy experiment: an equilibrium did not converge"};
      }
    } else if (sweep->parsed()) {
      const auto grid = linspace(sweep_from, sweep_to, sweep_steps);
      data = emit_csv(sweep_parameter(eco, param, grid, cfg, threads));
    } else if (curves->parsed()) {
      const auto figure = parse_figure(figure_tag);
      if (!figure) throw Error(ErrorCode::usage, "unknown figure '" + figure_tag + "'");
      std::vector<double> grid;
      const double r_floor = eco.liquidity().params().rate_floor;
      switch (*figure) {
        case Figure::fig1:
        case Figure::fig2:
        case Figure::fig3:
          grid = grid_or(curve_from, curve_to, curve_steps, 0.0, eco.full_employment());
          break;
        case Figure::fig4_mec:
          grid = grid_or(curve_from, curve_to, curve_steps, 0.0, 0.25);
          break;
        case Figure::fig4_liquidity:
          grid = grid_or(curve_from, curve_to, curve_steps, r_floor + 0.005, r_floor + 0.25);
          break;
      }
      CurveOptions options;
      options.investment_low = curve_i1;
      options.investment_high = curve_i2;
      data = emit_csv(sample_curves(eco, *figure, grid, cfg, options));
    }
  } catch (const Error& e) {
    err << error_code_name(e.code()) << ": " << one_line(e.what()) << '\n';
    return exit_code_for(e.code());
  }

  if (flags.out.empty()) {
    out << data;
  } else {
    std::ofstream file(flags.out, std::ios::binary);
    file << data;
    if (!file) {
      err << "E_USAGE: cannot write '" << one_line(flags.out) << "'\n";
      return kExitInput;
    }
  }
  if (status) {
    err << "E_NONCONVERGENCE: " << one_line(status->message) << '\n';
    return kExitSolver;
  }
  return kExitOk;
}

}  // namespace effdemand
