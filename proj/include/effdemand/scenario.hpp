#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "effdemand/model.hpp"
#include "effdemand/solvers.hpp"

namespace effdemand {

inline constexpr int kScenarioFormatVersion = 1;

struct Scenario {
  Economy economy;
  SolverConfig solver;
};

/// Strict JSON scenario reader. Syntax problems raise ErrorCode::parse with
/// line and column; missing, unknown or mistyped keys raise ErrorCode::parse
/// naming the field; violated model invariants raise
/// ErrorCode::invalid_parameter. Omitted solver fields take their defaults.
///
///   {
///     "format_version": 1,
///     "consumption": {"family": "saturating-mpc", "c0": 20, "c_hi": 0.9, "lambda": 0.0005},
///     "mec":         {"i0": 120, "eta": 8, "epsilon": 0, "i_min": 0},
///     "liquidity":   {"kappa": 0.2, "a": 2, "gamma": 1, "r_floor": 0.01},
///     "economy":     {"money_supply": 400, "productivity": 1, "full_employment": 1500,
///                     "wage_unit": 1, "public_investment": 0},
///     "solver":      {"tol_abs": 1e-10, "max_iter": 200, "damping": 1,
///                     "bracket_expansion_limit": 60}
///   }
///
/// Families: "linear" {c0, c}; "saturating-mpc" {c0, c_hi, lambda};
/// "piecewise-linear" {knots: [[Y, C], ...]}.
Scenario parse_scenario(std::string_view text);

Scenario load_scenario(const std::filesystem::path& path);

/// Writes every field explicitly, with round-trip exact numbers.
std::string serialize_scenario(const Scenario& scenario);

}  // namespace effdemand
