#include "effdemand/scenario.hpp"

#include <climits>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "effdemand/errors.hpp"

namespace effdemand {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::parse, field + ": " + what);
}

/// Reader over one JSON object that rejects unknown keys on close().
class Section {
 public:
  Section(const json& parent, const std::string& key, bool required = true)
      : name_(key) {
    const auto it = parent.find(key);
    if (it == parent.end()) {
      if (required) field_error(key, "missing section");
      return;
    }
    if (!it->is_object()) field_error(key, "expected an object");
    obj_ = &*it;
  }

  bool present() const { return obj_ != nullptr; }

  const json* find(const std::string& key) const {
    if (!obj_) return nullptr;
    const auto it = obj_->find(key);
    return it == obj_->end() ? nullptr : &*it;
  }

  double number(const std::string& key) const {
    const json* v = find(key);
    if (!v) field_error(path(key), "missing value");
    return as_number(key, *v);
  }

  double number_or(const std::string& key, double fallback) const {
    const json* v = find(key);
    return v ? as_number(key, *v) : fallback;
  }

  int integer_or(const std::string& key, int fallback) const {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) field_error(path(key), "expected an integer");
    const auto raw = v->get<long long>();
    if (raw < INT_MIN || raw > INT_MAX) field_error(path(key), "integer out of range");
    return static_cast<int>(raw);
  }

  std::string text(const std::string& key) const {
    const json* v = find(key);
    if (!v) field_error(path(key), "missing value");
    if (!v->is_string()) field_error(path(key), "expected a string");
    return v->get<std::string>();
  }

  void close(std::initializer_list<const char*> allowed) const {
    if (!obj_) return;
    for (const auto& [key, value] : obj_->items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) field_error(path(key), "unknown key");
    }
  }

  std::string path(const std::string& key) const { return name_ + "." + key; }

 private:
  double as_number(const std::string& key, const json& v) const {
    if (!v.is_number()) field_error(path(key), "expected a number");
    return v.get<double>();
  }

  std::string name_;
  const json* obj_ = nullptr;
};

ConsumptionFunction read_consumption(const json& doc) {
  Section s(doc, "consumption");
  const auto family = s.text("family");
  if (family == "linear") {
    s.close({"family", "c0", "c"});
    return ConsumptionFunction::linear(s.number("c0"), s.number("c"));
  }
  if (family == "saturating-mpc") {
    s.close({"family", "c0", "c_hi", "lambda"});
    return ConsumptionFunction::saturating(s.number("c0"), s.number("c_hi"),
                                           s.number("lambda"));
  }
  if (family == "piecewise-linear") {
    s.close({"family", "knots"});
    const json* knots = s.find("knots");
    if (!knots) field_error("consumption.knots", "missing value");
    if (!knots->is_array()) field_error("consumption.knots", "expected an array of [Y, C] pairs");
    std::vector<Knot> out;
    for (std::size_t i = 0; i < knots->size(); ++i) {
      const auto& k = (*knots)[i];
      const auto where = "consumption.knots[" + std::to_string(i) + "]";
      if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number()) {
        field_error(where, "expected a [Y, C] pair of numbers");
      }
      out.push_back({k[0].get<double>(), k[1].get<double>()});
    }
    return ConsumptionFunction::piecewise(std::move(out));
  }
  field_error("consumption.family",
              "unknown family '" + family +
                  "' (expected linear, saturating-mpc or piecewise-linear)");
}

MecSchedule read_mec(const json& doc) {
  Section s(doc, "mec");
  s.close({"i0", "eta", "epsilon", "i_min"});
  return MecSchedule(MecParams{s.number("i0"), s.number("eta"),
                               s.number_or("epsilon", 0.0), s.number_or("i_min", 0.0)});
}

LiquidityFunction read_liquidity(const json& doc) {
  Section s(doc, "liquidity");
  s.close({"kappa", "a", "gamma", "r_floor"});
  return LiquidityFunction(LiquidityParams{s.number("kappa"), s.number("a"),
                                           s.number("gamma"), s.number_or("r_floor", 0.0)});
}

MacroParams read_macro(const json& doc) {
  Section s(doc, "economy");
  s.close({"money_supply", "productivity", "full_employment", "wage_unit",
           "public_investment"});
  MacroParams m;
  m.money_supply = s.number("money_supply");
  m.productivity = s.number_or("productivity", 1.0);
  m.full_employment = s.number("full_employment");
  m.wage_unit = s.number_or("wage_unit", 1.0);
  m.public_investment = s.number_or("public_investment", 0.0);
  return m;
}

SolverConfig read_solver(const json& doc) {
  Section s(doc, "solver", false);
  s.close({"tol_abs", "max_iter", "damping", "bracket_expansion_limit"});
  SolverConfig cfg;
  cfg.tol_abs = s.number_or("tol_abs", cfg.tol_abs);
  cfg.max_iter = s.integer_or("max_iter", cfg.max_iter);
  cfg.damping = s.number_or("damping", cfg.damping);
  cfg.bracket_expansion_limit =
      s.integer_or("bracket_expansion_limit", cfg.bracket_expansion_limit);
  cfg.validate();
  return cfg;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, false);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::string detail = e.what();
    if (const auto pos = detail.find("syntax error"); pos != std::string::npos) {
      detail = detail.substr(pos);
    }
    std::ostringstream os;
    os << "line " << line << ", column " << column << ": " << detail;
    throw Error(ErrorCode::parse, os.str());
  }
  if (!doc.is_object()) throw Error(ErrorCode::parse, "line 1, column 1: document must be an object");

  for (const auto& [key, value] : doc.items()) {
    if (key != "format_version" && key != "consumption" && key != "mec" &&
        key != "liquidity" && key != "economy" && key != "solver") {
      field_error(key, "unknown section");
    }
  }
  const auto version = doc.find("format_version");
  if (version == doc.end()) field_error("format_version", "missing value");
  if (!version->is_number_integer() || version->get<long long>() != kScenarioFormatVersion) {
    field_error("format_version", "unsupported version (expected 1)");
  }

  auto consumption = read_consumption(doc);
  auto mec = read_mec(doc);
  auto liquidity = read_liquidity(doc);
  const auto macro = read_macro(doc);
  const auto solver = read_solver(doc);
  return Scenario{Economy(std::move(consumption), std::move(mec), std::move(liquidity), macro),
                  solver};
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::parse, "cannot read scenario file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& scenario) {
  const auto& eco = scenario.economy;
  ordered_json doc;
  doc["format_version"] = kScenarioFormatVersion;

  ordered_json consumption;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LinearConsumption>) {
          consumption = {{"family", "linear"}, {"c0", p.autonomous}, {"c", p.mpc}};
        } else if constexpr (std::is_same_v<T, SaturatingConsumption>) {
          consumption = {{"family", "saturating-mpc"},
                         {"c0", p.autonomous},
                         {"c_hi", p.initial_mpc},
                         {"lambda", p.decay}};
        } else {
          ordered_json knots = ordered_json::array();
          for (const auto& k : p.knots) knots.push_back({k.income, k.consumption});
          consumption = {{"family", "piecewise-linear"}, {"knots", knots}};
        }
      },
      eco.consumption().params());
  doc["consumption"] = consumption;

  const auto& mec = eco.mec().params();
  doc["mec"] = {{"i0", mec.base_investment},
                {"eta", mec.rate_sensitivity},
                {"epsilon", mec.optimism},
                {"i_min", mec.floor}};
  const auto& lp = eco.liquidity().params();
  doc["liquidity"] = {{"kappa", lp.transactions},
                      {"a", lp.speculative_scale},
                      {"gamma", lp.curvature},
                      {"r_floor", lp.rate_floor}};
  const auto& m = eco.macro();
  doc["economy"] = {{"money_supply", m.money_supply},
                    {"productivity", m.productivity},
                    {"full_employment", m.full_employment},
                    {"wage_unit", m.wage_unit},
                    {"public_investment", m.public_investment}};
  const auto& s = scenario.solver;
  doc["solver"] = {{"tol_abs", s.tol_abs},
                   {"max_iter", s.max_iter},
                   {"damping", s.damping},
                   {"bracket_expansion_limit", s.bracket_expansion_limit}};
  return doc.dump(2) + "\n";
}

}  // namespace effdemand
