#include <doctest.h>

#include <cmath>
#include <random>

#include "effdemand/errors.hpp"
#include "effdemand/solvers.hpp"
#include "oracles.hpp"

using namespace effdemand;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected effdemand::Error");
  return ErrorCode::usage;
}

Economy linear_economy(double c0, double c, double productivity = 1.0, double n_full = 1e6,
                       LiquidityParams lp = {0.0, 1.0, 1.0, 0.0}, double money = 60.0) {
  MacroParams m;
  m.money_supply = money;
  m.productivity = productivity;
  m.full_employment = n_full;
  return Economy(ConsumptionFunction::linear(c0, c), MecSchedule({50.0, 10.0}),
                 LiquidityFunction(lp), m);
}

Economy saturating_economy() {
  MacroParams m;
  m.money_supply = 400;
  m.full_employment = 1500;
  return Economy(ConsumptionFunction::saturating(20, 0.9, 0.0005), MecSchedule({120, 8}),
                 LiquidityFunction({0.2, 2, 1, 0.01}), m);
}

}  // namespace

TEST_CASE("solver config validation") {
  CHECK_NOTHROW(SolverConfig{}.validate());
  CHECK(code_of([] { SolverConfig{0.0}.validate(); }) == ErrorCode::invalid_parameter);
  CHECK(code_of([] { SolverConfig{1e-10, 0}.validate(); }) == ErrorCode::invalid_parameter);
  CHECK(code_of([] { SolverConfig{1e-10, 10, 0.0}.validate(); }) == ErrorCode::invalid_parameter);
  CHECK(code_of([] { SolverConfig{1e-10, 10, 1.5}.validate(); }) == ErrorCode::invalid_parameter);
}

TEST_CASE("bisection") {
  const SolverConfig cfg;
  auto r = bisect_root([](double x) { return x - 1.0; }, 0.0, 2.0, cfg);
  CHECK(r.converged());
  CHECK(r.value == 1.0);  // first midpoint is an exact zero

  r = bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, cfg);
  CHECK(r.converged());
  CHECK(std::abs(r.value - std::sqrt(2.0)) <= cfg.tol_abs);

  CHECK(code_of([&] { bisect_root([](double x) { return x * x + 1; }, -1, 1, cfg); }) ==
        ErrorCode::no_sign_change);
  CHECK(code_of([&] { bisect_root([](double x) { return x; }, 1, 1, cfg); }) == ErrorCode::domain);

  SUBCASE("infinite endpoint values are allowed") {
    auto f = [](double x) { return x <= 0 ? INFINITY : 1.0 / x - 4.0; };
    const auto q = bisect_root(f, 0.0, 1.0, cfg);
    CHECK(q.value == doctest::Approx(0.25).epsilon(1e-9));
  }

  SUBCASE("stops at double resolution when tol is below the spacing") {
    SolverConfig tight;
    tight.tol_abs = 1e-30;
    const auto q = bisect_root([](double x) { return x - 1234567.123; }, 1e6, 2e6, tight);
    CHECK(q.converged());
    CHECK(std::abs(q.value - 1234567.123) <= 2.5e-10);
  }

  SUBCASE("trace residuals are the values of f at the recorded midpoints") {
    auto f = [](double x) { return std::cos(x) - x; };
    const auto q = bisect_root(f, 0.0, 1.0, cfg);
    for (const auto& p : q.trace.points) CHECK(p.residual == f(p.value));
    CHECK(q.trace.points.size() <= static_cast<std::size_t>(cfg.max_iter));
  }
}

TEST_CASE("property: bisection bracket width halves exactly every iteration") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> a_dist(-50, 50), p_dist(-3, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double lo = a_dist(rng);
    const double width = std::ldexp(1.0, p_dist(rng));
    const double root = lo + width * (0.001 + 0.998 * u(rng));
    SolverConfig cfg;
    cfg.tol_abs = 1e-9;
    const auto q = bisect_root([&](double x) { return x - root; }, lo, lo + width, cfg);
    const auto& pts = q.trace.points;
    REQUIRE(pts.size() >= 2);
    // The k-th midpoint sits at the centre of a bracket of width w / 2^k,
    // so consecutive midpoints differ by exactly w / 2^(k+2).
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      CHECK(std::abs(pts[k + 1].value - pts[k].value) ==
            std::ldexp(width, -static_cast<int>(k) - 2));
    }
  }
}

TEST_CASE("property: enough iterations always converge; too few report max-iter") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double lo = -100 * u(rng);
    const double hi = 1 + 1000 * u(rng);
    const double root = lo + (hi - lo) * u(rng);
    SolverConfig cfg;
    cfg.tol_abs = 1e-8;
    cfg.max_iter = bisection_iterations_needed(lo, hi, cfg.tol_abs);
    auto f = [&](double x) { return std::tanh(x - root); };
    const auto q = bisect_root(f, lo, hi, cfg);
    CHECK(q.converged());
    CHECK(std::abs(q.value - root) <= cfg.tol_abs);

    cfg.max_iter = 5;
    CHECK(bisect_root(f, lo, hi, cfg).trace.status == TraceStatus::max_iter);
  }
}

TEST_CASE("bisection on linear excess demand matches the closed form") {
  const auto eco = linear_economy(10, 0.8);
  auto excess = [&](double n) { return aggregate_demand(eco, n, 20) - aggregate_supply(eco, n); };
  const auto q = bisect_root(excess, 0, 1e6, SolverConfig{});
  CHECK(q.value == doctest::Approx(oracle::linear_cross(10, 0.8, 20)).epsilon(1e-12));
}

TEST_CASE("fixed point iteration") {
  const SolverConfig cfg;
  auto r = fixed_point([](double x) { return 0.5 * x + 1; }, 0, cfg);
  CHECK(r.converged());
  // last step <= tol and contraction 1/2 leave at most tol of error
  CHECK(std::abs(r.value - 2) <= cfg.tol_abs);

  SUBCASE("income-expenditure cross path follows the geometric series") {
    SolverConfig wide;
    wide.max_iter = 400;
    const auto cf = ConsumptionFunction::linear(10, 0.8);
    const auto q = fixed_point([&](double y) { return cf.consumption(y) + 20; }, 0, wide);
    CHECK(q.converged());
    CHECK(std::abs(q.value - 150) <= 10 * wide.tol_abs);
    // x_n = 30 * (1 + 0.8 + ... + 0.8^(n-1))
    for (std::size_t n = 0; n < q.trace.points.size(); ++n) {
      const double expected = 30.0 * (1.0 - std::pow(0.8, double(n))) / 0.2;
      CHECK(q.trace.points[n].value == doctest::Approx(expected).epsilon(1e-12));
    }
  }

  SUBCASE("identity map converges in one step") {
    const auto q = fixed_point([](double x) { return x; }, 7, cfg);
    CHECK(q.converged());
    CHECK(q.value == 7);
    CHECK(q.trace.points.size() == 2);  // the step plus the final check
  }

  SUBCASE("damping") {
    SolverConfig damped;
    damped.damping = 0.5;
    const auto q = fixed_point([](double x) { return 0.5 * x + 1; }, 0, damped);
    CHECK(q.converged());
    CHECK(q.value == doctest::Approx(2).epsilon(1e-9));
  }

  SUBCASE("non-convergence is a status") {
    SolverConfig small;
    small.max_iter = 10;
    const auto q = fixed_point([](double x) { return x + 1; }, 0, small);
    CHECK(q.trace.status == TraceStatus::max_iter);
    CHECK(q.trace.points.size() == 11);
  }

  SUBCASE("leaving the domain throws") {
    const auto cf = ConsumptionFunction::linear(10, 0.8);
    CHECK(code_of([&] { fixed_point([&](double y) { return cf.consumption(y) - 100; }, 0, cfg); }) ==
          ErrorCode::domain);
    CHECK(code_of([&] { fixed_point([](double) { return NAN; }, 0, cfg); }) == ErrorCode::domain);
  }
}

TEST_CASE("effective demand") {
  const SolverConfig cfg;
  SUBCASE("linear closed form") {
    const auto rep = solve_effective_demand(linear_economy(10, 0.8), 20, cfg);
    CHECK(rep.converged);
    CHECK_FALSE(rep.at_full_employment);
    CHECK(rep.income == doctest::Approx(150).epsilon(1e-12));
    CHECK(rep.employment == doctest::Approx(150).epsilon(1e-12));
    CHECK(std::abs(rep.residual) <= cfg.tol_abs);
    CHECK(std::isnan(rep.rate));
  }

  SUBCASE("productivity other than one") {
    const auto rep = solve_effective_demand(linear_economy(10, 0.8, 1.5), 20, cfg);
    CHECK(rep.income == doctest::Approx(150).epsilon(1e-12));
    CHECK(rep.employment == doctest::Approx(100).epsilon(1e-12));
    CHECK(std::abs(rep.residual) <= cfg.tol_abs);
  }

  SUBCASE("full-employment cap") {
    // C0 + I = 110 > (1 - c) * N_full = 100
    const auto eco = linear_economy(10, 0.8, 1.0, 500);
    const auto rep = solve_effective_demand(eco, 100, cfg);
    CHECK(rep.at_full_employment);
    CHECK(rep.converged);
    CHECK(rep.employment == 500);
    CHECK(rep.residual >= -cfg.tol_abs);
  }

  SUBCASE("agrees with the fixed point on a saturating scenario") {
    const auto eco = saturating_economy();
    const auto rep = solve_effective_demand(eco, 90, cfg);
    const auto fp = fixed_point([&](double y) { return eco.consumption().consumption(y) + 90; },
                                0, cfg);
    REQUIRE(fp.converged());
    CHECK(std::abs(rep.income - fp.value) <= 1e-8);
    CHECK(std::abs(rep.income - fp.value) <= 10 * cfg.tol_abs);
  }

  CHECK(code_of([&] { solve_effective_demand(linear_economy(10, 0.8), -1, cfg); }) ==
        ErrorCode::domain);
}

TEST_CASE("property: effective demand residual and cap invariants") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const SolverConfig cfg;
  for (int trial = 0; trial < 60; ++trial) {
    const auto eco = oracle::random_economy(rng, trial);
    const double investment = 200 * u(rng);
    const auto rep = solve_effective_demand(eco, investment, cfg);
    CHECK(rep.converged);
    CHECK(rep.employment <= eco.full_employment());
    CHECK(rep.income == doctest::Approx(eco.productivity() * rep.employment));
    if (rep.at_full_employment) {
      CHECK(rep.residual >= -cfg.tol_abs);
    } else {
      CHECK(std::abs(rep.residual) <= cfg.tol_abs);
      const double demand = aggregate_demand(eco, rep.employment, investment);
      CHECK(std::abs(demand - aggregate_supply(eco, rep.employment)) <= cfg.tol_abs);
    }
  }
}

TEST_CASE("interest rate") {
  const LiquidityFunction lp({0.5, 1, 1, 0});
  CHECK(solve_interest_rate(lp, 60, 100, 1) == doctest::Approx(0.1).epsilon(1e-14));
  const auto bis = interest_rate_bisect(lp, 60, 100, 1);
  CHECK(bis.converged());
  CHECK(std::abs(bis.value - 0.1) <= 1e-10);

  SUBCASE("more money, lower rate") {
    double previous = INFINITY;
    for (double m = 51; m < 200; m += 7) {
      const double r = solve_interest_rate(lp, m, 100, 1);
      CHECK(r < previous);
      previous = r;
    }
  }

  SUBCASE("rate diverges as money approaches transactions demand from above") {
    const double near = solve_interest_rate(lp, 50 + 1e-3, 100, 1);
    const double nearer = solve_interest_rate(lp, 50 + 1e-6, 100, 1);
    CHECK(near == doctest::Approx(1e3).epsilon(1e-9));
    CHECK(nearer == doctest::Approx(1e6).epsilon(1e-6));
    CHECK(nearer > near);
    const auto bis_near = interest_rate_bisect(lp, 50 + 1e-3, 100, 1);
    CHECK(bis_near.value == doctest::Approx(near).epsilon(1e-9));
  }

  SUBCASE("insufficient money") {
    CHECK(code_of([&] { solve_interest_rate(lp, 50, 100, 1); }) == ErrorCode::insufficient_money);
    CHECK(code_of([&] { interest_rate_bisect(lp, 40, 100, 1); }) == ErrorCode::insufficient_money);
  }

  SUBCASE("bracket failure is reported as a status") {
    SolverConfig no_expansion;
    no_expansion.bracket_expansion_limit = 0;
    const auto q = interest_rate_bisect(lp, 50.5, 100, 1, no_expansion);  // root at r = 2
    CHECK(q.trace.status == TraceStatus::bracket_failure);
  }

  SUBCASE("wage unit scales transactions demand") {
    CHECK(solve_interest_rate(lp, 110, 100, 2.0) == doctest::Approx(0.1).epsilon(1e-14));
  }
}

TEST_CASE("property: closed-form and bisection rates agree") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const LiquidityParams p{0.5 * u(rng), 0.1 + 5 * u(rng), 0.3 + 3 * u(rng), 0.05 * u(rng)};
    const LiquidityFunction lp(p);
    const double y = 1000 * u(rng);
    const double w = 0.5 + u(rng);
    const double money = p.transactions * y * w + 1 + 100 * u(rng);
    const double closed = solve_interest_rate(lp, money, y, w);
    CHECK(closed == doctest::Approx(oracle::hyperbolic_rate(p, money, y, w)).epsilon(1e-13));
    const auto bis = interest_rate_bisect(lp, money, y, w);
    CHECK(bis.converged());
    CHECK(std::abs(bis.value - closed) <= 1e-9);
  }
}

TEST_CASE("general equilibrium") {
  const SolverConfig cfg;

  SUBCASE("decoupled money market: two-stage closed form") {
    const auto eco = linear_economy(10, 0.8, 1.0, 1e6, {0.0, 1.0, 1.0, 0.0}, 60.0);
    const auto rep = solve_general_equilibrium(eco, cfg);
    const double r = oracle::hyperbolic_rate(eco.liquidity().params(), 60, 0, 1);
    const double i = static_cast<double>(oracle::investment(eco.mec().params(), r));
    CHECK(rep.converged);
    CHECK(rep.rate == doctest::Approx(r).epsilon(1e-14));
    CHECK(rep.investment == doctest::Approx(i).epsilon(1e-13));
    CHECK(rep.income == doctest::Approx(oracle::linear_cross(10, 0.8, i)).epsilon(1e-12));
    CHECK(std::abs(rep.residual) <= cfg.tol_abs);
  }

  SUBCASE("coupled scenario agrees with the grid-scan oracle") {
    const auto eco = saturating_economy();
    const auto rep = solve_general_equilibrium(eco, cfg);
    REQUIRE(rep.converged);
    const double scan = oracle::general_equilibrium_by_scan(eco, oracle::money_market_income_bound(eco));
    CHECK(oracle::close_rel(rep.income, scan, 1e-6));
    CHECK(std::abs(rep.residual) <= cfg.tol_abs);
    CHECK(rep.employment < eco.full_employment());
    CHECK(rep.rate == doctest::Approx(solve_interest_rate(eco.liquidity(), 400, rep.income, 1)));
  }

  SUBCASE("damped iteration reaches the same equilibrium with residual within tolerance") {
    const auto eco = saturating_economy();
    SolverConfig damped;
    damped.damping = 0.4;
    damped.max_iter = 2000;
    const auto a = solve_general_equilibrium(eco, cfg);
    const auto b = solve_general_equilibrium(eco, damped);
    REQUIRE(b.converged);
    CHECK(std::abs(b.residual) <= damped.tol_abs);
    CHECK(std::abs(a.income - b.income) <= 1e-8);
  }

  SUBCASE("more money lowers the rate and raises investment and income") {
    const auto base = saturating_economy();
    auto macro = base.macro();
    macro.money_supply = 450;
    const auto a = solve_general_equilibrium(base, cfg);
    const auto b = solve_general_equilibrium(base.with_macro(macro), cfg);
    CHECK(b.rate < a.rate);
    CHECK(b.investment > a.investment);
    CHECK(b.income > a.income);
  }

  SUBCASE("capped at full employment") {
    auto macro = saturating_economy().macro();
    macro.public_investment = 600;
    const auto rep = solve_general_equilibrium(saturating_economy().with_macro(macro), cfg);
    CHECK(rep.at_full_employment);
    CHECK(rep.converged);
    CHECK(rep.employment == 1500);
    CHECK(rep.residual >= -cfg.tol_abs);
  }

  SUBCASE("rate floor flag") {
    const auto eco = linear_economy(10, 0.8, 1.0, 1e6, {0.0, 1e-12, 1.0, 0.03}, 100.0);
    const auto rep = solve_general_equilibrium(eco, cfg);
    CHECK(rep.at_rate_floor);
    CHECK_FALSE(solve_general_equilibrium(saturating_economy(), cfg).at_rate_floor);
  }

  SUBCASE("insufficient money is propagated") {
    const auto eco = linear_economy(100, 0.5, 1.0, 1e6, {1.0, 1.0, 1.0, 0.0}, 10.0);
    CHECK(code_of([&] { solve_general_equilibrium(eco, cfg); }) == ErrorCode::insufficient_money);
  }

  SUBCASE("iteration budget exhaustion is a status") {
    SolverConfig tiny;
    tiny.max_iter = 1;
    tiny.damping = 0.1;
    const auto rep = solve_general_equilibrium(saturating_economy(), tiny);
    CHECK_FALSE(rep.converged);
  }
}

TEST_CASE("property: general equilibrium matches the scan oracle and comparative statics") {
  std::mt19937_64 rng(5);
  const SolverConfig cfg;
  for (int trial = 0; trial < 30; ++trial) {
    const auto eco = oracle::random_economy(rng, trial);
    const auto rep = solve_general_equilibrium(eco, cfg);
    REQUIRE(rep.converged);
    CHECK(std::abs(rep.residual) <= cfg.tol_abs);
    const double scan = oracle::general_equilibrium_by_scan(eco, oracle::money_market_income_bound(eco));
    CHECK(oracle::close_rel(rep.income, scan, 1e-6));

    auto macro = eco.macro();
    macro.money_supply *= 1.05;
    const auto more_money = solve_general_equilibrium(eco.with_macro(macro), cfg);
    CHECK(more_money.rate <= rep.rate);
    CHECK(more_money.income >= rep.income);

    macro = eco.macro();
    macro.public_investment += 5;
    const auto more_spending = solve_general_equilibrium(eco.with_macro(macro), cfg);
    CHECK(more_spending.income >= rep.income);
  }
}
