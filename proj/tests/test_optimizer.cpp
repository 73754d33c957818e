// Cruise optimizer checks: optimality polynomial, pointwise speed solutions,
// costate dynamics, RK4 integration, and the shooting boundary solver.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mindoc/aero.hpp"
#include "mindoc/costmodel.hpp"
#include "mindoc/errors.hpp"
#include "mindoc/optimizer.hpp"

#include <cmath>
#include <vector>

using namespace mindoc;

namespace {

CruiseParams hybrid_params() {
    Airframe a;
    a.wing_area = 77.3;
    a.cd0 = 0.028;
    a.cd2 = 0.026;
    a.empty_weight = 251321.0;
    a.max_takeoff_weight = 433405.0;
    Powertrain p;
    p.beta = 0.25;
    p.efficiency = 0.9;
    p.supply_voltage = 3000.0;
    p.tsfc = 2.55e-5;
    p.tsfc_mode = TsfcMode::mass;
    Atmosphere atm{0.4135, 10000.0};
    CostInputs costs{0.5, 0.06, 0.115};
    return CruiseParams::make(a, p, atm, costs, make_conversions(11.94, 9.8));
}

CruiseParams electric_params(double time_cost = 0.0005) {
    Airframe a;
    a.wing_area = 11.37;
    a.cd0 = 0.035;
    a.cd2 = 0.009;
    a.empty_weight = 2959.6;
    a.max_takeoff_weight = 4625.6;
    Powertrain p;
    p.beta = 1.0;
    p.efficiency = 0.7;
    p.supply_voltage = 133.2;
    Atmosphere atm{1.2, 300.0};
    CostInputs costs{time_cost, 0.06, 0.0};
    return CruiseParams::make(a, p, atm, costs, make_conversions(11.94, 9.8));
}

} // namespace

TEST_CASE("adjusted fuel tradeoff") {
    const CruiseParams efx = hybrid_params();
    CHECK(jbar(efx.tradeoffs.c_e, efx.conv.kappa_f, 0.0) ==
          doctest::Approx(1.6012827988338192).epsilon(1e-13));
    CHECK(jbar(efx.tradeoffs.c_e, 1.22, 0.0) ==
          doctest::Approx(1.6034285714285714).epsilon(1e-13));
    // The costate subtracts directly.
    CHECK(jbar(efx.tradeoffs.c_e, efx.conv.kappa_f, 0.005) ==
          doctest::Approx(1.6012827988338192 - 0.005).epsilon(1e-13));
    CHECK(efx.costate_scale() == doctest::Approx(1.6012827988338192).epsilon(1e-13));
}

TEST_CASE("optimality polynomial coefficients at the hybrid reference point") {
    const CruiseParams efx = hybrid_params();
    const double jb = jbar(efx.tradeoffs.c_e, efx.conv.kappa_f, 0.005);
    const auto c = quintic_coefficients(430000.0, jb, efx);
    CHECK(c[0] == doctest::Approx(1.51358300533704e-06).epsilon(1e-11));
    CHECK(c[1] == doctest::Approx(0.00427932631759159).epsilon(1e-11));
    CHECK(c[2] == 0.0);
    CHECK(c[3] == doctest::Approx(-182.648857142857).epsilon(1e-11));
    CHECK(c[4] == doctest::Approx(-1017.43915343915).epsilon(1e-11));
    CHECK(c[5] == doctest::Approx(-8629762.88153571).epsilon(1e-11));
}

TEST_CASE("pointwise optimal airspeed, hybrid") {
    const CruiseParams efx = hybrid_params();
    const AirspeedSolution sol = optimal_airspeed(430000.0, 0.005, efx);
    CHECK(sol.airspeed == doctest::Approx(259.528558834006).epsilon(1e-9));
    CHECK_FALSE(sol.multiple_roots);

    // A larger costate discounts future fuel savings and speeds the cruise up.
    CHECK(optimal_airspeed(430000.0, 0.0, efx).airspeed < sol.airspeed);
    CHECK(optimal_airspeed(430000.0, 0.02, efx).airspeed > sol.airspeed);
}

TEST_CASE("pointwise optimal airspeed, electric closed form vs general solver") {
    const CruiseParams e430 = electric_params();
    const double v = electric_quartic_root(4600.0, e430);
    CHECK(v == doctest::Approx(36.141987517618).epsilon(1e-11));
    CHECK(v * 3.6 == doctest::Approx(130.1112).epsilon(1e-6));

    // The general quintic route must agree once beta = 1 zeroes the fuel terms.
    const AirspeedSolution general = optimal_airspeed(4600.0, 0.0, e430);
    CHECK(general.airspeed == doctest::Approx(v).epsilon(1e-10));

    // Zero time cost reduces the optimum to the minimum-drag speed exactly.
    const CruiseParams patient = electric_params(0.0);
    const double v_md = min_drag_speed(patient.airframe, 1.2, 4600.0);
    CHECK(electric_quartic_root(4600.0, patient) == doctest::Approx(v_md).epsilon(1e-12));
    CHECK(v_md == doctest::Approx(18.491267214951).epsilon(1e-11));
}

TEST_CASE("costate rate at the hybrid reference point") {
    const CruiseParams efx = hybrid_params();
    CHECK(costate_rate(4e5, 250.0, 0.005, efx) ==
          doctest::Approx(-6.50555522341466e-06).epsilon(1e-9));
}

TEST_CASE("state rates wire drag, battery, and fuel flow together") {
    const CruiseParams efx = hybrid_params();
    const CruiseState s{0.0, 0.0, 430000.0, 1.516e6, 0.005};
    const double v = 200.0;
    const StateRates rates = state_rates(s, v, efx);
    const double d = drag(efx.airframe, 0.4135, 430000.0, v);
    CHECK(rates.r == doctest::Approx(v).epsilon(1e-15));
    CHECK(rates.weight ==
          doctest::Approx(-efx.tsfc_weight() * 0.75 * d).epsilon(1e-13));
    CHECK(rates.charge ==
          doctest::Approx(-0.25 * d * v / (0.9 * 3000.0)).epsilon(1e-13));
    CHECK(rates.costate == doctest::Approx(costate_rate(430000.0, v, 0.005, efx)));
    CHECK(rates.weight < 0.0);
    CHECK(rates.charge < 0.0);
    CHECK(rates.costate < 0.0);
}

TEST_CASE("electric cruise: constant speed, exact endpoint, zero costate") {
    const CruiseParams e430 = electric_params();
    const CruiseState init{0.0, 0.0, 4600.0, 360000.0, 0.0};
    const CruiseProfile prof = integrate_cruise(init, 500.0, e430);

    REQUIRE(prof.samples.size() >= 3);
    CHECK(prof.samples.back().r == doctest::Approx(500.0).epsilon(1e-12));
    const double v0 = prof.samples.front().airspeed;
    for (const auto& s : prof.samples) {
        CHECK(std::abs(s.airspeed - v0) <= 1e-12 * v0);
        CHECK(s.costate == 0.0);
        CHECK(s.weight == 4600.0); // no fuel burned
    }
    CHECK(prof.summary.duration == doctest::Approx(500.0 / v0).epsilon(1e-12));
}

TEST_CASE("shooting solves the full-range hybrid boundary problem") {
    const CruiseParams efx = hybrid_params();
    const CruiseBoundary boundary{0.0, 450000.0, 430000.0, 1.516e6};
    const CruiseProfile prof = shoot(boundary, efx);
    const CruiseSummary& sum = prof.summary;

    CHECK(prof.costate_initial == doctest::Approx(0.0112411763275).epsilon(1e-5));
    CHECK(sum.duration == doctest::Approx(1740.352331904716).epsilon(1e-8));
    CHECK(sum.fuel_mass == doctest::Approx(1141.675247667465).epsilon(1e-8));
    CHECK(sum.charge_spent_ah == doctest::Approx(397.005499166007).epsilon(1e-8));
    CHECK(sum.total_doc == doctest::Approx(2509.271439628345).epsilon(1e-8));
    CHECK(sum.hourly_doc == doctest::Approx(5190.545050596466).epsilon(1e-8));
    CHECK(sum.final_position == doctest::Approx(450000.0).epsilon(1e-12));

    CHECK(prof.samples.front().airspeed == doctest::Approx(259.706556782560).epsilon(1e-8));
    CHECK(prof.samples.back().airspeed == doctest::Approx(257.434521781679).epsilon(1e-8));
    CHECK(prof.samples.back().weight == doctest::Approx(418811.582573).epsilon(1e-8));
    CHECK(prof.samples.back().charge == doctest::Approx(86780.203002).epsilon(1e-8));

    // Transversality: the weight costate must vanish at the far boundary.
    CHECK(std::abs(prof.samples.back().costate) <= 1e-9 * efx.costate_scale());
    CHECK_FALSE(prof.root_flagged);
    CHECK_FALSE(prof.jbar_went_negative);
    CHECK(prof.shoot_iterations > 1);

    // Quadrature bookkeeping agrees with the state deltas.
    const double dq = boundary.q0 - prof.samples.back().charge;
    const double dw = boundary.w0 - prof.samples.back().weight;
    CHECK(std::abs(prof.charge_integral - dq) <= 1e-9 * std::max(dq, 1.0));
    CHECK(std::abs(prof.fuel_weight_integral - dw) <= 1e-9 * std::max(dw, 1.0));

    CHECK(doc_total(prof) == doctest::Approx(sum.total_doc).epsilon(1e-12));
}

TEST_CASE("shooting on a short hybrid leg") {
    const CruiseParams efx = hybrid_params();
    const CruiseProfile prof = shoot({0.0, 5000.0, 430000.0, 1.516e6}, efx);
    CHECK(prof.costate_initial == doctest::Approx(0.000125792035241).epsilon(1e-4));
    CHECK(prof.summary.total_doc == doctest::Approx(27.941706582986).epsilon(1e-8));
    CHECK(prof.summary.duration == doctest::Approx(19.276903201199).epsilon(1e-8));
}

TEST_CASE("held costate stays frozen through the integration") {
    const CruiseParams efx = hybrid_params();
    const CruiseState init{0.0, 0.0, 430000.0, 1.516e6, 0.005};
    const CruiseProfile prof = integrate_cruise(init, 5000.0, efx, 1.0, true);
    for (const auto& s : prof.samples) CHECK(s.costate == 0.005);
    // Without the hold the costate drifts.
    const CruiseProfile drift = integrate_cruise(init, 5000.0, efx, 1.0, false);
    CHECK(drift.samples.back().costate != 0.005);
}

TEST_CASE("electric boundary solve over the city leg") {
    const CruiseParams e430 = electric_params();
    const double leg = 10688.779163215975;
    const CruiseProfile prof = shoot({0.0, leg, 4600.0, 360000.0}, e430);
    CHECK(prof.shoot_iterations == 1); // pure electric needs a single sweep
    CHECK(prof.summary.duration == doctest::Approx(295.744088727979).epsilon(1e-9));
    CHECK(prof.summary.total_doc == doctest::Approx(0.232685619450).epsilon(1e-9));
    CHECK(prof.summary.charge_spent_ah == doctest::Approx(10.612309195008).epsilon(1e-9));
    CHECK(prof.summary.fuel_mass == 0.0);

    SUBCASE("re-pricing the flown leg as a combustion aircraft") {
        const double jet = doc_recost_fuel_only(prof, e430, 1.1e-5, 0.115);
        CHECK(jet == doctest::Approx(1.488666725682).epsilon(1e-8));
        CHECK(jet / prof.summary.total_doc > 6.0);
    }
}

TEST_CASE("integration step refinement converges") {
    const CruiseParams efx = hybrid_params();
    const CruiseProfile coarse = shoot({0.0, 5000.0, 430000.0, 1.516e6}, efx, 1.0);
    const CruiseProfile fine = shoot({0.0, 5000.0, 430000.0, 1.516e6}, efx, 0.5);
    CHECK(std::abs(coarse.summary.total_doc - fine.summary.total_doc) <=
          1e-6 * fine.summary.total_doc);
}

TEST_CASE("resource guards") {
    const CruiseParams efx = hybrid_params();
    // Barely any fuel on board: the tank runs dry long before 100 km.
    const CruiseState thirsty{0.0, 0.0, 251400.0, 1.516e6, 0.0};
    CHECK_THROWS_AS(integrate_cruise(thirsty, 100000.0, efx, 1.0, true), DomainError);

    // Barely any charge: the battery empties within the first steps.
    const CruiseParams e430 = electric_params();
    const CruiseState flat{0.0, 0.0, 4600.0, 50.0, 0.0};
    CHECK_THROWS_AS(integrate_cruise(flat, 5000.0, e430), DomainError);
}

TEST_CASE("boundary validation") {
    const CruiseParams efx = hybrid_params();
    CHECK_THROWS_AS(shoot({1000.0, 1000.0, 430000.0, 1.5e6}, efx), DomainError);
    CHECK_THROWS_AS(shoot({0.0, 5000.0, 0.0, 1.5e6}, efx), DomainError);
    const CruiseState init{0.0, 0.0, 430000.0, 1.5e6, 0.0};
    CHECK_THROWS_AS(integrate_cruise(init, 0.0, efx), DomainError);
    CHECK_THROWS_AS(integrate_cruise(init, 5000.0, efx, -1.0), DomainError);
}
