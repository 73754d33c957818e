// Minimum-DOC cruise: the airspeed optimality condition (a quintic in true
// airspeed, or a sparse quartic for pure-electric flight), the weight-costate
// dynamics, fixed-step RK4 cruise integration, and the shooting method that
// finds the costate initial value satisfying the free-final-weight condition.
#pragma once

#include "mindoc/aero.hpp"
#include "mindoc/costmodel.hpp"

#include <array>
#include <vector>

namespace mindoc {

/// Everything constant along one cruise segment.
struct CruiseParams {
    Airframe airframe;
    Powertrain powertrain;
    Atmosphere atmosphere;
    CostInputs costs;
    ConversionFactors conv;
    TradeoffCoefficients tradeoffs;

    /// Validate the pieces and derive the tradeoff coefficients from prices.
    static CruiseParams make(const Airframe& airframe, const Powertrain& powertrain,
                             const Atmosphere& atmosphere, const CostInputs& costs,
                             const ConversionFactors& conv);

    /// Fuel weight flow per newton of thrust, 1/s.
    double tsfc_weight() const { return powertrain.tsfc_weight(conv.gravity); }

    /// Magnitude scale of the weight costate, used to seed the shooting scan
    /// and to express its convergence tolerance. Normally (1 - c_e) * kappa_f;
    /// falls back to kappa_f and then kappa_i when that vanishes.
    double costate_scale() const;
};

/// Effective fuel-price weight of the costate equation: (1 - c_e) * kappa_f
/// minus the current weight costate. Positive along well-posed cruises.
double jbar(double c_e, double kappa_f, double costate);

/// @brief Coefficients (descending degree) of the airspeed optimality quintic.
///
/// With j = jbar(c_e, kappa_f, costate), rho the density, S the wing area and
/// tw = tradeoffs.time_weight():
///   a5 = (1 + c_e) kappa_i beta rho^2 S^2 cd0 / eta
///   a4 = j (1 - beta) tsfc_w rho^2 S^2 cd0 / 2
///   a3 = 0
///   a2 = -tw rho S
///   a1 = -4 (1 + c_e) kappa_i beta cd2 W^2 / eta
///   a0 = -6 j (1 - beta) tsfc_w cd2 W^2
/// The sign pattern (+, +, 0, -, -, -) gives exactly one positive root while
/// j >= 0 (one sign change in the coefficient sequence).
std::array<double, 6> quintic_coefficients(double weight, double jbar_value,
                                           const CruiseParams& params);

struct AirspeedSolution {
    double airspeed = 0.0;      ///< minimum-DOC true airspeed, m/s
    bool multiple_roots = false; ///< optimality condition had several positive roots
};

/// @brief Solve the optimality condition for the minimum-DOC airspeed.
///
/// Pure-electric powertrains (beta = 1) use the closed-form sparse quartic;
/// otherwise the quintic is scaled by the minimum-drag speed and solved with
/// the companion-matrix root finder. When several positive roots exist (only
/// possible once jbar has gone negative) the root with the lowest cost per
/// meter is selected and flagged.
///
/// @throws RootError if no positive root exists
AirspeedSolution optimal_airspeed(double weight, double costate, const CruiseParams& params);

/// Closed-form minimum-DOC airspeed for a pure-electric powertrain. With a
/// zero time price this equals the minimum-drag speed exactly.
double electric_quartic_root(double weight, const CruiseParams& params);

/// Time derivative of the weight costate along the cruise.
double costate_rate(double weight, double airspeed, double costate,
                    const CruiseParams& params);

/// Cruise state advanced by the integrator.
struct CruiseState {
    double t = 0.0;       ///< time, s
    double r = 0.0;       ///< along-track position, m
    double weight = 0.0;  ///< total aircraft weight, N
    double charge = 0.0;  ///< battery charge, C
    double costate = 0.0; ///< weight costate, kWh/N scale
};

/// Time derivatives of the cruise state at a given airspeed.
struct StateRates {
    double r = 0.0;       ///< m/s
    double weight = 0.0;  ///< N/s
    double charge = 0.0;  ///< C/s (battery current, negated)
    double costate = 0.0; ///< 1/s scale
};

/// Dynamics at one (state, airspeed) point. The costate rate is pinned to
/// zero for pure-electric powertrains, where weight is constant and the
/// free-final-weight condition forces a zero costate throughout.
StateRates state_rates(const CruiseState& state, double airspeed, const CruiseParams& params);

/// One record per integrator step.
struct CruiseSample {
    double t = 0.0;
    double r = 0.0;
    double airspeed = 0.0;
    double weight = 0.0;
    double charge = 0.0;
    double costate = 0.0;
    double doc_rate = 0.0; ///< USD/s
};

/// Headline quantities of an integrated cruise.
struct CruiseSummary {
    double duration = 0.0;        ///< s
    double fuel_mass = 0.0;       ///< kg burned
    double charge_spent_ah = 0.0; ///< Ah drawn from the battery
    double total_doc = 0.0;       ///< USD (trapezoid of doc_rate over samples)
    double hourly_doc = 0.0;      ///< USD/h
    double final_position = 0.0;  ///< m
};

/// Full integration result.
struct CruiseProfile {
    std::vector<CruiseSample> samples;
    CruiseSummary summary;
    bool root_flagged = false;        ///< some step had multiple optimality roots
    bool jbar_went_negative = false;  ///< jbar lost positivity at some stage
    double costate_initial = 0.0;     ///< costate value the profile started from
    int shoot_iterations = 0;         ///< residual evaluations spent by shoot()
    double charge_integral = 0.0;     ///< RK4 quadrature of battery current, C
    double fuel_weight_integral = 0.0; ///< RK4 quadrature of fuel weight flow, N
};

/// Two-point boundary data for a cruise segment.
struct CruiseBoundary {
    double r0 = 0.0; ///< start position, m
    double rf = 0.0; ///< target position, m (rf > r0)
    double w0 = 0.0; ///< initial weight, N
    double q0 = 0.0; ///< initial charge, C
};

/// @brief Integrate a cruise from an initial state to a target position.
///
/// Classic fixed-step RK4; the optimality condition is re-solved at every
/// stage. The final partial step is interpolated linearly in position so the
/// last sample lands exactly on target_range. Battery current and fuel weight
/// flow are accumulated with the same RK4 stages, giving quadratures that
/// match the state deltas to roundoff.
///
/// @param step         integrator step, s (> 0)
/// @param hold_costate freeze the costate at its initial value instead of
///                     integrating it (route-edge pricing wants the greedy,
///                     terminal-costate speed along the whole segment)
/// @throws DomainError   on invalid step or target behind the start
/// @throws ResourceError if the step budget is exhausted before arrival
CruiseProfile integrate_cruise(const CruiseState& initial, double target_range,
                               const CruiseParams& params, double step = 1.0,
                               bool hold_costate = false);

/// @brief Solve the cruise two-point boundary problem by shooting on the
/// initial weight costate.
///
/// The residual is the final costate (free final weight demands it vanish).
/// Pure-electric powertrains return in one integration with a zero costate.
/// Otherwise the scan walks candidate magnitudes costate_scale() * 2^-k
/// toward the sign change, brackets it, and polishes with secant steps
/// (bisection fallback) until |residual| <= tol.
///
/// @param tol        residual tolerance; <= 0 selects 1e-9 * costate_scale()
/// @param scan_steps residual evaluations budgeted for bracketing (two
///                   directions x scan_steps/2 magnitudes)
/// @throws ShootError if no bracket is found or the iteration stalls
CruiseProfile shoot(const CruiseBoundary& boundary, const CruiseParams& params,
                    double step = 1.0, double tol = 0.0, int scan_steps = 32);

/// Trapezoidal DOC of an integrated profile, USD (same value the summary
/// carries; exposed for recosting utilities and tests).
double doc_total(const CruiseProfile& profile);

/// @brief Re-price a flown trajectory as if a combustion powertrain with the
/// given thrust-specific consumption (kg/(N s)) had flown it, counting fuel
/// cost only: integrand fuel_cost * kappa_f * g * tsfc * drag(W(t), v(t)).
/// Time cost is excluded so the comparison isolates the energy bill.
double doc_recost_fuel_only(const CruiseProfile& profile, const CruiseParams& params,
                            double jet_tsfc, double jet_fuel_cost);

} // namespace mindoc
