// Direct-operating-cost model: energy prices, conversion factors, the derived
// tradeoff coefficients, powertrain bookkeeping, and the instantaneous DOC rate.
#pragma once

#include "mindoc/errors.hpp"

#include <optional>

namespace mindoc {

/// Raw operating prices. Currency is abstract (reported as USD throughout).
struct CostInputs {
    double time_cost = 0.0;        ///< C_t, USD per second of flight
    double electricity_cost = 0.0; ///< C_i, USD per kWh drawn from the battery
    double fuel_cost = 0.0;        ///< C_f, USD per kWh of fuel heating value

    /// @throws DomainError on negative entries.
    void validate() const;
};

/// Unit-conversion constants used when pricing consumption.
struct ConversionFactors {
    double kappa_i = 1.0 / 3.6e6; ///< electricity conversion, kWh per J
    double kappa_f = 0.0;         ///< fuel conversion, kWh per N of fuel weight
    double gravity = 9.8;         ///< m/s^2 (converts fuel mass <-> weight)
    double heating_value = 0.0;   ///< fuel specific energy, kWh per kg
};

/// @brief Fuel conversion factor: kWh of heating value per newton of fuel.
/// kappa_f = heating_value / gravity.
/// @throws DomainError on non-positive inputs
double fuel_conversion(double heating_value, double gravity);

/// Build the conversion set, deriving kappa_f from the heating value unless
/// explicitly overridden.
ConversionFactors make_conversions(double heating_value, double gravity,
                                   std::optional<double> kappa_i_override = {},
                                   std::optional<double> kappa_f_override = {});

/// Derived price tradeoffs that the optimality condition consumes.
struct TradeoffCoefficients {
    double c_mu = 0.0;    ///< average energy price (C_i + C_f) / 2, USD/kWh
    double c_delta = 0.0; ///< half-difference (C_i - C_f) / 2, USD/kWh
    double c_e = 0.0;     ///< energy-price asymmetry c_delta / c_mu, in [-1, 1]
    double c_i = 0.0;     ///< time-vs-energy tradeoff 2 C_t / c_mu, 1/s * (kWh/USD) scale

    /// Time coefficient of the DOC integrand normalized by the average energy
    /// price c_mu: C_t / c_mu = c_i / 2. The optimality polynomial weights
    /// flight time with this (the normalization divides every term of the DOC
    /// rate by c_mu, so the time term carries half of c_i).
    double time_weight() const { return 0.5 * c_i; }
};

/// @brief Derive the tradeoff coefficients from raw prices.
/// @throws DomainError when both energy prices are zero (c_mu would vanish)
///         or any price is negative.
TradeoffCoefficients derive_tradeoffs(const CostInputs& costs);

/// How a tabulated thrust-specific consumption value converts to weight flow.
enum class TsfcMode {
    mass,   ///< tsfc is kg/(N s): weight flow = gravity * tsfc * thrust
    weight, ///< tsfc is already N/(N s) = 1/s: weight flow = tsfc * thrust
};

/// Propulsion-chain description for a hybrid-electric (or pure-electric /
/// pure-combustion) powertrain. beta is the electrification fraction of
/// thrust power: beta = 1 pure electric, beta = 0 pure combustion.
struct Powertrain {
    double beta = 1.0;           ///< electric fraction of thrust power, [0, 1]
    double efficiency = 1.0;     ///< total electrical chain efficiency, (0, 1]
    double supply_voltage = 0.0; ///< battery supply voltage U, V
    double tsfc = 0.0;           ///< thrust-specific fuel consumption, kg/(N s)
    TsfcMode tsfc_mode = TsfcMode::mass;

    /// tsfc expressed as weight flow per newton of thrust, 1/s.
    double tsfc_weight(double gravity) const;

    /// @throws DomainError on out-of-range fields.
    void validate() const;
};

/// @brief Instantaneous direct operating cost rate, USD/s.
///
/// doc_rate = C_t + C_i kappa_i beta D v / eta + C_f kappa_f tsfc_w (1-beta) D,
/// where tsfc_w = tsfc expressed as weight flow (see TsfcMode). The supply
/// voltage cancels out of the electricity term (price * kappa_i * U * i with
/// i = beta D v / (eta U)).
///
/// @param airspeed true airspeed, m/s (> 0)
/// @param drag     drag force at that airspeed, N (>= 0)
/// @return cost rate, USD/s
/// @throws DomainError on non-positive airspeed or negative drag
double doc_rate(double airspeed, double drag, const Powertrain& powertrain,
                const CostInputs& costs, const ConversionFactors& conv);

} // namespace mindoc
