#include "mindoc/costmodel.hpp"

#include <cmath>

namespace mindoc {

void CostInputs::validate() const {
    if (time_cost < 0.0) throw DomainError("costs: time_cost must be >= 0");
    if (electricity_cost < 0.0) throw DomainError("costs: electricity_cost must be >= 0");
    if (fuel_cost < 0.0) throw DomainError("costs: fuel_cost must be >= 0");
}

double fuel_conversion(double heating_value, double gravity) {
    if (heating_value <= 0.0) throw DomainError("conversions: heating_value must be > 0");
    if (gravity <= 0.0) throw DomainError("conversions: gravity must be > 0");
    return heating_value / gravity;
}

ConversionFactors make_conversions(double heating_value, double gravity,
                                   std::optional<double> kappa_i_override,
                                   std::optional<double> kappa_f_override) {
    if (gravity <= 0.0) throw DomainError("conversions: gravity must be > 0");
    ConversionFactors conv;
    conv.gravity = gravity;
    conv.heating_value = heating_value;
    if (kappa_i_override) {
        if (*kappa_i_override <= 0.0) throw DomainError("conversions: kappa_i must be > 0");
        conv.kappa_i = *kappa_i_override;
    }
    if (kappa_f_override) {
        if (*kappa_f_override < 0.0) throw DomainError("conversions: kappa_f must be >= 0");
        conv.kappa_f = *kappa_f_override;
    } else if (heating_value > 0.0) {
        conv.kappa_f = fuel_conversion(heating_value, gravity);
    } else {
        conv.kappa_f = 0.0; // pure-electric configs may omit the fuel path
    }
    return conv;
}

TradeoffCoefficients derive_tradeoffs(const CostInputs& costs) {
    costs.validate();
    const double c_mu = 0.5 * (costs.electricity_cost + costs.fuel_cost);
    if (c_mu <= 0.0)
        throw DomainError("costs: electricity_cost + fuel_cost must be > 0 "
                          "(the average energy price normalizes the tradeoffs)");
    TradeoffCoefficients t;
    t.c_mu = c_mu;
    t.c_delta = 0.5 * (costs.electricity_cost - costs.fuel_cost);
    t.c_e = t.c_delta / c_mu;
    t.c_i = 2.0 * costs.time_cost / c_mu;
    return t;
}

double Powertrain::tsfc_weight(double gravity) const {
    switch (tsfc_mode) {
    case TsfcMode::mass:
        return gravity * tsfc;
    case TsfcMode::weight:
        return tsfc;
    }
    throw DomainError("powertrain: unknown tsfc_mode");
}

void Powertrain::validate() const {
    if (beta < 0.0 || beta > 1.0) throw DomainError("powertrain: beta must be in [0, 1]");
    if (efficiency <= 0.0 || efficiency > 1.0)
        throw DomainError("powertrain: efficiency must be in (0, 1]");
    if (beta > 0.0 && supply_voltage <= 0.0)
        throw DomainError("powertrain: supply_voltage must be > 0 when beta > 0");
    if (tsfc < 0.0) throw DomainError("powertrain: tsfc must be >= 0");
    if (beta < 1.0 && tsfc <= 0.0)
        throw DomainError("powertrain: tsfc must be > 0 when beta < 1");
}

double doc_rate(double airspeed, double drag, const Powertrain& powertrain,
                const CostInputs& costs, const ConversionFactors& conv) {
    if (airspeed <= 0.0) throw DomainError("doc_rate: airspeed must be > 0");
    if (drag < 0.0) throw DomainError("doc_rate: drag must be >= 0");
    const double electric = costs.electricity_cost * conv.kappa_i * powertrain.beta * drag *
                            airspeed / powertrain.efficiency;
    const double fuel = costs.fuel_cost * conv.kappa_f *
                        powertrain.tsfc_weight(conv.gravity) * (1.0 - powertrain.beta) * drag;
    return costs.time_cost + electric + fuel;
}

} // namespace mindoc
