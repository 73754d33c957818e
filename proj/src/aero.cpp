// Drag polar implementation.
#include "mindoc/aero.hpp"

#include <cmath>
#include <string>

namespace mindoc {

void Airframe::validate() const {
    if (!(wing_area > 0.0)) throw DomainError("airframe: wing_area must be > 0");
    if (!(cd0 > 0.0)) throw DomainError("airframe: cd0 must be > 0");
    if (!(cd2 > 0.0)) throw DomainError("airframe: cd2 must be > 0");
    if (!(empty_weight > 0.0)) throw DomainError("airframe: empty_weight must be > 0");
    if (!(max_takeoff_weight > empty_weight))
        throw DomainError("airframe: max_takeoff_weight must exceed empty_weight");
}

void Atmosphere::validate() const {
    if (!(density > 0.0)) throw DomainError("atmosphere: density must be > 0");
}

double drag(const Airframe& airframe, double density, double weight, double airspeed) {
    if (!(airspeed > 0.0)) throw DomainError("drag: airspeed must be > 0");
    if (!(density > 0.0)) throw DomainError("drag: density must be > 0");
    if (weight < 0.0) throw DomainError("drag: weight must be >= 0");
    const double rs = density * airframe.wing_area;
    const double v2 = airspeed * airspeed;
    return 0.5 * rs * airframe.cd0 * v2 + 2.0 * airframe.cd2 * weight * weight / (rs * v2);
}

double min_drag_speed(const Airframe& airframe, double density, double weight) {
    if (!(weight > 0.0)) throw DomainError("min_drag_speed: weight must be > 0");
    if (!(density > 0.0)) throw DomainError("min_drag_speed: density must be > 0");
    return std::sqrt(2.0 * weight / (density * airframe.wing_area)) *
           std::pow(airframe.cd2 / airframe.cd0, 0.25);
}

double cd2_from_lift_to_drag(double max_lift_to_drag, double cd0) {
    if (!(max_lift_to_drag > 0.0))
        throw DomainError("cd2_from_lift_to_drag: lift-to-drag ratio must be > 0");
    if (!(cd0 > 0.0)) throw DomainError("cd2_from_lift_to_drag: cd0 must be > 0");
    return 1.0 / (4.0 * max_lift_to_drag * max_lift_to_drag * cd0);
}

double isa_density(double altitude) {
    if (altitude < 0.0 || altitude > 20000.0)
        throw DomainError("isa_density: altitude must be within [0, 20000] m");
    constexpr double rho0 = 1.225;     // kg/m^3 at sea level
    constexpr double t0 = 288.15;      // K
    constexpr double lapse = 0.0065;   // K/m, troposphere
    constexpr double g0 = 9.80665;     // m/s^2
    constexpr double r_air = 287.053;  // J/(kg K)
    constexpr double h_tropopause = 11000.0;
    const double expo = g0 / (r_air * lapse) - 1.0; // ~4.2559
    if (altitude <= h_tropopause) {
        return rho0 * std::pow(1.0 - lapse * altitude / t0, expo);
    }
    const double t11 = t0 - lapse * h_tropopause; // 216.65 K, isothermal above
    const double rho11 = rho0 * std::pow(t11 / t0, expo);
    return rho11 * std::exp(-g0 * (altitude - h_tropopause) / (r_air * t11));
}

} // namespace mindoc
