// Steady-flight aerodynamics: parabolic drag polar and derived quantities.
#pragma once

#include "mindoc/errors.hpp"

namespace mindoc {

/// Fixed airframe geometry and drag-polar coefficients.
struct Airframe {
    double wing_area = 0.0;          ///< reference wing area S, m^2
    double cd0 = 0.0;                ///< zero-lift (parasitic) drag coefficient
    double cd2 = 0.0;                ///< induced-drag factor: C_D = cd0 + cd2 * C_L^2
    double empty_weight = 0.0;       ///< operating empty weight, N
    double max_takeoff_weight = 0.0; ///< maximum takeoff weight, N

    /// @throws DomainError unless all fields are positive and empty < MTOW.
    void validate() const;
};

/// Cruise-level atmospheric state (density is the quantity the model consumes;
/// altitude is carried for reporting).
struct Atmosphere {
    double density = 0.0;  ///< air density rho, kg/m^3
    double altitude = 0.0; ///< geometric altitude, m (informational)

    /// @throws DomainError unless density > 0.
    void validate() const;
};

/// @brief Total drag of the parabolic polar in steady level flight.
///
/// D = 1/2 rho S cd0 v^2 + 2 cd2 W^2 / (rho S v^2), the sum of a parasitic
/// term growing with v^2 and an induced term shrinking with v^2.
///
/// @param airframe  validated airframe
/// @param density   air density, kg/m^3 (> 0)
/// @param weight    aircraft weight, N (>= 0; lift equals weight)
/// @param airspeed  true airspeed, m/s (> 0)
/// @return drag force, N
/// @throws DomainError on non-positive airspeed/density or negative weight
double drag(const Airframe& airframe, double density, double weight, double airspeed);

/// @brief Airspeed minimizing drag (and the global minimum of doc-per-distance
/// when time and fuel terms vanish).
///
/// v_md = sqrt(2 W / (rho S)) * (cd2 / cd0)^(1/4); drag at v_md equals
/// 2 W sqrt(cd0 cd2).
///
/// @throws DomainError on non-positive weight or density
double min_drag_speed(const Airframe& airframe, double density, double weight);

/// @brief Induced-drag factor from a published best lift-to-drag ratio.
///
/// Inverts (L/D)_max = 1/2 sqrt(1 / (cd0 cd2)): cd2 = 1 / (4 (L/D)^2 cd0).
///
/// @throws DomainError on non-positive inputs
double cd2_from_lift_to_drag(double max_lift_to_drag, double cd0);

/// Convenience standard-atmosphere density (sea level to 20 km).
/// @throws DomainError outside [0, 20000] m
double isa_density(double altitude);

} // namespace mindoc
