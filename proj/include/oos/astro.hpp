#pragma once

#include "oos/errors.hpp"

namespace oos {

namespace constants {
inline constexpr double mu_earth_km3_s2 = 398600.4418;
inline constexpr double g0_m_s2 = 9.80665;
inline constexpr double geo_radius_km = 42164.0;
inline constexpr double default_r_crit_km = 8000.0;
inline constexpr double seconds_per_day = 86400.0;
}  // namespace constants

/// Shared circular orbit of the customer fleet plus the physical
/// constants used by the maneuver design.
struct OrbitGeometry {
    double r_km = constants::geo_radius_km;        // fleet orbit radius
    double r_crit_km = constants::default_r_crit_km;  // forbidden-zone radius
    double mu = constants::mu_earth_km3_s2;
    double g0 = constants::g0_m_s2;

    void validate() const;
    /// Orbital period of the fleet orbit [s].
    double period_s() const;
};

/// One minimum-delta-V phasing transfer: the servicer flies k1 complete
/// revolutions on an orbit of semi-major axis `a_km` while the target
/// sweeps `alpha + 2*pi*k2`.
struct PhasingSolution {
    double a_km = 0.0;
    int k1 = 1;  // complete servicer orbits, >= 1
    int k2 = 0;  // complete target orbits, >= 0
    double delta_v_kms = 0.0;
    double t_travel_s = 0.0;
};

/// Minimum-delta-V phasing maneuver for relative angle `alpha_rad`
/// (measured from target to servicer, alpha = 2*pi - dtheta0) subject to
/// t_travel <= tof_max_s and the phasing orbit staying outside the
/// forbidden zone. Throws NoFeasibleTransfer when no (k1, k2) pair
/// satisfies both constraints. Ties on delta-V prefer smaller travel
/// time, then smaller k1.
PhasingSolution solve_phasing(double alpha_rad, const OrbitGeometry& geom,
                              double tof_max_s);

/// Propellant mass [kg] burned by an impulsive maneuver of `delta_v_kms`
/// starting from wet mass `m0_kg`.
double propellant_for_maneuver(double delta_v_kms, double isp_s, double m0_kg,
                               const OrbitGeometry& geom);

/// Fraction of the departing wet mass burned as propellant,
/// phi = 1 - exp(-dv / (g0 * isp)). Used to keep the rocket equation
/// linear inside the flow-transformation rows: burned = phi * total mass.
double consumption_fraction(double delta_v_kms, double isp_s,
                            const OrbitGeometry& geom);

/// Relative angle for a transfer from `from_lon_deg` to `to_lon_deg`
/// (degrees East), alpha = 2*pi - dtheta0 with dtheta0 the target's lead
/// angle in the direction of motion. Result in (0, 2*pi].
double transfer_alpha_rad(double from_lon_deg, double to_lon_deg);

}  // namespace oos
