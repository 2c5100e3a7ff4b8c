#include "oos/astro.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace oos {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

void OrbitGeometry::validate() const {
    if (!(r_km > r_crit_km) || !(r_crit_km > 0.0))
        throw std::invalid_argument("orbit geometry requires r > r_crit > 0");
    if (!(mu > 0.0) || !(g0 > 0.0))
        throw std::invalid_argument("orbit geometry requires mu > 0 and g0 > 0");
}

double OrbitGeometry::period_s() const {
    return two_pi * std::sqrt(r_km * r_km * r_km / mu);
}

double transfer_alpha_rad(double from_lon_deg, double to_lon_deg) {
    double dtheta0 = (to_lon_deg - from_lon_deg) * std::numbers::pi / 180.0;
    dtheta0 = std::fmod(dtheta0, two_pi);
    if (dtheta0 < 0.0) dtheta0 += two_pi;  // lead angle in [0, 2*pi)
    return two_pi - dtheta0;               // (0, 2*pi]
}

PhasingSolution solve_phasing(double alpha_rad, const OrbitGeometry& geom,
                              double tof_max_s) {
    geom.validate();
    if (alpha_rad == 0.0) alpha_rad = two_pi;  // co-located, dtheta0 = 0
    if (!(alpha_rad > 0.0) || alpha_rad > two_pi + 1e-12)
        throw std::invalid_argument("alpha must lie in (0, 2*pi]");
    if (!(tof_max_s > 0.0))
        throw std::invalid_argument("tof_max must be positive");

    const double r = geom.r_km;
    const double sqrt_r3_mu = std::sqrt(r * r * r / geom.mu);
    const double v_circ = std::sqrt(geom.mu / r);
    const double a_min = 0.5 * (r + geom.r_crit_km);

    PhasingSolution best;
    bool found = false;
    double best_dv = std::numeric_limits<double>::infinity();

    constexpr int k2_cap = 1000000;
    for (int k2 = 0;; ++k2) {
        if (k2 > k2_cap)
            throw std::invalid_argument(
                "tof_max admits more than 1e6 target revolutions");
        // Travel time depends on k2 only (target's point of view); it is
        // monotone increasing, so the first violation ends the search.
        const double sweep = alpha_rad + two_pi * k2;
        const double t_travel = sweep * sqrt_r3_mu;
        if (t_travel > tof_max_s) break;

        for (int k1 = 1;; ++k1) {
            const double a = std::cbrt(sweep / (two_pi * k1)) *
                             std::cbrt(sweep / (two_pi * k1)) * r;
            if (a < a_min) break;  // a shrinks with k1; no further k1 fits

            const double vis_viva = geom.mu * (2.0 / r - 1.0 / a);
            const double dv = 2.0 * std::abs(v_circ - std::sqrt(vis_viva));

            const bool better =
                !found || dv < best_dv ||
                (dv == best_dv &&
                 (t_travel < best.t_travel_s ||
                  (t_travel == best.t_travel_s && k1 < best.k1)));
            if (better) {
                best = PhasingSolution{a, k1, k2, dv, t_travel};
                best_dv = dv;
                found = true;
            }
        }
    }

    if (!found)
        throw NoFeasibleTransfer(
            "no (k1, k2) pair satisfies altitude and time-of-flight limits "
            "(alpha=" + std::to_string(alpha_rad) +
            ", tof_max=" + std::to_string(tof_max_s) + " s)");
    return best;
}

double consumption_fraction(double delta_v_kms, double isp_s,
                            const OrbitGeometry& geom) {
    if (delta_v_kms < 0.0)
        throw std::invalid_argument("delta_v must be nonnegative");
    if (!(isp_s > 0.0)) throw std::invalid_argument("isp must be positive");
    return 1.0 - std::exp(-delta_v_kms * 1000.0 / (geom.g0 * isp_s));
}

double propellant_for_maneuver(double delta_v_kms, double isp_s, double m0_kg,
                               const OrbitGeometry& geom) {
    if (!(m0_kg > 0.0)) throw std::invalid_argument("m0 must be positive");
    return m0_kg * consumption_fraction(delta_v_kms, isp_s, geom);
}

}  // namespace oos
