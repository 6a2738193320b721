#pragma once

#include <cmath>
#include <stdexcept>

#include "coldgas/constants.hpp"
#include "coldgas/orbit.hpp"

namespace coldgas {

/// All quantities of a coplanar circular-to-circular Hohmann transfer.
/// Burn delta-vs are signed along the velocity direction: negative values
/// are retrograde (the de-orbit case).
struct TransferPlan {
    double alt1 = 0.0, alt2 = 0.0;  // endpoint altitudes [km]
    double r1 = 0.0, r2 = 0.0;      // endpoint orbit radii [km]
    double a_transfer = 0.0;        // transfer ellipse semi-major axis [km]
    double eps_orbit1 = 0.0;        // specific energies [km^2/s^2]
    double eps_orbit2 = 0.0;
    double eps_transfer = 0.0;
    double v_orbit1 = 0.0;          // circular speeds [km/s]
    double v_orbit2 = 0.0;
    double v_t1 = 0.0;              // transfer speeds at r1, r2 [km/s]
    double v_t2 = 0.0;
    double dv1 = 0.0;               // first burn, signed [km/s]
    double dv2 = 0.0;               // second burn, signed [km/s]
    double dv_total = 0.0;          // dv1 + dv2 [km/s]
    double tof = 0.0;               // transfer time of flight [s]
};

/**
 * @brief Plan the two-burn Hohmann transfer between circular orbits.
 * @param alt1 Departure altitude [km]
 * @param alt2 Arrival altitude [km]
 *
 * dv1 = v_t1 - v_orbit1 and dv2 = v_orbit2 - v_t2; both are negative when
 * alt2 < alt1. The time of flight is half the transfer-ellipse period.
 */
inline TransferPlan plan_hohmann(double alt1, double alt2, const BodyConstants& body = {}) {
    if (alt1 <= 0.0 || alt2 <= 0.0)
        throw std::invalid_argument("plan_hohmann: altitudes must be positive");
    if (alt1 == alt2)
        throw std::invalid_argument("plan_hohmann: endpoint altitudes must differ");

    TransferPlan p;
    p.alt1 = alt1;
    p.alt2 = alt2;
    p.r1 = body.radius + alt1;
    p.r2 = body.radius + alt2;
    p.a_transfer = 0.5 * (p.r1 + p.r2);
    p.eps_orbit1 = -body.mu / (2.0 * p.r1);
    p.eps_orbit2 = -body.mu / (2.0 * p.r2);
    p.eps_transfer = -body.mu / (2.0 * p.a_transfer);
    p.v_orbit1 = circular_speed(p.r1, body);
    p.v_orbit2 = circular_speed(p.r2, body);
    p.v_t1 = vis_viva_speed(p.r1, p.a_transfer, body);
    p.v_t2 = vis_viva_speed(p.r2, p.a_transfer, body);
    p.dv1 = p.v_t1 - p.v_orbit1;
    p.dv2 = p.v_orbit2 - p.v_t2;
    p.dv_total = p.dv1 + p.dv2;
    p.tof = PI * std::sqrt(p.a_transfer * p.a_transfer * p.a_transfer / body.mu);
    return p;
}

/// Rocket-equation propellant budget, dv = u_eq * ln(m_i / m_f).
struct PropellantBudget {
    double isp = 0.0;           // s
    double g0 = G0;             // m/s^2
    double u_eq = 0.0;          // effective exhaust velocity [m/s]
    double dv = 0.0;            // m/s (magnitude)
    double m_final = 0.0;       // kg
    double m_initial = 0.0;     // kg
    double m_propellant = 0.0;  // kg
};

/**
 * @brief Propellant mass for a delta-v magnitude at a given Isp and final mass.
 * @param dv Delta-v magnitude [m/s]
 * @param isp Specific impulse [s]
 * @param m_final Mass after the burn [kg]
 */
inline PropellantBudget propellant_mass(double dv, double isp, double m_final) {
    if (dv < 0.0)
        throw std::invalid_argument("propellant_mass: dv must be a non-negative magnitude");
    if (isp <= 0.0)
        throw std::invalid_argument("propellant_mass: isp must be positive");
    if (m_final <= 0.0)
        throw std::invalid_argument("propellant_mass: final mass must be positive");

    PropellantBudget b;
    b.isp = isp;
    b.u_eq = b.g0 * isp;
    b.dv = dv;
    b.m_final = m_final;
    b.m_initial = m_final * std::exp(dv / b.u_eq);
    b.m_propellant = b.m_initial - m_final;
    return b;
}

}  // namespace coldgas
