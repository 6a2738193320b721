#pragma once

#include <cmath>
#include <stdexcept>

#include "coldgas/constants.hpp"
#include "coldgas/state.hpp"

namespace coldgas {

/**
 * @brief Orbital speed from the vis-viva equation, v = sqrt(mu*(2/r - 1/a)).
 * @param r Current radius [km]
 * @param a Semi-major axis [km]
 * @return Speed [km/s]
 *
 * Throws std::domain_error if an orbit of semi-major axis a cannot reach
 * radius r (2/r - 1/a <= 0).
 */
inline double vis_viva_speed(double r, double a, const BodyConstants& body = {}) {
    if (r <= 0.0 || a <= 0.0)
        throw std::invalid_argument("vis_viva_speed: r and a must be positive");
    const double arg = 2.0 / r - 1.0 / a;
    if (arg <= 0.0)
        throw std::domain_error("vis_viva_speed: orbit of semi-major axis a cannot reach radius r");
    return std::sqrt(body.mu * arg);
}

/// Circular orbit speed sqrt(mu/r) [km/s].
inline double circular_speed(double r, const BodyConstants& body = {}) {
    if (r <= 0.0) throw std::invalid_argument("circular_speed: r must be positive");
    return std::sqrt(body.mu / r);
}

/// Specific orbital energy v^2/2 - mu/r [km^2/s^2]. Equals -mu/(2a) on a bound orbit.
inline double specific_energy(double r, double v, const BodyConstants& body = {}) {
    if (r <= 0.0) throw std::invalid_argument("specific_energy: r must be positive");
    return 0.5 * v * v - body.mu / r;
}

inline double specific_energy(const StateVector& sv, const BodyConstants& body = {}) {
    return specific_energy(sv.position.norm(), sv.velocity.norm(), body);
}

/// Kepler period 2*pi*sqrt(a^3/mu) [s].
inline double orbit_period(double a, const BodyConstants& body = {}) {
    if (a <= 0.0) throw std::invalid_argument("orbit_period: a must be positive");
    return 2.0 * PI * std::sqrt(a * a * a / body.mu);
}

/**
 * @brief Solve Kepler's equation E - e*sin(E) = M for the eccentric anomaly.
 * @param mean_anomaly M [rad]
 * @param eccentricity e in [0, 1)
 * @param tol Convergence tolerance on the Newton update [rad]
 * @return Eccentric anomaly [rad], same revolution as M
 */
inline double solve_kepler(double mean_anomaly, double eccentricity, double tol = 1e-12) {
    if (eccentricity < 0.0 || eccentricity >= 1.0)
        throw std::invalid_argument("solve_kepler: eccentricity must be in [0,1)");
    if (eccentricity == 0.0) return mean_anomaly;

    // Reduce to [-pi, pi] for the iteration, restore the revolution at the end.
    const double revs = std::round(mean_anomaly / (2.0 * PI));
    const double m = mean_anomaly - revs * 2.0 * PI;
    double e_anom = (eccentricity < 0.8) ? m : PI * (m >= 0.0 ? 1.0 : -1.0);
    for (int it = 0; it < 64; ++it) {
        const double f = e_anom - eccentricity * std::sin(e_anom) - m;
        const double fp = 1.0 - eccentricity * std::cos(e_anom);
        const double de = f / fp;
        e_anom -= de;
        if (std::abs(de) < tol) return e_anom + revs * 2.0 * PI;
    }
    throw std::runtime_error("solve_kepler: iteration did not converge");
}

/// Eccentric anomaly -> true anomaly [rad].
inline double true_from_eccentric(double e_anom, double eccentricity) {
    if (eccentricity == 0.0) return e_anom;
    const double s = std::sqrt(1.0 + eccentricity) * std::sin(0.5 * e_anom);
    const double c = std::sqrt(1.0 - eccentricity) * std::cos(0.5 * e_anom);
    return 2.0 * std::atan2(s, c);
}

/// True anomaly -> eccentric anomaly [rad].
inline double eccentric_from_true(double true_anom, double eccentricity) {
    if (eccentricity == 0.0) return true_anom;
    const double s = std::sqrt(1.0 - eccentricity) * std::sin(0.5 * true_anom);
    const double c = std::sqrt(1.0 + eccentricity) * std::cos(0.5 * true_anom);
    return 2.0 * std::atan2(s, c);
}

namespace detail {

// Angle from `from` to `to` about unit-normalized `axis`, in [0, 2*pi).
inline double angle_about(const Vec3& from, const Vec3& to, const Vec3& axis) {
    const Vec3 u = axis / axis.norm();
    const double s = from.cross(to).dot(u);
    const double c = from.dot(to);
    return wrap_2pi(std::atan2(s, c));
}

}  // namespace detail

/**
 * @brief Convert Keplerian elements to a Cartesian state.
 *
 * The state satisfies the vis-viva equation by construction. Rejects
 * non-bound element sets (a <= 0 or e >= 1).
 */
inline StateVector elements_to_state(const KeplerianElements& el, const BodyConstants& body = {}) {
    if (el.semi_major_axis <= 0.0)
        throw std::invalid_argument("elements_to_state: semi-major axis must be positive");
    if (el.eccentricity < 0.0 || el.eccentricity >= 1.0)
        throw std::invalid_argument("elements_to_state: eccentricity must be in [0,1)");

    const double a = el.semi_major_axis;
    const double e = el.eccentricity;
    const double inc = deg2rad(el.inclination);
    const double raan = deg2rad(el.raan);
    const double argp = deg2rad(el.arg_perigee);
    const double nu = deg2rad(el.true_anomaly);

    const double p = a * (1.0 - e * e);
    const double cnu = std::cos(nu), snu = std::sin(nu);
    const double r = p / (1.0 + e * cnu);
    const double vf = std::sqrt(body.mu / p);

    // Perifocal frame.
    const Vec3 r_pf{r * cnu, r * snu, 0.0};
    const Vec3 v_pf{-vf * snu, vf * (e + cnu), 0.0};

    // 3-1-3 rotation: perifocal -> inertial.
    const double cO = std::cos(raan), sO = std::sin(raan);
    const double ci = std::cos(inc), si = std::sin(inc);
    const double cw = std::cos(argp), sw = std::sin(argp);

    const double r11 = cO * cw - sO * sw * ci;
    const double r12 = -cO * sw - sO * cw * ci;
    const double r21 = sO * cw + cO * sw * ci;
    const double r22 = -sO * sw + cO * cw * ci;
    const double r31 = sw * si;
    const double r32 = cw * si;

    StateVector sv;
    sv.position = {r11 * r_pf.x + r12 * r_pf.y,
                   r21 * r_pf.x + r22 * r_pf.y,
                   r31 * r_pf.x + r32 * r_pf.y};
    sv.velocity = {r11 * v_pf.x + r12 * v_pf.y,
                   r21 * v_pf.x + r22 * v_pf.y,
                   r31 * v_pf.x + r32 * v_pf.y};
    return sv;
}

/**
 * @brief Convert a Cartesian state to Keplerian elements.
 *
 * Singular-geometry conventions: for e < 1e-8 the argument of perigee is
 * reported as 0 and the phase folds into the true anomaly; for
 * i < 1e-8 deg the RAAN is reported as 0. Flags radial (zero angular
 * momentum) and unbound trajectories with std::domain_error.
 */
inline KeplerianElements state_to_elements(const StateVector& sv, const BodyConstants& body = {}) {
    const Vec3& r = sv.position;
    const Vec3& v = sv.velocity;
    const double rn = r.norm();
    const double vn = v.norm();
    if (rn <= 0.0) throw std::invalid_argument("state_to_elements: zero position vector");

    const Vec3 h = r.cross(v);
    const double hn = h.norm();
    if (hn <= 1e-12 * rn * vn || hn == 0.0)
        throw std::domain_error("state_to_elements: radial trajectory (zero angular momentum)");

    const double energy = 0.5 * vn * vn - body.mu / rn;
    if (energy >= 0.0)
        throw std::domain_error("state_to_elements: state is not on a bound orbit");
    const double a = -body.mu / (2.0 * energy);

    const Vec3 e_vec = (r * (vn * vn - body.mu / rn) - v * r.dot(v)) / body.mu;
    const double e = e_vec.norm();

    const double inc = std::atan2(std::hypot(h.x, h.y), h.z);
    const Vec3 node{-h.y, h.x, 0.0};  // z_hat x h

    constexpr double e_tol = 1e-8;
    constexpr double i_tol_rad = 1e-8 * PI / 180.0;
    const bool circular = e < e_tol;
    const bool equatorial = inc < i_tol_rad;

    double raan = 0.0, argp = 0.0, nu = 0.0;
    if (!equatorial) {
        raan = wrap_2pi(std::atan2(node.y, node.x));
        if (!circular) {
            argp = detail::angle_about(node, e_vec, h);
            nu = detail::angle_about(e_vec, r, h);
        } else {
            nu = detail::angle_about(node, r, h);  // argument of latitude
        }
    } else {
        if (!circular) {
            argp = wrap_2pi(std::atan2(e_vec.y, e_vec.x));  // longitude of perigee
            nu = detail::angle_about(e_vec, r, h);
        } else {
            nu = wrap_2pi(std::atan2(r.y, r.x));  // true longitude
        }
    }

    KeplerianElements el;
    el.semi_major_axis = a;
    el.eccentricity = e;
    el.inclination = rad2deg(inc);
    el.raan = wrap_deg(rad2deg(raan));
    el.arg_perigee = wrap_deg(rad2deg(argp));
    el.true_anomaly = wrap_deg(rad2deg(nu));
    return el;
}

/**
 * @brief Closed-form two-body propagation of an element set by dt seconds.
 *
 * Advances the mean anomaly at the Keplerian rate and returns the Cartesian
 * state at the new epoch.
 */
inline StateVector kepler_propagate(const KeplerianElements& el0, double dt,
                                    const BodyConstants& body = {}) {
    const double a = el0.semi_major_axis;
    const double e = el0.eccentricity;
    const double n = std::sqrt(body.mu / (a * a * a));
    const double nu0 = deg2rad(el0.true_anomaly);
    const double e_anom0 = eccentric_from_true(nu0, e);
    const double m0 = e_anom0 - e * std::sin(e_anom0);
    const double m = m0 + n * dt;
    const double nu = true_from_eccentric(solve_kepler(m, e), e);

    KeplerianElements el = el0;
    el.true_anomaly = wrap_deg(rad2deg(nu));
    StateVector sv = elements_to_state(el, body);
    sv.epoch = dt;
    return sv;
}

}  // namespace coldgas
