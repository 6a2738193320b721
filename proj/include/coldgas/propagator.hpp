#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "coldgas/atmosphere.hpp"
#include "coldgas/constants.hpp"
#include "coldgas/orbit.hpp"
#include "coldgas/state.hpp"

namespace coldgas {

/// Ballistic properties of the propagated object.
struct SpacecraftConfig {
    double mass = 0.0;              // kg
    double drag_coefficient = 2.2;  // -
    double reference_area = 0.0;    // m^2
};

/// Instantaneous velocity increment along the velocity direction.
/// Negative delta_v is retrograde.
struct ImpulsiveBurn {
    enum class Trigger { Time, Perigee, Apogee };
    Trigger trigger = Trigger::Time;
    double time = 0.0;     // s, Time trigger only
    double delta_v = 0.0;  // km/s along velocity
};

struct TrajectorySample {
    StateVector state;
    KeplerianElements elements;
    double altitude = 0.0;  // km above the body surface
};

struct BurnEvent {
    std::size_t burn_index = 0;
    double time = 0.0;      // s
    double delta_v = 0.0;   // km/s
    double altitude = 0.0;  // km at ignition
    double speed_before = 0.0;  // km/s
    double speed_after = 0.0;   // km/s
};

struct PropagateOptions {
    double dt = 1.0;                 // s, fixed RK4 step
    double max_duration = 0.0;       // s, required
    double floor_altitude = -1.0;    // km; < 0 disables the floor stop
    int sample_decimation = 1;       // record every Nth step
    double energy_drift_tol = 1e-6;  // relative per orbit, drag-free runs; <= 0 disables
};

enum class StopReason { MaxDuration, AltitudeFloor, Impact };

struct PropagationResult {
    std::vector<TrajectorySample> samples;
    std::vector<BurnEvent> burns;
    StopReason stop_reason = StopReason::MaxDuration;
    double end_time = 0.0;  // s
};

/// Raised when the fixed step is too coarse to conserve energy on a
/// drag-free arc.
class StepSizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline Vec3 accel_of(const Vec3& r, const Vec3& v, const SpacecraftConfig& config,
                     const AtmosphereModel* atmosphere, const BodyConstants& body) {
    const double rn = r.norm();
    Vec3 a = r * (-body.mu / (rn * rn * rn));
    if (atmosphere != nullptr) {
        const double rho = atmosphere->density(rn - body.radius);  // kg/m^3
        const Vec3 omega{0.0, 0.0, EARTH_OMEGA};
        const Vec3 v_rel = v - omega.cross(r);  // km/s
        // rho [kg/m^3] * area [m^2] / mass [kg] with velocities in km/s
        // gives km/s^2 through the factor 500 (= 1/2 * 1000).
        const double k = 500.0 * rho * config.drag_coefficient * config.reference_area / config.mass;
        a -= v_rel * (k * v_rel.norm());
    }
    return a;
}

inline StateVector rk4_step(const StateVector& s, double dt, const SpacecraftConfig& config,
                            const AtmosphereModel* atmosphere, const BodyConstants& body) {
    const Vec3 r0 = s.position, v0 = s.velocity;
    const Vec3 a1 = accel_of(r0, v0, config, atmosphere, body);
    const Vec3 r2 = r0 + v0 * (0.5 * dt), v2 = v0 + a1 * (0.5 * dt);
    const Vec3 a2 = accel_of(r2, v2, config, atmosphere, body);
    const Vec3 r3 = r0 + v2 * (0.5 * dt), v3 = v0 + a2 * (0.5 * dt);
    const Vec3 a3 = accel_of(r3, v3, config, atmosphere, body);
    const Vec3 r4 = r0 + v3 * dt, v4 = v0 + a3 * dt;
    const Vec3 a4 = accel_of(r4, v4, config, atmosphere, body);

    StateVector out;
    out.epoch = s.epoch + dt;
    out.position = r0 + (v0 + (v2 + v3) * 2.0 + v4) * (dt / 6.0);
    out.velocity = v0 + (a1 + (a2 + a3) * 2.0 + a4) * (dt / 6.0);
    return out;
}

}  // namespace detail

/**
 * @brief Two-body acceleration with optional atmospheric drag [km/s^2].
 *
 * Gravity -mu*r/|r|^3 plus, when an atmosphere is supplied,
 * -1/2 * rho * |v_rel| * v_rel * Cd*A/m with v_rel = v - omega_earth x r.
 * Flags below-surface states.
 */
inline Vec3 acceleration(const StateVector& state, const SpacecraftConfig& config,
                         const AtmosphereModel* atmosphere = nullptr,
                         const BodyConstants& body = {}) {
    if (atmosphere != nullptr && config.mass <= 0.0)
        throw std::invalid_argument("acceleration: spacecraft mass must be positive for drag");
    if (state.position.norm() <= body.radius)
        throw std::domain_error("acceleration: state is below the body surface (impact)");
    return detail::accel_of(state.position, state.velocity, config, atmosphere, body);
}

/**
 * @brief Fixed-step RK4 propagation with impulsive burns and optional drag.
 *
 * Burns fire in list order: a Time burn when the clock reaches it (the step
 * is split at the trigger), an apsis burn at the next matching sign change
 * of the radial velocity, refined by bisection to 1e-3 s. Samples are
 * recorded every step (decimation configurable); the run stops at
 * max_duration, at the altitude floor, or at impact.
 *
 * On drag-free arcs the specific-energy drift per orbit is monitored and a
 * StepSizeError is raised when it exceeds options.energy_drift_tol.
 */
inline PropagationResult propagate(const StateVector& initial, const SpacecraftConfig& config,
                                   const std::vector<ImpulsiveBurn>& burns,
                                   const AtmosphereModel* atmosphere,
                                   const PropagateOptions& options,
                                   const BodyConstants& body = {}) {
    if (options.dt <= 0.0) throw std::invalid_argument("propagate: dt must be positive");
    if (options.max_duration <= 0.0)
        throw std::invalid_argument("propagate: max_duration must be positive");
    if (options.sample_decimation < 1)
        throw std::invalid_argument("propagate: sample_decimation must be >= 1");
    if (atmosphere != nullptr && config.mass <= 0.0)
        throw std::invalid_argument("propagate: spacecraft mass must be positive for drag");

    PropagationResult result;
    StateVector state = initial;
    const double t_end = initial.epoch + options.max_duration;
    std::size_t next_burn = 0;

    const auto altitude_of = [&](const StateVector& s) { return s.position.norm() - body.radius; };

    const auto record = [&](const StateVector& s) {
        TrajectorySample smp;
        smp.state = s;
        smp.elements = state_to_elements(s, body);
        smp.altitude = altitude_of(s);
        result.samples.push_back(smp);
    };

    const auto fire = [&](StateVector& s, std::size_t index) {
        const ImpulsiveBurn& b = burns[index];
        BurnEvent ev;
        ev.burn_index = index;
        ev.time = s.epoch;
        ev.delta_v = b.delta_v;
        ev.altitude = altitude_of(s);
        ev.speed_before = s.velocity.norm();
        const Vec3 v_hat = s.velocity / ev.speed_before;
        s.velocity += v_hat * b.delta_v;
        ev.speed_after = s.velocity.norm();
        result.burns.push_back(ev);
    };

    // Energy-drift reference, reset at every burn.
    double eps_ref = specific_energy(state, body);
    double t_ref = state.epoch;
    const auto check_energy = [&](const StateVector& s) {
        if (atmosphere != nullptr || options.energy_drift_tol <= 0.0) return;
        const double eps = specific_energy(s, body);
        const double a = -body.mu / (2.0 * eps_ref);
        if (a <= 0.0) return;  // unbound arc, no periodic drift measure
        const double orbits = std::max(1.0, (s.epoch - t_ref) / orbit_period(a, body));
        if (std::abs((eps - eps_ref) / eps_ref) > options.energy_drift_tol * orbits)
            throw StepSizeError("propagate: step size too coarse, energy drift " +
                                std::to_string((eps - eps_ref) / eps_ref) + " after " +
                                std::to_string(orbits) + " orbits");
    };

    // Time burns due immediately fire before the first step.
    while (next_burn < burns.size() && burns[next_burn].trigger == ImpulsiveBurn::Trigger::Time &&
           burns[next_burn].time <= state.epoch) {
        fire(state, next_burn++);
        eps_ref = specific_energy(state, body);
        t_ref = state.epoch;
    }
    record(state);

    long step_count = 0;
    while (state.epoch < t_end) {
        double dt = std::min(options.dt, t_end - state.epoch);

        // Split the step at a pending time trigger.
        bool burn_after_step = false;
        if (next_burn < burns.size() && burns[next_burn].trigger == ImpulsiveBurn::Trigger::Time &&
            burns[next_burn].time <= state.epoch + dt) {
            dt = std::max(0.0, burns[next_burn].time - state.epoch);
            burn_after_step = true;
        }

        const StateVector before = state;
        if (dt > 0.0) state = detail::rk4_step(before, dt, config, atmosphere, body);

        // Apsis trigger: sign change of the radial velocity across the step.
        if (!burn_after_step && next_burn < burns.size() &&
            burns[next_burn].trigger != ImpulsiveBurn::Trigger::Time && dt > 0.0) {
            const bool want_perigee = burns[next_burn].trigger == ImpulsiveBurn::Trigger::Perigee;
            const double f0 = before.position.dot(before.velocity);
            const double f1 = state.position.dot(state.velocity);
            const bool crossed = want_perigee ? (f0 < 0.0 && f1 >= 0.0) : (f0 > 0.0 && f1 <= 0.0);
            if (crossed) {
                double lo = 0.0, hi = dt;
                while (hi - lo > 1e-3) {
                    const double mid = 0.5 * (lo + hi);
                    const StateVector sm = detail::rk4_step(before, mid, config, atmosphere, body);
                    const double fm = sm.position.dot(sm.velocity);
                    const bool crossed_lo = want_perigee ? (f0 < 0.0 && fm >= 0.0) : (f0 > 0.0 && fm <= 0.0);
                    if (crossed_lo)
                        hi = mid;
                    else
                        lo = mid;
                }
                state = detail::rk4_step(before, hi, config, atmosphere, body);
                burn_after_step = true;
            }
        }

        if (burn_after_step) {
            fire(state, next_burn++);
            eps_ref = specific_energy(state, body);
            t_ref = state.epoch;
        } else {
            check_energy(state);
        }

        ++step_count;
        const double alt = altitude_of(state);
        const bool floor_hit = options.floor_altitude >= 0.0 && alt <= options.floor_altitude;
        const bool impact = alt <= 0.0;
        const bool done = state.epoch >= t_end || floor_hit || impact;
        if (done || step_count % options.sample_decimation == 0) record(state);
        if (impact) {
            result.stop_reason = StopReason::Impact;
            result.end_time = state.epoch;
            return result;
        }
        if (floor_hit) {
            result.stop_reason = StopReason::AltitudeFloor;
            result.end_time = state.epoch;
            return result;
        }
    }

    result.stop_reason = StopReason::MaxDuration;
    result.end_time = state.epoch;
    return result;
}

}  // namespace coldgas
