#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "coldgas/propagator.hpp"
#include "coldgas/transfer.hpp"

namespace coldgas {

/// De-orbit mission description, loaded from the mission JSON file.
struct MissionConfig {
    struct InitialOrbit {
        double altitude_km = 0.0;
        double inclination_deg = 0.0;
        double raan_deg = 0.0;
    } initial_orbit;

    double target_altitude_km = 0.0;

    struct Vehicle {
        double dry_mass_kg = 0.0;
        double isp_s = 0.0;
        double cd = 2.2;
        double area_m2 = 0.0;
    } vehicle;

    struct Sim {
        double dt_s = 1.0;
        double max_duration_s = 0.0;
        bool drag = false;
        double floor_altitude_km = 100.0;  // optional key, decay-leg stop
        int sample_decimation = 1;         // optional key
    } sim;
};

inline MissionConfig parse_mission(const nlohmann::json& j) {
    const auto require = [](const nlohmann::json& node, const char* key) -> const nlohmann::json& {
        if (!node.contains(key))
            throw std::runtime_error(std::string("mission config: missing key '") + key + "'");
        return node.at(key);
    };

    MissionConfig m;
    const auto& orbit = require(j, "initial_orbit");
    m.initial_orbit.altitude_km = require(orbit, "altitude_km").get<double>();
    m.initial_orbit.inclination_deg = require(orbit, "inclination_deg").get<double>();
    m.initial_orbit.raan_deg = require(orbit, "raan_deg").get<double>();
    m.target_altitude_km = require(j, "target_altitude_km").get<double>();

    const auto& veh = require(j, "vehicle");
    m.vehicle.dry_mass_kg = require(veh, "dry_mass_kg").get<double>();
    m.vehicle.isp_s = require(veh, "isp_s").get<double>();
    m.vehicle.cd = require(veh, "cd").get<double>();
    m.vehicle.area_m2 = require(veh, "area_m2").get<double>();

    const auto& sim = require(j, "sim");
    m.sim.dt_s = require(sim, "dt_s").get<double>();
    m.sim.max_duration_s = require(sim, "max_duration_s").get<double>();
    m.sim.drag = require(sim, "drag").get<bool>();
    if (sim.contains("floor_altitude_km"))
        m.sim.floor_altitude_km = sim.at("floor_altitude_km").get<double>();
    if (sim.contains("sample_decimation"))
        m.sim.sample_decimation = sim.at("sample_decimation").get<int>();

    if (m.initial_orbit.altitude_km <= 0.0 || m.target_altitude_km <= 0.0)
        throw std::runtime_error("mission config: altitudes must be positive");
    if (m.vehicle.dry_mass_kg <= 0.0 || m.vehicle.isp_s <= 0.0 || m.vehicle.area_m2 <= 0.0)
        throw std::runtime_error("mission config: vehicle parameters must be positive");
    if (m.sim.dt_s <= 0.0 || m.sim.max_duration_s <= 0.0)
        throw std::runtime_error("mission config: dt_s and max_duration_s must be positive");
    return m;
}

inline MissionConfig load_mission(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("mission config: cannot open " + path);
    nlohmann::json j;
    is >> j;
    return parse_mission(j);
}

/// Outcome of the two-burn de-orbit mission.
struct MissionResult {
    TransferPlan plan;
    std::vector<TrajectorySample> trajectory;
    std::vector<BurnEvent> burns;
    std::vector<double> burn_propellant_kg;  // one entry per executed burn
    PropellantBudget budget;                 // total, final mass = dry mass
    StopReason stop_reason = StopReason::MaxDuration;
    double end_time = 0.0;
};

/**
 * @brief Run the planned two-burn transfer end to end.
 *
 * Plans the Hohmann transfer for the configured altitudes, starts on the
 * circular initial orbit, fires the first burn at t = 0 and the second at
 * the matching apsis of the transfer ellipse, then coasts until
 * max_duration_s, the altitude floor, or impact. Propellant is budgeted by
 * the rocket equation with the vehicle dry mass as the post-mission mass.
 */
inline MissionResult simulate_deorbit(const MissionConfig& mission, const BodyConstants& body = {}) {
    MissionResult out;
    out.plan = plan_hohmann(mission.initial_orbit.altitude_km, mission.target_altitude_km, body);

    KeplerianElements el0;
    el0.semi_major_axis = body.radius + mission.initial_orbit.altitude_km;
    el0.eccentricity = 0.0;
    el0.inclination = mission.initial_orbit.inclination_deg;
    el0.raan = mission.initial_orbit.raan_deg;
    StateVector initial = elements_to_state(el0, body);

    const bool descending = mission.target_altitude_km < mission.initial_orbit.altitude_km;
    std::vector<ImpulsiveBurn> burns(2);
    burns[0] = {ImpulsiveBurn::Trigger::Time, 0.0, out.plan.dv1};
    burns[1] = {descending ? ImpulsiveBurn::Trigger::Perigee : ImpulsiveBurn::Trigger::Apogee, 0.0,
                out.plan.dv2};

    SpacecraftConfig config;
    config.mass = mission.vehicle.dry_mass_kg;
    config.drag_coefficient = mission.vehicle.cd;
    config.reference_area = mission.vehicle.area_m2;

    PropagateOptions options;
    options.dt = mission.sim.dt_s;
    options.max_duration = mission.sim.max_duration_s;
    options.floor_altitude = mission.sim.floor_altitude_km;
    options.sample_decimation = mission.sim.sample_decimation;
    if (mission.sim.drag) options.energy_drift_tol = 0.0;

    const AtmosphereModel atmosphere = AtmosphereModel::exponential_default();
    PropagationResult prop = propagate(initial, config, burns, mission.sim.drag ? &atmosphere : nullptr,
                                       options, body);

    out.trajectory = std::move(prop.samples);
    out.burns = std::move(prop.burns);
    out.stop_reason = prop.stop_reason;
    out.end_time = prop.end_time;

    // Propellant per burn, chained backward from the dry mass: the last burn
    // ends at dry mass, earlier burns carry the later propellant as payload.
    const double u_eq = G0 * mission.vehicle.isp_s;  // m/s
    double mass_after = mission.vehicle.dry_mass_kg;
    std::vector<double> per_burn(out.burns.size(), 0.0);
    for (std::size_t k = out.burns.size(); k-- > 0;) {
        const double dv_ms = std::abs(out.burns[k].delta_v) * 1000.0;
        const double mass_before = mass_after * std::exp(dv_ms / u_eq);
        per_burn[k] = mass_before - mass_after;
        mass_after = mass_before;
    }
    out.burn_propellant_kg = std::move(per_burn);
    const double dv_total_ms = (std::abs(out.plan.dv1) + std::abs(out.plan.dv2)) * 1000.0;
    out.budget = propellant_mass(dv_total_ms, mission.vehicle.isp_s, mission.vehicle.dry_mass_kg);
    return out;
}

/// Trajectory CSV: Cartesian state, osculating elements and altitude per sample.
inline void write_trajectory_csv(std::ostream& os, const std::vector<TrajectorySample>& samples) {
    os << "t_s,x_km,y_km,z_km,vx_kms,vy_kms,vz_kms,a_km,e,i_deg,raan_deg,argp_deg,nu_deg,alt_km\n";
    char line[512];
    for (const auto& s : samples) {
        std::snprintf(line, sizeof(line),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      s.state.epoch, s.state.position.x, s.state.position.y, s.state.position.z,
                      s.state.velocity.x, s.state.velocity.y, s.state.velocity.z,
                      s.elements.semi_major_axis, s.elements.eccentricity, s.elements.inclination,
                      s.elements.raan, s.elements.arg_perigee, s.elements.true_anomaly, s.altitude);
        os << line;
    }
}

/// Element-history CSV, the orbital-elements plot substrate.
inline void write_elements_csv(std::ostream& os, const std::vector<TrajectorySample>& samples) {
    os << "t_s,a_km,e,i_deg,raan_deg,argp_deg,nu_deg,alt_km\n";
    char line[384];
    for (const auto& s : samples) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      s.state.epoch, s.elements.semi_major_axis, s.elements.eccentricity,
                      s.elements.inclination, s.elements.raan, s.elements.arg_perigee,
                      s.elements.true_anomaly, s.altitude);
        os << line;
    }
}

/// Read back a trajectory CSV written by write_trajectory_csv.
inline std::vector<TrajectorySample> read_trajectory_csv(std::istream& is) {
    std::vector<TrajectorySample> samples;
    std::string line;
    bool header = true;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::istringstream ss(line);
        TrajectorySample s;
        double fields[14];
        for (int i = 0; i < 14; ++i) {
            if (!(ss >> fields[i]))
                throw std::runtime_error("trajectory csv: malformed line " + std::to_string(lineno));
            if (i < 13) {
                char comma = 0;
                if (!(ss >> comma) || comma != ',')
                    throw std::runtime_error("trajectory csv: malformed line " + std::to_string(lineno));
            }
        }
        s.state.epoch = fields[0];
        s.state.position = {fields[1], fields[2], fields[3]};
        s.state.velocity = {fields[4], fields[5], fields[6]};
        s.elements.semi_major_axis = fields[7];
        s.elements.eccentricity = fields[8];
        s.elements.inclination = fields[9];
        s.elements.raan = fields[10];
        s.elements.arg_perigee = fields[11];
        s.elements.true_anomaly = fields[12];
        s.altitude = fields[13];
        samples.push_back(s);
    }
    if (samples.empty()) throw std::runtime_error("trajectory csv: no samples");
    return samples;
}

}  // namespace coldgas
