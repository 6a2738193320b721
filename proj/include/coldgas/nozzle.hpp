#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "coldgas/constants.hpp"

namespace coldgas {

/// Calorically perfect gas. Defaults are nitrogen.
struct GasModel {
    double gamma = 1.4;                    // ratio of specific heats
    double specific_gas_constant = 296.8;  // J/(kg*K)

    double cp() const { return gamma * specific_gas_constant / (gamma - 1.0); }
};

/// Stagnation-to-static ratios at a given Mach number.
struct StaticRatios {
    double t_ratio = 1.0;  // T0/T
    double p_ratio = 1.0;  // P0/P
};

/// T0/T = 1 + (gamma-1)/2 * M^2 and P0/P = (T0/T)^(gamma/(gamma-1)).
inline StaticRatios static_ratios(double mach, const GasModel& gas = {}) {
    if (mach < 0.0) throw std::invalid_argument("static_ratios: mach must be non-negative");
    StaticRatios r;
    r.t_ratio = 1.0 + 0.5 * (gas.gamma - 1.0) * mach * mach;
    r.p_ratio = std::pow(r.t_ratio, gas.gamma / (gas.gamma - 1.0));
    return r;
}

/**
 * @brief Exit Mach number for a stagnation-to-static pressure ratio.
 *
 * Inverts (1 + (gamma-1)/2 * M^2)^(gamma/(gamma-1)) = p_ratio for M > 0.
 */
inline double exit_mach(double p_ratio, const GasModel& gas = {}) {
    if (p_ratio <= 1.0)
        throw std::invalid_argument("exit_mach: pressure ratio must exceed 1");
    const double g = gas.gamma;
    return std::sqrt(2.0 / (g - 1.0) * (std::pow(p_ratio, (g - 1.0) / g) - 1.0));
}

/**
 * @brief Isentropic area ratio A/A* at a given Mach number.
 *
 * epsilon = (1/M) * [ (2/(gamma+1)) * (1 + (gamma-1)/2 * M^2) ]^((gamma+1)/(2(gamma-1))).
 * Equals 1 at M = 1 and grows on both branches away from it.
 */
inline double expansion_ratio(double mach, const GasModel& gas = {}) {
    if (mach <= 0.0) throw std::invalid_argument("expansion_ratio: mach must be positive");
    const double g = gas.gamma;
    const double base = (2.0 / (g + 1.0)) * (1.0 + 0.5 * (g - 1.0) * mach * mach);
    return std::pow(base, (g + 1.0) / (2.0 * (g - 1.0))) / mach;
}

/// Choked mass flow per throat area and stagnation state [kg/s].
inline double choked_mass_flow(double throat_area, double p0, double t0, const GasModel& gas = {}) {
    if (throat_area <= 0.0 || p0 <= 0.0 || t0 <= 0.0)
        throw std::invalid_argument("choked_mass_flow: inputs must be positive");
    const double g = gas.gamma;
    return throat_area * p0 * std::sqrt(g / (gas.specific_gas_constant * t0)) *
           std::pow(2.0 / (g + 1.0), (g + 1.0) / (2.0 * (g - 1.0)));
}

/// Thermodynamic design point of a converging-diverging nozzle.
struct NozzleDesign {
    double p_chamber = 0.0;       // Pa (stagnation)
    double t_chamber = 0.0;       // K (stagnation)
    double p_exit = 0.0;          // Pa
    double t_exit = 0.0;          // K
    double mach_exit = 0.0;       // -
    double expansion_ratio = 0.0; // Ae/At
    double throat_area = 0.0;     // m^2
    double exit_area = 0.0;       // m^2
    double inlet_area = 0.0;      // m^2
    double mass_flow = 0.0;       // kg/s
    double exit_velocity = 0.0;   // m/s
    double thrust_vacuum = 0.0;   // N
};

/// Conical geometry of the converging-diverging nozzle.
struct NozzleGeometry {
    double inlet_diameter = 0.0;          // m
    double throat_diameter = 0.0;         // m
    double exit_diameter = 0.0;           // m
    double convergent_half_angle = 0.0;   // deg
    double divergent_half_angle = 0.0;    // deg
    double convergent_length = 0.0;       // m
    double divergent_length = 0.0;        // m
};

/// Envelope inputs for the conical layout.
struct NozzleShape {
    double inlet_diameter = 0.010;        // m
    double convergent_half_angle = 5.0;   // deg
    double divergent_half_angle = 5.0;    // deg
};

/**
 * @brief Size a CD nozzle from chamber state, exit pressure and throat area.
 *
 * Composes the exit-Mach, area-ratio and static-ratio relations, then the
 * choked mass flow, exit velocity and vacuum thrust. Cone lengths follow
 * from the diameters and half-angles, L = (d_big - d_small)/(2 tan(angle)).
 */
inline std::pair<NozzleDesign, NozzleGeometry> design_nozzle(double p_chamber, double t_chamber,
                                                             double p_exit, double throat_area,
                                                             const GasModel& gas = {},
                                                             const NozzleShape& shape = {}) {
    if (p_chamber <= 0.0 || t_chamber <= 0.0 || p_exit <= 0.0 || throat_area <= 0.0)
        throw std::invalid_argument("design_nozzle: chamber state, exit pressure and throat area must be positive");
    if (p_chamber <= p_exit)
        throw std::invalid_argument("design_nozzle: chamber pressure must exceed exit pressure");
    if (shape.inlet_diameter <= 0.0 || shape.convergent_half_angle <= 0.0 ||
        shape.divergent_half_angle <= 0.0)
        throw std::invalid_argument("design_nozzle: inlet diameter and half angles must be positive");

    NozzleDesign d;
    d.p_chamber = p_chamber;
    d.t_chamber = t_chamber;
    d.p_exit = p_exit;
    d.throat_area = throat_area;
    d.mach_exit = exit_mach(p_chamber / p_exit, gas);
    d.expansion_ratio = expansion_ratio(d.mach_exit, gas);
    d.exit_area = d.expansion_ratio * throat_area;
    d.t_exit = t_chamber / static_ratios(d.mach_exit, gas).t_ratio;
    d.mass_flow = choked_mass_flow(throat_area, p_chamber, t_chamber, gas);
    d.exit_velocity = d.mach_exit * std::sqrt(gas.gamma * gas.specific_gas_constant * d.t_exit);
    d.thrust_vacuum = d.mass_flow * d.exit_velocity + p_exit * d.exit_area;
    d.inlet_area = 0.25 * PI * shape.inlet_diameter * shape.inlet_diameter;

    NozzleGeometry g;
    g.inlet_diameter = shape.inlet_diameter;
    g.throat_diameter = std::sqrt(4.0 * throat_area / PI);
    g.exit_diameter = std::sqrt(4.0 * d.exit_area / PI);
    if (g.inlet_diameter <= g.throat_diameter)
        throw std::invalid_argument("design_nozzle: inlet diameter must exceed the throat diameter");
    g.convergent_half_angle = shape.convergent_half_angle;
    g.divergent_half_angle = shape.divergent_half_angle;
    g.convergent_length = (g.inlet_diameter - g.throat_diameter) /
                          (2.0 * std::tan(deg2rad(shape.convergent_half_angle)));
    g.divergent_length = (g.exit_diameter - g.throat_diameter) /
                         (2.0 * std::tan(deg2rad(shape.divergent_half_angle)));
    return {d, g};
}

/**
 * @brief Sample the conical contour as (axial station m, radius m) pairs.
 *
 * Uniform spacing within each cone, interval counts proportional to cone
 * length; the throat breakpoint is always a station.
 */
inline std::vector<std::array<double, 2>> cone_profile(const NozzleGeometry& geo, int stations = 200) {
    if (stations < 3) throw std::invalid_argument("cone_profile: need at least 3 stations");
    const double lc = geo.convergent_length;
    const double ld = geo.divergent_length;
    if (lc <= 0.0 || ld <= 0.0)
        throw std::invalid_argument("cone_profile: cone lengths must be positive");

    const int intervals = stations - 1;
    int nc = static_cast<int>(std::lround(intervals * lc / (lc + ld)));
    nc = std::max(1, std::min(intervals - 1, nc));
    const int nd = intervals - nc;

    std::vector<std::array<double, 2>> prof;
    prof.reserve(stations);
    const double r_in = 0.5 * geo.inlet_diameter;
    const double r_th = 0.5 * geo.throat_diameter;
    const double r_ex = 0.5 * geo.exit_diameter;
    for (int k = 0; k <= nc; ++k) {
        const double f = static_cast<double>(k) / nc;
        prof.push_back({f * lc, r_in + f * (r_th - r_in)});
    }
    for (int k = 1; k <= nd; ++k) {
        const double f = static_cast<double>(k) / nd;
        prof.push_back({lc + f * ld, r_th + f * (r_ex - r_th)});
    }
    return prof;
}

}  // namespace coldgas
