#pragma once

#include <array>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "coldgas/nozzle.hpp"

namespace coldgas {

/// Branch of the area-Mach relation.
enum class FlowBranch { Subsonic, Supersonic };

/**
 * @brief Invert the isentropic area ratio A/A* for the Mach number.
 *
 * Bisection on the requested branch; the returned root satisfies
 * |expansion_ratio(M) - a_ratio| < 1e-10. Rejects a_ratio < 1 (no
 * physical solution).
 */
inline double mach_from_area_ratio(double a_ratio, FlowBranch branch, const GasModel& gas = {}) {
    if (a_ratio < 1.0)
        throw std::domain_error("mach_from_area_ratio: area ratio below 1 has no solution");
    if (a_ratio == 1.0) return 1.0;

    double lo, hi;
    if (branch == FlowBranch::Subsonic) {
        lo = 1e-12;
        hi = 1.0;
    } else {
        lo = 1.0;
        hi = 2.0;
        while (expansion_ratio(hi, gas) < a_ratio) {
            hi *= 2.0;
            if (hi > 1e6) throw std::domain_error("mach_from_area_ratio: area ratio out of range");
        }
    }
    // The ratio decreases with M on the subsonic branch and increases on the
    // supersonic branch.
    const double sign = (branch == FlowBranch::Subsonic) ? -1.0 : 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sign * (expansion_ratio(mid, gas) - a_ratio) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Area distribution along the nozzle axis. x strictly increasing, exactly
/// one interior minimum (the throat).
struct AreaProfile {
    std::vector<double> x;     // m
    std::vector<double> area;  // m^2
    std::size_t throat_index = 0;

    void validate() const {
        if (x.size() != area.size() || x.size() < 3)
            throw std::invalid_argument("AreaProfile: need at least 3 matched stations");
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (area[i] <= 0.0) throw std::invalid_argument("AreaProfile: areas must be positive");
            if (i > 0 && x[i] <= x[i - 1])
                throw std::invalid_argument("AreaProfile: stations must be strictly increasing in x");
        }
        if (throat_index == 0 || throat_index + 1 >= x.size())
            throw std::invalid_argument("AreaProfile: throat must be interior (no converging-diverging shape)");
        for (std::size_t i = 0; i < throat_index; ++i)
            if (area[i + 1] >= area[i])
                throw std::invalid_argument("AreaProfile: area must decrease monotonically up to the throat");
        for (std::size_t i = throat_index; i + 1 < x.size(); ++i)
            if (area[i + 1] <= area[i])
                throw std::invalid_argument("AreaProfile: area must increase monotonically after the throat");
    }

    /// Build from (x, radius) pairs; the throat is the global area minimum.
    static AreaProfile from_radius_profile(const std::vector<std::array<double, 2>>& rs) {
        AreaProfile p;
        p.x.reserve(rs.size());
        p.area.reserve(rs.size());
        for (const auto& s : rs) {
            p.x.push_back(s[0]);
            p.area.push_back(PI * s[1] * s[1]);
        }
        std::size_t imin = 0;
        for (std::size_t i = 1; i < p.area.size(); ++i)
            if (p.area[i] < p.area[imin]) imin = i;
        p.throat_index = imin;
        p.validate();
        return p;
    }

    static AreaProfile from_geometry(const NozzleGeometry& geo, int stations = 200) {
        return from_radius_profile(cone_profile(geo, stations));
    }
};

/// Local flow state at one axial station of the choked solution.
struct FlowStation {
    double x = 0.0;            // m
    double area = 0.0;         // m^2
    double mach = 0.0;         // -
    double pressure = 0.0;     // Pa
    double temperature = 0.0;  // K
    double density = 0.0;      // kg/m^3
    double velocity = 0.0;     // m/s
};

/**
 * @brief Quasi-1D isentropic solution of the choked supersonic nozzle flow.
 *
 * Subsonic branch upstream of the throat, M = 1 at the throat, supersonic
 * downstream. Statics follow from the stagnation state (p0, t0); density
 * from the ideal-gas law; the mass flow rho*v*A is identical at every
 * station by construction.
 */
inline std::vector<FlowStation> solve_profile(const AreaProfile& profile, double p0, double t0,
                                              const GasModel& gas = {}) {
    profile.validate();
    if (p0 <= 0.0 || t0 <= 0.0)
        throw std::invalid_argument("solve_profile: stagnation state must be positive");

    const double a_star = profile.area[profile.throat_index];
    std::vector<FlowStation> out;
    out.reserve(profile.x.size());
    for (std::size_t i = 0; i < profile.x.size(); ++i) {
        FlowStation st;
        st.x = profile.x[i];
        st.area = profile.area[i];
        if (i == profile.throat_index) {
            st.mach = 1.0;
        } else {
            const FlowBranch branch =
                (i < profile.throat_index) ? FlowBranch::Subsonic : FlowBranch::Supersonic;
            st.mach = mach_from_area_ratio(st.area / a_star, branch, gas);
        }
        const StaticRatios r = static_ratios(st.mach, gas);
        st.temperature = t0 / r.t_ratio;
        st.pressure = p0 / r.p_ratio;
        st.density = st.pressure / (gas.specific_gas_constant * st.temperature);
        st.velocity = st.mach * std::sqrt(gas.gamma * gas.specific_gas_constant * st.temperature);
        out.push_back(st);
    }
    return out;
}

/// Station CSV, one row per station.
inline void write_flow_csv(std::ostream& os, const std::vector<FlowStation>& stations) {
    os << "x_m,area_m2,mach,pressure_pa,temperature_k,density_kgm3,velocity_ms\n";
    char line[256];
    for (const auto& s : stations) {
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      s.x, s.area, s.mach, s.pressure, s.temperature, s.density, s.velocity);
        os << line;
    }
}

/// Plain-text contour: one "x_m radius_m" pair per line, '#' comments allowed.
inline void write_radius_profile(std::ostream& os, const std::vector<std::array<double, 2>>& prof) {
    os << "# x_m radius_m\n";
    char line[128];
    for (const auto& s : prof) {
        std::snprintf(line, sizeof(line), "%.17g %.17g\n", s[0], s[1]);
        os << line;
    }
}

inline std::vector<std::array<double, 2>> read_radius_profile(std::istream& is) {
    std::vector<std::array<double, 2>> prof;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        double x = 0.0, r = 0.0;
        if (!(ss >> x >> r))
            throw std::runtime_error("radius profile: malformed line " + std::to_string(lineno));
        prof.push_back({x, r});
    }
    if (prof.size() < 3)
        throw std::runtime_error("radius profile: need at least 3 stations");
    return prof;
}

}  // namespace coldgas
