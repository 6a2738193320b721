#pragma once

#include <cmath>
#include <stdexcept>

#include "coldgas/constants.hpp"

namespace coldgas {

/// Thick-walled cylindrical pressure vessel parameters.
struct TankSpec {
    double p_internal = 0.0;        // Pa
    double p_external = 0.0;        // Pa
    double r_inner = 0.0;           // m
    double r_outer = 0.0;           // m
    double length = 0.0;            // m (cylindrical section)
    double allowable_stress = 0.0;  // Pa
    double safety_factor = 1.0;     // -
};

/// Lame stress field of a pressurized thick-walled cylinder:
/// sigma_r(r) = a - b/r^2, sigma_theta(r) = a + b/r^2 (tension positive).
struct LameField {
    double const_a = 0.0;  // Pa
    double const_b = 0.0;  // Pa*m^2
    double r_inner = 0.0;  // m
    double r_outer = 0.0;  // m

    double radial_stress(double r) const { return const_a - const_b / (r * r); }
    double hoop_stress(double r) const { return const_a + const_b / (r * r); }
    /// Closed-cylinder axial stress (p_i*r_i^2 - p_o*r_e^2)/(r_e^2 - r_i^2);
    /// identical to const_a.
    double axial_stress() const { return const_a; }
};

/**
 * @brief Solve the Lame boundary-value problem for a TankSpec.
 *
 * Boundary conditions sigma_r(r_inner) = -p_internal and
 * sigma_r(r_outer) = -p_external hold exactly.
 */
inline LameField lame_field(const TankSpec& spec) {
    if (spec.r_inner <= 0.0 || spec.r_outer <= spec.r_inner)
        throw std::invalid_argument("lame_field: requires r_outer > r_inner > 0");
    if (spec.p_internal < 0.0 || spec.p_external < 0.0)
        throw std::invalid_argument("lame_field: pressures must be non-negative");

    const double ri2 = spec.r_inner * spec.r_inner;
    const double re2 = spec.r_outer * spec.r_outer;
    LameField f;
    f.r_inner = spec.r_inner;
    f.r_outer = spec.r_outer;
    f.const_a = (spec.p_internal * ri2 - spec.p_external * re2) / (re2 - ri2);
    f.const_b = (spec.p_internal - spec.p_external) * ri2 * re2 / (re2 - ri2);
    return f;
}

/**
 * @brief Smallest wall thickness with peak hoop stress at the allowable limit.
 *
 * Sizes against sigma_theta(r_inner) <= allowable_stress / safety_factor for
 * an internally pressurized cylinder (external pressure zero):
 * r_e^2 = r_i^2 * (f' + p)/(f' - p) with f' = allowable/SF.
 *
 * Throws std::domain_error ("unsizable") when f' <= p: no finite thickness
 * can meet the limit.
 */
inline double size_thickness(double p_internal, double r_inner, double allowable_stress,
                             double safety_factor) {
    if (p_internal <= 0.0 || r_inner <= 0.0)
        throw std::invalid_argument("size_thickness: pressure and inner radius must be positive");
    if (allowable_stress <= 0.0 || safety_factor < 1.0)
        throw std::invalid_argument("size_thickness: requires allowable_stress > 0 and safety_factor >= 1");

    const double f_lim = allowable_stress / safety_factor;
    if (f_lim <= p_internal)
        throw std::domain_error("size_thickness: unsizable, allowable/SF must exceed internal pressure");

    const double r_outer = r_inner * std::sqrt((f_lim + p_internal) / (f_lim - p_internal));
    return r_outer - r_inner;
}

/// Internal volume of the cylindrical section, pi*r^2*L [m^3].
inline double cylinder_volume(double r_inner, double length) {
    if (r_inner <= 0.0 || length <= 0.0)
        throw std::invalid_argument("cylinder_volume: inputs must be positive");
    return PI * r_inner * r_inner * length;
}

/// Ideal-gas mass of the stored propellant, m = p*V/(R_s*T) [kg].
inline double stored_gas_mass(double pressure, double volume, double temperature,
                              double specific_gas_constant) {
    if (pressure < 0.0)
        throw std::invalid_argument("stored_gas_mass: pressure must be non-negative");
    if (volume <= 0.0 || temperature <= 0.0 || specific_gas_constant <= 0.0)
        throw std::invalid_argument("stored_gas_mass: volume, temperature and R_s must be positive");
    return pressure * volume / (specific_gas_constant * temperature);
}

}  // namespace coldgas
