#pragma once

#include <cmath>

namespace coldgas {

inline constexpr double PI = 3.14159265358979323846;

inline constexpr double G0 = 9.80665;                // standard gravity, m/s^2
inline constexpr double EARTH_OMEGA = 7.2921159e-5;  // Earth rotation rate, rad/s

/// Gravitational parameter and mean radius of the central body.
/// Defaults are the Earth values used throughout the toolkit.
struct BodyConstants {
    double mu = 398600.0;     // km^3/s^2
    double radius = 6378.14;  // km
};

inline constexpr double deg2rad(double d) { return d * PI / 180.0; }
inline constexpr double rad2deg(double r) { return r * 180.0 / PI; }

/// Normalize an angle in degrees to [0, 360).
inline double wrap_deg(double d) {
    double w = std::fmod(d, 360.0);
    if (w < 0.0) w += 360.0;
    return w;
}

/// Normalize an angle in radians to [0, 2*pi).
inline double wrap_2pi(double r) {
    double w = std::fmod(r, 2.0 * PI);
    if (w < 0.0) w += 2.0 * PI;
    return w;
}

}  // namespace coldgas
