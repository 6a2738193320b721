#pragma once

#include "coldgas/vec3.hpp"

namespace coldgas {

/// Cartesian trajectory point in an Earth-centered inertial frame.
struct StateVector {
    double epoch = 0.0;  // seconds since simulation start
    Vec3 position;       // km
    Vec3 velocity;       // km/s
};

/// Classical orbital elements. Angles in degrees at the API boundary.
struct KeplerianElements {
    double semi_major_axis = 0.0;  // a [km]
    double eccentricity = 0.0;     // e [-]
    double inclination = 0.0;      // i [deg]
    double raan = 0.0;             // right ascension of ascending node [deg]
    double arg_perigee = 0.0;      // argument of perigee [deg]
    double true_anomaly = 0.0;     // nu [deg]
};

}  // namespace coldgas
