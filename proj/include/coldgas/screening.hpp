#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "coldgas/orbit.hpp"
#include "coldgas/propagator.hpp"
#include "coldgas/tle.hpp"

namespace coldgas {

/// A screened close approach between the trajectory and a catalog object.
struct ConjunctionEvent {
    double time = 0.0;            // s on the trajectory timeline
    double miss_distance = 0.0;   // km
    int catalog_id = 0;           // NORAD id of the catalog object
    double relative_speed = 0.0;  // km/s
};

struct ScreeningReport {
    std::vector<ConjunctionEvent> events;  // sorted by (time, catalog_id)
    std::vector<std::string> warnings;     // skipped records
    // Smallest separation seen on the coarse grid over all objects,
    // independent of the threshold.
    double global_min_km = std::numeric_limits<double>::infinity();
    double global_min_time = 0.0;
    int global_min_id = 0;
};

namespace screening_detail {

/// Cubic-Hermite position/velocity interpolant over the trajectory samples.
class TrajectoryInterpolator {
public:
    explicit TrajectoryInterpolator(const std::vector<TrajectorySample>& samples)
        : samples_(samples) {
        if (samples.size() < 2)
            throw std::invalid_argument("screening: trajectory needs at least 2 samples");
        for (std::size_t i = 1; i < samples.size(); ++i)
            if (samples[i].state.epoch <= samples[i - 1].state.epoch)
                throw std::invalid_argument("screening: trajectory epochs must increase");
    }

    double t_begin() const { return samples_.front().state.epoch; }
    double t_end() const { return samples_.back().state.epoch; }

    void eval(double t, Vec3& pos, Vec3& vel) const {
        const auto& ss = samples_;
        if (t <= t_begin()) {
            pos = ss.front().state.position;
            vel = ss.front().state.velocity;
            return;
        }
        if (t >= t_end()) {
            pos = ss.back().state.position;
            vel = ss.back().state.velocity;
            return;
        }
        std::size_t hi = 1;
        {
            std::size_t lo = 0, n = ss.size();
            // binary search for the segment containing t
            std::size_t a = 0, b = n - 1;
            while (b - a > 1) {
                const std::size_t mid = (a + b) / 2;
                if (ss[mid].state.epoch <= t) a = mid; else b = mid;
            }
            lo = a;
            hi = b;
            const StateVector& s0 = ss[lo].state;
            const StateVector& s1 = ss[hi].state;
            const double dt = s1.epoch - s0.epoch;
            const double s = (t - s0.epoch) / dt;
            const double s2 = s * s, s3 = s2 * s;
            const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
            const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
            pos = s0.position * h00 + s0.velocity * (h10 * dt) + s1.position * h01 +
                  s1.velocity * (h11 * dt);
            const double g00 = (6 * s2 - 6 * s) / dt, g10 = 3 * s2 - 4 * s + 1;
            const double g01 = (-6 * s2 + 6 * s) / dt, g11 = 3 * s2 - 2 * s;
            vel = s0.position * g00 + s0.velocity * g10 + s1.position * g01 + s1.velocity * g11;
        }
    }
};

/// Closed-form Keplerian motion of one catalog object from its epoch elements.
struct CatalogObject {
    int norad_id = 0;
    KeplerianElements elements;  // at t = 0
    double mean_motion_rad = 0.0;
    double mean_anomaly0 = 0.0;

    static CatalogObject from_record(const TleRecord& rec, const BodyConstants& body) {
        CatalogObject o;
        o.norad_id = rec.norad_id;
        o.elements = tle_to_elements(rec, body);
        const double a = o.elements.semi_major_axis;
        o.mean_motion_rad = std::sqrt(body.mu / (a * a * a));
        const double nu = deg2rad(o.elements.true_anomaly);
        const double e_anom = eccentric_from_true(nu, o.elements.eccentricity);
        o.mean_anomaly0 = e_anom - o.elements.eccentricity * std::sin(e_anom);
        return o;
    }

    void eval(double t, const BodyConstants& body, Vec3& pos, Vec3& vel) const {
        const double m = mean_anomaly0 + mean_motion_rad * t;
        const double e_anom = solve_kepler(m, elements.eccentricity);
        KeplerianElements el = elements;
        el.true_anomaly = wrap_deg(rad2deg(true_from_eccentric(e_anom, elements.eccentricity)));
        const StateVector sv = elements_to_state(el, body);
        pos = sv.position;
        vel = sv.velocity;
    }
};

}  // namespace screening_detail

/**
 * @brief Screen a trajectory against a TLE catalog for close approaches.
 *
 * Every catalog object moves on the two-body orbit of its element set, with
 * the element epoch taken at the trajectory start (t = 0). The pairwise
 * distance is sampled on the trajectory time grid (or a caller-supplied
 * coarse step), local minima below the threshold are refined by
 * golden-section search to 1e-3 s, and events are reported sorted by
 * (time, catalog id). Records that cannot be propagated are skipped with a
 * warning.
 */
inline ScreeningReport screen_conjunctions(const std::vector<TrajectorySample>& trajectory,
                                           const std::vector<TleRecord>& catalog,
                                           double threshold_km, double coarse_dt = 0.0,
                                           const BodyConstants& body = {}) {
    if (threshold_km <= 0.0)
        throw std::invalid_argument("screen_conjunctions: threshold must be positive");

    ScreeningReport report;
    const screening_detail::TrajectoryInterpolator interp(trajectory);

    std::vector<double> times;
    if (coarse_dt > 0.0) {
        for (double t = interp.t_begin(); t < interp.t_end(); t += coarse_dt) times.push_back(t);
        times.push_back(interp.t_end());
    } else {
        times.reserve(trajectory.size());
        for (const auto& s : trajectory) times.push_back(s.state.epoch);
    }
    if (times.size() < 2)
        throw std::invalid_argument("screen_conjunctions: trajectory window too short");

    for (const TleRecord& rec : catalog) {
        screening_detail::CatalogObject obj;
        try {
            obj = screening_detail::CatalogObject::from_record(rec, body);
        } catch (const std::exception& e) {
            report.warnings.push_back("skipping catalog object " + std::to_string(rec.norad_id) +
                                      ": " + e.what());
            continue;
        }

        const auto distance_at = [&](double t) {
            Vec3 pt, vt, po, vo;
            interp.eval(t, pt, vt);
            obj.eval(t, body, po, vo);
            return (pt - po).norm();
        };

        std::vector<double> d(times.size());
        for (std::size_t k = 0; k < times.size(); ++k) {
            d[k] = distance_at(times[k]);
            if (d[k] < report.global_min_km) {
                report.global_min_km = d[k];
                report.global_min_time = times[k];
                report.global_min_id = obj.norad_id;
            }
        }

        for (std::size_t k = 0; k < times.size(); ++k) {
            const bool left_ok = (k == 0) || d[k] <= d[k - 1];
            const bool right_ok = (k + 1 == times.size()) || d[k] <= d[k + 1];
            if (!(left_ok && right_ok) || d[k] >= threshold_km) continue;

            const std::size_t lo_i = (k >= 2) ? k - 2 : 0;
            const std::size_t hi_i = std::min(k + 2, times.size() - 1);
            double lo = times[lo_i], hi = times[hi_i];

            // Golden-section refinement of the bracketed minimum.
            constexpr double invphi = 0.6180339887498949;
            double x1 = hi - invphi * (hi - lo);
            double x2 = lo + invphi * (hi - lo);
            double f1 = distance_at(x1), f2 = distance_at(x2);
            while (hi - lo > 1e-3) {
                if (f1 <= f2) {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - invphi * (hi - lo);
                    f1 = distance_at(x1);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + invphi * (hi - lo);
                    f2 = distance_at(x2);
                }
            }
            double t_star = 0.5 * (lo + hi);
            double miss = distance_at(t_star);
            // The refined minimum must not exceed the seeding coarse value.
            if (d[k] < miss) {
                t_star = times[k];
                miss = d[k];
            }
            if (miss >= threshold_km) continue;

            Vec3 pt, vt, po, vo;
            interp.eval(t_star, pt, vt);
            obj.eval(t_star, body, po, vo);
            ConjunctionEvent ev;
            ev.time = t_star;
            ev.miss_distance = miss;
            ev.catalog_id = obj.norad_id;
            ev.relative_speed = (vt - vo).norm();

            // Merge duplicates from adjacent grid minima of the same object.
            bool merged = false;
            for (auto& existing : report.events) {
                if (existing.catalog_id == ev.catalog_id && std::abs(existing.time - ev.time) <= 2e-3) {
                    if (ev.miss_distance < existing.miss_distance) existing = ev;
                    merged = true;
                    break;
                }
            }
            if (!merged) report.events.push_back(ev);
        }
    }

    std::sort(report.events.begin(), report.events.end(),
              [](const ConjunctionEvent& a, const ConjunctionEvent& b) {
                  if (a.time != b.time) return a.time < b.time;
                  return a.catalog_id < b.catalog_id;
              });
    return report;
}

/// Conjunction CSV plus a trailing global-minimum summary line.
inline void write_conjunction_csv(std::ostream& os, const ScreeningReport& report) {
    os << "t_s,catalog_id,miss_km,rel_speed_kms\n";
    char line[256];
    for (const auto& ev : report.events) {
        std::snprintf(line, sizeof(line), "%.17g,%d,%.17g,%.17g\n", ev.time, ev.catalog_id,
                      ev.miss_distance, ev.relative_speed);
        os << line;
    }
    if (std::isfinite(report.global_min_km)) {
        std::snprintf(line, sizeof(line), "# global_minimum_km=%.17g t_s=%.17g catalog_id=%d\n",
                      report.global_min_km, report.global_min_time, report.global_min_id);
        os << line;
    } else {
        os << "# global_minimum_km=none\n";
    }
}

}  // namespace coldgas
