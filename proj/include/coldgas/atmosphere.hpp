#pragma once

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace coldgas {

/// One layer of a piecewise-exponential density model.
struct AtmosphereLayer {
    double base_altitude = 0.0;  // km
    double base_density = 0.0;   // kg/m^3
    double scale_height = 1.0;   // km
};

/**
 * @brief Piecewise-exponential atmosphere, rho(h) = rho_b * exp(-(h - h_b)/H).
 *
 * The default table spans 0-1000 km with the widely used exponential-model
 * layer values (a copy ships in data/atmosphere_exponential.csv). Above the
 * last base the top layer extrapolates.
 */
class AtmosphereModel {
public:
    explicit AtmosphereModel(std::vector<AtmosphereLayer> layers) : layers_(std::move(layers)) {
        if (layers_.empty()) throw std::invalid_argument("AtmosphereModel: no layers");
        for (std::size_t i = 0; i < layers_.size(); ++i) {
            if (layers_[i].base_density <= 0.0 || layers_[i].scale_height <= 0.0)
                throw std::invalid_argument("AtmosphereModel: densities and scale heights must be positive");
            if (i > 0 && layers_[i].base_altitude <= layers_[i - 1].base_altitude)
                throw std::invalid_argument("AtmosphereModel: layer bases must increase");
        }
    }

    /// Density at geometric altitude [km] above the surface, in kg/m^3.
    double density(double altitude_km) const {
        const AtmosphereLayer& l = layer_for(altitude_km);
        return l.base_density * std::exp(-(altitude_km - l.base_altitude) / l.scale_height);
    }

    const std::vector<AtmosphereLayer>& layers() const { return layers_; }

    static AtmosphereModel exponential_default();

    /// CSV with header base_altitude_km,base_density_kgm3,scale_height_km.
    static AtmosphereModel from_csv(std::istream& is) {
        std::vector<AtmosphereLayer> layers;
        std::string line;
        bool header = true;
        while (std::getline(is, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (header) {
                header = false;
                continue;
            }
            std::istringstream ss(line);
            AtmosphereLayer l;
            char c1 = 0, c2 = 0;
            if (!(ss >> l.base_altitude >> c1 >> l.base_density >> c2 >> l.scale_height) ||
                c1 != ',' || c2 != ',')
                throw std::runtime_error("atmosphere csv: malformed line: " + line);
            layers.push_back(l);
        }
        return AtmosphereModel(std::move(layers));
    }

private:
    const AtmosphereLayer& layer_for(double altitude_km) const {
        auto it = std::upper_bound(layers_.begin(), layers_.end(), altitude_km,
                                   [](double h, const AtmosphereLayer& l) { return h < l.base_altitude; });
        if (it == layers_.begin()) return layers_.front();
        return *(it - 1);
    }

    std::vector<AtmosphereLayer> layers_;
};

inline AtmosphereModel AtmosphereModel::exponential_default() {
    // Standard exponential-model table (base altitude km, density kg/m^3,
    // scale height km), moderate solar activity.
    return AtmosphereModel({
        {0.0, 1.225, 7.249},       {25.0, 3.899e-2, 6.349},  {30.0, 1.774e-2, 6.682},
        {40.0, 3.972e-3, 7.554},   {50.0, 1.057e-3, 8.382},  {60.0, 3.206e-4, 7.714},
        {70.0, 8.770e-5, 6.549},   {80.0, 1.905e-5, 5.799},  {90.0, 3.396e-6, 5.382},
        {100.0, 5.297e-7, 5.877},  {110.0, 9.661e-8, 7.263}, {120.0, 2.438e-8, 9.473},
        {130.0, 8.484e-9, 12.636}, {140.0, 3.845e-9, 16.149}, {150.0, 2.070e-9, 22.523},
        {180.0, 5.464e-10, 29.740}, {200.0, 2.789e-10, 37.105}, {250.0, 7.248e-11, 45.546},
        {300.0, 2.418e-11, 53.628}, {350.0, 9.518e-12, 53.298}, {400.0, 3.725e-12, 58.515},
        {450.0, 1.585e-12, 60.828}, {500.0, 6.967e-13, 63.822}, {600.0, 1.454e-13, 71.835},
        {700.0, 3.614e-14, 88.667}, {800.0, 1.170e-14, 124.64}, {900.0, 5.245e-15, 181.05},
        {1000.0, 3.019e-15, 268.00},
    });
}

}  // namespace coldgas
