#ifndef COVERING_SECTOR_HPP_
#define COVERING_SECTOR_HPP_

#include <cmath>
#include <stdexcept>
#include <utility>

#include "covering/chart.hpp"

namespace covering {

// Index of the angular band [m 2pi/k, (m+1) 2pi/k) of the covering.
// For non-integer k the last band maps onto only a portion of the base
// plane; it is flagged incomplete. For k < 1 the whole domain is a single
// incomplete sector.
struct SectorIndex {
    int m = 0;
    bool incomplete = false;
};

enum class PlotMode { nonconformal, conformal };

// Phi = k phi, the covering angle in [0, 2 k pi).
inline double covering_angle(double phi, double k) {
    if (phi < 0.0 || phi >= kTwoPi)
        throw std::domain_error("covering_angle: phi outside [0, 2pi)");
    return k * phi;
}

inline bool is_integer_value(double k, double tol = 1e-12) {
    return std::abs(k - std::round(k)) < tol;
}

inline SectorIndex sector_of(double phi, double k) {
    if (phi < 0.0 || phi >= kTwoPi)
        throw std::domain_error("sector_of: phi outside [0, 2pi)");
    if (k <= 0.0) throw std::invalid_argument("sector_of: k must be positive");
    SectorIndex s;
    if (k < 1.0 && !is_integer_value(k)) {
        s.m = 0;
        s.incomplete = true;
        return s;
    }
    s.m = static_cast<int>(std::floor(phi * k / kTwoPi));
    const int complete = static_cast<int>(std::floor(k));
    if (s.m > complete) s.m = complete;  // guard against roundoff at the edge
    s.incomplete = !is_integer_value(k) && s.m == complete;
    return s;
}

// Projection of a polar2 point to the plot plane. The nonconformal mode is
// the naive (r cos phi, r sin phi); the conformal mode uses the covering
// angle Phi = k phi and is an isometry on each complete sector.
inline std::pair<double, double> plot_plane(const ChartPoint& p, double k, PlotMode mode) {
    if (p.chart != Chart::polar2)
        throw std::invalid_argument("plot_plane: expects a polar2 point");
    const double r = p[0];
    const double ang = mode == PlotMode::conformal ? k * p[1] : p[1];
    return {r * std::cos(ang), r * std::sin(ang)};
}

// Raw-coordinate variant used by web tracing (allows the seam phi = 2pi).
inline std::pair<double, double> plot_plane_raw(double r, double phi, double k, PlotMode mode) {
    const double ang = mode == PlotMode::conformal ? k * phi : phi;
    return {r * std::cos(ang), r * std::sin(ang)};
}

}  // namespace covering

#endif  // COVERING_SECTOR_HPP_
