#ifndef COVERING_CHART_HPP_
#define COVERING_CHART_HPP_

#include <array>
#include <stdexcept>
#include <string>

namespace covering {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class Chart {
    polar2,      // (r, phi)        r > 0, 0 <= phi < 2pi
    sphere2,     // (theta, phi)    0 < theta < pi, 0 <= phi < 2pi
    parabolic2,  // (u, v)          u > 0, v < 0
    spherical3,  // (r, theta, phi) r > 0, 0 < theta < pi, 0 <= phi < 2pi
    hopf3,       // (eta, xi1, xi2) 0 < eta < pi/2, 0 <= xi_i < 2pi
    cartesian,   // (x, y[, z])     unrestricted
};

std::string chart_name(Chart c);
int chart_dim(Chart c);

// A point in a named chart. Construction validates the chart's open domain:
// coordinate singularities (r=0, theta in {0,pi}, eta in {0,pi/2}) and
// out-of-range angles are errors, never silently wrapped.
struct ChartPoint {
    Chart chart;
    std::array<double, 3> x{0.0, 0.0, 0.0};

    ChartPoint(Chart c, double a, double b);
    ChartPoint(Chart c, double a, double b, double cc);

    int dim() const { return chart_dim(chart); }
    double operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
};

// Domain membership without constructing (used by samplers to skip bad cells).
bool in_domain(Chart c, const std::array<double, 3>& x);

inline ChartPoint polar(double r, double phi) { return {Chart::polar2, r, phi}; }
inline ChartPoint sphere(double theta, double phi) { return {Chart::sphere2, theta, phi}; }
inline ChartPoint spherical(double r, double theta, double phi) {
    return {Chart::spherical3, r, theta, phi};
}
inline ChartPoint hopf(double eta, double xi1, double xi2) {
    return {Chart::hopf3, eta, xi1, xi2};
}

}  // namespace covering

#endif  // COVERING_CHART_HPP_
