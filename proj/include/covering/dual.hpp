#ifndef COVERING_DUAL_HPP_
#define COVERING_DUAL_HPP_

#include <cmath>

namespace covering {

// Forward-mode dual number: value + one derivative slot. Used for the
// phase-space gradients behind Poisson brackets and Hamilton's equations.
struct Dual {
    double v = 0.0;  // value
    double d = 0.0;  // derivative

    Dual() = default;
    Dual(double value) : v(value), d(0.0) {}
    Dual(double value, double deriv) : v(value), d(deriv) {}
};

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator-(Dual a) { return {-a.v, -a.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Dual operator/(Dual a, Dual b) {
    return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}

inline Dual sin(Dual a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
inline Dual cos(Dual a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }
inline Dual sqrt(Dual a) {
    const double s = std::sqrt(a.v);
    return {s, a.d / (2.0 * s)};
}
inline Dual exp(Dual a) {
    const double e = std::exp(a.v);
    return {e, e * a.d};
}

}  // namespace covering

#endif  // COVERING_DUAL_HPP_
