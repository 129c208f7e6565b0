#include "covering/chart.hpp"

namespace covering {

std::string chart_name(Chart c) {
    switch (c) {
        case Chart::polar2: return "polar2";
        case Chart::sphere2: return "sphere2";
        case Chart::parabolic2: return "parabolic2";
        case Chart::spherical3: return "spherical3";
        case Chart::hopf3: return "hopf3";
        case Chart::cartesian: return "cartesian";
    }
    return "?";
}

int chart_dim(Chart c) {
    switch (c) {
        case Chart::polar2:
        case Chart::sphere2:
        case Chart::parabolic2: return 2;
        case Chart::spherical3:
        case Chart::hopf3:
        case Chart::cartesian: return 3;
    }
    return 0;
}

bool in_domain(Chart c, const std::array<double, 3>& x) {
    auto angle_ok = [](double a) { return a >= 0.0 && a < kTwoPi; };
    switch (c) {
        case Chart::polar2:
            return x[0] > 0.0 && angle_ok(x[1]);
        case Chart::sphere2:
            return x[0] > 0.0 && x[0] < kPi && angle_ok(x[1]);
        case Chart::parabolic2:
            return x[0] > 0.0 && x[1] < 0.0;
        case Chart::spherical3:
            return x[0] > 0.0 && x[1] > 0.0 && x[1] < kPi && angle_ok(x[2]);
        case Chart::hopf3:
            return x[0] > 0.0 && x[0] < kPi / 2.0 && angle_ok(x[1]) && angle_ok(x[2]);
        case Chart::cartesian:
            return true;
    }
    return false;
}

namespace {
void check(Chart c, const std::array<double, 3>& x) {
    if (!in_domain(c, x))
        throw std::domain_error("ChartPoint: coordinates outside the open domain of chart " +
                                chart_name(c));
}
}  // namespace

ChartPoint::ChartPoint(Chart c, double a, double b) : chart(c), x{a, b, 0.0} {
    if (chart_dim(c) != 2)
        throw std::invalid_argument("ChartPoint: chart " + chart_name(c) + " needs 3 coordinates");
    check(c, x);
}

ChartPoint::ChartPoint(Chart c, double a, double b, double cc) : chart(c), x{a, b, cc} {
    if (chart_dim(c) != 3)
        throw std::invalid_argument("ChartPoint: chart " + chart_name(c) + " needs 2 coordinates");
    check(c, x);
}

}  // namespace covering
