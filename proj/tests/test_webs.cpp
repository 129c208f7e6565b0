#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "covering/webs.hpp"
#include "test_util.hpp"

using namespace covering;

namespace {

// Elliptic tensor X_A.X_B for rotations about the two foci (1.5, 0) and
// (-0.5, 0); carries frequency-k (b3) and frequency-2k (b6) terms, so its
// eigenvalue webs close only at integer k.
KillingTensorSpec elliptic_spec(double k) {
    KillingTensorSpec s{};
    s.k = k;
    s.b = {1.0, 0.0, -1.0, -0.375, 0.0, -0.375};
    return s;
}

double field_at_plot_point(const KillingTensorSpec& K, const MetricModel& m, int which,
                           double x, double y) {
    const double r = std::hypot(x, y);
    double phi = std::atan2(y, x);
    if (phi < 0.0) phi += kTwoPi;
    const EigenData e =
        eigen_decompose(killing_tensor_raw(K, r, phi), m.components_raw({r, phi, 0.0}));
    return which == 1 ? e.rho1 : e.rho2;
}

}  // namespace

TEST_CASE("eigen_of closed forms") {
    // K = g^{-1} is the identity endomorphism: degenerate pair (1,1)
    {
        KillingTensorSpec s{};
        s.k = 2.0;
        s.b[3] = 1.0;
        const auto e = eigen_of(s, MetricModel::Plane2(2.0), polar(1.3, 0.7));
        CHECK(e.degenerate);
        CHECK(e.rho1 == doctest::Approx(1.0));
        CHECK(e.rho2 == doctest::Approx(1.0));
    }
    // b1 alone at k=1 is the squared rotation generator: endomorphism
    // diag(0, r^2) in the (r,phi) frame
    {
        KillingTensorSpec s{};
        s.k = 1.0;
        s.b[0] = 1.0;
        const auto e = eigen_of(s, MetricModel::Plane2(1.0), polar(2.0, 1.1));
        CHECK_FALSE(e.degenerate);
        CHECK(e.rho1 == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(e.rho2 == doctest::Approx(4.0));
    }
}

TEST_CASE("parabolic tensor eigenvalues are (v, u)") {
    std::mt19937 rng(5);
    for (double k : {0.5, 1.0, 2.0, 3.0}) {
        const auto m = MetricModel::Plane2(k);
        const auto K = parabolic_tensor(k);
        for (int t = 0; t < 200; ++t) {
            const auto p =
                polar(testutil::uniform(rng, 0.2, 3.0), testutil::uniform(rng, 0.0, kTwoPi));
            // skip the chart boundary where u or v degenerates to 0
            if (std::abs(std::cos(k * p[1])) < 1e-3) continue;
            const auto [u, v] = parabolic_from_polar(p, k);
            const auto e = eigen_of(K, m, p);
            CHECK(std::abs(e.rho1 - v) < 1e-10);
            CHECK(std::abs(e.rho2 - u) < 1e-10);
        }
    }
}

TEST_CASE("eigenvectors are g-orthogonal") {
    std::mt19937 rng(11);
    int checked = 0;
    while (checked < 200) {
        KillingTensorSpec s{};
        s.k = testutil::uniform(rng, 0.3, 3.0);
        for (int i = 0; i < 6; ++i) s.b[i] = testutil::uniform(rng, -2.0, 2.0);
        const auto m = MetricModel::Plane2(s.k);
        const auto p =
            polar(testutil::uniform(rng, 0.2, 3.0), testutil::uniform(rng, 0.0, kTwoPi));
        const auto e = eigen_of(s, m, p);
        if (e.degenerate) continue;
        const Eigen::Matrix2d g = m.components(p);
        CHECK(std::abs(e.v1.dot(g * e.v2)) < 1e-8);
        ++checked;
    }
}

TEST_CASE("parabolic chart examples") {
    {
        const auto [u, v] = parabolic_from_polar(polar(1.0, kPi / 6.0), 1.0);
        CHECK(u == doctest::Approx(0.75));
        CHECK(v == doctest::Approx(-0.25));
    }
    {
        const auto [u, v] = parabolic_from_polar(polar(2.0, kPi / 2.0), 1.0);
        CHECK(u == doctest::Approx(2.0));
        CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
    }
    {
        const auto [u, v] = parabolic_from_polar(polar(16.0, kPi / 12.0), 2.0);
        CHECK(u == doctest::Approx(3.0));
        CHECK(v == doctest::Approx(-1.0));
    }
    {
        const auto p = polar_from_parabolic(3.0, -1.0, 2.0);
        CHECK(p[0] == doctest::Approx(16.0));
        CHECK(p[1] == doctest::Approx(kPi / 12.0));
    }
    {
        const auto p = polar_from_parabolic(1.0, -1.0, 1.0);
        CHECK(p[0] == doctest::Approx(2.0));
        CHECK(p[1] == doctest::Approx(0.0).epsilon(1e-12));
    }
    {
        const auto p = polar_from_parabolic(0.75, -0.25, 1.0);
        CHECK(p[0] == doctest::Approx(1.0));
        CHECK(p[1] == doctest::Approx(kPi / 6.0));
    }
    CHECK_THROWS_AS(polar_from_parabolic(-1.0, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(polar_from_parabolic(1.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(parabolic_metric(0.0, -1.0, 1.0), std::domain_error);
}

TEST_CASE("parabolic roundtrips") {
    std::mt19937 rng(17);
    for (int t = 0; t < 200; ++t) {
        const double k = testutil::uniform(rng, 0.3, 3.0);
        // (u,v) -> polar -> (u,v); keep u+v > 0 so the point lies in the
        // principal petal for every k
        const double u = testutil::uniform(rng, 0.3, 3.0);
        const double v = -testutil::uniform(rng, 0.05, u - 0.05);
        const auto p = polar_from_parabolic(u, v, k);
        const auto [u2, v2] = parabolic_from_polar(p, k);
        CHECK(u2 == doctest::Approx(u).epsilon(1e-10));
        CHECK(v2 == doctest::Approx(v).epsilon(1e-10));
        // polar -> (u,v) -> polar on the principal arcsin branch
        const double r = testutil::uniform(rng, 0.2, 3.0);
        const double phi = testutil::uniform(rng, 0.0, 0.99 * kPi / (2.0 * k));
        const auto [uu, vv] = parabolic_from_polar(polar(r, phi), k);
        const auto q = polar_from_parabolic(uu, vv, k);
        CHECK(q[0] == doctest::Approx(r).epsilon(1e-10));
        CHECK(q[1] == doctest::Approx(phi).epsilon(1e-10));
    }
}

TEST_CASE("parabolic metric matches the chart pullback") {
    {
        const auto g = parabolic_metric(1.0, -1.0, 1.0);
        CHECK(g(0, 0) == doctest::Approx(2.0));
        CHECK(g(1, 1) == doctest::Approx(2.0));
        CHECK(g(0, 1) == doctest::Approx(0.0));
    }
    {
        const auto g = parabolic_metric(3.0, -1.0, 2.0);
        CHECK(g(0, 0) == doctest::Approx(64.0 / 3.0));
        CHECK(g(1, 1) == doctest::Approx(64.0));
    }
    std::mt19937 rng(29);
    for (int t = 0; t < 40; ++t) {
        const double k = testutil::uniform(rng, 0.4, 2.5);
        const double u = testutil::uniform(rng, 0.5, 2.5);
        const double v = -testutil::uniform(rng, 0.1, u - 0.2);
        const auto g = parabolic_metric(u, v, k);
        CHECK(g(0, 0) > 0.0);
        CHECK(g(1, 1) > 0.0);
        // finite-difference Jacobian of (u,v) -> (r,phi), then pull back the
        // polar metric diag(1, k^2 r^2)
        const double h = 1e-6;
        Eigen::Matrix2d J;
        auto col = [&](double du, double dv) {
            const auto pp = polar_from_parabolic(u + du, v + dv, k);
            const auto pm = polar_from_parabolic(u - du, v - dv, k);
            return Eigen::Vector2d((pp[0] - pm[0]) / (2.0 * h), (pp[1] - pm[1]) / (2.0 * h));
        };
        J.col(0) = col(h, 0.0);
        J.col(1) = col(0.0, h);
        const auto p = polar_from_parabolic(u, v, k);
        const Eigen::Matrix2d gp = MetricModel::Plane2(k).components(p);
        const Eigen::Matrix2d pullback = J.transpose() * gp * J;
        CHECK((pullback - g).cwiseAbs().maxCoeff() < 1e-6 * std::max(1.0, g.norm()));
    }
}

TEST_CASE("seam continuity agrees with the exact frequency rule") {
    // frequency multipliers of the six coefficient generators
    const std::int64_t mult[6] = {0, 1, 1, 0, 2, 2};
    const Rational ks[7] = {Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(1),
                            Rational(3, 2), Rational(2),    Rational(3)};
    for (int i = 0; i < 6; ++i)
        for (const auto& kq : ks) {
            KillingTensorSpec s{};
            s.b[i] = 1.0;
            const double k = static_cast<double>(kq.num) / static_cast<double>(kq.den);
            const bool seam = seam_continuity(s, k, 1.3);
            const bool exact = is_global({kq * mult[i]});
            CHECK(seam == exact);
        }
    // b5 survives at k=1/2, b2 does not
    KillingTensorSpec s5{}, s2{};
    s5.b[4] = 1.0;
    s2.b[1] = 1.0;
    CHECK(seam_continuity(s5, 0.5, 1.0));
    CHECK_FALSE(seam_continuity(s2, 0.5, 1.0));
}

TEST_CASE("traced curves adhere to their level sets") {
    const auto m = MetricModel::Plane2(1.0);
    const auto K = parabolic_tensor(1.0);
    TraceOptions opt;
    opt.grid_radial = 300;
    opt.grid_angular = 300;
    opt.levels = 5;
    const auto curves = trace_web(K, m, PlotWindow{-3, 3, -3, 3}, opt);
    CHECK(curves.size() > 5);
    bool has1 = false, has2 = false;
    // plot-space step bound: chaining tolerance is 3/4 of the outermost cell
    // diagonal, segments at most one cell long
    const double rmax = std::sqrt(18.0);
    const double dr = (rmax - opt.radial_min) / opt.grid_radial;
    const double da = kTwoPi / opt.grid_angular;
    const double step_bound = 2.0 * std::sqrt(dr * dr + rmax * rmax * da * da);
    for (const auto& c : curves) {
        has1 |= c.eigen_index == 1;
        has2 |= c.eigen_index == 2;
        REQUIRE(c.points.size() >= 3);
        for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
            const double dx = c.points[i + 1].first - c.points[i].first;
            const double dy = c.points[i + 1].second - c.points[i].second;
            CHECK(std::hypot(dx, dy) < step_bound);
        }
        if (c.closed) {
            CHECK(c.points.front() == c.points.back());
        }
        // linear-interpolation error bound for this field on this grid is
        // ~5e-5; assert within 1e-3
        for (const auto& [x, y] : c.points) {
            const double f = field_at_plot_point(K, m, c.eigen_index, x, y);
            CHECK(std::abs(f - c.level) < 1e-3);
        }
    }
    CHECK(has1);
    CHECK(has2);
}

TEST_CASE("trace_web error cases") {
    const auto m = MetricModel::Plane2(1.0);
    KillingTensorSpec inv{};
    inv.k = 1.0;
    inv.b[3] = 1.0;  // K = g^{-1}: everywhere-degenerate field
    CHECK_THROWS_AS(trace_web(inv, m, PlotWindow{-3, 3, -3, 3}, TraceOptions{}),
                    std::domain_error);
    CHECK_THROWS_AS(
        trace_web(parabolic_tensor(1.0), m, PlotWindow{-0.01, 0.01, -0.01, 0.01},
                  TraceOptions{}),
        std::invalid_argument);
    TraceOptions bad;
    bad.levels = 0;
    CHECK_THROWS_AS(trace_web(parabolic_tensor(1.0), m, PlotWindow{-3, 3, -3, 3}, bad),
                    std::invalid_argument);
}

TEST_CASE("seam closure dichotomy of the elliptic web") {
    TraceOptions opt;
    opt.grid_radial = 300;
    opt.grid_angular = 300;
    opt.levels = 6;
    // k = 1: a global web, some curves close
    {
        const auto m = MetricModel::Plane2(1.0);
        const auto curves = trace_web(elliptic_spec(1.0), m, PlotWindow{-3, 3, -3, 3}, opt);
        CHECK(std::any_of(curves.begin(), curves.end(),
                          [](const WebCurve& c) { return c.closed; }));
    }
    // k = 1/2: the frequency-k terms break the seam; at least one curve stays
    // open with both endpoints in the interior of the annulus (it was cut by
    // the seam, not by the window)
    {
        const auto m = MetricModel::Plane2(0.5);
        const auto spec = elliptic_spec(0.5);
        CHECK_FALSE(seam_continuity(spec, 0.5, 1.0));
        const auto curves = trace_web(spec, m, PlotWindow{-3, 3, -3, 3}, opt);
        const double rmax = std::sqrt(18.0);
        bool found = false;
        for (const auto& c : curves) {
            if (c.closed) continue;
            const auto interior = [&](const std::pair<double, double>& p) {
                const double r = std::hypot(p.first, p.second);
                return r > opt.radial_min + 0.1 && r < rmax - 0.1;
            };
            if (interior(c.points.front()) && interior(c.points.back())) found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("crossing angles: orthogonal at k=1, skewed at k=2") {
    TraceOptions opt;
    opt.grid_radial = 250;
    opt.grid_angular = 250;
    opt.levels = 4;
    {
        const auto m = MetricModel::Plane2(1.0);
        const auto K = parabolic_tensor(1.0);
        const auto curves = trace_web(K, m, PlotWindow{-3, 3, -3, 3}, opt);
        const auto angles = crossing_angles(curves, K, m);
        REQUIRE(angles.size() > 3);
        for (double a : angles) CHECK(std::abs(a - 90.0) < 0.5);
    }
    {
        const auto m = MetricModel::Plane2(2.0);
        const auto K = parabolic_tensor(2.0);
        const auto curves = trace_web(K, m, PlotWindow{-3, 3, -3, 3}, opt);
        const auto angles = crossing_angles(curves, K, m);
        REQUIRE(!angles.empty());
        CHECK(std::any_of(angles.begin(), angles.end(),
                          [](double a) { return std::abs(a - 90.0) > 5.0; }));
    }
}

TEST_CASE("sphere tensors and conical webs") {
    // seam rule: frequencies are {0, 2k}
    for (double k : {1.0, 1.5, 2.0}) {
        SphereTensorSpec s;
        s.k = k;
        CHECK(sphere_seam_continuity(s, 1.0) == is_integer_value(2.0 * k));
    }
    {
        SphereTensorSpec s;
        s.k = 4.0 / 3.0;
        CHECK_FALSE(sphere_seam_continuity(s, 1.2));
    }
    // the pure-Z tensor has frequency 0 only
    {
        SphereTensorSpec s;
        s.c = {0.0, 0.0, 1.0};
        s.k = 4.0 / 3.0;
        CHECK(sphere_seam_continuity(s, 1.2));
    }
    TraceOptions opt;
    opt.grid_radial = 200;
    opt.grid_angular = 200;
    opt.levels = 4;
    for (double k : {1.0, 4.0 / 3.0, 3.0}) {
        SphereTensorSpec s;
        s.k = k;
        const auto curves = spherical_conical_web(s, opt);  // certifies internally
        CHECK(!curves.empty());
        bool has1 = false, has2 = false;
        for (const auto& c : curves) {
            has1 |= c.eigen_index == 1;
            has2 |= c.eigen_index == 2;
        }
        CHECK(has1);
        CHECK(has2);
    }
    // a non-Killing field must fail the certification: hand the tracer a
    // tensor whose frequency structure is inconsistent with its k
    // (certification uses the actual residual, so corrupt the generator set)
    // -> exercised via killing_residual directly in test_killing; here we
    //    check the happy path only.
}
