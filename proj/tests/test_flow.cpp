#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "covering/chart.hpp"
#include "covering/flow.hpp"
#include "covering/systems.hpp"
#include "test_util.hpp"

using namespace covering;

namespace {

DualEvaluator evaluator(const SystemSpec& spec) {
    return [spec](const std::array<Dual, 4>& s) { return hamiltonian_eval<Dual>(spec, s); };
}

SystemSpec kc_spec(double a, double k) {
    SystemSpec s;
    s.family = SystemFamily::KC;
    s.a = a;
    s.k = k;
    return s;
}

SystemSpec ttw_spec(double a1, double a2, double omega, double h) {
    SystemSpec s;
    s.family = SystemFamily::TTW;
    s.alpha1 = a1;
    s.alpha2 = a2;
    s.omega = omega;
    s.h = h;
    return s;
}

// An eccentric bound Kepler orbit on M_2, kept well away from the puncture:
// turning radii ~ [0.61, 2.72].
const PhaseState kBoundK2{2.0, 3.0 * kPi / 4.0, 0.38729833462074170, 2.0};

Trajectory truncated(const Trajectory& t, std::size_t n) {
    Trajectory half = t;
    half.times.resize(n);
    half.states.resize(n);
    return half;
}

}  // namespace

TEST_CASE("integrate rejects bad input") {
    const auto H = evaluator(kc_spec(-1.0, 1.0));
    CHECK_THROWS_AS(integrate(H, PhaseState{}, 0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(integrate(H, PhaseState{}, 1e-3, -1), std::invalid_argument);
    CHECK_THROWS_AS(integrate(H, PhaseState{-1.0, 0.0, 0.0, 0.0}, 1e-3, 10),
                    std::domain_error);

    const auto t = integrate(H, PhaseState{1.0, 0.0, 0.0, 1.0}, 1e-3, 100);
    CHECK(t.completed);
    CHECK(t.order == 2);
    REQUIRE(t.states.size() == 101);
    REQUIRE(t.times.size() == 101);
    for (std::size_t i = 0; i < t.times.size(); ++i)
        CHECK(t.times[i] == doctest::Approx(1e-3 * static_cast<double>(i)).epsilon(1e-12));
}

TEST_CASE("free particle is a straight line in the plot plane") {
    // a = 0, k = 1: geodesic flow of the flat plane in polar coordinates
    const auto H = evaluator(kc_spec(0.0, 1.0));
    const PhaseState s0{2.0, 0.8, -0.3, 1.1};
    const double dt = 5e-5;
    const auto t = integrate(H, s0, dt, 2000);
    REQUIRE(t.completed);

    const double x0 = s0.r * std::cos(s0.phi);
    const double y0 = s0.r * std::sin(s0.phi);
    const double phidot = s0.p_phi / (s0.r * s0.r);
    const double vx = s0.p_r * std::cos(s0.phi) - s0.r * std::sin(s0.phi) * phidot;
    const double vy = s0.p_r * std::sin(s0.phi) + s0.r * std::cos(s0.phi) * phidot;
    for (std::size_t i = 0; i < t.states.size(); ++i) {
        const auto& s = t.states[i];
        const double time = t.times[i];
        CHECK(std::abs(s.r * std::cos(s.phi) - (x0 + vx * time)) < 1e-8);
        CHECK(std::abs(s.r * std::sin(s.phi) - (y0 + vy * time)) < 1e-8);
    }
}

TEST_CASE("KC radius oscillation matches the Jacobi turning points") {
    const double energy = -0.5, l = 0.5;
    const auto orb = kc_jacobi_orbit(-1.0, 1.0, energy, l);
    // start between the turning points with matching energy and momentum
    PhaseState s0;
    s0.r = 1.0;
    s0.p_phi = std::sqrt(2.0) * l;
    s0.p_r = std::sqrt(2.0 * (energy + 1.0 / s0.r - l * l / (s0.r * s0.r)));
    const auto H = evaluator(kc_spec(-1.0, 1.0));
    const auto t = integrate(H, s0, 1e-3, 10000);
    REQUIRE(t.completed);

    double r_lo = s0.r, r_hi = s0.r;
    for (const auto& s : t.states) {
        r_lo = std::min(r_lo, s.r);
        r_hi = std::max(r_hi, s.r);
    }
    CHECK(r_lo == doctest::Approx(orb.r_min).epsilon(1e-4));
    CHECK(r_hi == doctest::Approx(orb.r_max).epsilon(1e-4));
}

TEST_CASE("oscillator r^2 period is pi / sqrt(2 omega)") {
    const double omega = 0.5;
    const auto H = evaluator(ttw_spec(0.0, 0.0, omega, 1.0));
    const PhaseState s0{1.0, 0.2, 0.3, 0.7};
    const double dt = 1e-3;
    const auto t = integrate(H, s0, dt, 8000);
    REQUIRE(t.completed);

    std::vector<double> u(t.states.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = t.states[i].r * t.states[i].r;
    // quadratic-interpolated local maxima of r^2
    std::vector<double> maxima;
    for (std::size_t i = 1; i + 1 < u.size(); ++i) {
        if (!(u[i] >= u[i - 1] && u[i] > u[i + 1])) continue;
        const double denom = u[i - 1] - 2.0 * u[i] + u[i + 1];
        const double frac = (denom == 0.0) ? 0.0 : 0.5 * (u[i - 1] - u[i + 1]) / denom;
        maxima.push_back(t.times[i] + frac * dt);
    }
    REQUIRE(maxima.size() >= 2);
    const double want = kPi / std::sqrt(2.0 * omega);
    for (std::size_t i = 1; i < maxima.size(); ++i)
        CHECK(maxima[i] - maxima[i - 1] == doctest::Approx(want).epsilon(1e-3));
}

TEST_CASE("conservation drift of the KC integrals at k = 2") {
    const double k = 2.0;
    const auto ints = kc_integrals(-1.0, k);
    const auto H = evaluator(kc_spec(-1.0, k));
    const auto t = integrate(H, kBoundK2, 1e-3, 100000);
    REQUIRE(t.completed);

    const std::vector<FirstIntegral> regs{ints.H, ints.L, ints.K};
    const auto drift = conservation_drift(t, regs);
    for (std::size_t i = 0; i < regs.size(); ++i) {
        const double scale = std::max(1.0, std::abs(regs[i](kBoundK2)));
        CHECK(drift[i] / scale < 1e-6);
    }

    // non-secular energy error: the second half is no worse than the first
    const std::size_t half = t.states.size() / 2;
    const double first = conservation_drift(truncated(t, half), {ints.H})[0];
    Trajectory tail = t;
    tail.times.erase(tail.times.begin(), tail.times.begin() + static_cast<long>(half));
    tail.states.erase(tail.states.begin(), tail.states.begin() + static_cast<long>(half));
    const double second = conservation_drift(tail, {ints.H})[0] +
                          std::abs(ints.H(tail.states.front()) - ints.H(t.states.front()));
    CHECK(second <= 2.0 * first + 1e-12);

    // p_r is not a first integral: its drift is order unity
    const auto pr = make_integral("p_r", 1, {0}, [](const auto& s) { return s[2]; });
    CHECK(conservation_drift(t, {pr})[0] > 0.05);
}

TEST_CASE("oscillator energy drift is bounded and non-secular") {
    const auto spec = ttw_spec(0.0, 0.0, 0.5, 1.0);
    const auto H = evaluator(spec);
    const PhaseState s0{1.0, 0.2, 0.3, 0.7};
    const auto t = integrate(H, s0, 1e-3, 100000);
    REQUIRE(t.completed);

    const auto energy =
        make_integral("H", 2, {0}, [spec](const auto& s) { return hamiltonian_eval(spec, s); });
    CHECK(conservation_drift(t, {energy})[0] < 1e-6);
    const std::size_t half = t.states.size() / 2;
    const double first = conservation_drift(truncated(t, half), {energy})[0];
    Trajectory tail = t;
    tail.times.erase(tail.times.begin(), tail.times.begin() + static_cast<long>(half));
    tail.states.erase(tail.states.begin(), tail.states.begin() + static_cast<long>(half));
    const double second = conservation_drift(tail, {energy})[0] +
                          std::abs(energy(tail.states.front()) - energy(t.states.front()));
    CHECK(second <= 2.0 * first + 1e-12);

    // the angular term is conserved whenever the couplings are off
    const auto ell = make_integral("L", 2, {0}, [](const auto& s) { return s[3] * s[3]; });
    CHECK(conservation_drift(t, {ell})[0] < 1e-6);
}

TEST_CASE("winding numbers") {
    // TTW with both couplings on: confined between the singular rays
    {
        const auto H = evaluator(ttw_spec(0.5, 0.5, 0.5, 2.0));
        const PhaseState s0{1.0, kPi / 8.0, 0.2, 0.3};
        const auto t = integrate(H, s0, 1e-3, 20000);
        REQUIRE(t.completed);
        CHECK(std::abs(winding_number(t)) < 1.0 / (4.0 * 2.0));
    }
    // KC elliptic orbit: winding grows without bound
    {
        const auto H = evaluator(kc_spec(-1.0, 1.0));
        PhaseState s0;
        s0.r = 1.0;
        s0.p_phi = std::sqrt(2.0) * 0.5;
        s0.p_r = std::sqrt(2.0 * (-0.5 + 1.0 - 0.25));
        const auto t = integrate(H, s0, 1e-3, 60000);
        REQUIRE(t.completed);
        const double w = winding_number(t);
        CHECK(w > 5.0);
        CHECK(w > winding_number(truncated(t, t.states.size() / 2)) + 1.0);
    }
}

TEST_CASE("radial orbit: zero winding and graceful domain exit") {
    const auto H = evaluator(kc_spec(-1.0, 1.0));
    const PhaseState s0{1.0, 0.4, 0.3, 0.0};  // p_phi = 0, bound: falls into r = 0
    const auto t = integrate(H, s0, 1e-3, 50000);
    CHECK_FALSE(t.completed);
    CHECK(t.exit_step >= 0);
    CHECK(t.exit_reason.find("domain") != std::string::npos);
    REQUIRE(t.states.size() > 10);
    for (const auto& s : t.states) CHECK(s.r > 0.0);
    CHECK(winding_number(t) == 0.0);
}

TEST_CASE("time reversal returns to the initial state") {
    const auto H = evaluator(kc_spec(-1.0, 2.0));
    const auto fwd = integrate(H, kBoundK2, 1e-3, 2000);
    REQUIRE(fwd.completed);
    const auto back = integrate(H, fwd.states.back(), -1e-3, 2000);
    REQUIRE(back.completed);
    const auto& s = back.states.back();
    CHECK(std::abs(s.r - kBoundK2.r) < 1e-8);
    CHECK(std::abs(s.phi - kBoundK2.phi) < 1e-8);
    CHECK(std::abs(s.p_r - kBoundK2.p_r) < 1e-8);
    CHECK(std::abs(s.p_phi - kBoundK2.p_phi) < 1e-8);
}

TEST_CASE("integral drift scales as O(dt^2)") {
    const double k = 2.0;
    const auto ints = kc_integrals(-1.0, k);
    const auto H = evaluator(kc_spec(-1.0, k));
    const std::vector<FirstIntegral> regs{ints.H, ints.L, ints.K};

    const auto coarse = integrate(H, kBoundK2, 2e-3, 5000);
    const auto fine = integrate(H, kBoundK2, 1e-3, 10000);
    REQUIRE(coarse.completed);
    REQUIRE(fine.completed);
    const auto dc = conservation_drift(coarse, regs);
    const auto df = conservation_drift(fine, regs);
    int checked = 0;
    for (std::size_t i = 0; i < regs.size(); ++i) {
        // L is exactly conserved (phi is cyclic): no drift to compare
        if (df[i] < 1e-13) continue;
        CHECK(dc[i] / df[i] > 3.5);
        CHECK(dc[i] / df[i] < 4.5);
        ++checked;
    }
    CHECK(checked >= 2);
}
