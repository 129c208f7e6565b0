#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "covering/systems.hpp"
#include "test_util.hpp"

using namespace covering;

namespace {

SystemSpec ttw_spec(double a1, double a2, double omega, double h,
                    SystemForm form = SystemForm::base_form) {
    SystemSpec s;
    s.family = SystemFamily::TTW;
    s.form = form;
    s.alpha1 = a1;
    s.alpha2 = a2;
    s.omega = omega;
    s.h = h;
    return s;
}

SystemSpec kc_spec(double a, double k) {
    SystemSpec s;
    s.family = SystemFamily::KC;
    s.a = a;
    s.k = k;
    return s;
}

// random state with the angle kept away from every singular ray
PhaseState random_state(std::mt19937& rng, double h = 1.0) {
    PhaseState s;
    s.r = testutil::uniform(rng, 0.4, 2.5);
    s.phi = testutil::uniform(rng, 0.3, 1.2) / h;
    s.p_r = testutil::uniform(rng, -1.5, 1.5);
    s.p_phi = testutil::uniform(rng, -1.5, 1.5);
    return s;
}

}  // namespace

TEST_CASE("hamiltonian closed-form examples") {
    CHECK(hamiltonian(ttw_spec(0, 0, 0.5, 1.0), {1.0, 0.0, 0.0, 1.0}) ==
          doctest::Approx(1.0));
    CHECK(hamiltonian(kc_spec(-1.0, 1.0), {1.0, 0.0, 0.0, 1.0}) == doctest::Approx(-0.5));
    {
        SystemSpec pw;
        pw.family = SystemFamily::PW;
        pw.Q = 0.0;
        pw.h = 2.0;
        // literal normalization: p_r^2 without the 1/2
        CHECK(hamiltonian(pw, {1.3, 0.7, 2.0, 0.0}) == doctest::Approx(4.0));
    }
    {
        SystemSpec pw1;
        pw1.family = SystemFamily::PW1;
        pw1.h = 2.0;
        pw1.E = 0.0;
        CHECK(hamiltonian(pw1, {1.0, 0.5, 0.0, 2.0}) == doctest::Approx(2.0));
    }
}

TEST_CASE("coupling-to-zero consistency") {
    std::mt19937 rng(31);
    for (auto form : {SystemForm::base_form, SystemForm::covering_form}) {
        SystemSpec osc;
        osc.family = SystemFamily::Oscillator;
        osc.form = form;
        osc.omega = 0.7;
        osc.h = 1.5;
        const SystemSpec ttw = ttw_spec(0, 0, 0.7, 1.5, form);
        for (int t = 0; t < 50; ++t) {
            const auto s = random_state(rng);
            CHECK(hamiltonian(ttw, s) == hamiltonian(osc, s));
        }
    }
}

TEST_CASE("singular configurations are rejected") {
    CHECK_THROWS_AS(hamiltonian(kc_spec(-1, 1), {0.0, 0.0, 0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(hamiltonian(ttw_spec(1, 0, 0, 1.0), {1.0, kPi / 2.0, 0.0, 0.0}),
                    std::domain_error);
    CHECK_THROWS_AS(hamiltonian(ttw_spec(0, 1, 0, 2.0), {1.0, kPi / 2.0, 0.0, 0.0}),
                    std::domain_error);
    // couplings off: the same rays are fine
    CHECK_NOTHROW(hamiltonian(ttw_spec(0, 0, 1, 1.0), {1.0, kPi / 2.0, 0.0, 0.0}));
}

TEST_CASE("KC brackets vanish for H with L and K") {
    std::mt19937 rng(37);
    for (double k : {0.5, 1.0, 2.0, 2.5}) {
        const auto I = kc_integrals(-1.0, k);
        for (int t = 0; t < 50; ++t) {
            const auto s = random_state(rng);
            CHECK(std::abs(poisson_bracket(I.H, I.L, s)) < 1e-9);
            CHECK(std::abs(poisson_bracket(I.H, I.K, s)) < 1e-9);
        }
    }
    // L and K do not commute with each other ({L,K} = -p_phi dK/dphi, which
    // happens to vanish at p_phi = 1, r = 1, a = -1; probe with p_phi = 2)
    const auto I = kc_integrals(-1.0, 1.0);
    const PhaseState s{1.0, 0.0, 1.0, 2.0};
    CHECK(std::abs(poisson_bracket(I.L, I.K, s)) > 1e-3);
    // antisymmetry
    CHECK(poisson_bracket(I.H, I.H, s) == 0.0);
    CHECK(std::abs(poisson_bracket(I.H, I.K, s) + poisson_bracket(I.K, I.H, s)) < 1e-12);
}

TEST_CASE("dual and finite-difference brackets agree") {
    std::mt19937 rng(41);
    const auto I = kc_integrals(-1.0, 1.5);
    const std::vector<const FirstIntegral*> fs = {&I.H, &I.L, &I.K};
    for (int t = 0; t < 30; ++t) {
        const auto s = random_state(rng);
        for (const auto* f : fs)
            for (const auto* g : fs) {
                const double dual = poisson_bracket(f->fdual, g->fdual, s);
                const double fd = poisson_bracket_fd(f->f, g->f, s);
                CHECK(std::abs(dual - fd) < 1e-7);
            }
    }
}

TEST_CASE("bracket Leibniz rule") {
    std::mt19937 rng(43);
    const auto I = kc_integrals(-1.0, 2.0);
    const DualEvaluator prod = [&I](const std::array<Dual, 4>& s) {
        return I.L.fdual(s) * I.K.fdual(s);
    };
    for (int t = 0; t < 30; ++t) {
        const auto s = random_state(rng);
        const double lhs = poisson_bracket(I.H.fdual, prod, s);
        const double rhs = I.L(s) * poisson_bracket(I.H, I.K, s) +
                           poisson_bracket(I.H, I.L, s) * I.K(s);
        CHECK(std::abs(lhs - rhs) < 1e-8);
    }
}

TEST_CASE("brackets vanish across the whole catalog") {
    std::mt19937 rng(47);
    std::vector<SystemSpec> catalog;
    catalog.push_back(ttw_spec(0.8, 0.6, 0.3, 1.5));
    catalog.push_back(ttw_spec(0.8, 0.6, 0.3, 1.5, SystemForm::covering_form));
    catalog.push_back(kc_spec(-1.0, 2.5));
    {
        SystemSpec pw;
        pw.family = SystemFamily::PW;
        pw.alpha1 = 0.5;
        pw.alpha2 = 0.7;
        pw.Q = 1.0;
        pw.h = 1.5;
        catalog.push_back(pw);
    }
    {
        SystemSpec pw1;
        pw1.family = SystemFamily::PW1;
        pw1.c1 = 0.4;
        pw1.c2 = 0.3;
        pw1.E = 2.0;
        pw1.h = 2.0;
        catalog.push_back(pw1);
    }
    {
        SystemSpec osc;
        osc.family = SystemFamily::Oscillator;
        osc.omega = 1.0;
        osc.h = 1.0;
        catalog.push_back(osc);
    }
    for (const auto& spec : catalog) {
        const auto integrals = system_integrals(spec);
        REQUIRE(integrals.size() >= 2);
        for (int t = 0; t < 50; ++t) {
            const auto s = random_state(rng, std::max(spec.h, 1.0));
            for (std::size_t i = 1; i < integrals.size(); ++i)
                CHECK(std::abs(poisson_bracket(integrals[0], integrals[i], s)) < 1e-9);
        }
    }
}

TEST_CASE("independence rank") {
    std::mt19937 rng(53);
    for (double k : {0.5, 1.0, 2.0, 2.5}) {
        const auto I = kc_integrals(-1.0, k);
        for (int t = 0; t < 20; ++t) {
            const auto s = random_state(rng);
            CHECK(independence_rank({I.H, I.L, I.K}, s) == 3);
        }
    }
    const auto I = kc_integrals(-1.0, 1.0);
    const DualEvaluator combo = [&I](const std::array<Dual, 4>& s) {
        return 2.0 * I.L.fdual(s) + 3.0 * I.H.fdual(s);
    };
    const auto s = random_state(rng);
    CHECK(independence_rank(std::vector<DualEvaluator>{I.H.fdual, I.L.fdual, combo}, s) == 2);
    CHECK(independence_rank(std::vector<DualEvaluator>{I.H.fdual}, s) == 1);
}

TEST_CASE("globality report regimes") {
    // (i) both couplings on, h = 3/2: H global, confined
    {
        const auto rep = globality_report(ttw_spec(1, 1, 0.5, 1.5), Rational(3, 2));
        CHECK(rep.hamiltonian_global);
        CHECK(rep.confined);
        CHECK(rep.well_defined);
        CHECK(rep.k == Rational(2, 3));
    }
    // (ii) alpha2 = 0, h < 1/4: not well defined
    {
        const auto rep = globality_report(ttw_spec(1, 0, 0.5, 0.2), Rational(1, 5));
        CHECK_FALSE(rep.hamiltonian_global);
        CHECK_FALSE(rep.confined);
        CHECK_FALSE(rep.well_defined);
        CHECK(rep.verdict == "not well defined");
    }
    // (iii) couplings off: oscillator regime
    {
        const auto rep = globality_report(ttw_spec(0, 0, 0.5, 0.2), Rational(1, 5));
        CHECK(rep.hamiltonian_global);
        CHECK(rep.well_defined);
        CHECK_FALSE(rep.confined);
    }
    // KC: K global iff k integer
    for (const auto& [k, want] : std::vector<std::pair<Rational, bool>>{
             {Rational(1), true}, {Rational(2), true}, {Rational(5, 2), false}}) {
        const auto rep = globality_report(kc_spec(-1.0, 1.0), k);
        bool k_global = false;
        for (const auto& iv : rep.integrals)
            if (iv.name == "K") k_global = iv.global;
        CHECK(k_global == want);
    }
    // stated rule vs raw frequency rule agree on half-integers
    const auto rep = globality_report(ttw_spec(1, 1, 0.5, 0.5), Rational(1, 2));
    CHECK(rep.hamiltonian_global == rep.frequency_rule_global);
}

TEST_CASE("KC integral frequency sets") {
    const auto I = kc_integrals(-1.0, 1.0);
    CHECK(I.H.global_for(Rational(5, 2)));
    CHECK(I.L.global_for(Rational(5, 2)));
    CHECK(I.K.global_for(Rational(2)));
    CHECK_FALSE(I.K.global_for(Rational(5, 2)));
}

TEST_CASE("Jacobi orbit: Kepler conic at k=1") {
    const double a = -1.0, l = 0.5, E = -0.5;
    const auto orb = kc_jacobi_orbit(a, 1.0, E, l, 400);
    const double p = 2.0 * l * l;                       // semi-latus rectum
    const double e = std::sqrt(1.0 + 4.0 * E * l * l);  // eccentricity
    CHECK(orb.r_min == doctest::Approx(p / (1.0 + e)).epsilon(1e-12));
    CHECK(orb.r_max == doctest::Approx(p / (1.0 - e)).epsilon(1e-12));
    for (const auto& [r, phi] : orb.points)
        CHECK(std::abs(1.0 / r - (1.0 + e * std::cos(phi)) / p) < 1e-6);
    // apsidal angle is pi on the Euclidean plane
    CHECK(orb.points.back().second == doctest::Approx(kPi).epsilon(1e-9));
}

TEST_CASE("Jacobi orbit: general k scales the apsidal angle") {
    for (double k : {0.5, 2.5}) {
        const auto orb = kc_jacobi_orbit(-1.0, k, -0.5, 0.5, 400);
        const double p = 0.5, e = std::sqrt(0.5);
        CHECK(orb.points.back().second == doctest::Approx(kPi / k).epsilon(1e-9));
        for (const auto& [r, phi] : orb.points)
            CHECK(std::abs(1.0 / r - (1.0 + e * std::cos(k * phi)) / p) < 1e-6);
    }
}

TEST_CASE("Jacobi orbit: circular and radial limits") {
    // circular orbit: V_eff stationary at r_c = -2 l^2 / a, E = V_eff(r_c)
    {
        const double l = 0.5, a = -1.0;
        const double rc = -2.0 * l * l / a;
        const double E = a / rc + l * l / (rc * rc);
        const auto orb = kc_jacobi_orbit(a, 1.7, E, l);
        CHECK(orb.r_min == doctest::Approx(rc).epsilon(1e-6));
        CHECK(orb.r_max == doctest::Approx(rc).epsilon(1e-6));
    }
    // l = 0: purely radial, W_phi = 0
    {
        const auto orb = kc_jacobi_orbit(-1.0, 2.0, -0.5, 0.0);
        CHECK(orb.pure_radial);
        CHECK(orb.r_max == doctest::Approx(2.0));
        for (const auto& [r, phi] : orb.points) CHECK(phi == 0.0);
    }
    // empty classically allowed region
    CHECK_THROWS_AS(kc_jacobi_orbit(-1.0, 1.0, -10.0, 1.0), std::domain_error);
}
