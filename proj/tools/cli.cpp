// covering: command-line front end for the covering-manifold web toolkit.
//
// Subcommands:
//   web     trace a separable web (2D curves or 3D point cloud) to SVG/CSV
//   dim     exact global-dimension tables over rational parameters
//   verify  property suites (residuals, brackets, ranks, seams) as JSON
//   orbit   Hamiltonian trajectory with drift and winding report
//
// Exit codes: 0 success, 1 verification failure, 2 bad configuration,
// 3 tracing or domain failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "covering/benenti.hpp"
#include "covering/flow.hpp"
#include "covering/io.hpp"
#include "covering/killing.hpp"
#include "covering/systems.hpp"
#include "covering/webs.hpp"

using json = nlohmann::ordered_json;
using namespace covering;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitTraceFailed = 3;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

unsigned env_seed() {
    const char* s = std::getenv("COVERING_WEBS_SEED");
    if (s == nullptr || *s == '\0') return 0;
    return static_cast<unsigned>(std::strtoul(s, nullptr, 10));
}

// Rational "p/q" or plain decimal; web/orbit accept either form.
double parse_real(const std::string& s) {
    try {
        return Rational::parse(s).value();
    } catch (const std::invalid_argument&) {
    }
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw ConfigError("trailing characters in number '" + s + "'");
    return v;
}

Rational parse_rational_strict(const std::string& s) {
    try {
        return Rational::parse(s);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

std::vector<double> parse_reals(const std::string& s, std::size_t want) {
    const auto parts = split_csv(s);
    if (parts.size() != want)
        throw ConfigError("expected " + std::to_string(want) + " comma-separated values in '" +
                          s + "'");
    std::vector<double> out;
    for (const auto& p : parts) out.push_back(parse_real(p));
    return out;
}

// Named presets documented in the README; the elliptic foci sit at
// (1.5, 0) and (-0.5, 0) on the base plane.
KillingTensorSpec preset_tensor(const std::string& name, double k) {
    KillingTensorSpec spec;
    spec.k = k;
    if (name == "elliptic") {
        spec.b = {1.0, 0.0, -1.0, -0.375, 0.0, -0.375};
    } else if (name == "parabolic") {
        return parabolic_tensor(k);
    } else if (name == "polar") {
        spec.b = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    } else if (name == "cartesian") {
        spec.b = {0.0, 0.0, 0.0, 0.5, 0.0, -0.5};
    } else {
        throw ConfigError("unknown tensor preset '" + name +
                          "' (expected elliptic|parabolic|polar|cartesian)");
    }
    return spec;
}

void emit(const json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

// ---------------------------------------------------------------- web ----

struct WebConfig {
    std::string family = "plane";
    std::string k_str = "1";
    std::string tensor = "elliptic";
    std::string coeffs;
    std::string sphere_c = "1,2,3";
    std::string params = "1,4,8";
    double level = 5.0;
    int eigen_index = 2;
    std::string mode = "nonconformal";
    int levels = 8;
    int grid = 400;
    double radial_min = 0.05;
    double window = 3.0;
    std::string out = "web";
    std::string format = "both";
};

int run_web(const WebConfig& cfg) {
    const double k = parse_real(cfg.k_str);
    if (!(k > 0.0)) throw ConfigError("k must be positive");
    if (cfg.levels < 1 || cfg.grid < 8) throw ConfigError("bad levels/grid");
    if (cfg.format != "svg" && cfg.format != "csv" && cfg.format != "both")
        throw ConfigError("format must be svg|csv|both");

    TraceOptions opt;
    opt.levels = cfg.levels;
    opt.grid_radial = opt.grid_angular = cfg.grid;
    opt.radial_min = cfg.radial_min;
    if (cfg.mode == "conformal")
        opt.mode = PlotMode::conformal;
    else if (cfg.mode != "nonconformal")
        throw ConfigError("mode must be nonconformal|conformal");

    if (cfg.family == "benenti") {
        const auto abc = parse_reals(cfg.params, 3);
        const EllipsoidalParams par{abc[0], abc[1], abc[2]};
        std::vector<CloudPoint> cloud;
        try {
            cloud = eigen_surface_sample(par, k, cfg.level, cfg.eigen_index, SurfaceGrid{});
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        write_file(cfg.out + ".csv", cloud_csv(cloud));
        std::cout << "wrote " << cfg.out << ".csv (" << cloud.size() << " points)\n";
        return kExitOk;
    }

    std::vector<WebCurve> curves;
    PlotWindow window{-cfg.window, cfg.window, -cfg.window, cfg.window};
    if (cfg.family == "plane") {
        KillingTensorSpec spec;
        if (!cfg.coeffs.empty()) {
            const auto b = parse_reals(cfg.coeffs, 6);
            std::copy(b.begin(), b.end(), spec.b.begin());
            spec.k = k;
        } else {
            spec = preset_tensor(cfg.tensor, k);
        }
        try {
            curves = trace_web(spec, MetricModel::Plane2(k), window, opt);
        } catch (const std::exception& e) {
            std::cerr << "tracing failed: " << e.what() << "\n";
            return kExitTraceFailed;
        }
    } else if (cfg.family == "sphere") {
        SphereTensorSpec spec;
        const auto c = parse_reals(cfg.sphere_c, 3);
        spec.c = {c[0], c[1], c[2]};
        spec.k = k;
        window = PlotWindow{-kPi, kPi, -kPi, kPi};
        try {
            curves = spherical_conical_web(spec, opt);
        } catch (const std::exception& e) {
            std::cerr << "tracing failed: " << e.what() << "\n";
            return kExitTraceFailed;
        }
    } else {
        throw ConfigError("family must be plane|sphere|benenti");
    }

    if (cfg.format != "svg") write_file(cfg.out + ".csv", curves_csv(curves));
    if (cfg.format != "csv") write_file(cfg.out + ".svg", curves_svg(curves, window));
    int closed = 0;
    for (const auto& c : curves) closed += c.closed ? 1 : 0;
    std::cout << "wrote " << cfg.out << " (" << curves.size() << " curves, " << closed
              << " closed)\n";
    return kExitOk;
}

// ---------------------------------------------------------------- dim ----

int run_dim(const std::string& family, const std::string& order_str,
            const std::string& k_list, const std::string& params, const std::string& out) {
    FieldOrder order;
    if (order_str == "vector")
        order = FieldOrder::vector;
    else if (order_str == "tensor2")
        order = FieldOrder::tensor2;
    else
        throw ConfigError("order must be vector|tensor2");

    json report;
    report["family"] = family;
    report["order"] = order_str;
    if (family == "sphere3") {
        const auto parts = split_csv(params);
        if (parts.size() != 3) throw ConfigError("sphere3 needs --params a,b,c");
        const Rational a = parse_rational_strict(parts[0]);
        const Rational b = parse_rational_strict(parts[1]);
        const Rational c = parse_rational_strict(parts[2]);
        if (a.num == 0) throw ConfigError("sphere3: a must be nonzero");
        const auto g = global_dimension_sphere3(order, b / a, c / a);
        report["params"] = json::array({a.str(), b.str(), c.str()});
        report["dimension"] = g.dimension;
        report["surviving"] = g.surviving;
    } else if (family == "cylinder") {
        const auto g = cylinder_global_dimension(order);
        report["dimension"] = g.dimension;
        report["surviving"] = g.surviving;
    } else if (family == "plane" || family == "sphere") {
        if (k_list.empty()) throw ConfigError("missing --k list");
        json entries = json::array();
        for (const auto& ks : split_csv(k_list)) {
            const Rational k = parse_rational_strict(ks);
            if (k.num <= 0) throw ConfigError("k must be positive: '" + ks + "'");
            const auto g = global_dimension(order, k);
            entries.push_back(
                {{"k", k.str()}, {"dimension", g.dimension}, {"surviving", g.surviving}});
        }
        report["entries"] = entries;
    } else {
        throw ConfigError("family must be plane|sphere|sphere3|cylinder");
    }
    emit(report, out);
    return kExitOk;
}

// ------------------------------------------------------------- verify ----

struct CheckList {
    json checks = json::array();
    bool all_pass = true;

    void add(const std::string& name, double value, double tol) {
        const bool pass = value < tol;
        checks.push_back({{"name", name}, {"value", value}, {"tolerance", tol}, {"pass", pass}});
        all_pass = all_pass && pass;
    }
    void add_exact(const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({{"name", name}, {"detail", detail}, {"pass", pass}});
        all_pass = all_pass && pass;
    }
};

PhaseState random_phase(std::mt19937& rng) {
    std::uniform_real_distribution<double> ur(0.5, 2.5), up(-1.5, 1.5);
    PhaseState s;
    s.r = ur(rng);
    s.phi = ur(rng);
    s.p_r = up(rng);
    s.p_phi = up(rng);
    return s;
}

void verify_kc(const Rational& k, CheckList& list, json& info) {
    std::mt19937 rng(env_seed());
    const auto ints = kc_integrals(-1.0, k.value());
    double hl = 0.0, hk = 0.0;
    for (int t = 0; t < 50; ++t) {
        const auto s = random_phase(rng);
        hl = std::max(hl, std::abs(poisson_bracket(ints.H, ints.L, s)));
        hk = std::max(hk, std::abs(poisson_bracket(ints.H, ints.K, s)));
    }
    list.add("max |{H,L}| over 50 states", hl, 1e-9);
    list.add("max |{H,K}| over 50 states", hk, 1e-9);

    int rank_ok = 0;
    for (int t = 0; t < 20; ++t)
        rank_ok += independence_rank({ints.H, ints.L, ints.K}, random_phase(rng)) == 3 ? 1 : 0;
    list.add_exact("rank(H,L,K) = 3 at 20 states", rank_ok == 20,
                   std::to_string(rank_ok) + "/20");

    SystemSpec spec;
    spec.family = SystemFamily::KC;
    spec.a = -1.0;
    spec.k = k.value();
    const auto rep = globality_report(spec, k);
    info["k"] = k.str();
    info["K_global"] = ints.K.global_for(k);
    info["verdict"] = rep.verdict;
    list.add_exact("K globality matches integrality of k",
                   ints.K.global_for(k) == k.is_integer(), ints.K.global_for(k) ? "global" : "non-global");

    // short drift run
    const DualEvaluator H = [spec](const std::array<Dual, 4>& s) {
        return hamiltonian_eval<Dual>(spec, s);
    };
    // eccentric bound orbit with turning radii [2.5, 10], well off the puncture
    PhaseState s0;
    s0.r = 4.0;
    s0.p_r = 0.3;
    s0.p_phi = 2.0 * k.value();
    const auto traj = integrate(H, s0, 1e-3, 20000);
    const auto drift = conservation_drift(traj, {ints.H, ints.L, ints.K});
    list.add("drift of H over 2e4 steps", drift[0], 1e-6);
    list.add("drift of L over 2e4 steps", drift[1], 1e-6);
    list.add("drift of K over 2e4 steps", drift[2], 1e-6);
}

void verify_benenti(const EllipsoidalParams& par, const Rational& k, CheckList& list,
                    json& info) {
    std::mt19937 rng(env_seed());
    std::uniform_real_distribution<double> uc(-2.0, 2.0);
    std::vector<Eigen::Vector3d> pts;
    for (int t = 0; t < 100; ++t) pts.push_back({uc(rng), uc(rng), uc(rng)});
    for (int a : {1, 2}) {
        MixedField3 field = [&par, a](const Eigen::Vector3d& p) {
            return benenti_recursion(ellipsoidal_L(par, p), 3)[static_cast<std::size_t>(a)];
        };
        list.add("Killing residual of K" + std::to_string(a) + " on E3",
                 cartesian_killing_residual(field, pts), 1e-5);
    }
    // pullback consistency at random covering points
    const double kd = k.value();
    std::uniform_real_distribution<double> urr(0.3, 2.5), uth(0.2, kPi - 0.2),
        uph(0.0, kTwoPi);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const std::array<double, 3> x{urr(rng), uth(rng), uph(rng)};
        const Eigen::Matrix3d J = covering_jacobian3(x, kd);
        const auto Kcov = benenti_recursion(pullback_L_raw(par, kd, x), 3);
        const auto Kbase = benenti_recursion(ellipsoidal_L(par, covering_transform3_raw(x, kd)), 3);
        for (std::size_t a = 0; a < 3; ++a) {
            const Eigen::Matrix3d pulled = J.partialPivLu().solve(Kbase[a] * J);
            worst = std::max(worst, (Kcov[a] - pulled).cwiseAbs().maxCoeff());
        }
    }
    list.add("pullback consistency over 50 points", worst, 1e-8);
    // displayed off-diagonal component of L'
    double comp_err = 0.0;
    for (int t = 0; t < 50; ++t) {
        const std::array<double, 3> x{urr(rng), uth(rng), uph(rng)};
        const auto Lp = pullback_L_raw(par, kd, x);
        const double c2 = std::cos(x[2] / kd) * std::cos(x[2] / kd);
        const double closed =
            (c2 * (par.a - par.b) + par.b - par.c) * std::sin(x[1]) * std::cos(x[1]) / x[0];
        comp_err = std::max(comp_err, std::abs(Lp(1, 0) - closed));
    }
    list.add("L' theta-r component vs closed form", comp_err, 1e-10);
    info["params"] = json::array({par.a, par.b, par.c});
    info["k"] = k.str();
}

void verify_geometry(const Rational& k, CheckList& list, json& info) {
    std::mt19937 rng(env_seed());
    const double kd = k.value();
    std::uniform_real_distribution<double> urr(0.2, 3.0), uph(0.0, kTwoPi),
        uth(0.2, kPi - 0.2);

    // curvature constancy
    double c_plane = 0.0, c_sphere = 0.0, c_e3 = 0.0, c_s3 = 0.0;
    const auto plane = MetricModel::Plane2(kd);
    const auto sph2 = MetricModel::Sphere2(kd);
    const auto e3 = MetricModel::Euclid3(kd);
    const auto s3 = MetricModel::Sphere3(1.0, 2.0, 3.0);
    for (int t = 0; t < 100; ++t) {
        c_plane = std::max(c_plane, std::abs(plane.curvature(polar(urr(rng), uph(rng)))));
        c_sphere =
            std::max(c_sphere, std::abs(sph2.curvature(sphere(uth(rng), uph(rng))) - 1.0));
        c_e3 = std::max(c_e3, e3.riemann_norm(spherical(urr(rng), uth(rng), uph(rng))));
        c_s3 = std::max(c_s3,
                        std::abs(s3.curvature(hopf(0.2 + 0.25 * urr(rng), uph(rng), uph(rng))) -
                                 1.0));
    }
    list.add("Plane2 curvature", c_plane, 1e-7);
    list.add("Sphere2 curvature - 1", c_sphere, 1e-7);
    list.add("Euclid3 Riemann norm", c_e3, 1e-7);
    list.add("Sphere3 curvature - 1/a^2", c_s3, 1e-7);

    // Killing residuals of the full generator catalog
    std::vector<ChartPoint> pts;
    for (int t = 0; t < 50; ++t) pts.push_back(polar(urr(rng), uph(rng)));
    double worst_v = 0.0, worst_t = 0.0;
    for (int i = 0; i < 3; ++i) {
        KillingVectorSpec v;
        v.k = kd;
        v.a[static_cast<std::size_t>(i)] = 1.0;
        worst_v = std::max(worst_v, killing_residual(v, plane, pts));
    }
    for (int i = 0; i < 6; ++i) {
        KillingTensorSpec kt;
        kt.k = kd;
        kt.b[static_cast<std::size_t>(i)] = 1.0;
        worst_t = std::max(worst_t, killing_residual(kt, plane, pts));
    }
    list.add("Killing vector residuals", worst_v, 1e-6);
    list.add("Killing tensor residuals", worst_t, 1e-6);

    // parabolic chart roundtrip
    double rt = 0.0;
    std::uniform_real_distribution<double> uphi(0.01, 0.99 * kPi / (2.0 * kd));
    for (int t = 0; t < 200; ++t) {
        const auto p = polar(urr(rng), uphi(rng));
        const auto [u, v] = parabolic_from_polar(p, kd);
        const auto back = polar_from_parabolic(u, v, kd);
        rt = std::max(rt, std::max(std::abs(back[0] - p[0]), std::abs(back[1] - p[1])));
    }
    list.add("parabolic roundtrip over 200 points", rt, 1e-10);

    // seam continuity vs the exact frequency rule
    const std::vector<Rational> kset{{1, 3}, {1, 2}, {2, 3}, {1}, {3, 2}, {2}, {3}};
    const int mult[6] = {0, 1, 1, 0, 2, 2};
    int agree = 0;
    for (const auto& kr : kset) {
        for (int i = 0; i < 6; ++i) {
            KillingTensorSpec kt;
            kt.k = kr.value();
            kt.b[static_cast<std::size_t>(i)] = 1.0;
            const bool rule = is_global({kr * mult[i]});
            if (seam_continuity(kt, kr.value(), 1.3) == rule) ++agree;
        }
    }
    list.add_exact("seam continuity matches frequency rule", agree == 42,
                   std::to_string(agree) + "/42");
    info["k"] = k.str();
}

int run_verify(const std::string& suite, const std::string& k_str, const std::string& params,
               const std::string& out) {
    const Rational k = parse_rational_strict(k_str);
    if (k.num <= 0) throw ConfigError("k must be positive");
    CheckList list;
    json report;
    report["suite"] = suite;
    report["seed"] = env_seed();
    json info;
    if (suite == "kc") {
        verify_kc(k, list, info);
    } else if (suite == "benenti") {
        const auto abc = parse_reals(params, 3);
        verify_benenti(EllipsoidalParams{abc[0], abc[1], abc[2]}, k, list, info);
    } else if (suite == "geometry") {
        verify_geometry(k, list, info);
    } else {
        throw ConfigError("suite must be kc|benenti|geometry");
    }
    report["info"] = info;
    report["checks"] = list.checks;
    report["all_pass"] = list.all_pass;
    emit(report, out);
    return list.all_pass ? kExitOk : kExitVerifyFailed;
}

// -------------------------------------------------------------- orbit ----

struct OrbitConfig {
    std::string system = "kc";
    double a = -1.0, k = 1.0;
    double alpha1 = 0.0, alpha2 = 0.0, omega = 0.0, h = 1.0;
    double Q = 0.0, E = 0.0, c1 = 0.0, c2 = 0.0;
    std::string state = "1,0,0,1";
    double dt = 1e-3;
    int steps = 10000;
    std::string out = "orbit";
};

int run_orbit(const OrbitConfig& cfg) {
    SystemSpec spec;
    if (cfg.system == "kc")
        spec.family = SystemFamily::KC;
    else if (cfg.system == "ttw")
        spec.family = SystemFamily::TTW;
    else if (cfg.system == "pw")
        spec.family = SystemFamily::PW;
    else if (cfg.system == "pw1")
        spec.family = SystemFamily::PW1;
    else if (cfg.system == "oscillator")
        spec.family = SystemFamily::Oscillator;
    else
        throw ConfigError("system must be kc|ttw|pw|pw1|oscillator");
    spec.a = cfg.a;
    spec.k = cfg.k;
    spec.alpha1 = cfg.alpha1;
    spec.alpha2 = cfg.alpha2;
    spec.omega = cfg.omega;
    spec.h = cfg.h;
    spec.Q = cfg.Q;
    spec.E = cfg.E;
    spec.c1 = cfg.c1;
    spec.c2 = cfg.c2;

    const auto sv = parse_reals(cfg.state, 4);
    const PhaseState s0{sv[0], sv[1], sv[2], sv[3]};
    if (!(s0.r > 0.0)) throw ConfigError("initial state must have r > 0");
    if (cfg.dt == 0.0 || cfg.steps < 1) throw ConfigError("dt must be nonzero, steps >= 1");

    const auto integrals = system_integrals(spec);
    const DualEvaluator H = [spec](const std::array<Dual, 4>& s) {
        return hamiltonian_eval<Dual>(spec, s);
    };
    Trajectory traj;
    try {
        traj = integrate(H, s0, cfg.dt, cfg.steps);
    } catch (const std::exception& e) {
        std::cerr << "integration failed: " << e.what() << "\n";
        return kExitTraceFailed;
    }
    write_file(cfg.out + ".csv", trajectory_csv(traj, integrals));

    json report;
    report["system"] = cfg.system;
    report["steps_requested"] = cfg.steps;
    report["steps_completed"] = traj.states.size() - 1;
    report["completed"] = traj.completed;
    if (!traj.completed) report["exit_reason"] = traj.exit_reason;
    const auto drift = conservation_drift(traj, integrals);
    json drifts;
    for (std::size_t i = 0; i < integrals.size(); ++i) drifts[integrals[i].name] = drift[i];
    report["drift"] = drifts;
    report["winding_number"] = winding_number(traj);
    emit(report, cfg.out + ".json");
    std::cout << "wrote " << cfg.out << ".csv and " << cfg.out << ".json\n";
    return traj.completed ? kExitOk : kExitTraceFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Separable webs, Killing algebra globality and superintegrable "
                 "dynamics on covering manifolds"};
    app.require_subcommand(1);

    WebConfig web;
    auto* cweb = app.add_subcommand("web", "trace a separable web to SVG/CSV");
    cweb->add_option("--family", web.family, "plane|sphere|benenti");
    cweb->add_option("--k", web.k_str, "covering parameter (rational or decimal)");
    cweb->add_option("--tensor", web.tensor, "elliptic|parabolic|polar|cartesian");
    cweb->add_option("--coeffs", web.coeffs, "explicit b1..b6 (overrides --tensor)");
    cweb->add_option("--c", web.sphere_c, "sphere tensor coefficients c1,c2,c3");
    cweb->add_option("--params", web.params, "ellipsoidal parameters a,b,c");
    cweb->add_option("--level", web.level, "eigenvalue level (benenti cloud)");
    cweb->add_option("--index", web.eigen_index, "eigenvalue index (benenti cloud)");
    cweb->add_option("--mode", web.mode, "nonconformal|conformal");
    cweb->add_option("--levels", web.levels, "contour levels per eigen index");
    cweb->add_option("--grid", web.grid, "marching-squares grid resolution");
    cweb->add_option("--radial-min", web.radial_min, "inner radial cutoff");
    cweb->add_option("--window", web.window, "plot half-width");
    cweb->add_option("--out", web.out, "output path prefix");
    cweb->add_option("--format", web.format, "svg|csv|both");

    std::string dim_family = "plane", dim_order = "vector", dim_k, dim_params, dim_out;
    auto* cdim = app.add_subcommand("dim", "global-dimension tables (exact rationals)");
    cdim->add_option("--family", dim_family, "plane|sphere|sphere3|cylinder");
    cdim->add_option("--order", dim_order, "vector|tensor2");
    cdim->add_option("--k", dim_k, "comma-separated rational list");
    cdim->add_option("--params", dim_params, "sphere3 parameters a,b,c (rationals)");
    cdim->add_option("--out", dim_out, "output JSON path (default stdout)");

    std::string ver_suite, ver_k = "2", ver_params = "1,4,8", ver_out;
    auto* cver = app.add_subcommand("verify", "property suites, JSON report");
    cver->add_option("--suite", ver_suite, "kc|benenti|geometry")->required();
    cver->add_option("--k", ver_k, "covering parameter (rational)");
    cver->add_option("--params", ver_params, "ellipsoidal parameters a,b,c");
    cver->add_option("--out", ver_out, "output JSON path (default stdout)");

    OrbitConfig orb;
    auto* corb = app.add_subcommand("orbit", "trajectory run with drift report");
    corb->set_help_flag("--help", "print help");  // frees -h / --h for the parameter
    corb->add_option("--system", orb.system, "kc|ttw|pw|pw1|oscillator");
    corb->add_option("--a", orb.a, "KC coupling");
    corb->add_option("--k", orb.k, "KC covering parameter");
    corb->add_option("--alpha1", orb.alpha1, "TTW/PW coupling");
    corb->add_option("--alpha2", orb.alpha2, "TTW/PW coupling");
    corb->add_option("--omega", orb.omega, "oscillator strength");
    corb->add_option("--h", orb.h, "angular parameter");
    corb->add_option("--Q", orb.Q, "PW coupling");
    corb->add_option("--E", orb.E, "PW1 coupling");
    corb->add_option("--c1", orb.c1, "PW1 coupling");
    corb->add_option("--c2", orb.c2, "PW1 coupling");
    corb->add_option("--state", orb.state, "initial r,phi,p_r,p_phi");
    corb->add_option("--dt", orb.dt, "time step");
    corb->add_option("--steps", orb.steps, "step count");
    corb->add_option("--out", orb.out, "output path prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitBadConfig;
    }

    try {
        if (cweb->parsed()) return run_web(web);
        if (cdim->parsed()) return run_dim(dim_family, dim_order, dim_k, dim_params, dim_out);
        if (cver->parsed()) return run_verify(ver_suite, ver_k, ver_params, ver_out);
        if (corb->parsed()) return run_orbit(orb);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitBadConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitTraceFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTraceFailed;
    }
    return kExitBadConfig;
}
