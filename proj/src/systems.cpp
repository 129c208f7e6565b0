#include "covering/systems.hpp"

#include <Eigen/Dense>

#include "covering/chart.hpp"
#include <cmath>
#include <stdexcept>

namespace covering {

Rational SystemSpec::covering_k(const Rational& param) const {
    switch (family) {
        case SystemFamily::TTW:
        case SystemFamily::Oscillator:
            return Rational(param.den, param.num);  // k = 1/h
        case SystemFamily::PW:
        case SystemFamily::PW1:
            return Rational(2 * param.den, param.num);  // k = 2/h
        case SystemFamily::KC:
            return param;
    }
    throw std::logic_error("covering_k: unknown family");
}

template <class T>
T hamiltonian_eval(const SystemSpec& spec, const std::array<T, 4>& s) {
    using std::cos;
    using std::sin;
    const T r = s[0], ang = s[1], pr = s[2], pang = s[3];
    const T half = T(0.5);
    switch (spec.family) {
        case SystemFamily::TTW: {
            if (spec.form == SystemForm::covering_form) {
                // angle is Phi = h phi
                T angular = half * pang * pang;
                if (spec.alpha1 != 0.0)
                    angular = angular + spec.alpha1 / (spec.h * spec.h * cos(ang) * cos(ang));
                if (spec.alpha2 != 0.0)
                    angular = angular + spec.alpha2 / (spec.h * spec.h * sin(ang) * sin(ang));
                return half * pr * pr + spec.h * spec.h / (r * r) * angular +
                       spec.omega * r * r;
            }
            T angular = half * pang * pang;
            if (spec.alpha1 != 0.0)
                angular = angular + spec.alpha1 / (cos(spec.h * ang) * cos(spec.h * ang));
            if (spec.alpha2 != 0.0)
                angular = angular + spec.alpha2 / (sin(spec.h * ang) * sin(spec.h * ang));
            return half * pr * pr + angular / (r * r) + spec.omega * r * r;
        }
        case SystemFamily::KC:
            return half * (pr * pr + pang * pang / (spec.k * spec.k * r * r)) + spec.a / r;
        case SystemFamily::PW: {
            // literal Eq. normalization: p_r^2 without the 1/2, -Q/(2r)
            T f2 = T(0.0);
            const T x = half * ang;  // f2 is evaluated at phi/2
            if (spec.alpha1 != 0.0)
                f2 = f2 + spec.h * spec.h * spec.alpha1 /
                              (cos(spec.h * x) * cos(spec.h * x));
            if (spec.alpha2 != 0.0)
                f2 = f2 + spec.h * spec.h * spec.alpha2 /
                              (sin(spec.h * x) * sin(spec.h * x));
            return pr * pr + (pang * pang + T(0.25) * f2) / (r * r) -
                   spec.Q / (T(2.0) * r);
        }
        case SystemFamily::PW1: {
            T angular = half * pang * pang;
            if (spec.c1 != 0.0 || spec.c2 != 0.0)
                angular = angular + (spec.c1 + spec.c2 * cos(ang)) / (sin(ang) * sin(ang));
            return half * pr * pr +
                   spec.h * spec.h / (T(4.0) * r * r) * angular -
                   spec.E / (T(2.0) * r);
        }
        case SystemFamily::Oscillator: {
            // exactly the TTW evaluator with the couplings off
            SystemSpec ttw = spec;
            ttw.family = SystemFamily::TTW;
            ttw.alpha1 = ttw.alpha2 = 0.0;
            return hamiltonian_eval<T>(ttw, s);
        }
    }
    throw std::logic_error("hamiltonian_eval: unknown family");
}

template double hamiltonian_eval<double>(const SystemSpec&, const std::array<double, 4>&);
template Dual hamiltonian_eval<Dual>(const SystemSpec&, const std::array<Dual, 4>&);

namespace {

void check_state(const SystemSpec& spec, const PhaseState& s) {
    if (!(s.r > 0.0) || !std::isfinite(s.r) || !std::isfinite(s.phi) ||
        !std::isfinite(s.p_r) || !std::isfinite(s.p_phi))
        throw std::domain_error("hamiltonian: state outside the chart (r <= 0 or non-finite)");
    const double tol = 1e-8;
    auto near_zero = [tol](double x) { return std::abs(x) < tol; };
    switch (spec.family) {
        case SystemFamily::TTW: {
            const double arg =
                spec.form == SystemForm::covering_form ? s.phi : spec.h * s.phi;
            if (spec.alpha1 != 0.0 && near_zero(std::cos(arg)))
                throw std::domain_error("hamiltonian: singular ray cos = 0");
            if (spec.alpha2 != 0.0 && near_zero(std::sin(arg)))
                throw std::domain_error("hamiltonian: singular ray sin = 0");
            break;
        }
        case SystemFamily::PW: {
            const double arg = spec.h * s.phi * 0.5;
            if (spec.alpha1 != 0.0 && near_zero(std::cos(arg)))
                throw std::domain_error("hamiltonian: singular ray cos = 0");
            if (spec.alpha2 != 0.0 && near_zero(std::sin(arg)))
                throw std::domain_error("hamiltonian: singular ray sin = 0");
            break;
        }
        case SystemFamily::PW1:
            if ((spec.c1 != 0.0 || spec.c2 != 0.0) && near_zero(std::sin(s.phi)))
                throw std::domain_error("hamiltonian: singular ray sin = 0");
            break;
        default:
            break;
    }
}

}  // namespace

double hamiltonian(const SystemSpec& spec, const PhaseState& s) {
    check_state(spec, s);
    return hamiltonian_eval<double>(spec, s.as_array());
}

bool FirstIntegral::global_for(const Rational& k) const {
    for (int m : freq_multipliers)
        if (!(k * m).is_integer()) return false;
    return true;
}

KCIntegrals kc_integrals(double a, double k) {
    if (!(k > 0.0)) throw std::invalid_argument("kc_integrals: k must be positive");
    KCIntegrals out;
    out.H = make_integral("H", 2, {0}, [a, k](const auto& s) {
        using std::sin;
        const auto r = s[0], pr = s[2], pphi = s[3];
        return decltype(r)(0.5) * (pr * pr + pphi * pphi / (k * k * r * r)) + a / r;
    });
    out.L = make_integral("L", 2, {0}, [k](const auto& s) {
        const auto pphi = s[3];
        return pphi * pphi / (2.0 * k * k);
    });
    out.K = make_integral("K", 2, {1}, [a, k](const auto& s) {
        using std::cos;
        using std::sin;
        const auto r = s[0], phi = s[1], pr = s[2], pphi = s[3];
        // The potential term carries 1/(2k^2): with a bare `a sin(k phi)` the
        // bracket with H leaves a residue a cos(k phi) p_phi / r^2 *
        // (1/(2k^3) - 1/k), so K would not be a first integral. With this
        // normalization {H, K} vanishes identically for every k.
        return decltype(r)(0.5) * (-cos(k * phi) / (k * k * k) * pr * pphi +
                                   sin(k * phi) / (k * k * k * k * r) * pphi * pphi) +
               a * sin(k * phi) / (2.0 * k * k);
    });
    return out;
}

std::vector<FirstIntegral> system_integrals(const SystemSpec& spec) {
    std::vector<FirstIntegral> out;
    out.push_back(make_integral("H", 2, std::vector<int>{}, [spec](const auto& s) {
        return hamiltonian_eval<std::decay_t<decltype(s[0])>>(spec, s);
    }));
    switch (spec.family) {
        case SystemFamily::KC: {
            auto kc = kc_integrals(spec.a, spec.k);
            out.push_back(kc.L);
            out.push_back(kc.K);
            break;
        }
        case SystemFamily::TTW: {
            const bool coupled = spec.alpha1 != 0.0 || spec.alpha2 != 0.0;
            const double h = spec.h;
            const bool cov = spec.form == SystemForm::covering_form;
            out.push_back(make_integral(
                "I2", 2, coupled ? std::vector<int>{1} : std::vector<int>{},
                [spec, h, cov](const auto& s) {
                    using std::cos;
                    using std::sin;
                    const auto ang = s[1], pphi = s[3];
                    const auto arg = cov ? ang : h * ang;
                    auto v = decltype(ang)(0.5) * pphi * pphi;
                    const double scale = cov ? h * h : 1.0;
                    if (spec.alpha1 != 0.0)
                        v = v + spec.alpha1 / (scale * cos(arg) * cos(arg));
                    if (spec.alpha2 != 0.0)
                        v = v + spec.alpha2 / (scale * sin(arg) * sin(arg));
                    return v;
                }));
            break;
        }
        case SystemFamily::PW: {
            const double h = spec.h;
            out.push_back(make_integral(
                "I2", 2,
                (spec.alpha1 != 0.0 || spec.alpha2 != 0.0) ? std::vector<int>{1}
                                                           : std::vector<int>{},
                [spec, h](const auto& s) {
                    using std::cos;
                    using std::sin;
                    const auto ang = s[1], pphi = s[3];
                    auto v = pphi * pphi;
                    const auto x = decltype(ang)(0.5) * ang;
                    if (spec.alpha1 != 0.0)
                        v = v + 0.25 * h * h * spec.alpha1 / (cos(h * x) * cos(h * x));
                    if (spec.alpha2 != 0.0)
                        v = v + 0.25 * h * h * spec.alpha2 / (sin(h * x) * sin(h * x));
                    return v;
                }));
            break;
        }
        case SystemFamily::PW1:
            out.push_back(make_integral(
                "I2", 2,
                (spec.c1 != 0.0 || spec.c2 != 0.0) ? std::vector<int>{1}
                                                   : std::vector<int>{},
                [spec](const auto& s) {
                    using std::cos;
                    using std::sin;
                    const auto ang = s[1], pphi = s[3];
                    auto v = decltype(ang)(0.5) * pphi * pphi;
                    if (spec.c1 != 0.0 || spec.c2 != 0.0)
                        v = v + (spec.c1 + spec.c2 * cos(ang)) / (sin(ang) * sin(ang));
                    return v;
                }));
            break;
        case SystemFamily::Oscillator:
            out.push_back(make_integral("L", 2, std::vector<int>{}, [](const auto& s) {
                const auto pphi = s[3];
                return decltype(pphi)(0.5) * pphi * pphi;
            }));
            break;
    }
    return out;
}

std::array<double, 4> phase_gradient(const DualEvaluator& f, const std::array<double, 4>& s) {
    std::array<double, 4> grad{};
    for (int i = 0; i < 4; ++i) {
        std::array<Dual, 4> d;
        for (int j = 0; j < 4; ++j) d[static_cast<std::size_t>(j)] = Dual(s[static_cast<std::size_t>(j)], i == j ? 1.0 : 0.0);
        grad[static_cast<std::size_t>(i)] = f(d).d;
    }
    return grad;
}

double poisson_bracket(const DualEvaluator& f, const DualEvaluator& g, const PhaseState& s) {
    const auto df = phase_gradient(f, s.as_array());
    const auto dg = phase_gradient(g, s.as_array());
    for (double v : df)
        if (!std::isfinite(v))
            throw std::domain_error("poisson_bracket: non-finite partial derivative");
    for (double v : dg)
        if (!std::isfinite(v))
            throw std::domain_error("poisson_bracket: non-finite partial derivative");
    // (q0, q1, p0, p1) layout: dq_i pairs with dp_i = index i+2
    return df[0] * dg[2] - df[2] * dg[0] + df[1] * dg[3] - df[3] * dg[1];
}

double poisson_bracket(const FirstIntegral& f, const FirstIntegral& g, const PhaseState& s) {
    return poisson_bracket(f.fdual, g.fdual, s);
}

namespace {

double fd_partial(const Evaluator& f, std::array<double, 4> s, int i) {
    const std::size_t c = static_cast<std::size_t>(i);
    const double h = 1e-6 * std::max(1.0, std::abs(s[c]));
    auto central = [&](double hh) {
        auto sp = s, sm = s;
        sp[c] += hh;
        sm[c] -= hh;
        return (f(sp) - f(sm)) / (2.0 * hh);
    };
    return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

}  // namespace

double poisson_bracket_fd(const Evaluator& f, const Evaluator& g, const PhaseState& s) {
    const auto x = s.as_array();
    double out = 0.0;
    for (int i = 0; i < 2; ++i)
        out += fd_partial(f, x, i) * fd_partial(g, x, i + 2) -
               fd_partial(f, x, i + 2) * fd_partial(g, x, i);
    return out;
}

int independence_rank(const std::vector<DualEvaluator>& fs, const PhaseState& s) {
    if (fs.empty()) return 0;
    Eigen::MatrixXd G(static_cast<Eigen::Index>(fs.size()), 4);
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const auto grad = phase_gradient(fs[i], s.as_array());
        for (int j = 0; j < 4; ++j) {
            if (!std::isfinite(grad[static_cast<std::size_t>(j)]))
                throw std::domain_error("independence_rank: non-finite gradient");
            G(static_cast<Eigen::Index>(i), j) = grad[static_cast<std::size_t>(j)];
        }
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(G);
    const double cutoff = 1e-8 * svd.singularValues()(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > cutoff) ++rank;
    return rank;
}

int independence_rank(const std::vector<FirstIntegral>& fs, const PhaseState& s) {
    std::vector<DualEvaluator> evals;
    evals.reserve(fs.size());
    for (const auto& f : fs) evals.push_back(f.fdual);
    return independence_rank(evals, s);
}

GlobalityReport globality_report(const SystemSpec& spec, const Rational& param) {
    GlobalityReport rep;
    rep.parameter = param;
    rep.k = spec.covering_k(param);
    const Rational& k = rep.k;

    switch (spec.family) {
        case SystemFamily::KC: {
            rep.hamiltonian_global = true;
            rep.frequency_rule_global = true;
            rep.confined = false;
            rep.verdict = k.is_integer()
                              ? "K global: quadratically superintegrable on M_k"
                              : "K not global: quadratic superintegrability fails for "
                                "non-integer k; Jacobi-method orbits remain well defined";
            break;
        }
        case SystemFamily::TTW:
        case SystemFamily::PW: {
            const bool a1 = spec.alpha1 != 0.0, a2 = spec.alpha2 != 0.0;
            const Rational h = param;
            const bool half_or_int = (h * 2).is_integer();
            rep.frequency_rule_global = half_or_int;
            if (!a1 && !a2) {
                rep.hamiltonian_global = true;  // no angular dependence left
                rep.confined = false;
                rep.verdict =
                    "oscillator regime: globality decided per integral on M_k";
            } else if (!a2 && a1 && 4 * h.num < h.den) {  // h < 1/4
                rep.hamiltonian_global = false;
                rep.confined = false;
                rep.well_defined = false;
                rep.verdict = "not well defined";
            } else {
                rep.hamiltonian_global = half_or_int;
                rep.confined = true;
                rep.verdict =
                    "defined for h integer or half-integer; dynamics confined between "
                    "singular rays";
            }
            break;
        }
        case SystemFamily::PW1:
            rep.hamiltonian_global = true;  // written in plain phi on E^2
            rep.confined = spec.c1 != 0.0 || spec.c2 != 0.0;
            rep.verdict = "base-plane form: always globally defined";
            break;
        case SystemFamily::Oscillator:
            rep.hamiltonian_global = true;
            rep.confined = false;
            rep.verdict = "oscillator regime: globality decided per integral on M_k";
            break;
    }
    for (const auto& integral : system_integrals(spec))
        rep.integrals.push_back({integral.name, integral.global_for(k)});
    return rep;
}

JacobiOrbit kc_jacobi_orbit(double a, double k, double energy, double l, int n_samples) {
    if (!(k > 0.0)) throw std::invalid_argument("kc_jacobi_orbit: k must be positive");
    if (n_samples < 8) throw std::invalid_argument("kc_jacobi_orbit: too few samples");
    JacobiOrbit orb;
    if (l == 0.0) {
        // W_phi = 0: purely radial motion up to the turning radius a/E
        orb.pure_radial = true;
        if (energy >= 0.0 || a >= 0.0)
            throw std::domain_error("kc_jacobi_orbit: unbounded radial motion");
        orb.r_min = 0.0;
        orb.r_max = a / energy;
        for (int i = 1; i <= n_samples; ++i)
            orb.points.emplace_back(orb.r_max * i / n_samples, 0.0);
        return orb;
    }
    if (energy >= 0.0)
        throw std::domain_error("kc_jacobi_orbit: only bound orbits (E < 0) are supported");
    // turning points: E r^2 - a r - l^2 = 0
    const double disc = a * a + 4.0 * energy * l * l;
    if (disc < -1e-14)
        throw std::domain_error("kc_jacobi_orbit: empty classically allowed region");
    const double root = std::sqrt(std::max(disc, 0.0));
    orb.r_min = (a + root) / (2.0 * energy);
    orb.r_max = (a - root) / (2.0 * energy);
    if (orb.r_min > orb.r_max) std::swap(orb.r_min, orb.r_max);
    if (!(orb.r_min > 0.0))
        throw std::domain_error("kc_jacobi_orbit: empty classically allowed region");
    if (orb.r_max - orb.r_min < 1e-12) {  // circular orbit
        orb.points.emplace_back(orb.r_min, 0.0);
        return orb;
    }
    // substitute r = m + A sin(s): dphi = l ds / (k r sqrt(-E)), smooth in s
    const double m = 0.5 * (orb.r_min + orb.r_max), A = 0.5 * (orb.r_max - orb.r_min);
    const double c = l / (k * std::sqrt(-energy));
    const int n = n_samples + (n_samples % 2);  // even panel count for Simpson
    const double ds = kPi / n;
    auto integrand = [&](double s) { return c / (m + A * std::sin(s)); };
    double phi = 0.0;
    double s_prev = -0.5 * kPi;
    orb.points.emplace_back(orb.r_min, 0.0);
    for (int i = 1; i <= n; ++i) {
        const double s = -0.5 * kPi + ds * i;
        const double mid = 0.5 * (s_prev + s);
        phi += ds / 6.0 * (integrand(s_prev) + 4.0 * integrand(mid) + integrand(s));
        orb.points.emplace_back(m + A * std::sin(s), phi);
        s_prev = s;
    }
    return orb;
}

}  // namespace covering
