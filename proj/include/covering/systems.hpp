#ifndef COVERING_SYSTEMS_HPP_
#define COVERING_SYSTEMS_HPP_

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "covering/dual.hpp"
#include "covering/rational.hpp"

namespace covering {

// Point of T*(M_k) in the polar chart. The angle is kept on the real line
// (unwrapped) so trajectories can wind; domain checks apply to r only.
struct PhaseState {
    double r = 1.0, phi = 0.0, p_r = 0.0, p_phi = 0.0;
    std::array<double, 4> as_array() const { return {r, phi, p_r, p_phi}; }
};

enum class SystemFamily {
    TTW,         // Eq.-(TTW1)/(TTW2) family: alpha1, alpha2, omega, h
    KC,          // Kepler-Coulomb on M_k: a, k
    PW,          // Post-Winternitz, literal p_r^2 normalization: alpha, beta, Q, h
    PW1,         // extension-procedure form: c1, c2, E, h
    Oscillator,  // TTW with couplings off: omega, h
};

enum class SystemForm { base_form, covering_form };

struct SystemSpec {
    SystemFamily family = SystemFamily::KC;
    SystemForm form = SystemForm::base_form;
    double alpha1 = 0.0, alpha2 = 0.0;  // TTW couplings; PW alpha/beta reuse these
    double omega = 0.0;
    double h = 1.0;
    double a = -1.0;      // KC coupling
    double k = 1.0;       // KC covering parameter
    double Q = 0.0;       // PW coupling
    double E = 0.0;       // PW1 coupling (E = -2a recovers KC)
    double c1 = 0.0, c2 = 0.0;

    // h -> k dictionary: k = 1/h for TTW/Oscillator, k = 2/h for PW/PW1,
    // k itself for KC.
    Rational covering_k(const Rational& param) const;
};

// Hamiltonian evaluation, generic over double / Dual.
template <class T>
T hamiltonian_eval(const SystemSpec& spec, const std::array<T, 4>& s);

double hamiltonian(const SystemSpec& spec, const PhaseState& s);

using Evaluator = std::function<double(const std::array<double, 4>&)>;
using DualEvaluator = std::function<Dual(const std::array<Dual, 4>&)>;

struct FirstIntegral {
    std::string name;
    int degree = 2;                       // polynomial degree in momenta
    std::vector<int> freq_multipliers;    // frequencies present, as multiples of k
    Evaluator f;
    DualEvaluator fdual;

    double operator()(const PhaseState& s) const { return f(s.as_array()); }
    bool global_for(const Rational& k) const;
};

template <class F>
FirstIntegral make_integral(std::string name, int degree, std::vector<int> freqs, F fn) {
    FirstIntegral out;
    out.name = std::move(name);
    out.degree = degree;
    out.freq_multipliers = std::move(freqs);
    out.f = fn;
    out.fdual = fn;
    return out;
}

// The three quadratic first integrals of the Kepler-Coulomb system on M_k.
struct KCIntegrals {
    FirstIntegral H, L, K;
};
KCIntegrals kc_integrals(double a, double k);

// Hamiltonian plus the registered separation-constant integrals of a system.
std::vector<FirstIntegral> system_integrals(const SystemSpec& spec);

// Canonical Poisson bracket {f, g} at s, by forward-mode dual differentiation.
double poisson_bracket(const DualEvaluator& f, const DualEvaluator& g, const PhaseState& s);
double poisson_bracket(const FirstIntegral& f, const FirstIntegral& g, const PhaseState& s);

// Independent oracle: Richardson-extrapolated central differences.
double poisson_bracket_fd(const Evaluator& f, const Evaluator& g, const PhaseState& s);

// Phase-space gradient (df/dr, df/dphi, df/dp_r, df/dp_phi) via duals.
std::array<double, 4> phase_gradient(const DualEvaluator& f, const std::array<double, 4>& s);

// Numerical rank of the stacked gradients (singular values above
// 1e-8 x largest).
int independence_rank(const std::vector<DualEvaluator>& fs, const PhaseState& s);
int independence_rank(const std::vector<FirstIntegral>& fs, const PhaseState& s);

// Globality / confinement classification per system regime.
struct IntegralVerdict {
    std::string name;
    bool global = true;
};
struct GlobalityReport {
    Rational parameter{1};       // the h or k handed in
    Rational k{1};               // translated covering parameter
    bool hamiltonian_global = true;
    bool frequency_rule_global = true;  // raw 2h-integrality (TTW) / k-integrality
    bool confined = false;
    bool well_defined = true;
    std::string verdict;
    std::vector<IntegralVerdict> integrals;
};
GlobalityReport globality_report(const SystemSpec& spec, const Rational& param);

// Jacobi separated solution of the KC system: W = W_r(r) + sqrt(2) k l phi.
struct JacobiOrbit {
    double r_min = 0.0, r_max = 0.0;  // radial turning points
    bool pure_radial = false;         // l = 0
    // orbit samples (r, phi - phi(r_min)) over one outward radial sweep
    std::vector<std::pair<double, double>> points;
};
JacobiOrbit kc_jacobi_orbit(double a, double k, double energy, double l, int n_samples = 200);

}  // namespace covering

#endif  // COVERING_SYSTEMS_HPP_
