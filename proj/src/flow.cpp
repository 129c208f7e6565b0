#include "covering/flow.hpp"

#include <cmath>
#include <stdexcept>

#include "covering/chart.hpp"

namespace covering {

namespace {

using Phase = std::array<double, 4>;

// Hamiltonian vector field: dq/dt = dH/dp, dp/dt = -dH/dq in the
// (r, phi, p_r, p_phi) layout.
Phase vector_field(const DualEvaluator& H, const Phase& z) {
    const auto g = phase_gradient(H, z);
    return {g[2], g[3], -g[0], -g[1]};
}

bool finite(const Phase& z) {
    for (double c : z)
        if (!std::isfinite(c)) return false;
    return true;
}

}  // namespace

Trajectory integrate(const DualEvaluator& H, const PhaseState& s0, double dt, int n_steps) {
    if (dt == 0.0) throw std::invalid_argument("integrate: dt must be nonzero");
    if (n_steps < 0) throw std::invalid_argument("integrate: n_steps must be nonnegative");
    if (!(s0.r > 0.0)) throw std::domain_error("integrate: initial state has r <= 0");

    Trajectory out;
    out.dt = dt;
    out.times.reserve(static_cast<std::size_t>(n_steps) + 1);
    out.states.reserve(static_cast<std::size_t>(n_steps) + 1);
    out.times.push_back(0.0);
    out.states.push_back(s0);

    Phase z = s0.as_array();
    for (int step = 0; step < n_steps; ++step) {
        // Implicit midpoint: z1 = z + dt f((z + z1)/2), solved by fixed point.
        Phase z1 = z;
        bool converged = false;
        bool left_domain = false;
        for (int it = 0; it < 50; ++it) {
            const Phase mid = {0.5 * (z[0] + z1[0]), 0.5 * (z[1] + z1[1]),
                               0.5 * (z[2] + z1[2]), 0.5 * (z[3] + z1[3])};
            if (!(mid[0] > 1e-9)) {
                left_domain = true;
                break;
            }
            const Phase f = vector_field(H, mid);
            Phase next;
            double delta = 0.0;
            for (int c = 0; c < 4; ++c) {
                next[static_cast<std::size_t>(c)] =
                    z[static_cast<std::size_t>(c)] + dt * f[static_cast<std::size_t>(c)];
                delta = std::max(delta, std::abs(next[static_cast<std::size_t>(c)] -
                                                 z1[static_cast<std::size_t>(c)]));
            }
            z1 = next;
            if (!finite(z1)) {
                left_domain = true;
                break;
            }
            if (delta < 1e-12) {
                converged = true;
                break;
            }
        }
        if (left_domain || !(z1[0] > 1e-9)) {
            out.completed = false;
            out.exit_step = step;
            out.exit_reason = "domain exit (r -> 0)";
            return out;
        }
        if (!converged) {
            out.completed = false;
            out.exit_step = step;
            // A step that would cross most of the remaining distance to the
            // puncture is a boundary hit, not an integrator failure.
            out.exit_reason = (std::abs(dt * z[2]) > 0.25 * z[0])
                                  ? "domain exit (r -> 0)"
                                  : "fixed-point iteration did not converge";
            return out;
        }
        z = z1;
        out.times.push_back(static_cast<double>(step + 1) * dt);
        out.states.push_back({z[0], z[1], z[2], z[3]});
    }
    return out;
}

std::vector<double> conservation_drift(const Trajectory& t,
                                       const std::vector<FirstIntegral>& integrals) {
    if (t.states.empty()) throw std::invalid_argument("conservation_drift: empty trajectory");
    std::vector<double> out(integrals.size(), 0.0);
    std::vector<double> initial(integrals.size());
    for (std::size_t i = 0; i < integrals.size(); ++i) initial[i] = integrals[i](t.states.front());
    for (const auto& s : t.states)
        for (std::size_t i = 0; i < integrals.size(); ++i)
            out[i] = std::max(out[i], std::abs(integrals[i](s) - initial[i]));
    return out;
}

double winding_number(const Trajectory& t) {
    if (t.states.empty()) throw std::invalid_argument("winding_number: empty trajectory");
    for (const auto& s : t.states)
        if (!(s.r > 0.0)) throw std::domain_error("winding_number: trajectory crosses r = 0");
    return (t.states.back().phi - t.states.front().phi) / kTwoPi;
}

}  // namespace covering
