#ifndef COVERING_FLOW_HPP_
#define COVERING_FLOW_HPP_

#include <string>
#include <vector>

#include "covering/systems.hpp"

namespace covering {

// Implicit-midpoint trajectory. The angle is unwrapped (tracked on the real
// line) so winding numbers are well defined; r > 0 is enforced and domain
// exit halts integration at the last valid state.
struct Trajectory {
    double dt = 0.0;
    int order = 2;  // implicit midpoint is second order
    std::vector<double> times;
    std::vector<PhaseState> states;
    bool completed = true;
    int exit_step = -1;
    std::string exit_reason;
};

// Symplectic implicit-midpoint integration of Hamilton's equations for H,
// with fixed-point iteration to 1e-12 (max 50 iterations per step). dt may be
// negative (time reversal).
Trajectory integrate(const DualEvaluator& H, const PhaseState& s0, double dt, int n_steps);

// Max |I(s_t) - I(s_0)| per integral over the trajectory.
std::vector<double> conservation_drift(const Trajectory& t,
                                       const std::vector<FirstIntegral>& integrals);

// Total signed change of the (unwrapped) angle divided by 2 pi; magnitude
// >= 1 certifies a circuit around the origin.
double winding_number(const Trajectory& t);

}  // namespace covering

#endif  // COVERING_FLOW_HPP_
