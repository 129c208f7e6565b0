#ifndef COVERING_BENENTI_HPP_
#define COVERING_BENENTI_HPP_

#include <Eigen/Dense>
#include <vector>

#include "covering/killing.hpp"
#include "covering/metric.hpp"

namespace covering {

// Ellipsoidal-family parameters; distinct values generate a genuine web.
struct EllipsoidalParams {
    double a = 1.0, b = 4.0, c = 8.0;
    bool distinct() const;
};

// The ellipsoidal Benenti tensor on Cartesian E^3:
// [[a+x^2, xy, xz], [xy, b+y^2, yz], [xz, yz, c+z^2]].
Eigen::Matrix3d ellipsoidal_L(const EllipsoidalParams& par, const Eigen::Vector3d& xyz);

// Benenti recursion on a (1,1)-tensor (matrix as linear operator):
// K_0 = I, K_a = (1/a) tr(K_{a-1} L) I - K_{a-1} L. Returns K_0 .. K_{n-1}.
std::vector<Eigen::Matrix3d> benenti_recursion(const Eigen::Matrix3d& L, int n);

// Covering map (M_k, g_k) -> E^3:
// x = k r sin(theta) cos(phi/k), y = k r sin(theta) sin(phi/k), z = k r cos(theta).
Eigen::Vector3d covering_transform3_raw(const std::array<double, 3>& x, double k);
Eigen::Vector3d covering_transform3(const ChartPoint& p, double k);

// Analytic Jacobian d(x,y,z)/d(r,theta,phi) of the covering map.
Eigen::Matrix3d covering_jacobian3(const std::array<double, 3>& x, double k);

// Mixed-index pullback L' = J^{-1} L J of the ellipsoidal tensor to the
// covering chart; singular at theta in {0, pi}.
Eigen::Matrix3d pullback_L_raw(const EllipsoidalParams& par, double k,
                               const std::array<double, 3>& x);
Eigen::Matrix3d pullback_L(const EllipsoidalParams& par, double k, const ChartPoint& p);

// Killing residual of a (1,1)-tensor-valued field on flat Cartesian space:
// max over samples of the symmetrized partial derivative (the metric is the
// identity, so mixed and contravariant components coincide).
using MixedField3 = std::function<Eigen::Matrix3d(const Eigen::Vector3d&)>;
double cartesian_killing_residual(const MixedField3& field,
                                  const std::vector<Eigen::Vector3d>& samples);

// Sorted (ascending) eigenvalues of a mixed-index tensor that is similar to a
// symmetric one; throws if a non-negligible imaginary part shows up.
Eigen::Vector3d mixed_eigenvalues(const Eigen::Matrix3d& mixed);

struct SurfaceGrid {
    double r_min = 0.3, r_max = 2.0;
    int n_r = 40;
    double theta_margin = 0.1;
    int n_theta = 40;
    int n_phi = 72;
};

struct CloudPoint {
    int eigen_index;  // 1..3
    double level;
    double x, y, z;  // plot-space Cartesian via covering_transform3
};

// Samples the grid and keeps points where the selected eigenvalue of L' is
// within half a grid cell's field variation of the level. Empty result is
// allowed (level outside range). Rejects coincident ellipsoidal parameters.
std::vector<CloudPoint> eigen_surface_sample(const EllipsoidalParams& par, double k,
                                             double level, int eigen_index,
                                             const SurfaceGrid& grid);

}  // namespace covering

#endif  // COVERING_BENENTI_HPP_
