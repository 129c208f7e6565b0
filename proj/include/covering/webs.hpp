#ifndef COVERING_WEBS_HPP_
#define COVERING_WEBS_HPP_

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "covering/killing.hpp"
#include "covering/metric.hpp"
#include "covering/sector.hpp"

namespace covering {

// Eigen-decomposition of the endomorphism K^i_j = K^{il} g_{lj}.
// Eigenvalues sorted ascending; eigenvectors are g-orthogonal whenever the
// eigenvalues are distinct.
struct EigenData {
    double rho1 = 0.0, rho2 = 0.0;
    Eigen::Vector2d v1, v2;
    bool degenerate = false;  // |rho1 - rho2| < 1e-10
};

EigenData eigen_of(const KillingTensorSpec& K, const MetricModel& model, const ChartPoint& p);

// Generic 2x2 version on raw contravariant components and metric.
EigenData eigen_decompose(const Eigen::Matrix2d& K_contra, const Eigen::Matrix2d& g);

// One traced level curve of a Killing-tensor eigenvalue, in plot-plane
// coordinates.
struct WebCurve {
    int eigen_index = 1;  // 1 or 2
    double level = 0.0;
    std::vector<std::pair<double, double>> points;
    bool closed = false;
};

struct PlotWindow {
    double x_min = -3.0, x_max = 3.0, y_min = -3.0, y_max = 3.0;
};

struct TraceOptions {
    int grid_radial = 400;
    int grid_angular = 400;
    int levels = 8;           // per eigen index
    PlotMode mode = PlotMode::nonconformal;
    double radial_min = 0.05; // inner cutoff (the puncture r=0 is excluded)
};

// Scalar field on raw chart coordinates (radial, angular).
using ScalarField2 = std::function<double(double, double)>;

// Marching-squares isocontour extraction over a [radial] x [angular] grid,
// with polylines chained in the plot plane so that curves of 2pi-periodic
// fields reconnect across the seam phi = 0 == 2pi.
std::vector<WebCurve> trace_scalar_field(const ScalarField2& field, int eigen_index,
                                         double radial_min, double radial_max,
                                         const TraceOptions& opt, double k);

std::vector<WebCurve> trace_web(const KillingTensorSpec& K, const MetricModel& model,
                                const PlotWindow& window, const TraceOptions& opt);

// Parabolic chart of the Plane2 family.
std::pair<double, double> parabolic_from_polar(const ChartPoint& p, double k);
ChartPoint polar_from_parabolic(double u, double v, double k);
Eigen::Matrix2d parabolic_metric(double u, double v, double k);

// The characteristic tensor whose eigenvalues are the parabolic coordinates
// (u, v): b2 = 1/k^2, all other coefficients zero.
KillingTensorSpec parabolic_tensor(double k);

// True iff every component of K at (r_probe, phi -> 2pi) matches phi = 0
// within 1e-9, i.e. all frequencies of K are integers.
bool seam_continuity(const KillingTensorSpec& K, double k, double r_probe);

// Killing 2-tensors of the Sphere2 covering metric as coefficient
// combinations of the squared rotation generators: K = c1 X.X + c2 Y.Y
// + c3 Z.Z with X = sin(k phi) d_theta + cot(theta) cos(k phi)/k d_phi,
// Y = cos(k phi) d_theta - cot(theta) sin(k phi)/k d_phi, Z = (1/k) d_phi.
struct SphereTensorSpec {
    std::array<double, 3> c{1.0, 2.0, 3.0};
    double k = 1.0;
};

Eigen::Matrix2d sphere_killing_tensor_raw(const SphereTensorSpec& spec, double theta,
                                          double phi);
bool sphere_seam_continuity(const SphereTensorSpec& spec, double theta_probe);

// Web of the Sphere2 tensor, drawn with theta as the radial plot coordinate
// (view from above the pole). The tensor is certified by killing_residual
// before tracing.
std::vector<WebCurve> spherical_conical_web(const SphereTensorSpec& spec,
                                            const TraceOptions& opt);

// Euclidean angles (degrees, in [0,90]) at crossings between curves of the
// two eigenvalue families of a nonconformally plotted Plane2 web. Crossing
// locations come from polyline intersection; tangent directions from the
// eigenvalue-field gradients at the crossing.
std::vector<double> crossing_angles(const std::vector<WebCurve>& curves,
                                    const KillingTensorSpec& K, const MetricModel& model);

}  // namespace covering

#endif  // COVERING_WEBS_HPP_
