#ifndef COVERING_KILLING_HPP_
#define COVERING_KILLING_HPP_

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "covering/metric.hpp"
#include "covering/rational.hpp"

namespace covering {

// Killing vector of the Plane2 covering metric, coefficient form:
//   V^r   = a3 sin(k phi) - a2 cos(k phi)
//   V^phi = (a3 cos(k phi) + a2 sin(k phi) + a1 r) / (k r)
// a1 generates the rotation (1/k) d_phi; a2/a3 generate the translations.
// Frequency content: a1 -> 0, a2/a3 -> k.
struct KillingVectorSpec {
    std::array<double, 3> a{0.0, 0.0, 0.0};
    double k = 1.0;
};

// Symmetric Killing 2-tensor, coefficient form (contravariant components;
// the mixed coefficient of the symmetric product is split evenly so that
// the b4 tensor is exactly the inverse metric):
//   K^rr     = -b5 sin(2k phi) - b6 cos(2k phi) + b4
//   2 K^rphi = (b3 r sin(k phi) - b2 r cos(k phi)
//               + 2 b6 sin(2k phi) - 2 b5 cos(2k phi)) / (k r)
//   K^phiphi = (b2 r sin(k phi) + b3 r cos(k phi) + b1 r^2
//               + b5 sin(2k phi) + b6 cos(2k phi) + b4) / (k^2 r^2)
// Frequency content: b1/b4 -> 0, b2/b3 -> k, b5/b6 -> 2k.
struct KillingTensorSpec {
    std::array<double, 6> b{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    double k = 1.0;
};

Eigen::Vector2d killing_vector_raw(const KillingVectorSpec& spec, double r, double phi);
Eigen::Vector2d killing_vector(const KillingVectorSpec& spec, const ChartPoint& p);

Eigen::Matrix2d killing_tensor_raw(const KillingTensorSpec& spec, double r, double phi);
Eigen::Matrix2d killing_tensor(const KillingTensorSpec& spec, const ChartPoint& p);

// Generic fields evaluated at raw chart coordinates; used for residuals of
// both the closed-form specs above and ad-hoc fields in tests.
using VectorField = std::function<Eigen::VectorXd(const std::array<double, 3>&)>;
using TensorField = std::function<Eigen::MatrixXd(const std::array<double, 3>&)>;

// Max over samples of |sym grad| of the field: ||nabla^(i xi^j)|| for vectors,
// ||nabla^(i K^jk)|| (full symmetrization) for tensors. A value below ~1e-6
// certifies the Killing property at the tested points.
double killing_residual(const VectorField& field, const MetricModel& model,
                        const std::vector<ChartPoint>& samples);
double killing_residual(const TensorField& field, const MetricModel& model,
                        const std::vector<ChartPoint>& samples);

double killing_residual(const KillingVectorSpec& spec, const MetricModel& model,
                        const std::vector<ChartPoint>& samples);
double killing_residual(const KillingTensorSpec& spec, const MetricModel& model,
                        const std::vector<ChartPoint>& samples);

// True iff every frequency is an integer (2pi-periodicity in phi). Exact.
bool is_global(const std::vector<Rational>& freqs);

enum class FieldOrder { vector, tensor2 };

struct GlobalDimension {
    int dimension = 0;
    std::vector<std::string> surviving;  // names of surviving coefficients
};

// Dimension of the globally defined subspace via the periodicity rule,
// exact rational arithmetic. Plane2 and Sphere2 share the coefficient
// scheme; Sphere3 uses the six-form catalog with ratios b/a, c/a.
GlobalDimension global_dimension(FieldOrder order, const Rational& k);
GlobalDimension global_dimension_sphere3(FieldOrder order, const Rational& b_over_a,
                                         const Rational& c_over_a);

// Flat cylinder regression case (dz^2 + dpsi^2, psi periodic): the same
// periodicity filter applied to the E^2 basis, where the rotation generator
// is polynomial in psi and can never be periodic.
GlobalDimension cylinder_global_dimension(FieldOrder order);

// The six Killing one-forms of the Sphere3(a,b,c) metric, hopf3 chart,
// covariant components (d eta, d xi1, d xi2). j in 1..6.
Eigen::Vector3d s3_killing_form(int j, double a, double b, double c, const ChartPoint& p);
Eigen::Vector3d s3_killing_form_raw(int j, double a, double b, double c,
                                    const std::array<double, 3>& x);

}  // namespace covering

#endif  // COVERING_KILLING_HPP_
