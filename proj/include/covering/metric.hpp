#ifndef COVERING_METRIC_HPP_
#define COVERING_METRIC_HPP_

#include <Eigen/Dense>

#include "covering/chart.hpp"

namespace covering {

enum class MetricFamily {
    Plane2,   // dr^2 + k^2 r^2 dphi^2            on polar2
    Sphere2,  // dtheta^2 + k^2 sin^2(theta) dphi^2 on sphere2
    Euclid3,  // k^2 dr^2 + k^2 r^2 dtheta^2 + r^2 sin^2(theta) dphi^2 on spherical3
    Sphere3,  // a^2 deta^2 + b^2 sin^2(eta) dxi1^2 + c^2 cos^2(eta) dxi2^2 on hopf3
};

// Christoffel symbols Gamma^i_{jk}, symmetric in (j,k).
struct Christoffel {
    int dim = 0;
    double g[3][3][3] = {};
    double operator()(int i, int j, int k) const { return g[i][j][k]; }
};

// One member of the covering-metric catalog: a family plus its positive
// parameters (k, or (a,b,c) for the 3-sphere).
class MetricModel {
  public:
    static MetricModel Plane2(double k);
    static MetricModel Sphere2(double k);
    static MetricModel Euclid3(double k);
    static MetricModel Sphere3(double a, double b, double c);

    MetricFamily family() const { return family_; }
    Chart chart() const;
    int dim() const { return chart_dim(chart()); }
    double k() const { return k_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    std::string name() const;

    // g_ij at p (diagonal for every family in its natural chart).
    Eigen::MatrixXd components(const ChartPoint& p) const;
    Eigen::MatrixXd inverse(const ChartPoint& p) const;

    // Analytic partial derivatives d g_ij / d x^k.
    void derivatives(const ChartPoint& p, Eigen::MatrixXd dg[3]) const;

    Christoffel christoffel(const ChartPoint& p) const;

    // Gaussian curvature (2D) or the sectional curvature of the
    // (coordinate-1, coordinate-2) plane (3D). Constant over the manifold
    // for every catalog family.
    double curvature(const ChartPoint& p) const;

    // Frobenius norm of R^i_{jkl}; the flatness certificate for Plane2/Euclid3.
    double riemann_norm(const ChartPoint& p) const;

    // Raw-coordinate evaluation without domain checks (internal use by
    // samplers probing the seam phi = 2pi).
    Eigen::MatrixXd components_raw(const std::array<double, 3>& x) const;

  private:
    MetricModel(MetricFamily f, double k, double a, double b, double c);
    void check_chart(const ChartPoint& p) const;

    MetricFamily family_;
    double k_ = 1.0;
    double a_ = 1.0, b_ = 1.0, c_ = 1.0;
};

}  // namespace covering

#endif  // COVERING_METRIC_HPP_
