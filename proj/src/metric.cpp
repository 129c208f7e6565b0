#include "covering/metric.hpp"

#include <cmath>
#include <stdexcept>

namespace covering {

MetricModel::MetricModel(MetricFamily f, double k, double a, double b, double c)
    : family_(f), k_(k), a_(a), b_(b), c_(c) {
    if (k <= 0.0 || a <= 0.0 || b <= 0.0 || c <= 0.0)
        throw std::invalid_argument("MetricModel: parameters must be strictly positive");
}

MetricModel MetricModel::Plane2(double k) { return {MetricFamily::Plane2, k, 1, 1, 1}; }
MetricModel MetricModel::Sphere2(double k) { return {MetricFamily::Sphere2, k, 1, 1, 1}; }
MetricModel MetricModel::Euclid3(double k) { return {MetricFamily::Euclid3, k, 1, 1, 1}; }
MetricModel MetricModel::Sphere3(double a, double b, double c) {
    return {MetricFamily::Sphere3, 1, a, b, c};
}

Chart MetricModel::chart() const {
    switch (family_) {
        case MetricFamily::Plane2: return Chart::polar2;
        case MetricFamily::Sphere2: return Chart::sphere2;
        case MetricFamily::Euclid3: return Chart::spherical3;
        case MetricFamily::Sphere3: return Chart::hopf3;
    }
    return Chart::polar2;
}

std::string MetricModel::name() const {
    switch (family_) {
        case MetricFamily::Plane2: return "Plane2";
        case MetricFamily::Sphere2: return "Sphere2";
        case MetricFamily::Euclid3: return "Euclid3";
        case MetricFamily::Sphere3: return "Sphere3";
    }
    return "?";
}

void MetricModel::check_chart(const ChartPoint& p) const {
    if (p.chart != chart())
        throw std::invalid_argument("MetricModel " + name() + ": point is in chart " +
                                    chart_name(p.chart) + ", expected " + chart_name(chart()));
}

Eigen::MatrixXd MetricModel::components_raw(const std::array<double, 3>& x) const {
    const int n = dim();
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
    switch (family_) {
        case MetricFamily::Plane2: {
            const double r = x[0];
            g(0, 0) = 1.0;
            g(1, 1) = k_ * k_ * r * r;
            break;
        }
        case MetricFamily::Sphere2: {
            const double s = std::sin(x[0]);
            g(0, 0) = 1.0;
            g(1, 1) = k_ * k_ * s * s;
            break;
        }
        case MetricFamily::Euclid3: {
            const double r = x[0], s = std::sin(x[1]);
            g(0, 0) = k_ * k_;
            g(1, 1) = k_ * k_ * r * r;
            g(2, 2) = r * r * s * s;
            break;
        }
        case MetricFamily::Sphere3: {
            const double se = std::sin(x[0]), ce = std::cos(x[0]);
            g(0, 0) = a_ * a_;
            g(1, 1) = b_ * b_ * se * se;
            g(2, 2) = c_ * c_ * ce * ce;
            break;
        }
    }
    return g;
}

Eigen::MatrixXd MetricModel::components(const ChartPoint& p) const {
    check_chart(p);
    return components_raw(p.x);
}

Eigen::MatrixXd MetricModel::inverse(const ChartPoint& p) const {
    check_chart(p);
    const Eigen::MatrixXd g = components_raw(p.x);
    Eigen::MatrixXd gi = Eigen::MatrixXd::Zero(g.rows(), g.cols());
    for (int i = 0; i < g.rows(); ++i) gi(i, i) = 1.0 / g(i, i);  // catalog metrics are diagonal
    return gi;
}

namespace {

// d g_ij / d x^k, closed form per family.
void derivatives_raw(const MetricModel& m, const std::array<double, 3>& x,
                     Eigen::MatrixXd dg[3]) {
    const int n = m.dim();
    for (int kk = 0; kk < 3; ++kk) dg[kk] = Eigen::MatrixXd::Zero(n, n);
    const double k = m.k();
    switch (m.family()) {
        case MetricFamily::Plane2:
            dg[0](1, 1) = 2.0 * k * k * x[0];
            break;
        case MetricFamily::Sphere2:
            dg[0](1, 1) = 2.0 * k * k * std::sin(x[0]) * std::cos(x[0]);
            break;
        case MetricFamily::Euclid3: {
            const double r = x[0], s = std::sin(x[1]), c = std::cos(x[1]);
            dg[0](1, 1) = 2.0 * k * k * r;
            dg[0](2, 2) = 2.0 * r * s * s;
            dg[1](2, 2) = 2.0 * r * r * s * c;
            break;
        }
        case MetricFamily::Sphere3: {
            const double se = std::sin(x[0]), ce = std::cos(x[0]);
            dg[0](1, 1) = 2.0 * m.b() * m.b() * se * ce;
            dg[0](2, 2) = -2.0 * m.c() * m.c() * ce * se;
            break;
        }
    }
}

Christoffel christoffel_raw(const MetricModel& m, const std::array<double, 3>& x) {
    const int n = m.dim();
    const Eigen::MatrixXd g = m.components_raw(x);
    Eigen::MatrixXd dg[3];
    derivatives_raw(m, x, dg);
    Christoffel G;
    G.dim = n;
    for (int i = 0; i < n; ++i) {
        const double gii_inv = 1.0 / g(i, i);
        for (int j = 0; j < n; ++j)
            for (int kk = j; kk < n; ++kk) {
                // diagonal metric: Gamma^i_{jk} = g^{ii}(d_j g_ik + d_k g_ij - d_i g_jk)/2
                const double v =
                    0.5 * gii_inv * (dg[j](i, kk) + dg[kk](i, j) - dg[i](j, kk));
                G.g[i][j][kk] = v;
                G.g[i][kk][j] = v;
            }
    }
    return G;
}

}  // namespace

void MetricModel::derivatives(const ChartPoint& p, Eigen::MatrixXd dg[3]) const {
    check_chart(p);
    derivatives_raw(*this, p.x, dg);
}

Christoffel MetricModel::christoffel(const ChartPoint& p) const {
    check_chart(p);
    return christoffel_raw(*this, p.x);
}

namespace {

// R^i_{jkl} with d Gamma by central differences of the analytic symbols.
void riemann_raw(const MetricModel& m, const std::array<double, 3>& x,
                 double R[3][3][3][3]) {
    const int n = m.dim();
    Christoffel dG[3];  // dG[c] = d Gamma / d x^c
    for (int c = 0; c < n; ++c) {
        // central differences at h and h/2, Richardson-combined to O(h^4)
        auto central = [&](double h) {
            auto xp = x, xm = x;
            xp[c] += h;
            xm[c] -= h;
            const Christoffel Gp = christoffel_raw(m, xp), Gm = christoffel_raw(m, xm);
            Christoffel d;
            d.dim = n;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int kk = 0; kk < n; ++kk)
                        d.g[i][j][kk] = (Gp.g[i][j][kk] - Gm.g[i][j][kk]) / (2.0 * h);
            return d;
        };
        const double h = 1e-4 * std::max(1.0, std::abs(x[c]));
        const Christoffel d1 = central(h), d2 = central(0.5 * h);
        dG[c].dim = n;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int kk = 0; kk < n; ++kk)
                    dG[c].g[i][j][kk] = (4.0 * d2.g[i][j][kk] - d1.g[i][j][kk]) / 3.0;
    }
    const Christoffel G = christoffel_raw(m, x);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int kk = 0; kk < n; ++kk)
                for (int l = 0; l < n; ++l) {
                    double v = dG[kk].g[i][l][j] - dG[l].g[i][kk][j];
                    for (int mm = 0; mm < n; ++mm)
                        v += G.g[i][kk][mm] * G.g[mm][l][j] -
                             G.g[i][l][mm] * G.g[mm][kk][j];
                    R[i][j][kk][l] = v;
                }
}

}  // namespace

double MetricModel::curvature(const ChartPoint& p) const {
    check_chart(p);
    double R[3][3][3][3];
    riemann_raw(*this, p.x, R);
    const Eigen::MatrixXd g = components_raw(p.x);
    // R_{0101} = g_{0m} R^m_{101}; sectional curvature of the (0,1) plane.
    const int n = dim();
    double R0101 = 0.0;
    for (int mi = 0; mi < n; ++mi) R0101 += g(0, mi) * R[mi][1][0][1];
    return R0101 / (g(0, 0) * g(1, 1) - g(0, 1) * g(0, 1));
}

double MetricModel::riemann_norm(const ChartPoint& p) const {
    check_chart(p);
    double R[3][3][3][3];
    riemann_raw(*this, p.x, R);
    const int n = dim();
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int kk = 0; kk < n; ++kk)
                for (int l = 0; l < n; ++l) s += R[i][j][kk][l] * R[i][j][kk][l];
    return std::sqrt(s);
}

}  // namespace covering
