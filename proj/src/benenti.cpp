#include "covering/benenti.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace covering {

bool EllipsoidalParams::distinct() const {
    return a != b && b != c && a != c;
}

Eigen::Matrix3d ellipsoidal_L(const EllipsoidalParams& par, const Eigen::Vector3d& p) {
    Eigen::Matrix3d L = p * p.transpose();
    L(0, 0) += par.a;
    L(1, 1) += par.b;
    L(2, 2) += par.c;
    return L;
}

std::vector<Eigen::Matrix3d> benenti_recursion(const Eigen::Matrix3d& L, int n) {
    if (n < 1) throw std::invalid_argument("benenti_recursion: n must be >= 1");
    std::vector<Eigen::Matrix3d> K;
    K.reserve(static_cast<std::size_t>(n));
    K.push_back(Eigen::Matrix3d::Identity());
    for (int a = 1; a < n; ++a) {
        const Eigen::Matrix3d KL = K.back() * L;
        K.push_back((KL.trace() / a) * Eigen::Matrix3d::Identity() - KL);
    }
    return K;
}

Eigen::Vector3d covering_transform3_raw(const std::array<double, 3>& x, double k) {
    const double r = x[0], theta = x[1], phi = x[2];
    const double st = std::sin(theta), ct = std::cos(theta);
    return {k * r * st * std::cos(phi / k), k * r * st * std::sin(phi / k), k * r * ct};
}

Eigen::Vector3d covering_transform3(const ChartPoint& p, double k) {
    if (p.chart != Chart::spherical3)
        throw std::invalid_argument("covering_transform3: expects a spherical3 point");
    return covering_transform3_raw(p.x, k);
}

Eigen::Matrix3d covering_jacobian3(const std::array<double, 3>& x, double k) {
    const double r = x[0], theta = x[1], phi = x[2];
    const double st = std::sin(theta), ct = std::cos(theta);
    const double cp = std::cos(phi / k), sp = std::sin(phi / k);
    Eigen::Matrix3d J;
    J << k * st * cp, k * r * ct * cp, -r * st * sp,  //
        k * st * sp, k * r * ct * sp, r * st * cp,    //
        k * ct, -k * r * st, 0.0;
    return J;
}

Eigen::Matrix3d pullback_L_raw(const EllipsoidalParams& par, double k,
                               const std::array<double, 3>& x) {
    const double st = std::sin(x[1]);
    if (std::abs(st) < 1e-12)
        throw std::domain_error("pullback_L: Jacobian is singular at theta in {0, pi}");
    const Eigen::Matrix3d J = covering_jacobian3(x, k);
    const Eigen::Matrix3d L = ellipsoidal_L(par, covering_transform3_raw(x, k));
    return J.partialPivLu().solve(L * J);
}

Eigen::Matrix3d pullback_L(const EllipsoidalParams& par, double k, const ChartPoint& p) {
    if (p.chart != Chart::spherical3)
        throw std::invalid_argument("pullback_L: expects a spherical3 point");
    return pullback_L_raw(par, k, p.x);
}

double cartesian_killing_residual(const MixedField3& field,
                                  const std::vector<Eigen::Vector3d>& samples) {
    if (samples.empty())
        throw std::invalid_argument("cartesian_killing_residual: empty sample list");
    double worst = 0.0;
    for (const auto& p : samples) {
        Eigen::Matrix3d dK[3];
        for (int i = 0; i < 3; ++i) {
            const double h = 1e-5 * std::max(1.0, std::abs(p(i)));
            auto central = [&](double hh) {
                Eigen::Vector3d pp = p, pm = p;
                pp(i) += hh;
                pm(i) -= hh;
                return ((field(pp) - field(pm)) / (2.0 * hh)).eval();
            };
            dK[i] = (4.0 * central(0.5 * h) - central(h)) / 3.0;
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int l = 0; l < 3; ++l) {
                    const double sym =
                        (dK[i](j, l) + dK[j](l, i) + dK[l](i, j)) / 3.0;
                    worst = std::max(worst, std::abs(sym));
                }
    }
    return worst;
}

Eigen::Vector3d mixed_eigenvalues(const Eigen::Matrix3d& mixed) {
    const Eigen::EigenSolver<Eigen::Matrix3d> es(mixed);
    const double scale = std::max(1.0, mixed.norm());
    for (int i = 0; i < 3; ++i)
        if (std::abs(es.eigenvalues()(i).imag()) > 1e-8 * scale)
            throw std::runtime_error("mixed_eigenvalues: complex eigenvalue encountered");
    Eigen::Vector3d ev = es.eigenvalues().real();
    std::sort(ev.data(), ev.data() + 3);
    return ev;
}

std::vector<CloudPoint> eigen_surface_sample(const EllipsoidalParams& par, double k,
                                             double level, int eigen_index,
                                             const SurfaceGrid& grid) {
    if (!par.distinct())
        throw std::invalid_argument(
            "eigen_surface_sample: ellipsoidal parameters must be distinct");
    if (eigen_index < 1 || eigen_index > 3)
        throw std::invalid_argument("eigen_surface_sample: eigen_index must be in 1..3");
    if (grid.r_min <= 0.0 || grid.r_max <= grid.r_min || grid.n_r < 2 || grid.n_theta < 2 ||
        grid.n_phi < 2)
        throw std::invalid_argument("eigen_surface_sample: bad grid");
    const double dr = (grid.r_max - grid.r_min) / grid.n_r;
    const double th_lo = grid.theta_margin, th_hi = kPi - grid.theta_margin;
    const double dth = (th_hi - th_lo) / grid.n_theta;
    const double dph = kTwoPi / grid.n_phi;
    auto rho = [&](double r, double th, double ph) {
        return mixed_eigenvalues(pullback_L_raw(par, k, {r, th, ph}))(eigen_index - 1);
    };
    std::vector<CloudPoint> cloud;
    for (int i = 0; i <= grid.n_r; ++i)
        for (int j = 0; j <= grid.n_theta; ++j)
            for (int l = 0; l < grid.n_phi; ++l) {
                const double r = grid.r_min + dr * i;
                const double th = th_lo + dth * j;
                const double ph = dph * l;
                const double v = rho(r, th, ph);
                // per-cell field variation, from one-sided differences
                const double var = std::abs(rho(r + dr, th, ph) - v) +
                                   std::abs(rho(r, th + dth, ph) - v) +
                                   std::abs(rho(r, th, ph + dph) - v);
                if (std::abs(v - level) <= 0.5 * var) {
                    const Eigen::Vector3d p = covering_transform3_raw({r, th, ph}, k);
                    cloud.push_back({eigen_index, level, p(0), p(1), p(2)});
                }
            }
    return cloud;
}

}  // namespace covering
