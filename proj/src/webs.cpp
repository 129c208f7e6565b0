#include "covering/webs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace covering {

EigenData eigen_decompose(const Eigen::Matrix2d& K_contra, const Eigen::Matrix2d& g) {
    // Conjugate to a symmetric problem: B = g^{1/2} K g^{1/2} has the same
    // spectrum as the endomorphism K g, and mapping eigenvectors back with
    // g^{-1/2} makes them g-orthogonal.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> gs(g);
    const Eigen::Matrix2d S = gs.operatorSqrt();
    const Eigen::Matrix2d Sinv = gs.operatorInverseSqrt();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(S * K_contra * S);
    EigenData out;
    out.rho1 = es.eigenvalues()(0);
    out.rho2 = es.eigenvalues()(1);
    out.v1 = Sinv * es.eigenvectors().col(0);
    out.v2 = Sinv * es.eigenvectors().col(1);
    out.degenerate = std::abs(out.rho2 - out.rho1) < 1e-10;
    return out;
}

EigenData eigen_of(const KillingTensorSpec& K, const MetricModel& model, const ChartPoint& p) {
    const Eigen::Matrix2d Kc = killing_tensor(K, p);
    const Eigen::Matrix2d g = model.components(p);
    return eigen_decompose(Kc, g);
}

// ---------------------------------------------------------------------------
// Isocontour extraction (marching squares + segment chaining)
// ---------------------------------------------------------------------------

namespace {

struct Pt {
    double x, y;
};

struct Segment {
    Pt a, b;
};

// Crossing point on the edge between grid nodes p0, p1 with values v0, v1.
Pt interp(const Pt& p0, const Pt& p1, double v0, double v1, double level) {
    const double t = (level - v0) / (v1 - v0);
    return {p0.x + t * (p1.x - p0.x), p0.y + t * (p1.y - p0.y)};
}

double dist2(const Pt& a, const Pt& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Chains loose segments into polylines, joining endpoints closer than tol.
std::vector<std::vector<Pt>> chain_segments(const std::vector<Segment>& segs, double tol) {
    const double tol2 = tol * tol;
    struct Key {
        long ix, iy;
        bool operator<(const Key& o) const {
            return ix < o.ix || (ix == o.ix && iy < o.iy);
        }
    };
    auto key_of = [tol](const Pt& p) {
        return Key{static_cast<long>(std::floor(p.x / tol)),
                   static_cast<long>(std::floor(p.y / tol))};
    };
    // endpoint index: bucket -> (segment, end)
    std::multimap<Key, std::pair<std::size_t, int>> buckets;
    for (std::size_t s = 0; s < segs.size(); ++s) {
        buckets.insert({key_of(segs[s].a), {s, 0}});
        buckets.insert({key_of(segs[s].b), {s, 1}});
    }
    std::vector<bool> used(segs.size(), false);
    auto find_next = [&](const Pt& p, std::size_t* seg, int* end) {
        const Key k0 = key_of(p);
        double best = tol2;
        bool found = false;
        for (long dx = -1; dx <= 1; ++dx)
            for (long dy = -1; dy <= 1; ++dy) {
                auto range = buckets.equal_range(Key{k0.ix + dx, k0.iy + dy});
                for (auto it = range.first; it != range.second; ++it) {
                    const auto [s, e] = it->second;
                    if (used[s]) continue;
                    const Pt& q = e == 0 ? segs[s].a : segs[s].b;
                    const double d = dist2(p, q);
                    if (d <= best) {
                        best = d;
                        *seg = s;
                        *end = e;
                        found = true;
                    }
                }
            }
        return found;
    };

    std::vector<std::vector<Pt>> chains;
    for (std::size_t s0 = 0; s0 < segs.size(); ++s0) {
        if (used[s0]) continue;
        used[s0] = true;
        std::vector<Pt> chain = {segs[s0].a, segs[s0].b};
        // grow forward from the back, then backward from the front
        for (int dir = 0; dir < 2; ++dir) {
            for (;;) {
                const Pt tip = dir == 0 ? chain.back() : chain.front();
                std::size_t s;
                int e;
                if (!find_next(tip, &s, &e)) break;
                used[s] = true;
                const Pt next = e == 0 ? segs[s].b : segs[s].a;
                if (dir == 0)
                    chain.push_back(next);
                else
                    chain.insert(chain.begin(), next);
            }
        }
        chains.push_back(std::move(chain));
    }
    return chains;
}

struct FieldGrid {
    std::vector<double> radial, angular;    // node coordinates
    std::vector<std::vector<double>> vals;  // vals[i][j] at (radial[i], angular[j])
    double vmin = 0.0, vmax = 0.0;
};

FieldGrid sample_grid(const ScalarField2& f, double radial_min, double radial_max, int nr,
                      int na) {
    if (radial_max <= radial_min)
        throw std::invalid_argument("trace_web: empty window");
    FieldGrid g;
    g.radial.resize(static_cast<std::size_t>(nr) + 1);
    g.angular.resize(static_cast<std::size_t>(na) + 1);
    for (int i = 0; i <= nr; ++i)
        g.radial[static_cast<std::size_t>(i)] =
            radial_min + (radial_max - radial_min) * i / nr;
    for (int j = 0; j <= na; ++j)
        g.angular[static_cast<std::size_t>(j)] = kTwoPi * j / na;
    g.vals.assign(g.radial.size(), std::vector<double>(g.angular.size()));
    bool first = true;
    for (std::size_t i = 0; i < g.radial.size(); ++i)
        for (std::size_t j = 0; j < g.angular.size(); ++j) {
            const double v = f(g.radial[i], g.angular[j]);
            g.vals[i][j] = v;
            if (first || v < g.vmin) g.vmin = v;
            if (first || v > g.vmax) g.vmax = v;
            first = false;
        }
    return g;
}

std::vector<WebCurve> contours_from_grid(const FieldGrid& grid, double level, int eigen_index,
                                         PlotMode mode, double k) {
    std::vector<Segment> segs;
    const std::size_t nr = grid.radial.size() - 1, na = grid.angular.size() - 1;
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const double r0 = grid.radial[i], r1 = grid.radial[i + 1];
            const double a0 = grid.angular[j], a1 = grid.angular[j + 1];
            const double v00 = grid.vals[i][j], v10 = grid.vals[i + 1][j];
            const double v11 = grid.vals[i + 1][j + 1], v01 = grid.vals[i][j + 1];
            // corners in (radial, angular) space, counterclockwise
            const Pt c00{r0, a0}, c10{r1, a0}, c11{r1, a1}, c01{r0, a1};
            std::vector<Pt> cross;
            auto edge = [&](const Pt& p0, const Pt& p1, double w0, double w1) {
                if ((w0 < level) != (w1 < level)) cross.push_back(interp(p0, p1, w0, w1, level));
            };
            edge(c00, c10, v00, v10);
            edge(c10, c11, v10, v11);
            edge(c11, c01, v11, v01);
            edge(c01, c00, v01, v00);
            if (cross.size() == 2) {
                segs.push_back({cross[0], cross[1]});
            } else if (cross.size() == 4) {
                // saddle: decide pairing by the cell-center value
                const double vc = 0.25 * (v00 + v10 + v11 + v01);
                if ((vc < level) == (v00 < level)) {
                    segs.push_back({cross[0], cross[1]});
                    segs.push_back({cross[2], cross[3]});
                } else {
                    segs.push_back({cross[0], cross[3]});
                    segs.push_back({cross[1], cross[2]});
                }
            }
        }
    // map to the plot plane and chain there, so seam-crossing curves of
    // periodic fields reconnect
    std::vector<Segment> plot_segs;
    plot_segs.reserve(segs.size());
    for (const auto& s : segs) {
        auto [ax, ay] = plot_plane_raw(s.a.x, s.a.y, k, mode);
        auto [bx, by] = plot_plane_raw(s.b.x, s.b.y, k, mode);
        if (dist2({ax, ay}, {bx, by}) < 1e-24) continue;
        plot_segs.push_back({{ax, ay}, {bx, by}});
    }
    const double dr = grid.radial[1] - grid.radial[0];
    const double da = (grid.angular[1] - grid.angular[0]) *
                      (mode == PlotMode::conformal ? k : 1.0);
    const double tol =
        0.75 * std::sqrt(dr * dr + grid.radial.back() * grid.radial.back() * da * da);
    std::vector<WebCurve> out;
    for (auto& chain : chain_segments(plot_segs, tol)) {
        if (chain.size() < 3) continue;
        WebCurve c;
        c.eigen_index = eigen_index;
        c.level = level;
        c.closed = chain.size() > 3 && dist2(chain.front(), chain.back()) <= tol * tol;
        if (c.closed) chain.back() = chain.front();
        c.points.reserve(chain.size());
        for (const auto& p : chain) c.points.emplace_back(p.x, p.y);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<double> pick_levels(const FieldGrid& g, int n) {
    std::vector<double> levels;
    for (int i = 1; i <= n; ++i)
        levels.push_back(g.vmin + (g.vmax - g.vmin) * i / (n + 1));
    return levels;
}

}  // namespace

std::vector<WebCurve> trace_scalar_field(const ScalarField2& field, int eigen_index,
                                         double radial_min, double radial_max,
                                         const TraceOptions& opt, double k) {
    if (opt.levels < 1) throw std::invalid_argument("trace_web: level count must be >= 1");
    const FieldGrid grid =
        sample_grid(field, radial_min, radial_max, opt.grid_radial, opt.grid_angular);
    if (std::abs(grid.vmax - grid.vmin) < 1e-14)
        return {};  // constant (all-degenerate) field, nothing to trace
    std::vector<WebCurve> out;
    for (double level : pick_levels(grid, opt.levels)) {
        auto cs = contours_from_grid(grid, level, eigen_index, opt.mode, k);
        out.insert(out.end(), std::make_move_iterator(cs.begin()),
                   std::make_move_iterator(cs.end()));
    }
    return out;
}

std::vector<WebCurve> trace_web(const KillingTensorSpec& K, const MetricModel& model,
                                const PlotWindow& window, const TraceOptions& opt) {
    if (model.chart() != Chart::polar2)
        throw std::invalid_argument("trace_web: expects a Plane2 model");
    const double rmax =
        std::sqrt(std::max({window.x_min * window.x_min, window.x_max * window.x_max}) +
                  std::max({window.y_min * window.y_min, window.y_max * window.y_max}));
    if (rmax <= opt.radial_min) throw std::invalid_argument("trace_web: empty window");
    bool all_degenerate = true;
    for (int i = 0; i < 8 && all_degenerate; ++i) {
        const double r = opt.radial_min + (rmax - opt.radial_min) * (i + 0.5) / 8.0;
        const double phi = kTwoPi * (0.37 * i - std::floor(0.37 * i));
        const EigenData e = eigen_decompose(killing_tensor_raw(K, r, phi),
                                            model.components_raw({r, phi, 0.0}));
        all_degenerate = e.degenerate;
    }
    if (all_degenerate)
        throw std::domain_error("trace_web: eigenvalue field is everywhere degenerate");
    auto field = [&](int which) {
        return [&K, &model, which](double r, double phi) {
            const EigenData e = eigen_decompose(killing_tensor_raw(K, r, phi),
                                                model.components_raw({r, phi, 0.0}));
            return which == 1 ? e.rho1 : e.rho2;
        };
    };
    std::vector<WebCurve> out = trace_scalar_field(field(1), 1, opt.radial_min, rmax, opt, K.k);
    auto second = trace_scalar_field(field(2), 2, opt.radial_min, rmax, opt, K.k);
    out.insert(out.end(), std::make_move_iterator(second.begin()),
               std::make_move_iterator(second.end()));
    return out;
}

// ---------------------------------------------------------------------------
// Parabolic chart
// ---------------------------------------------------------------------------

std::pair<double, double> parabolic_from_polar(const ChartPoint& p, double k) {
    if (p.chart != Chart::polar2)
        throw std::invalid_argument("parabolic_from_polar: expects a polar2 point");
    const double r = p[0], s = std::sin(k * p[1]);
    return {r * (s + 1.0) / (2.0 * k * k), r * (s - 1.0) / (2.0 * k * k)};
}

ChartPoint polar_from_parabolic(double u, double v, double k) {
    if (u <= 0.0 || v >= 0.0)
        throw std::domain_error("polar_from_parabolic: requires u > 0, v < 0");
    const double r = k * k * (u - v);
    const double arg = (u + v) / (u - v);
    if (arg < -1.0 || arg > 1.0)
        throw std::domain_error("polar_from_parabolic: arcsin argument out of range");
    double phi = std::asin(arg) / k;
    // principal branch; the shift 2pi/k leaves (u,v) unchanged, so a negative
    // angle can be lifted into the chart whenever 2pi/k <= 2pi. For k < 1 a
    // negative-arcsin point has no principal-branch preimage in this petal;
    // recovering it needs the sector machinery.
    if (phi < 0.0) phi += kTwoPi / k;
    if (phi < 0.0 || phi >= kTwoPi)
        throw std::domain_error(
            "polar_from_parabolic: point lies outside the principal petal of the chart");
    return polar(r, phi);
}

Eigen::Matrix2d parabolic_metric(double u, double v, double k) {
    if (u <= 0.0 || v >= 0.0)
        throw std::domain_error("parabolic_metric: requires u > 0, v < 0");
    const double k4 = k * k * k * k;
    Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
    g(0, 0) = k4 * (u - v) / u;
    g(1, 1) = -k4 * (u - v) / v;
    return g;
}

KillingTensorSpec parabolic_tensor(double k) {
    KillingTensorSpec s{};
    s.k = k;
    s.b[1] = 1.0 / (k * k);  // b2
    return s;
}

bool seam_continuity(const KillingTensorSpec& K, double k, double r_probe) {
    if (r_probe <= 0.0) throw std::domain_error("seam_continuity: r_probe must be positive");
    KillingTensorSpec spec = K;
    spec.k = k;
    const Eigen::Matrix2d K0 = killing_tensor_raw(spec, r_probe, 0.0);
    const Eigen::Matrix2d K1 = killing_tensor_raw(spec, r_probe, kTwoPi);
    return (K0 - K1).cwiseAbs().maxCoeff() < 1e-9;
}

// ---------------------------------------------------------------------------
// Sphere2 webs
// ---------------------------------------------------------------------------

Eigen::Matrix2d sphere_killing_tensor_raw(const SphereTensorSpec& spec, double theta,
                                          double phi) {
    const double k = spec.k;
    const double s = std::sin(k * phi), c = std::cos(k * phi);
    const double ct = std::cos(theta) / std::sin(theta);
    const Eigen::Vector2d X(s, ct * c / k);
    const Eigen::Vector2d Y(c, -ct * s / k);
    const Eigen::Vector2d Z(0.0, 1.0 / k);
    return spec.c[0] * X * X.transpose() + spec.c[1] * Y * Y.transpose() +
           spec.c[2] * Z * Z.transpose();
}

bool sphere_seam_continuity(const SphereTensorSpec& spec, double theta_probe) {
    const Eigen::Matrix2d K0 = sphere_killing_tensor_raw(spec, theta_probe, 0.0);
    const Eigen::Matrix2d K1 = sphere_killing_tensor_raw(spec, theta_probe, kTwoPi);
    return (K0 - K1).cwiseAbs().maxCoeff() < 1e-9;
}

std::vector<WebCurve> spherical_conical_web(const SphereTensorSpec& spec,
                                            const TraceOptions& opt) {
    const MetricModel m = MetricModel::Sphere2(spec.k);
    // certify the tensor before tracing
    TensorField f = [spec](const std::array<double, 3>& x) -> Eigen::MatrixXd {
        return sphere_killing_tensor_raw(spec, x[0], x[1]);
    };
    std::vector<ChartPoint> probes;
    for (int i = 0; i < 20; ++i)
        probes.push_back(sphere(0.3 + 2.5 * i / 19.0, 0.1 + 6.0 * i / 19.0));
    if (killing_residual(f, m, probes) > 1e-6)
        throw std::runtime_error("spherical_conical_web: tensor failed Killing certification");

    auto field = [&](int which) {
        return [spec, &m, which](double theta, double phi) {
            const EigenData e =
                eigen_decompose(sphere_killing_tensor_raw(spec, theta, phi),
                                m.components_raw({theta, phi, 0.0}));
            return which == 1 ? e.rho1 : e.rho2;
        };
    };
    const double tmin = std::max(opt.radial_min, 0.05), tmax = kPi - tmin;
    std::vector<WebCurve> out =
        trace_scalar_field(field(1), 1, tmin, tmax, opt, spec.k);
    auto second = trace_scalar_field(field(2), 2, tmin, tmax, opt, spec.k);
    out.insert(out.end(), std::make_move_iterator(second.begin()),
               std::make_move_iterator(second.end()));
    return out;
}

// ---------------------------------------------------------------------------
// Crossing angles
// ---------------------------------------------------------------------------

namespace {

bool segment_intersect(const Pt& p1, const Pt& p2, const Pt& q1, const Pt& q2, Pt* out) {
    const double rx = p2.x - p1.x, ry = p2.y - p1.y;
    const double sx = q2.x - q1.x, sy = q2.y - q1.y;
    const double den = rx * sy - ry * sx;
    if (std::abs(den) < 1e-15) return false;
    const double qpx = q1.x - p1.x, qpy = q1.y - p1.y;
    const double t = (qpx * sy - qpy * sx) / den;
    const double u = (qpx * ry - qpy * rx) / den;
    if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return false;
    *out = {p1.x + t * rx, p1.y + t * ry};
    return true;
}

}  // namespace

std::vector<double> crossing_angles(const std::vector<WebCurve>& curves,
                                    const KillingTensorSpec& K, const MetricModel& model) {
    // eigenvalue fields as functions of the nonconformal plot plane
    auto field = [&](int which, double x, double y) {
        const double r = std::hypot(x, y);
        double phi = std::atan2(y, x);
        if (phi < 0.0) phi += kTwoPi;
        const EigenData e = eigen_decompose(killing_tensor_raw(K, r, phi),
                                            model.components_raw({r, phi, 0.0}));
        return which == 1 ? e.rho1 : e.rho2;
    };
    auto gradient = [&](int which, const Pt& p) {
        const double h = 1e-6 * std::max(1.0, std::hypot(p.x, p.y));
        Eigen::Vector2d g;
        g(0) = (field(which, p.x + h, p.y) - field(which, p.x - h, p.y)) / (2.0 * h);
        g(1) = (field(which, p.x, p.y + h) - field(which, p.x, p.y - h)) / (2.0 * h);
        return g;
    };

    std::vector<double> angles;
    for (const auto& c1 : curves) {
        if (c1.eigen_index != 1) continue;
        for (const auto& c2 : curves) {
            if (c2.eigen_index != 2) continue;
            for (std::size_t i = 0; i + 1 < c1.points.size(); ++i)
                for (std::size_t j = 0; j + 1 < c2.points.size(); ++j) {
                    const Pt a1{c1.points[i].first, c1.points[i].second};
                    const Pt a2{c1.points[i + 1].first, c1.points[i + 1].second};
                    const Pt b1{c2.points[j].first, c2.points[j].second};
                    const Pt b2{c2.points[j + 1].first, c2.points[j + 1].second};
                    if (std::max(a1.x, a2.x) < std::min(b1.x, b2.x) ||
                        std::max(b1.x, b2.x) < std::min(a1.x, a2.x) ||
                        std::max(a1.y, a2.y) < std::min(b1.y, b2.y) ||
                        std::max(b1.y, b2.y) < std::min(a1.y, a2.y))
                        continue;
                    Pt xp;
                    if (!segment_intersect(a1, a2, b1, b2, &xp)) continue;
                    if (std::hypot(xp.x, xp.y) < 0.05) continue;  // too close to the puncture
                    const Eigen::Vector2d g1 = gradient(1, xp), g2 = gradient(2, xp);
                    if (g1.norm() < 1e-12 || g2.norm() < 1e-12) continue;
                    // curves are level sets: the angle between them equals the
                    // angle between the field gradients
                    double cosang = std::abs(g1.dot(g2)) / (g1.norm() * g2.norm());
                    cosang = std::min(cosang, 1.0);
                    angles.push_back(std::acos(cosang) * 180.0 / kPi);
                }
        }
    }
    return angles;
}

}  // namespace covering
