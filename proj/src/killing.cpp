#include "covering/killing.hpp"

#include <cmath>
#include <stdexcept>

namespace covering {

Eigen::Vector2d killing_vector_raw(const KillingVectorSpec& spec, double r, double phi) {
    if (r <= 0.0) throw std::domain_error("killing_vector: r <= 0");
    const double s = std::sin(spec.k * phi), c = std::cos(spec.k * phi);
    Eigen::Vector2d v;
    v(0) = spec.a[2] * s - spec.a[1] * c;
    // The phi-component denominator is k r, not k r^2: with k r the three
    // generators are exactly the pullbacks of the flat-plane isometries
    // (rotation (1/k) d_phi and the two translations) and pass the Killing
    // certification; with k r^2 none of them is Killing.
    v(1) = (spec.a[2] * c + spec.a[1] * s + spec.a[0] * r) / (spec.k * r);
    return v;
}

Eigen::Vector2d killing_vector(const KillingVectorSpec& spec, const ChartPoint& p) {
    if (p.chart != Chart::polar2)
        throw std::invalid_argument("killing_vector: expects a polar2 point");
    return killing_vector_raw(spec, p[0], p[1]);
}

Eigen::Matrix2d killing_tensor_raw(const KillingTensorSpec& spec, double r, double phi) {
    if (r <= 0.0) throw std::domain_error("killing_tensor: r <= 0");
    const double k = spec.k;
    const auto& b = spec.b;  // (b1..b6) at indices 0..5
    const double s1 = std::sin(k * phi), c1 = std::cos(k * phi);
    const double s2 = std::sin(2.0 * k * phi), c2 = std::cos(2.0 * k * phi);
    Eigen::Matrix2d K;
    K(0, 0) = -b[4] * s2 - b[5] * c2 + b[3];
    const double cross =
        (b[2] * r * s1 - b[1] * r * c1 + 2.0 * b[5] * s2 - 2.0 * b[4] * c2) / (k * r);
    K(0, 1) = K(1, 0) = 0.5 * cross;
    K(1, 1) = (b[1] * r * s1 + b[2] * r * c1 + b[0] * r * r + b[4] * s2 + b[5] * c2 + b[3]) /
              (k * k * r * r);
    return K;
}

Eigen::Matrix2d killing_tensor(const KillingTensorSpec& spec, const ChartPoint& p) {
    if (p.chart != Chart::polar2)
        throw std::invalid_argument("killing_tensor: expects a polar2 point");
    return killing_tensor_raw(spec, p[0], p[1]);
}

namespace {

// Richardson-extrapolated central difference of a matrix/vector-valued field
// along coordinate i.
template <class Field>
auto fd_derivative(const Field& f, const std::array<double, 3>& x, int i) {
    const std::size_t c = static_cast<std::size_t>(i);
    auto central = [&](double h) {
        auto xp = x, xm = x;
        xp[c] += h;
        xm[c] -= h;
        return ((f(xp) - f(xm)) / (2.0 * h)).eval();
    };
    const double h = 1e-4 * std::max(1.0, std::abs(x[c]));
    return ((4.0 * central(0.5 * h) - central(h)) / 3.0).eval();
}

}  // namespace

double killing_residual(const VectorField& field, const MetricModel& model,
                        const std::vector<ChartPoint>& samples) {
    if (samples.empty()) throw std::invalid_argument("killing_residual: empty sample list");
    const int n = model.dim();
    double worst = 0.0;
    for (const auto& p : samples) {
        const Eigen::MatrixXd gi = model.inverse(p);
        const Christoffel G = model.christoffel(p);
        const Eigen::VectorXd xi = field(p.x);
        // partial derivatives d_i xi^j
        Eigen::MatrixXd dxi(n, n);
        for (int i = 0; i < n; ++i)
            dxi.row(i) = fd_derivative(field, p.x, i).transpose();
        Eigen::MatrixXd A(n, n);  // A^{ij} = nabla^i xi^j
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double cov = 0.0;
                for (int m = 0; m < n; ++m) {
                    double d = dxi(m, j);
                    for (int l = 0; l < n; ++l) d += G(j, m, l) * xi(l);
                    cov += gi(i, m) * d;
                }
                A(i, j) = cov;
            }
        const double res = 0.5 * (A + A.transpose()).norm();
        worst = std::max(worst, res);
    }
    return worst;
}

double killing_residual(const TensorField& field, const MetricModel& model,
                        const std::vector<ChartPoint>& samples) {
    if (samples.empty()) throw std::invalid_argument("killing_residual: empty sample list");
    const int n = model.dim();
    double worst = 0.0;
    for (const auto& p : samples) {
        const Eigen::MatrixXd gi = model.inverse(p);
        const Christoffel G = model.christoffel(p);
        const Eigen::MatrixXd K = field(p.x);
        std::vector<Eigen::MatrixXd> dK(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            dK[static_cast<std::size_t>(i)] = fd_derivative(field, p.x, i);
        // T^{ijk} = g^{il} nabla_l K^{jk}
        double res = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int kk = 0; kk < n; ++kk) {
                    auto T = [&](int ii, int jj, int kkk) {
                        double v = 0.0;
                        for (int l = 0; l < n; ++l) {
                            double cov = dK[static_cast<std::size_t>(l)](jj, kkk);
                            for (int m = 0; m < n; ++m)
                                cov += G(jj, l, m) * K(m, kkk) + G(kkk, l, m) * K(jj, m);
                            v += gi(ii, l) * cov;
                        }
                        return v;
                    };
                    const double S = (T(i, j, kk) + T(j, kk, i) + T(kk, i, j)) / 3.0;
                    res = std::max(res, std::abs(S));
                }
        worst = std::max(worst, res);
    }
    return worst;
}

double killing_residual(const KillingVectorSpec& spec, const MetricModel& model,
                        const std::vector<ChartPoint>& samples) {
    VectorField f = [spec](const std::array<double, 3>& x) -> Eigen::VectorXd {
        return killing_vector_raw(spec, x[0], x[1]);
    };
    return killing_residual(f, model, samples);
}

double killing_residual(const KillingTensorSpec& spec, const MetricModel& model,
                        const std::vector<ChartPoint>& samples) {
    TensorField f = [spec](const std::array<double, 3>& x) -> Eigen::MatrixXd {
        return killing_tensor_raw(spec, x[0], x[1]);
    };
    return killing_residual(f, model, samples);
}

bool is_global(const std::vector<Rational>& freqs) {
    for (const auto& f : freqs)
        if (!f.is_integer()) return false;
    return true;
}

namespace {

struct BasisEntry {
    std::string name;
    // frequency = multiplier * k; nullopt marks fields that are polynomial in
    // the angle (cylinder rotation terms) and can never be periodic
    std::optional<std::int64_t> multiplier;
};

GlobalDimension filter(const std::vector<BasisEntry>& basis, const Rational& k) {
    GlobalDimension out;
    for (const auto& e : basis) {
        if (!e.multiplier) continue;
        if ((k * *e.multiplier).is_integer()) {
            ++out.dimension;
            out.surviving.push_back(e.name);
        }
    }
    return out;
}

}  // namespace

GlobalDimension global_dimension(FieldOrder order, const Rational& k) {
    static const std::vector<BasisEntry> vectors = {{"a1", 0}, {"a2", 1}, {"a3", 1}};
    static const std::vector<BasisEntry> tensors = {{"b1", 0}, {"b2", 1}, {"b3", 1},
                                                    {"b4", 0}, {"b5", 2}, {"b6", 2}};
    return filter(order == FieldOrder::vector ? vectors : tensors, k);
}

GlobalDimension global_dimension_sphere3(FieldOrder order, const Rational& b_over_a,
                                         const Rational& c_over_a) {
    if (order != FieldOrder::vector)
        throw std::invalid_argument(
            "global_dimension_sphere3: only the vector catalog is implemented");
    GlobalDimension out;
    out.dimension = 2;  // V1, V2 have constant angular frequency 0
    out.surviving = {"V1", "V2"};
    if (b_over_a.is_integer() && c_over_a.is_integer()) {
        out.dimension += 4;
        for (const char* n : {"V3", "V4", "V5", "V6"}) out.surviving.push_back(n);
    }
    return out;
}

GlobalDimension cylinder_global_dimension(FieldOrder order) {
    // E^2 basis in cylinder coordinates (z, psi): translations d_z, d_psi
    // are periodic; the rotation z d_psi - psi d_z is linear in psi.
    static const std::vector<BasisEntry> vectors = {
        {"d_z", 0}, {"d_psi", 0}, {"rot", std::nullopt}};
    static const std::vector<BasisEntry> tensors = {
        {"d_z.d_z", 0},          {"d_psi.d_psi", 0},      {"d_z.d_psi", 0},
        {"d_z.rot", std::nullopt}, {"d_psi.rot", std::nullopt}, {"rot.rot", std::nullopt}};
    return filter(order == FieldOrder::vector ? vectors : tensors, Rational(1));
}

Eigen::Vector3d s3_killing_form_raw(int j, double a, double b, double c,
                                    const std::array<double, 3>& x) {
    if (j < 1 || j > 6) throw std::invalid_argument("s3_killing_form: j must be in 1..6");
    const double eta = x[0], xi1 = x[1], xi2 = x[2];
    const double se = std::sin(eta), ce = std::cos(eta);
    Eigen::Vector3d V = Eigen::Vector3d::Zero();
    if (j == 1) {
        V(1) = se * se;
        return V;
    }
    if (j == 2) {
        V(2) = ce * ce;
        return V;
    }
    // V3..V6: substitution operators act on the trig pair of each angle:
    // P4 swaps (sin,cos)(b/a xi1) -> (cos,-sin); P5 the same for xi2; P6 both.
    const double arg1 = (b / a) * xi1, arg2 = (c / a) * xi2;
    double s1 = std::sin(arg1), c1 = std::cos(arg1);
    double s2 = std::sin(arg2), c2 = std::cos(arg2);
    const bool p4 = (j == 4 || j == 6), p5 = (j == 5 || j == 6);
    if (p4) {
        const double s = s1;
        s1 = c1;
        c1 = -s;
    }
    if (p5) {
        const double s = s2;
        s2 = c2;
        c2 = -s;
    }
    V(0) = a * s1 * c2;
    V(1) = se * ce * b * c1 * c2;
    V(2) = se * ce * c * s1 * s2;
    return V;
}

Eigen::Vector3d s3_killing_form(int j, double a, double b, double c, const ChartPoint& p) {
    if (p.chart != Chart::hopf3)
        throw std::invalid_argument("s3_killing_form: expects a hopf3 point");
    return s3_killing_form_raw(j, a, b, c, p.x);
}

}  // namespace covering
