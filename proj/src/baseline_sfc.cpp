#include "hfc/baseline_sfc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hfc {

LinearModel linearize(const PlantParams& p) {
    p.validate();
    const double total = p.m_c + p.m;
    const double shape = 4.0 / 3.0 - p.m / total;
    if (!(shape > 0.0)) throw SfcError("degenerate linearization: 4/3 - m/(m_c+m) <= 0");
    const double denom = p.l * shape;
    const double a_theta = p.g / denom;          // d theta_ddot / d theta
    const double b_theta = -1.0 / (total * denom);  // d theta_ddot / d f
    LinearModel lm;
    lm.A(0, 1) = 1.0;
    lm.A(1, 0) = a_theta;
    lm.A(2, 3) = 1.0;
    lm.A(3, 0) = -p.m * p.l * a_theta / total;
    lm.B(1) = b_theta;
    lm.B(3) = (1.0 - p.m * p.l * b_theta) / total;
    return lm;
}

std::vector<std::complex<double>> default_sfc_poles() { return {-1.5, -1.6, -2.0, -2.2}; }

GainVector design_gains(const LinearModel& model, std::span<const std::complex<double>> poles, double force_limit) {
    if (poles.size() != 4) throw SfcError("expected 4 desired poles, got " + std::to_string(poles.size()));
    for (const auto& z : poles) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw SfcError("desired poles must be finite");
        auto count = [&](std::complex<double> w) {
            return std::count_if(poles.begin(), poles.end(),
                                 [&](const std::complex<double>& q) { return std::abs(q - w) <= 1e-9 * (1 + std::abs(w)); });
        };
        if (count(z) != count(std::conj(z))) throw SfcError("desired poles are not closed under conjugation");
    }

    Eigen::Matrix4d ctrb;
    ctrb.col(0) = model.B;
    for (int i = 1; i < 4; ++i) ctrb.col(i) = model.A * ctrb.col(i - 1);
    Eigen::FullPivLU<Eigen::Matrix4d> lu(ctrb);
    if (lu.rank() < 4) {
        throw SfcError("(A, B) is not controllable: controllability matrix has rank " + std::to_string(lu.rank()));
    }

    // Characteristic polynomial prod (s - p_i), highest degree first.
    std::vector<std::complex<double>> c{1.0};
    for (const auto& z : poles) {
        std::vector<std::complex<double>> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] += c[i];
            next[i + 1] -= z * c[i];
        }
        c = std::move(next);
    }
    Eigen::Matrix4d phi = Eigen::Matrix4d::Zero();
    Eigen::Matrix4d power = Eigen::Matrix4d::Identity();
    for (int i = 4; i >= 0; --i) {
        phi += c[static_cast<std::size_t>(i)].real() * power;
        power = power * model.A;
    }
    Eigen::RowVector4d last = Eigen::RowVector4d::Zero();
    last(3) = 1.0;
    GainVector g;
    g.k = last * lu.inverse() * phi;
    g.force_limit = force_limit;
    return g;
}

std::vector<std::complex<double>> closed_loop_poles(const LinearModel& model, const GainVector& gains) {
    Eigen::Matrix4d closed = model.A - model.B * gains.k;
    Eigen::EigenSolver<Eigen::Matrix4d> es(closed, false);
    std::vector<std::complex<double>> out(es.eigenvalues().begin(), es.eigenvalues().end());
    std::sort(out.begin(), out.end(), [](auto a, auto b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    return out;
}

double sfc_output(const GainVector& gains, const PlantState& s) {
    const PlantState& r = gains.reference;
    Eigen::Vector4d e(s.theta - r.theta, s.theta_dot - r.theta_dot, s.x - r.x, s.x_dot - r.x_dot);
    double u = -gains.k.dot(e);
    return std::clamp(u, -gains.force_limit, gains.force_limit);
}

}  // namespace hfc
