#include "hfc/plant.hpp"

#include <algorithm>
#include <cmath>

namespace hfc {

namespace {

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("plant parameter ") + what);
}

struct Deriv {
    double theta, theta_dot, x, x_dot;
};

Deriv rates(const PlantState& s, double f, const PlantParams& p) {
    auto a = derivatives(s, f, p);
    return {s.theta_dot, a.theta_ddot, s.x_dot, a.x_ddot};
}

PlantState advance(PlantState s, const Deriv& d, double h) {
    s.theta += h * d.theta;
    s.theta_dot += h * d.theta_dot;
    s.x += h * d.x;
    s.x_dot += h * d.x_dot;
    return s;
}

}  // namespace

void PlantParams::validate() const {
    require(std::isfinite(g) && g > 0, "g must be positive");
    require(std::isfinite(m_c) && m_c > 0, "m_c must be positive");
    require(std::isfinite(m) && m > 0, "m must be positive");
    require(std::isfinite(l) && l > 0, "l must be positive");
    require(std::isfinite(mu_c) && mu_c >= 0, "mu_c must be non-negative");
    require(std::isfinite(mu_p) && mu_p >= 0, "mu_p must be non-negative");
    require(std::isfinite(f_max) && f_max > 0, "f_max must be positive");
}

PlantParams PlantParams::frictionless() const {
    PlantParams p = *this;
    p.mu_c = 0.0;
    p.mu_p = 0.0;
    return p;
}

PlantParams PlantParams::pole(int preset) {
    if (preset < 1 || preset > static_cast<int>(kPolePresets.size())) {
        throw std::invalid_argument("pole preset must be 1..7, got " + std::to_string(preset));
    }
    const auto& pp = kPolePresets[static_cast<std::size_t>(preset - 1)];
    PlantParams p;
    p.m = pp.mass;
    p.l = pp.length / 2.0;
    return p;
}

Accelerations derivatives(const PlantState& s, double f, const PlantParams& p) {
    if (!std::isfinite(s.theta) || !std::isfinite(s.theta_dot) || !std::isfinite(s.x) || !std::isfinite(s.x_dot) ||
        !std::isfinite(s.tilt) || !std::isfinite(f)) {
        throw std::domain_error("non-finite plant state or force");
    }
    f = std::clamp(f, -p.f_max, p.f_max);
    const double total = p.m_c + p.m;
    const double sin_t = std::sin(s.theta);
    const double cos_t = std::cos(s.theta);
    const double w2 = s.theta_dot * s.theta_dot;
    const double push = (-f - p.m * p.l * w2 * sin_t + p.mu_c * sgn(s.x_dot)) / total;
    const double theta_ddot = (p.g * sin_t + cos_t * push - p.mu_p * s.theta_dot / (p.m * p.l)) /
                              (p.l * (4.0 / 3.0 - p.m * cos_t * cos_t / total));
    const double x_ddot =
        (f + p.m * p.l * (w2 * sin_t - theta_ddot * cos_t) - p.mu_c * sgn(s.x_dot)) / total - p.g * std::sin(s.tilt);
    return {theta_ddot, x_ddot};
}

PlantState step(const PlantState& s, double f, double dt, const PlantParams& p, Integrator integrator) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("time step must be positive");
    if (integrator == Integrator::euler) {
        auto a = derivatives(s, f, p);
        PlantState n = s;
        n.theta += dt * s.theta_dot;
        n.x += dt * s.x_dot;
        n.theta_dot += dt * a.theta_ddot;
        n.x_dot += dt * a.x_ddot;
        return n;
    }
    Deriv k1 = rates(s, f, p);
    Deriv k2 = rates(advance(s, k1, dt / 2), f, p);
    Deriv k3 = rates(advance(s, k2, dt / 2), f, p);
    Deriv k4 = rates(advance(s, k3, dt), f, p);
    Deriv sum{k1.theta + 2 * k2.theta + 2 * k3.theta + k4.theta,
              k1.theta_dot + 2 * k2.theta_dot + 2 * k3.theta_dot + k4.theta_dot, k1.x + 2 * k2.x + 2 * k3.x + k4.x,
              k1.x_dot + 2 * k2.x_dot + 2 * k3.x_dot + k4.x_dot};
    return advance(s, sum, dt / 6);
}

PlantState apply_event(PlantState s, const DisturbanceEvent& e) {
    if (const auto* tap = std::get_if<Tap>(&e.kind)) {
        s.theta_dot += tap->delta_theta_dot;
    } else {
        s.tilt = std::get<SetTilt>(e.kind).angle;
    }
    return s;
}

}  // namespace hfc
