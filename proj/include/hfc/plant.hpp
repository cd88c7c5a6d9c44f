#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <variant>

namespace hfc {

/// Angles in rad, positions in m. tilt is the current track inclination.
struct PlantState {
    double theta = 0.0;
    double theta_dot = 0.0;
    double x = 0.0;
    double x_dot = 0.0;
    double tilt = 0.0;
    bool operator==(const PlantState&) const = default;
};

struct PlantParams {
    double g = 9.8;         // m/s^2
    double m_c = 1.0;       // cart mass, kg
    double m = 0.1;         // pole mass, kg
    double l = 0.5;         // half-pole length, m
    double mu_c = 0.0005;   // cart-track friction
    double mu_p = 0.000002; // pole-hinge friction
    double f_max = 10.0;    // N

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
    PlantParams frictionless() const;

    /// Presets 1..7: the pole table (length, mass) with l = length / 2.
    static PlantParams pole(int preset);
    bool operator==(const PlantParams&) const = default;
};

struct PolePreset {
    double length;  // m
    double mass;    // kg
};

inline constexpr std::array<PolePreset, 7> kPolePresets{{
    {1.0, 0.1},
    {0.5, 0.05},
    {1.0, 0.05},
    {0.5, 0.025},
    {1.0, 0.5},
    {1.0, 1.0},
    {1.0, 2.0},
}};

struct Accelerations {
    double theta_ddot;
    double x_ddot;
};

/// Classic cart-pole equations with Coulomb friction, sgn(0) = 0, f
/// clamped to +-f_max, and the track tilt entering as a -g sin(tilt) bias
/// on the cart acceleration. Throws std::domain_error on non-finite input.
Accelerations derivatives(const PlantState& s, double f, const PlantParams& p);

enum class Integrator { euler, rk4 };

/// Forward Euler: velocities advance with the accelerations at s,
/// positions with the old velocities. rk4 is the classical 4-stage method
/// with f held constant.
PlantState step(const PlantState& s, double f, double dt, const PlantParams& p,
                Integrator integrator = Integrator::euler);

struct Tap {
    double delta_theta_dot;  // rad/s
    bool operator==(const Tap&) const = default;
};

struct SetTilt {
    double angle;  // rad
    bool operator==(const SetTilt&) const = default;
};

struct DisturbanceEvent {
    double t = 0.0;
    std::variant<Tap, SetTilt> kind;
    bool operator==(const DisturbanceEvent&) const = default;
};

PlantState apply_event(PlantState s, const DisturbanceEvent& e);

}  // namespace hfc
