#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hfc/baseline_sfc.hpp"
#include "hfc/knowledge_base.hpp"
#include "hfc/plant.hpp"

namespace hfc {

enum class ControllerKind { fc, sfc };

struct ControllerSpec {
    ControllerKind kind = ControllerKind::fc;
    /// Fuzzy only: knowledge base to use; nullopt means the built-in one.
    std::optional<KnowledgeBase> kb;
    /// SFC only: plant the gains are designed on; nullopt means the
    /// simulated plant itself.
    std::optional<PlantParams> nominal;
    std::vector<std::complex<double>> poles = default_sfc_poles();
};

/// Settling bands, in the report units (deg and m).
struct MetricsConfig {
    double theta_band_deg = 0.1;
    double x_band_m = 0.02;
};

struct Scenario {
    std::string name;
    PlantParams plant;
    PlantState initial;
    double x_target = 0.5;
    double duration = 50.0;
    double dt = 0.005;
    double control_period = 0.005;
    std::vector<DisturbanceEvent> events;
    ControllerSpec controller;
    double track_bound = 2.4;
    double theta_limit_deg = 45.0;
    Integrator integrator = Integrator::euler;
    MetricsConfig metrics;

    /// Throws std::invalid_argument on an inconsistent scenario.
    void validate() const;
    /// Number of integration steps per control update.
    int hold_steps() const;
};

struct Sample {
    double t;
    double theta;
    double theta_dot;
    double x;
    double x_dot;
    double force;
    double tilt;
};

enum class Termination { completed, pole_fell, left_track };
const char* to_string(Termination t) noexcept;

struct Trajectory {
    std::vector<Sample> rows;
    Termination termination = Termination::completed;
    /// Control instants where no rule fired and the force fell back to 0.
    std::size_t no_rule_fired = 0;
    std::vector<std::string> warnings;
};

/// Maps a plant state to a force. The fuzzy law throws NoRuleFired when
/// nothing fires; run() turns that into a zero force and a warning.
using ControlLaw = std::function<double(const PlantState&)>;

/// Throws on a knowledge base whose inputs cannot be mapped to the plant
/// state (unknown variable name or unit) or on a failed gain design.
ControlLaw make_controller(const Scenario& scenario);

/// Closed-loop simulation with zero-order hold between control instants.
Trajectory run(const Scenario& scenario);

struct SignalMetrics {
    double overshoot = 0.0;
    double undershoot = 0.0;
    std::optional<double> settling_time;  // nullopt: not settled
};

/// theta in degrees, x in centimetres.
struct MetricsReport {
    SignalMetrics theta;
    SignalMetrics x;
};

/// Step-response metrics of y against setpoint sp. The approach direction
/// is toward sp from y[0]; when y[0] already lies in the band it is taken
/// opposite to the first excursion out of the band, so that excursion
/// counts as undershoot. Overshoot is the largest excursion beyond sp in
/// the approach direction; undershoot the largest one the other way
/// (before sp is first reached: measured from y[0]). Settling time is the
/// time of the first sample after the last one outside the band.
SignalMetrics step_metrics(std::span<const double> t, std::span<const double> y, double sp, double band);

MetricsReport compute_metrics(const Trajectory& traj, const Scenario& scenario);

struct ComparisonCell {
    std::string column;  // e.g. "Pole-1 FC"
    std::optional<MetricsReport> metrics;
    Termination termination = Termination::completed;
    std::string error;  // set when the run failed
};

struct Comparison {
    std::vector<ComparisonCell> cells;
    MetricsConfig bands;
};

/// Runs each scenario (in parallel when threads > 1) and collects the
/// cells in input order. A failing run yields a FAILED cell.
Comparison compare(const std::vector<Scenario>& scenarios, unsigned threads = 0);

std::string render_text(const Comparison& c);
std::string render_csv(const Comparison& c);

/// Header t,theta_deg,theta_dot_deg_s,x_m,x_dot_m_s,force_N,tilt_deg;
/// 6 significant digits.
void emit_trajectory(const Trajectory& traj, std::ostream& out);
/// Throws std::runtime_error naming the path when it cannot be written.
void emit_trajectory(const Trajectory& traj, const std::string& path);

/// Shortest "%.6g" rendering used in CSV output.
std::string format_sig6(double v);

double deg_to_rad(double deg) noexcept;
double rad_to_deg(double rad) noexcept;

/// Rest at the origin, move the cart to +0.5 m; SFC gains designed on the
/// simulated pole.
Scenario comparison_scenario(int pole, ControllerKind kind);
/// Pole-7 plant; SFC gains designed on Pole-1.
Scenario robustness_scenario(ControllerKind kind);
/// FC on Pole-1 tapped (+0.35 rad/s) at 15 s and 35 s.
Scenario tap_scenario();
/// FC on Pole-1 with the track tilted 7 deg at 20 s and levelled at 45 s.
Scenario tilt_scenario();

inline constexpr double kTapRadPerSec = 0.35;

}  // namespace hfc
