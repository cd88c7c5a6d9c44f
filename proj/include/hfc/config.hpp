#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hfc/harness.hpp"
#include "hfc/hierarchy.hpp"

namespace hfc {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario file (JSON) with sections:
///
///   plant:      preset ("pole-1".."pole-7") and/or g, m_c, m, l, mu_c, mu_p, f_max
///   scenario:   name, duration, dt, control_period, x_target, track_bound,
///               theta_limit_deg, integrator ("euler" | "rk4"),
///               initial {theta_deg, theta_dot_deg_s, x_m, x_dot_m_s, tilt_deg},
///               events [{t, tap_rad_s} | {t, tilt_deg}]
///   controller: type ("fc" | "sfc"); fc: rules (path, relative to the file);
///               sfc: nominal ("matched" | preset | plant object), poles
///               (numbers or [re, im] pairs)
///   metrics:    theta_band_deg, x_band_m
///   goals:      goal spec (see parse_goal_spec); ignored by the simulator
///
/// Every section and key is optional; unknown keys are rejected.
Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

/// Accepts a bare goal array, an object with a "goals" array, or a whole
/// scenario file. Each goal: {name, inputs: [..], achievement: [{variable,
/// base, very, mode}]}, mode "concentration" or {"narrowed": factor}.
/// Returns nullopt when the document has no goals.
std::optional<GoalSpec> parse_goal_spec(std::string_view json_text);

/// Reads and parses a rule file; throws ConfigError listing the
/// diagnostics when it has errors.
KnowledgeBase load_rules(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace hfc
