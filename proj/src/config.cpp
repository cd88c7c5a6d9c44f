#include "hfc/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "hfc/rule_lang.hpp"

namespace hfc {

namespace {

using nlohmann::json;

void allow_keys(const json& j, std::string_view section, std::initializer_list<std::string_view> keys) {
    if (!j.is_object()) throw ConfigError(std::string(section) + " must be an object");
    for (const auto& [k, v] : j.items()) {
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
            throw ConfigError("unknown key '" + k + "' in " + std::string(section));
        }
    }
}

double number(const json& j, std::string_view key, std::string_view section, double fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number()) throw ConfigError(std::string(section) + "." + std::string(key) + " must be a number");
    return it->get<double>();
}

std::string text(const json& j, std::string_view key, std::string_view section, std::string fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_string()) throw ConfigError(std::string(section) + "." + std::string(key) + " must be a string");
    return it->get<std::string>();
}

int preset_number(const std::string& name) {
    if (name.size() == 6 && name.rfind("pole-", 0) == 0 && name[5] >= '1' && name[5] <= '7') return name[5] - '0';
    throw ConfigError("unknown pole preset '" + name + "' (expected pole-1 .. pole-7)");
}

PlantParams plant_from(const json& j, std::string_view section) {
    allow_keys(j, section, {"preset", "g", "m_c", "m", "l", "mu_c", "mu_p", "f_max"});
    PlantParams p;
    if (j.contains("preset")) p = PlantParams::pole(preset_number(text(j, "preset", section, "")));
    p.g = number(j, "g", section, p.g);
    p.m_c = number(j, "m_c", section, p.m_c);
    p.m = number(j, "m", section, p.m);
    p.l = number(j, "l", section, p.l);
    p.mu_c = number(j, "mu_c", section, p.mu_c);
    p.mu_p = number(j, "mu_p", section, p.mu_p);
    p.f_max = number(j, "f_max", section, p.f_max);
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string(section) + ": " + e.what());
    }
    return p;
}

DisturbanceEvent event_from(const json& j) {
    allow_keys(j, "scenario.events[]", {"t", "tap_rad_s", "tilt_deg"});
    if (!j.contains("t")) throw ConfigError("event without t");
    double t = number(j, "t", "event", 0.0);
    bool tap = j.contains("tap_rad_s"), tilt = j.contains("tilt_deg");
    if (tap == tilt) throw ConfigError("event needs exactly one of tap_rad_s, tilt_deg");
    if (tap) return {t, Tap{number(j, "tap_rad_s", "event", 0.0)}};
    return {t, SetTilt{deg_to_rad(number(j, "tilt_deg", "event", 0.0))}};
}

std::vector<std::complex<double>> poles_from(const json& j) {
    if (!j.is_array()) throw ConfigError("controller.poles must be an array");
    std::vector<std::complex<double>> out;
    for (const auto& p : j) {
        if (p.is_number()) {
            out.emplace_back(p.get<double>(), 0.0);
        } else if (p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number()) {
            out.emplace_back(p[0].get<double>(), p[1].get<double>());
        } else {
            throw ConfigError("controller.poles entries must be numbers or [re, im] pairs");
        }
    }
    return out;
}

VeryMode mode_from(const json& j) {
    if (j.is_string() && j.get<std::string>() == "concentration") return Concentration{};
    if (j.is_object() && j.size() == 1 && j.contains("narrowed") && j["narrowed"].is_number()) {
        return Narrowed{j["narrowed"].get<double>()};
    }
    throw ConfigError("mode must be \"concentration\" or {\"narrowed\": factor}");
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read " + path.string());
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

KnowledgeBase load_rules(const std::filesystem::path& path) {
    auto parsed = parse_knowledge_base(read_file(path));
    if (!parsed.kb) {
        std::string msg = "rule file has errors:";
        for (const auto& d : parsed.diagnostics) {
            if (d.severity == Severity::error) msg += "\n  " + format_diagnostic(d, path.string());
        }
        throw ConfigError(msg);
    }
    return std::move(*parsed.kb);
}

Scenario parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir) {
    json root = parse_json(json_text);
    allow_keys(root, "scenario file", {"plant", "scenario", "controller", "metrics", "goals"});
    Scenario sc;
    if (root.contains("plant")) sc.plant = plant_from(root["plant"], "plant");

    if (root.contains("scenario")) {
        const json& s = root["scenario"];
        allow_keys(s, "scenario", {"name", "duration", "dt", "control_period", "x_target", "track_bound",
                                   "theta_limit_deg", "integrator", "initial", "events"});
        sc.name = text(s, "name", "scenario", sc.name);
        sc.duration = number(s, "duration", "scenario", sc.duration);
        sc.dt = number(s, "dt", "scenario", sc.dt);
        sc.control_period = number(s, "control_period", "scenario", s.contains("dt") ? sc.dt : sc.control_period);
        sc.x_target = number(s, "x_target", "scenario", sc.x_target);
        sc.track_bound = number(s, "track_bound", "scenario", sc.track_bound);
        sc.theta_limit_deg = number(s, "theta_limit_deg", "scenario", sc.theta_limit_deg);
        std::string integ = text(s, "integrator", "scenario", "euler");
        if (integ == "euler") {
            sc.integrator = Integrator::euler;
        } else if (integ == "rk4") {
            sc.integrator = Integrator::rk4;
        } else {
            throw ConfigError("scenario.integrator must be euler or rk4");
        }
        if (s.contains("initial")) {
            const json& i = s["initial"];
            allow_keys(i, "scenario.initial", {"theta_deg", "theta_dot_deg_s", "x_m", "x_dot_m_s", "tilt_deg"});
            sc.initial.theta = deg_to_rad(number(i, "theta_deg", "initial", 0.0));
            sc.initial.theta_dot = deg_to_rad(number(i, "theta_dot_deg_s", "initial", 0.0));
            sc.initial.x = number(i, "x_m", "initial", 0.0);
            sc.initial.x_dot = number(i, "x_dot_m_s", "initial", 0.0);
            sc.initial.tilt = deg_to_rad(number(i, "tilt_deg", "initial", 0.0));
        }
        if (s.contains("events")) {
            if (!s["events"].is_array()) throw ConfigError("scenario.events must be an array");
            for (const auto& e : s["events"]) sc.events.push_back(event_from(e));
        }
    }

    if (root.contains("controller")) {
        const json& c = root["controller"];
        allow_keys(c, "controller", {"type", "rules", "nominal", "poles"});
        std::string type = text(c, "type", "controller", "fc");
        if (type == "fc") {
            sc.controller.kind = ControllerKind::fc;
            if (c.contains("nominal") || c.contains("poles")) throw ConfigError("nominal/poles only apply to sfc");
            if (c.contains("rules")) {
                std::filesystem::path p = text(c, "rules", "controller", "");
                sc.controller.kb = load_rules(p.is_absolute() ? p : base_dir / p);
            }
        } else if (type == "sfc") {
            sc.controller.kind = ControllerKind::sfc;
            if (c.contains("rules")) throw ConfigError("rules only apply to fc");
            if (c.contains("nominal")) {
                const json& n = c["nominal"];
                if (n.is_string()) {
                    std::string name = n.get<std::string>();
                    if (name != "matched") sc.controller.nominal = PlantParams::pole(preset_number(name));
                } else {
                    sc.controller.nominal = plant_from(n, "controller.nominal");
                }
            }
            if (c.contains("poles")) sc.controller.poles = poles_from(c["poles"]);
        } else {
            throw ConfigError("controller.type must be fc or sfc");
        }
    }

    if (root.contains("metrics")) {
        const json& m = root["metrics"];
        allow_keys(m, "metrics", {"theta_band_deg", "x_band_m"});
        sc.metrics.theta_band_deg = number(m, "theta_band_deg", "metrics", sc.metrics.theta_band_deg);
        sc.metrics.x_band_m = number(m, "x_band_m", "metrics", sc.metrics.x_band_m);
    }
    if (sc.name.empty()) sc.name = sc.controller.kind == ControllerKind::fc ? "FC" : "SFC";
    try {
        sc.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    return parse_scenario(read_file(path), path.parent_path());
}

std::optional<GoalSpec> parse_goal_spec(std::string_view json_text) {
    json root = parse_json(json_text);
    const json* goals = &root;
    if (root.is_object()) {
        if (!root.contains("goals")) return std::nullopt;
        goals = &root["goals"];
    }
    if (!goals->is_array()) throw ConfigError("goals must be an array");
    GoalSpec spec;
    for (const auto& g : *goals) {
        allow_keys(g, "goal", {"name", "inputs", "achievement"});
        Goal goal;
        goal.name = text(g, "name", "goal", "");
        if (g.contains("inputs")) {
            for (const auto& u : g["inputs"]) {
                if (!u.is_string()) throw ConfigError("goal inputs must be strings");
                goal.inputs.push_back(u.get<std::string>());
            }
        }
        if (g.contains("achievement")) {
            for (const auto& a : g["achievement"]) {
                allow_keys(a, "achievement", {"variable", "base", "very", "mode"});
                AchievementTerm term{text(a, "variable", "achievement", ""), text(a, "base", "achievement", ""),
                                     text(a, "very", "achievement", ""), std::nullopt};
                if (term.variable.empty() || term.base_label.empty()) {
                    throw ConfigError("achievement terms need variable and base");
                }
                if (a.contains("mode")) term.mode = mode_from(a["mode"]);
                goal.achievement.push_back(std::move(term));
            }
        }
        spec.goals.push_back(std::move(goal));
    }
    try {
        spec.validate();
    } catch (const HierarchyError& e) {
        throw ConfigError(e.what());
    }
    return spec;
}

}  // namespace hfc
