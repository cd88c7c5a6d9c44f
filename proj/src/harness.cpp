#include "hfc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <numbers>
#include <sstream>
#include <thread>

#include "hfc/inference.hpp"
#include "hfc/rule_lang.hpp"

namespace hfc {

double deg_to_rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }
double rad_to_deg(double rad) noexcept { return rad * 180.0 / std::numbers::pi; }

const char* to_string(Termination t) noexcept {
    switch (t) {
        case Termination::completed: return "completed";
        case Termination::pole_fell: return "pole_fell";
        case Termination::left_track: return "left_track";
    }
    return "?";
}

void Scenario::validate() const {
    auto bad = [](const std::string& what) { throw std::invalid_argument("scenario: " + what); };
    plant.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) bad("dt must be positive");
    if (!(duration > 0.0) || !std::isfinite(duration)) bad("duration must be positive");
    if (duration / dt > 1e8) bad("too many steps");
    if (!(control_period >= dt * (1 - 1e-9)) || !std::isfinite(control_period)) bad("control_period must be >= dt");
    double ratio = control_period / dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-6 * ratio) bad("control_period must be an integer multiple of dt");
    if (!(track_bound > 0.0)) bad("track_bound must be positive");
    if (!(theta_limit_deg > 0.0 && theta_limit_deg <= 180.0)) bad("theta_limit_deg must lie in (0, 180]");
    if (!std::isfinite(x_target)) bad("x_target must be finite");
    if (!(metrics.theta_band_deg > 0.0) || !(metrics.x_band_m > 0.0)) bad("settling bands must be positive");
    for (const auto& e : events) {
        if (!(e.t >= 0.0) || !std::isfinite(e.t)) bad("event times must be finite and >= 0");
    }
}

int Scenario::hold_steps() const { return std::max(1, static_cast<int>(std::lround(control_period / dt))); }

namespace {

enum class Quantity { theta, theta_dot, x_error, x_dot };

struct InputBinding {
    std::size_t index;
    Quantity quantity;
    double scale;
};

InputBinding bind_input(const LinguisticVariable& v, std::size_t index) {
    static const std::vector<std::pair<std::string, Quantity>> names = {
        {"theta", Quantity::theta}, {"theta_dot", Quantity::theta_dot}, {"x", Quantity::x_error}, {"x_dot", Quantity::x_dot}};
    auto it = std::find_if(names.begin(), names.end(), [&](const auto& n) { return n.first == v.name(); });
    if (it == names.end()) {
        throw std::invalid_argument("input variable " + v.name() + " is not a cart-pole state (theta, theta_dot, x, x_dot)");
    }
    bool angular = it->second == Quantity::theta || it->second == Quantity::theta_dot;
    bool rate = it->second == Quantity::theta_dot || it->second == Quantity::x_dot;
    std::string unit = v.unit();
    if (rate) {
        if (unit.size() < 2 || unit.substr(unit.size() - 2) != "/s") {
            throw std::invalid_argument("variable " + v.name() + " needs a rate unit, got " + unit);
        }
        unit.resize(unit.size() - 2);
    }
    double scale = 0.0;
    if (angular && unit == "deg") scale = 180.0 / std::numbers::pi;
    if (angular && unit == "rad") scale = 1.0;
    if (!angular && unit == "m") scale = 1.0;
    if (!angular && unit == "cm") scale = 100.0;
    if (scale == 0.0) throw std::invalid_argument("unsupported unit " + v.unit() + " on variable " + v.name());
    return {index, it->second, scale};
}

ControlLaw fuzzy_law(const Scenario& sc) {
    auto engine = std::make_shared<const InferenceEngine>(sc.controller.kb ? *sc.controller.kb : builtin_pole_kb());
    const KnowledgeBase& kb = engine->kb();
    std::vector<InputBinding> bindings;
    for (std::size_t i = 0; i < kb.variables().size(); ++i) {
        if (kb.variables()[i].name() != kb.output_name()) bindings.push_back(bind_input(kb.variables()[i], i));
    }
    const double x0 = sc.x_target;
    const std::size_t n = kb.variables().size();
    return [engine, bindings, x0, n](const PlantState& s) {
        std::vector<double> values(n, 0.0);
        for (const auto& b : bindings) {
            double v = 0.0;
            switch (b.quantity) {
                case Quantity::theta: v = s.theta; break;
                case Quantity::theta_dot: v = s.theta_dot; break;
                case Quantity::x_error: v = s.x - x0; break;
                case Quantity::x_dot: v = s.x_dot; break;
            }
            values[b.index] = v * b.scale;
        }
        return engine->output(std::span<const double>(values));
    };
}

ControlLaw sfc_law(const Scenario& sc) {
    const PlantParams nominal = sc.controller.nominal.value_or(sc.plant);
    GainVector gains = design_gains(linearize(nominal), sc.controller.poles, sc.plant.f_max);
    gains.reference = PlantState{0.0, 0.0, sc.x_target, 0.0, 0.0};
    return [gains](const PlantState& s) { return sfc_output(gains, s); };
}

}  // namespace

ControlLaw make_controller(const Scenario& scenario) {
    return scenario.controller.kind == ControllerKind::fc ? fuzzy_law(scenario) : sfc_law(scenario);
}

Trajectory run(const Scenario& sc) {
    sc.validate();
    Trajectory tr;
    ControlLaw law = make_controller(sc);
    auto events = sc.events;
    std::stable_sort(events.begin(), events.end(), [](const auto& a, const auto& b) { return a.t < b.t; });

    const long steps = std::lround(sc.duration / sc.dt);
    const int hold = sc.hold_steps();
    const double theta_limit = deg_to_rad(sc.theta_limit_deg);
    tr.rows.reserve(static_cast<std::size_t>(steps) + 1);

    PlantState s = sc.initial;
    double force = 0.0;
    std::size_t next_event = 0;
    for (long n = 0;; ++n) {
        const double t = static_cast<double>(n) * sc.dt;
        while (next_event < events.size() && events[next_event].t <= t + 1e-9 * std::max(1.0, t)) {
            s = apply_event(s, events[next_event++]);
        }
        if (n % hold == 0) {
            try {
                force = std::clamp(law(s), -sc.plant.f_max, sc.plant.f_max);
            } catch (const NoRuleFired& e) {
                force = 0.0;
                if (tr.no_rule_fired++ < 10) {
                    tr.warnings.push_back("t=" + format_sig6(t) + ": " + e.what() + "; force set to 0");
                }
            }
        }
        tr.rows.push_back({t, s.theta, s.theta_dot, s.x, s.x_dot, force, s.tilt});
        if (std::abs(s.theta) > theta_limit) {
            tr.termination = Termination::pole_fell;
            break;
        }
        if (std::abs(s.x - sc.x_target) > sc.track_bound) {
            tr.termination = Termination::left_track;
            break;
        }
        if (n >= steps) break;
        s = step(s, force, sc.dt, sc.plant, sc.integrator);
    }
    return tr;
}

SignalMetrics step_metrics(std::span<const double> t, std::span<const double> y, double sp, double band) {
    if (y.empty() || t.size() != y.size()) throw std::invalid_argument("step_metrics needs matching, non-empty series");
    const double y0 = y.front();
    double d = 1.0;
    if (std::abs(sp - y0) > band) {
        d = sp > y0 ? 1.0 : -1.0;
    } else {
        auto first = std::find_if(y.begin(), y.end(), [&](double v) { return std::abs(v - sp) > band; });
        if (first != y.end()) d = *first > sp ? -1.0 : 1.0;
    }
    SignalMetrics m;
    bool reached = false;
    std::size_t last_out = y.size();
    for (std::size_t i = 0; i < y.size(); ++i) {
        double e = d * (y[i] - sp);
        if (!reached && e >= 0.0) reached = true;
        m.overshoot = std::max(m.overshoot, e);
        m.undershoot = std::max(m.undershoot, reached ? -e : -d * (y[i] - y0));
        if (std::abs(y[i] - sp) > band) last_out = i;
    }
    if (last_out == y.size()) {
        m.settling_time = 0.0;
    } else if (last_out + 1 < y.size()) {
        m.settling_time = t[last_out + 1];
    }
    return m;
}

MetricsReport compute_metrics(const Trajectory& traj, const Scenario& scenario) {
    if (traj.rows.empty()) throw std::invalid_argument("empty trajectory");
    std::vector<double> t, theta, x;
    t.reserve(traj.rows.size());
    for (const auto& r : traj.rows) {
        t.push_back(r.t);
        theta.push_back(rad_to_deg(r.theta));
        x.push_back(r.x * 100.0);
    }
    MetricsReport rep;
    rep.theta = step_metrics(t, theta, 0.0, scenario.metrics.theta_band_deg);
    rep.x = step_metrics(t, x, scenario.x_target * 100.0, scenario.metrics.x_band_m * 100.0);
    if (traj.termination != Termination::completed) {
        rep.theta.settling_time.reset();
        rep.x.settling_time.reset();
    }
    return rep;
}

Comparison compare(const std::vector<Scenario>& scenarios, unsigned threads) {
    if (scenarios.empty()) throw std::invalid_argument("compare needs at least one scenario");
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    auto one = [](const Scenario& sc) {
        ComparisonCell cell;
        cell.column = sc.name;
        try {
            Trajectory tr = run(sc);
            cell.termination = tr.termination;
            cell.metrics = compute_metrics(tr, sc);
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
        return cell;
    };
    Comparison out;
    out.bands = scenarios.front().metrics;
    out.cells.resize(scenarios.size());
    for (std::size_t start = 0; start < scenarios.size(); start += threads) {
        std::size_t end = std::min(scenarios.size(), start + threads);
        std::vector<std::future<ComparisonCell>> jobs;
        for (std::size_t i = start; i < end; ++i) jobs.push_back(std::async(std::launch::async, one, std::cref(scenarios[i])));
        for (std::size_t i = start; i < end; ++i) out.cells[i] = jobs[i - start].get();
    }
    return out;
}

namespace {

struct MetricRow {
    const char* label;
    const char* key;
};

constexpr MetricRow kRows[] = {
    {"Max. theta overshoot (deg)", "theta_overshoot_deg"},
    {"Max. theta undershoot (deg)", "theta_undershoot_deg"},
    {"theta settling time (s)", "theta_settling_s"},
    {"Max. x overshoot (cm)", "x_overshoot_cm"},
    {"Max. x undershoot (cm)", "x_undershoot_cm"},
    {"x settling time (s)", "x_settling_s"},
};

std::optional<double> metric_value(const MetricsReport& m, std::size_t row) {
    switch (row) {
        case 0: return m.theta.overshoot;
        case 1: return m.theta.undershoot;
        case 2: return m.theta.settling_time;
        case 3: return m.x.overshoot;
        case 4: return m.x.undershoot;
        default: return m.x.settling_time;
    }
}

std::string cell_text(const ComparisonCell& c, std::size_t row, bool csv) {
    if (!c.error.empty()) return "FAILED(" + c.error + ")";
    if (row == std::size(kRows)) return to_string(c.termination);
    auto v = metric_value(*c.metrics, row);
    if (!v) return "not-settled";
    if (csv) return format_sig6(*v);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", *v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

std::string bands_note(const MetricsConfig& b) {
    return "settling bands: theta +-" + format_sig6(b.theta_band_deg) + " deg, x +-" + format_sig6(b.x_band_m * 100.0) +
           " cm; x is the cart position";
}

}  // namespace

std::string render_text(const Comparison& c) {
    std::vector<std::vector<std::string>> grid;
    grid.push_back({"metric"});
    for (const auto& cell : c.cells) grid.front().push_back(cell.column);
    for (std::size_t r = 0; r <= std::size(kRows); ++r) {
        std::vector<std::string> line{r < std::size(kRows) ? kRows[r].label : "termination"};
        for (const auto& cell : c.cells) line.push_back(cell_text(cell, r, false));
        grid.push_back(std::move(line));
    }
    std::vector<std::size_t> width(grid.front().size(), 0);
    for (const auto& line : grid) {
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    }
    std::ostringstream os;
    for (const auto& line : grid) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i == 0) {
                os << line[i] << std::string(width[i] - line[i].size(), ' ');
            } else {
                os << "  " << std::string(width[i] - line[i].size(), ' ') << line[i];
            }
        }
        os << '\n';
    }
    os << bands_note(c.bands) << '\n';
    return os.str();
}

std::string render_csv(const Comparison& c) {
    std::ostringstream os;
    os << "metric";
    for (const auto& cell : c.cells) os << ',' << csv_field(cell.column);
    os << '\n';
    for (std::size_t r = 0; r <= std::size(kRows); ++r) {
        os << (r < std::size(kRows) ? kRows[r].key : "termination");
        for (const auto& cell : c.cells) os << ',' << csv_field(cell_text(cell, r, true));
        os << '\n';
    }
    return os.str();
}

std::string format_sig6(double v) {
    if (v == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void emit_trajectory(const Trajectory& traj, std::ostream& out) {
    out << "t,theta_deg,theta_dot_deg_s,x_m,x_dot_m_s,force_N,tilt_deg\n";
    for (const auto& r : traj.rows) {
        out << format_sig6(r.t) << ',' << format_sig6(rad_to_deg(r.theta)) << ',' << format_sig6(rad_to_deg(r.theta_dot))
            << ',' << format_sig6(r.x) << ',' << format_sig6(r.x_dot) << ',' << format_sig6(r.force) << ','
            << format_sig6(rad_to_deg(r.tilt)) << '\n';
    }
}

void emit_trajectory(const Trajectory& traj, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    emit_trajectory(traj, f);
    f.flush();
    if (!f) throw std::runtime_error("write to " + path + " failed");
}

Scenario comparison_scenario(int pole, ControllerKind kind) {
    Scenario sc;
    sc.plant = PlantParams::pole(pole);
    sc.controller.kind = kind;
    sc.name = "Pole-" + std::to_string(pole) + (kind == ControllerKind::fc ? " FC" : " SFC");
    return sc;
}

Scenario robustness_scenario(ControllerKind kind) {
    Scenario sc = comparison_scenario(7, kind);
    if (kind == ControllerKind::sfc) {
        sc.controller.nominal = PlantParams::pole(1);
        sc.name += " (Pole-1 gains)";
    }
    return sc;
}

Scenario tap_scenario() {
    Scenario sc = comparison_scenario(1, ControllerKind::fc);
    sc.name = "Pole-1 FC taps";
    sc.events = {{15.0, Tap{kTapRadPerSec}}, {35.0, Tap{kTapRadPerSec}}};
    return sc;
}

Scenario tilt_scenario() {
    Scenario sc = comparison_scenario(1, ControllerKind::fc);
    sc.name = "Pole-1 FC tilt";
    sc.events = {{20.0, SetTilt{deg_to_rad(7.0)}}, {45.0, SetTilt{0.0}}};
    return sc;
}

}  // namespace hfc
