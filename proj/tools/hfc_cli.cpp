// hfc: command-line front end for the fuzzy cart-pole toolkit.
//
// Exit codes: 0 success, 1 diagnostics/configuration errors, 2 runtime failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hfc/config.hpp"
#include "hfc/harness.hpp"
#include "hfc/hierarchy.hpp"
#include "hfc/rule_lang.hpp"

namespace {

struct Globals {
    std::optional<double> dt;
    std::optional<double> duration;
    std::optional<double> target;
    bool seedless = false;
};

void apply(const Globals& g, hfc::Scenario& sc) {
    if (g.dt) {
        // Keep the hold ratio when only dt changes.
        int hold = sc.hold_steps();
        sc.dt = *g.dt;
        sc.control_period = *g.dt * hold;
    }
    if (g.duration) sc.duration = *g.duration;
    if (g.target) sc.x_target = *g.target;
    sc.validate();
}

std::vector<int> parse_poles(const std::string& list) {
    std::vector<int> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            int p = std::stoi(item, &used);
            if (used != item.size() || p < 1 || p > 7) throw std::invalid_argument(item);
            out.push_back(p);
        } catch (const std::exception&) {
            throw hfc::ConfigError("bad pole '" + item + "' (expected 1..7)");
        }
    }
    if (out.empty()) throw hfc::ConfigError("no poles given");
    return out;
}

std::vector<hfc::ControllerKind> parse_controllers(const std::string& list) {
    std::vector<hfc::ControllerKind> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "fc") {
            out.push_back(hfc::ControllerKind::fc);
        } else if (item == "sfc") {
            out.push_back(hfc::ControllerKind::sfc);
        } else {
            throw hfc::ConfigError("bad controller '" + item + "' (expected fc or sfc)");
        }
    }
    if (out.empty()) throw hfc::ConfigError("no controllers given");
    return out;
}

std::string trajectory_csv(const hfc::Trajectory& tr) {
    std::ostringstream os;
    hfc::emit_trajectory(tr, os);
    return os.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
    if (!f.flush()) throw std::runtime_error("write to " + path + " failed");
}

void print_metrics(std::ostream& os, const hfc::Scenario& sc, const hfc::Trajectory& tr) {
    auto m = hfc::compute_metrics(tr, sc);
    auto settle = [](const std::optional<double>& t) { return t ? hfc::format_sig6(*t) + " s" : std::string("not settled"); };
    os << sc.name << ": " << hfc::to_string(tr.termination) << " at t=" << hfc::format_sig6(tr.rows.back().t) << " s\n"
       << "  theta overshoot " << hfc::format_sig6(m.theta.overshoot) << " deg, undershoot "
       << hfc::format_sig6(m.theta.undershoot) << " deg, settling " << settle(m.theta.settling_time) << '\n'
       << "  x overshoot " << hfc::format_sig6(m.x.overshoot) << " cm, undershoot " << hfc::format_sig6(m.x.undershoot)
       << " cm, settling " << settle(m.x.settling_time) << '\n';
    for (const auto& w : tr.warnings) os << "warning: " << w << '\n';
    if (tr.no_rule_fired > tr.warnings.size()) os << "warning: no rule fired at " << tr.no_rule_fired << " control instants\n";
}

int cmd_simulate(const Globals& g, const std::string& scenario_path, const std::string& out_path) {
    hfc::Scenario sc = scenario_path.empty() ? hfc::comparison_scenario(1, hfc::ControllerKind::fc)
                                             : hfc::load_scenario(scenario_path);
    apply(g, sc);
    hfc::Trajectory tr = hfc::run(sc);
    std::string csv = trajectory_csv(tr);
    if (g.seedless && trajectory_csv(hfc::run(sc)) != csv) {
        std::cerr << "error: repeated run differs; the simulation is not deterministic\n";
        return 2;
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << csv;
        print_metrics(std::cerr, sc, tr);
    } else {
        write_text(out_path, csv);
        print_metrics(std::cout, sc, tr);
    }
    return 0;
}

int cmd_compare(const Globals& g, const std::vector<int>& poles, const std::vector<hfc::ControllerKind>& kinds,
                const std::string& report, unsigned threads) {
    std::vector<hfc::Scenario> scenarios;
    for (int p : poles) {
        for (auto k : kinds) {
            hfc::Scenario sc = hfc::comparison_scenario(p, k);
            apply(g, sc);
            scenarios.push_back(std::move(sc));
        }
    }
    hfc::Comparison c = hfc::compare(scenarios, threads);
    std::string csv = hfc::render_csv(c);
    if (g.seedless && hfc::render_csv(hfc::compare(scenarios, threads)) != csv) {
        std::cerr << "error: repeated comparison differs; the simulation is not deterministic\n";
        return 2;
    }
    std::cout << hfc::render_text(c);
    if (!report.empty()) write_text(report, csv);
    return 0;
}

int cmd_lint(const std::string& rules_path, const std::string& goals_path, bool quiet) {
    std::string text = hfc::read_file(rules_path);
    auto parsed = hfc::parse_knowledge_base(text);
    std::vector<hfc::Diagnostic> diags = parsed.diagnostics;
    if (parsed.kb) {
        auto v = hfc::validate_kb(*parsed.kb);
        diags.insert(diags.end(), v.begin(), v.end());
        hfc::GoalSpec goals = hfc::cart_pole_goals();
        if (!goals_path.empty()) {
            auto spec = hfc::parse_goal_spec(hfc::read_file(goals_path));
            if (!spec) throw hfc::ConfigError(goals_path + " declares no goals");
            goals = std::move(*spec);
        }
        auto audit = hfc::to_diagnostics(hfc::audit_hierarchy(*parsed.kb, goals));
        diags.insert(diags.end(), audit.begin(), audit.end());
    }
    std::size_t errors = 0, warnings = 0;
    for (const auto& d : diags) {
        (d.severity == hfc::Severity::error ? errors : warnings)++;
        if (!quiet || d.severity == hfc::Severity::error) std::cout << hfc::format_diagnostic(d, rules_path) << '\n';
    }
    std::cout << rules_path << ": " << errors << " error(s), " << warnings << " warning(s)";
    if (parsed.kb) std::cout << ", " << parsed.kb->rules().size() << " rules";
    std::cout << '\n';
    return errors ? 1 : 0;
}

int cmd_fmt(const std::string& rules_path) {
    if (rules_path.empty()) {
        std::cout << hfc::serialize_kb(hfc::builtin_pole_kb());
        return 0;
    }
    auto parsed = hfc::parse_knowledge_base(hfc::read_file(rules_path));
    if (!parsed.kb) {
        for (const auto& d : parsed.diagnostics) std::cerr << hfc::format_diagnostic(d, rules_path) << '\n';
        return 1;
    }
    std::cout << hfc::serialize_kb(*parsed.kb);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hierarchical fuzzy cart-pole controller toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    double dt = 0, duration = 0, target = 0;
    auto* dt_opt = app.add_option("--dt", dt, "integration step (s)")->check(CLI::PositiveNumber);
    auto* dur_opt = app.add_option("--duration", duration, "simulated time (s)")->check(CLI::PositiveNumber);
    auto* tgt_opt = app.add_option("--target", target, "cart target position x0 (m)");
    app.add_flag("--seedless", g.seedless, "run twice and fail unless the output is byte-identical");

    std::string scenario_path, out_path;
    auto* simulate = app.add_subcommand("simulate", "run one scenario and write its trajectory");
    simulate->add_option("--scenario", scenario_path, "scenario JSON file (default: Pole-1 FC)")->check(CLI::ExistingFile);
    simulate->add_option("--out", out_path, "trajectory CSV (default: stdout)");

    std::string poles = "1,2,6", controllers = "fc,sfc", report;
    unsigned threads = 0;
    auto* cmp = app.add_subcommand("compare", "FC/SFC metric table over pole presets");
    cmp->add_option("--poles", poles, "comma-separated pole presets")->capture_default_str();
    cmp->add_option("--controllers", controllers, "fc, sfc or both")->capture_default_str();
    cmp->add_option("--report", report, "write the table as CSV");
    cmp->add_option("--threads", threads, "worker threads (0: all cores)");

    bool all_poles = false;
    auto* batch = app.add_subcommand("batch", "compare over every pole preset");
    batch->add_flag("--all-poles", all_poles, "use poles 1-7 (the default)");
    batch->add_option("--report", report, "write the table as CSV");
    batch->add_option("--threads", threads, "worker threads (0: all cores)");

    std::string rules_path, goals_path;
    bool quiet = false;
    auto* lint = app.add_subcommand("lint", "validate a rule file and audit its goal hierarchy");
    lint->add_option("--rules", rules_path, "rule file")->required()->check(CLI::ExistingFile);
    lint->add_option("--goals", goals_path, "goal spec JSON (default: cart-pole goals)")->check(CLI::ExistingFile);
    lint->add_flag("--quiet", quiet, "print errors only");

    auto* fmt = app.add_subcommand("fmt", "print a rule file in canonical form (default: the built-in rules)");
    fmt->add_option("--rules", rules_path, "rule file")->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (*dt_opt) g.dt = dt;
    if (*dur_opt) g.duration = duration;
    if (*tgt_opt) g.target = target;

    try {
        if (*simulate) return cmd_simulate(g, scenario_path, out_path);
        if (*cmp) return cmd_compare(g, parse_poles(poles), parse_controllers(controllers), report, threads);
        if (*batch) {
            (void)all_poles;
            return cmd_compare(g, parse_poles("1,2,3,4,5,6,7"), parse_controllers("fc,sfc"), report, threads);
        }
        if (*lint) return cmd_lint(rules_path, goals_path, quiet);
        if (*fmt) return cmd_fmt(rules_path);
    } catch (const hfc::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
