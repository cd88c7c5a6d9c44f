#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hfc/harness.hpp"
#include "hfc/rule_lang.hpp"
#include "oracles.hpp"

using namespace hfc;

namespace {

std::string csv_of(const Trajectory& tr) {
    std::ostringstream os;
    emit_trajectory(tr, os);
    return os.str();
}

Scenario short_run(ControllerKind kind, double duration = 5.0) {
    Scenario sc = comparison_scenario(1, kind);
    sc.duration = duration;
    return sc;
}

}  // namespace

TEST_CASE("equilibrium start stays flat") {
    for (auto kind : {ControllerKind::fc, ControllerKind::sfc}) {
        Scenario sc = short_run(kind);
        sc.x_target = 0.0;
        auto tr = run(sc);
        CHECK(tr.termination == Termination::completed);
        CHECK(tr.rows.size() == 1001);
        for (const auto& r : tr.rows) {
            CHECK(r.theta == 0.0);
            CHECK(r.x == 0.0);
            CHECK(r.force == 0.0);
        }
    }
}

TEST_CASE("time grid and force bound") {
    auto tr = run(short_run(ControllerKind::sfc));
    for (std::size_t i = 0; i < tr.rows.size(); ++i) {
        CHECK(tr.rows[i].t == doctest::Approx(0.005 * static_cast<double>(i)));
        CHECK(std::abs(tr.rows[i].force) <= 10.0);
    }
}

TEST_CASE("zero-order hold between control instants") {
    Scenario sc = short_run(ControllerKind::fc);
    sc.control_period = 4 * sc.dt;
    auto tr = run(sc);
    for (std::size_t i = 0; i + 4 <= tr.rows.size(); i += 4) {
        for (std::size_t k = 1; k < 4; ++k) CHECK(tr.rows[i + k].force == tr.rows[i].force);
    }
    Scenario odd = sc;
    odd.control_period = 2.5 * sc.dt;
    CHECK_THROWS_AS(odd.validate(), std::invalid_argument);
}

TEST_CASE("repeated runs are byte-identical") {
    Scenario sc = tap_scenario();
    sc.duration = 20;
    CHECK(csv_of(run(sc)) == csv_of(run(sc)));
}

TEST_CASE("mirrored scenario mirrors the trajectory") {
    Scenario a = short_run(ControllerKind::fc, 20.0);
    a.initial = {deg_to_rad(2.0), 0.1, 0.05, -0.02, 0};
    Scenario b = a;
    b.x_target = -a.x_target;
    b.initial = {-a.initial.theta, -a.initial.theta_dot, -a.initial.x, -a.initial.x_dot, 0};
    auto ta = run(a), tb = run(b);
    REQUIRE(ta.rows.size() == tb.rows.size());
    for (std::size_t i = 0; i < ta.rows.size(); ++i) {
        CHECK(std::abs(ta.rows[i].theta + tb.rows[i].theta) <= 1e-9);
        CHECK(std::abs(ta.rows[i].x + tb.rows[i].x) <= 1e-9);
        CHECK(std::abs(ta.rows[i].force + tb.rows[i].force) <= 1e-9);
    }
}

TEST_CASE("fuzzy controller moves the cart to the target") {
    auto tr = run(comparison_scenario(1, ControllerKind::fc));
    CHECK(tr.termination == Termination::completed);
    double max_theta = 0;
    for (const auto& r : tr.rows) max_theta = std::max(max_theta, std::abs(rad_to_deg(r.theta)));
    CHECK(max_theta < 3.0);
    CHECK(std::abs(tr.rows.back().x - 0.5) < 0.02);
    CHECK(tr.no_rule_fired == 0);
}

TEST_CASE("state feedback designed on Pole-1 drops Pole-7") {
    auto tr = run(robustness_scenario(ControllerKind::sfc));
    CHECK(tr.termination == Termination::pole_fell);
    // Recorded on the first validated run.
    CHECK(tr.rows.back().t == doctest::Approx(3.505));
    CHECK(run(robustness_scenario(ControllerKind::fc)).termination == Termination::completed);
}

TEST_CASE("no rule fired falls back to zero force") {
    const auto& full = builtin_pole_kb();
    Scenario sc = short_run(ControllerKind::fc, 0.1);
    sc.controller.kb = full.with_rules({full.rules()[4]});  // ZE/ZE only
    sc.initial.theta = deg_to_rad(10.0);
    sc.x_target = 0.0;
    auto tr = run(sc);
    CHECK(tr.no_rule_fired > 0);
    CHECK(tr.rows.front().force == 0.0);
    REQUIRE_FALSE(tr.warnings.empty());
    CHECK(tr.warnings[0].find("no rule fired") != std::string::npos);
}

TEST_CASE("termination on a fallen pole or the track end") {
    Scenario sc = short_run(ControllerKind::fc);
    sc.controller.kind = ControllerKind::sfc;
    sc.controller.poles = {0.5, 0.6, 0.7, 0.8};  // unstable on purpose
    sc.initial.theta = 0.01;
    auto tr = run(sc);
    CHECK(tr.termination != Termination::completed);
    Scenario track = short_run(ControllerKind::fc);
    track.track_bound = 0.1;
    CHECK(run(track).termination == Termination::left_track);
}

TEST_CASE("metrics of a constant signal") {
    std::vector<double> t{0, 1, 2, 3}, y{2, 2, 2, 2};
    auto m = step_metrics(t, y, 2.0, 0.1);
    CHECK(m.overshoot == 0.0);
    CHECK(m.undershoot == 0.0);
    CHECK(m.settling_time == 0.0);
    CHECK_THROWS_AS(step_metrics({}, {}, 0, 1), std::invalid_argument);
}

TEST_CASE("metrics of a damped oscillation match the closed form") {
    const double dt = 1e-4, sp = 3.0, band = 0.05;
    std::vector<double> t, y;
    for (int i = 0; i <= 100000; ++i) {
        t.push_back(i * dt);
        y.push_back(sp + oracle::damped(i * dt));
    }
    auto m = step_metrics(t, y, sp, band);
    // Approach from above: the first trough is the overshoot, the
    // following crest the undershoot.
    CHECK(m.overshoot == doctest::Approx(-oracle::damped(oracle::damped_extremum(1))).epsilon(1e-6));
    CHECK(m.undershoot == doctest::Approx(oracle::damped(oracle::damped_extremum(2))).epsilon(1e-6));
    REQUIRE(m.settling_time.has_value());
    CHECK(std::abs(*m.settling_time - oracle::damped_last_exit(band)) <= dt);

    // Same signal approached from below.
    std::vector<double> neg;
    for (double v : y) neg.push_back(2 * sp - v);
    auto n = step_metrics(t, neg, sp, band);
    CHECK(n.overshoot == doctest::Approx(m.overshoot));
    CHECK(n.undershoot == doctest::Approx(m.undershoot));
}

TEST_CASE("an initial wrong-way excursion counts as undershoot") {
    std::vector<double> t{0, 1, 2, 3, 4, 5}, y{0, -0.3, 0.5, 1.2, 1.0, 1.0};
    auto m = step_metrics(t, y, 1.0, 0.05);
    CHECK(m.undershoot == doctest::Approx(0.3));
    CHECK(m.overshoot == doctest::Approx(0.2));
    CHECK(m.settling_time == 4.0);
    std::vector<double> z{0, 0.2, -0.1, 0.0, 0.0, 0.0};
    auto q = step_metrics(t, z, 0.0, 0.05);
    CHECK(q.undershoot == doctest::Approx(0.2));
    CHECK(q.overshoot == doctest::Approx(0.1));
    CHECK(q.settling_time == 3.0);
}

TEST_CASE("metrics ignore padding with settled samples and flag unsettled ends") {
    std::vector<double> t{0, 1, 2, 3}, y{0, 1.3, 0.9, 1.0};
    auto a = step_metrics(t, y, 1.0, 0.05);
    t.push_back(4);
    y.push_back(1.0);
    auto b = step_metrics(t, y, 1.0, 0.05);
    CHECK(a.overshoot == b.overshoot);
    CHECK(a.undershoot == b.undershoot);
    CHECK(a.settling_time == b.settling_time);
    y.back() = 2.0;
    CHECK_FALSE(step_metrics(t, y, 1.0, 0.05).settling_time.has_value());
}

TEST_CASE("trajectory CSV") {
    Trajectory tr;
    tr.rows = {{0, 0, 0, 0, 0, 0, 0}, {0.005, 0.01, -0.2, 0.1234567, 1e-7, 9.87654321, 0.1221730476}, {0.01, 0, 0, 0, 0, -10, 0}};
    std::string csv = csv_of(tr);
    std::istringstream in(csv);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "t,theta_deg,theta_dot_deg_s,x_m,x_dot_m_s,force_N,tilt_deg");
    CHECK(lines[2] == "0.005,0.572958,-11.4592,0.123457,1e-07,9.87654,7");
    std::istringstream row(lines[2]);
    std::vector<double> values;
    for (std::string f; std::getline(row, f, ',');) values.push_back(std::stod(f));
    CHECK(deg_to_rad(values[1]) == doctest::Approx(0.01).epsilon(1e-6));
    CHECK(values[3] == doctest::Approx(0.1234567).epsilon(1e-6));
    CHECK(csv_of(tr) == csv);
    CHECK_THROWS_WITH_AS(emit_trajectory(tr, std::string("/nonexistent-dir/t.csv")),
                         "cannot open /nonexistent-dir/t.csv for writing", std::runtime_error);
}

TEST_CASE("comparison table") {
    std::vector<Scenario> scs{short_run(ControllerKind::fc), short_run(ControllerKind::sfc)};
    Scenario broken = short_run(ControllerKind::sfc);
    broken.name = "broken";
    broken.controller.poles = {-1.0, -2.0};
    scs.push_back(broken);
    auto c = compare(scs, 2);
    REQUIRE(c.cells.size() == 3);
    CHECK(c.cells[0].column == "Pole-1 FC");
    CHECK(c.cells[1].column == "Pole-1 SFC");
    CHECK(c.cells[2].error.find("expected 4 desired poles") != std::string::npos);
    std::string csv = render_csv(c);
    CHECK(csv.rfind("metric,Pole-1 FC,Pole-1 SFC,broken\n", 0) == 0);
    CHECK(csv.find("FAILED(expected 4 desired poles, got 2)") != std::string::npos);
    std::istringstream in(csv);
    int lines = 0;
    for (std::string l; std::getline(in, l);) ++lines;
    CHECK(lines == 8);
    CHECK(render_csv(compare(scs, 1)) == csv);
    std::string text = render_text(c);
    CHECK(text.find("Max. theta overshoot (deg)") != std::string::npos);
    CHECK(text.find("settling bands: theta +-0.1 deg, x +-2 cm") != std::string::npos);

    auto single = compare({short_run(ControllerKind::fc)});
    CHECK(single.cells.size() == 1);
    CHECK(render_csv(single).rfind("metric,Pole-1 FC\n", 0) == 0);
    CHECK_THROWS_AS(compare({}), std::invalid_argument);
}

TEST_CASE("an unknown input variable cannot be wired to the plant") {
    auto parsed = parse_knowledge_base(
        "var speed unit = m/s\n  label Z triangle(-1, 0, 1)\n"
        "var F unit = N\n  label Z triangle(-1, 0, 1)\n"
        "rule a: IF speed IS Z THEN F IS Z\n");
    REQUIRE(parsed.ok());
    Scenario sc = short_run(ControllerKind::fc);
    sc.controller.kb = *parsed.kb;
    CHECK_THROWS_AS(run(sc), std::invalid_argument);
}
