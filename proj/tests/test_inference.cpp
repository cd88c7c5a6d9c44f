#include <doctest.h>

#include <stdexcept>

#include <random>

#include "hfc/inference.hpp"
#include "hfc/rule_lang.hpp"
#include "oracles.hpp"

using namespace hfc;

namespace {

KnowledgeBase one_input_kb(std::vector<Label> outputs, std::vector<Rule> rules, OutputUniverse u = {}) {
    std::vector<LinguisticVariable> vars;
    vars.emplace_back("e", "m",
                      std::vector<Label>{{"NE", MembershipFunction::shoulder_down(-1, 0)},
                                         {"ZE", MembershipFunction::triangle(-1, 0, 1)},
                                         {"PO", MembershipFunction::shoulder_up(0, 1)}});
    vars.emplace_back("u", "N", std::move(outputs));
    return KnowledgeBase(std::move(vars), "u", u, std::move(rules));
}

oracle::Curve curve_of(const MembershipFunction& mf) {
    return {std::string(mf.shape_name()), mf.parameters(), mf.concentrations()};
}

}  // namespace

TEST_CASE("golden output at theta = 5 deg, theta_dot = 0 with the pole-balancing rules") {
    // Rules r2 (alpha 0.8 -> PM) and r5 (alpha 0.2 -> ZE) fire. Exact
    // rational evaluation of the 201-point center of area gives 5333/1100.
    const auto& full = builtin_pole_kb();
    std::vector<Rule> balance(full.rules().begin(), full.rules().begin() + 9);
    auto kb = full.with_rules(balance);
    double f = fc_output(kb, {{"theta", 5.0}, {"theta_dot", 0.0}});
    CHECK(f == doctest::Approx(5333.0 / 1100.0).epsilon(1e-12));
}

TEST_CASE("rule activation is the minimum precondition degree") {
    const auto& kb = builtin_pole_kb();
    Inputs in{{"theta", 5.0}, {"theta_dot", 10.0}, {"x", 0.0}, {"x_dot", 0.0}};
    CHECK(rule_activation(kb.rules()[0], in, kb) == doctest::Approx(std::min(0.8, 0.4)));
    CHECK(rule_activation(kb.rules()[2], in, kb) == 0.0);
    CHECK_THROWS_AS(rule_activation(kb.rules()[0], {{"theta", 1.0}}, kb), MissingInput);
}

TEST_CASE("aggregation and center of area match the brute-force oracle") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pos(-10.0, 10.0), unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Label> outs;
        int n = 1 + static_cast<int>(unit(rng) * 5);
        for (int i = 0; i < n; ++i) {
            double a = pos(rng), b = a + 0.05 + unit(rng) * 5, c = b + 0.05 + unit(rng) * 5;
            int kind = static_cast<int>(unit(rng) * 3);
            MembershipFunction mf = kind == 0   ? MembershipFunction::triangle(a, b, c)
                                    : kind == 1 ? MembershipFunction::shoulder_up(a, b)
                                                : MembershipFunction::shoulder_down(a, b);
            if (unit(rng) < 0.2) mf = concentrate(mf);
            outs.push_back({"L" + std::to_string(i), mf});
        }
        auto kb = one_input_kb(outs, {{"r", {{"e", "ZE"}}, {"u", "L0"}, 1}});
        std::vector<Activation> acts;
        std::vector<std::pair<double, oracle::Curve>> fired;
        for (int i = 0; i < n; ++i) {
            double alpha = unit(rng) < 0.2 ? 0.0 : unit(rng);
            const auto& label = outs[static_cast<std::size_t>(i)];
            acts.push_back({alpha, label.name});
            fired.emplace_back(alpha, curve_of(label.mf));
        }
        auto got = aggregate_output(acts, kb, kb.universe());
        auto want = oracle::max_min(fired, -10.0, 10.0, 201);
        CHECK(got.degrees == want);
        double total = 0;
        for (double d : want) total += d;
        if (total > 0) {
            CHECK(defuzzify_coa(got, kb.universe()) == oracle::coa(want, -10.0, 10.0));
        } else {
            CHECK_THROWS_AS(defuzzify_coa(got, kb.universe()), NoRuleFired);
        }
    }
}

TEST_CASE("no rule fired is reported with its inputs") {
    auto kb = one_input_kb({{"Z", MembershipFunction::triangle(-1, 0, 1)}}, {{"r", {{"e", "PO"}}, {"u", "Z"}, 1}});
    try {
        fc_output(kb, {{"e", -0.5}});
        FAIL("expected NoRuleFired");
    } catch (const NoRuleFired& e) {
        CHECK(e.inputs().at("e") == -0.5);
        CHECK(std::string(e.what()).find("e=-0.5") != std::string::npos);
    }
    InferenceEngine engine(kb);
    CHECK_THROWS_AS(engine.output(Inputs{{"e", -0.5}}), NoRuleFired);
}

TEST_CASE("defuzzify rejects a mismatched grid") {
    FuzzyOutput out{std::vector<double>(10, 1.0)};
    CHECK_THROWS_AS(defuzzify_coa(out, OutputUniverse{}), std::invalid_argument);
}

TEST_CASE("compiled engine agrees with direct evaluation") {
    const auto& kb = builtin_pole_kb();
    InferenceEngine engine(kb);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> th(-8, 8), thd(-30, 30), x(-3, 3), xd(-0.2, 0.2);
    for (int i = 0; i < 2000; ++i) {
        Inputs in{{"theta", th(rng)}, {"theta_dot", thd(rng)}, {"x", x(rng)}, {"x_dot", xd(rng)}};
        CHECK(engine.output(in) == fc_output(kb, in));
    }
    CHECK_THROWS_AS(engine.output(Inputs{{"theta", 0.0}}), MissingInput);
}

TEST_CASE("coarser universes are honoured") {
    auto kb = one_input_kb({{"Z", MembershipFunction::triangle(-1, 0, 1)}, {"P", MembershipFunction::shoulder_up(0, 1)}},
                           {{"r1", {{"e", "ZE"}}, {"u", "Z"}, 1}, {"r2", {{"e", "PO"}}, {"u", "P"}, 1}},
                           OutputUniverse{-1.0, 1.0, 5});
    // e = 0.5: Z clipped at 0.5, P clipped at 0.5 on {-1, -0.5, 0, 0.5, 1}.
    auto want = oracle::max_min({{0.5, {"triangle", {-1, 0, 1}}}, {0.5, {"shoulder_up", {0, 1}}}}, -1, 1, 5);
    CHECK(fc_output(kb, {{"e", 0.5}}) == oracle::coa(want, -1, 1));
}

TEST_CASE("output is odd in the inputs for the symmetric rule base") {
    const auto& kb = builtin_pole_kb();
    InferenceEngine engine(kb);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> th(-8, 8), thd(-30, 30), x(-3, 3), xd(-0.2, 0.2);
    for (int i = 0; i < 2000; ++i) {
        Inputs a{{"theta", th(rng)}, {"theta_dot", thd(rng)}, {"x", x(rng)}, {"x_dot", xd(rng)}};
        Inputs b;
        for (const auto& [k, v] : a) b[k] = -v;
        CHECK(engine.output(b) == doctest::Approx(-engine.output(a)).epsilon(1e-12).scale(1.0));
    }
}
