#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "hfc/membership.hpp"

using namespace hfc;

TEST_CASE("triangle degrees") {
    auto t = MembershipFunction::triangle(-2.0, 0.0, 4.0);
    CHECK(t(-3.0) == 0.0);
    CHECK(t(-2.0) == 0.0);
    CHECK(t(-1.0) == doctest::Approx(0.5));
    CHECK(t(0.0) == 1.0);
    CHECK(t(1.0) == doctest::Approx(0.75));
    CHECK(t(4.0) == 0.0);
    CHECK(t(10.0) == 0.0);
}

TEST_CASE("shoulders saturate outside their ramps") {
    auto up = MembershipFunction::shoulder_up(0.0, 6.25);
    CHECK(up(-1.0) == 0.0);
    CHECK(up(0.0) == 0.0);
    CHECK(up(3.125) == doctest::Approx(0.5));
    CHECK(up(6.25) == 1.0);
    CHECK(up(1e9) == 1.0);
    auto down = MembershipFunction::shoulder_down(-6.25, 0.0);
    CHECK(down(-1e9) == 1.0);
    CHECK(down(-3.125) == doctest::Approx(0.5));
    CHECK(down(0.0) == 0.0);
    CHECK(down(5.0) == 0.0);
}

TEST_CASE("bad breakpoints are rejected") {
    CHECK_THROWS_AS(MembershipFunction::triangle(0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(MembershipFunction::triangle(1.0, 0.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(MembershipFunction::shoulder_up(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(MembershipFunction::shoulder_down(NAN, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(MembershipFunction::triangle(-INFINITY, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(MembershipFunction(Triangle{0, 1, 2}, -1), std::invalid_argument);
}

TEST_CASE("make_membership checks shape and arity") {
    CHECK(make_membership("triangle", {-1, 0, 1}) == MembershipFunction::triangle(-1, 0, 1));
    CHECK(make_membership("shoulder_up", {0, 1}, 2).concentrations() == 2);
    CHECK_THROWS_AS(make_membership("triangle", {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(make_membership("trapezoid", {0, 1, 2, 3}), std::invalid_argument);
}

TEST_CASE("concentration squares the degree") {
    auto t = MembershipFunction::triangle(-1.0, 0.0, 1.0);
    auto c = concentrate(t);
    auto cc = concentrate(c);
    for (double v = -1.2; v <= 1.2; v += 0.01) {
        CHECK(c(v) == doctest::Approx(t(v) * t(v)).epsilon(1e-15));
        CHECK(cc(v) == doctest::Approx(std::pow(t(v), 4)).epsilon(1e-15));
    }
    CHECK(c(0.0) == 1.0);
}

TEST_CASE("support at a level") {
    auto t = MembershipFunction::triangle(-4.0, 0.0, 2.0);
    CHECK(t.support() == Interval{-4.0, 2.0});
    auto half = t.support(0.5);
    CHECK(half.lo == doctest::Approx(-2.0));
    CHECK(half.hi == doctest::Approx(1.0));
    auto c = concentrate(t).support(0.25);
    CHECK(c.lo == doctest::Approx(-2.0));
    CHECK(c.hi == doctest::Approx(1.0));
    auto up = MembershipFunction::shoulder_up(0.0, 1.0).support();
    CHECK(up.lo == 0.0);
    CHECK(std::isinf(up.hi));
}

TEST_CASE("mirror image reflects about zero") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        double a = u(rng), b = a + 0.1 + std::abs(u(rng)), c = b + 0.1 + std::abs(u(rng));
        for (const auto& mf : {MembershipFunction::triangle(a, b, c), MembershipFunction::shoulder_up(a, b),
                               MembershipFunction(ShoulderDown{b, c}, 1)}) {
            auto m = mf.mirrored();
            for (int k = 0; k < 20; ++k) {
                double v = u(rng) * 2;
                CHECK(m(-v) == doctest::Approx(mf(v)).epsilon(1e-12));
            }
            CHECK(m.mirrored() == mf);
        }
    }
}

TEST_CASE("apex and breakpoints") {
    CHECK(MembershipFunction::triangle(-1, 0.5, 1).apex() == 0.5);
    CHECK(MembershipFunction::shoulder_up(0, 2).apex() == 2.0);
    CHECK(MembershipFunction::shoulder_down(-2, 0).apex() == -2.0);
    CHECK(MembershipFunction::shoulder_down(-2, 0).breakpoints() == std::vector<double>{-2, 0});
    CHECK(MembershipFunction::shoulder_down(-2, 0).shape_name() == "shoulder_down");
}
