#include "hfc/membership.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hfc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_increasing(std::initializer_list<double> points, const char* what) {
    double prev = -std::numeric_limits<double>::infinity();
    for (double p : points) {
        if (!std::isfinite(p)) {
            throw std::invalid_argument(std::string(what) + ": breakpoints must be finite");
        }
        if (!(p > prev)) {
            throw std::invalid_argument(std::string(what) + ": breakpoints must be strictly increasing");
        }
        prev = p;
    }
}

double eval_shape(const Shape& shape, double v) noexcept {
    return std::visit(
        overloaded{
            [v](const Triangle& t) {
                if (v <= t.left || v >= t.right) return 0.0;
                if (v == t.peak) return 1.0;
                return v < t.peak ? (v - t.left) / (t.peak - t.left) : (t.right - v) / (t.right - t.peak);
            },
            [v](const ShoulderUp& s) {
                if (v <= s.start) return 0.0;
                if (v >= s.full) return 1.0;
                return (v - s.start) / (s.full - s.start);
            },
            [v](const ShoulderDown& s) {
                if (v <= s.full) return 1.0;
                if (v >= s.end) return 0.0;
                return (s.end - v) / (s.end - s.full);
            },
        },
        shape);
}

}  // namespace

MembershipFunction::MembershipFunction(Shape shape, int concentrations)
    : shape_(shape), concentrations_(concentrations) {
    if (concentrations < 0) throw std::invalid_argument("concentration count must be non-negative");
    std::visit(overloaded{
                   [](const Triangle& t) { require_increasing({t.left, t.peak, t.right}, "triangle"); },
                   [](const ShoulderUp& s) { require_increasing({s.start, s.full}, "shoulder_up"); },
                   [](const ShoulderDown& s) { require_increasing({s.full, s.end}, "shoulder_down"); },
               },
               shape_);
}

MembershipFunction MembershipFunction::triangle(double left, double peak, double right) {
    return MembershipFunction(Triangle{left, peak, right});
}

MembershipFunction MembershipFunction::shoulder_up(double start, double full) {
    return MembershipFunction(ShoulderUp{start, full});
}

MembershipFunction MembershipFunction::shoulder_down(double full, double end) {
    return MembershipFunction(ShoulderDown{full, end});
}

double MembershipFunction::operator()(double v) const noexcept {
    double mu = eval_shape(shape_, v);
    for (int i = 0; i < concentrations_; ++i) mu *= mu;
    return mu;
}

std::vector<double> MembershipFunction::breakpoints() const {
    return std::visit(overloaded{
                          [](const Triangle& t) { return std::vector<double>{t.left, t.peak, t.right}; },
                          [](const ShoulderUp& s) { return std::vector<double>{s.start, s.full}; },
                          [](const ShoulderDown& s) { return std::vector<double>{s.full, s.end}; },
                      },
                      shape_);
}

std::vector<double> MembershipFunction::parameters() const { return breakpoints(); }

std::string_view MembershipFunction::shape_name() const noexcept {
    return std::visit(overloaded{
                          [](const Triangle&) { return std::string_view("triangle"); },
                          [](const ShoulderUp&) { return std::string_view("shoulder_up"); },
                          [](const ShoulderDown&) { return std::string_view("shoulder_down"); },
                      },
                      shape_);
}

Interval MembershipFunction::support(double level) const {
    // mu^(2^k) > level  <=>  mu > level^(1/2^k)
    double base = level;
    for (int i = 0; i < concentrations_; ++i) base = std::sqrt(base);
    constexpr double inf = std::numeric_limits<double>::infinity();
    return std::visit(overloaded{
                          [base](const Triangle& t) {
                              return Interval{t.left + base * (t.peak - t.left), t.right - base * (t.right - t.peak)};
                          },
                          [base](const ShoulderUp& s) { return Interval{s.start + base * (s.full - s.start), inf}; },
                          [base](const ShoulderDown& s) { return Interval{-inf, s.end - base * (s.end - s.full)}; },
                      },
                      shape_);
}

double MembershipFunction::apex() const noexcept {
    return std::visit(overloaded{
                          [](const Triangle& t) { return t.peak; },
                          [](const ShoulderUp& s) { return s.full; },
                          [](const ShoulderDown& s) { return s.full; },
                      },
                      shape_);
}

MembershipFunction MembershipFunction::mirrored() const {
    Shape m = std::visit(overloaded{
                             [](const Triangle& t) -> Shape { return Triangle{-t.right, -t.peak, -t.left}; },
                             [](const ShoulderUp& s) -> Shape { return ShoulderDown{-s.full, -s.start}; },
                             [](const ShoulderDown& s) -> Shape { return ShoulderUp{-s.end, -s.full}; },
                         },
                         shape_);
    return MembershipFunction(m, concentrations_);
}

double eval_membership(const MembershipFunction& mf, double v) noexcept { return mf(v); }

MembershipFunction concentrate(const MembershipFunction& mf) {
    return MembershipFunction(mf.shape(), mf.concentrations() + 1);
}

MembershipFunction make_membership(std::string_view shape_name, const std::vector<double>& params,
                                   int concentrations) {
    auto arity = [&](std::size_t n) {
        if (params.size() != n) {
            throw std::invalid_argument(std::string(shape_name) + " takes " + std::to_string(n) + " parameters, got " +
                                        std::to_string(params.size()));
        }
    };
    if (shape_name == "triangle") {
        arity(3);
        return MembershipFunction(Triangle{params[0], params[1], params[2]}, concentrations);
    }
    if (shape_name == "shoulder_up") {
        arity(2);
        return MembershipFunction(ShoulderUp{params[0], params[1]}, concentrations);
    }
    if (shape_name == "shoulder_down") {
        arity(2);
        return MembershipFunction(ShoulderDown{params[0], params[1]}, concentrations);
    }
    throw std::invalid_argument("unknown shape '" + std::string(shape_name) + "'");
}

}  // namespace hfc
