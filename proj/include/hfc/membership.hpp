#pragma once

#include <limits>
#include <string_view>
#include <variant>
#include <vector>

namespace hfc {

struct Triangle {
    double left;
    double peak;
    double right;
    bool operator==(const Triangle&) const = default;
};

struct ShoulderUp {
    double start;
    double full;
    bool operator==(const ShoulderUp&) const = default;
};

struct ShoulderDown {
    double full;
    double end;
    bool operator==(const ShoulderDown&) const = default;
};

using Shape = std::variant<Triangle, ShoulderUp, ShoulderDown>;

/// Closed interval; either end may be infinite for shoulders.
struct Interval {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool operator==(const Interval&) const = default;
};

/// Piecewise-linear membership curve with an optional number of
/// concentrations applied on top (each one squares the degree).
class MembershipFunction {
public:
    /// Throws std::invalid_argument when the breakpoints are not strictly
    /// increasing or not finite.
    explicit MembershipFunction(Shape shape, int concentrations = 0);

    static MembershipFunction triangle(double left, double peak, double right);
    static MembershipFunction shoulder_up(double start, double full);
    static MembershipFunction shoulder_down(double full, double end);

    double operator()(double v) const noexcept;

    const Shape& shape() const noexcept { return shape_; }
    int concentrations() const noexcept { return concentrations_; }
    bool is_triangle() const noexcept { return std::holds_alternative<Triangle>(shape_); }

    /// Breakpoints in increasing order.
    std::vector<double> breakpoints() const;
    /// Parameters in declaration order, as written in rule files.
    std::vector<double> parameters() const;
    std::string_view shape_name() const noexcept;

    /// Closure of {v : mu(v) > level}. level = 0 gives the ordinary support.
    Interval support(double level = 0.0) const;
    /// Value at which the curve reaches 1.
    double apex() const noexcept;

    /// Reflection about zero: returns the curve v -> mu(-v).
    MembershipFunction mirrored() const;

    bool operator==(const MembershipFunction&) const = default;

private:
    Shape shape_;
    int concentrations_ = 0;
};

double eval_membership(const MembershipFunction& mf, double v) noexcept;

/// Returns a curve with mu'(v) = mu(v)^2 at every v.
MembershipFunction concentrate(const MembershipFunction& mf);

/// Build a shape from a shape keyword and its parameter list. Throws
/// std::invalid_argument on an unknown keyword, wrong arity or bad ordering.
MembershipFunction make_membership(std::string_view shape_name, const std::vector<double>& params,
                                   int concentrations = 0);

}  // namespace hfc
