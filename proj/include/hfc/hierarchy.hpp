#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hfc/knowledge_base.hpp"
#include "hfc/rule_lang.hpp"

namespace hfc {

class HierarchyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// "Very" by squaring the degree.
struct Concentration {
    bool operator==(const Concentration&) const = default;
};

/// "Very" by contracting the breakpoints toward the peak; factor in (0, 1).
struct Narrowed {
    double factor = 0.05;
    bool operator==(const Narrowed&) const = default;
};

using VeryMode = std::variant<Concentration, Narrowed>;

/// Throws HierarchyError unless the narrowing factor lies strictly in (0, 1).
void validate_mode(const VeryMode& mode);
std::string describe_mode(const VeryMode& mode);

/// Throws HierarchyError for narrowed mode on a shoulder (no finite base).
MembershipFunction derive_very(const MembershipFunction& mf, const VeryMode& mode);

/// One (variable, base label) pair that must hold approximately for a goal
/// to count as achieved. very_label defaults to "V" + base_label.
struct AchievementTerm {
    std::string variable;
    std::string base_label;
    std::string very_label;
    std::optional<VeryMode> mode;  // overrides the composition-wide mode

    std::string very_name() const { return very_label.empty() ? "V" + base_label : very_label; }
};

struct Goal {
    std::string name;
    std::vector<std::string> inputs;
    std::vector<AchievementTerm> achievement;
};

/// Goals in priority order (highest first).
struct GoalSpec {
    std::vector<Goal> goals;

    /// Non-empty, unique goal names. With a vocabulary, also checks that
    /// every input and achievement variable exists.
    void validate() const;
    void validate(const Vocabulary& vocabulary) const;
};

/// Narrowing factor of the default VS labels: 0.3125 deg out of 6.25 deg.
inline constexpr double kDefaultVeryFactor = 0.05;

/// Goal 1 balances the pole (theta, theta_dot; achieved when both are
/// "very" ZE, named VS); goal 2 positions the cart (x, x_dot).
GoalSpec cart_pole_goals();

/// Rule set for goal i (1-based) is per_goal_rules[i - 1]. Goal-1 rules are
/// kept verbatim; every rule of goal i >= 2 gets one achievement
/// precondition per term of goal i-1 prepended, and goal_index = i. The
/// Very labels are derived from the base labels and added to the
/// vocabulary. Throws HierarchyError on a rule that references a variable
/// outside its goal's inputs, an unknown achievement variable or label, or
/// a Very label name already taken by a different curve.
KnowledgeBase compose_hierarchical(const Vocabulary& vocabulary, const GoalSpec& spec,
                                   const std::vector<std::vector<Rule>>& per_goal_rules,
                                   const VeryMode& mode = Narrowed{kDefaultVeryFactor});

enum class ViolationKind { missing, not_narrower, unknown_goal };

struct Violation {
    ViolationKind kind;
    std::string rule;
    std::string variable;  // empty for unknown_goal
    std::string message;
};

/// Checks every goal-i rule (i >= 2) against goal i-1's achievement terms:
/// each must appear as a precondition whose label is pointwise below the
/// base label with a strictly smaller support.
std::vector<Violation> audit_hierarchy(const KnowledgeBase& kb, const GoalSpec& spec);

/// True when a is pointwise <= b and a's support (at the 1e-6 level) lies
/// strictly inside b's.
bool is_narrower(const MembershipFunction& a, const MembershipFunction& b);

std::vector<Diagnostic> to_diagnostics(const std::vector<Violation>& violations);

}  // namespace hfc
