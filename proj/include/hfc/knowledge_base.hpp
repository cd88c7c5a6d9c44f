#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hfc/membership.hpp"

namespace hfc {

class KbError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Label {
    std::string name;
    MembershipFunction mf;
    bool operator==(const Label&) const = default;
};

class LinguisticVariable {
public:
    LinguisticVariable(std::string name, std::string unit, std::vector<Label> labels = {},
                       std::optional<Interval> range = std::nullopt);

    const std::string& name() const noexcept { return name_; }
    const std::string& unit() const noexcept { return unit_; }
    /// Labels ordered by apex position, then name.
    const std::vector<Label>& labels() const noexcept { return labels_; }
    /// Declared operating range, if any.
    const std::optional<Interval>& range() const noexcept { return range_; }
    /// Declared range, or the span of all label breakpoints.
    Interval operating_range() const;

    const Label* find(std::string_view label) const noexcept;
    /// Throws KbError when the name is already taken.
    void add_label(Label label);

    bool operator==(const LinguisticVariable&) const = default;

private:
    std::string name_;
    std::string unit_;
    std::vector<Label> labels_;
    std::optional<Interval> range_;
};

struct Condition {
    std::string variable;
    std::string label;
    bool operator==(const Condition&) const = default;
};

struct Rule {
    std::string name;
    std::vector<Condition> preconditions;
    Condition conclusion;
    int goal_index = 1;
    bool operator==(const Rule&) const = default;
};

/// Evenly spaced quantization of the output variable.
struct OutputUniverse {
    double min = -10.0;
    double max = 10.0;
    int levels = 201;

    void validate() const;
    /// min + (max - min) j / (levels - 1), evaluated from both ends so a
    /// symmetric universe yields exactly negated mirror points.
    double point(int j) const noexcept { return (min * (levels - 1 - j) + max * j) / (levels - 1); }
    std::vector<double> points() const;
    bool operator==(const OutputUniverse&) const = default;
};

/// Label an input may use in place of a missing one ("NL" reads as "NE").
std::optional<std::string_view> input_label_alias(std::string_view label) noexcept;

struct ResolvedLabel {
    const LinguisticVariable* variable = nullptr;
    const Label* label = nullptr;
    bool aliased = false;
};

/// Everything a knowledge base declares apart from its rules.
struct Vocabulary {
    std::vector<LinguisticVariable> variables;
    std::string output;
    OutputUniverse universe;
};

class KnowledgeBase {
public:
    /// Throws KbError when an invariant does not hold: output variable
    /// missing, a conclusion not on the output, an undefined (variable,
    /// label) pair, duplicate names, or a rule with two conditions on one
    /// variable.
    KnowledgeBase(std::vector<LinguisticVariable> variables, std::string output, OutputUniverse universe,
                  std::vector<Rule> rules);

    const std::vector<LinguisticVariable>& variables() const noexcept { return variables_; }
    const std::vector<Rule>& rules() const noexcept { return rules_; }
    const std::string& output_name() const noexcept { return output_; }
    const LinguisticVariable& output_variable() const;
    const OutputUniverse& universe() const noexcept { return universe_; }

    const LinguisticVariable* find_variable(std::string_view name) const noexcept;
    int variable_index(std::string_view name) const noexcept;
    /// Input variables in declaration order.
    std::vector<const LinguisticVariable*> inputs() const;

    /// Resolves a precondition or conclusion, applying the input alias.
    /// Throws KbError when it does not resolve.
    ResolvedLabel resolve(const Condition& c) const;

    KnowledgeBase with_rules(std::vector<Rule> rules) const;
    Vocabulary vocabulary() const { return {variables_, output_, universe_}; }

    bool operator==(const KnowledgeBase&) const = default;

private:
    std::vector<LinguisticVariable> variables_;
    std::string output_;
    OutputUniverse universe_;
    std::vector<Rule> rules_;
};

}  // namespace hfc
