#pragma once

#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hfc/knowledge_base.hpp"

namespace hfc {

/// Crisp input values keyed by variable name.
using Inputs = std::map<std::string, double, std::less<>>;

class MissingInput : public std::runtime_error {
public:
    explicit MissingInput(std::string variable)
        : std::runtime_error("missing input for variable " + variable), variable_(std::move(variable)) {}
    const std::string& variable() const noexcept { return variable_; }

private:
    std::string variable_;
};

/// Raised when every aggregated degree is zero, so the center of area is
/// undefined. Carries the inputs that produced it when known.
class NoRuleFired : public std::runtime_error {
public:
    explicit NoRuleFired(Inputs inputs = {});
    const Inputs& inputs() const noexcept { return inputs_; }

private:
    Inputs inputs_;
};

/// Aggregated conclusion sampled on the output universe.
struct FuzzyOutput {
    std::vector<double> degrees;
};

/// Strength of one fired rule and the output label it concludes.
struct Activation {
    double alpha;
    std::string label;
};

/// Minimum over the rule's preconditions of the label degree at the input.
double rule_activation(const Rule& rule, const Inputs& inputs, const KnowledgeBase& kb);

/// Pointwise max over rules of min(alpha_i, mu_Ci(w_j)).
FuzzyOutput aggregate_output(std::span<const Activation> activations, const KnowledgeBase& kb,
                             const OutputUniverse& universe);

/// Discrete center of area. Throws NoRuleFired when all degrees are zero.
double defuzzify_coa(const FuzzyOutput& out, const OutputUniverse& universe);

/// Activation, aggregation and defuzzification over every rule of kb.
double fc_output(const KnowledgeBase& kb, const Inputs& inputs, const OutputUniverse& universe);
double fc_output(const KnowledgeBase& kb, const Inputs& inputs);

/// Precompiled form of a knowledge base for repeated evaluation: label
/// lookups resolved to indices and conclusion curves sampled once. Inputs
/// are given per variable index (output slot ignored). Immutable after
/// construction and safe to share across threads.
class InferenceEngine {
public:
    explicit InferenceEngine(KnowledgeBase kb);
    InferenceEngine(KnowledgeBase kb, OutputUniverse universe);

    const KnowledgeBase& kb() const noexcept { return kb_; }
    const OutputUniverse& universe() const noexcept { return universe_; }

    /// Throws NoRuleFired when nothing fires.
    double output(std::span<const double> values) const;
    double output(const Inputs& inputs) const;
    /// Fills out with the aggregated degrees; returns false if all are zero.
    bool aggregate(std::span<const double> values, std::vector<double>& out) const;

private:
    struct CompiledCondition {
        std::size_t variable;
        MembershipFunction mf;
    };
    struct CompiledRule {
        std::vector<CompiledCondition> preconditions;
        std::size_t conclusion;  // index into samples_
    };

    KnowledgeBase kb_;
    OutputUniverse universe_;
    std::vector<CompiledRule> rules_;
    std::vector<std::vector<double>> samples_;  // per output label
    std::vector<double> points_;
};

}  // namespace hfc
