#include "hfc/inference.hpp"

#include <algorithm>
#include <sstream>

namespace hfc {

namespace {

std::string describe(const Inputs& inputs) {
    std::ostringstream os;
    os << "no rule fired";
    if (!inputs.empty()) {
        os << " at";
        for (const auto& [name, value] : inputs) os << ' ' << name << '=' << value;
    }
    return os.str();
}

std::vector<double> sample(const MembershipFunction& mf, const OutputUniverse& u) {
    std::vector<double> out(static_cast<std::size_t>(u.levels));
    for (int j = 0; j < u.levels; ++j) out[static_cast<std::size_t>(j)] = mf(u.point(j));
    return out;
}

// Numerator and denominator of the center of area, accumulated over mirror
// pairs (j, n-1-j) from the outside in. On a symmetric grid a mirrored
// aggregate then gives an exactly negated numerator, so the controller
// output is odd to the last bit.
std::pair<double, double> coa_sums(const std::vector<double>& degrees, const std::vector<double>& points) {
    double weighted = 0.0;
    double total = 0.0;
    std::size_t lo = 0, hi = degrees.size();
    while (hi - lo >= 2) {
        --hi;
        weighted += points[lo] * degrees[lo] + points[hi] * degrees[hi];
        total += degrees[lo] + degrees[hi];
        ++lo;
    }
    if (hi > lo) {
        weighted += points[lo] * degrees[lo];
        total += degrees[lo];
    }
    return {weighted, total};
}

}  // namespace

NoRuleFired::NoRuleFired(Inputs inputs) : std::runtime_error(describe(inputs)), inputs_(std::move(inputs)) {}

double rule_activation(const Rule& rule, const Inputs& inputs, const KnowledgeBase& kb) {
    double alpha = 1.0;
    for (const auto& c : rule.preconditions) {
        auto it = inputs.find(c.variable);
        if (it == inputs.end()) throw MissingInput(c.variable);
        alpha = std::min(alpha, kb.resolve(c).label->mf(it->second));
    }
    return alpha;
}

FuzzyOutput aggregate_output(std::span<const Activation> activations, const KnowledgeBase& kb,
                             const OutputUniverse& universe) {
    universe.validate();
    FuzzyOutput out{std::vector<double>(static_cast<std::size_t>(universe.levels), 0.0)};
    for (const auto& a : activations) {
        const Label* label = kb.resolve({kb.output_name(), a.label}).label;
        for (int j = 0; j < universe.levels; ++j) {
            auto& d = out.degrees[static_cast<std::size_t>(j)];
            d = std::max(d, std::min(a.alpha, label->mf(universe.point(j))));
        }
    }
    return out;
}

double defuzzify_coa(const FuzzyOutput& out, const OutputUniverse& universe) {
    if (out.degrees.size() != static_cast<std::size_t>(universe.levels)) {
        throw std::invalid_argument("fuzzy output does not match the universe size");
    }
    auto [weighted, total] = coa_sums(out.degrees, universe.points());
    if (total == 0.0) throw NoRuleFired();
    return weighted / total;
}

double fc_output(const KnowledgeBase& kb, const Inputs& inputs, const OutputUniverse& universe) {
    std::vector<Activation> activations;
    activations.reserve(kb.rules().size());
    for (const auto& r : kb.rules()) {
        double alpha = rule_activation(r, inputs, kb);
        if (alpha > 0.0) activations.push_back({alpha, r.conclusion.label});
    }
    try {
        return defuzzify_coa(aggregate_output(activations, kb, universe), universe);
    } catch (const NoRuleFired&) {
        throw NoRuleFired(inputs);
    }
}

double fc_output(const KnowledgeBase& kb, const Inputs& inputs) { return fc_output(kb, inputs, kb.universe()); }

InferenceEngine::InferenceEngine(KnowledgeBase kb) : InferenceEngine(kb, kb.universe()) {}

InferenceEngine::InferenceEngine(KnowledgeBase kb, OutputUniverse universe)
    : kb_(std::move(kb)), universe_(universe), points_(universe.points()) {
    universe_.validate();
    const auto& out_labels = kb_.output_variable().labels();
    for (const auto& l : out_labels) samples_.push_back(sample(l.mf, universe_));
    for (const auto& r : kb_.rules()) {
        CompiledRule cr;
        for (const auto& c : r.preconditions) {
            auto resolved = kb_.resolve(c);
            cr.preconditions.push_back(
                {static_cast<std::size_t>(kb_.variable_index(c.variable)), resolved.label->mf});
        }
        const Label* concl = kb_.resolve(r.conclusion).label;
        cr.conclusion = static_cast<std::size_t>(concl - out_labels.data());
        rules_.push_back(std::move(cr));
    }
}

bool InferenceEngine::aggregate(std::span<const double> values, std::vector<double>& out) const {
    if (values.size() < kb_.variables().size()) throw std::invalid_argument("one value per variable expected");
    out.assign(points_.size(), 0.0);
    bool fired = false;
    for (const auto& r : rules_) {
        double alpha = 1.0;
        for (const auto& c : r.preconditions) {
            alpha = std::min(alpha, c.mf(values[c.variable]));
            if (alpha == 0.0) break;
        }
        if (alpha == 0.0) continue;
        const auto& curve = samples_[r.conclusion];
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = std::max(out[j], std::min(alpha, curve[j]));
        fired = true;
    }
    return fired;
}

double InferenceEngine::output(std::span<const double> values) const {
    std::vector<double> degrees;
    aggregate(values, degrees);
    auto [weighted, total] = coa_sums(degrees, points_);
    if (total == 0.0) {
        Inputs in;
        for (std::size_t i = 0; i < kb_.variables().size(); ++i) {
            if (kb_.variables()[i].name() != kb_.output_name()) in[kb_.variables()[i].name()] = values[i];
        }
        throw NoRuleFired(std::move(in));
    }
    return weighted / total;
}

double InferenceEngine::output(const Inputs& inputs) const {
    std::vector<double> values(kb_.variables().size(), 0.0);
    for (std::size_t i = 0; i < kb_.variables().size(); ++i) {
        const auto& v = kb_.variables()[i];
        if (v.name() == kb_.output_name()) continue;
        auto it = inputs.find(v.name());
        if (it != inputs.end()) {
            values[i] = it->second;
            continue;
        }
        bool referenced = std::any_of(rules_.begin(), rules_.end(), [&](const CompiledRule& r) {
            return std::any_of(r.preconditions.begin(), r.preconditions.end(),
                               [&](const CompiledCondition& c) { return c.variable == i; });
        });
        if (referenced) throw MissingInput(v.name());
    }
    return output(std::span<const double>(values));
}

}  // namespace hfc
