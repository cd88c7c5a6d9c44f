#include "hfc/knowledge_base.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hfc {

LinguisticVariable::LinguisticVariable(std::string name, std::string unit, std::vector<Label> labels,
                                       std::optional<Interval> range)
    : name_(std::move(name)), unit_(std::move(unit)), range_(range) {
    if (range_ && !(range_->lo < range_->hi)) throw KbError("variable " + name_ + ": empty range");
    for (auto& l : labels) add_label(std::move(l));
}

Interval LinguisticVariable::operating_range() const {
    if (range_) return *range_;
    Interval r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& l : labels_) {
        for (double b : l.mf.breakpoints()) {
            r.lo = std::min(r.lo, b);
            r.hi = std::max(r.hi, b);
        }
    }
    return r;
}

const Label* LinguisticVariable::find(std::string_view label) const noexcept {
    auto it = std::find_if(labels_.begin(), labels_.end(), [&](const Label& l) { return l.name == label; });
    return it == labels_.end() ? nullptr : &*it;
}

void LinguisticVariable::add_label(Label label) {
    if (find(label.name)) throw KbError("duplicate label " + label.name + " on " + name_);
    auto before = [](const Label& a, const Label& b) {
        double pa = a.mf.apex(), pb = b.mf.apex();
        return pa != pb ? pa < pb : a.name < b.name;
    };
    labels_.insert(std::upper_bound(labels_.begin(), labels_.end(), label, before), std::move(label));
}

void OutputUniverse::validate() const {
    if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
        throw KbError("output universe needs min < max");
    }
    if (levels < 3) throw KbError("output universe needs at least 3 quantization levels");
}

std::vector<double> OutputUniverse::points() const {
    std::vector<double> out(static_cast<std::size_t>(levels));
    for (int j = 0; j < levels; ++j) out[static_cast<std::size_t>(j)] = point(j);
    return out;
}

std::optional<std::string_view> input_label_alias(std::string_view label) noexcept {
    if (label == "NL") return std::string_view("NE");
    return std::nullopt;
}

KnowledgeBase::KnowledgeBase(std::vector<LinguisticVariable> variables, std::string output, OutputUniverse universe,
                             std::vector<Rule> rules)
    : variables_(std::move(variables)), output_(std::move(output)), universe_(universe), rules_(std::move(rules)) {
    universe_.validate();
    std::set<std::string, std::less<>> names;
    for (const auto& v : variables_) {
        if (!names.insert(v.name()).second) throw KbError("duplicate variable " + v.name());
    }
    if (!find_variable(output_)) throw KbError("no output variable defined");

    std::set<std::string, std::less<>> rule_names;
    for (const auto& r : rules_) {
        if (!rule_names.insert(r.name).second) throw KbError("duplicate rule name " + r.name);
        if (r.goal_index < 1) throw KbError("rule " + r.name + ": goal index must be positive");
        if (r.preconditions.empty()) throw KbError("rule " + r.name + ": no preconditions");
        if (r.conclusion.variable != output_) {
            throw KbError("rule " + r.name + ": conclusion must target output variable " + output_);
        }
        resolve(r.conclusion);
        std::set<std::string, std::less<>> seen;
        for (const auto& c : r.preconditions) {
            if (c.variable == output_) throw KbError("rule " + r.name + ": precondition on output variable");
            if (!seen.insert(c.variable).second) {
                throw KbError("rule " + r.name + ": two preconditions on " + c.variable);
            }
            resolve(c);
        }
    }
}

const LinguisticVariable& KnowledgeBase::output_variable() const { return *find_variable(output_); }

const LinguisticVariable* KnowledgeBase::find_variable(std::string_view name) const noexcept {
    int i = variable_index(name);
    return i < 0 ? nullptr : &variables_[static_cast<std::size_t>(i)];
}

int KnowledgeBase::variable_index(std::string_view name) const noexcept {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i].name() == name) return static_cast<int>(i);
    }
    return -1;
}

std::vector<const LinguisticVariable*> KnowledgeBase::inputs() const {
    std::vector<const LinguisticVariable*> out;
    for (const auto& v : variables_) {
        if (v.name() != output_) out.push_back(&v);
    }
    return out;
}

ResolvedLabel KnowledgeBase::resolve(const Condition& c) const {
    const LinguisticVariable* var = find_variable(c.variable);
    if (!var) throw KbError("unknown variable " + c.variable);
    if (const Label* l = var->find(c.label)) return {var, l, false};
    if (c.variable != output_) {
        if (auto alias = input_label_alias(c.label)) {
            if (const Label* l = var->find(*alias)) return {var, l, true};
        }
    }
    throw KbError("unknown label " + c.label + " on " + c.variable);
}

KnowledgeBase KnowledgeBase::with_rules(std::vector<Rule> rules) const {
    return KnowledgeBase(variables_, output_, universe_, std::move(rules));
}

}  // namespace hfc
