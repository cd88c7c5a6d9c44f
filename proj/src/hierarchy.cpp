#include "hfc/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hfc {

namespace {

constexpr double kSupportLevel = 1e-6;

const char* kind_code(ViolationKind k) {
    switch (k) {
        case ViolationKind::missing: return "hierarchy-missing";
        case ViolationKind::not_narrower: return "hierarchy-not-narrower";
        case ViolationKind::unknown_goal: return "hierarchy-unknown-goal";
    }
    return "hierarchy";
}

template <class Vars>
auto find_var(Vars& vars, std::string_view name) -> decltype(&vars.front()) {
    auto it = std::find_if(vars.begin(), vars.end(), [&](const LinguisticVariable& v) { return v.name() == name; });
    return it == vars.end() ? nullptr : &*it;
}

}  // namespace

void validate_mode(const VeryMode& mode) {
    if (const auto* n = std::get_if<Narrowed>(&mode)) {
        if (!(n->factor > 0.0 && n->factor < 1.0)) {
            throw HierarchyError("narrowing factor must lie strictly between 0 and 1, got " +
                                 format_number(n->factor));
        }
    }
}

std::string describe_mode(const VeryMode& mode) {
    if (const auto* n = std::get_if<Narrowed>(&mode)) return "narrowed(" + format_number(n->factor) + ")";
    return "concentration";
}

MembershipFunction derive_very(const MembershipFunction& mf, const VeryMode& mode) {
    validate_mode(mode);
    if (std::holds_alternative<Concentration>(mode)) return concentrate(mf);
    double f = std::get<Narrowed>(mode).factor;
    const auto* t = std::get_if<Triangle>(&mf.shape());
    if (!t) throw HierarchyError("cannot narrow a " + std::string(mf.shape_name()) + ": it has no finite base");
    return MembershipFunction(Triangle{t->peak - f * (t->peak - t->left), t->peak, t->peak + f * (t->right - t->peak)},
                              mf.concentrations());
}

void GoalSpec::validate() const {
    if (goals.empty()) throw HierarchyError("goal spec needs at least one goal");
    std::set<std::string, std::less<>> names;
    for (const auto& g : goals) {
        if (g.name.empty()) throw HierarchyError("goal without a name");
        if (!names.insert(g.name).second) throw HierarchyError("duplicate goal " + g.name);
        for (const auto& a : g.achievement) {
            if (a.mode) validate_mode(*a.mode);
        }
    }
}

void GoalSpec::validate(const Vocabulary& vocabulary) const {
    validate();
    auto known = [&](std::string_view n) {
        return std::any_of(vocabulary.variables.begin(), vocabulary.variables.end(),
                           [&](const LinguisticVariable& v) { return v.name() == n; });
    };
    for (const auto& g : goals) {
        for (const auto& u : g.inputs) {
            if (!known(u)) throw HierarchyError("goal " + g.name + ": unknown input variable " + u);
        }
        for (const auto& a : g.achievement) {
            if (!known(a.variable)) throw HierarchyError("goal " + g.name + ": unknown achievement variable " + a.variable);
        }
    }
}

GoalSpec cart_pole_goals() {
    GoalSpec spec;
    spec.goals.push_back(Goal{"balance",
                              {"theta", "theta_dot"},
                              {{"theta", "ZE", "VS", std::nullopt}, {"theta_dot", "ZE", "VS", std::nullopt}}});
    spec.goals.push_back(Goal{"position", {"x", "x_dot"}, {}});
    return spec;
}

KnowledgeBase compose_hierarchical(const Vocabulary& vocabulary, const GoalSpec& spec,
                                   const std::vector<std::vector<Rule>>& per_goal_rules, const VeryMode& mode) {
    validate_mode(mode);
    spec.validate(vocabulary);
    if (per_goal_rules.size() != spec.goals.size()) {
        throw HierarchyError("expected " + std::to_string(spec.goals.size()) + " rule sets, got " +
                             std::to_string(per_goal_rules.size()));
    }

    std::vector<LinguisticVariable> variables = vocabulary.variables;
    // Materialize the Very labels of every goal that has a successor.
    std::vector<std::vector<Condition>> achieved(spec.goals.size());
    for (std::size_t i = 0; i + 1 < spec.goals.size(); ++i) {
        for (const auto& term : spec.goals[i].achievement) {
            LinguisticVariable* var = find_var(variables, term.variable);
            if (!var) throw HierarchyError("undefined achievement variable " + term.variable);
            const Label* base = var->find(term.base_label);
            if (!base) throw HierarchyError("unknown label " + term.base_label + " on " + term.variable);
            MembershipFunction very = derive_very(base->mf, term.mode.value_or(mode));
            std::string name = term.very_name();
            // Reuse is fine only for a label this composition added itself.
            if (const Label* existing = var->find(name)) {
                bool ours = !find_var(vocabulary.variables, term.variable)->find(name);
                if (!ours || !(existing->mf == very)) {
                    throw HierarchyError("label " + name + " already exists on " + term.variable);
                }
            } else {
                var->add_label({name, very});
            }
            achieved[i].push_back({term.variable, name});
        }
    }

    std::vector<Rule> rules;
    for (std::size_t i = 0; i < spec.goals.size(); ++i) {
        const Goal& goal = spec.goals[i];
        for (const Rule& r : per_goal_rules[i]) {
            for (const auto& c : r.preconditions) {
                if (std::find(goal.inputs.begin(), goal.inputs.end(), c.variable) == goal.inputs.end()) {
                    throw HierarchyError("rule " + r.name + " references " + c.variable + ", which is not an input of goal " +
                                         goal.name);
                }
            }
            Rule out = r;
            out.goal_index = static_cast<int>(i) + 1;
            if (i > 0) {
                std::vector<Condition> pre = achieved[i - 1];
                pre.insert(pre.end(), r.preconditions.begin(), r.preconditions.end());
                out.preconditions = std::move(pre);
            }
            rules.push_back(std::move(out));
        }
    }
    try {
        return KnowledgeBase(std::move(variables), vocabulary.output, vocabulary.universe, std::move(rules));
    } catch (const KbError& e) {
        throw HierarchyError(e.what());
    }
}

bool is_narrower(const MembershipFunction& a, const MembershipFunction& b) {
    std::vector<double> pts = a.breakpoints();
    auto bb = b.breakpoints();
    pts.insert(pts.end(), bb.begin(), bb.end());
    auto [lo_it, hi_it] = std::minmax_element(pts.begin(), pts.end());
    double lo = *lo_it, hi = *hi_it;
    double pad = std::max(hi - lo, 1.0);
    constexpr int kSamples = 2000;
    for (int i = 0; i <= kSamples; ++i) pts.push_back(lo - pad + (hi - lo + 2 * pad) * i / kSamples);
    for (double v : pts) {
        if (a(v) > b(v) + 1e-12) return false;
    }
    Interval sa = a.support(kSupportLevel), sb = b.support(kSupportLevel);
    return sa.lo >= sb.lo && sa.hi <= sb.hi && (sa.lo > sb.lo || sa.hi < sb.hi);
}

std::vector<Violation> audit_hierarchy(const KnowledgeBase& kb, const GoalSpec& spec) {
    std::vector<Violation> out;
    for (const auto& r : kb.rules()) {
        if (r.goal_index < 2) continue;
        auto g = static_cast<std::size_t>(r.goal_index);
        if (g > spec.goals.size()) {
            out.push_back({ViolationKind::unknown_goal, r.name, "",
                           "rule " + r.name + " has goal " + std::to_string(r.goal_index) + " but only " +
                               std::to_string(spec.goals.size()) + " goals are declared"});
            continue;
        }
        const Goal& prev = spec.goals[g - 2];
        for (const auto& term : prev.achievement) {
            auto it = std::find_if(r.preconditions.begin(), r.preconditions.end(),
                                   [&](const Condition& c) { return c.variable == term.variable; });
            if (it == r.preconditions.end()) {
                out.push_back({ViolationKind::missing, r.name, term.variable,
                               "rule " + r.name + " lacks the achievement precondition on " + term.variable +
                                   " (goal " + prev.name + ")"});
                continue;
            }
            const LinguisticVariable* var = kb.find_variable(term.variable);
            const Label* base = var ? var->find(term.base_label) : nullptr;
            const Label* used = nullptr;
            try {
                used = kb.resolve(*it).label;
            } catch (const KbError&) {
            }
            if (!base || !used || !is_narrower(used->mf, base->mf)) {
                out.push_back({ViolationKind::not_narrower, r.name, term.variable,
                               "rule " + r.name + ": label " + it->label + " on " + term.variable +
                                   " is not narrower than " + term.base_label});
            }
        }
    }
    return out;
}

std::vector<Diagnostic> to_diagnostics(const std::vector<Violation>& violations) {
    std::vector<Diagnostic> out;
    for (const auto& v : violations) out.push_back(Diagnostic{Severity::error, {}, v.message, kind_code(v.kind)});
    return out;
}

}  // namespace hfc
