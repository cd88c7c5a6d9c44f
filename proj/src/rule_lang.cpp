#include "hfc/rule_lang.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace hfc {

namespace {

enum class Tok { ident, number, lparen, rparen, comma, colon, equals, end, bad };

struct Token {
    Tok kind = Tok::end;
    std::string_view text;
    Location loc;
};

bool is_ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

constexpr std::array<std::string_view, 11> kKeywords = {"var",  "unit", "label", "rule", "if",    "and",
                                                        "then", "is",   "goal",  "very", "range"};

bool is_keyword(std::string_view word) {
    auto w = lower(word);
    return w == "levels" || std::find(kKeywords.begin(), kKeywords.end(), w) != kKeywords.end();
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_blank(true);
        Token t;
        t.loc = {line_, col_};
        if (pos_ >= src_.size()) return t;
        std::size_t start = pos_;
        char c = src_[pos_];
        auto single = [&](Tok k) {
            bump();
            t.kind = k;
            t.text = src_.substr(start, 1);
            return t;
        };
        switch (c) {
            case '(': return single(Tok::lparen);
            case ')': return single(Tok::rparen);
            case ',': return single(Tok::comma);
            case ':': return single(Tok::colon);
            case '=': return single(Tok::equals);
            default: break;
        }
        if (is_ident_start(c)) {
            while (pos_ < src_.size() && is_ident_char(src_[pos_])) bump();
            t.kind = Tok::ident;
            t.text = src_.substr(start, pos_ - start);
            return t;
        }
        if (is_digit(c) || c == '-' || c == '+' || c == '.') {
            if (c == '-' || c == '+') bump();
            bool digits = false;
            while (pos_ < src_.size() && is_digit(src_[pos_])) bump(), digits = true;
            if (pos_ < src_.size() && src_[pos_] == '.') {
                bump();
                while (pos_ < src_.size() && is_digit(src_[pos_])) bump(), digits = true;
            }
            if (digits && pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                std::size_t save = pos_;
                int save_col = col_;
                bump();
                if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) bump();
                bool exp_digits = false;
                while (pos_ < src_.size() && is_digit(src_[pos_])) bump(), exp_digits = true;
                if (!exp_digits) pos_ = save, col_ = save_col;
            }
            t.kind = digits ? Tok::number : Tok::bad;
            t.text = src_.substr(start, std::max<std::size_t>(pos_ - start, 1));
            if (!digits && pos_ == start) bump();
            return t;
        }
        bump();
        t.kind = Tok::bad;
        t.text = src_.substr(start, 1);
        return t;
    }

    /// Whitespace-delimited word on the current line; used for units.
    Token raw_word() {
        skip_blank(false);
        Token t;
        t.loc = {line_, col_};
        std::size_t start = pos_;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '#') break;
            bump();
        }
        t.kind = pos_ > start ? Tok::ident : Tok::bad;
        t.text = src_.substr(start, pos_ - start);
        return t;
    }

private:
    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_blank(bool newlines) {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
                bump();
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct SyntaxError {
    Diagnostic diag;
};

struct PendingVar {
    std::string name;
    std::string unit;
    std::optional<Interval> range;
    std::optional<int> levels;
    std::vector<Label> labels;
    std::set<std::string, std::less<>> malformed;  // reported already; not "unknown" in rules
    Location loc;
    Location levels_loc;
};

struct PendingCondition {
    Condition cond;
    Location var_loc;
    Location label_loc;
};

struct PendingRule {
    Rule rule;
    Location name_loc;
    std::vector<PendingCondition> pre;
    PendingCondition concl;
};

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::end: return "end of input";
        case Tok::bad: {
            std::string s = "unexpected character";
            unsigned char c = static_cast<unsigned char>(t.text.empty() ? 0 : t.text[0]);
            if (c >= 0x20 && c < 0x7f) return s + " '" + std::string(t.text.substr(0, 1)) + "'";
            std::ostringstream os;
            os << s << " 0x" << std::hex << static_cast<int>(c);
            return os.str();
        }
        default: return "'" + std::string(t.text) + "'";
    }
}

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) { advance(); }

    ParseResult run() {
        std::vector<PendingVar> vars;
        std::vector<PendingRule> rules;
        bool in_var = false;
        bool seen_rule = false;
        while (cur_.kind != Tok::end && diags_.size() < kMaxDiagnostics) {
            try {
                if (keyword("var")) {
                    if (seen_rule) error(cur_.loc, "variable declarations must precede rules", "syntax");
                    in_var = false;
                    vars.push_back(parse_var_header());
                    in_var = true;
                } else if (keyword("label")) {
                    if (!in_var) throw SyntaxError{make(cur_.loc, "label declared outside a variable", "syntax")};
                    vars.back().labels.push_back(parse_label(vars.back()));
                } else if (keyword("rule")) {
                    rules.push_back(parse_rule());
                    seen_rule = true;
                    in_var = false;
                } else {
                    throw SyntaxError{
                        make(cur_.loc, "expected 'var', 'label' or 'rule', found " + describe(cur_), "syntax")};
                }
            } catch (const SyntaxError& e) {
                diags_.push_back(e.diag);
                synchronize();
            }
        }
        return finish(std::move(vars), std::move(rules));
    }

private:
    static constexpr std::size_t kMaxDiagnostics = 100;

    static Diagnostic make(Location loc, std::string message, std::string code,
                           Severity severity = Severity::error) {
        return Diagnostic{severity, loc, std::move(message), std::move(code)};
    }

    void error(Location loc, std::string message, std::string code) {
        diags_.push_back(make(loc, std::move(message), std::move(code)));
    }

    void advance() { cur_ = lex_.next(); }

    bool keyword(std::string_view kw) const { return cur_.kind == Tok::ident && lower(cur_.text) == kw; }

    [[noreturn]] void expected(std::string_view what) {
        throw SyntaxError{make(cur_.loc, "expected " + std::string(what) + ", found " + describe(cur_), "syntax")};
    }

    void expect_keyword(std::string_view kw) {
        if (!keyword(kw)) expected("'" + std::string(kw) + "'");
        advance();
    }

    void expect(Tok kind, std::string_view what) {
        if (cur_.kind != kind) expected(what);
        advance();
    }

    std::pair<std::string, Location> expect_name(std::string_view what) {
        if (cur_.kind != Tok::ident) expected(what);
        if (is_keyword(cur_.text)) {
            throw SyntaxError{make(cur_.loc,
                                   "expected " + std::string(what) + ", found keyword '" + std::string(cur_.text) + "'",
                                   "syntax")};
        }
        std::pair<std::string, Location> out{std::string(cur_.text), cur_.loc};
        advance();
        return out;
    }

    double expect_number() {
        if (cur_.kind != Tok::number) expected("a number");
        std::string_view text = cur_.text;
        if (!text.empty() && text[0] == '+') text.remove_prefix(1);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
            throw SyntaxError{make(cur_.loc, "number out of range: " + std::string(cur_.text), "number")};
        }
        advance();
        return v;
    }

    int expect_integer(int lo, int hi, std::string_view what) {
        Location loc = cur_.loc;
        double v = expect_number();
        if (v != std::floor(v) || v < lo || v > hi) {
            throw SyntaxError{make(loc,
                                   std::string(what) + " must be an integer in [" + std::to_string(lo) + ", " +
                                       std::to_string(hi) + "]",
                                   "number")};
        }
        return static_cast<int>(v);
    }

    void synchronize() {
        while (cur_.kind != Tok::end && !keyword("var") && !keyword("rule") && !keyword("label")) advance();
    }

    PendingVar parse_var_header() {
        PendingVar v;
        v.loc = cur_.loc;
        advance();
        v.name = expect_name("a variable name").first;
        expect_keyword("unit");
        if (cur_.kind != Tok::equals) expected("'='");
        Token unit = lex_.raw_word();
        if (unit.kind != Tok::ident) throw SyntaxError{make(unit.loc, "expected a unit after 'unit ='", "syntax")};
        v.unit = std::string(unit.text);
        advance();
        if (keyword("range")) {
            Location loc = cur_.loc;
            advance();
            expect(Tok::equals, "'='");
            expect(Tok::lparen, "'('");
            double lo = expect_number();
            expect(Tok::comma, "','");
            double hi = expect_number();
            expect(Tok::rparen, "')'");
            if (!(lo < hi)) throw SyntaxError{make(loc, "range of " + v.name + " must satisfy min < max", "range")};
            v.range = Interval{lo, hi};
        }
        if (keyword("levels")) {
            v.levels_loc = cur_.loc;
            advance();
            expect(Tok::equals, "'='");
            v.levels = expect_integer(3, 1000000, "levels");
        }
        return v;
    }

    Label parse_label(PendingVar& owner) {
        advance();
        auto [name, name_loc] = expect_name("a label name");
        int very = 0;
        while (keyword("very")) {
            if (++very > 8) throw SyntaxError{make(cur_.loc, "too many 'very' hedges", "syntax")};
            advance();
        }
        if (cur_.kind != Tok::ident) expected("a shape (triangle, shoulder_up, shoulder_down)");
        std::string shape = lower(cur_.text);
        Location shape_loc = cur_.loc;
        advance();
        expect(Tok::lparen, "'('");
        std::vector<double> params{expect_number()};
        while (cur_.kind == Tok::comma) {
            advance();
            params.push_back(expect_number());
            if (params.size() > 8) throw SyntaxError{make(cur_.loc, "too many shape parameters", "shape")};
        }
        expect(Tok::rparen, "')'");
        if (owner.labels.end() != std::find_if(owner.labels.begin(), owner.labels.end(),
                                               [&](const Label& l) { return l.name == name; })) {
            throw SyntaxError{make(name_loc, "duplicate label " + name + " on " + owner.name, "duplicate-label")};
        }
        try {
            return Label{name, make_membership(shape, params, very)};
        } catch (const std::invalid_argument& e) {
            owner.malformed.insert(name);
            throw SyntaxError{make(shape_loc, std::string("label ") + name + ": " + e.what(), "shape")};
        }
    }

    PendingCondition parse_condition() {
        PendingCondition c;
        auto [var, var_loc] = expect_name("a variable name");
        expect_keyword("is");
        auto [label, label_loc] = expect_name("a label name");
        c.cond = {var, label};
        c.var_loc = var_loc;
        c.label_loc = label_loc;
        return c;
    }

    PendingRule parse_rule() {
        PendingRule r;
        advance();
        auto [name, loc] = expect_name("a rule name");
        r.rule.name = name;
        r.name_loc = loc;
        if (keyword("goal")) {
            advance();
            r.rule.goal_index = expect_integer(1, 1000, "goal index");
        }
        expect(Tok::colon, "':'");
        expect_keyword("if");
        r.pre.push_back(parse_condition());
        while (keyword("and")) {
            advance();
            r.pre.push_back(parse_condition());
        }
        expect_keyword("then");
        r.concl = parse_condition();
        for (const auto& c : r.pre) r.rule.preconditions.push_back(c.cond);
        r.rule.conclusion = r.concl.cond;
        return r;
    }

    ParseResult finish(std::vector<PendingVar> vars, std::vector<PendingRule> rules) {
        std::map<std::string, const PendingVar*, std::less<>> by_name;
        for (const auto& v : vars) {
            if (!by_name.emplace(v.name, &v).second) {
                error(v.loc, "duplicate variable " + v.name, "duplicate-variable");
            }
            if (v.labels.empty()) error(v.loc, "variable " + v.name + " declares no labels", "no-labels");
        }

        std::string output;
        if (rules.empty()) {
            error({1, 1}, "no output variable defined", "no-output");
        } else {
            output = rules.front().concl.cond.variable;
            if (!by_name.count(output)) {
                error(rules.front().concl.var_loc, "unknown variable " + output, "unknown-variable");
            }
        }

        auto check_label = [&](const PendingCondition& c, bool is_output) {
            auto it = by_name.find(c.cond.variable);
            if (it == by_name.end()) {
                error(c.var_loc, "unknown variable " + c.cond.variable, "unknown-variable");
                return;
            }
            const auto& labels = it->second->labels;
            auto has = [&](std::string_view n) {
                return std::any_of(labels.begin(), labels.end(), [&](const Label& l) { return l.name == n; });
            };
            if (has(c.cond.label) || it->second->malformed.count(c.cond.label)) return;
            if (!is_output) {
                if (auto alias = input_label_alias(c.cond.label); alias && has(*alias)) return;
            }
            error(c.label_loc, "unknown label " + c.cond.label + " on " + c.cond.variable, "unknown-label");
        };

        std::set<std::string, std::less<>> rule_names;
        for (const auto& r : rules) {
            if (!rule_names.insert(r.rule.name).second) {
                error(r.name_loc, "duplicate rule name " + r.rule.name, "duplicate-rule");
            }
            if (r.concl.cond.variable != output) {
                error(r.concl.var_loc,
                      "rule " + r.rule.name + " concludes on " + r.concl.cond.variable + " but the output is " + output,
                      "output-mismatch");
            } else {
                check_label(r.concl, true);
            }
            std::set<std::string, std::less<>> seen;
            for (const auto& c : r.pre) {
                if (c.cond.variable == output) {
                    error(c.var_loc, "rule " + r.rule.name + " has a precondition on the output variable",
                          "output-precondition");
                    continue;
                }
                if (!seen.insert(c.cond.variable).second) {
                    error(c.var_loc, "rule " + r.rule.name + " has two preconditions on " + c.cond.variable,
                          "repeated-variable");
                }
                check_label(c, false);
            }
        }

        for (const auto& v : vars) {
            if (v.levels && v.name != output) {
                error(v.levels_loc, "levels only applies to the output variable", "levels");
            }
        }

        ParseResult result;
        bool failed = std::any_of(diags_.begin(), diags_.end(),
                                  [](const Diagnostic& d) { return d.severity == Severity::error; });
        if (!failed) {
            try {
                std::vector<LinguisticVariable> variables;
                OutputUniverse universe;
                for (auto& v : vars) {
                    if (v.name == output) {
                        Interval span = v.range.value_or(LinguisticVariable(v.name, v.unit, v.labels).operating_range());
                        universe = OutputUniverse{span.lo, span.hi, v.levels.value_or(201)};
                        variables.emplace_back(v.name, v.unit, std::move(v.labels));
                    } else {
                        variables.emplace_back(v.name, v.unit, std::move(v.labels), v.range);
                    }
                }
                std::vector<Rule> out_rules;
                for (auto& r : rules) out_rules.push_back(std::move(r.rule));
                result.kb.emplace(std::move(variables), output, universe, std::move(out_rules));
            } catch (const KbError& e) {
                error({1, 1}, e.what(), "invalid-kb");
            }
        }
        std::stable_sort(diags_.begin(), diags_.end(), [](const Diagnostic& a, const Diagnostic& b) {
            return std::pair(a.location.line, a.location.column) < std::pair(b.location.line, b.location.column);
        });
        result.diagnostics = std::move(diags_);
        return result;
    }

    Lexer lex_;
    Token cur_;
    std::vector<Diagnostic> diags_;
};

Diagnostic warning(std::string message, std::string code) {
    return Diagnostic{Severity::warning, {}, std::move(message), std::move(code)};
}

bool same_curve(const MembershipFunction& a, const MembershipFunction& b) {
    if (a.shape_name() != b.shape_name() || a.concentrations() != b.concentrations()) return false;
    auto pa = a.parameters(), pb = b.parameters();
    for (std::size_t i = 0; i < pa.size(); ++i) {
        double scale = std::max({1.0, std::abs(pa[i]), std::abs(pb[i])});
        if (std::abs(pa[i] - pb[i]) > 1e-9 * scale) return false;
    }
    return true;
}

void check_coverage(const LinguisticVariable& var, Interval range, std::vector<Diagnostic>& out) {
    std::vector<double> pts{range.lo, range.hi};
    for (const auto& l : var.labels()) {
        for (double b : l.mf.breakpoints()) {
            if (b > range.lo && b < range.hi) pts.push_back(b);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<double> probes;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        probes.push_back(pts[i]);
        if (i + 1 < pts.size()) probes.push_back(0.5 * (pts[i] + pts[i + 1]));
    }
    auto covered = [&](double v) {
        return std::any_of(var.labels().begin(), var.labels().end(), [&](const Label& l) { return l.mf(v) > 0.0; });
    };
    for (std::size_t i = 0; i < probes.size();) {
        if (covered(probes[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < probes.size() && !covered(probes[j + 1])) ++j;
        out.push_back(warning("variable " + var.name() + ": values in [" + format_number(probes[i]) + ", " +
                                  format_number(probes[j]) + "] are not covered by any label",
                              "coverage-gap"));
        i = j + 1;
    }
}

std::string render_conditions(const std::vector<Condition>& pre, const Condition& concl) {
    std::string s = "IF ";
    for (std::size_t i = 0; i < pre.size(); ++i) {
        if (i) s += " AND ";
        s += pre[i].variable + " IS " + pre[i].label;
    }
    return s + " THEN " + concl.variable + " IS " + concl.label;
}

void check_grid(const KnowledgeBase& kb, std::vector<Diagnostic>& out) {
    std::vector<const Rule*> goal1;
    for (const auto& r : kb.rules()) {
        if (r.goal_index == 1) goal1.push_back(&r);
    }
    if (goal1.empty()) return;
    // Variables and (resolved) labels used by goal-1 rules, in declaration order.
    std::vector<std::pair<std::string, std::vector<std::string>>> axes;
    for (const auto& v : kb.variables()) {
        std::vector<std::string> used;
        for (const auto* r : goal1) {
            for (const auto& c : r->preconditions) {
                if (c.variable != v.name()) continue;
                const std::string& name = kb.resolve(c).label->name;
                if (std::find(used.begin(), used.end(), name) == used.end()) used.push_back(name);
            }
        }
        if (used.empty()) continue;
        std::vector<std::string> ordered;
        for (const auto& l : v.labels()) {
            if (std::find(used.begin(), used.end(), l.name) != used.end()) ordered.push_back(l.name);
        }
        axes.emplace_back(v.name(), std::move(ordered));
    }
    std::size_t cells = 1;
    for (const auto& a : axes) {
        cells *= a.second.size();
        if (cells > 4096) return;
    }
    std::vector<std::size_t> idx(axes.size(), 0);
    for (std::size_t n = 0; n < cells; ++n) {
        bool hit = std::any_of(goal1.begin(), goal1.end(), [&](const Rule* r) {
            return std::all_of(r->preconditions.begin(), r->preconditions.end(), [&](const Condition& c) {
                for (std::size_t a = 0; a < axes.size(); ++a) {
                    if (axes[a].first == c.variable) return axes[a].second[idx[a]] == kb.resolve(c).label->name;
                }
                return true;
            });
        });
        if (!hit) {
            std::string cell;
            for (std::size_t a = 0; a < axes.size(); ++a) {
                if (a) cell += ", ";
                cell += axes[a].first + " " + axes[a].second[idx[a]];
            }
            out.push_back(warning("grid cell (" + cell + ") uncovered", "grid-gap"));
        }
        for (std::size_t a = axes.size(); a-- > 0;) {
            if (++idx[a] < axes[a].second.size()) break;
            idx[a] = 0;
        }
    }
}

void check_symmetry(const KnowledgeBase& kb, std::vector<Diagnostic>& out) {
    // Mirror label per (variable, label) by reflecting the curve about zero.
    std::map<std::pair<std::string, std::string>, std::string> mirror;
    bool complete = true;
    for (const auto& v : kb.variables()) {
        for (const auto& l : v.labels()) {
            auto reflected = l.mf.mirrored();
            auto it = std::find_if(v.labels().begin(), v.labels().end(),
                                   [&](const Label& m) { return same_curve(m.mf, reflected); });
            if (it == v.labels().end()) {
                out.push_back(warning("label " + l.name + " on " + v.name() + " has no mirror image", "asymmetric"));
                complete = false;
            } else {
                mirror[{v.name(), l.name}] = it->name;
            }
        }
    }
    if (!complete) return;
    using Key = std::pair<std::set<std::pair<std::string, std::string>>, std::string>;
    auto key_of = [&](const Rule& r, bool mirrored) {
        Key k;
        for (const auto& c : r.preconditions) {
            std::string l = kb.resolve(c).label->name;
            k.first.insert({c.variable, mirrored ? mirror.at({c.variable, l}) : l});
        }
        std::string l = kb.resolve(r.conclusion).label->name;
        k.second = mirrored ? mirror.at({r.conclusion.variable, l}) : l;
        return k;
    };
    std::set<Key> present;
    for (const auto& r : kb.rules()) present.insert(key_of(r, false));
    for (const auto& r : kb.rules()) {
        Key want = key_of(r, true);
        if (present.count(want)) continue;
        std::vector<Condition> pre;
        for (const auto& [var, label] : want.first) pre.push_back({var, label});
        out.push_back(warning("rule " + r.name + " has no mirror rule (" +
                                  render_conditions(pre, {kb.output_name(), want.second}) + ")",
                              "asymmetric"));
    }
}

}  // namespace

ParseResult parse_knowledge_base(std::string_view text) {
    try {
        return Parser(text).run();
    } catch (const std::exception& e) {
        ParseResult r;
        r.diagnostics.push_back(Diagnostic{Severity::error, {1, 1}, e.what(), "internal"});
        return r;
    }
}

std::vector<Diagnostic> validate_kb(const KnowledgeBase& kb) {
    std::vector<Diagnostic> out;
    for (const auto& r : kb.rules()) {
        for (const auto& c : r.preconditions) {
            auto res = kb.resolve(c);
            if (res.aliased) {
                out.push_back(warning("rule " + r.name + ": label " + c.label + " on input " + c.variable +
                                          " is read as " + res.label->name,
                                      "input-alias"));
            }
        }
    }
    const auto& u = kb.universe();
    for (const auto& l : kb.output_variable().labels()) {
        Interval s = l.mf.support();
        if (s.hi <= u.min || s.lo >= u.max) {
            out.push_back(Diagnostic{Severity::error, {},
                                     "output label " + l.name + " lies outside the output universe",
                                     "label-outside-universe"});
        }
    }
    for (const auto* v : kb.inputs()) check_coverage(*v, v->operating_range(), out);
    check_grid(kb, out);
    check_symmetry(kb, out);
    return out;
}

std::string format_number(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), ptr);
}

std::string serialize_kb(const KnowledgeBase& kb) {
    std::ostringstream os;
    for (const auto& v : kb.variables()) {
        os << "var " << v.name() << " unit = " << v.unit();
        if (v.name() == kb.output_name()) {
            const auto& u = kb.universe();
            os << " range = (" << format_number(u.min) << ", " << format_number(u.max) << ") levels = " << u.levels;
        } else if (v.range()) {
            os << " range = (" << format_number(v.range()->lo) << ", " << format_number(v.range()->hi) << ")";
        }
        os << '\n';
        for (const auto& l : v.labels()) {
            os << "  label " << l.name << ' ';
            for (int i = 0; i < l.mf.concentrations(); ++i) os << "very ";
            os << l.mf.shape_name() << '(';
            auto params = l.mf.parameters();
            for (std::size_t i = 0; i < params.size(); ++i) os << (i ? ", " : "") << format_number(params[i]);
            os << ")\n";
        }
        os << '\n';
    }
    for (const auto& r : kb.rules()) {
        os << "rule " << r.name;
        if (r.goal_index != 1) os << " goal " << r.goal_index;
        os << ": " << render_conditions(r.preconditions, r.conclusion) << '\n';
    }
    return os.str();
}

namespace {

constexpr std::string_view kPoleSource = R"(# Cart-pole controller.
# Goal 1 keeps the pole upright from theta and theta_dot; goal 2 moves the
# cart to the target once the pole is almost balanced (theta and theta_dot
# both VS, a narrowed ZE). x is the position error x - x0.

var theta unit = deg
  label NE shoulder_down(-6.25, 0)
  label ZE triangle(-6.25, 0, 6.25)
  label PO shoulder_up(0, 6.25)
  label VS triangle(-0.3125, 0, 0.3125)

var theta_dot unit = deg/s
  label NE shoulder_down(-25, 0)
  label ZE triangle(-25, 0, 25)
  label PO shoulder_up(0, 25)
  label VS triangle(-1.25, 0, 1.25)

var x unit = m
  label NE shoulder_down(-2, 0)
  label ZE triangle(-2, 0, 2)
  label PO shoulder_up(0, 2)

var x_dot unit = m/s
  label NE shoulder_down(-0.1, 0)
  label ZE triangle(-0.1, 0, 0.1)
  label PO shoulder_up(0, 0.1)

var F unit = N range = (-10, 10) levels = 201
  label NL shoulder_down(-10, -6.666666666666667)
  label NM triangle(-10, -6.666666666666667, -3.3333333333333335)
  label NS triangle(-6.666666666666667, -3.3333333333333335, 0)
  label ZE triangle(-3.3333333333333335, 0, 3.3333333333333335)
  label PS triangle(0, 3.3333333333333335, 6.666666666666667)
  label PM triangle(3.3333333333333335, 6.666666666666667, 10)
  label PL shoulder_up(6.666666666666667, 10)

# angular position
rule r1: IF theta IS PO AND theta_dot IS PO THEN F IS PL
rule r2: IF theta IS PO AND theta_dot IS ZE THEN F IS PM
rule r3: IF theta IS PO AND theta_dot IS NE THEN F IS ZE
rule r4: IF theta IS ZE AND theta_dot IS PO THEN F IS PS
rule r5: IF theta IS ZE AND theta_dot IS ZE THEN F IS ZE
rule r6: IF theta IS ZE AND theta_dot IS NE THEN F IS NS
rule r7: IF theta IS NE AND theta_dot IS PO THEN F IS ZE
rule r8: IF theta IS NE AND theta_dot IS ZE THEN F IS NM
rule r9: IF theta IS NE AND theta_dot IS NL THEN F IS NL

# cart position
rule r10 goal 2: IF theta IS VS AND theta_dot IS VS AND x IS PO AND x_dot IS PO THEN F IS PM
rule r11 goal 2: IF theta IS VS AND theta_dot IS VS AND x IS PO AND x_dot IS ZE THEN F IS PS
rule r12 goal 2: IF theta IS VS AND theta_dot IS VS AND x IS NE AND x_dot IS NE THEN F IS NM
rule r13 goal 2: IF theta IS VS AND theta_dot IS VS AND x IS NE AND x_dot IS ZE THEN F IS NS
)";

}  // namespace

std::string_view builtin_pole_kb_source() { return kPoleSource; }

const KnowledgeBase& builtin_pole_kb() {
    static const KnowledgeBase kb = [] {
        auto parsed = parse_knowledge_base(kPoleSource);
        if (!parsed.kb) throw std::logic_error("built-in knowledge base failed to parse");
        return std::move(*parsed.kb);
    }();
    return kb;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) noexcept {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::string format_diagnostic(const Diagnostic& d, std::string_view source_name) {
    std::ostringstream os;
    if (!source_name.empty()) os << source_name << ':';
    if (d.location.line > 0) os << d.location.line << ':' << d.location.column << ':';
    if (!source_name.empty() || d.location.line > 0) os << ' ';
    os << (d.severity == Severity::error ? "error" : "warning") << ": " << d.message;
    if (!d.code.empty()) os << " [" << d.code << ']';
    return os.str();
}

}  // namespace hfc
