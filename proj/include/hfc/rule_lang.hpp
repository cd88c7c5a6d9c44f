#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hfc/knowledge_base.hpp"

namespace hfc {

enum class Severity { error, warning };

/// 1-based line and column (bytes). Zero means "not tied to source text".
struct Location {
    int line = 0;
    int column = 0;
    bool operator==(const Location&) const = default;
};

struct Diagnostic {
    Severity severity = Severity::error;
    Location location;
    std::string message;
    std::string code;
};

struct ParseResult {
    std::optional<KnowledgeBase> kb;
    std::vector<Diagnostic> diagnostics;

    bool ok() const noexcept { return kb.has_value(); }
};

/// Rule file grammar (keywords case-insensitive, '#' starts a comment):
///
///   kb         := var_decl+ rule+
///   var_decl   := "var" NAME "unit" "=" UNIT
///                 ["range" "=" "(" num "," num ")"] ["levels" "=" INT] label_decl+
///   label_decl := "label" NAME "very"* SHAPE "(" num ("," num)* ")"
///   rule       := "rule" NAME ["goal" INT] ":" "IF" cond ("AND" cond)* "THEN" NAME "IS" NAME
///   cond       := NAME "IS" NAME
///
/// SHAPE is triangle, shoulder_up or shoulder_down. The variable named by the
/// rule conclusions is the output; its range and levels define the
/// quantized output universe (defaults: label span, 201 levels). Never
/// throws; every failure is reported as a located diagnostic.
ParseResult parse_knowledge_base(std::string_view text);

/// Lints a well-formed knowledge base: input-label aliases, coverage holes,
/// gaps in the goal-1 rule grid and missing mirror rules.
std::vector<Diagnostic> validate_kb(const KnowledgeBase& kb);

/// Deterministic text form; parse_knowledge_base(serialize_kb(kb)) == kb.
std::string serialize_kb(const KnowledgeBase& kb);

/// Cart-pole knowledge base: nine pole-balancing rules at goal 1 and four
/// cart-positioning rules at goal 2.
const KnowledgeBase& builtin_pole_kb();
std::string_view builtin_pole_kb_source();

bool has_errors(const std::vector<Diagnostic>& diagnostics) noexcept;

/// "file:line:col: error: message [code]"
std::string format_diagnostic(const Diagnostic& d, std::string_view source_name = {});

/// Shortest text that reads back as the same double.
std::string format_number(double v);

}  // namespace hfc
