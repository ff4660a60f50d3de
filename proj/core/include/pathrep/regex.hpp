#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace pathrep {

enum class RegexKind { Epsilon, Label, Concat, Union, Star, Plus, Optional };

struct RegexNode;
using RegexPtr = std::shared_ptr<const RegexNode>;

struct RegexNode {
    RegexKind kind;
    std::string label; // Label only
    RegexPtr left;     // unary operand / left operand
    RegexPtr right;    // Concat/Union only
};

RegexPtr rx_epsilon();
RegexPtr rx_label(std::string_view name);
RegexPtr rx_concat(RegexPtr a, RegexPtr b);
RegexPtr rx_union(RegexPtr a, RegexPtr b);
RegexPtr rx_star(RegexPtr a);
RegexPtr rx_plus(RegexPtr a);
RegexPtr rx_optional(RegexPtr a);

/// Parses the regex DSL: labels are bare identifiers or single-quoted
/// strings; concatenation is `.` or juxtaposition; `|` is union; postfix
/// `*`, `+`, `?`; `eps` for the empty word; parentheses for grouping.
/// Throws SyntaxError with the offending offset.
RegexPtr parse_regex(std::string_view text);

std::string regex_to_string(const RegexPtr& e);

} // namespace pathrep
