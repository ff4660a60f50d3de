#include "pathrep/regex.hpp"

#include <cctype>

#include "pathrep/errors.hpp"

namespace pathrep {

namespace {

RegexPtr make(RegexKind kind, std::string label, RegexPtr l, RegexPtr r) {
    auto n = std::make_shared<RegexNode>();
    n->kind = kind;
    n->label = std::move(label);
    n->left = std::move(l);
    n->right = std::move(r);
    return n;
}

} // namespace

RegexPtr rx_epsilon() { return make(RegexKind::Epsilon, {}, nullptr, nullptr); }
RegexPtr rx_label(std::string_view name) {
    return make(RegexKind::Label, std::string(name), nullptr, nullptr);
}
RegexPtr rx_concat(RegexPtr a, RegexPtr b) {
    return make(RegexKind::Concat, {}, std::move(a), std::move(b));
}
RegexPtr rx_union(RegexPtr a, RegexPtr b) {
    return make(RegexKind::Union, {}, std::move(a), std::move(b));
}
RegexPtr rx_star(RegexPtr a) { return make(RegexKind::Star, {}, std::move(a), nullptr); }
RegexPtr rx_plus(RegexPtr a) { return make(RegexKind::Plus, {}, std::move(a), nullptr); }
RegexPtr rx_optional(RegexPtr a) { return make(RegexKind::Optional, {}, std::move(a), nullptr); }

namespace {

// union <- concat ('|' concat)*
// concat <- postfix (('.')? postfix)*
// postfix <- atom ('*' | '+' | '?')*
// atom <- 'eps' | label | quoted | '(' union ')'
class RegexParser {
public:
    explicit RegexParser(std::string_view text) : text_(text) {}

    RegexPtr parse() {
        RegexPtr e = parse_union();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError("unexpected character", pos_);
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    static bool is_label_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    }

    bool at_atom_start() {
        char c = peek();
        return c == '(' || c == '\'' || is_label_char(c);
    }

    RegexPtr parse_union() {
        RegexPtr e = parse_concat();
        while (peek() == '|') {
            ++pos_;
            e = rx_union(std::move(e), parse_concat());
        }
        return e;
    }

    RegexPtr parse_concat() {
        RegexPtr e = parse_postfix();
        for (;;) {
            if (peek() == '.') {
                ++pos_;
                e = rx_concat(std::move(e), parse_postfix());
            } else if (at_atom_start()) {
                e = rx_concat(std::move(e), parse_postfix());
            } else {
                return e;
            }
        }
    }

    RegexPtr parse_postfix() {
        RegexPtr e = parse_atom();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                e = rx_star(std::move(e));
            } else if (c == '+') {
                ++pos_;
                e = rx_plus(std::move(e));
            } else if (c == '?') {
                ++pos_;
                e = rx_optional(std::move(e));
            } else {
                return e;
            }
        }
    }

    RegexPtr parse_atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            RegexPtr e = parse_union();
            if (peek() != ')') throw SyntaxError("expected ')'", pos_);
            ++pos_;
            return e;
        }
        if (c == '\'') {
            std::size_t start = ++pos_;
            while (pos_ < text_.size() && text_[pos_] != '\'') ++pos_;
            if (pos_ == text_.size()) throw SyntaxError("unterminated quoted label", start - 1);
            std::string label(text_.substr(start, pos_ - start));
            ++pos_;
            if (label.empty()) throw SyntaxError("empty label", start - 1);
            return rx_label(label);
        }
        if (is_label_char(c)) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && is_label_char(text_[pos_])) ++pos_;
            std::string word(text_.substr(start, pos_ - start));
            if (word == "eps") return rx_epsilon();
            return rx_label(word);
        }
        throw SyntaxError("expected label, 'eps', or '('", pos_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

RegexPtr parse_regex(std::string_view text) { return RegexParser(text).parse(); }

std::string regex_to_string(const RegexPtr& e) {
    switch (e->kind) {
    case RegexKind::Epsilon: return "eps";
    case RegexKind::Label: return "'" + e->label + "'";
    case RegexKind::Concat:
        return "(" + regex_to_string(e->left) + "." + regex_to_string(e->right) + ")";
    case RegexKind::Union:
        return "(" + regex_to_string(e->left) + "|" + regex_to_string(e->right) + ")";
    case RegexKind::Star: return regex_to_string(e->left) + "*";
    case RegexKind::Plus: return regex_to_string(e->left) + "+";
    case RegexKind::Optional: return regex_to_string(e->left) + "?";
    }
    return {};
}

} // namespace pathrep
