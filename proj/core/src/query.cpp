#include "pathrep/query.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

#include "pathrep/errors.hpp"

namespace pathrep {

namespace {

class QueryParser {
public:
    explicit QueryParser(std::string_view text) : text_(text) {}

    QueryPtr parse() {
        QueryPtr q = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError("unexpected trailing input", pos_);
        return q;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void expect(char c) {
        if (peek() != c) throw SyntaxError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    static bool is_ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
        if (pos_ == start) throw SyntaxError("expected identifier", pos_);
        return std::string(text_.substr(start, pos_ - start));
    }

    // Consumes text up to the matching close paren (or a top-level comma when
    // `stop_at_comma`), honoring nested parens and quoted labels.
    std::string balanced(bool stop_at_comma) {
        skip_ws();
        std::size_t start = pos_;
        int depth = 0;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '\'') {
                ++pos_;
                while (pos_ < text_.size() && text_[pos_] != '\'') ++pos_;
                if (pos_ == text_.size()) throw SyntaxError("unterminated quoted label", start);
                ++pos_;
                continue;
            }
            if (c == '(') ++depth;
            if (c == ')') {
                if (depth == 0) break;
                --depth;
            }
            if (c == ',' && depth == 0 && stop_at_comma) break;
            ++pos_;
        }
        if (pos_ == text_.size()) throw SyntaxError("unterminated expression", start);
        return std::string(text_.substr(start, pos_ - start));
    }

    LangSpec parse_lang_text(const std::string& text, std::size_t at) {
        LangSpec spec;
        std::size_t i = 0;
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i < text.size() && text[i] == '@') {
            std::string path = text.substr(i + 1);
            while (!path.empty() && std::isspace(static_cast<unsigned char>(path.back())))
                path.pop_back();
            if (path.empty()) throw SyntaxError("expected automaton file after '@'", at);
            spec.automaton_file = path;
            return spec;
        }
        spec.regex = parse_regex(text);
        return spec;
    }

    QueryPtr parse_expr() {
        skip_ws();
        std::size_t at = pos_;
        std::string head = ident();
        auto q = std::make_shared<Query>();
        if (head == "lang") {
            expect('(');
            q->kind = Query::Kind::Lang;
            q->lang = parse_lang_text(balanced(false), at);
            expect(')');
        } else if (head == "select") {
            expect('(');
            q->kind = Query::Kind::Select;
            parse_endpoint_spec("src", q->src_all, q->src_nodes);
            expect(',');
            parse_endpoint_spec("tgt", q->tgt_all, q->tgt_nodes);
            expect(',');
            q->children.push_back(parse_expr());
            expect(')');
        } else if (head == "shortest" || head == "radix" || head == "simple" || head == "trail") {
            expect('(');
            q->kind = Query::Kind::Mode;
            q->mode = head == "shortest"  ? SelectorMode::Shortest
                      : head == "radix"   ? SelectorMode::RadixShortest
                      : head == "simple"  ? SelectorMode::Simple
                                          : SelectorMode::Trail;
            q->children.push_back(parse_expr());
            expect(')');
        } else if (head == "union") {
            expect('(');
            q->kind = Query::Kind::Union;
            q->children.push_back(parse_expr());
            while (peek() == ',') {
                ++pos_;
                q->children.push_back(parse_expr());
            }
            if (q->children.size() < 2) throw SyntaxError("union needs at least two operands", at);
            expect(')');
        } else if (head == "group") {
            expect('(');
            q->kind = Query::Kind::Group;
            std::string kind = ident();
            if (kind == "src")
                q->group_kind = GroupKind::Source;
            else if (kind == "tgt")
                q->group_kind = GroupKind::Target;
            else if (kind == "pair")
                q->group_kind = GroupKind::Pairwise;
            else
                throw SyntaxError("expected src, tgt, or pair", at);
            expect(',');
            q->children.push_back(parse_expr());
            expect(')');
        } else if (head == "chain") {
            expect('(');
            q->kind = Query::Kind::Chain;
            q->atoms.push_back(parse_atom());
            while (peek() == ',') {
                ++pos_;
                q->atoms.push_back(parse_atom());
            }
            expect(')');
        } else if (head == "proj1") {
            expect('(');
            q->kind = Query::Kind::Proj1;
            q->children.push_back(parse_expr());
            expect(')');
            if (q->children[0]->kind != Query::Kind::Chain)
                throw SyntaxError("proj1 expects a chain query", at);
        } else {
            throw SyntaxError("unknown query operator '" + head + "'", at);
        }
        return q;
    }

    void parse_endpoint_spec(const std::string& key, bool& all, std::vector<std::string>& nodes) {
        std::size_t at = pos_;
        std::string k = ident();
        if (k != key) throw SyntaxError("expected '" + key + "='", at);
        expect('=');
        if (peek() == '*') {
            ++pos_;
            all = true;
            return;
        }
        expect('{');
        all = false;
        if (peek() != '}') {
            nodes.push_back(ident());
            while (peek() == ',') {
                ++pos_;
                nodes.push_back(ident());
            }
        }
        expect('}');
    }

    ChainAtom parse_atom() {
        expect('(');
        ChainAtom atom;
        atom.from_var = ident();
        expect(',');
        std::size_t at = pos_;
        std::string middle = balanced(true);
        expect(',');
        atom.to_var = ident();
        expect(')');

        // The middle is a regex, an @file, or a mode-wrapped one of those.
        std::size_t i = 0;
        auto ws = [&] {
            while (i < middle.size() && std::isspace(static_cast<unsigned char>(middle[i]))) ++i;
        };
        ws();
        std::size_t word_start = i;
        while (i < middle.size() && is_ident_char(middle[i])) ++i;
        std::string word = middle.substr(word_start, i - word_start);
        ws();
        if ((word == "shortest" || word == "radix" || word == "simple" || word == "trail") &&
            i < middle.size() && middle[i] == '(') {
            if (middle.back() != ')') throw SyntaxError("expected ')'", at + middle.size());
            atom.mode = word == "shortest"  ? SelectorMode::Shortest
                        : word == "radix"   ? SelectorMode::RadixShortest
                        : word == "simple"  ? SelectorMode::Simple
                                            : SelectorMode::Trail;
            atom.lang = parse_lang_text(middle.substr(i + 1, middle.size() - i - 2), at);
        } else {
            atom.lang = parse_lang_text(middle, at);
        }
        return atom;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

QueryPtr parse_query(std::string_view text) { return QueryParser(text).parse(); }

Automaton compile_lang(const LangSpec& lang, const EvalOptions& opt) {
    if (!lang.automaton_file.empty()) return load_automaton_file(lang.automaton_file);
    return regex_to_ufa(lang.regex, opt.det_cap);
}

namespace {

NodePredicate predicate_for(const GraphDb& g, bool all, const std::vector<std::string>& names) {
    if (all) return NodePredicate::all();
    std::unordered_set<NodeId> ids;
    for (const auto& name : names)
        if (auto id = g.find_node(name)) ids.insert(*id);
    return NodePredicate::of(std::move(ids));
}

Pmr apply_mode(const Pmr& r, SelectorMode mode, const EvalOptions& opt) {
    switch (mode) {
    case SelectorMode::Shortest: return shortest_filter(r);
    case SelectorMode::RadixShortest: return radix_shortest_filter(r);
    case SelectorMode::Simple: return simple_trail_filter(r, PathMode::Simple, opt.path_cap);
    case SelectorMode::Trail: return simple_trail_filter(r, PathMode::Trail, opt.path_cap);
    }
    throw SemanticError("unknown selector mode");
}

} // namespace

Pmr eval(const GraphDb& g, const QueryPtr& q, const EvalOptions& opt) {
    switch (q->kind) {
    case Query::Kind::Lang:
        return trim(product(g, compile_lang(q->lang, opt), opt.set_semantics));
    case Query::Kind::Select: {
        const QueryPtr& child = q->children[0];
        NodePredicate from = predicate_for(g, q->src_all, q->src_nodes);
        NodePredicate to = predicate_for(g, q->tgt_all, q->tgt_nodes);
        if (child->kind == Query::Kind::Lang) {
            // One restricted trim over the raw product instead of trim+select.
            return select(product(g, compile_lang(child->lang, opt), opt.set_semantics), from, to);
        }
        return select(eval(g, child, opt), from, to);
    }
    case Query::Kind::Mode:
        return apply_mode(eval(g, q->children[0], opt), q->mode, opt);
    case Query::Kind::Union: {
        Pmr acc = eval(g, q->children[0], opt);
        for (std::size_t i = 1; i < q->children.size(); ++i)
            acc = disjoint_union(acc, eval(g, q->children[i], opt));
        return acc;
    }
    case Query::Kind::Group:
        throw UnsupportedError("group(...) is a top-level operator; evaluate it with eval_grouped");
    case Query::Kind::Chain:
    case Query::Kind::Proj1:
        throw UnsupportedError("chain queries have their own evaluation entry points");
    }
    throw SemanticError("unknown query node");
}

GroupedPmr eval_grouped(const GraphDb& g, const QueryPtr& q, const EvalOptions& opt) {
    if (q->kind != Query::Kind::Group)
        throw UnsupportedError("eval_grouped expects a group(...) query");
    return group(eval(g, q->children[0], opt), q->group_kind);
}

TabEnumerator::TabEnumerator(const Pmr& r, std::optional<std::size_t> max_length, bool stratified) {
    if (stratified)
        stratified_.emplace(r, max_length);
    else
        plain_.emplace(r, max_length);
}

bool TabEnumerator::next(TabRow& out) {
    bool ok = plain_ ? plain_->next(buf_) : stratified_->next(buf_);
    if (!ok) return false;
    out.src = buf_.src();
    out.tgt = buf_.tgt();
    out.path = buf_;
    return true;
}

} // namespace pathrep
