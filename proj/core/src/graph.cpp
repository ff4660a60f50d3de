#include "pathrep/graph.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "pathrep/automaton.hpp"
#include "pathrep/sha256.hpp"

namespace pathrep {

NodeId GraphDb::add_node(std::string_view name) {
    auto it = node_ids_.find(std::string(name));
    if (it != node_ids_.end()) return it->second;
    NodeId id = static_cast<NodeId>(node_names_.size());
    node_names_.emplace_back(name);
    node_ids_.emplace(node_names_.back(), id);
    out_.emplace_back();
    return id;
}

LabelId GraphDb::intern_label(std::string_view name) {
    auto it = label_ids_.find(std::string(name));
    if (it != label_ids_.end()) return it->second;
    LabelId id = static_cast<LabelId>(label_names_.size());
    label_names_.emplace_back(name);
    label_ids_.emplace(label_names_.back(), id);
    return id;
}

EdgeId GraphDb::add_edge(std::string_view name, std::string_view src, std::string_view tgt,
                         std::string_view label) {
    if (edge_ids_.count(std::string(name)))
        throw FormatError("duplicate edge id '" + std::string(name) + "'");
    NodeId s = add_node(src);
    NodeId t = add_node(tgt);
    EdgeId id = static_cast<EdgeId>(edges_.size());
    edge_names_.emplace_back(name);
    edge_ids_.emplace(edge_names_.back(), id);
    edges_.push_back(Edge{s, t, intern_label(label)});
    out_[s].push_back(id);
    return id;
}

std::optional<NodeId> GraphDb::find_node(std::string_view name) const {
    auto it = node_ids_.find(std::string(name));
    if (it == node_ids_.end()) return std::nullopt;
    return it->second;
}

std::optional<EdgeId> GraphDb::find_edge(std::string_view name) const {
    auto it = edge_ids_.find(std::string(name));
    if (it == edge_ids_.end()) return std::nullopt;
    return it->second;
}

std::optional<LabelId> GraphDb::find_label(std::string_view name) const {
    auto it = label_ids_.find(std::string(name));
    if (it == label_ids_.end()) return std::nullopt;
    return it->second;
}

bool path_is_valid(const Path& p) {
    if (!p.graph) return false;
    if (p.nodes.size() != p.edges.size() + 1) return false;
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        const auto& e = p.graph->edge(p.edges[i]);
        if (e.src != p.nodes[i] || e.tgt != p.nodes[i + 1]) return false;
    }
    return true;
}

std::vector<std::string> label_word(const Path& p) {
    assert(path_is_valid(p));
    std::vector<std::string> word;
    word.reserve(p.edges.size());
    for (EdgeId e : p.edges) word.push_back(p.graph->label_name(p.graph->label(e)));
    return word;
}

Path length_zero_path(const GraphDb& g, NodeId v) {
    Path p;
    p.graph = &g;
    p.nodes.push_back(v);
    return p;
}

std::string path_to_string(const Path& p) {
    std::string out = p.graph->node_name(p.nodes[0]);
    for (std::size_t i = 0; i < p.edges.size(); ++i) {
        out += ' ';
        out += p.graph->edge_name(p.edges[i]);
        out += ' ';
        out += p.graph->node_name(p.nodes[i + 1]);
    }
    return out;
}

void PathMultiset::insert(const Path& p, std::uint64_t multiplicity) {
    assert(path_is_valid(p));
    assert(entries_.empty() || entries_.begin()->first.graph == p.graph);
    if (multiplicity == 0) return;
    entries_[p] += multiplicity;
}

std::uint64_t PathMultiset::count(const Path& p) const {
    auto it = entries_.find(p);
    return it == entries_.end() ? 0 : it->second;
}

std::uint64_t PathMultiset::total() const {
    std::uint64_t n = 0;
    for (const auto& [p, m] : entries_) n += m;
    return n;
}

NodePredicate NodePredicate::of_names(const GraphDb& g, const std::vector<std::string>& names) {
    std::unordered_set<NodeId> ids;
    for (const auto& name : names) {
        auto id = g.find_node(name);
        if (!id) throw SemanticError("unknown node '" + name + "'");
        ids.insert(*id);
    }
    return of(std::move(ids));
}

GraphDb load_graph(std::istream& in) {
    GraphDb g;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream tok(line);
        std::string kind;
        if (!(tok >> kind)) continue;
        if (kind == "node") {
            std::string id, extra;
            if (!(tok >> id) || (tok >> extra))
                throw FormatError("expected 'node <id>'", lineno);
            g.add_node(id);
        } else if (kind == "edge") {
            std::string id, src, tgt, label, extra;
            if (!(tok >> id >> src >> tgt >> label) || (tok >> extra))
                throw FormatError("expected 'edge <id> <src> <tgt> <label>'", lineno);
            try {
                g.add_edge(id, src, tgt, label);
            } catch (const FormatError& e) {
                throw FormatError(e.what(), lineno);
            }
        } else {
            throw FormatError("unknown directive '" + kind + "'", lineno);
        }
    }
    return g;
}

GraphDb load_graph_from_string(std::string_view text) {
    std::istringstream in{std::string(text)};
    return load_graph(in);
}

GraphDb load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open graph file '" + path + "'");
    return load_graph(in);
}

void save_graph(const GraphDb& g, std::ostream& out) {
    for (NodeId v = 0; v < g.node_count(); ++v) out << "node " << g.node_name(v) << '\n';
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& rec = g.edge(e);
        out << "edge " << g.edge_name(e) << ' ' << g.node_name(rec.src) << ' '
            << g.node_name(rec.tgt) << ' ' << g.label_name(rec.label) << '\n';
    }
}

std::string save_graph_to_string(const GraphDb& g) {
    std::ostringstream out;
    save_graph(g, out);
    return out.str();
}

std::string canonical_graph_hash(const GraphDb& g) {
    std::vector<std::string> lines;
    lines.reserve(g.node_count() + g.edge_count());
    for (NodeId v = 0; v < g.node_count(); ++v) lines.push_back("node " + g.node_name(v));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto& rec = g.edge(e);
        lines.push_back("edge " + g.edge_name(e) + ' ' + g.node_name(rec.src) + ' ' +
                        g.node_name(rec.tgt) + ' ' + g.label_name(rec.label));
    }
    std::sort(lines.begin(), lines.end());
    std::string doc;
    for (const auto& l : lines) {
        doc += l;
        doc += '\n';
    }
    return sha256_hex(doc);
}

namespace {

void extend_paths(const GraphDb& g, std::size_t max_len, const NodePredicate& to,
                  const Automaton& lang, Path& current, std::vector<std::string>& word,
                  PathMultiset& out) {
    if (to.contains(current.tgt()) && lang.accepts(word)) out.insert(current);
    if (current.length() == max_len) return;
    for (EdgeId e : g.out_edges(current.tgt())) {
        current.edges.push_back(e);
        current.nodes.push_back(g.edge(e).tgt);
        word.push_back(g.label_name(g.label(e)));
        extend_paths(g, max_len, to, lang, current, word, out);
        word.pop_back();
        current.nodes.pop_back();
        current.edges.pop_back();
    }
}

} // namespace

PathMultiset brute_force_paths(const GraphDb& g, std::size_t max_len, const NodePredicate& from,
                               const NodePredicate& to, const Automaton& lang) {
    PathMultiset out;
    std::vector<std::string> word;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (!from.contains(v)) continue;
        Path p = length_zero_path(g, v);
        extend_paths(g, max_len, to, lang, p, word, out);
    }
    return out;
}

} // namespace pathrep
