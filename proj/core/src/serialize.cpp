#include "pathrep/serialize.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "pathrep/errors.hpp"

namespace pathrep {

namespace {

using json = nlohmann::ordered_json;

json pmr_body(const Pmr& r) {
    json doc;
    json nodes = json::array();
    for (RepNode v = 0; v < r.node_count(); ++v)
        nodes.push_back({{"id", std::to_string(v)},
                         {"gamma", r.graph().node_name(r.gamma_node(v))}});
    json edges = json::array();
    for (RepEdge e = 0; e < r.edge_count(); ++e) {
        const auto& rec = r.edge(e);
        edges.push_back({{"id", std::to_string(e)},
                         {"src", std::to_string(rec.src)},
                         {"tgt", std::to_string(rec.tgt)},
                         {"gamma", r.graph().edge_name(rec.gamma)}});
    }
    json sources = json::array();
    for (RepNode v : r.sources()) sources.push_back(std::to_string(v));
    json targets = json::array();
    for (RepNode v : r.targets()) targets.push_back(std::to_string(v));
    doc["nodes"] = std::move(nodes);
    doc["edges"] = std::move(edges);
    doc["sources"] = std::move(sources);
    doc["targets"] = std::move(targets);
    return doc;
}

} // namespace

std::string pmr_to_json(const Pmr& r) {
    json doc;
    doc["graph_ref"] = canonical_graph_hash(r.graph());
    json body = pmr_body(r);
    for (auto& [key, value] : body.items()) doc[key] = std::move(value);
    return doc.dump(2) + "\n";
}

std::string grouped_pmr_to_json(const GroupedPmr& grouped, const GraphDb& g) {
    json doc;
    doc["graph_ref"] = canonical_graph_hash(g);
    switch (grouped.kind) {
    case GroupKind::Source: doc["grouping"] = "source"; break;
    case GroupKind::Target: doc["grouping"] = "target"; break;
    case GroupKind::Pairwise: doc["grouping"] = "pairwise"; break;
    }
    json groups = json::array();
    for (std::size_t i = 0; i < grouped.groups.size(); ++i) {
        json item;
        const auto& [src, tgt] = grouped.endpoints[i];
        if (src) item["src"] = g.node_name(*src);
        if (tgt) item["tgt"] = g.node_name(*tgt);
        json body = pmr_body(grouped.groups[i]);
        for (auto& [key, value] : body.items()) item[key] = std::move(value);
        groups.push_back(std::move(item));
    }
    doc["groups"] = std::move(groups);
    return doc.dump(2) + "\n";
}

Pmr pmr_from_json(const std::string& text, const GraphDb& g) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("invalid PMR document: ") + e.what());
    }
    try {
        if (doc.at("graph_ref").get<std::string>() != canonical_graph_hash(g))
            throw GraphMismatchError("PMR graph_ref does not match the given graph");

        Pmr out(g);
        std::unordered_map<std::string, RepNode> node_ids;
        for (const auto& n : doc.at("nodes")) {
            auto id = n.at("id").get<std::string>();
            auto gamma = n.at("gamma").get<std::string>();
            auto gid = g.find_node(gamma);
            if (!gid) throw SemanticError("PMR gamma refers to unknown node '" + gamma + "'");
            if (!node_ids.emplace(id, out.add_node(*gid)).second)
                throw FormatError("duplicate PMR node id '" + id + "'");
        }
        auto rep = [&](const std::string& id) {
            auto it = node_ids.find(id);
            if (it == node_ids.end())
                throw FormatError("PMR edge refers to unknown node id '" + id + "'");
            return it->second;
        };
        for (const auto& e : doc.at("edges")) {
            auto gamma = e.at("gamma").get<std::string>();
            auto gid = g.find_edge(gamma);
            if (!gid) throw SemanticError("PMR gamma refers to unknown edge '" + gamma + "'");
            RepNode src = rep(e.at("src").get<std::string>());
            RepNode tgt = rep(e.at("tgt").get<std::string>());
            const auto& ge = g.edge(*gid);
            if (ge.src != out.gamma_node(src) || ge.tgt != out.gamma_node(tgt))
                throw SemanticError("homomorphism violation in PMR edge '" +
                                    e.at("id").get<std::string>() + "'");
            out.add_edge(src, tgt, *gid);
        }
        for (const auto& s : doc.at("sources")) out.mark_source(rep(s.get<std::string>()));
        for (const auto& t : doc.at("targets")) out.mark_target(rep(t.get<std::string>()));
        out.validate();
        out.set_trim(check_trim(out));
        return out;
    } catch (const json::exception& e) {
        throw FormatError(std::string("invalid PMR document: ") + e.what());
    }
}

Pmr pmr_from_json_file(const std::string& path, const GraphDb& g) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open PMR file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return pmr_from_json(buf.str(), g);
}

} // namespace pathrep
