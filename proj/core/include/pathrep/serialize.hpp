#pragma once

#include <string>

#include "pathrep/graph.hpp"
#include "pathrep/pmr.hpp"

namespace pathrep {

/// PMR document: {"graph_ref", "nodes":[{id,gamma}], "edges":[{id,src,tgt,
/// gamma}], "sources":[ids], "targets":[ids]}. graph_ref is the canonical
/// graph hash; ids are strings; arrays are emitted in id order, so output is
/// byte-reproducible.
std::string pmr_to_json(const Pmr& r);

/// Parses and validates a PMR document against `g`: the graph_ref must match
/// g's canonical hash and the homomorphism must hold.
Pmr pmr_from_json(const std::string& text, const GraphDb& g);
Pmr pmr_from_json_file(const std::string& path, const GraphDb& g);

std::string grouped_pmr_to_json(const GroupedPmr& grouped, const GraphDb& g);

} // namespace pathrep
