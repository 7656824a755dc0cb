#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "polar/eigenfunction.hpp"
#include "polar/graph.hpp"

namespace polar::io {

nlohmann::json provenance_to_json(const Provenance& p);
Provenance provenance_from_json(const nlohmann::json& j);

/// {"graph": provenance, "theta": int, "entries": [[vertex, num, den], ...]}.
nlohmann::json eigenfunction_to_json(const Eigenfunction& f);
Eigenfunction eigenfunction_from_json(const nlohmann::json& j);

/// Header "vertex,value", one row per nonzero entry, values as p/q or integers.
std::string eigenfunction_to_csv(const Eigenfunction& f);
Eigenfunction eigenfunction_from_csv(std::istream& in, std::int64_t theta, Provenance prov);

/// One "u v" line per edge, u < v, 0-based, sorted.
std::string to_edge_list(const PolarGraph& g);
/// Standard graph6 encoding, with trailing newline.
std::string to_graph6(const PolarGraph& g);
PolarGraph from_graph6(const std::string& s);
/// Provenance header, vertex labels and adjacency lists.
nlohmann::json graph_to_json(const PolarGraph& g);

}  // namespace polar::io
