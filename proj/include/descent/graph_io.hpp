#pragma once

#include <string>

#include "descent/quiver.hpp"

// Serialization of quiver graphs.  All three emitters are deterministic:
// vertices keep the graph's own order and arrows are emitted in the sorted
// order of the underlying map, so identical graphs always produce identical
// bytes.

namespace descent {

// Graphviz digraph.  Vertices are quoted labels; an arrow of multiplicity m
// appears as m separate edge statements.
std::string quiver_dot(const QuiverGraph& g, const std::string& name = "quiver");

// {"vertices": [labels], "arrows": [{"from": label, "to": label, "mult": m}]}
std::string quiver_json(const QuiverGraph& g);

// Inverse of quiver_json; accepts any field order.  Throws
// std::invalid_argument on malformed input (unknown labels, missing fields,
// non-positive multiplicities, duplicate arrows).
QuiverGraph quiver_from_json(const std::string& text);

// Human-readable listing: a summary line, the vertex labels, then one line
// per arrow with its multiplicity.
std::string quiver_text(const QuiverGraph& g);

}  // namespace descent
