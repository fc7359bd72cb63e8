#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rotorkit/grm.hpp"
#include "rotorkit/multigraph.hpp"
#include "rotorkit/reachability.hpp"
#include "rotorkit/rotor.hpp"

namespace rotorkit {

/// Parsed graph file. Line-oriented grammar, `#` comments:
///
///   vertex <id>
///   arc <id> <tail> <head>
///   face <id> <owner> <tailArc> <headArc>
///   rotor <vertex> <arc>...
///
/// A `rotor` line lists the vertex's out-arcs in cyclic order (each maps to
/// the next, the last to the first) and expands into one face per arc,
/// named f_<arc>, in arc declaration order. Referenced identifiers must be
/// declared on earlier lines; all errors carry line numbers.
struct GraphFile {
    Multigraph graph;
    std::vector<std::string> face_names;
    std::vector<int> face_tail;
    std::vector<int> face_head;
    std::optional<std::vector<int>> theta; ///< present iff rotor lines appeared

    bool has_faces() const { return !face_names.empty(); }

    GrmMultigraph to_grm() const;

    /// Requires rotor lines or faces forming one cycle per vertex.
    RotorMultigraph to_rotor() const;
};

GraphFile parse_graph(std::istream& in);
GraphFile parse_graph(const std::string& text);

/// Canonical serialization: vertex lines, arc lines, explicit face lines.
/// parse(serialize(parse(text))) reproduces the same structure.
void serialize_graph(std::ostream& out, const GraphFile& file);
std::string serialize_graph(const GraphFile& file);

bool same_structure(const GraphFile& a, const GraphFile& b);

/// DIMACS-like CNF: `p cnf <vars> <clauses>` header, `c` comments, clause
/// lines of three nonzero literals terminated by 0. The twice-unnegated /
/// twice-negated occurrence invariant is validated on load.
Sat22Formula parse_sat22(std::istream& in);
Sat22Formula parse_sat22(const std::string& text);

} // namespace rotorkit
