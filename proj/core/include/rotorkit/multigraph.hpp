#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rotorkit/config.hpp"
#include "rotorkit/ints.hpp"
#include "rotorkit/universe.hpp"

namespace rotorkit {

/// Finite directed multigraph with named vertices and arcs. Loops and
/// parallel arcs are allowed. Immutable after construction; iteration order
/// over vertices and arcs is their declaration order, which fixes every
/// deterministic tie-break downstream.
class Multigraph {
public:
    Multigraph(UniverseHandle vertices, UniverseHandle arcs,
               std::vector<int> tail, std::vector<int> head);

    int vertex_count() const { return vertices_->size(); }
    int arc_count() const { return arcs_->size(); }

    const UniverseHandle& vertex_universe() const { return vertices_; }
    const UniverseHandle& arc_universe() const { return arcs_; }

    const std::string& vertex_name(int v) const { return vertices_->name(v); }
    const std::string& arc_name(int a) const { return arcs_->name(a); }
    int vertex_index(const std::string& id) const { return vertices_->index_of(id); }
    int arc_index(const std::string& id) const { return arcs_->index_of(id); }

    int tail(int arc) const { return tail_.at(arc); }
    int head(int arc) const { return head_.at(arc); }

    /// Out-arcs / in-arcs of a vertex in declaration order. A loop appears
    /// in both lists.
    const std::vector<int>& out_arcs(int v) const { return out_.at(v); }
    const std::vector<int>& in_arcs(int v) const { return in_.at(v); }

    int out_degree(int v) const { return static_cast<int>(out_.at(v).size()); }

    bool is_sink(int v) const { return out_.at(v).empty(); }

    /// Sinks in declaration order (derived, never stored independently).
    std::vector<int> sinks() const;

    bool empty() const { return vertex_count() == 0; }

private:
    UniverseHandle vertices_;
    UniverseHandle arcs_;
    std::vector<int> tail_, head_;
    std::vector<std::vector<int>> out_, in_;
};

/// Incremental construction front end; graphs are built once and then frozen.
class MultigraphBuilder {
public:
    MultigraphBuilder& vertex(const std::string& id);
    MultigraphBuilder& arc(const std::string& id, const std::string& tail,
                           const std::string& head);
    Multigraph build() const;

private:
    std::vector<std::string> vertex_names_;
    std::vector<std::string> arc_names_;
    std::vector<std::pair<std::string, std::string>> endpoints_;
};

/// Disjoint vertex blocks covering V, ordered by smallest member index.
class ComponentPartition {
public:
    enum class Kind { weak, strong };

    ComponentPartition(Kind kind, UniverseHandle ground,
                       std::vector<std::vector<int>> blocks);

    Kind kind() const { return kind_; }
    const UniverseHandle& ground() const { return ground_; }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    int block_of(int element) const { return block_of_.at(element); }

    /// Universe over the blocks themselves; each block is named after its
    /// smallest member. degree() returns configs over this universe.
    const UniverseHandle& block_universe() const { return block_universe_; }

private:
    Kind kind_;
    UniverseHandle ground_;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> block_of_;
    UniverseHandle block_universe_;
};

/// Two vertices share a block iff an undirected path joins them.
ComponentPartition weak_components(const Multigraph& g);

struct StrongComponents {
    ComponentPartition partition;
    /// Indices (into partition.blocks()) of the leaf components: strongly
    /// connected components with no arc leaving them.
    std::vector<int> leaf_blocks;
};

StrongComponents strong_and_leaf_components(const Multigraph& g);

/// True iff every vertex has a directed path to some sink.
bool is_stopping(const Multigraph& g);

bool is_strongly_connected(const Multigraph& g);

/// Directed path from x to y (possibly empty when x == y) using no arc whose
/// tail lies in forbidden_tails.
bool directed_path_exists(const Multigraph& g, int x, int y,
                          const std::set<int>& forbidden_tails = {});

/// Exact number of arborescences rooted in `roots`, by exhaustive choice of
/// one out-arc per non-root vertex. Brute-force oracle for the matrix-tree
/// determinant; refuses graphs larger than `max_vertices`.
Int enumerate_arborescences(const Multigraph& g, const std::set<int>& roots,
                            int max_vertices = 10);

} // namespace rotorkit
