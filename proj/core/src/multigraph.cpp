#include "rotorkit/multigraph.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "rotorkit/errors.hpp"

namespace rotorkit {

Multigraph::Multigraph(UniverseHandle vertices, UniverseHandle arcs,
                       std::vector<int> tail, std::vector<int> head)
    : vertices_(std::move(vertices)), arcs_(std::move(arcs)),
      tail_(std::move(tail)), head_(std::move(head)) {
    const int n = vertices_->size();
    const int m = arcs_->size();
    if (static_cast<int>(tail_.size()) != m || static_cast<int>(head_.size()) != m)
        throw precondition_error("head/tail must be total on arcs");
    out_.assign(n, {});
    in_.assign(n, {});
    for (int a = 0; a < m; ++a) {
        if (tail_[a] < 0 || tail_[a] >= n || head_[a] < 0 || head_[a] >= n)
            throw unknown_id_error("arc '" + arcs_->name(a) +
                                   "' references a vertex outside the graph");
        out_[tail_[a]].push_back(a);
        in_[head_[a]].push_back(a);
    }
}

std::vector<int> Multigraph::sinks() const {
    std::vector<int> s;
    for (int v = 0; v < vertex_count(); ++v)
        if (is_sink(v)) s.push_back(v);
    return s;
}

MultigraphBuilder& MultigraphBuilder::vertex(const std::string& id) {
    vertex_names_.push_back(id);
    return *this;
}

MultigraphBuilder& MultigraphBuilder::arc(const std::string& id,
                                          const std::string& tail,
                                          const std::string& head) {
    arc_names_.push_back(id);
    endpoints_.emplace_back(tail, head);
    return *this;
}

Multigraph MultigraphBuilder::build() const {
    auto vu = make_universe(UniverseKind::vertex, vertex_names_);
    auto au = make_universe(UniverseKind::arc, arc_names_);
    std::vector<int> tail, head;
    tail.reserve(endpoints_.size());
    head.reserve(endpoints_.size());
    for (const auto& [t, h] : endpoints_) {
        tail.push_back(vu->index_of(t));
        head.push_back(vu->index_of(h));
    }
    return Multigraph(std::move(vu), std::move(au), std::move(tail), std::move(head));
}

ComponentPartition::ComponentPartition(Kind kind, UniverseHandle ground,
                                       std::vector<std::vector<int>> blocks)
    : kind_(kind), ground_(std::move(ground)), blocks_(std::move(blocks)) {
    for (auto& b : blocks_) std::sort(b.begin(), b.end());
    std::sort(blocks_.begin(), blocks_.end());
    block_of_.assign(ground_->size(), -1);
    std::vector<std::string> names;
    names.reserve(blocks_.size());
    for (int b = 0; b < static_cast<int>(blocks_.size()); ++b) {
        if (blocks_[b].empty())
            throw precondition_error("empty block in partition");
        for (int e : blocks_[b]) {
            if (block_of_.at(e) != -1)
                throw precondition_error("blocks are not disjoint");
            block_of_[e] = b;
        }
        names.push_back(ground_->name(blocks_[b].front()));
    }
    for (int e = 0; e < ground_->size(); ++e)
        if (block_of_[e] == -1)
            throw precondition_error("blocks do not cover the ground set");
    block_universe_ = make_universe(UniverseKind::block, std::move(names));
}

ComponentPartition weak_components(const Multigraph& g) {
    const int n = g.vertex_count();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> blocks;
    for (int start = 0; start < n; ++start) {
        if (comp[start] != -1) continue;
        int id = static_cast<int>(blocks.size());
        blocks.emplace_back();
        std::deque<int> queue{start};
        comp[start] = id;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            blocks[id].push_back(v);
            for (int a : g.out_arcs(v))
                if (comp[g.head(a)] == -1) {
                    comp[g.head(a)] = id;
                    queue.push_back(g.head(a));
                }
            for (int a : g.in_arcs(v))
                if (comp[g.tail(a)] == -1) {
                    comp[g.tail(a)] = id;
                    queue.push_back(g.tail(a));
                }
        }
    }
    return ComponentPartition(ComponentPartition::Kind::weak,
                              g.vertex_universe(), std::move(blocks));
}

namespace {

// Iterative Tarjan; recursion is avoided so that deep chains cannot
// overflow the stack.
std::vector<std::vector<int>> tarjan_sccs(const Multigraph& g) {
    const int n = g.vertex_count();
    std::vector<int> number(n, -1), low(n, 0), on_stack(n, 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> sccs;
    int counter = 0;

    struct Frame {
        int v;
        size_t next_arc;
    };
    for (int root = 0; root < n; ++root) {
        if (number[root] != -1) continue;
        std::vector<Frame> call{{root, 0}};
        number[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& arcs = g.out_arcs(f.v);
            if (f.next_arc < arcs.size()) {
                int w = g.head(arcs[f.next_arc++]);
                if (number[w] == -1) {
                    number[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], number[w]);
                }
            } else {
                if (low[f.v] == number[f.v]) {
                    std::vector<int> scc;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        scc.push_back(w);
                        if (w == f.v) break;
                    }
                    sccs.push_back(std::move(scc));
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty())
                    low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }
    return sccs;
}

} // namespace

StrongComponents strong_and_leaf_components(const Multigraph& g) {
    ComponentPartition partition(ComponentPartition::Kind::strong,
                                 g.vertex_universe(), tarjan_sccs(g));
    std::vector<int> leaves;
    for (int b = 0; b < partition.block_count(); ++b) {
        bool leaf = true;
        for (int v : partition.blocks()[b]) {
            for (int a : g.out_arcs(v))
                if (partition.block_of(g.head(a)) != b) {
                    leaf = false;
                    break;
                }
            if (!leaf) break;
        }
        if (leaf) leaves.push_back(b);
    }
    return {std::move(partition), std::move(leaves)};
}

bool is_stopping(const Multigraph& g) {
    // Backward reachability from the sinks.
    const int n = g.vertex_count();
    std::vector<char> reaches(n, 0);
    std::deque<int> queue;
    for (int v : g.sinks()) {
        reaches[v] = 1;
        queue.push_back(v);
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int a : g.in_arcs(v))
            if (!reaches[g.tail(a)]) {
                reaches[g.tail(a)] = 1;
                queue.push_back(g.tail(a));
            }
    }
    return std::all_of(reaches.begin(), reaches.end(), [](char c) { return c != 0; });
}

bool is_strongly_connected(const Multigraph& g) {
    if (g.vertex_count() == 0) return true;
    return strong_and_leaf_components(g).partition.block_count() == 1;
}

bool directed_path_exists(const Multigraph& g, int x, int y,
                          const std::set<int>& forbidden_tails) {
    if (x < 0 || x >= g.vertex_count() || y < 0 || y >= g.vertex_count())
        throw unknown_id_error("path query outside vertex range");
    if (x == y) return true;
    std::vector<char> seen(g.vertex_count(), 0);
    std::deque<int> queue{x};
    seen[x] = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (forbidden_tails.count(v)) continue;
        for (int a : g.out_arcs(v)) {
            int w = g.head(a);
            if (w == y) return true;
            if (!seen[w]) {
                seen[w] = 1;
                queue.push_back(w);
            }
        }
    }
    return false;
}

Int enumerate_arborescences(const Multigraph& g, const std::set<int>& roots,
                            int max_vertices) {
    if (g.vertex_count() > max_vertices)
        throw bound_exceeded_error("arborescence enumeration limited to " +
                                   std::to_string(max_vertices) + " vertices");
    for (int r : roots)
        if (r < 0 || r >= g.vertex_count())
            throw unknown_id_error("root outside vertex range");

    std::vector<int> free_vertices;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!roots.count(v)) free_vertices.push_back(v);

    std::vector<int> choice(free_vertices.size(), 0);
    Int count = 0;

    auto valid = [&]() {
        // Every non-root must reach a root following the chosen arcs.
        std::vector<int> next(g.vertex_count(), -1);
        for (size_t i = 0; i < free_vertices.size(); ++i)
            next[free_vertices[i]] = g.head(g.out_arcs(free_vertices[i])[choice[i]]);
        for (int v : free_vertices) {
            int steps = 0, w = v;
            while (!roots.count(w)) {
                w = next[w];
                if (w == -1 || ++steps > g.vertex_count()) return false;
            }
        }
        return true;
    };

    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == free_vertices.size()) {
            if (valid()) ++count;
            return;
        }
        int v = free_vertices[i];
        if (g.out_arcs(v).empty()) return; // no choice possible, no arborescence
        for (int c = 0; c < g.out_degree(v); ++c) {
            choice[i] = c;
            rec(i + 1);
        }
    };
    rec(0);
    return count;
}

} // namespace rotorkit
