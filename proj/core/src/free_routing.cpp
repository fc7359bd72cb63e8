#include "rotorkit/free_routing.hpp"

#include <algorithm>
#include <deque>

namespace rotorkit {

namespace {

void require_arc_config(const Config& r, const Multigraph& g, const char* who) {
    if (r.universe() != g.arc_universe())
        throw universe_mismatch_error(std::string(who) +
                                      ": config is not over this graph's arcs");
}

void require_vertex_config(const Config& c, const Multigraph& g, const char* who) {
    if (c.universe() != g.vertex_universe())
        throw universe_mismatch_error(std::string(who) +
                                      ": config is not over this graph's vertices");
}

/// Vertices with an outgoing element of r.
std::set<int> active_vertices(const Config& r, const Multigraph& g) {
    std::set<int> out;
    for (const auto& [a, k] : r.coefficients())
        if (k >= 1) out.insert(g.tail(a));
    return out;
}

} // namespace

Config boundary(const Config& r, const Multigraph& g) {
    require_arc_config(r, g, "boundary");
    Config out = Config::zero(g.vertex_universe());
    for (const auto& [a, k] : r.coefficients()) {
        out = combine(out, k, Config::unit(g.vertex_universe(), g.head(a)));
        out = combine(out, -k, Config::unit(g.vertex_universe(), g.tail(a)));
    }
    return out;
}

Config section_apply(const Multigraph& g, const std::vector<int>& basepoints,
                     const Config& sigma) {
    require_vertex_config(sigma, g, "section_apply");
    ComponentPartition weak = weak_components(g);
    if (static_cast<int>(basepoints.size()) != weak.block_count())
        throw precondition_error("one basepoint per weak component expected");
    for (int b = 0; b < weak.block_count(); ++b) {
        int bp = basepoints[b];
        if (bp < 0 || bp >= g.vertex_count() || weak.block_of(bp) != b)
            throw precondition_error("basepoint " + std::to_string(bp) +
                                     " does not lie in its component");
    }

    // Undirected BFS trees from the basepoints: parent arc plus orientation.
    const int n = g.vertex_count();
    std::vector<int> parent_arc(n, -1);
    std::vector<int> parent_sign(n, 0);
    std::vector<char> seen(n, 0);
    for (int b = 0; b < weak.block_count(); ++b) {
        std::deque<int> queue{basepoints[b]};
        seen[basepoints[b]] = 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int a : g.out_arcs(v)) {
                int w = g.head(a);
                if (!seen[w]) {
                    seen[w] = 1;
                    parent_arc[w] = a;
                    parent_sign[w] = 1;
                    queue.push_back(w);
                }
            }
            for (int a : g.in_arcs(v)) {
                int w = g.tail(a);
                if (!seen[w]) {
                    seen[w] = 1;
                    parent_arc[w] = a;
                    parent_sign[w] = -1;
                    queue.push_back(w);
                }
            }
        }
    }

    std::map<int, Int> arc_coeffs;
    for (const auto& [v, k] : sigma.coefficients()) {
        int w = v;
        while (parent_arc[w] != -1) {
            int a = parent_arc[w];
            arc_coeffs[a] += k * parent_sign[w];
            w = parent_sign[w] > 0 ? g.tail(a) : g.head(a);
        }
    }
    return Config(g.arc_universe(), std::move(arc_coeffs));
}

Config section_apply(const Multigraph& g, const Config& sigma) {
    ComponentPartition weak = weak_components(g);
    std::vector<int> basepoints;
    basepoints.reserve(weak.block_count());
    for (const auto& block : weak.blocks()) basepoints.push_back(block.front());
    return section_apply(g, basepoints, sigma);
}

bool is_cycle(const Config& r, const Multigraph& g) {
    require_arc_config(r, g, "is_cycle");
    std::map<int, Int> net; // vertex -> outgoing minus incoming
    for (const auto& [a, k] : r.coefficients()) {
        net[g.tail(a)] += k;
        net[g.head(a)] -= k;
    }
    for (const auto& [v, x] : net)
        if (x != 0) return false;
    return true;
}

std::optional<Config> linear_reachable(const Config& sigma,
                                       const Config& sigma_target,
                                       const Multigraph& g) {
    require_vertex_config(sigma, g, "linear_reachable");
    require_vertex_config(sigma_target, g, "linear_reachable");
    ComponentPartition weak = weak_components(g);
    Config diff = sigma_target - sigma;
    if (!degree(diff, weak).is_zero()) return std::nullopt;
    return section_apply(g, diff);
}

std::set<int> transitory_vertices(const Config& r, const Config& sigma_target,
                                  const Multigraph& g) {
    require_arc_config(r, g, "transitory_vertices");
    require_vertex_config(sigma_target, g, "transitory_vertices");
    if (!is_nonnegative(r))
        throw precondition_error("transitory vertices are defined for nonnegative r");
    std::set<int> trans;
    for (int v : active_vertices(r, g))
        if (sigma_target.coeff(v) == 0) trans.insert(v);
    return trans;
}

namespace {

/// Fixpoint of "can escape the transitory region along the given arcs":
/// returns the set of transitory vertices with a directed path inside
/// arc_set to a non-transitory vertex.
std::set<int> escaping_vertices(const std::set<int>& arc_set,
                                const std::set<int>& trans, const Multigraph& g) {
    std::set<int> saved;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int v : trans) {
            if (saved.count(v)) continue;
            for (int a : g.out_arcs(v)) {
                if (!arc_set.count(a)) continue;
                int w = g.head(a);
                if (!trans.count(w) || saved.count(w)) {
                    saved.insert(v);
                    progress = true;
                    break;
                }
            }
        }
    }
    return saved;
}

} // namespace

bool is_guiding(const std::set<int>& arc_set, const Config& r,
                const Config& sigma, const Config& sigma_target,
                const Multigraph& g) {
    if (sigma + boundary(r, g) != sigma_target)
        throw precondition_error("is_guiding: sigma_target != sigma + boundary(r)");
    for (int a : arc_set)
        if (!r.is_element(a)) return false;
    std::set<int> trans = transitory_vertices(r, sigma_target, g);
    return escaping_vertices(arc_set, trans, g).size() == trans.size();
}

std::optional<GuidingSet> find_guiding_tree(const Config& r,
                                            const Config& sigma_target,
                                            const Multigraph& g) {
    std::set<int> trans = transitory_vertices(r, sigma_target, g);
    GuidingSet tree{{}, r, sigma_target};

    std::set<int> saved;
    bool progress = true;
    while (progress && saved.size() < trans.size()) {
        progress = false;
        for (int v : trans) {
            if (saved.count(v)) continue;
            for (int a : g.out_arcs(v)) { // declaration order = canonical choice
                if (!r.is_element(a)) continue;
                int w = g.head(a);
                if (!trans.count(w) || saved.count(w)) {
                    tree.exit_arcs[v] = a;
                    saved.insert(v);
                    progress = true;
                    break;
                }
            }
        }
    }
    if (saved.size() != trans.size()) return std::nullopt;
    return tree;
}

std::optional<Config> legal_vector_search(const Config& sigma,
                                          const Config& sigma_target,
                                          const Multigraph& g) {
    require_vertex_config(sigma, g, "legal_vector_search");
    require_vertex_config(sigma_target, g, "legal_vector_search");

    std::vector<int> sources, targets;
    std::map<int, Int> need; // vertex -> particles to emit (+) or absorb (-)
    for (int v = 0; v < g.vertex_count(); ++v) {
        Int d = sigma.coeff(v) - sigma_target.coeff(v);
        if (d > 0) sources.push_back(v);
        if (d < 0) targets.push_back(v);
        if (d != 0) need[v] = d;
    }
    if (sources.empty() && targets.empty()) return Config::zero(g.arc_universe());

    // Arcs emitting from vertices that must stay negative can never be used.
    std::set<int> forbidden;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (sigma_target.coeff(v) < 0) forbidden.insert(v);

    // Shortest directed path in the restricted graph for every usable
    // source/target pair, found by BFS in canonical arc order.
    const int ns = static_cast<int>(sources.size());
    const int nt = static_cast<int>(targets.size());
    std::map<std::pair<int, int>, Config> path_of;
    for (int si = 0; si < ns; ++si) {
        int s = sources[si];
        std::vector<int> parent(g.vertex_count(), -1);
        std::vector<char> seen(g.vertex_count(), 0);
        std::deque<int> queue{s};
        seen[s] = 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            if (forbidden.count(v)) continue;
            for (int a : g.out_arcs(v)) {
                int w = g.head(a);
                if (!seen[w]) {
                    seen[w] = 1;
                    parent[w] = a;
                    queue.push_back(w);
                }
            }
        }
        for (int ti = 0; ti < nt; ++ti) {
            int t = targets[ti];
            if (t == s || !seen[t]) continue;
            std::map<int, Int> coeffs;
            for (int w = t; w != s;) {
                coeffs[parent[w]] += 1;
                w = g.tail(parent[w]);
            }
            path_of.emplace(std::make_pair(si, ti),
                            Config(g.arc_universe(), std::move(coeffs)));
        }
    }

    // Degree-constrained bipartite assignment as a max flow: src -> sources
    // with the excess as capacity, targets -> snk with the deficit, and
    // unbounded middle edges wherever a directed path exists.
    const int node_count = ns + nt + 2;
    const int src = node_count - 2, snk = node_count - 1;
    struct Edge {
        int to;
        Int cap;
        int rev;
    };
    std::vector<std::vector<Edge>> net(node_count);
    auto add_edge = [&](int from, int to, Int cap) {
        net[from].push_back({to, std::move(cap), static_cast<int>(net[to].size())});
        net[to].push_back({from, Int(0), static_cast<int>(net[from].size() - 1)});
    };
    Int total_out = 0, total_in = 0;
    for (int si = 0; si < ns; ++si) {
        add_edge(src, si, need[sources[si]]);
        total_out += need[sources[si]];
    }
    for (int ti = 0; ti < nt; ++ti) {
        add_edge(ns + ti, snk, -need[targets[ti]]);
        total_in += -need[targets[ti]];
    }
    Int middle_cap = total_out + 1;
    for (const auto& [key, path] : path_of) add_edge(key.first, ns + key.second, middle_cap);

    if (total_out != total_in) return std::nullopt;

    Int flow = 0;
    while (true) { // Edmonds-Karp
        std::vector<int> prev_node(node_count, -1), prev_edge(node_count, -1);
        std::deque<int> queue{src};
        prev_node[src] = src;
        while (!queue.empty() && prev_node[snk] == -1) {
            int v = queue.front();
            queue.pop_front();
            for (int ei = 0; ei < static_cast<int>(net[v].size()); ++ei) {
                const Edge& e = net[v][ei];
                if (e.cap > 0 && prev_node[e.to] == -1) {
                    prev_node[e.to] = v;
                    prev_edge[e.to] = ei;
                    queue.push_back(e.to);
                }
            }
        }
        if (prev_node[snk] == -1) break;
        Int push = middle_cap;
        for (int v = snk; v != src; v = prev_node[v])
            push = std::min(push, net[prev_node[v]][prev_edge[v]].cap);
        for (int v = snk; v != src; v = prev_node[v]) {
            Edge& e = net[prev_node[v]][prev_edge[v]];
            e.cap -= push;
            net[e.to][e.rev].cap += push;
        }
        flow += push;
    }
    if (flow != total_out) return std::nullopt;

    Config result = Config::zero(g.arc_universe());
    for (int si = 0; si < ns; ++si)
        for (const Edge& e : net[si]) {
            if (e.to == src || e.to >= ns + nt) continue;
            // Flow actually sent over the middle edge is the residual on the
            // reverse edge.
            const Int& sent = net[e.to][e.rev].cap;
            if (sent > 0)
                result = combine(result, sent, path_of.at({si, e.to - ns}));
        }
    return result;
}

bool legal_with_vector(const Config& sigma, const Config& r,
                       const Config& sigma_target, const Multigraph& g) {
    require_arc_config(r, g, "legal_with_vector");
    if (sigma + boundary(r, g) != sigma_target)
        throw precondition_error(
            "legal_with_vector: sigma_target != sigma + boundary(r)");
    if (!is_nonnegative(r)) return false;

    std::set<int> trans = transitory_vertices(r, sigma_target, g);
    for (int v : active_vertices(r, g))
        if (sigma_target.coeff(v) < 0) return false;

    std::set<int> elements;
    for (const auto& [a, k] : r.coefficients())
        if (k >= 1) elements.insert(a);
    return escaping_vertices(elements, trans, g).size() == trans.size();
}

LegalSequence extract_legal_sequence(const Config& sigma, const Config& r,
                                     const Multigraph& g, const GuidingSet& tree,
                                     long long step_cap) {
    Config sigma_target = sigma + boundary(r, g);
    if (!legal_with_vector(sigma, r, sigma_target, g))
        throw precondition_error("extract_legal_sequence: vector is not legal");
    if (tree.routing_vector != r || tree.target != sigma_target)
        throw precondition_error("extract_legal_sequence: tree context mismatch");
    std::set<int> trans = transitory_vertices(r, sigma_target, g);
    if (!is_guiding(tree.arcs(), r, sigma, sigma_target, g) ||
        tree.exit_arcs.size() != trans.size())
        throw precondition_error("extract_legal_sequence: not a guiding tree");

    LegalSequence seq{{}, sigma};
    std::map<int, Int> remaining = r.coefficients();
    std::map<int, Int> current;
    for (const auto& [v, k] : sigma.coefficients()) current[v] = k;

    auto coeff_of = [](const std::map<int, Int>& m, int i) {
        auto it = m.find(i);
        return it == m.end() ? Int(0) : it->second;
    };

    while (!remaining.empty()) {
        if (static_cast<long long>(seq.steps.size()) >= step_cap)
            throw sequence_cap_error("legal sequence exceeds step cap of " +
                                         std::to_string(step_cap),
                                     std::move(seq));
        // Smallest active vertex of the remaining vector holding a particle.
        int vertex = -1;
        std::vector<int> candidates;
        for (const auto& [a, k] : remaining)
            if (k >= 1) candidates.push_back(g.tail(a));
        std::sort(candidates.begin(), candidates.end());
        for (int v : candidates)
            if (coeff_of(current, v) >= 1) {
                vertex = v;
                break;
            }
        if (vertex == -1)
            throw error("extract_legal_sequence: no routable vertex (invariant broken)");

        // Arc choice: keep the tree arc of a transitory vertex for last.
        std::vector<int> out;
        for (int a : g.out_arcs(vertex))
            if (coeff_of(remaining, a) >= 1) out.push_back(a);
        int chosen = -1;
        auto tree_it = tree.exit_arcs.find(vertex);
        if (tree_it == tree.exit_arcs.end()) {
            chosen = out.front();
        } else if (out.size() >= 2) {
            for (int a : out)
                if (a != tree_it->second) {
                    chosen = a;
                    break;
                }
        } else {
            chosen = out.front(); // only the tree arc remains
        }

        seq.steps.push_back(chosen);
        auto rem = remaining.find(chosen);
        if (--rem->second == 0) remaining.erase(rem);
        current[g.tail(chosen)] -= 1;
        current[g.head(chosen)] += 1;
    }
    return seq;
}

std::set<int> compute_traces(const Config& sigma, const Config& r,
                             const Config& sigma_target, const Multigraph& g) {
    if (!legal_with_vector(sigma, r, sigma_target, g))
        throw precondition_error("compute_traces: routing is not legal");
    std::set<int> traces;
    for (const auto& [a, k] : r.coefficients()) {
        if (k < 1) continue;
        Config unit = Config::unit(g.arc_universe(), a);
        Config shrunk = r - unit;
        if (g.tail(a) == g.head(a)) {
            // A loop leaves the configuration unchanged, so it can close the
            // sequence only if its tail still holds a particle at the end.
            if (sigma_target.coeff(g.tail(a)) >= 1 &&
                legal_with_vector(sigma, shrunk, sigma_target, g))
                traces.insert(a);
        } else {
            Config prev_target = sigma_target - boundary(unit, g);
            if (legal_with_vector(sigma, shrunk, prev_target, g)) traces.insert(a);
        }
    }
    return traces;
}

} // namespace rotorkit
