#include "rotorkit/rotor.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace rotorkit {

RotorMultigraph::RotorMultigraph(Multigraph graph, std::vector<int> theta)
    : graph_(std::move(graph)), theta_(std::move(theta)) {
    const int m = graph_.arc_count();
    if (static_cast<int>(theta_.size()) != m)
        throw precondition_error("theta must be defined on every arc");
    theta_inv_.assign(m, -1);
    for (int a = 0; a < m; ++a) {
        int b = theta_[a];
        if (b < 0 || b >= m || graph_.tail(b) != graph_.tail(a))
            throw precondition_error("theta must permute the out-arcs of each vertex");
        if (theta_inv_[b] != -1)
            throw precondition_error("theta is not injective");
        theta_inv_[b] = a;
    }
    // Single covering cycle per vertex.
    for (int v = 0; v < graph_.vertex_count(); ++v) {
        const auto& out = graph_.out_arcs(v);
        if (out.empty()) continue;
        std::set<int> seen;
        int a = out.front();
        for (size_t i = 0; i < out.size(); ++i) {
            seen.insert(a);
            a = theta_[a];
        }
        if (a != out.front() || seen.size() != out.size())
            throw precondition_error("rotor order at '" + graph_.vertex_name(v) +
                                     "' is not a single covering cycle");
    }
}

RotorMultigraph RotorMultigraph::from_cycles(
    Multigraph graph, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> theta(graph.arc_count(), -1);
    for (const auto& cycle : cycles) {
        for (size_t i = 0; i < cycle.size(); ++i) {
            int a = cycle[i];
            if (a < 0 || a >= graph.arc_count() || theta[a] != -1)
                throw precondition_error("bad arc in rotor cycle");
            theta[a] = cycle[(i + 1) % cycle.size()];
        }
    }
    for (int a = 0; a < graph.arc_count(); ++a)
        if (theta[a] == -1)
            throw precondition_error("arc '" + graph.arc_name(a) +
                                     "' missing from rotor cycles");
    return RotorMultigraph(std::move(graph), std::move(theta));
}

RotorConfiguration::RotorConfiguration(const Multigraph& g, std::vector<int> arc_at)
    : arc_at_(std::move(arc_at)) {
    if (static_cast<int>(arc_at_.size()) != g.vertex_count())
        throw precondition_error("rotor configuration must cover all vertices");
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.is_sink(v)) {
            if (arc_at_[v] != -1)
                throw precondition_error("rotor configuration assigns an arc to a sink");
        } else if (arc_at_[v] < 0 || arc_at_[v] >= g.arc_count() ||
                   g.tail(arc_at_[v]) != v) {
            throw precondition_error("rotor at '" + g.vertex_name(v) +
                                     "' is not one of its out-arcs");
        }
    }
}

RotorConfiguration RotorConfiguration::from_config(const Multigraph& g,
                                                   const Config& arcs) {
    if (arcs.universe() != g.arc_universe())
        throw universe_mismatch_error("rotor configuration must be an arc config");
    std::vector<int> arc_at(g.vertex_count(), -1);
    for (const auto& [a, k] : arcs.coefficients()) {
        if (k != 1)
            throw precondition_error("rotor configuration coefficients must be 1");
        int v = g.tail(a);
        if (arc_at[v] != -1)
            throw precondition_error("two rotor arcs at '" + g.vertex_name(v) + "'");
        arc_at[v] = a;
    }
    return RotorConfiguration(g, std::move(arc_at));
}

Config RotorConfiguration::to_config(const Multigraph& g) const {
    Config out = Config::zero(g.arc_universe());
    for (int v = 0; v < g.vertex_count(); ++v)
        if (arc_at_[v] != -1)
            out = out + Config::unit(g.arc_universe(), arc_at_[v]);
    return out;
}

Flow::Flow(Config values) : values_(std::move(values)) {
    if (values_.universe()->kind() != UniverseKind::arc)
        throw universe_mismatch_error("a flow is indexed by arcs");
    if (!is_nonnegative(values_))
        throw precondition_error("flow values must be nonnegative");
}

std::pair<RotorConfiguration, Config> rotor_step(const RotorMultigraph& rg,
                                                 const RotorConfiguration& rho,
                                                 const Config& sigma, int v,
                                                 StepConvention convention) {
    const Multigraph& g = rg.graph();
    if (v < 0 || v >= g.vertex_count()) throw unknown_id_error("rotor step at unknown vertex");
    if (g.is_sink(v)) throw precondition_error("cannot route at a sink");
    if (sigma.coeff(v) < 1)
        throw precondition_error("illegal rotor step: no particle on '" +
                                 g.vertex_name(v) + "'");

    std::vector<int> arcs = rho.assignment();
    int move_arc;
    if (convention == StepConvention::move_then_turn) {
        move_arc = arcs[v];
        arcs[v] = rg.theta(arcs[v]);
    } else {
        arcs[v] = rg.theta(arcs[v]);
        move_arc = arcs[v];
    }
    Config moved = combine(sigma, 1,
                           Config::unit(g.vertex_universe(), g.head(move_arc)) -
                               Config::unit(g.vertex_universe(), g.tail(move_arc)));
    return {RotorConfiguration(g, std::move(arcs)), std::move(moved)};
}

WalkResult maximal_rotor_walk(const RotorMultigraph& rg,
                              const RotorConfiguration& rho, const Config& sigma,
                              RoutingPolicy policy, long long step_cap) {
    const Multigraph& g = rg.graph();
    if (!is_nonnegative(sigma))
        throw precondition_error("rotor walks route nonnegative configurations");
    if (!is_stopping(g))
        throw precondition_error("maximal rotor walks are finite only on stopping graphs");

    std::vector<int> arcs = rho.assignment();
    std::vector<Int> particles(g.vertex_count(), Int(0));
    for (const auto& [v, k] : sigma.coefficients()) particles[v] = k;

    std::set<int> routable;
    std::deque<int> fifo;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!g.is_sink(v) && particles[v] >= 1) {
            routable.insert(v);
            fifo.push_back(v);
        }

    std::map<int, Int> run_counts;
    std::map<int, Int> vertex_counts;
    long long steps = 0;

    while (!routable.empty()) {
        if (steps >= step_cap)
            throw bound_exceeded_error("rotor walk exceeds step cap of " +
                                       std::to_string(step_cap));
        int v;
        switch (policy) {
        case RoutingPolicy::canonical_min: v = *routable.begin(); break;
        case RoutingPolicy::reverse_canonical: v = *routable.rbegin(); break;
        case RoutingPolicy::fifo:
        default:
            v = fifo.front();
            fifo.pop_front();
            if (!routable.count(v)) continue; // stale entry
            break;
        }

        int a = arcs[v];
        int w = g.head(a);
        run_counts[a] += 1;
        vertex_counts[v] += 1;
        particles[v] -= 1;
        particles[w] += 1;
        arcs[v] = rg.theta(a);
        ++steps;

        if (particles[v] < 1) routable.erase(v);
        else if (policy == RoutingPolicy::fifo) fifo.push_back(v);
        if (!g.is_sink(w) && particles[w] >= 1 && routable.insert(w).second &&
            policy == RoutingPolicy::fifo)
            fifo.push_back(w);
    }

    std::map<int, Int> final_particles;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (particles[v] != 0) final_particles[v] = particles[v];

    return WalkResult{RotorConfiguration(g, std::move(arcs)),
                      Config(g.vertex_universe(), std::move(final_particles)),
                      Flow(Config(g.arc_universe(), std::move(run_counts))),
                      Config(g.vertex_universe(), std::move(vertex_counts)), steps};
}

namespace {

bool rotor_condition_holds(const RotorMultigraph& rg, const Flow& f,
                           const RotorConfiguration& rho, int v) {
    const Multigraph& g = rg.graph();
    int first = rho.arc_at(v);
    Int top = f.at(first);
    Int prev = top;
    int a = rg.theta(first);
    for (int i = 1; i < g.out_degree(v); ++i, a = rg.theta(a)) {
        Int cur = f.at(a);
        if (cur > prev || cur < top - 1) return false;
        prev = cur;
    }
    return true;
}

/// Any directed cycle within the arc subset?
bool has_directed_cycle(const Multigraph& g, const std::set<int>& arc_set) {
    std::vector<std::vector<int>> out(g.vertex_count());
    for (int a : arc_set) out[g.tail(a)].push_back(g.head(a));
    std::vector<int> color(g.vertex_count(), 0);
    for (int start = 0; start < g.vertex_count(); ++start) {
        if (color[start] != 0) continue;
        std::vector<std::pair<int, size_t>> stack{{start, 0}};
        color[start] = 1;
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < out[v].size()) {
                int w = out[v][i++];
                if (color[w] == 1) return true;
                if (color[w] == 0) {
                    color[w] = 1;
                    stack.emplace_back(w, 0);
                }
            } else {
                color[v] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

} // namespace

bool verify_flow(const RotorMultigraph& rg, const Flow& f,
                 const RotorConfiguration& rho, const Config& sigma,
                 const Config& sigma_final) {
    const Multigraph& g = rg.graph();
    for (int v = 0; v < g.vertex_count(); ++v) {
        Int in = sigma.coeff(v), out = sigma_final.coeff(v);
        for (int a : g.in_arcs(v)) in += f.at(a);
        for (int a : g.out_arcs(v)) out += f.at(a);
        if (in != out) return false;
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!g.is_sink(v) && !rotor_condition_holds(rg, f, rho, v)) return false;
    return true;
}

RotorConfiguration rotor_config_from_flow(const RotorMultigraph& rg, const Flow& f,
                                          const RotorConfiguration& rho) {
    const Multigraph& g = rg.graph();
    std::vector<int> arcs(g.vertex_count(), -1);
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.is_sink(v)) continue;
        if (!rotor_condition_holds(rg, f, rho, v))
            throw precondition_error("flow violates the rotor condition at '" +
                                     g.vertex_name(v) + "'");
        int first = rho.arc_at(v);
        Int top = f.at(first);
        int a = rg.theta(first);
        arcs[v] = first;
        for (int i = 1; i < g.out_degree(v); ++i, a = rg.theta(a))
            if (f.at(a) < top) {
                arcs[v] = a; // first strict drop along theta
                break;
            }
    }
    return RotorConfiguration(g, std::move(arcs));
}

bool verify_run(const RotorMultigraph& rg, const Flow& f,
                const RotorConfiguration& rho, const Config& sigma,
                const Config& sigma_final) {
    if (!verify_flow(rg, f, rho, sigma, sigma_final)) return false;
    const Multigraph& g = rg.graph();
    RotorConfiguration end = rotor_config_from_flow(rg, f, rho);
    std::set<int> last_exits;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.is_sink(v)) continue;
        Int total = 0;
        for (int a : g.out_arcs(v)) total += f.at(a);
        if (total > 0) last_exits.insert(rg.theta_inverse(end.arc_at(v)));
    }
    return !has_directed_cycle(g, last_exits);
}

bool is_recurrent_standard(const RotorMultigraph& rg, const RotorConfiguration& rho,
                           const Config& sigma) {
    const Multigraph& g = rg.graph();
    if (!is_strongly_connected(g))
        throw precondition_error("recurrence is defined on strongly connected graphs");
    std::set<int> previous_arcs;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!g.is_sink(v)) previous_arcs.insert(rg.theta_inverse(rho.arc_at(v)));

    // One arc per vertex: walk the functional graph and inspect each cycle.
    std::vector<int> next_arc(g.vertex_count(), -1);
    for (int a : previous_arcs) next_arc[g.tail(a)] = a;
    std::vector<int> state(g.vertex_count(), 0);
    for (int start = 0; start < g.vertex_count(); ++start) {
        if (state[start] != 0) continue;
        std::vector<int> path;
        int v = start;
        while (state[v] == 0) {
            state[v] = 1;
            path.push_back(v);
            if (next_arc[v] == -1) break;
            v = g.head(next_arc[v]);
        }
        if (state[v] == 1 && next_arc[v] != -1) {
            // Found a new cycle; it starts at v within `path`.
            auto it = std::find(path.begin(), path.end(), v);
            bool fed = false;
            for (; it != path.end(); ++it)
                if (sigma.coeff(g.head(next_arc[*it])) > 0) {
                    fed = true;
                    break;
                }
            if (!fed) return false;
        }
        for (int u : path) state[u] = 2;
    }
    return true;
}

} // namespace rotorkit
