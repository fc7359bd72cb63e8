#pragma once

// Independent brute-force oracles: exhaustive searches over legal sequences
// and gcd-of-minors invariant factors. These deliberately avoid the library
// decision procedures they are used to check.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <rotorkit/config.hpp>
#include <rotorkit/grm.hpp>
#include <rotorkit/multigraph.hpp>
#include <rotorkit/zlinalg.hpp>

namespace oracles {

using namespace rotorkit;

/// BFS over configurations by legal single-arc steps; exact on small
/// instances (particle totals are conserved, so the space is finite).
inline bool search_legal_any(const Config& sigma, const Config& sigma_target,
                             const Multigraph& g, int max_states = 200000) {
    auto key = [](const Config& c) { return c.to_string(); };
    std::unordered_set<std::string> seen{key(sigma)};
    std::deque<Config> frontier{sigma};
    if (sigma == sigma_target) return true;
    while (!frontier.empty()) {
        Config cur = std::move(frontier.front());
        frontier.pop_front();
        for (int a = 0; a < g.arc_count(); ++a) {
            if (cur.coeff(g.tail(a)) < 1) continue;
            Config next = cur + Config::unit(g.vertex_universe(), g.head(a)) -
                          Config::unit(g.vertex_universe(), g.tail(a));
            if (next == sigma_target) return true;
            std::string k = key(next);
            if (seen.insert(std::move(k)).second) {
                if (static_cast<int>(seen.size()) > max_states)
                    throw bound_exceeded_error("oracle state bound hit");
                frontier.push_back(std::move(next));
            }
        }
    }
    return false;
}

/// Does some ordering of the multiset r route legally from sigma?
/// Memoized DFS over (remaining multiset, current configuration).
inline bool search_legal_with_vector(const Config& sigma, const Config& r,
                                     const Multigraph& g) {
    if (!is_nonnegative(r)) return false;
    std::unordered_map<std::string, bool> memo;

    std::function<bool(const Config&, const Config&)> go =
        [&](const Config& remaining, const Config& cur) -> bool {
        if (remaining.is_zero()) return true;
        std::string key = remaining.to_string() + "|" + cur.to_string();
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool ok = false;
        for (const auto& [a, k] : remaining.coefficients()) {
            if (k < 1 || cur.coeff(g.tail(a)) < 1) continue;
            Config rest = remaining - Config::unit(g.arc_universe(), a);
            Config next = cur + Config::unit(g.vertex_universe(), g.head(a)) -
                          Config::unit(g.vertex_universe(), g.tail(a));
            if (go(rest, next)) {
                ok = true;
                break;
            }
        }
        memo.emplace(std::move(key), ok);
        return ok;
    };
    return go(r, sigma);
}

/// Arcs that can close some legal sequence with vector exactly r.
inline std::set<int> search_traces(const Config& sigma, const Config& r,
                                   const Multigraph& g) {
    std::set<int> traces;
    std::unordered_map<std::string, bool> memo;
    // DFS keeping track of which arc is played last.
    std::function<bool(const Config&, const Config&, int)> ends_with =
        [&](const Config& remaining, const Config& cur, int last) -> bool {
        if (remaining.is_zero()) return true;
        std::string key =
            remaining.to_string() + "|" + cur.to_string() + "|" + std::to_string(last);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool ok = false;
        Int remaining_total = remaining.total();
        for (const auto& [a, k] : remaining.coefficients()) {
            if (k < 1 || cur.coeff(g.tail(a)) < 1) continue;
            if (remaining_total == 1 && a != last) continue; // final step must be `last`
            Config rest = remaining - Config::unit(g.arc_universe(), a);
            Config next = cur + Config::unit(g.vertex_universe(), g.head(a)) -
                          Config::unit(g.vertex_universe(), g.tail(a));
            if (ends_with(rest, next, last)) {
                ok = true;
                break;
            }
        }
        memo.emplace(std::move(key), ok);
        return ok;
    };
    for (const auto& [a, k] : r.coefficients())
        if (k >= 1 && ends_with(r, sigma, a)) traces.insert(a);
    return traces;
}

/// Does some ordering of the face multiset phi route (r, sigma) legally in
/// the mechanism?
inline bool search_grm_with_vector(const Config& r, const Config& sigma,
                                   const Config& phi, const GrmMultigraph& grm) {
    if (!is_nonnegative(phi)) return false;
    const Multigraph& gv = grm.vertex_graph();
    std::unordered_map<std::string, bool> memo;
    std::function<bool(const Config&, const Config&, const Config&)> go =
        [&](const Config& remaining, const Config& arcs, const Config& parts) -> bool {
        if (remaining.is_zero()) return true;
        std::string key = remaining.to_string() + "|" + arcs.to_string() + "|" +
                          parts.to_string();
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool ok = false;
        for (const auto& [f, k] : remaining.coefficients()) {
            if (k < 1) continue;
            int a = grm.face_tail(f);
            if (arcs.coeff(a) < 1 || parts.coeff(gv.tail(a)) < 1) continue;
            Config rest = remaining - Config::unit(grm.face_universe(), f);
            Config arcs2 = arcs + Config::unit(gv.arc_universe(), grm.face_head(f)) -
                           Config::unit(gv.arc_universe(), a);
            Config parts2 = parts + Config::unit(gv.vertex_universe(), gv.head(a)) -
                            Config::unit(gv.vertex_universe(), gv.tail(a));
            if (go(rest, arcs2, parts2)) {
                ok = true;
                break;
            }
        }
        memo.emplace(std::move(key), ok);
        return ok;
    };
    return go(phi, r, sigma);
}

/// gcd of all i x i minors (the d_i of the invariant-factor formula).
inline Int gcd_of_minors(const IntMatrix& a, int order) {
    std::vector<int> rows(order), cols(order);
    Int acc = 0;

    std::function<void(int, int)> choose_cols = [&](int idx, int from) {
        if (acc == 1) return;
        if (idx == order) {
            acc = gcd_int(acc, determinant(a.submatrix(rows, cols)));
            return;
        }
        for (int c = from; c < a.cols(); ++c) {
            cols[idx] = c;
            choose_cols(idx + 1, c + 1);
        }
    };
    std::function<void(int, int)> choose_rows = [&](int idx, int from) {
        if (acc == 1) return;
        if (idx == order) {
            choose_cols(0, 0);
            return;
        }
        for (int r = from; r < a.rows(); ++r) {
            rows[idx] = r;
            choose_rows(idx + 1, r + 1);
        }
    };
    choose_rows(0, 0);
    return acc;
}

/// Seeded random multigraph; arc heads/tails uniform, optional forced sinks.
inline Multigraph random_multigraph(std::mt19937& rng, int max_vertices,
                                    int max_arcs, int forced_sinks = 0) {
    std::uniform_int_distribution<int> nv(1, max_vertices);
    int n = nv(rng);
    int sinks = std::min(forced_sinks, n);
    std::uniform_int_distribution<int> na(0, max_arcs);
    int m = na(rng);
    MultigraphBuilder b;
    for (int v = 0; v < n; ++v) b.vertex("v" + std::to_string(v));
    std::uniform_int_distribution<int> tail_pick(sinks, n - 1);
    std::uniform_int_distribution<int> head_pick(0, n - 1);
    if (sinks < n)
        for (int a = 0; a < m; ++a)
            b.arc("e" + std::to_string(a), "v" + std::to_string(tail_pick(rng)),
                  "v" + std::to_string(head_pick(rng)));
    return b.build();
}

/// Random rotor multigraph on which every vertex reaches a sink: vertex i>0
/// keeps one arc toward a smaller vertex, vertex 0 is the sink.
inline RotorMultigraph random_stopping_rotor(std::mt19937& rng, int max_vertices,
                                             int max_extra_arcs) {
    std::uniform_int_distribution<int> nv(2, max_vertices);
    int n = nv(rng);
    MultigraphBuilder b;
    for (int v = 0; v < n; ++v) b.vertex("v" + std::to_string(v));
    int arc_id = 0;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> smaller(0, v - 1);
        b.arc("e" + std::to_string(arc_id++), "v" + std::to_string(v),
              "v" + std::to_string(smaller(rng)));
    }
    std::uniform_int_distribution<int> extra(0, max_extra_arcs);
    int extras = extra(rng);
    std::uniform_int_distribution<int> tail_pick(1, n - 1);
    std::uniform_int_distribution<int> head_pick(0, n - 1);
    for (int e = 0; e < extras; ++e)
        b.arc("e" + std::to_string(arc_id++), "v" + std::to_string(tail_pick(rng)),
              "v" + std::to_string(head_pick(rng)));
    Multigraph g = b.build();

    // Random rotor order per vertex.
    std::vector<std::vector<int>> cycles;
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<int> out = g.out_arcs(v);
        std::shuffle(out.begin(), out.end(), rng);
        if (!out.empty()) cycles.push_back(std::move(out));
    }
    return RotorMultigraph::from_cycles(std::move(g), cycles);
}

/// Random strongly connected rotor multigraph: a directed cycle through all
/// vertices plus random chords.
inline RotorMultigraph random_strongly_connected_rotor(std::mt19937& rng,
                                                       int max_vertices,
                                                       int max_extra_arcs) {
    std::uniform_int_distribution<int> nv(1, max_vertices);
    int n = nv(rng);
    MultigraphBuilder b;
    for (int v = 0; v < n; ++v) b.vertex("v" + std::to_string(v));
    int arc_id = 0;
    for (int v = 0; v < n; ++v)
        b.arc("e" + std::to_string(arc_id++), "v" + std::to_string(v),
              "v" + std::to_string((v + 1) % n));
    std::uniform_int_distribution<int> extra(0, max_extra_arcs);
    std::uniform_int_distribution<int> pick(0, n - 1);
    int extras = extra(rng);
    for (int e = 0; e < extras; ++e)
        b.arc("e" + std::to_string(arc_id++), "v" + std::to_string(pick(rng)),
              "v" + std::to_string(pick(rng)));
    Multigraph g = b.build();
    std::vector<std::vector<int>> cycles;
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<int> out = g.out_arcs(v);
        std::shuffle(out.begin(), out.end(), rng);
        if (!out.empty()) cycles.push_back(std::move(out));
    }
    return RotorMultigraph::from_cycles(std::move(g), cycles);
}

/// Random sparse config with coefficients in [lo, hi].
inline Config random_config(std::mt19937& rng, const UniverseHandle& u, int lo,
                            int hi, double density = 0.6) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<int> val(lo, hi);
    std::map<int, Int> coeffs;
    for (int i = 0; i < u->size(); ++i)
        if (coin(rng) < density) coeffs[i] = val(rng);
    return Config(u, std::move(coeffs));
}

inline IntMatrix random_matrix(std::mt19937& rng, int max_dim, int lo, int hi) {
    std::uniform_int_distribution<int> dim(1, max_dim);
    std::uniform_int_distribution<int> val(lo, hi);
    int n = dim(rng), m = dim(rng);
    IntMatrix a(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) a.at(i, j) = val(rng);
    return a;
}

} // namespace oracles
