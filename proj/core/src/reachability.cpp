#include "rotorkit/reachability.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_set>

#include "rotorkit/errors.hpp"
#include "rotorkit/free_routing.hpp"
#include "rotorkit/zlinalg.hpp"

namespace rotorkit {

namespace {

struct LeafContext {
    std::vector<int> block;     ///< vertices, sorted
    Config period;              ///< primitive period vector of the block
    Config turn;                ///< full_turn(period)
    std::vector<char> in_block; ///< vertex membership mask
};

/// Non-sink leaf components with their period and full-turn vectors.
std::vector<LeafContext> leaf_contexts(const GrmMultigraph& grm) {
    std::vector<LeafContext> out;
    for (const PeriodEntry& entry : primitive_period_vectors(grm.vertex_graph())) {
        LeafContext ctx{entry.block, entry.vector, full_turn(entry.vector, grm), {}};
        ctx.in_block.assign(grm.vertex_graph().vertex_count(), 0);
        for (int v : entry.block) ctx.in_block[v] = 1;
        out.push_back(std::move(ctx));
    }
    return out;
}

} // namespace

std::vector<Config> kernel_basis_cyclic(const GrmMultigraph& grm) {
    if (!grm.is_cyclic()) throw precondition_error("cyclic mechanism required");
    std::vector<Config> basis;
    for (const LeafContext& ctx : leaf_contexts(grm)) basis.push_back(ctx.turn);
    return basis;
}

std::optional<Config> minimal_nonneg_vector(const Config& phi,
                                            const GrmMultigraph& grm) {
    if (!grm.is_cyclic()) throw precondition_error("cyclic mechanism required");
    if (phi.universe() != grm.face_universe())
        throw universe_mismatch_error("minimal_nonneg_vector expects a face config");

    std::vector<char> shiftable(grm.face_count(), 0);
    Config result = phi;
    for (const LeafContext& ctx : leaf_contexts(grm)) {
        // Smallest k with phi + k*turn nonnegative on the block's faces;
        // every such face has turn coefficient >= 1.
        Int k_star;
        bool first = true;
        for (int v : ctx.block)
            for (int f : grm.faces_of(v)) {
                shiftable[f] = 1;
                Int needed = ceil_div(-phi.coeff(f), ctx.period.coeff(v));
                if (first || needed > k_star) k_star = needed;
                first = false;
            }
        if (!first && k_star != 0) result = combine(result, k_star, ctx.turn);
    }
    for (const auto& [f, k] : result.coefficients())
        if (k < 0 && !shiftable[f]) return std::nullopt;
    return result;
}

namespace {

/// The target-only recurrence conditions, restricted to one vertex block
/// (all vertices when the mask is empty): configs nonnegative there, at
/// least one arc token per out-set, and an escape path to a particle along
/// arcs whose rotor successor holds a token.
bool recurrent_conditions(const Config& r, const Config& sigma,
                          const GrmMultigraph& grm, const std::vector<char>& mask) {
    const Multigraph& gv = grm.vertex_graph();
    auto inside = [&](int v) { return mask.empty() || mask[v]; };

    for (const auto& [a, k] : r.coefficients())
        if (inside(gv.tail(a)) && k < 0) return false;
    for (const auto& [v, k] : sigma.coefficients())
        if (inside(v) && k < 0) return false;

    for (int v = 0; v < gv.vertex_count(); ++v) {
        if (!inside(v)) continue;
        Int deg = 0;
        for (int a : gv.out_arcs(v)) deg += r.coeff(a);
        if (deg < 1) return false;
    }

    // Escape along arcs whose successor carries a token: reverse reachability
    // from vertices holding a particle.
    std::vector<char> escapes(gv.vertex_count(), 0);
    std::deque<int> queue;
    for (int v = 0; v < gv.vertex_count(); ++v)
        if (inside(v) && sigma.coeff(v) > 0) {
            escapes[v] = 1;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int a : gv.in_arcs(v)) {
            int u = gv.tail(a);
            if (!inside(u) || escapes[u]) continue;
            if (r.coeff(grm.theta(a)) > 0) {
                escapes[u] = 1;
                queue.push_back(u);
            }
        }
    }
    for (int v = 0; v < gv.vertex_count(); ++v)
        if (inside(v) && !escapes[v]) return false;
    return true;
}

} // namespace

bool is_recurrent_cyclic(const Config& r, const Config& sigma,
                         const GrmMultigraph& grm) {
    if (!grm.is_cyclic()) throw precondition_error("cyclic mechanism required");
    if (!is_strongly_connected(grm.vertex_graph()))
        throw precondition_error("recurrence is defined on strongly connected graphs");
    return recurrent_conditions(r, sigma, grm, {});
}

std::optional<Config> legal_reach_strongly_connected(const Config& r,
                                                     const Config& sigma,
                                                     const Config& r_target,
                                                     const Config& sigma_target,
                                                     const GrmMultigraph& grm) {
    if (!grm.is_cyclic()) throw precondition_error("cyclic mechanism required");
    if (!is_strongly_connected(grm.vertex_graph()))
        throw precondition_error("strongly connected mechanism required");

    auto solution = solve_routing_vector(r, sigma, r_target, sigma_target, grm);
    if (!solution)
        throw precondition_error("configurations are not linearly equivalent");

    auto phi0 = minimal_nonneg_vector(solution->phi, grm);
    if (!phi0) return std::nullopt; // no nonnegative routing vector at all

    Config phi = *phi0;
    if (recurrent_conditions(r_target, sigma_target, grm, {})) {
        std::vector<Config> kernel = kernel_basis_cyclic(grm);
        phi = phi + kernel.front();
    }
    if (legal_with_vector_cyclic(r, sigma, phi, r_target, sigma_target, grm))
        return phi;
    return std::nullopt;
}

const char* to_string(ReachReason reason) {
    switch (reason) {
    case ReachReason::reachable: return "reachable";
    case ReachReason::not_linearly_equivalent: return "not-linearly-equivalent";
    case ReachReason::no_nonnegative_vector: return "no-nonnegative-vector";
    case ReachReason::vector_not_legal: return "vector-not-legal";
    }
    return "?";
}

ReachOutcome legal_reach_cyclic(const Config& r, const Config& sigma,
                                const Config& r_target, const Config& sigma_target,
                                const GrmMultigraph& grm) {
    if (!grm.is_cyclic()) throw precondition_error("cyclic mechanism required");

    auto solution = solve_routing_vector(r, sigma, r_target, sigma_target, grm);
    if (!solution) return {std::nullopt, ReachReason::not_linearly_equivalent};

    // Canonical vector: the stopping remainder admits exactly one routing
    // vector, so phi is already right outside the leaf components; inside
    // each one, shift to the minimal nonnegative representative and add one
    // full turn when the target restriction is recurrent there.
    Config phi = solution->phi;
    for (const LeafContext& ctx : leaf_contexts(grm)) {
        Int k_star;
        bool first = true;
        for (int v : ctx.block)
            for (int f : grm.faces_of(v)) {
                Int needed = ceil_div(-phi.coeff(f), ctx.period.coeff(v));
                if (first || needed > k_star) k_star = needed;
                first = false;
            }
        if (first) continue;
        if (recurrent_conditions(r_target, sigma_target, grm, ctx.in_block))
            k_star += 1;
        if (k_star != 0) phi = combine(phi, k_star, ctx.turn);
    }
    if (!is_nonnegative(phi)) return {std::nullopt, ReachReason::no_nonnegative_vector};

    if (legal_with_vector_cyclic(r, sigma, phi, r_target, sigma_target, grm))
        return {phi, ReachReason::reachable};
    return {std::nullopt, ReachReason::vector_not_legal};
}

bool brute_force_reach(const LrgrmmInstance& instance, long long max_states,
                       long long max_depth) {
    const GrmMultigraph& grm = instance.grm;
    const Multigraph& gv = grm.vertex_graph();

    auto key = [](const Config& r, const Config& sigma) {
        return r.to_string() + "|" + sigma.to_string();
    };
    std::string target = key(instance.r_target, instance.sigma_target);

    std::unordered_set<std::string> seen;
    std::deque<std::pair<Config, Config>> frontier;
    frontier.emplace_back(instance.r, instance.sigma);
    seen.insert(key(instance.r, instance.sigma));
    if (seen.count(target)) return true;

    long long depth = 0;
    while (!frontier.empty()) {
        if (depth++ > max_depth)
            throw bound_exceeded_error("reachability search exceeded depth bound");
        size_t layer = frontier.size();
        for (size_t i = 0; i < layer; ++i) {
            auto [r, sigma] = std::move(frontier.front());
            frontier.pop_front();
            for (int f = 0; f < grm.face_count(); ++f) {
                int a = grm.face_tail(f);
                if (r.coeff(a) < 1 || sigma.coeff(gv.tail(a)) < 1) continue;
                Config r2 = r + Config::unit(gv.arc_universe(), grm.face_head(f)) -
                            Config::unit(gv.arc_universe(), a);
                Config sigma2 = sigma +
                                Config::unit(gv.vertex_universe(), gv.head(a)) -
                                Config::unit(gv.vertex_universe(), gv.tail(a));
                std::string k = key(r2, sigma2);
                if (k == target) return true;
                if (seen.insert(std::move(k)).second) {
                    if (static_cast<long long>(seen.size()) > max_states)
                        throw bound_exceeded_error(
                            "reachability search exceeded state bound");
                    frontier.emplace_back(std::move(r2), std::move(sigma2));
                }
            }
        }
    }
    return false;
}

void Sat22Formula::validate() const {
    std::vector<int> positive(variables + 1, 0), negative(variables + 1, 0);
    for (const auto& clause : clauses)
        for (int literal : clause) {
            int var = std::abs(literal);
            if (var < 1 || var > variables)
                throw precondition_error("literal " + std::to_string(literal) +
                                         " outside variable range");
            (literal > 0 ? positive : negative)[var] += 1;
        }
    for (int var = 1; var <= variables; ++var)
        if (positive[var] != 2 || negative[var] != 2)
            throw precondition_error(
                "variable " + std::to_string(var) +
                " must occur exactly twice unnegated and twice negated (found " +
                std::to_string(positive[var]) + "+/" + std::to_string(negative[var]) +
                "-)");
}

bool Sat22Formula::satisfied_by(const std::vector<bool>& assignment) const {
    if (static_cast<int>(assignment.size()) != variables)
        throw precondition_error("assignment size does not match variable count");
    for (const auto& clause : clauses) {
        bool ok = false;
        for (int literal : clause) {
            bool value = assignment[std::abs(literal) - 1];
            if ((literal > 0) == value) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

LrgrmmInstance sat22_to_grm(const Sat22Formula& formula) {
    formula.validate();
    const int n = formula.variables;
    const int m = static_cast<int>(formula.clauses.size());

    // Clause indices (1-based) hosting each variable's literals, in clause order.
    std::vector<std::vector<int>> pos_clauses(n + 1), neg_clauses(n + 1);
    for (int j = 0; j < m; ++j)
        for (int literal : formula.clauses[j])
            (literal > 0 ? pos_clauses : neg_clauses)[std::abs(literal)].push_back(j + 1);

    MultigraphBuilder builder;
    auto xv = [](int i) { return "x" + std::to_string(i); };
    auto cv = [](int j) { return "c" + std::to_string(j); };
    for (int i = 1; i <= n; ++i) builder.vertex(xv(i));
    for (int j = 1; j <= m; ++j) builder.vertex(cv(j));
    builder.vertex("s").vertex("s_sat");
    for (int i = 1; i <= n; ++i)
        builder.vertex("s_x" + std::to_string(i) + "_start")
            .vertex("s_x" + std::to_string(i) + "_end");

    for (int i = 1; i <= n; ++i) {
        std::string x = xv(i), si = std::to_string(i);
        builder.arc("a_x" + si + "_start", x, "s_x" + si + "_start");
        builder.arc("a_x" + si + "_p1", x, cv(pos_clauses[i][0]));
        builder.arc("a_x" + si + "_p2", x, cv(pos_clauses[i][1]));
        builder.arc("a_x" + si + "_n1", x, cv(neg_clauses[i][0]));
        builder.arc("a_x" + si + "_n2", x, cv(neg_clauses[i][1]));
        builder.arc("a_x" + si + "_end", x, "s_x" + si + "_end");
    }
    for (int j = 1; j <= m; ++j) {
        std::string sj = std::to_string(j);
        builder.arc("a_c" + sj + "_sat", cv(j), "s_sat");
        builder.arc("a_c" + sj + "_s", cv(j), "s");
    }
    Multigraph gv = builder.build();

    std::vector<std::string> face_names;
    std::vector<int> face_tails, face_heads;
    auto face = [&](const std::string& name, const std::string& tail,
                    const std::string& head) {
        face_names.push_back(name);
        face_tails.push_back(gv.arc_index(tail));
        face_heads.push_back(gv.arc_index(head));
    };
    for (int i = 1; i <= n; ++i) {
        std::string si = std::to_string(i);
        face("f_x" + si + "_p1", "a_x" + si + "_start", "a_x" + si + "_p1");
        face("f_x" + si + "_p2", "a_x" + si + "_p1", "a_x" + si + "_p2");
        face("f_x" + si + "_p3", "a_x" + si + "_p2", "a_x" + si + "_end");
        face("f_x" + si + "_n1", "a_x" + si + "_start", "a_x" + si + "_n1");
        face("f_x" + si + "_n2", "a_x" + si + "_n1", "a_x" + si + "_n2");
        face("f_x" + si + "_n3", "a_x" + si + "_n2", "a_x" + si + "_end");
    }
    for (int j = 1; j <= m; ++j) {
        std::string sj = std::to_string(j);
        face("f_c" + sj + "_01", "a_c" + sj + "_sat", "a_c" + sj + "_s");
        face("f_c" + sj + "_11", "a_c" + sj + "_s", "a_c" + sj + "_s");
    }
    GrmMultigraph grm(std::move(gv), std::move(face_names), std::move(face_tails),
                      std::move(face_heads));
    const Multigraph& g = grm.vertex_graph();

    Config r = Config::zero(g.arc_universe());
    Config r_target = Config::zero(g.arc_universe());
    Config sigma = Config::zero(g.vertex_universe());
    Config sigma_target = Config::zero(g.vertex_universe());
    for (int i = 1; i <= n; ++i) {
        std::string si = std::to_string(i);
        r = r + Config::unit(g.arc_universe(), "a_x" + si + "_start");
        r_target = r_target + Config::unit(g.arc_universe(), "a_x" + si + "_end");
        sigma = sigma + Config::unit(g.vertex_universe(), xv(i), 3);
        sigma_target =
            sigma_target + Config::unit(g.vertex_universe(), "s_x" + si + "_start");
    }
    for (int j = 1; j <= m; ++j) {
        std::string sj = std::to_string(j);
        r = r + Config::unit(g.arc_universe(), "a_c" + sj + "_sat");
        r_target = r_target + Config::unit(g.arc_universe(), "a_c" + sj + "_s");
    }
    sigma_target = sigma_target + Config::unit(g.vertex_universe(), "s_sat", m) +
                   Config::unit(g.vertex_universe(), "s", 2 * n - m);

    return LrgrmmInstance{std::move(grm), std::move(r), std::move(sigma),
                          std::move(r_target), std::move(sigma_target)};
}

Config assignment_to_routing_vector(const Sat22Formula& formula,
                                    const std::vector<bool>& assignment,
                                    const LrgrmmInstance& instance) {
    if (!formula.satisfied_by(assignment))
        throw precondition_error("assignment does not satisfy the formula");

    const GrmMultigraph& grm = instance.grm;
    const auto& faces = grm.face_universe();
    Config phi = Config::zero(faces);

    // Count the particles each clause vertex receives under the assignment.
    const int m = static_cast<int>(formula.clauses.size());
    std::vector<int> arriving(m, 0);
    for (int j = 0; j < m; ++j)
        for (int literal : formula.clauses[j])
            if ((literal > 0) == assignment[std::abs(literal) - 1]) ++arriving[j];

    for (int i = 1; i <= formula.variables; ++i) {
        std::string si = std::to_string(i);
        const char* side = assignment[i - 1] ? "_p" : "_n";
        for (int step = 1; step <= 3; ++step)
            phi = phi + Config::unit(faces, "f_x" + si + side + std::to_string(step));
    }
    for (int j = 1; j <= m; ++j) {
        std::string sj = std::to_string(j);
        phi = phi + Config::unit(faces, "f_c" + sj + "_01") +
              Config::unit(faces, "f_c" + sj + "_11", arriving[j - 1] - 1);
    }
    return phi;
}

} // namespace rotorkit
