#pragma once

#include <array>
#include <optional>
#include <vector>

#include "rotorkit/config.hpp"
#include "rotorkit/grm.hpp"

namespace rotorkit {

/// A legal-reachability question: does (r, sigma) reach (r_target,
/// sigma_target) by some legal routing sequence in the mechanism?
struct LrgrmmInstance {
    GrmMultigraph grm;
    Config r;
    Config sigma;
    Config r_target;
    Config sigma_target;
};

/// Basis of the face vectors acting trivially on a cyclic mechanism: one
/// full-turn vector per non-sink leaf component. Empty on stopping graphs,
/// where routing vectors are unique.
std::vector<Config> kernel_basis_cyclic(const GrmMultigraph& grm);

/// Shifts phi by full-turn kernel vectors, one multiple per leaf component,
/// to the smallest nonnegative representative. Faces outside leaf
/// components cannot be shifted; nullopt if any of those is negative.
std::optional<Config> minimal_nonneg_vector(const Config& phi,
                                            const GrmMultigraph& grm);

/// Recurrence of (r, sigma) on a strongly connected cyclic mechanism:
/// a full turn everywhere routes legally back to (r, sigma). Evaluated by
/// the target-only conditions this reduces to.
bool is_recurrent_cyclic(const Config& r, const Config& sigma,
                         const GrmMultigraph& grm);

/// Complete decision for strongly connected cyclic mechanisms: tests the
/// one canonical vector (minimal nonnegative, plus a full turn when the
/// target is recurrent) and returns it as witness, or nullopt.
std::optional<Config> legal_reach_strongly_connected(const Config& r,
                                                     const Config& sigma,
                                                     const Config& r_target,
                                                     const Config& sigma_target,
                                                     const GrmMultigraph& grm);

enum class ReachReason {
    reachable,
    not_linearly_equivalent,
    no_nonnegative_vector,
    vector_not_legal,
};

struct ReachOutcome {
    std::optional<Config> witness;
    ReachReason reason = ReachReason::reachable;

    bool reachable() const { return witness.has_value(); }
};

const char* to_string(ReachReason reason);

/// Polynomial decision of legal reachability in cyclic mechanisms: one
/// canonical vector assembled component-wise (stopping remainder first,
/// then each leaf component) decides the whole question.
ReachOutcome legal_reach_cyclic(const Config& r, const Config& sigma,
                                const Config& r_target, const Config& sigma_target,
                                const GrmMultigraph& grm);

inline ReachOutcome legal_reach_cyclic(const LrgrmmInstance& instance) {
    return legal_reach_cyclic(instance.r, instance.sigma, instance.r_target,
                              instance.sigma_target, instance.grm);
}

/// BFS over legal single-face steps. Sound and complete within the bounds;
/// exceeding them throws (an inconclusive outcome, distinct from false).
bool brute_force_reach(const LrgrmmInstance& instance, long long max_states = 200000,
                       long long max_depth = 1000000);

/// 3-CNF where every variable occurs exactly twice unnegated and twice
/// negated. Literals are signed 1-based variable numbers.
struct Sat22Formula {
    int variables = 0;
    std::vector<std::array<int, 3>> clauses;

    /// Throws unless the occurrence invariant holds.
    void validate() const;

    bool satisfied_by(const std::vector<bool>& assignment) const;
};

/// The hardness reduction: clause and variable gadgets wired around a core
/// bipartite graph; the instance is reachable iff the formula is
/// satisfiable.
LrgrmmInstance sat22_to_grm(const Sat22Formula& formula);

/// Routing vector realizing a satisfying assignment on the reduced
/// instance; throws if the assignment does not satisfy the formula.
Config assignment_to_routing_vector(const Sat22Formula& formula,
                                    const std::vector<bool>& assignment,
                                    const LrgrmmInstance& instance);

} // namespace rotorkit
