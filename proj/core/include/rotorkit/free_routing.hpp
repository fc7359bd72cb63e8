#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "rotorkit/config.hpp"
#include "rotorkit/errors.hpp"
#include "rotorkit/multigraph.hpp"

namespace rotorkit {

/// Boundary operator: sum of r_a * (head(a) - tail(a)). Moving particles
/// along the arcs of r.
Config boundary(const Config& r, const Multigraph& g);

/// Boundary section s with basepoints chosen per weak component:
/// s(v) represents an undirected path from the component basepoint to v,
/// extended as a homomorphism. Satisfies boundary(s(sigma)) == sigma
/// whenever sigma has degree zero.
Config section_apply(const Multigraph& g, const std::vector<int>& basepoints,
                     const Config& sigma);

/// Default basepoints: smallest vertex of each weak component.
Config section_apply(const Multigraph& g, const Config& sigma);

/// Kirchhoff's law at every vertex; equivalent to boundary(r) == 0.
bool is_cycle(const Config& r, const Multigraph& g);

/// A routing vector witnessing sigma ~ sigma_target under linear routing,
/// or nullopt when the per-component degrees differ.
std::optional<Config> linear_reachable(const Config& sigma,
                                       const Config& sigma_target,
                                       const Multigraph& g);

/// Vertices that are active in r but end with no particle: particles may
/// pass through them but must not terminate there.
std::set<int> transitory_vertices(const Config& r, const Config& sigma_target,
                                  const Multigraph& g);

/// Escape map out of the transitory region: one arc of r per transitory
/// vertex, acyclic, leading to non-transitory vertices.
struct GuidingSet {
    std::map<int, int> exit_arcs; ///< transitory vertex -> arc
    Config routing_vector;
    Config target;

    std::set<int> arcs() const {
        std::set<int> out;
        for (const auto& [v, a] : exit_arcs) out.insert(a);
        return out;
    }
};

/// Checks the two guiding conditions for the arc set R: R contains only
/// elements of r, and every transitory vertex has a directed path within R
/// to a non-transitory vertex.
bool is_guiding(const std::set<int>& arc_set, const Config& r,
                const Config& sigma, const Config& sigma_target,
                const Multigraph& g);

std::optional<GuidingSet> find_guiding_tree(const Config& r,
                                            const Config& sigma_target,
                                            const Multigraph& g);

/// Decides legal free reachability (any routing vector) and returns a legal
/// routing vector assembled from flow-weighted paths, or nullopt.
std::optional<Config> legal_vector_search(const Config& sigma,
                                          const Config& sigma_target,
                                          const Multigraph& g);

/// Decides whether a legal routing sequence with routing vector exactly r
/// exists from sigma to sigma_target. A negative r is never the vector of a
/// legal sequence, so it yields false rather than an error; an inconsistent
/// sigma_target is a caller bug and throws.
bool legal_with_vector(const Config& sigma, const Config& r,
                       const Config& sigma_target, const Multigraph& g);

struct LegalSequence {
    std::vector<int> steps; ///< arcs, in routing order
    Config start;
};

/// Thrown when the step cap is hit; carries the legal prefix built so far.
class sequence_cap_error : public bound_exceeded_error {
public:
    sequence_cap_error(std::string what, LegalSequence prefix)
        : bound_exceeded_error(std::move(what)), partial(std::move(prefix)) {}
    LegalSequence partial;
};

inline constexpr long long kDefaultStepCap = 1'000'000;

/// Greedy construction of a legal sequence with routing vector exactly r,
/// guided by the tree; deterministic via canonical arc order. Sequences can
/// be exponentially long, hence the cap.
LegalSequence extract_legal_sequence(const Config& sigma, const Config& r,
                                     const Multigraph& g, const GuidingSet& tree,
                                     long long step_cap = kDefaultStepCap);

/// All arcs that can appear last in some legal sequence with vector r.
/// Defined only for legal routings: the precondition legal_with_vector must
/// hold.
std::set<int> compute_traces(const Config& sigma, const Config& r,
                             const Config& sigma_target, const Multigraph& g);

} // namespace rotorkit
