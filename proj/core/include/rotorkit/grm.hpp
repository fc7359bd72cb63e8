#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "rotorkit/config.hpp"
#include "rotorkit/multigraph.hpp"
#include "rotorkit/rotor.hpp"
#include "rotorkit/zlinalg.hpp"

namespace rotorkit {

/// Generalized rotor mechanism: a vertex graph coupled with per-vertex face
/// graphs over its out-arc sets. The face graph shares the vertex graph's
/// arc universe, so arc configs act as its "particle" configs and all the
/// free-routing machinery applies to it unchanged.
class GrmMultigraph {
public:
    GrmMultigraph(Multigraph vertex_graph, std::vector<std::string> face_names,
                  std::vector<int> face_tail_arc, std::vector<int> face_head_arc);

    const Multigraph& vertex_graph() const { return gv_; }

    /// Arcs-as-vertices, faces-as-arcs.
    const Multigraph& face_graph() const { return ga_; }

    int face_count() const { return ga_.arc_count(); }
    const UniverseHandle& face_universe() const { return ga_.arc_universe(); }

    int face_tail(int f) const { return ga_.tail(f); }
    int face_head(int f) const { return ga_.head(f); }
    int owner(int f) const { return gv_.tail(ga_.tail(f)); }

    /// Faces owned by v, in declaration order.
    const std::vector<int>& faces_of(int v) const { return faces_of_.at(v); }

    /// tail^A extended to formal sums of faces.
    Config tail_arcs(const Config& phi) const;

    /// Cyclic refinement: every per-vertex face graph is one directed cycle
    /// visiting each out-arc once; its successor map is theta.
    bool is_cyclic() const { return theta_.has_value(); }
    int theta(int arc) const;
    RotorMultigraph to_rotor() const;

private:
    Multigraph gv_;
    Multigraph ga_;
    std::vector<std::vector<int>> faces_of_;
    std::optional<std::vector<int>> theta_;
};

/// Cyclic GRM of a rotor multigraph: one face per arc, from the arc to its
/// rotor successor.
GrmMultigraph build_cyclic_grm(const RotorMultigraph& rg);

/// The routing operator applied to a face vector: change of the arc
/// configuration and of the particle configuration.
std::pair<Config, Config> apply_routing_operator(const Config& phi,
                                                 const GrmMultigraph& grm);

/// Matrix of the routing operator: arc rows, then vertex rows; face columns.
IntMatrix routing_operator_matrix(const GrmMultigraph& grm);

struct RoutingVectorSolution {
    Config phi;                 ///< particular routing vector
    std::vector<Config> kernel; ///< basis of face vectors acting trivially
};

/// Solves (r', sigma') = (r, sigma) + L(phi) for phi over the integers;
/// nullopt iff the two pairs are not linearly equivalent.
std::optional<RoutingVectorSolution> solve_routing_vector(
    const Config& r, const Config& sigma, const Config& r_target,
    const Config& sigma_target, const GrmMultigraph& grm);

/// Legal reachability with the given routing vector in a general GRM:
/// simultaneous legal free routings of arcs and particles whose couplings
/// agree (the tails of the arc-routing traces must guide the particles).
bool legal_with_vector_grm(const Config& r, const Config& sigma, const Config& phi,
                           const Config& r_target, const Config& sigma_target,
                           const GrmMultigraph& grm);

/// Tails of the traces of a legal cyclic arc routing, read off directly
/// from phi and the target arc configuration.
std::set<int> cyclic_trace_arcs(const Config& phi, const Config& r_target,
                                const GrmMultigraph& grm);

/// Self-contained legality test for cyclic GRMs (no trace probing).
bool legal_with_vector_cyclic(const Config& r, const Config& sigma,
                              const Config& phi, const Config& r_target,
                              const Config& sigma_target, const GrmMultigraph& grm);

/// The rotor-configuration corollary: with rho, rho' rotor configurations
/// and nonnegative particle configs, legality reduces to one guiding test.
bool legal_rotor_corollary(const Config& rho, const Config& sigma, const Config& phi,
                           const Config& rho_target, const Config& sigma_target,
                           const GrmMultigraph& grm);

/// Full-turn homomorphism: p_v full turns of the mechanism at every v.
Config full_turn(const Config& p, const GrmMultigraph& grm);

} // namespace rotorkit
