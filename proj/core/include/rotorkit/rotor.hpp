#pragma once

#include <utility>
#include <vector>

#include "rotorkit/config.hpp"
#include "rotorkit/errors.hpp"
#include "rotorkit/multigraph.hpp"

namespace rotorkit {

/// Multigraph with a rotor ordering: theta restricted to the out-arcs of
/// each vertex is one cycle covering them. Since every arc leaves a
/// non-sink vertex, theta is total on arcs.
class RotorMultigraph {
public:
    RotorMultigraph(Multigraph graph, std::vector<int> theta);

    /// Builds theta from per-vertex cyclic arc lists (each list must equal
    /// the vertex's out-arc set; theta maps each entry to the next, the last
    /// to the first).
    static RotorMultigraph from_cycles(Multigraph graph,
                                       const std::vector<std::vector<int>>& cycles);

    const Multigraph& graph() const { return graph_; }
    int theta(int arc) const { return theta_.at(arc); }
    int theta_inverse(int arc) const { return theta_inv_.at(arc); }
    const std::vector<int>& theta_map() const { return theta_; }

private:
    Multigraph graph_;
    std::vector<int> theta_;
    std::vector<int> theta_inv_;
};

/// One out-arc per non-sink vertex (-1 on sinks).
class RotorConfiguration {
public:
    RotorConfiguration(const Multigraph& g, std::vector<int> arc_at);

    /// From an arc formal sum that has exactly one arc of coefficient 1 per
    /// non-sink vertex.
    static RotorConfiguration from_config(const Multigraph& g, const Config& arcs);

    int arc_at(int v) const { return arc_at_.at(v); }
    const std::vector<int>& assignment() const { return arc_at_; }

    Config to_config(const Multigraph& g) const;

    bool operator==(const RotorConfiguration& o) const { return arc_at_ == o.arc_at_; }
    bool operator!=(const RotorConfiguration& o) const { return !(*this == o); }

private:
    std::vector<int> arc_at_;
};

/// Nonnegative arc counts; conservation and rotor conditions are checked by
/// verify_flow, not stored.
class Flow {
public:
    explicit Flow(Config values);
    const Config& values() const { return values_; }
    Int at(int arc) const { return values_.coeff(arc); }

private:
    Config values_;
};

enum class StepConvention {
    move_then_turn, ///< particle along rho(v), then rho(v) advances
    turn_then_move, ///< rho(v) advances, then particle along the new arc
};

/// One rotor-routing operation at v. Requires a particle on v and v non-sink.
std::pair<RotorConfiguration, Config> rotor_step(const RotorMultigraph& rg,
                                                 const RotorConfiguration& rho,
                                                 const Config& sigma, int v,
                                                 StepConvention convention =
                                                     StepConvention::move_then_turn);

/// Deterministic choice among the currently routable vertices.
enum class RoutingPolicy { canonical_min, reverse_canonical, fifo };

struct WalkResult {
    RotorConfiguration rotor;
    Config particles;
    Flow run;                 ///< arc traversal counts
    Config steps_per_vertex;  ///< routing operations per vertex
    long long steps = 0;
};

inline constexpr long long kDefaultWalkCap = 10'000'000;

/// Runs a maximal rotor walk on a stopping graph. The abelian property
/// makes the result policy-independent; exploration time can still be
/// exponential, hence the cap.
WalkResult maximal_rotor_walk(const RotorMultigraph& rg,
                              const RotorConfiguration& rho, const Config& sigma,
                              RoutingPolicy policy = RoutingPolicy::canonical_min,
                              long long step_cap = kDefaultWalkCap);

/// Conservation at every vertex plus the rotor interval condition around
/// every non-sink rotor cycle.
bool verify_flow(const RotorMultigraph& rg, const Flow& f,
                 const RotorConfiguration& rho, const Config& sigma,
                 const Config& sigma_final);

/// Final rotor configuration encoded by a flow: unchanged where the flow is
/// constant on the out-arcs, else the first strict drop along theta.
RotorConfiguration rotor_config_from_flow(const RotorMultigraph& rg, const Flow& f,
                                          const RotorConfiguration& rho);

/// A flow is the run iff the last-exit arcs of its active vertices contain
/// no directed cycle.
bool verify_run(const RotorMultigraph& rg, const Flow& f,
                const RotorConfiguration& rho, const Config& sigma,
                const Config& sigma_final);

/// Recurrence of (rho, sigma) on a strongly connected rotor multigraph:
/// every directed cycle among the arcs theta^{-1}(rho(v)) carries a particle
/// on some arc head.
bool is_recurrent_standard(const RotorMultigraph& rg, const RotorConfiguration& rho,
                           const Config& sigma);

} // namespace rotorkit
