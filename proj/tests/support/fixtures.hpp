#pragma once

// Shared graph fixtures used across the test suites. g1/g2 are the two
// running rotor multigraphs; the small chain/loop graphs cover the legality
// counterexamples; grm_* are the coupled-mechanism fixtures.

#include <rotorkit/config.hpp>
#include <rotorkit/grm.hpp>
#include <rotorkit/multigraph.hpp>
#include <rotorkit/rotor.hpp>

namespace fixtures {

using namespace rotorkit;

/// Strongly connected, sinkless, 3 vertices of out- and in-degree 3.
/// Rotor order per vertex: a01 -> a01p -> a02 -> a01, etc.
inline RotorMultigraph make_g1() {
    Multigraph g = MultigraphBuilder()
                       .vertex("v0")
                       .vertex("v1")
                       .vertex("v2")
                       .arc("a01", "v0", "v1")
                       .arc("a01p", "v0", "v1")
                       .arc("a02", "v0", "v2")
                       .arc("a12", "v1", "v2")
                       .arc("a12p", "v1", "v2")
                       .arc("a10", "v1", "v0")
                       .arc("a20", "v2", "v0")
                       .arc("a20p", "v2", "v0")
                       .arc("a21", "v2", "v1")
                       .build();
    std::vector<std::vector<int>> cycles = {
        {g.arc_index("a01"), g.arc_index("a01p"), g.arc_index("a02")},
        {g.arc_index("a12"), g.arc_index("a12p"), g.arc_index("a10")},
        {g.arc_index("a20"), g.arc_index("a20p"), g.arc_index("a21")},
    };
    return RotorMultigraph::from_cycles(std::move(g), cycles);
}

/// Stopping, two sinks s0/s1. Vertex and arc declaration order matches the
/// routing-operator matrix layout used by the golden diophantine test.
inline RotorMultigraph make_g2() {
    Multigraph g = MultigraphBuilder()
                       .vertex("s0")
                       .vertex("s1")
                       .vertex("v2")
                       .vertex("v3")
                       .vertex("v4")
                       .arc("a20", "v2", "s0")
                       .arc("a21", "v2", "s1")
                       .arc("a23", "v2", "v3")
                       .arc("a24", "v2", "v4")
                       .arc("a32", "v3", "v2")
                       .arc("a34", "v3", "v4")
                       .arc("a40", "v4", "s0")
                       .arc("a41", "v4", "s1")
                       .arc("a42", "v4", "v2")
                       .arc("a43", "v4", "v3")
                       .build();
    std::vector<std::vector<int>> cycles = {
        {g.arc_index("a20"), g.arc_index("a21"), g.arc_index("a23"), g.arc_index("a24")},
        {g.arc_index("a32"), g.arc_index("a34")},
        {g.arc_index("a40"), g.arc_index("a41"), g.arc_index("a42"), g.arc_index("a43")},
    };
    return RotorMultigraph::from_cycles(std::move(g), cycles);
}

/// Three-vertex chain x -> y -> z with a negative middle target; the unique
/// routing vector 2*e1 + e2 admits no legal sequence.
inline Multigraph make_chain3() {
    return MultigraphBuilder()
        .vertex("x")
        .vertex("y")
        .vertex("z")
        .arc("e1", "x", "y")
        .arc("e2", "y", "z")
        .build();
}

/// Two vertices with a loop on top: legal routing vector whose full vector
/// is not realizable (only the prefix is).
inline Multigraph make_loop_top() {
    return MultigraphBuilder()
        .vertex("u")
        .vertex("v")
        .arc("a", "u", "v")
        .arc("b", "v", "v")
        .build();
}

/// Chain with a loop at the middle: a+c and a+b+c both route legally; the
/// unique guiding tree is {a, c}.
inline Multigraph make_chain_mid_loop() {
    return MultigraphBuilder()
        .vertex("x")
        .vertex("y")
        .vertex("z")
        .arc("a", "x", "y")
        .arc("b", "y", "y")
        .arc("c", "y", "z")
        .build();
}

/// The coupled mechanism over four vertices with per-vertex mechanisms on
/// {a1,a2,a3} and {a4,a5} (loops f11, f44, f55 included).
inline GrmMultigraph make_grm_four() {
    Multigraph g = MultigraphBuilder()
                       .vertex("u")
                       .vertex("v")
                       .vertex("x")
                       .vertex("y")
                       .arc("a1", "u", "x")
                       .arc("a2", "u", "y")
                       .arc("a3", "u", "v")
                       .arc("a4", "v", "u")
                       .arc("a5", "v", "x")
                       .build();
    std::vector<std::string> names = {"f11", "f12", "f23", "f44", "f54", "f55"};
    std::vector<int> tails = {g.arc_index("a1"), g.arc_index("a1"), g.arc_index("a2"),
                              g.arc_index("a4"), g.arc_index("a5"), g.arc_index("a5")};
    std::vector<int> heads = {g.arc_index("a1"), g.arc_index("a2"), g.arc_index("a3"),
                              g.arc_index("a4"), g.arc_index("a4"), g.arc_index("a5")};
    return GrmMultigraph(std::move(g), std::move(names), std::move(tails),
                         std::move(heads));
}

/// Two-vertex mechanism where the arc routing and the particle routing are
/// separately legal but cannot be interleaved.
inline GrmMultigraph make_grm_coupled_counterexample() {
    Multigraph g = MultigraphBuilder()
                       .vertex("u")
                       .vertex("v")
                       .arc("a1", "u", "v")
                       .arc("a2", "u", "u")
                       .build();
    std::vector<std::string> names = {"f12", "f22"};
    std::vector<int> tails = {g.arc_index("a1"), g.arc_index("a2")};
    std::vector<int> heads = {g.arc_index("a2"), g.arc_index("a2")};
    return GrmMultigraph(std::move(g), std::move(names), std::move(tails),
                         std::move(heads));
}

/// Strongly connected cyclic mechanism whose minimal nonnegative vector is
/// not legal although a full turn above it is.
inline GrmMultigraph make_grm_two_loop() {
    Multigraph g = MultigraphBuilder()
                       .vertex("u")
                       .vertex("v")
                       .arc("a", "v", "v")
                       .arc("b", "v", "u")
                       .arc("c", "u", "v")
                       .build();
    std::vector<std::string> names = {"f_a", "f_b", "f_c"};
    std::vector<int> tails = {g.arc_index("a"), g.arc_index("b"), g.arc_index("c")};
    std::vector<int> heads = {g.arc_index("b"), g.arc_index("a"), g.arc_index("c")};
    return GrmMultigraph(std::move(g), std::move(names), std::move(tails),
                         std::move(heads));
}

inline Config vertex_config(const Multigraph& g, const std::string& literal) {
    return Config::parse(g.vertex_universe(), literal);
}

inline Config arc_config(const Multigraph& g, const std::string& literal) {
    return Config::parse(g.arc_universe(), literal);
}

inline Config face_config(const GrmMultigraph& grm, const std::string& literal) {
    return Config::parse(grm.face_universe(), literal);
}

inline RotorConfiguration rotor_of(const Multigraph& g, const std::string& literal) {
    return RotorConfiguration::from_config(g, Config::parse(g.arc_universe(), literal));
}


inline const RotorMultigraph& g1() {
    static const RotorMultigraph instance = make_g1();
    return instance;
}

inline const RotorMultigraph& g2() {
    static const RotorMultigraph instance = make_g2();
    return instance;
}

inline const Multigraph& chain3() {
    static const Multigraph instance = make_chain3();
    return instance;
}

inline const Multigraph& loop_top() {
    static const Multigraph instance = make_loop_top();
    return instance;
}

inline const Multigraph& chain_mid_loop() {
    static const Multigraph instance = make_chain_mid_loop();
    return instance;
}

inline const GrmMultigraph& grm_four() {
    static const GrmMultigraph instance = make_grm_four();
    return instance;
}

inline const GrmMultigraph& grm_coupled_counterexample() {
    static const GrmMultigraph instance = make_grm_coupled_counterexample();
    return instance;
}

inline const GrmMultigraph& grm_two_loop() {
    static const GrmMultigraph instance = make_grm_two_loop();
    return instance;
}

} // namespace fixtures
