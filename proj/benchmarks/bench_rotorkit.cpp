#include <benchmark/benchmark.h>

#include <random>

#include <rotorkit/grm.hpp>
#include <rotorkit/reachability.hpp>
#include <rotorkit/rotor.hpp>
#include <rotorkit/zlinalg.hpp>

using namespace rotorkit;

namespace {

RotorMultigraph make_g2() {
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

void bm_rotor_walk(benchmark::State& state) {
    RotorMultigraph rg = make_g2();
    const Multigraph& g = rg.graph();
    Config sigma = Config::unit(g.vertex_universe(), "v3", state.range(0));
    RotorConfiguration rho = RotorConfiguration::from_config(
        g, Config::parse(g.arc_universe(), "a24=1,a34=1,a42=1"));
    for (auto _ : state) {
        WalkResult walk = maximal_rotor_walk(rg, rho, sigma);
        benchmark::DoNotOptimize(walk.steps);
    }
}
BENCHMARK(bm_rotor_walk)->Arg(10)->Arg(100)->Arg(1000);

void bm_smith_normal_form(benchmark::State& state) {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> val(-9, 9);
    const int n = static_cast<int>(state.range(0));
    IntMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a.at(i, j) = val(rng);
    for (auto _ : state) {
        SmithForm snf = smith_normal_form(a);
        benchmark::DoNotOptimize(snf.rank);
    }
}
BENCHMARK(bm_smith_normal_form)->Arg(4)->Arg(8)->Arg(12);

void bm_legal_reach_cyclic(benchmark::State& state) {
    RotorMultigraph rg = make_g2();
    GrmMultigraph grm = build_cyclic_grm(rg);
    const Multigraph& g = grm.vertex_graph();
    Int scale(state.range(0));
    Config r = Config::parse(g.arc_universe(), "a24=1,a34=1,a42=1");
    Config sigma = Config::parse(g.vertex_universe(), "v2=1,v3=2,v4=1") * scale;
    WalkResult walk = maximal_rotor_walk(
        rg, RotorConfiguration::from_config(g, r), sigma);
    Config r_end = walk.rotor.to_config(g);
    for (auto _ : state) {
        ReachOutcome outcome = legal_reach_cyclic(r, sigma, r_end, walk.particles, grm);
        benchmark::DoNotOptimize(outcome.reachable());
    }
}
BENCHMARK(bm_legal_reach_cyclic)->Arg(1)->Arg(8)->Arg(64);

void bm_sat22_reduction(benchmark::State& state) {
    Sat22Formula formula;
    formula.variables = 3;
    formula.clauses = {{1, 2, 3}, {1, -2, -3}, {-1, 2, -3}, {-1, -2, 3}};
    for (auto _ : state) {
        LrgrmmInstance instance = sat22_to_grm(formula);
        benchmark::DoNotOptimize(instance.grm.face_count());
    }
}
BENCHMARK(bm_sat22_reduction);

} // namespace

BENCHMARK_MAIN();
