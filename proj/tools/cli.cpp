#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <rotorkit/free_routing.hpp>
#include <rotorkit/graph_io.hpp>
#include <rotorkit/grm.hpp>
#include <rotorkit/reachability.hpp>
#include <rotorkit/rotor.hpp>
#include <rotorkit/zlinalg.hpp>

namespace rotorkit::cli {

namespace {

constexpr int kYes = 0, kNo = 1, kError = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Config literals on flags; `@path` loads a file whose newlines act as
/// separators (the flow-file format is one arc=count pair per line).
Config read_config(const UniverseHandle& universe, const std::string& arg) {
    std::string text = arg;
    if (!text.empty() && text.front() == '@') {
        text = slurp(text.substr(1));
        for (char& c : text)
            if (c == '\n' || c == '\r') c = ',';
    }
    return Config::parse(universe, text);
}

GraphFile load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open graph file '" + path + "'");
    try {
        return parse_graph(in);
    } catch (const parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

int verdict_yes(std::ostream& out, const std::string& witness_key = "",
                const Config* witness = nullptr) {
    out << "YES\n";
    if (witness && !witness->is_zero())
        out << witness_key << ": " << witness->to_string() << "\n";
    return kYes;
}

int verdict_no(std::ostream& out, const std::string& reason) {
    out << "NO\n";
    if (!reason.empty()) out << "reason: " << reason << "\n";
    return kNo;
}

struct CheckArgs {
    std::string graph_path;
    std::string from_sigma, to_sigma;
    std::string from_r, to_r;
    std::string vector_arg;
    bool has_vector = false;
};

int run_check_linear(const CheckArgs& args, std::ostream& out) {
    GraphFile file = load_graph(args.graph_path);
    const Multigraph& g = file.graph;
    if (!args.from_r.empty() || !args.to_r.empty()) {
        GrmMultigraph grm = file.to_grm();
        Config r = read_config(g.arc_universe(), args.from_r);
        Config r_end = read_config(g.arc_universe(), args.to_r);
        Config sigma = read_config(g.vertex_universe(), args.from_sigma);
        Config sigma_end = read_config(g.vertex_universe(), args.to_sigma);
        auto solution = solve_routing_vector(r, sigma, r_end, sigma_end, grm);
        if (!solution) return verdict_no(out, "not-linearly-equivalent");
        return verdict_yes(out, "witness", &solution->phi);
    }
    Config sigma = read_config(g.vertex_universe(), args.from_sigma);
    Config sigma_end = read_config(g.vertex_universe(), args.to_sigma);
    auto witness = linear_reachable(sigma, sigma_end, g);
    if (!witness) return verdict_no(out, "degree-mismatch");
    return verdict_yes(out, "witness", &*witness);
}

int run_check_legal(const CheckArgs& args, std::ostream& out) {
    GraphFile file = load_graph(args.graph_path);
    const Multigraph& g = file.graph;
    if (!args.from_r.empty() || !args.to_r.empty()) {
        GrmMultigraph grm = file.to_grm();
        Config r = read_config(g.arc_universe(), args.from_r);
        Config r_end = read_config(g.arc_universe(), args.to_r);
        Config sigma = read_config(g.vertex_universe(), args.from_sigma);
        Config sigma_end = read_config(g.vertex_universe(), args.to_sigma);
        if (args.has_vector) {
            Config phi = read_config(grm.face_universe(), args.vector_arg);
            bool ok = grm.is_cyclic()
                          ? legal_with_vector_cyclic(r, sigma, phi, r_end, sigma_end, grm)
                          : legal_with_vector_grm(r, sigma, phi, r_end, sigma_end, grm);
            return ok ? verdict_yes(out) : verdict_no(out, "vector-not-legal");
        }
        if (!grm.is_cyclic())
            throw error("legal reachability without a vector is NP-hard on general "
                        "mechanisms; use 'oracle reach' or pass --vector");
        ReachOutcome outcome = legal_reach_cyclic(r, sigma, r_end, sigma_end, grm);
        if (!outcome.reachable()) return verdict_no(out, to_string(outcome.reason));
        return verdict_yes(out, "witness", &*outcome.witness);
    }
    Config sigma = read_config(g.vertex_universe(), args.from_sigma);
    Config sigma_end = read_config(g.vertex_universe(), args.to_sigma);
    if (args.has_vector) {
        Config r = read_config(g.arc_universe(), args.vector_arg);
        Config expected = sigma + boundary(r, g);
        if (expected != sigma_end) return verdict_no(out, "vector-inconsistent");
        bool ok = legal_with_vector(sigma, r, sigma_end, g);
        return ok ? verdict_yes(out) : verdict_no(out, "vector-not-legal");
    }
    auto witness = legal_vector_search(sigma, sigma_end, g);
    if (!witness) return verdict_no(out, "no-legal-routing");
    return verdict_yes(out, "witness", &*witness);
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"rotorkit - linear and legal reachability for rotor routing"};
    app.require_subcommand(1);

    // ---- check linear | check legal ----
    CheckArgs check_args;
    CLI::App* check = app.add_subcommand("check", "decide reachability questions");
    check->require_subcommand(1);
    auto add_check_options = [&](CLI::App* cmd) {
        cmd->add_option("--graph", check_args.graph_path, "graph file")->required();
        cmd->add_option("--from", check_args.from_sigma, "start particle config");
        cmd->add_option("--to", check_args.to_sigma, "target particle config");
        cmd->add_option("--from-r", check_args.from_r, "start arc config (mechanism mode)");
        cmd->add_option("--to-r", check_args.to_r, "target arc config (mechanism mode)");
    };
    CLI::App* check_linear = check->add_subcommand("linear", "linear equivalence");
    add_check_options(check_linear);
    CLI::App* check_legal = check->add_subcommand("legal", "legal reachability");
    add_check_options(check_legal);
    check_legal
        ->add_option("--vector", check_args.vector_arg,
                     "decide for this routing vector exactly")
        ->trigger_on_parse();

    // ---- simulate ----
    std::string sim_graph, sim_sigma, sim_rho, sim_policy = "min";
    long long sim_cap = kDefaultWalkCap;
    CLI::App* simulate = app.add_subcommand("simulate", "run a maximal rotor walk");
    simulate->add_option("--graph", sim_graph)->required();
    simulate->add_option("--sigma", sim_sigma, "particles")->required();
    simulate->add_option("--rho", sim_rho, "rotor configuration")->required();
    simulate->add_option("--policy", sim_policy, "min | max | fifo");
    simulate->add_option("--step-cap", sim_cap);

    // ---- certify flow|run ----
    std::string cert_graph, cert_flow, cert_rho, cert_sigma, cert_sigma1;
    CLI::App* certify = app.add_subcommand("certify", "verify flow/run certificates");
    certify->require_subcommand(1);
    CLI::App* certify_flow = certify->add_subcommand("flow", "conservation + rotor conditions");
    CLI::App* certify_run = certify->add_subcommand("run", "flow + acyclic last exits");
    for (CLI::App* cmd : {certify_flow, certify_run}) {
        cmd->add_option("--graph", cert_graph)->required();
        cmd->add_option("--flow", cert_flow, "arc counts (literal or @file)")->required();
        cmd->add_option("--rho", cert_rho)->required();
        cmd->add_option("--sigma", cert_sigma)->required();
        cmd->add_option("--sigma1", cert_sigma1, "claimed final configuration")->required();
    }

    // ---- snf ----
    std::string snf_path;
    bool snf_full = false;
    CLI::App* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
    snf->add_option("matrix", snf_path, "matrix file (default stdin)");
    snf->add_flag("--full", snf_full, "print S and T as well");

    // ---- period ----
    std::string period_graph;
    CLI::App* period = app.add_subcommand("period", "primitive period vectors");
    period->add_option("--graph", period_graph)->required();

    // ---- arborescences ----
    std::string arb_graph, arb_roots, arb_method = "det";
    CLI::App* arb = app.add_subcommand("arborescences", "count arborescences rooted in a set");
    arb->add_option("--graph", arb_graph)->required();
    arb->add_option("--roots", arb_roots, "comma-separated vertex ids")->required();
    arb->add_option("--method", arb_method, "det | enum");

    // ---- reduce sat22 ----
    std::string red_cnf, red_out;
    CLI::App* reduce = app.add_subcommand("reduce", "hardness reductions");
    reduce->require_subcommand(1);
    CLI::App* reduce_sat = reduce->add_subcommand(
        "sat22", "3-SAT-(2,2) to legal reachability in a mechanism");
    reduce_sat->add_option("--cnf", red_cnf, "DIMACS file")->required();
    reduce_sat->add_option("-o,--output", red_out, "graph file to write")->required();

    // ---- oracle reach ----
    std::string or_graph, or_from_r, or_from_sigma, or_to_r, or_to_sigma;
    long long or_states = 200000, or_depth = 1000000;
    CLI::App* oracle = app.add_subcommand("oracle", "exhaustive search oracles");
    oracle->require_subcommand(1);
    CLI::App* oracle_reach = oracle->add_subcommand("reach", "BFS legal reachability");
    oracle_reach->add_option("--graph", or_graph)->required();
    oracle_reach->add_option("--from-r", or_from_r)->required();
    oracle_reach->add_option("--from-sigma", or_from_sigma)->required();
    oracle_reach->add_option("--to-r", or_to_r)->required();
    oracle_reach->add_option("--to-sigma", or_to_sigma)->required();
    oracle_reach->add_option("--max-states", or_states);
    oracle_reach->add_option("--max-depth", or_depth);

    // ---- recurrent ----
    std::string rec_graph, rec_sigma, rec_rho, rec_r;
    CLI::App* recurrent = app.add_subcommand("recurrent", "recurrence of a configuration");
    recurrent->add_option("--graph", rec_graph)->required();
    recurrent->add_option("--sigma", rec_sigma)->required();
    recurrent->add_option("--rho", rec_rho, "rotor configuration (standard walk test)");
    recurrent->add_option("--r", rec_r, "arc configuration (cyclic mechanism test)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kYes : kError;
    }

    try {
        if (check_linear->parsed()) return run_check_linear(check_args, out);
        if (check_legal->parsed()) {
            check_args.has_vector = check_legal->count("--vector") > 0;
            return run_check_legal(check_args, out);
        }

        if (simulate->parsed()) {
            GraphFile file = load_graph(sim_graph);
            RotorMultigraph rg = file.to_rotor();
            const Multigraph& g = rg.graph();
            Config sigma = read_config(g.vertex_universe(), sim_sigma);
            RotorConfiguration rho = RotorConfiguration::from_config(
                g, read_config(g.arc_universe(), sim_rho));
            RoutingPolicy policy = RoutingPolicy::canonical_min;
            if (sim_policy == "max") policy = RoutingPolicy::reverse_canonical;
            else if (sim_policy == "fifo") policy = RoutingPolicy::fifo;
            else if (sim_policy != "min") throw error("unknown policy '" + sim_policy + "'");
            WalkResult walk = maximal_rotor_walk(rg, rho, sigma, policy, sim_cap);
            out << "sigma: " << walk.particles.to_string() << "\n";
            out << "rho: " << walk.rotor.to_config(g).to_string() << "\n";
            out << "run: " << walk.run.values().to_string() << "\n";
            out << "steps: " << walk.steps << "\n";
            out << "steps_per_vertex: " << walk.steps_per_vertex.to_string() << "\n";
            return kYes;
        }

        if (certify_flow->parsed() || certify_run->parsed()) {
            GraphFile file = load_graph(cert_graph);
            RotorMultigraph rg = file.to_rotor();
            const Multigraph& g = rg.graph();
            Flow flow(read_config(g.arc_universe(), cert_flow));
            RotorConfiguration rho = RotorConfiguration::from_config(
                g, read_config(g.arc_universe(), cert_rho));
            Config sigma = read_config(g.vertex_universe(), cert_sigma);
            Config sigma1 = read_config(g.vertex_universe(), cert_sigma1);
            bool ok = certify_run->parsed()
                          ? verify_run(rg, flow, rho, sigma, sigma1)
                          : verify_flow(rg, flow, rho, sigma, sigma1);
            return ok ? verdict_yes(out)
                      : verdict_no(out, certify_run->parsed() ? "not-a-run" : "not-a-flow");
        }

        if (snf->parsed()) {
            IntMatrix a;
            if (snf_path.empty()) {
                a = read_matrix(std::cin);
            } else {
                std::ifstream in(snf_path);
                if (!in) throw error("cannot open '" + snf_path + "'");
                a = read_matrix(in);
            }
            SmithForm form = smith_normal_form(a);
            if (snf_full) {
                out << "S:\n";
                write_matrix(out, form.s);
                out << "D:\n";
            }
            write_matrix(out, form.d);
            if (snf_full) {
                out << "T:\n";
                write_matrix(out, form.t);
            }
            return kYes;
        }

        if (period->parsed()) {
            GraphFile file = load_graph(period_graph);
            PeriodBasis basis = primitive_period_vectors(file.graph);
            out << "count: " << basis.size() << "\n";
            for (size_t i = 0; i < basis.size(); ++i)
                out << "p" << i << ": " << basis[i].vector.to_string() << "\n";
            return kYes;
        }

        if (arb->parsed()) {
            GraphFile file = load_graph(arb_graph);
            std::set<int> roots;
            std::istringstream tokens(arb_roots);
            std::string id;
            while (std::getline(tokens, id, ','))
                if (!id.empty()) roots.insert(file.graph.vertex_index(id));
            Int count;
            if (arb_method == "enum")
                count = enumerate_arborescences(file.graph, roots);
            else if (arb_method == "det")
                count = arborescence_count(file.graph, roots);
            else
                throw error("unknown method '" + arb_method + "'");
            out << "count: " << count << "\n";
            return kYes;
        }

        if (reduce_sat->parsed()) {
            std::ifstream in(red_cnf);
            if (!in) throw error("cannot open '" + red_cnf + "'");
            Sat22Formula formula = parse_sat22(in);
            LrgrmmInstance instance = sat22_to_grm(formula);

            GraphFile file{instance.grm.vertex_graph(), {}, {}, {}, std::nullopt};
            for (int f = 0; f < instance.grm.face_count(); ++f) {
                file.face_names.push_back(instance.grm.face_universe()->name(f));
                file.face_tail.push_back(instance.grm.face_tail(f));
                file.face_head.push_back(instance.grm.face_head(f));
            }
            std::ofstream graph_out(red_out);
            if (!graph_out) throw error("cannot write '" + red_out + "'");
            serialize_graph(graph_out, file);

            out << "graph: " << red_out << "\n";
            out << "from-r: " << instance.r.to_string() << "\n";
            out << "from-sigma: " << instance.sigma.to_string() << "\n";
            out << "to-r: " << instance.r_target.to_string() << "\n";
            out << "to-sigma: " << instance.sigma_target.to_string() << "\n";
            return kYes;
        }

        if (oracle_reach->parsed()) {
            GraphFile file = load_graph(or_graph);
            GrmMultigraph grm = file.to_grm();
            const Multigraph& g = grm.vertex_graph();
            LrgrmmInstance instance{grm,
                                    read_config(g.arc_universe(), or_from_r),
                                    read_config(g.vertex_universe(), or_from_sigma),
                                    read_config(g.arc_universe(), or_to_r),
                                    read_config(g.vertex_universe(), or_to_sigma)};
            bool reached = brute_force_reach(instance, or_states, or_depth);
            return reached ? verdict_yes(out) : verdict_no(out, "exhausted");
        }

        if (recurrent->parsed()) {
            GraphFile file = load_graph(rec_graph);
            if (!rec_rho.empty() && !rec_r.empty())
                throw error("pass either --rho or --r, not both");
            if (rec_rho.empty() && rec_r.empty())
                throw error("one of --rho or --r is required");
            const Multigraph& g = file.graph;
            Config sigma = read_config(g.vertex_universe(), rec_sigma);
            bool ok;
            if (!rec_rho.empty()) {
                RotorMultigraph rg = file.to_rotor();
                ok = is_recurrent_standard(rg,
                                           RotorConfiguration::from_config(
                                               g, read_config(g.arc_universe(), rec_rho)),
                                           sigma);
            } else {
                GrmMultigraph grm = file.to_grm();
                ok = is_recurrent_cyclic(read_config(g.arc_universe(), rec_r), sigma, grm);
            }
            return ok ? verdict_yes(out) : verdict_no(out, "not-recurrent");
        }

        err << "error: no subcommand\n";
        return kError;
    } catch (const bound_exceeded_error& e) {
        out << "ERROR\n";
        out << "reason: " << e.what() << "\n";
        return kError;
    } catch (const error& e) {
        out << "ERROR\n";
        out << "reason: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
}

} // namespace rotorkit::cli
