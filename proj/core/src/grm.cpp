#include "rotorkit/grm.hpp"

#include "rotorkit/errors.hpp"
#include "rotorkit/free_routing.hpp"

namespace rotorkit {

GrmMultigraph::GrmMultigraph(Multigraph vertex_graph,
                             std::vector<std::string> face_names,
                             std::vector<int> face_tail_arc,
                             std::vector<int> face_head_arc)
    : gv_(std::move(vertex_graph)),
      ga_(gv_.arc_universe(),
          make_universe(UniverseKind::face, std::move(face_names)),
          std::move(face_tail_arc), std::move(face_head_arc)) {
    faces_of_.assign(gv_.vertex_count(), {});
    for (int f = 0; f < ga_.arc_count(); ++f) {
        int tail_owner = gv_.tail(ga_.tail(f));
        int head_owner = gv_.tail(ga_.head(f));
        if (tail_owner != head_owner)
            throw precondition_error("face '" + ga_.arc_name(f) +
                                     "' joins arcs of different vertices");
        faces_of_[tail_owner].push_back(f);
    }

    // Cyclic detection: one out-face per arc, single covering cycle per vertex.
    std::vector<int> successor(gv_.arc_count(), -1);
    bool cyclic = true;
    for (int f = 0; f < ga_.arc_count() && cyclic; ++f) {
        int a = ga_.tail(f);
        if (successor[a] != -1) cyclic = false;
        successor[a] = ga_.head(f);
    }
    for (int a = 0; a < gv_.arc_count() && cyclic; ++a)
        if (successor[a] == -1) cyclic = false;
    if (cyclic && gv_.arc_count() > 0) {
        try {
            RotorMultigraph probe(gv_, successor);
            theta_ = std::move(successor);
        } catch (const precondition_error&) {
            cyclic = false;
        }
    } else if (cyclic) {
        theta_ = std::move(successor); // arcless graph is trivially cyclic
    }
}

Config GrmMultigraph::tail_arcs(const Config& phi) const {
    if (phi.universe() != face_universe())
        throw universe_mismatch_error("tail_arcs expects a face config");
    std::map<int, Int> coeffs;
    for (const auto& [f, k] : phi.coefficients()) {
        auto [it, inserted] = coeffs.emplace(ga_.tail(f), k);
        if (!inserted) it->second += k;
    }
    return Config(gv_.arc_universe(), std::move(coeffs));
}

int GrmMultigraph::theta(int arc) const {
    if (!theta_) throw precondition_error("mechanism is not cyclic");
    return theta_->at(arc);
}

RotorMultigraph GrmMultigraph::to_rotor() const {
    if (!theta_) throw precondition_error("mechanism is not cyclic");
    return RotorMultigraph(gv_, *theta_);
}

GrmMultigraph build_cyclic_grm(const RotorMultigraph& rg) {
    const Multigraph& g = rg.graph();
    std::vector<std::string> names;
    std::vector<int> tails, heads;
    names.reserve(g.arc_count());
    for (int a = 0; a < g.arc_count(); ++a) {
        names.push_back("f_" + g.arc_name(a));
        tails.push_back(a);
        heads.push_back(rg.theta(a));
    }
    return GrmMultigraph(g, std::move(names), std::move(tails), std::move(heads));
}

std::pair<Config, Config> apply_routing_operator(const Config& phi,
                                                 const GrmMultigraph& grm) {
    Config alpha = grm.tail_arcs(phi);
    return {boundary(phi, grm.face_graph()), boundary(alpha, grm.vertex_graph())};
}

IntMatrix routing_operator_matrix(const GrmMultigraph& grm) {
    const Multigraph& gv = grm.vertex_graph();
    const int m = gv.arc_count(), n = gv.vertex_count(), k = grm.face_count();
    IntMatrix l(m + n, k);
    for (int f = 0; f < k; ++f) {
        int a = grm.face_tail(f);
        l.at(grm.face_head(f), f) += 1;
        l.at(a, f) -= 1;
        l.at(m + gv.head(a), f) += 1;
        l.at(m + gv.tail(a), f) -= 1;
    }
    l.row_labels = gv.arc_universe()->names();
    for (const auto& name : gv.vertex_universe()->names()) l.row_labels.push_back(name);
    l.col_labels = grm.face_universe()->names();
    return l;
}

namespace {

void require_instance_universes(const Config& r, const Config& sigma,
                                const Config& r_target, const Config& sigma_target,
                                const GrmMultigraph& grm) {
    const Multigraph& gv = grm.vertex_graph();
    if (r.universe() != gv.arc_universe() || r_target.universe() != gv.arc_universe())
        throw universe_mismatch_error("arc configs do not belong to this mechanism");
    if (sigma.universe() != gv.vertex_universe() ||
        sigma_target.universe() != gv.vertex_universe())
        throw universe_mismatch_error("particle configs do not belong to this mechanism");
}

void require_linear_consistency(const Config& r, const Config& sigma,
                                const Config& phi, const Config& r_target,
                                const Config& sigma_target, const GrmMultigraph& grm) {
    auto [dr, dsigma] = apply_routing_operator(phi, grm);
    if (r + dr != r_target || sigma + dsigma != sigma_target)
        throw precondition_error("(r', sigma') != (r, sigma) + L(phi)");
}

} // namespace

std::optional<RoutingVectorSolution> solve_routing_vector(
    const Config& r, const Config& sigma, const Config& r_target,
    const Config& sigma_target, const GrmMultigraph& grm) {
    require_instance_universes(r, sigma, r_target, sigma_target, grm);
    const Multigraph& gv = grm.vertex_graph();
    const int m = gv.arc_count();

    std::vector<Int> b(m + gv.vertex_count(), Int(0));
    Config dr = r_target - r;
    Config dsigma = sigma_target - sigma;
    for (const auto& [a, k] : dr.coefficients()) b[a] = k;
    for (const auto& [v, k] : dsigma.coefficients()) b[m + v] = k;

    auto solution = solve_diophantine(routing_operator_matrix(grm), b);
    if (!solution) return std::nullopt;

    RoutingVectorSolution out{Config::zero(grm.face_universe()), {}};
    std::map<int, Int> coeffs;
    for (int f = 0; f < grm.face_count(); ++f)
        if (solution->particular[f] != 0) coeffs[f] = solution->particular[f];
    out.phi = Config(grm.face_universe(), std::move(coeffs));
    for (const auto& k : solution->kernel) {
        std::map<int, Int> kc;
        for (int f = 0; f < grm.face_count(); ++f)
            if (k[f] != 0) kc[f] = k[f];
        out.kernel.emplace_back(grm.face_universe(), std::move(kc));
    }
    return out;
}

bool legal_with_vector_grm(const Config& r, const Config& sigma, const Config& phi,
                           const Config& r_target, const Config& sigma_target,
                           const GrmMultigraph& grm) {
    require_instance_universes(r, sigma, r_target, sigma_target, grm);
    require_linear_consistency(r, sigma, phi, r_target, sigma_target, grm);
    if (!is_nonnegative(phi)) return false;

    const Multigraph& ga = grm.face_graph();
    const Multigraph& gv = grm.vertex_graph();
    Config alpha = grm.tail_arcs(phi);

    if (!legal_with_vector(r, phi, r_target, ga)) return false;
    if (!legal_with_vector(sigma, alpha, sigma_target, gv)) return false;

    std::set<int> trace_tails;
    for (int f : compute_traces(r, phi, r_target, ga))
        trace_tails.insert(grm.face_tail(f));
    return is_guiding(trace_tails, alpha, sigma, sigma_target, gv);
}

std::set<int> cyclic_trace_arcs(const Config& phi, const Config& r_target,
                                const GrmMultigraph& grm) {
    if (!grm.is_cyclic()) throw precondition_error("cyclic mechanism required");
    Config alpha = grm.tail_arcs(phi);
    std::set<int> out;
    for (const auto& [a, k] : alpha.coefficients()) {
        if (k < 1) continue;
        int succ = grm.theta(a);
        if (r_target.coeff(succ) > 0 || !alpha.is_element(succ)) out.insert(a);
    }
    return out;
}

bool legal_with_vector_cyclic(const Config& r, const Config& sigma,
                              const Config& phi, const Config& r_target,
                              const Config& sigma_target, const GrmMultigraph& grm) {
    if (!grm.is_cyclic()) throw precondition_error("cyclic mechanism required");
    require_instance_universes(r, sigma, r_target, sigma_target, grm);
    require_linear_consistency(r, sigma, phi, r_target, sigma_target, grm);
    if (!is_nonnegative(phi)) return false;

    const Multigraph& gv = grm.vertex_graph();
    Config alpha = grm.tail_arcs(phi);

    std::set<int> active;
    for (const auto& [a, k] : alpha.coefficients())
        if (k >= 1) active.insert(gv.tail(a));

    for (int v : active)
        if (sigma_target.coeff(v) < 0) return false;
    for (const auto& [a, k] : alpha.coefficients())
        if (k >= 1 && r_target.coeff(a) < 0) return false;

    std::set<int> traces = cyclic_trace_arcs(phi, r_target, grm);
    for (int v : active) {
        bool hit = false;
        for (int a : gv.out_arcs(v))
            if (traces.count(a)) {
                hit = true;
                break;
            }
        if (!hit) return false;
    }
    return is_guiding(traces, alpha, sigma, sigma_target, gv);
}

bool legal_rotor_corollary(const Config& rho, const Config& sigma, const Config& phi,
                           const Config& rho_target, const Config& sigma_target,
                           const GrmMultigraph& grm) {
    if (!grm.is_cyclic()) throw precondition_error("cyclic mechanism required");
    require_instance_universes(rho, sigma, rho_target, sigma_target, grm);
    const Multigraph& gv = grm.vertex_graph();
    // Both arc configurations must be rotor configurations.
    RotorConfiguration::from_config(gv, rho);
    RotorConfiguration::from_config(gv, rho_target);
    if (!is_nonnegative(sigma) || !is_nonnegative(sigma_target))
        throw precondition_error("the corollary applies to nonnegative particle configs");
    if (!is_nonnegative(phi))
        throw precondition_error("the corollary applies to nonnegative routing vectors");
    require_linear_consistency(rho, sigma, phi, rho_target, sigma_target, grm);

    Config alpha = grm.tail_arcs(phi);
    std::set<int> guide;
    for (const auto& [a, k] : alpha.coefficients())
        if (k >= 1 && rho_target.is_element(grm.theta(a))) guide.insert(a);
    return is_guiding(guide, alpha, sigma, sigma_target, gv);
}

Config full_turn(const Config& p, const GrmMultigraph& grm) {
    const Multigraph& gv = grm.vertex_graph();
    if (p.universe() != gv.vertex_universe())
        throw universe_mismatch_error("full_turn expects a vertex config");
    if (!is_nonnegative(p))
        throw precondition_error("full_turn expects a nonnegative config");
    std::map<int, Int> coeffs;
    for (const auto& [v, k] : p.coefficients()) {
        if (gv.is_sink(v))
            throw precondition_error("full_turn is undefined on sink '" +
                                     gv.vertex_name(v) + "'");
        for (int f : grm.faces_of(v)) coeffs[f] += k;
    }
    return Config(grm.face_universe(), std::move(coeffs));
}

} // namespace rotorkit
