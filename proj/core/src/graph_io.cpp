#include "rotorkit/graph_io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "rotorkit/errors.hpp"

namespace rotorkit {

GrmMultigraph GraphFile::to_grm() const {
    return GrmMultigraph(graph, face_names, face_tail, face_head);
}

RotorMultigraph GraphFile::to_rotor() const {
    if (theta) return RotorMultigraph(graph, *theta);
    if (has_faces()) {
        GrmMultigraph grm = to_grm();
        if (!grm.is_cyclic())
            throw precondition_error("faces do not form a rotor ordering");
        return grm.to_rotor();
    }
    if (graph.arc_count() == 0) return RotorMultigraph(graph, {});
    throw precondition_error("no rotor structure in this graph file");
}

GraphFile parse_graph(std::istream& in) {
    std::vector<std::string> vertex_names, arc_names;
    std::map<std::string, int> vertex_index, arc_index;
    std::vector<std::pair<int, int>> arc_ends;
    std::vector<std::string> face_names;
    std::vector<int> face_tail, face_head;
    std::set<std::string> face_seen;
    // rotor line contents; expanded into theta and faces after parsing
    std::map<int, std::vector<int>> rotor_lists;
    std::map<int, int> rotor_line_no;

    auto need_vertex = [&](const std::string& id, int line) {
        auto it = vertex_index.find(id);
        if (it == vertex_index.end())
            throw parse_error("unknown vertex '" + id + "'", line);
        return it->second;
    };
    auto need_arc = [&](const std::string& id, int line) {
        auto it = arc_index.find(id);
        if (it == arc_index.end()) throw parse_error("unknown arc '" + id + "'", line);
        return it->second;
    };

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream line(raw);
        std::string keyword;
        if (!(line >> keyword)) continue;

        if (keyword == "vertex") {
            std::string id;
            if (!(line >> id)) throw parse_error("vertex needs an identifier", line_no);
            if (!vertex_index.emplace(id, vertex_names.size()).second)
                throw parse_error("duplicate vertex '" + id + "'", line_no);
            vertex_names.push_back(id);
        } else if (keyword == "arc") {
            std::string id, tail, head;
            if (!(line >> id >> tail >> head))
                throw parse_error("arc needs: id tail head", line_no);
            if (arc_index.count(id))
                throw parse_error("duplicate arc '" + id + "'", line_no);
            int t = need_vertex(tail, line_no), h = need_vertex(head, line_no);
            arc_index.emplace(id, arc_names.size());
            arc_names.push_back(id);
            arc_ends.emplace_back(t, h);
        } else if (keyword == "face") {
            std::string id, owner, tail, head;
            if (!(line >> id >> owner >> tail >> head))
                throw parse_error("face needs: id owner tailArc headArc", line_no);
            if (!face_seen.insert(id).second)
                throw parse_error("duplicate face '" + id + "'", line_no);
            int ov = need_vertex(owner, line_no);
            int ta = need_arc(tail, line_no), ha = need_arc(head, line_no);
            if (arc_ends[ta].first != ov)
                throw parse_error("arc '" + tail + "' does not leave '" + owner + "'",
                                  line_no);
            if (arc_ends[ha].first != ov)
                throw parse_error("arc '" + head + "' does not leave '" + owner + "'",
                                  line_no);
            face_names.push_back(id);
            face_tail.push_back(ta);
            face_head.push_back(ha);
        } else if (keyword == "rotor") {
            std::string vid;
            if (!(line >> vid)) throw parse_error("rotor needs a vertex", line_no);
            int v = need_vertex(vid, line_no);
            if (rotor_lists.count(v))
                throw parse_error("second rotor line for '" + vid + "'", line_no);
            std::vector<int> arcs;
            std::string aid;
            while (line >> aid) arcs.push_back(need_arc(aid, line_no));
            for (int a : arcs)
                if (arc_ends[a].first != v)
                    throw parse_error("rotor arc does not leave '" + vid + "'", line_no);
            rotor_lists.emplace(v, std::move(arcs));
            rotor_line_no.emplace(v, line_no);
        } else {
            throw parse_error("unknown keyword '" + keyword + "'", line_no);
        }
    }

    std::vector<int> tails, heads;
    for (auto& [t, h] : arc_ends) {
        tails.push_back(t);
        heads.push_back(h);
    }
    auto vu = make_universe(UniverseKind::vertex, vertex_names);
    auto au = make_universe(UniverseKind::arc, arc_names);
    GraphFile file{Multigraph(vu, au, std::move(tails), std::move(heads)),
                   std::move(face_names), std::move(face_tail),
                   std::move(face_head), std::nullopt};

    if (!rotor_lists.empty()) {
        std::vector<int> theta(file.graph.arc_count(), -1);
        for (const auto& [v, arcs] : rotor_lists) {
            std::set<int> listed(arcs.begin(), arcs.end());
            const auto& out = file.graph.out_arcs(v);
            if (listed.size() != arcs.size() ||
                listed != std::set<int>(out.begin(), out.end()))
                throw parse_error("rotor line must list the out-arcs of '" +
                                      file.graph.vertex_name(v) + "' exactly once",
                                  rotor_line_no.at(v));
            for (size_t i = 0; i < arcs.size(); ++i)
                theta[arcs[i]] = arcs[(i + 1) % arcs.size()];
        }
        // Expanded faces in arc declaration order, one per rotor-covered arc.
        for (int a = 0; a < file.graph.arc_count(); ++a) {
            if (theta[a] == -1) continue;
            std::string name = "f_" + file.graph.arc_name(a);
            if (face_seen.count(name))
                throw parse_error("generated face '" + name +
                                  "' collides with a declared face");
            file.face_names.push_back(name);
            file.face_tail.push_back(a);
            file.face_head.push_back(theta[a]);
        }
        bool total = std::all_of(theta.begin(), theta.end(),
                                 [](int x) { return x != -1; });
        if (total) file.theta = std::move(theta);
    }
    return file;
}

GraphFile parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

void serialize_graph(std::ostream& out, const GraphFile& file) {
    const Multigraph& g = file.graph;
    for (int v = 0; v < g.vertex_count(); ++v) out << "vertex " << g.vertex_name(v) << '\n';
    for (int a = 0; a < g.arc_count(); ++a)
        out << "arc " << g.arc_name(a) << ' ' << g.vertex_name(g.tail(a)) << ' '
            << g.vertex_name(g.head(a)) << '\n';
    for (size_t f = 0; f < file.face_names.size(); ++f)
        out << "face " << file.face_names[f] << ' '
            << g.vertex_name(g.tail(file.face_tail[f])) << ' '
            << g.arc_name(file.face_tail[f]) << ' ' << g.arc_name(file.face_head[f])
            << '\n';
}

std::string serialize_graph(const GraphFile& file) {
    std::ostringstream out;
    serialize_graph(out, file);
    return out.str();
}

bool same_structure(const GraphFile& a, const GraphFile& b) {
    if (a.graph.vertex_universe()->names() != b.graph.vertex_universe()->names() ||
        a.graph.arc_universe()->names() != b.graph.arc_universe()->names())
        return false;
    for (int arc = 0; arc < a.graph.arc_count(); ++arc)
        if (a.graph.tail(arc) != b.graph.tail(arc) ||
            a.graph.head(arc) != b.graph.head(arc))
            return false;
    return a.face_names == b.face_names && a.face_tail == b.face_tail &&
           a.face_head == b.face_head;
}

Sat22Formula parse_sat22(std::istream& in) {
    Sat22Formula formula;
    bool header_seen = false;
    int expected_clauses = 0;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream line(raw);
        std::string first;
        if (!(line >> first)) continue;
        if (first == "c") continue;
        if (first == "p") {
            std::string kind;
            if (!(line >> kind >> formula.variables >> expected_clauses) ||
                kind != "cnf")
                throw parse_error("header must be 'p cnf <vars> <clauses>'", line_no);
            header_seen = true;
            continue;
        }
        if (!header_seen) throw parse_error("clause before 'p cnf' header", line_no);
        std::array<int, 3> clause{};
        int literal = 0;
        try {
            literal = std::stoi(first);
        } catch (const std::exception&) {
            throw parse_error("bad literal '" + first + "'", line_no);
        }
        int count = 0;
        while (literal != 0) {
            if (count >= 3) throw parse_error("clause has more than 3 literals", line_no);
            clause[count++] = literal;
            if (!(line >> literal)) throw parse_error("clause missing terminating 0", line_no);
        }
        if (count != 3) throw parse_error("clause must have exactly 3 literals", line_no);
        formula.clauses.push_back(clause);
    }
    if (!header_seen) throw parse_error("missing 'p cnf' header");
    if (static_cast<int>(formula.clauses.size()) != expected_clauses)
        throw parse_error("clause count does not match header");
    formula.validate();
    return formula;
}

Sat22Formula parse_sat22(const std::string& text) {
    std::istringstream in(text);
    return parse_sat22(in);
}

} // namespace rotorkit
