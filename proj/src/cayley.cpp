#include "lampsep/cayley.hpp"

#include <algorithm>
#include <sstream>

namespace lampsep::cayley {

namespace {

[[noreturn]] void fail_validation(const std::string& what) { throw validation_error(what); }

} // namespace

long long BoundedDegreeGraph::edge_count() const {
    long long half_edges = 0;
    for (const auto& nbrs : adj) half_edges += static_cast<long long>(nbrs.size());
    return half_edges / 2;
}

int BoundedDegreeGraph::max_degree() const {
    std::size_t d = 0;
    for (const auto& nbrs : adj) d = std::max(d, nbrs.size());
    return static_cast<int>(d);
}

void validate_graph(const BoundedDegreeGraph& g) {
    const int n = g.vertex_count();
    if (!g.labels.empty() && static_cast<int>(g.labels.size()) != n)
        fail_validation("graph: label count differs from vertex count");
    for (int u = 0; u < n; ++u) {
        const auto& nbrs = g.adj[static_cast<std::size_t>(u)];
        if (!std::is_sorted(nbrs.begin(), nbrs.end()))
            fail_validation("graph: adjacency list not sorted at vertex " + std::to_string(u));
        if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
            fail_validation("graph: duplicate edge at vertex " + std::to_string(u));
        for (const int v : nbrs) {
            if (v < 0 || v >= n)
                fail_validation("graph: neighbor out of range at vertex " + std::to_string(u));
            if (v == u) fail_validation("graph: self-loop at vertex " + std::to_string(u));
            const auto& back = g.adj[static_cast<std::size_t>(v)];
            if (!std::binary_search(back.begin(), back.end(), u))
                fail_validation("graph: asymmetric edge " + std::to_string(u) + "-" +
                                std::to_string(v));
        }
    }
}

void validate_subset(const BoundedDegreeGraph& g, const VertexSubset& subset) {
    const int n = g.vertex_count();
    int prev = -1;
    for (const int v : subset) {
        if (v < 0 || v >= n)
            throw precondition_error("vertex subset: index out of range: " + std::to_string(v));
        if (v <= prev)
            throw precondition_error("vertex subset: indices must be strictly increasing");
        prev = v;
    }
}

GroupSpec make_group_spec(const std::string& kind_name, int m, long long p, long long q) {
    GroupSpec spec;
    if (kind_name == "lamplighter") {
        spec.kind = GroupKind::lamplighter;
        if (m < 2) throw precondition_error("group spec: lamp modulus must be >= 2");
        spec.m = m;
    } else if (kind_name == "wreath-zz") {
        spec.kind = GroupKind::wreath_zz;
    } else if (kind_name == "mpq") {
        spec.kind = GroupKind::mpq;
        groups::validate_mpq_params(p, q);
        spec.p = p;
        spec.q = q;
    } else {
        throw precondition_error("group spec: unknown kind: " + kind_name);
    }
    return spec;
}

std::string group_spec_name(const GroupSpec& spec) {
    switch (spec.kind) {
        case GroupKind::lamplighter: return "lamplighter(m=" + std::to_string(spec.m) + ")";
        case GroupKind::wreath_zz: return "wreath-zz";
        case GroupKind::mpq:
            return "mpq(p=" + std::to_string(spec.p) + ",q=" + std::to_string(spec.q) + ")";
    }
    throw precondition_error("group spec: corrupt kind");
}

nlohmann::json group_spec_to_json(const GroupSpec& spec) {
    nlohmann::json j;
    switch (spec.kind) {
        case GroupKind::lamplighter:
            j["kind"] = "lamplighter";
            j["m"] = spec.m;
            break;
        case GroupKind::wreath_zz:
            j["kind"] = "wreath-zz";
            break;
        case GroupKind::mpq:
            j["kind"] = "mpq";
            j["p"] = spec.p;
            j["q"] = spec.q;
            break;
    }
    return j;
}

BallComputation ball(const GroupSpec& spec, int radius, std::size_t vertex_cap) {
    switch (spec.kind) {
        case GroupKind::lamplighter: {
            auto r = ball_of(LamplighterOps{spec.m}, radius, vertex_cap);
            return BallComputation{std::move(r.graph), std::move(r.distance)};
        }
        case GroupKind::wreath_zz: {
            auto r = ball_of(WreathZZOps{}, radius, vertex_cap);
            return BallComputation{std::move(r.graph), std::move(r.distance)};
        }
        case GroupKind::mpq: {
            auto r = ball_of(MpqOps{spec.p, spec.q}, radius, vertex_cap);
            return BallComputation{std::move(r.graph), std::move(r.distance)};
        }
    }
    throw precondition_error("ball: corrupt group kind");
}

std::vector<VertexSubset> connected_components(const BoundedDegreeGraph& g) {
    return components_after_removal(g, {});
}

std::vector<VertexSubset> components_after_removal(const BoundedDegreeGraph& g,
                                                   const VertexSubset& removed) {
    validate_subset(g, removed);
    const int n = g.vertex_count();
    std::vector<char> blocked(static_cast<std::size_t>(n), 0);
    for (const int v : removed) blocked[static_cast<std::size_t>(v)] = 1;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<VertexSubset> components;
    std::vector<int> stack;
    for (int start = 0; start < n; ++start) {
        if (seen[static_cast<std::size_t>(start)] || blocked[static_cast<std::size_t>(start)])
            continue;
        VertexSubset comp;
        stack.push_back(start);
        seen[static_cast<std::size_t>(start)] = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (const int v : g.adj[static_cast<std::size_t>(u)]) {
                if (seen[static_cast<std::size_t>(v)] || blocked[static_cast<std::size_t>(v)])
                    continue;
                seen[static_cast<std::size_t>(v)] = 1;
                stack.push_back(v);
            }
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
    }
    return components;
}

BoundedDegreeGraph induced_subgraph(const BoundedDegreeGraph& g, const VertexSubset& subset) {
    validate_subset(g, subset);
    const int n = g.vertex_count();
    std::vector<int> new_index(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < subset.size(); ++i)
        new_index[static_cast<std::size_t>(subset[i])] = static_cast<int>(i);
    BoundedDegreeGraph out;
    out.adj.resize(subset.size());
    if (!g.labels.empty())
        for (const int v : subset) out.labels.push_back(g.labels[static_cast<std::size_t>(v)]);
    for (std::size_t i = 0; i < subset.size(); ++i) {
        for (const int v : g.adj[static_cast<std::size_t>(subset[i])]) {
            const int nv = new_index[static_cast<std::size_t>(v)];
            if (nv >= 0) out.adj[i].push_back(nv);
        }
        // Source lists are sorted and subset is increasing, so lists stay sorted.
    }
    validate_graph(out);
    return out;
}

VertexSubset sample_connected_subgraph(const BoundedDegreeGraph& g, int size,
                                       std::uint64_t seed) {
    const int n = g.vertex_count();
    if (size < 1) throw precondition_error("sample_connected_subgraph: size must be >= 1");
    if (size > n)
        throw precondition_error("sample_connected_subgraph: size exceeds vertex count");
    SplitMix64 rng(seed);
    const int start = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    std::vector<char> chosen(static_cast<std::size_t>(n), 0);
    std::vector<char> queued(static_cast<std::size_t>(n), 0);
    std::vector<int> frontier{start};
    queued[static_cast<std::size_t>(start)] = 1;
    VertexSubset out;
    while (static_cast<int>(out.size()) < size) {
        if (frontier.empty())
            throw precondition_error(
                "sample_connected_subgraph: reachable region smaller than requested size");
        const std::size_t pick = rng.next_below(frontier.size());
        const int u = frontier[pick];
        frontier[pick] = frontier.back();
        frontier.pop_back();
        chosen[static_cast<std::size_t>(u)] = 1;
        out.push_back(u);
        for (const int v : g.adj[static_cast<std::size_t>(u)]) {
            if (queued[static_cast<std::size_t>(v)]) continue;
            queued[static_cast<std::size_t>(v)] = 1;
            frontier.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string to_edgelist(const BoundedDegreeGraph& g) {
    std::ostringstream out;
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (int u = 0; u < g.vertex_count(); ++u)
        for (const int v : g.adj[static_cast<std::size_t>(u)])
            if (u < v) out << u << ' ' << v << '\n';
    return out.str();
}

BoundedDegreeGraph parse_edgelist(const std::string& text) {
    std::istringstream in(text);
    long long n = 0, m = 0;
    if (!(in >> n >> m) || n < 0 || m < 0)
        throw precondition_error("edge list: malformed header");
    BoundedDegreeGraph g;
    g.adj.resize(static_cast<std::size_t>(n));
    for (long long i = 0; i < m; ++i) {
        long long u = 0, v = 0;
        if (!(in >> u >> v)) throw precondition_error("edge list: truncated edge section");
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw precondition_error("edge list: bad edge " + std::to_string(u) + " " +
                                     std::to_string(v));
        g.adj[static_cast<std::size_t>(u)].push_back(static_cast<int>(v));
        g.adj[static_cast<std::size_t>(v)].push_back(static_cast<int>(u));
    }
    long long extra = 0;
    if (in >> extra) throw precondition_error("edge list: trailing data");
    for (auto& nbrs : g.adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    validate_graph(g);
    return g;
}

std::string to_dot(const BoundedDegreeGraph& g, const std::string& name) {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (int u = 0; u < g.vertex_count(); ++u) {
        out << "  " << u;
        if (!g.labels.empty() && !g.labels[static_cast<std::size_t>(u)].empty())
            out << " [label=\"" << g.labels[static_cast<std::size_t>(u)] << "\"]";
        out << ";\n";
    }
    for (int u = 0; u < g.vertex_count(); ++u)
        for (const int v : g.adj[static_cast<std::size_t>(u)])
            if (u < v) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
    return out.str();
}

nlohmann::json graph_to_json(const BoundedDegreeGraph& g) {
    nlohmann::json j;
    j["schema"] = "graph/1";
    j["vertices"] = g.vertex_count();
    j["edges_count"] = g.edge_count();
    j["labels"] = g.labels;
    nlohmann::json edges = nlohmann::json::array();
    for (int u = 0; u < g.vertex_count(); ++u)
        for (const int v : g.adj[static_cast<std::size_t>(u)])
            if (u < v) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j;
}

BoundedDegreeGraph graph_from_json(const nlohmann::json& j) {
    BoundedDegreeGraph g;
    const long long n = j.at("vertices").get<long long>();
    if (n < 0) throw precondition_error("graph json: negative vertex count");
    g.adj.resize(static_cast<std::size_t>(n));
    if (j.contains("labels")) g.labels = j.at("labels").get<std::vector<std::string>>();
    for (const auto& e : j.at("edges")) {
        const long long u = e.at(0).get<long long>();
        const long long v = e.at(1).get<long long>();
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw precondition_error("graph json: bad edge");
        g.adj[static_cast<std::size_t>(u)].push_back(static_cast<int>(v));
        g.adj[static_cast<std::size_t>(v)].push_back(static_cast<int>(u));
    }
    for (auto& nbrs : g.adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    validate_graph(g);
    return g;
}

} // namespace lampsep::cayley
