#pragma once

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "lampsep/errors.hpp"
#include "lampsep/groups.hpp"
#include "lampsep/rng.hpp"

namespace lampsep::cayley {

// Undirected simple graph with per-vertex string labels. Adjacency lists are
// kept sorted, loop-free, duplicate-free, and symmetric.
struct BoundedDegreeGraph {
    std::vector<std::string> labels;
    std::vector<std::vector<int>> adj;

    int vertex_count() const { return static_cast<int>(adj.size()); }
    long long edge_count() const;
    int max_degree() const;
};

// Throws validation_error unless the adjacency structure satisfies the
// invariants above and labels (when present) match the vertex count.
void validate_graph(const BoundedDegreeGraph& g);

// Sorted list of distinct vertex indices.
using VertexSubset = std::vector<int>;

void validate_subset(const BoundedDegreeGraph& g, const VertexSubset& subset);

// ---------------------------------------------------------------------------
// Group selection for ball enumeration.
// ---------------------------------------------------------------------------

enum class GroupKind { lamplighter, wreath_zz, mpq };

struct GroupSpec {
    GroupKind kind = GroupKind::lamplighter;
    int m = 2;         // lamp modulus, lamplighter only
    long long p = 2;   // mpq only
    long long q = 1;   // mpq only
};

GroupSpec make_group_spec(const std::string& kind_name, int m, long long p, long long q);
std::string group_spec_name(const GroupSpec& spec);
nlohmann::json group_spec_to_json(const GroupSpec& spec);

// Per-group operation bundles consumed by the templated ball builder.
struct LamplighterOps {
    int m = 2;
    using Element = groups::LamplighterElement;
    Element identity() const { return groups::lamplighter_identity(m); }
    std::vector<Element> generators() const { return groups::lamplighter_generators(m); }
    Element multiply(const Element& x, const Element& y) const {
        return groups::lamp_multiply(x, y);
    }
    std::string encode(const Element& x) const { return groups::encode_lamplighter(x); }
};

struct WreathZZOps {
    using Element = groups::WreathZZElement;
    Element identity() const { return groups::wreathzz_identity(); }
    std::vector<Element> generators() const { return groups::wreathzz_generators(); }
    Element multiply(const Element& x, const Element& y) const {
        return groups::wreathzz_multiply(x, y);
    }
    std::string encode(const Element& x) const { return groups::encode_wreathzz(x); }
};

struct MpqOps {
    long long p = 2;
    long long q = 1;
    using Element = groups::MpqElement;
    Element identity() const { return groups::mpq_identity(); }
    std::vector<Element> generators() const { return groups::mpq_generators(p, q); }
    Element multiply(const Element& x, const Element& y) const {
        return groups::mpq_multiply(x, y, p, q);
    }
    std::string encode(const Element& x) const { return groups::encode_mpq(x); }
};

inline constexpr std::size_t default_vertex_cap = 5'000'000;

// Ball of a given radius in the Cayley graph: vertex 0 is the identity,
// vertices are sorted by (distance, canonical encoding), and edges join
// elements differing by one right generator within the ball.
template <class Ops>
struct BallResult {
    BoundedDegreeGraph graph;
    std::vector<typename Ops::Element> elements; // parallel to graph vertices
    std::vector<int> distance;                   // word-metric distance from identity
};

template <class Ops>
BallResult<Ops> ball_of(const Ops& ops, int radius, std::size_t vertex_cap) {
    if (radius < 0) throw precondition_error("ball_of: radius must be >= 0");
    using Element = typename Ops::Element;
    BallResult<Ops> out;
    std::unordered_map<std::string, int> index;

    const Element id = ops.identity();
    out.elements.push_back(id);
    out.distance.push_back(0);
    index.emplace(ops.encode(id), 0);

    const std::vector<Element> gens = ops.generators();
    std::size_t frontier_begin = 0;
    for (int layer = 1; layer <= radius; ++layer) {
        const std::size_t frontier_end = out.elements.size();
        // Collect the next layer keyed by canonical encoding so vertex order
        // depends only on the group, not on traversal order.
        std::map<std::string, Element> next;
        for (std::size_t u = frontier_begin; u < frontier_end; ++u)
            for (const Element& g : gens) {
                Element v = ops.multiply(out.elements[u], g);
                std::string key = ops.encode(v);
                if (!index.count(key) && !next.count(key)) next.emplace(std::move(key), std::move(v));
            }
        if (out.elements.size() + next.size() > vertex_cap)
            throw cap_exceeded_error("ball_of: vertex cap " + std::to_string(vertex_cap) +
                                     " exceeded at radius " + std::to_string(layer));
        for (auto& [key, elem] : next) {
            index.emplace(key, static_cast<int>(out.elements.size()));
            out.elements.push_back(std::move(elem));
            out.distance.push_back(layer);
        }
        frontier_begin = frontier_end;
        if (frontier_begin == out.elements.size()) break; // group exhausted
    }

    const int n = static_cast<int>(out.elements.size());
    out.graph.labels.reserve(static_cast<std::size_t>(n));
    for (const Element& e : out.elements) out.graph.labels.push_back(ops.encode(e));
    out.graph.adj.assign(static_cast<std::size_t>(n), {});
    for (int u = 0; u < n; ++u)
        for (const Element& g : gens) {
            const auto it = index.find(ops.encode(ops.multiply(out.elements[u], g)));
            if (it != index.end() && it->second != u) out.graph.adj[u].push_back(it->second);
        }
    for (auto& nbrs : out.graph.adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    validate_graph(out.graph);
    return out;
}

// Non-template convenience front end used by the command-line tool.
struct BallComputation {
    BoundedDegreeGraph graph;
    std::vector<int> distance;
};

BallComputation ball(const GroupSpec& spec, int radius,
                     std::size_t vertex_cap = default_vertex_cap);

// ---------------------------------------------------------------------------
// Subgraphs and components.
// ---------------------------------------------------------------------------

// Components as sorted vertex lists, ordered by smallest member.
std::vector<VertexSubset> connected_components(const BoundedDegreeGraph& g);

// Component structure of g with `removed` deleted; `removed` must be a valid
// subset. Returned components never meet `removed`.
std::vector<VertexSubset> components_after_removal(const BoundedDegreeGraph& g,
                                                   const VertexSubset& removed);

BoundedDegreeGraph induced_subgraph(const BoundedDegreeGraph& g, const VertexSubset& subset);

// Connected random subset of the requested size grown frontier-by-frontier
// from a random start; deterministic for a fixed seed. Throws
// precondition_error when the reachable region is smaller than `size`.
VertexSubset sample_connected_subgraph(const BoundedDegreeGraph& g, int size,
                                       std::uint64_t seed);

// ---------------------------------------------------------------------------
// Serialization.
// ---------------------------------------------------------------------------

// Plain text: first line "n m", then one "u v" line per edge with u < v,
// in lexicographic order.
std::string to_edgelist(const BoundedDegreeGraph& g);
BoundedDegreeGraph parse_edgelist(const std::string& text); // labels left empty

// Undirected DOT output; labels are attached when nonempty.
std::string to_dot(const BoundedDegreeGraph& g, const std::string& name = "G");

nlohmann::json graph_to_json(const BoundedDegreeGraph& g);
BoundedDegreeGraph graph_from_json(const nlohmann::json& j);

} // namespace lampsep::cayley
