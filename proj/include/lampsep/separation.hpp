#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "lampsep/cayley.hpp"
#include "lampsep/exact.hpp"

namespace lampsep::separation {

// ---------------------------------------------------------------------------
// Balanced-cut certificates. A cutset C of a vertex set F is valid when every
// connected component of F minus C has at most |F|/2 vertices, compared as an
// exact rational (2 * component_size <= |F|).
// ---------------------------------------------------------------------------

struct CutAnnotation {
    std::string name;
    exact::BigRational value;
    bool satisfied = false;
};

struct CutCertificate {
    cayley::VertexSubset cutset;
    long long largest_component = 0; // after removing the cutset
    long long total_size = 0;        // |F|
    bool valid = false;
    std::string method; // "exact" | "heuristic" | "fiber"
    std::vector<CutAnnotation> annotations;
};

nlohmann::json cut_certificate_to_json(const CutCertificate& cert);

// Validity of a cutset inside the graph F; optionally reports the largest
// remaining component size.
bool cut_is_valid(const cayley::BoundedDegreeGraph& F, const cayley::VertexSubset& cutset,
                  long long* largest_component = nullptr);

// ---------------------------------------------------------------------------
// Exact minimum balanced cuts (small graphs only).
// ---------------------------------------------------------------------------

inline constexpr int exact_cut_vertex_cap = 30;

// Minimum-cardinality valid cutset, scanning subset sizes k = 0, 1, 2, ... and
// within each size the subsets in lexicographic vertex order; the first valid
// subset wins. Graphs beyond the vertex cap are refused.
CutCertificate cut_exact(const cayley::BoundedDegreeGraph& F);

// Every minimum-cardinality valid cutset, in lexicographic order.
std::vector<cayley::VertexSubset> minimum_cutsets(const cayley::BoundedDegreeGraph& F);

// Valid (not necessarily minimal) cutset from randomized BFS-layer sweeps
// followed by greedy removal of redundant cut vertices; `effort` counts the
// sweep restarts. Deterministic for a fixed seed.
CutCertificate cut_heuristic_upper(const cayley::BoundedDegreeGraph& F, int effort,
                                   std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// The fiber separator for subgraphs of two-state lamplighter balls.
// ---------------------------------------------------------------------------

// Lamplighter position parsed from a vertex label of the form "...;pos:k".
int label_position(const std::string& label);

// Number of distinct positions among the labels of F.
long long fiber_support_count(const cayley::BoundedDegreeGraph& g, const cayley::VertexSubset& F);

// Balanced separator of a connected subset F (|F| >= 2) of a lamplighter-style
// graph, built from position fibers: picks the balance index i_G, widens to
// the nearest thin fibers i' <= i_G <= i'' (fiber size <= 4v/log2 v, decided
// exactly as v^size <= 2^(4v)), and returns their union. The certificate
// carries validity plus the exact |C| <= 8v/log2 v check.
CutCertificate lamplighter_separator(const cayley::BoundedDegreeGraph& g,
                                     const cayley::VertexSubset& F);

// ---------------------------------------------------------------------------
// The position-bounded test graphs and their canonical path family.
// ---------------------------------------------------------------------------

struct TnDescriptor {
    int n = 1; // position range [-n, n]
    int m = 2; // lamp modulus
};

void validate_tn(const TnDescriptor& desc);
long long tn_vertex_count(const TnDescriptor& desc); // (2n+1) * m^(2n+1)

// Induced subgraph on configurations supported in [-n, n] with position in
// [-n, n]. Vertex id = config_index * (2n+1) + (pos + n), where config_index
// reads the lamps as base-m digits with position -n least significant.
// Labels use the lamplighter encoding, so the fiber separator applies.
cayley::BoundedDegreeGraph tn_graph(const TnDescriptor& desc,
                                    std::size_t vertex_cap = cayley::default_vertex_cap);

// The three-segment canonical walk from x to y: slide to the left wall,
// sweep right correcting each lamp before stepping, then slide back to y's
// position. May revisit vertices; consecutive entries are always edges.
std::vector<int> canonical_path(int x, int y, const TnDescriptor& desc);

struct PathFamilyStats {
    int n = 0;
    int m = 0;
    long long total_paths = 0;          // |T_n|^2 ordered pairs
    long long max_congestion = 0;       // max over vertices of #paths through
    exact::BigRational congestion_bound; // 3 |T_n|^2 / m^(2n+1)
    bool bound_satisfied = false;
    long long max_path_edges = 0;
};

inline constexpr long long congestion_vertex_cap = 1000;

// Enumerates all ordered pairs; a vertex appearing several times in one path
// is counted once for that path. Deterministic for any worker count.
PathFamilyStats congestion_stats(const TnDescriptor& desc, unsigned jobs = 1);
nlohmann::json path_family_stats_to_json(const PathFamilyStats& stats);

struct CongestionBounds {
    exact::BigRational paper_bound;    // m^(2n+1) / 6
    exact::BigRational measured_bound; // |T_n|^2 / (2 * measured max congestion)
};

// Both certified lower bounds on Cut(T_n) implied by the path family, given
// that at least half of all pairs cross any valid cutset.
CongestionBounds congestion_lower_bound(const TnDescriptor& desc, const PathFamilyStats& stats);
nlohmann::json congestion_bounds_to_json(const CongestionBounds& bounds);

exact::BigInt rational_ceil(const exact::BigRational& x);

// Exact fraction of ordered pairs (x, y) whose canonical path meets W.
// W must be a valid cutset of T_n (else validation_error); the result is
// always at least 1/2 for valid cutsets.
exact::BigRational verify_crossing(const TnDescriptor& desc, const cayley::VertexSubset& W);

// ---------------------------------------------------------------------------
// Integer log helpers and the exact power-comparison bound test.
// ---------------------------------------------------------------------------

long long log2_floor(const exact::BigInt& n); // n >= 1
long long log2_ceil(const exact::BigInt& n);  // n >= 1

// Exact decision of count <= multiplier * v / log2(v), phrased as
// v^count <= 2^(multiplier * v) in integers. Requires v >= 2.
bool power_bound_holds(long long v, long long count, long long multiplier);

// ---------------------------------------------------------------------------
// Separation profile: certified bounds as the subset size grows.
// ---------------------------------------------------------------------------

struct ProfileRow {
    int v = 0;
    long long lower = 0;   // certified lower bound on the separation profile
    long long upper = 0;   // witnessed cutset size for the sampled subsets
    std::string kind;      // provenance of the lower bound: "exact" | "congestion"
};

// For each size v: samples connected subgraphs and certifies a lower bound
// (exact minimum cuts when small, path-congestion bounds on embedded test
// graphs otherwise; non-decreasing in v) and an upper witness (fiber
// separators for lamplighter balls, sweep heuristics otherwise).
std::vector<ProfileRow> sep_profile_table(const cayley::GroupSpec& spec, std::vector<int> sizes,
                                          int samples, std::uint64_t seed);

// CSV with header "v,lower_witness,upper_witness,kind".
std::string profile_to_csv(const std::vector<ProfileRow>& rows);

} // namespace lampsep::separation
