#pragma once

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lampsep/cayley.hpp"
#include "lampsep/groups.hpp"

namespace lampsep::regmaps {

// ---------------------------------------------------------------------------
// Parameters of the affine-group embedding of the two-state lamplighter.
// ---------------------------------------------------------------------------
struct AffineEmbeddingParams {
    exact::ValuedScalar a; // scaling unit, |a| >= 2
    exact::ValuedScalar b; // nonzero translation seed
};

// Validates b != 0, |a| >= 2 (exactly, in a's own valuation), matching
// valuations, and invertibility of a.
AffineEmbeddingParams make_affine_params(exact::ValuedScalar a, exact::ValuedScalar b);

// ---------------------------------------------------------------------------
// The maps out of the two-state lamplighter. All domain elements must carry
// lamp modulus 2.
// ---------------------------------------------------------------------------

// (f, i) -> (sum_{j in supp f} b a^j, a^i), evaluated exactly.
groups::AffineElement affine_image(const groups::LamplighterElement& x,
                                   const AffineEmbeddingParams& params);

// Same value computed the long way: the literal product of conjugated
// translation letters, prod_j (delta^j d^{f_j} delta^-j) * delta^i.
groups::AffineElement affine_image_expanded(const groups::LamplighterElement& x,
                                            const AffineEmbeddingParams& params);

// (f, i) -> (sum_j f(j) (p/q)^j, i).
groups::MpqElement mpq_image(const groups::LamplighterElement& x, long long p, long long q);

// Quotient homomorphism from the integer-lamp wreath product:
// (f, i) -> (sum_j f(j) (p/q)^j, i) for integer-valued f. Multiplicative.
groups::MpqElement mpq_quotient(const groups::WreathZZElement& x, long long p, long long q);

// Entrywise inclusion of {0,1} lamp values into Z; position preserved.
groups::WreathZZElement wreath_inclusion(const groups::LamplighterElement& x);

// sigma must move at least one point; big_shift must be at least the spread
// of sigma's moved points + 1, so the conjugated copies have disjoint support.
void validate_symshift_params(const std::map<int, int>& sigma, int big_shift);

// (f, i) -> (prod_{j in supp f} shift^{jN} sigma shift^{-jN}, N i).
groups::SymShiftElement symshift_image(const groups::LamplighterElement& x,
                                       const std::map<int, int>& sigma, int big_shift);

// ---------------------------------------------------------------------------
// The injectivity gap inequality of the affine embedding.
// ---------------------------------------------------------------------------

// For distinct configurations at the same position: computes the image
// difference Delta = sum_j (f_j - g_j) b a^j and the top term b a^{j_M} with
// j_M the largest differing lamp, and decides |Delta| >= |b a^{j_M}| / 2
// exactly. Throws on equal inputs or differing positions.
bool injectivity_gap(const groups::LamplighterElement& x, const groups::LamplighterElement& y,
                     const AffineEmbeddingParams& params);

// Exhaustive scan of the gap inequality over all ordered pairs of
// configurations supported in [window_lo, window_hi] (position fixed at 0).
struct GapScanReport {
    int window_lo = 0;
    int window_hi = 0;
    long long pairs_total = 0;    // all ordered pairs, diagonal included
    long long pairs_checked = 0;  // ordered pairs of distinct configurations
    bool all_images_distinct = false; // Delta != 0 on every checked pair
    bool half_gap_all = false;        // |Delta| >= |b a^{j_M}|/2 on every pair
    // Archimedean only: the minimal ratio |Delta| / |b a^{j_M}| and where.
    std::optional<exact::BigRational> min_ratio;
    std::string min_ratio_first;
    std::string min_ratio_second;
    // Non-archimedean only: |Delta| = |b a^{j_M}| on every checked pair.
    std::optional<bool> ultrametric_equal_all;
};

GapScanReport gap_scan(const AffineEmbeddingParams& params, int window_lo, int window_hi);
nlohmann::json gap_scan_to_json(const AffineEmbeddingParams& params, const GapScanReport& r);

// ---------------------------------------------------------------------------
// Map selection for the generic verifiers.
// ---------------------------------------------------------------------------

struct AffineMapSpec {
    AffineEmbeddingParams params;
};
struct MpqMapSpec {
    long long p = 2;
    long long q = 1;
};
struct WreathInclusionMapSpec {};
struct SymShiftMapSpec {
    std::map<int, int> sigma;
    int big_shift = 2;
};
// Plumbing fixtures: the identity map (regular with K = C = 1) and the
// constant map (Lipschitz but maximally non-injective).
struct IdentityMapSpec {};
struct ConstantMapSpec {};

using MapSpec = std::variant<AffineMapSpec, MpqMapSpec, WreathInclusionMapSpec,
                             SymShiftMapSpec, IdentityMapSpec, ConstantMapSpec>;

std::string map_name(const MapSpec& spec);
nlohmann::json map_to_json(const MapSpec& spec);

// ---------------------------------------------------------------------------
// Exhaustive verification over domain balls.
// ---------------------------------------------------------------------------

struct LipschitzFragment {
    bool ok = false;
    long long checked_edges = 0;
    std::vector<std::string> failures; // at most 5 witnesses "x -> y"
};

struct FiberFragment {
    long long max_fiber = 0;
    bool injective = false;
    // On collision: domain labels of the first colliding pair plus the image.
    std::vector<std::string> collision;
};

struct RegularMapReport {
    std::string map;
    nlohmann::json parameters;
    int radius = 0;
    long long domain_vertices = 0;
    LipschitzFragment lipschitz;
    FiberFragment fibers;
    int lipschitz_constant = 1;  // target generating set contains the
                                 // generator images, so one step suffices
    long long fiber_constant = 0; // measured max fiber size
};

// Checks, for every edge (x, x*g) of the radius-R domain ball, that the image
// step phi(x)^-1 phi(x*g) is the image of a single generator.
LipschitzFragment verify_edge_lipschitz(const MapSpec& spec, int radius, unsigned jobs = 1,
                                        std::size_t vertex_cap = cayley::default_vertex_cap);

// Evaluates the map on the whole radius-R ball and measures fiber sizes via
// canonical target encodings.
FiberFragment verify_injectivity(const MapSpec& spec, int radius, unsigned jobs = 1,
                                 std::size_t vertex_cap = cayley::default_vertex_cap);

// Both fragments over a single shared ball enumeration.
RegularMapReport verify_map(const MapSpec& spec, int radius, unsigned jobs = 1,
                            std::size_t vertex_cap = cayley::default_vertex_cap);

nlohmann::json report_to_json(const RegularMapReport& r);

} // namespace lampsep::regmaps
