#include "lampsep/regmaps.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <utility>

#include "lampsep/parallel.hpp"

namespace lampsep::regmaps {

using exact::BigRational;
using exact::NormOrder;
using exact::ValuationKind;
using exact::ValuedScalar;
using groups::AffineElement;
using groups::LamplighterElement;
using groups::MpqElement;
using groups::SymShiftElement;
using groups::WreathZZElement;

namespace {

void validate_affine_params(const AffineEmbeddingParams& params) {
    if (params.b.valuation() != params.a.valuation())
        throw precondition_error("affine embedding: a and b must share a valuation");
    if (params.b.is_zero())
        throw precondition_error("affine embedding: translation seed b must be nonzero");
    if (!exact::has_norm_at_least_two(params.a))
        throw precondition_error("affine embedding: |a| must be at least 2");
}

void require_two_state(const LamplighterElement& x, const char* where) {
    if (x.config.modulus != 2)
        throw precondition_error(std::string(where) + ": domain elements must have lamp modulus 2");
}

AffineElement affine_power(const AffineElement& g, long long e) {
    AffineElement base = e >= 0 ? g : groups::affine_inverse(g);
    long long n = e >= 0 ? e : -e;
    AffineElement acc = groups::affine_identity_like(g.a);
    for (long long k = 0; k < n; ++k) acc = groups::affine_multiply(acc, base);
    return acc;
}

std::string format_perm(const std::map<int, int>& perm) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : perm) {
        if (!first) out += ',';
        first = false;
        out += std::to_string(k) + ":" + std::to_string(v);
    }
    out += '}';
    return out;
}

} // namespace

AffineEmbeddingParams make_affine_params(ValuedScalar a, ValuedScalar b) {
    AffineEmbeddingParams params{std::move(a), std::move(b)};
    validate_affine_params(params);
    (void)groups::affine_make(params.b, params.a); // invertibility of a
    return params;
}

AffineElement affine_image(const LamplighterElement& x, const AffineEmbeddingParams& params) {
    validate_affine_params(params);
    require_two_state(x, "affine_image");
    ValuedScalar translation = exact::scalar_zero_like(params.b);
    for (const auto& [j, e] : x.config.entries) {
        (void)e; // two-state lamps store value 1 only
        translation = exact::scalar_add(
            translation, exact::scalar_mul(params.b, exact::scalar_pow(params.a, j)));
    }
    return groups::affine_make(translation, exact::scalar_pow(params.a, x.pos));
}

AffineElement affine_image_expanded(const LamplighterElement& x,
                                    const AffineEmbeddingParams& params) {
    validate_affine_params(params);
    require_two_state(x, "affine_image_expanded");
    const AffineElement d = groups::affine_make(params.b, exact::scalar_one_like(params.a));
    const AffineElement delta = groups::affine_make(exact::scalar_zero_like(params.b), params.a);
    AffineElement acc = groups::affine_identity_like(params.a);
    for (const auto& [j, e] : x.config.entries) {
        (void)e;
        const AffineElement shift = affine_power(delta, j);
        acc = groups::affine_multiply(
            acc, groups::affine_multiply(groups::affine_multiply(shift, d),
                                         groups::affine_inverse(shift)));
    }
    return groups::affine_multiply(acc, affine_power(delta, x.pos));
}

MpqElement mpq_image(const LamplighterElement& x, long long p, long long q) {
    groups::validate_mpq_params(p, q);
    require_two_state(x, "mpq_image");
    const BigRational ratio(p, q);
    BigRational sum = 0;
    for (const auto& [j, e] : x.config.entries) {
        (void)e;
        sum += exact::rational_pow(ratio, j);
    }
    return groups::mpq_make(sum, x.pos, p, q);
}

MpqElement mpq_quotient(const WreathZZElement& x, long long p, long long q) {
    groups::validate_mpq_params(p, q);
    const BigRational ratio(p, q);
    BigRational sum = 0;
    for (const auto& [j, e] : x.entries) sum += BigRational(e) * exact::rational_pow(ratio, j);
    return groups::mpq_make(sum, x.pos, p, q);
}

WreathZZElement wreath_inclusion(const LamplighterElement& x) {
    require_two_state(x, "wreath_inclusion");
    WreathZZElement out;
    for (const auto& [j, e] : x.config.entries) out.entries.emplace(j, e);
    out.pos = x.pos;
    return out;
}

void validate_symshift_params(const std::map<int, int>& sigma, int big_shift) {
    const SymShiftElement normalized = groups::symshift_make(sigma, 0);
    if (normalized.perm.empty())
        throw precondition_error("symshift_image: sigma must move at least one point");
    const int lo = normalized.perm.begin()->first;
    const int hi = normalized.perm.rbegin()->first;
    if (big_shift < hi - lo + 1)
        throw precondition_error(
            "symshift_image: big_shift must be at least the spread of sigma's moved points + 1");
}

SymShiftElement symshift_image(const LamplighterElement& x, const std::map<int, int>& sigma,
                               int big_shift) {
    validate_symshift_params(sigma, big_shift);
    require_two_state(x, "symshift_image");
    const std::map<int, int> base = groups::symshift_make(sigma, 0).perm;
    std::map<int, int> merged;
    for (const auto& [j, e] : x.config.entries) {
        (void)e;
        const long long offset = static_cast<long long>(j) * big_shift;
        if (offset < INT32_MIN || offset > INT32_MAX)
            throw precondition_error("symshift_image: conjugating shift out of range");
        for (const auto& [k, v] : groups::perm_shift_conjugate(static_cast<int>(offset), base))
            merged.emplace(k, v); // supports are disjoint by the big_shift bound
    }
    const long long total_shift = static_cast<long long>(big_shift) * x.pos;
    if (total_shift < INT32_MIN || total_shift > INT32_MAX)
        throw precondition_error("symshift_image: total shift out of range");
    return groups::symshift_make(std::move(merged), static_cast<int>(total_shift));
}

// ---------------------------------------------------------------------------
// Injectivity gap.
// ---------------------------------------------------------------------------

bool injectivity_gap(const LamplighterElement& x, const LamplighterElement& y,
                     const AffineEmbeddingParams& params) {
    validate_affine_params(params);
    require_two_state(x, "injectivity_gap");
    require_two_state(y, "injectivity_gap");
    if (x.pos != y.pos)
        throw precondition_error("injectivity_gap: inputs must share the lamplighter position");
    if (x.config == y.config)
        throw precondition_error("injectivity_gap: configurations must differ");

    ValuedScalar delta = exact::scalar_zero_like(params.b);
    int top = 0;
    bool have_top = false;
    auto visit = [&](int j) {
        const int xv = x.config.value_at(j);
        if (xv == y.config.value_at(j)) return;
        const ValuedScalar term = exact::scalar_mul(params.b, exact::scalar_pow(params.a, j));
        delta = xv == 1 ? exact::scalar_add(delta, term) : exact::scalar_sub(delta, term);
        if (!have_top || j > top) top = j, have_top = true;
    };
    for (const auto& [j, e] : x.config.entries) (void)e, visit(j);
    for (const auto& [j, e] : y.config.entries)
        if (!x.config.entries.count(j)) (void)e, visit(j);

    const ValuedScalar reference =
        exact::scalar_mul(params.b, exact::scalar_pow(params.a, top));
    return exact::norm_at_least_half_of(delta, reference);
}

GapScanReport gap_scan(const AffineEmbeddingParams& params, int window_lo, int window_hi) {
    validate_affine_params(params);
    if (window_lo > window_hi)
        throw precondition_error("gap_scan: empty support window");
    const int width = window_hi - window_lo + 1;
    if (width > 8)
        throw precondition_error("gap_scan: support window wider than 8 positions");

    std::vector<ValuedScalar> terms;
    terms.reserve(static_cast<std::size_t>(width));
    for (int t = 0; t < width; ++t)
        terms.push_back(exact::scalar_mul(params.b, exact::scalar_pow(params.a, window_lo + t)));

    const bool archimedean = params.a.valuation().kind == ValuationKind::archimedean;
    const std::uint32_t count = 1u << width;

    GapScanReport r;
    r.window_lo = window_lo;
    r.window_hi = window_hi;
    r.pairs_total = static_cast<long long>(count) * count;
    r.all_images_distinct = true;
    r.half_gap_all = true;
    if (!archimedean) r.ultrametric_equal_all = true;

    auto mask_label = [&](std::uint32_t mask) {
        LamplighterElement e = groups::lamplighter_identity(2);
        for (int t = 0; t < width; ++t)
            if (mask >> t & 1u) e.config.add_at(window_lo + t, 1);
        return groups::encode_lamplighter(e);
    };

    for (std::uint32_t ma = 0; ma < count; ++ma)
        for (std::uint32_t mb = 0; mb < count; ++mb) {
            const std::uint32_t diff = ma ^ mb;
            if (diff == 0) continue;
            ++r.pairs_checked;
            ValuedScalar delta = exact::scalar_zero_like(params.b);
            for (int t = 0; t < width; ++t) {
                if (!(diff >> t & 1u)) continue;
                delta = (ma >> t & 1u) ? exact::scalar_add(delta, terms[static_cast<std::size_t>(t)])
                                       : exact::scalar_sub(delta, terms[static_cast<std::size_t>(t)]);
            }
            const int t_top = std::bit_width(diff) - 1;
            const ValuedScalar& reference = terms[static_cast<std::size_t>(t_top)];
            if (delta.is_zero()) r.all_images_distinct = false;
            if (!exact::norm_at_least_half_of(delta, reference)) r.half_gap_all = false;
            if (archimedean) {
                const BigRational ratio =
                    abs(delta.rational()) / abs(reference.rational());
                if (!r.min_ratio || ratio < *r.min_ratio) {
                    r.min_ratio = ratio;
                    r.min_ratio_first = mask_label(ma);
                    r.min_ratio_second = mask_label(mb);
                }
            } else if (exact::norm_compare(delta, reference) != NormOrder::EQ) {
                r.ultrametric_equal_all = false;
            }
        }
    return r;
}

nlohmann::json gap_scan_to_json(const AffineEmbeddingParams& params, const GapScanReport& r) {
    nlohmann::json j{
        {"map", "affine"},
        {"valuation", exact::encode_valuation(params.a.valuation())},
        {"a", exact::encode_scalar(params.a)},
        {"b", exact::encode_scalar(params.b)},
        {"window", {r.window_lo, r.window_hi}},
        {"pairs_total", r.pairs_total},
        {"pairs_checked", r.pairs_checked},
        {"all_images_distinct", r.all_images_distinct},
        {"half_gap_all", r.half_gap_all},
    };
    if (r.min_ratio) {
        j["min_ratio"] = exact::encode_rational(*r.min_ratio);
        j["min_ratio_pair"] = {r.min_ratio_first, r.min_ratio_second};
    }
    if (r.ultrametric_equal_all) j["ultrametric_equal_all"] = *r.ultrametric_equal_all;
    return j;
}

// ---------------------------------------------------------------------------
// Generic verification over domain balls.
// ---------------------------------------------------------------------------

namespace {

using DomainBall = cayley::BallResult<cayley::LamplighterOps>;

template <class Target>
struct MapAdapter {
    std::function<Target(const LamplighterElement&)> apply;
    std::function<Target(const Target&, const Target&)> multiply;
    std::function<std::string(const Target&)> encode;
    std::vector<Target> steps; // symmetric set of admissible image steps
};

MapAdapter<AffineElement> adapter_for(const AffineMapSpec& spec) {
    validate_affine_params(spec.params);
    const AffineEmbeddingParams params = spec.params;
    const AffineElement d = groups::affine_make(params.b, exact::scalar_one_like(params.a));
    const AffineElement delta =
        groups::affine_make(exact::scalar_zero_like(params.b), params.a);
    return {
        [params](const LamplighterElement& x) { return affine_image(x, params); },
        groups::affine_multiply,
        groups::encode_affine,
        {d, groups::affine_inverse(d), delta, groups::affine_inverse(delta)},
    };
}

MapAdapter<MpqElement> adapter_for(const MpqMapSpec& spec) {
    groups::validate_mpq_params(spec.p, spec.q);
    const long long p = spec.p, q = spec.q;
    return {
        [p, q](const LamplighterElement& x) { return mpq_image(x, p, q); },
        [p, q](const MpqElement& x, const MpqElement& y) { return groups::mpq_multiply(x, y, p, q); },
        groups::encode_mpq,
        groups::mpq_generators(p, q),
    };
}

MapAdapter<WreathZZElement> adapter_for(const WreathInclusionMapSpec&) {
    return {
        [](const LamplighterElement& x) { return wreath_inclusion(x); },
        groups::wreathzz_multiply,
        groups::encode_wreathzz,
        groups::wreathzz_generators(),
    };
}

MapAdapter<SymShiftElement> adapter_for(const SymShiftMapSpec& spec) {
    validate_symshift_params(spec.sigma, spec.big_shift);
    const std::map<int, int> sigma = spec.sigma;
    const int big_shift = spec.big_shift;
    const SymShiftElement sig = groups::symshift_make(sigma, 0);
    const SymShiftElement sig_inv = groups::symshift_inverse(sig);
    std::vector<SymShiftElement> steps{sig, groups::symshift_make({}, big_shift),
                                       groups::symshift_make({}, -big_shift)};
    if (!(sig_inv == sig)) steps.insert(steps.begin() + 1, sig_inv);
    return {
        [sigma, big_shift](const LamplighterElement& x) {
            return symshift_image(x, sigma, big_shift);
        },
        groups::symshift_multiply,
        groups::encode_symshift,
        std::move(steps),
    };
}

MapAdapter<LamplighterElement> adapter_for(const IdentityMapSpec&) {
    return {
        [](const LamplighterElement& x) { return x; },
        groups::lamp_multiply,
        groups::encode_lamplighter,
        groups::lamplighter_generators(2),
    };
}

MapAdapter<LamplighterElement> adapter_for(const ConstantMapSpec&) {
    return {
        [](const LamplighterElement&) { return groups::lamplighter_identity(2); },
        groups::lamp_multiply,
        groups::encode_lamplighter,
        {groups::lamplighter_identity(2)},
    };
}

template <class Target>
std::vector<Target> evaluate_images(const MapAdapter<Target>& adapter, const DomainBall& ball,
                                    unsigned jobs) {
    std::vector<Target> images(ball.elements.size());
    parallel_ranges(ball.elements.size(), jobs,
                    [&](std::size_t begin, std::size_t end, unsigned) {
                        for (std::size_t i = begin; i < end; ++i)
                            images[i] = adapter.apply(ball.elements[i]);
                    });
    return images;
}

std::size_t effective_workers(std::size_t n, unsigned jobs) {
    return std::min<std::size_t>(std::max<unsigned>(jobs, 1), std::max<std::size_t>(n, 1));
}

template <class Target>
LipschitzFragment lipschitz_on_ball(const MapAdapter<Target>& adapter, const DomainBall& ball,
                                    unsigned jobs) {
    const std::size_t n = ball.elements.size();
    const std::vector<Target> images = evaluate_images(adapter, ball, jobs);
    const std::size_t workers = effective_workers(n, jobs);
    std::vector<long long> checked(workers, 0);
    std::vector<char> clean(workers, 1);
    std::vector<std::vector<std::string>> failures(workers);
    parallel_ranges(n, jobs, [&](std::size_t begin, std::size_t end, unsigned w) {
        for (std::size_t u = begin; u < end; ++u)
            for (int v : ball.graph.adj[u]) {
                if (static_cast<std::size_t>(v) <= u) continue;
                ++checked[w];
                bool matched = false;
                for (const Target& t : adapter.steps)
                    if (adapter.multiply(images[u], t) == images[static_cast<std::size_t>(v)]) {
                        matched = true;
                        break;
                    }
                if (!matched) {
                    clean[w] = 0;
                    if (failures[w].size() < 5)
                        failures[w].push_back(ball.graph.labels[u] + " -> " +
                                              ball.graph.labels[static_cast<std::size_t>(v)]);
                }
            }
    });
    LipschitzFragment out;
    out.ok = true;
    for (std::size_t w = 0; w < workers; ++w) {
        out.checked_edges += checked[w];
        if (!clean[w]) out.ok = false;
        for (const std::string& f : failures[w])
            if (out.failures.size() < 5) out.failures.push_back(f);
    }
    return out;
}

template <class Target>
FiberFragment fibers_on_ball(const MapAdapter<Target>& adapter, const DomainBall& ball,
                             unsigned jobs) {
    const std::size_t n = ball.elements.size();
    const std::vector<Target> images = evaluate_images(adapter, ball, jobs);
    std::vector<std::string> encodings(n);
    parallel_ranges(n, jobs, [&](std::size_t begin, std::size_t end, unsigned) {
        for (std::size_t i = begin; i < end; ++i) encodings[i] = adapter.encode(images[i]);
    });
    FiberFragment out;
    std::unordered_map<std::string, std::pair<std::size_t, long long>> fibers; // first, size
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, fresh] = fibers.try_emplace(encodings[i], i, 0);
        ++it->second.second;
        if (!fresh && out.collision.empty())
            out.collision = {ball.graph.labels[it->second.first], ball.graph.labels[i],
                             encodings[i]};
        out.max_fiber = std::max(out.max_fiber, it->second.second);
    }
    out.injective = out.max_fiber <= 1;
    return out;
}

DomainBall domain_ball(int radius, std::size_t vertex_cap) {
    return cayley::ball_of(cayley::LamplighterOps{2}, radius, vertex_cap);
}

} // namespace

std::string map_name(const MapSpec& spec) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, AffineMapSpec>) return "affine";
            else if constexpr (std::is_same_v<T, MpqMapSpec>) return "mpq";
            else if constexpr (std::is_same_v<T, WreathInclusionMapSpec>) return "wreath-inclusion";
            else if constexpr (std::is_same_v<T, SymShiftMapSpec>) return "symshift";
            else if constexpr (std::is_same_v<T, IdentityMapSpec>) return "identity";
            else return "constant";
        },
        spec);
}

nlohmann::json map_to_json(const MapSpec& spec) {
    nlohmann::json parameters = nlohmann::json::object();
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, AffineMapSpec>) {
                parameters["valuation"] = exact::encode_valuation(s.params.a.valuation());
                parameters["a"] = exact::encode_scalar(s.params.a);
                parameters["b"] = exact::encode_scalar(s.params.b);
            } else if constexpr (std::is_same_v<T, MpqMapSpec>) {
                parameters["p"] = s.p;
                parameters["q"] = s.q;
            } else if constexpr (std::is_same_v<T, SymShiftMapSpec>) {
                parameters["sigma"] = format_perm(groups::symshift_make(s.sigma, 0).perm);
                parameters["big_shift"] = s.big_shift;
            }
        },
        spec);
    return {{"map", map_name(spec)}, {"parameters", parameters}};
}

LipschitzFragment verify_edge_lipschitz(const MapSpec& spec, int radius, unsigned jobs,
                                        std::size_t vertex_cap) {
    const DomainBall ball = domain_ball(radius, vertex_cap);
    return std::visit(
        [&](const auto& s) { return lipschitz_on_ball(adapter_for(s), ball, jobs); }, spec);
}

FiberFragment verify_injectivity(const MapSpec& spec, int radius, unsigned jobs,
                                 std::size_t vertex_cap) {
    const DomainBall ball = domain_ball(radius, vertex_cap);
    return std::visit([&](const auto& s) { return fibers_on_ball(adapter_for(s), ball, jobs); },
                      spec);
}

RegularMapReport verify_map(const MapSpec& spec, int radius, unsigned jobs,
                            std::size_t vertex_cap) {
    const DomainBall ball = domain_ball(radius, vertex_cap);
    RegularMapReport r;
    r.map = map_name(spec);
    r.parameters = map_to_json(spec)["parameters"];
    r.radius = radius;
    r.domain_vertices = static_cast<long long>(ball.elements.size());
    std::visit(
        [&](const auto& s) {
            const auto adapter = adapter_for(s);
            r.lipschitz = lipschitz_on_ball(adapter, ball, jobs);
            r.fibers = fibers_on_ball(adapter, ball, jobs);
        },
        spec);
    r.fiber_constant = r.fibers.max_fiber;
    return r;
}

nlohmann::json report_to_json(const RegularMapReport& r) {
    return {
        {"map", r.map},
        {"parameters", r.parameters},
        {"radius", r.radius},
        {"domain_vertices", r.domain_vertices},
        {"lipschitz",
         {{"ok", r.lipschitz.ok},
          {"constant", r.lipschitz_constant},
          {"checked_edges", r.lipschitz.checked_edges},
          {"failures", r.lipschitz.failures}}},
        {"fibers",
         {{"max_fiber", r.fibers.max_fiber},
          {"constant", r.fiber_constant},
          {"injective", r.fibers.injective},
          {"collision", r.fibers.collision}}},
    };
}

} // namespace lampsep::regmaps
