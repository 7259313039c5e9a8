#include "lampsep/separation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

#include "lampsep/groups.hpp"
#include "lampsep/parallel.hpp"
#include "lampsep/rng.hpp"

namespace lampsep::separation {

using cayley::BoundedDegreeGraph;
using cayley::VertexSubset;
using exact::BigInt;
using exact::BigRational;

namespace {

// Reusable-buffer validity check: every component of F minus the cut must
// have at most |F|/2 vertices (2 * size <= |F| exactly).
class BalanceChecker {
public:
    explicit BalanceChecker(const BoundedDegreeGraph& g)
        : g_(g), n_(g.vertex_count()), removed_(static_cast<std::size_t>(n_), 0),
          seen_(static_cast<std::size_t>(n_), 0) {
        queue_.reserve(static_cast<std::size_t>(n_));
    }

    bool valid(const VertexSubset& cut, long long* largest_component = nullptr) {
        for (int u : cut) removed_[static_cast<std::size_t>(u)] = 1;
        std::fill(seen_.begin(), seen_.end(), 0);
        bool ok = true;
        long long largest = 0;
        for (int s = 0; s < n_; ++s) {
            if (removed_[static_cast<std::size_t>(s)] || seen_[static_cast<std::size_t>(s)])
                continue;
            queue_.clear();
            queue_.push_back(s);
            seen_[static_cast<std::size_t>(s)] = 1;
            long long size = 0;
            for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
                const int u = queue_[qi];
                ++size;
                for (int w : g_.adj[static_cast<std::size_t>(u)])
                    if (!removed_[static_cast<std::size_t>(w)] &&
                        !seen_[static_cast<std::size_t>(w)]) {
                        seen_[static_cast<std::size_t>(w)] = 1;
                        queue_.push_back(w);
                    }
            }
            largest = std::max(largest, size);
            if (2 * size > n_) {
                ok = false;
                if (largest_component == nullptr) break;
            }
        }
        for (int u : cut) removed_[static_cast<std::size_t>(u)] = 0;
        if (largest_component) *largest_component = largest;
        return ok;
    }

private:
    const BoundedDegreeGraph& g_;
    int n_;
    std::vector<char> removed_, seen_;
    std::vector<int> queue_;
};

CutCertificate make_certificate(const BoundedDegreeGraph& F, VertexSubset cutset,
                                std::string method) {
    BalanceChecker checker(F);
    CutCertificate cert;
    cert.total_size = F.vertex_count();
    cert.valid = checker.valid(cutset, &cert.largest_component);
    cert.cutset = std::move(cutset);
    cert.method = std::move(method);
    cert.annotations.push_back(
        {"half_threshold", BigRational(cert.total_size, 2), cert.valid});
    return cert;
}

// Lexicographically next k-combination of [0, n); false once exhausted.
bool next_combination(std::vector<int>& c, int n) {
    const int k = static_cast<int>(c.size());
    int i = k - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return false;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
        c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    return true;
}

} // namespace

nlohmann::json cut_certificate_to_json(const CutCertificate& cert) {
    nlohmann::json annotations = nlohmann::json::array();
    for (const CutAnnotation& a : cert.annotations)
        annotations.push_back({{"name", a.name},
                               {"value", exact::encode_rational(a.value)},
                               {"satisfied", a.satisfied}});
    return {
        {"cutset", cert.cutset},
        {"size", cert.cutset.size()},
        {"largest_component", cert.largest_component},
        {"total_size", cert.total_size},
        {"valid", cert.valid},
        {"method", cert.method},
        {"annotations", annotations},
    };
}

bool cut_is_valid(const BoundedDegreeGraph& F, const VertexSubset& cutset,
                  long long* largest_component) {
    cayley::validate_subset(F, cutset);
    BalanceChecker checker(F);
    return checker.valid(cutset, largest_component);
}

CutCertificate cut_exact(const BoundedDegreeGraph& F) {
    const int n = F.vertex_count();
    if (n < 1) throw precondition_error("cut_exact: graph must have at least one vertex");
    if (n > exact_cut_vertex_cap)
        throw cap_exceeded_error("cut_exact: graph exceeds the " +
                                 std::to_string(exact_cut_vertex_cap) +
                                 "-vertex exhaustive-search cap");
    cayley::validate_graph(F);
    BalanceChecker checker(F);
    for (int k = 0; k <= n; ++k) {
        std::vector<int> c(static_cast<std::size_t>(k));
        std::iota(c.begin(), c.end(), 0);
        do {
            if (checker.valid(c)) return make_certificate(F, c, "exact");
        } while (next_combination(c, n));
    }
    throw validation_error("cut_exact: exhausted all subsets without a valid cut");
}

std::vector<VertexSubset> minimum_cutsets(const BoundedDegreeGraph& F) {
    const CutCertificate minimum = cut_exact(F);
    const int n = F.vertex_count();
    const int k = static_cast<int>(minimum.cutset.size());
    BalanceChecker checker(F);
    std::vector<VertexSubset> out;
    std::vector<int> c(static_cast<std::size_t>(k));
    std::iota(c.begin(), c.end(), 0);
    do {
        if (checker.valid(c)) out.push_back(c);
    } while (next_combination(c, n));
    return out;
}

CutCertificate cut_heuristic_upper(const BoundedDegreeGraph& F, int effort, std::uint64_t seed) {
    cayley::validate_graph(F);
    const int n = F.vertex_count();
    BalanceChecker checker(F);
    if (checker.valid({})) return make_certificate(F, {}, "heuristic");

    // Exactly one component can exceed half of the whole graph; sweep it.
    VertexSubset big;
    for (const VertexSubset& comp : cayley::connected_components(F))
        if (2 * static_cast<long long>(comp.size()) > n) big = comp;

    SplitMix64 rng(seed);
    const int restarts = std::max(effort, 1);
    std::optional<VertexSubset> best;
    std::vector<int> dist(static_cast<std::size_t>(n));
    std::vector<int> order;
    order.reserve(big.size());
    for (int t = 0; t < restarts; ++t) {
        const int src = big[static_cast<std::size_t>(rng.next_below(big.size()))];
        std::fill(dist.begin(), dist.end(), -1);
        order.clear();
        order.push_back(src);
        dist[static_cast<std::size_t>(src)] = 0;
        for (std::size_t qi = 0; qi < order.size(); ++qi) {
            const int u = order[qi];
            for (int w : F.adj[static_cast<std::size_t>(u)])
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                    order.push_back(w);
                }
        }
        std::vector<long long> layer_size;
        for (int u : order) {
            const auto d = static_cast<std::size_t>(dist[static_cast<std::size_t>(u)]);
            if (d >= layer_size.size()) layer_size.resize(d + 1, 0);
            ++layer_size[d];
        }
        // Smallest layer index whose far side fits in half; its near side
        // then fits as well, so the layer is a valid cut of the component.
        long long before = 0;
        const long long comp_size = static_cast<long long>(big.size());
        for (std::size_t level = 0; level < layer_size.size(); ++level) {
            const long long beyond = comp_size - before - layer_size[level];
            if (2 * beyond <= n) {
                VertexSubset candidate;
                for (int u : order)
                    if (dist[static_cast<std::size_t>(u)] == static_cast<int>(level))
                        candidate.push_back(u);
                std::sort(candidate.begin(), candidate.end());
                if (checker.valid(candidate) &&
                    (!best || candidate.size() < best->size()))
                    best = std::move(candidate);
                break;
            }
            before += layer_size[level];
        }
    }
    if (!best) throw validation_error("cut_heuristic_upper: no balancing layer found");

    // Greedy removal of redundant cut vertices, lowest index first.
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i < best->size(); ++i) {
            VertexSubset trial = *best;
            trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
            if (checker.valid(trial)) {
                best = std::move(trial);
                improved = true;
                break;
            }
        }
    }
    return make_certificate(F, *best, "heuristic");
}

// ---------------------------------------------------------------------------
// Fiber separator.
// ---------------------------------------------------------------------------

int label_position(const std::string& label) {
    const std::string key = ";pos:";
    const std::size_t at = label.rfind(key);
    if (at == std::string::npos)
        throw precondition_error("label_position: label lacks a \";pos:\" field: " + label);
    const std::string tail = label.substr(at + key.size());
    try {
        std::size_t used = 0;
        const long long value = std::stoll(tail, &used);
        if (used != tail.size() || value < INT32_MIN || value > INT32_MAX)
            throw std::invalid_argument("range");
        return static_cast<int>(value);
    } catch (const std::exception&) {
        throw precondition_error("label_position: malformed position in label: " + label);
    }
}

long long fiber_support_count(const BoundedDegreeGraph& g, const VertexSubset& F) {
    cayley::validate_subset(g, F);
    std::vector<int> positions;
    positions.reserve(F.size());
    for (int u : F) positions.push_back(label_position(g.labels[static_cast<std::size_t>(u)]));
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    return static_cast<long long>(positions.size());
}

CutCertificate lamplighter_separator(const BoundedDegreeGraph& g, const VertexSubset& F) {
    cayley::validate_subset(g, F);
    const long long v = static_cast<long long>(F.size());
    if (v < 2)
        throw precondition_error("lamplighter_separator: the subset must have at least 2 vertices");
    const BoundedDegreeGraph induced = cayley::induced_subgraph(g, F);
    if (cayley::connected_components(induced).size() != 1)
        throw precondition_error("lamplighter_separator: the subset must induce a connected graph");

    std::map<int, VertexSubset> fibers;
    for (int u : F) fibers[label_position(g.labels[static_cast<std::size_t>(u)])].push_back(u);
    const int min_pos = fibers.begin()->first;
    const int max_pos = fibers.rbegin()->first;

    // Smallest index with at most half of F strictly beyond it; at most half
    // then sits strictly below it as well.
    int balance = max_pos;
    long long below = 0;
    for (int i = min_pos; i <= max_pos; ++i) {
        const auto it = fibers.find(i);
        const long long here = it == fibers.end() ? 0 : static_cast<long long>(it->second.size());
        const long long beyond = v - below - here;
        if (2 * beyond <= v) {
            balance = i;
            break;
        }
        below += here;
    }

    const auto fiber_size = [&](int i) -> long long {
        const auto it = fibers.find(i);
        return it == fibers.end() ? 0 : static_cast<long long>(it->second.size());
    };
    const auto thin = [&](int i) { return power_bound_holds(v, fiber_size(i), 4); };

    int lo = balance;
    while (!thin(lo)) --lo; // empty fibers below min_pos are thin
    int hi = balance;
    while (!thin(hi)) ++hi;

    VertexSubset cutset;
    for (int i : {lo, hi}) {
        const auto it = fibers.find(i);
        if (it != fibers.end())
            cutset.insert(cutset.end(), it->second.begin(), it->second.end());
        if (lo == hi) break;
    }
    std::sort(cutset.begin(), cutset.end());
    cutset.erase(std::unique(cutset.begin(), cutset.end()), cutset.end());

    // Validate inside F: translate the cutset to induced-subgraph indices.
    VertexSubset local;
    local.reserve(cutset.size());
    for (int u : cutset) {
        const auto at = std::lower_bound(F.begin(), F.end(), u);
        local.push_back(static_cast<int>(at - F.begin()));
    }
    CutCertificate cert;
    cert.total_size = v;
    BalanceChecker checker(induced);
    cert.valid = checker.valid(local, &cert.largest_component);
    cert.cutset = std::move(cutset);
    cert.method = "fiber";
    cert.annotations.push_back({"balance_index", BigRational(balance), true});
    cert.annotations.push_back({"thin_fiber_below", BigRational(lo), true});
    cert.annotations.push_back({"thin_fiber_above", BigRational(hi), true});
    cert.annotations.push_back(
        {"cutset_le_8v_over_log2v", BigRational(static_cast<long long>(cert.cutset.size())),
         power_bound_holds(v, static_cast<long long>(cert.cutset.size()), 8)});
    return cert;
}

// ---------------------------------------------------------------------------
// Test graphs and canonical paths.
// ---------------------------------------------------------------------------

void validate_tn(const TnDescriptor& desc) {
    if (desc.n < 0) throw precondition_error("tn: n must be >= 0");
    if (desc.m < 2) throw precondition_error("tn: lamp modulus must be >= 2");
}

long long tn_vertex_count(const TnDescriptor& desc) {
    validate_tn(desc);
    const long long width = 2LL * desc.n + 1;
    long long configs = 1;
    for (long long t = 0; t < width; ++t) {
        if (configs > static_cast<long long>(cayley::default_vertex_cap)) break;
        configs *= desc.m;
    }
    const long long count = configs * width;
    if (configs > static_cast<long long>(cayley::default_vertex_cap) || count < 0)
        throw cap_exceeded_error("tn: vertex count overflows the enumeration cap");
    return count;
}

namespace {

struct TnCodec {
    int n, m;
    long long width, configs;

    explicit TnCodec(const TnDescriptor& desc)
        : n(desc.n), m(desc.m), width(2LL * desc.n + 1),
          configs(tn_vertex_count(desc) / (2LL * desc.n + 1)) {}

    long long vertex_count() const { return configs * width; }

    void decode(long long vid, std::vector<int>& digits, int& pos) const {
        pos = static_cast<int>(vid % width) - n;
        long long cfg = vid / width;
        digits.assign(static_cast<std::size_t>(width), 0);
        for (long long t = 0; t < width; ++t) {
            digits[static_cast<std::size_t>(t)] = static_cast<int>(cfg % m);
            cfg /= m;
        }
    }

    long long encode(const std::vector<int>& digits, int pos) const {
        long long cfg = 0;
        for (long long t = width - 1; t >= 0; --t)
            cfg = cfg * m + digits[static_cast<std::size_t>(t)];
        return cfg * width + (pos + n);
    }
};

} // namespace

BoundedDegreeGraph tn_graph(const TnDescriptor& desc, std::size_t vertex_cap) {
    const TnCodec codec(desc);
    const long long count = codec.vertex_count();
    if (count > static_cast<long long>(vertex_cap))
        throw cap_exceeded_error("tn_graph: vertex count " + std::to_string(count) +
                                 " exceeds cap " + std::to_string(vertex_cap));
    BoundedDegreeGraph g;
    g.labels.reserve(static_cast<std::size_t>(count));
    g.adj.assign(static_cast<std::size_t>(count), {});
    std::vector<int> digits;
    int pos = 0;
    for (long long vid = 0; vid < count; ++vid) {
        codec.decode(vid, digits, pos);
        groups::LamplighterElement elem = groups::lamplighter_identity(desc.m);
        for (long long t = 0; t < codec.width; ++t)
            if (digits[static_cast<std::size_t>(t)] != 0)
                elem.config.add_at(static_cast<int>(t) - desc.n,
                                   digits[static_cast<std::size_t>(t)]);
        elem.pos = pos;
        g.labels.push_back(groups::encode_lamplighter(elem));

        auto& nbrs = g.adj[static_cast<std::size_t>(vid)];
        if (pos < desc.n) nbrs.push_back(static_cast<int>(vid + 1));
        if (pos > -desc.n) nbrs.push_back(static_cast<int>(vid - 1));
        const std::size_t idx = static_cast<std::size_t>(pos + desc.n);
        for (int delta : {1, desc.m - 1}) {
            std::vector<int> other = digits;
            other[idx] = (other[idx] + delta) % desc.m;
            nbrs.push_back(static_cast<int>(codec.encode(other, pos)));
        }
    }
    for (auto& nbrs : g.adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }
    cayley::validate_graph(g);
    return g;
}

std::vector<int> canonical_path(int x, int y, const TnDescriptor& desc) {
    const TnCodec codec(desc);
    const long long count = codec.vertex_count();
    if (x < 0 || x >= count || y < 0 || y >= count)
        throw precondition_error("canonical_path: endpoint outside the test graph");

    std::vector<int> sx, sy;
    int px = 0, py = 0;
    codec.decode(x, sx, px);
    codec.decode(y, sy, py);

    std::vector<int> path{x};
    // Segment 1: slide to the left wall.
    for (int t = px - 1; t >= -desc.n; --t)
        path.push_back(static_cast<int>(codec.encode(sx, t)));
    // Segment 2: sweep right, correcting each lamp before stepping.
    std::vector<int> cur = sx;
    for (int k = -desc.n; k <= desc.n; ++k) {
        const std::size_t idx = static_cast<std::size_t>(k + desc.n);
        int gap = ((sy[idx] - cur[idx]) % desc.m + desc.m) % desc.m;
        while (gap != 0) {
            const int step = gap <= desc.m - gap ? 1 : desc.m - 1;
            cur[idx] = (cur[idx] + step) % desc.m;
            gap = ((sy[idx] - cur[idx]) % desc.m + desc.m) % desc.m;
            path.push_back(static_cast<int>(codec.encode(cur, k)));
        }
        if (k < desc.n) path.push_back(static_cast<int>(codec.encode(cur, k + 1)));
    }
    // Segment 3: slide back to y's position.
    for (int t = desc.n - 1; t >= py; --t)
        path.push_back(static_cast<int>(codec.encode(cur, t)));
    return path;
}

PathFamilyStats congestion_stats(const TnDescriptor& desc, unsigned jobs) {
    const long long count = tn_vertex_count(desc);
    if (count > congestion_vertex_cap)
        throw cap_exceeded_error("congestion_stats: vertex count " + std::to_string(count) +
                                 " exceeds the pair-enumeration cap " +
                                 std::to_string(congestion_vertex_cap));
    const std::size_t n = static_cast<std::size_t>(count);
    const std::size_t workers =
        std::min<std::size_t>(std::max<unsigned>(jobs, 1), std::max<std::size_t>(n, 1));
    std::vector<std::vector<long long>> counters(workers, std::vector<long long>(n, 0));
    std::vector<long long> longest(workers, 0);
    parallel_ranges(n, jobs, [&](std::size_t begin, std::size_t end, unsigned w) {
        std::vector<int> buffer;
        for (std::size_t x = begin; x < end; ++x)
            for (std::size_t y = 0; y < n; ++y) {
                buffer = canonical_path(static_cast<int>(x), static_cast<int>(y), desc);
                longest[w] = std::max(longest[w], static_cast<long long>(buffer.size()) - 1);
                std::sort(buffer.begin(), buffer.end());
                buffer.erase(std::unique(buffer.begin(), buffer.end()), buffer.end());
                for (int vid : buffer) ++counters[w][static_cast<std::size_t>(vid)];
            }
    });
    PathFamilyStats stats;
    stats.n = desc.n;
    stats.m = desc.m;
    stats.total_paths = count * count;
    for (std::size_t v = 0; v < n; ++v) {
        long long through = 0;
        for (std::size_t w = 0; w < workers; ++w) through += counters[w][v];
        stats.max_congestion = std::max(stats.max_congestion, through);
    }
    for (long long l : longest) stats.max_path_edges = std::max(stats.max_path_edges, l);
    const long long configs = count / (2 * desc.n + 1);
    stats.congestion_bound = BigRational(3 * stats.total_paths, configs);
    stats.bound_satisfied =
        BigRational(stats.max_congestion) <= stats.congestion_bound;
    return stats;
}

nlohmann::json path_family_stats_to_json(const PathFamilyStats& stats) {
    return {
        {"n", stats.n},
        {"m", stats.m},
        {"total_paths", stats.total_paths},
        {"max_congestion", stats.max_congestion},
        {"congestion_bound", exact::encode_rational(stats.congestion_bound)},
        {"bound_satisfied", stats.bound_satisfied},
        {"max_path_edges", stats.max_path_edges},
    };
}

CongestionBounds congestion_lower_bound(const TnDescriptor& desc, const PathFamilyStats& stats) {
    validate_tn(desc);
    if (stats.n != desc.n || stats.m != desc.m)
        throw precondition_error("congestion_lower_bound: stats belong to another graph");
    if (stats.max_congestion < 1)
        throw precondition_error("congestion_lower_bound: stats lack a positive congestion");
    const long long configs = tn_vertex_count(desc) / (2 * desc.n + 1);
    return {BigRational(configs, 6),
            BigRational(stats.total_paths, 2 * stats.max_congestion)};
}

nlohmann::json congestion_bounds_to_json(const CongestionBounds& bounds) {
    return {
        {"paper_bound", exact::encode_rational(bounds.paper_bound)},
        {"paper_bound_ceil", rational_ceil(bounds.paper_bound).str()},
        {"measured_bound", exact::encode_rational(bounds.measured_bound)},
        {"measured_bound_ceil", rational_ceil(bounds.measured_bound).str()},
    };
}

exact::BigInt rational_ceil(const BigRational& x) {
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    BigInt q = num / den;
    if (num > 0 && q * den != num) ++q;
    return q;
}

exact::BigRational verify_crossing(const TnDescriptor& desc, const VertexSubset& W) {
    const BoundedDegreeGraph graph = tn_graph(desc);
    const long long count = graph.vertex_count();
    if (count > congestion_vertex_cap)
        throw cap_exceeded_error("verify_crossing: graph exceeds the pair-enumeration cap");
    cayley::validate_subset(graph, W);
    if (!cut_is_valid(graph, W))
        throw validation_error("verify_crossing: W is not a valid balanced cutset");

    std::vector<char> in_w(static_cast<std::size_t>(count), 0);
    for (int u : W) in_w[static_cast<std::size_t>(u)] = 1;
    long long crossing = 0;
    for (long long x = 0; x < count; ++x)
        for (long long y = 0; y < count; ++y)
            for (int vid : canonical_path(static_cast<int>(x), static_cast<int>(y), desc))
                if (in_w[static_cast<std::size_t>(vid)]) {
                    ++crossing;
                    break;
                }
    const BigRational fraction(crossing, count * count);
    if (2 * crossing < count * count)
        throw validation_error("verify_crossing: crossing fraction fell below one half");
    return fraction;
}

// ---------------------------------------------------------------------------
// Integer log helpers.
// ---------------------------------------------------------------------------

long long log2_floor(const BigInt& n) {
    if (n < 1) throw precondition_error("log2_floor: argument must be >= 1");
    return static_cast<long long>(boost::multiprecision::msb(n));
}

long long log2_ceil(const BigInt& n) {
    if (n < 1) throw precondition_error("log2_ceil: argument must be >= 1");
    if (n == 1) return 0;
    return static_cast<long long>(boost::multiprecision::msb(n - 1)) + 1;
}

bool power_bound_holds(long long v, long long count, long long multiplier) {
    if (v < 2) throw precondition_error("power_bound_holds: v must be >= 2");
    if (count < 0 || multiplier < 0)
        throw precondition_error("power_bound_holds: count and multiplier must be >= 0");
    const BigInt lhs = exact::int_pow(BigInt(v), static_cast<unsigned long long>(count));
    const BigInt rhs = BigInt(1) << static_cast<unsigned>(multiplier * v);
    return lhs <= rhs;
}

// ---------------------------------------------------------------------------
// Separation profile.
// ---------------------------------------------------------------------------

namespace {

// Exhaustive minimum cuts inside the profile are limited below the general
// cap: subset enumeration over more than 20 vertices is too slow to repeat
// across samples, and the congestion bounds take over from there.
constexpr int profile_exact_cap = 20;

} // namespace

std::vector<ProfileRow> sep_profile_table(const cayley::GroupSpec& spec, std::vector<int> sizes,
                                          int samples, std::uint64_t seed) {
    if (sizes.empty()) throw precondition_error("sep_profile_table: no sizes given");
    if (samples < 1) throw precondition_error("sep_profile_table: samples must be >= 1");
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    if (sizes.front() < 1) throw precondition_error("sep_profile_table: sizes must be >= 1");

    int radius = 1;
    cayley::BallComputation ball = cayley::ball(spec, radius);
    while (ball.graph.vertex_count() < sizes.back() && radius < 14) {
        ++radius;
        ball = cayley::ball(spec, radius);
    }
    if (ball.graph.vertex_count() < sizes.back())
        throw precondition_error("sep_profile_table: largest size exceeds the enumerated ball");

    const bool lamplighter = spec.kind == cayley::GroupKind::lamplighter;

    // Certified lower bounds from the canonical path family on the embedded
    // position-bounded test graphs (lamplighter only).
    std::vector<std::pair<long long, long long>> congestion; // (vertices, bound)
    if (lamplighter) {
        for (int n = 0;; ++n) {
            const TnDescriptor desc{n, spec.m};
            long long count = 0;
            try {
                count = tn_vertex_count(desc);
            } catch (const cap_exceeded_error&) {
                break;
            }
            if (count > sizes.back() || count > congestion_vertex_cap) break;
            const PathFamilyStats stats = congestion_stats(desc);
            const CongestionBounds bounds = congestion_lower_bound(desc, stats);
            const long long lower = std::max(
                static_cast<long long>(rational_ceil(bounds.paper_bound)),
                static_cast<long long>(rational_ceil(bounds.measured_bound)));
            congestion.emplace_back(count, lower);
        }
    }

    const SplitMix64 base(seed);
    std::vector<ProfileRow> rows;
    long long best_lower = 0;
    std::string best_kind = "exact";
    for (const int v : sizes) {
        for (const auto& [vertices, bound] : congestion)
            if (vertices <= v && bound > best_lower) {
                best_lower = bound;
                best_kind = "congestion";
            }
        long long upper = 0;
        for (int s = 0; s < samples; ++s) {
            SplitMix64 stream =
                base.child(static_cast<std::uint64_t>(v)).child(static_cast<std::uint64_t>(s));
            const std::uint64_t sample_seed = stream.next();
            const VertexSubset F = cayley::sample_connected_subgraph(ball.graph, v, sample_seed);
            if (v <= profile_exact_cap) {
                const CutCertificate cert = cut_exact(cayley::induced_subgraph(ball.graph, F));
                if (static_cast<long long>(cert.cutset.size()) > best_lower) {
                    best_lower = static_cast<long long>(cert.cutset.size());
                    best_kind = "exact";
                }
            }
            if (v == 1) {
                upper = std::max(upper, 1LL); // a single vertex is its own cut
            } else if (lamplighter) {
                const CutCertificate cert = lamplighter_separator(ball.graph, F);
                if (!cert.valid)
                    throw validation_error("sep_profile_table: fiber separator came back invalid");
                upper = std::max(upper, static_cast<long long>(cert.cutset.size()));
            } else {
                const CutCertificate cert =
                    cut_heuristic_upper(cayley::induced_subgraph(ball.graph, F), 4, sample_seed);
                if (!cert.valid)
                    throw validation_error("sep_profile_table: heuristic cut came back invalid");
                upper = std::max(upper, static_cast<long long>(cert.cutset.size()));
            }
        }
        rows.push_back({v, best_lower, upper, best_kind});
    }
    return rows;
}

std::string profile_to_csv(const std::vector<ProfileRow>& rows) {
    std::string out = "v,lower_witness,upper_witness,kind\n";
    for (const ProfileRow& row : rows)
        out += std::to_string(row.v) + "," + std::to_string(row.lower) + "," +
               std::to_string(row.upper) + "," + row.kind + "\n";
    return out;
}

} // namespace lampsep::separation
