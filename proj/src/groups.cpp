#include "lampsep/groups.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace lampsep::groups {

namespace {

[[noreturn]] void fail_pre(const std::string& what) { throw precondition_error(what); }

long long parse_ll(const std::string& text, const char* what) {
    if (text.empty()) fail_pre(std::string("empty ") + what);
    std::size_t i = (text[0] == '-') ? 1 : 0;
    if (i == text.size()) fail_pre(std::string("malformed ") + what + ": " + text);
    for (std::size_t k = i; k < text.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(text[k])))
            fail_pre(std::string("malformed ") + what + ": " + text);
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (errno != 0 || end != text.c_str() + text.size())
        fail_pre(std::string("out-of-range ") + what + ": " + text);
    return v;
}

int parse_int(const std::string& text, const char* what) {
    const long long v = parse_ll(text, what);
    if (v < -1'000'000'000 || v > 1'000'000'000)
        fail_pre(std::string("out-of-range ") + what + ": " + text);
    return static_cast<int>(v);
}

// Parses "{k:v,k:v,...}" with strictly ascending integer keys.
std::map<long long, long long> parse_ll_map(const std::string& text, const char* what) {
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
        fail_pre(std::string(what) + ": expected {k:v,...}: " + text);
    std::map<long long, long long> out;
    const std::string body = text.substr(1, text.size() - 2);
    if (body.empty()) return out;
    std::istringstream terms(body);
    std::string term;
    while (std::getline(terms, term, ',')) {
        const std::size_t colon = term.find(':');
        if (colon == std::string::npos)
            fail_pre(std::string(what) + ": malformed entry: " + term);
        const long long k = parse_ll(term.substr(0, colon), what);
        const long long v = parse_ll(term.substr(colon + 1), what);
        if (out.count(k)) fail_pre(std::string(what) + ": duplicate key: " + term);
        out[k] = v;
    }
    return out;
}

// Splits "name1:<payload1>;name2:<int2>" where payload1 may itself contain
// ':' or ',' but never ';'.
std::pair<std::string, std::string> split_two_fields(const std::string& text,
                                                     const std::string& name1,
                                                     const std::string& name2) {
    const std::string p1 = name1 + ":";
    if (text.rfind(p1, 0) != 0) fail_pre("expected '" + p1 + "...' in: " + text);
    const std::size_t semi = text.rfind(';');
    if (semi == std::string::npos || semi < p1.size())
        fail_pre("expected ';" + name2 + ":...' in: " + text);
    const std::string p2 = name2 + ":";
    const std::string tail = text.substr(semi + 1);
    if (tail.rfind(p2, 0) != 0) fail_pre("expected '" + p2 + "...' in: " + text);
    return {text.substr(p1.size(), semi - p1.size()), tail.substr(p2.size())};
}

template <class Map>
std::string encode_map_body(const Map& entries) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (const auto& [k, v] : entries) {
        if (!first) out << ',';
        first = false;
        out << k << ':' << v;
    }
    out << '}';
    return out.str();
}

// Shorter of the two sweep routes starting at 0, covering [lo, hi], ending
// at pos; lo <= 0 <= hi and lo <= pos <= hi are ensured by the callers.
long long sweep_walk_cost(long long lo, long long hi, long long pos) {
    const long long left_first = (0 - lo) + (hi - lo) + (hi - pos);
    const long long right_first = (hi - 0) + (hi - lo) + (pos - lo);
    return std::min(left_first, right_first);
}

} // namespace

// ---------------------------------------------------------------------------
// (Z/m) wr Z
// ---------------------------------------------------------------------------

LampConfig LampConfig::empty(int m) {
    if (m < 2) fail_pre("LampConfig: modulus must be >= 2");
    LampConfig out;
    out.modulus = m;
    return out;
}

int LampConfig::value_at(int pos) const {
    const auto it = entries.find(pos);
    return it == entries.end() ? 0 : it->second;
}

void LampConfig::add_at(int pos, int delta) {
    int v = (value_at(pos) + delta) % modulus;
    if (v < 0) v += modulus;
    if (v == 0)
        entries.erase(pos);
    else
        entries[pos] = v;
}

LamplighterElement lamplighter_identity(int m) {
    return LamplighterElement{LampConfig::empty(m), 0};
}

LamplighterElement lamp_multiply(const LamplighterElement& x, const LamplighterElement& y) {
    if (x.config.modulus != y.config.modulus)
        fail_pre("lamp_multiply: mismatched lamp moduli");
    LamplighterElement out = x;
    for (const auto& [p, v] : y.config.entries) out.config.add_at(p + x.pos, v);
    out.pos = x.pos + y.pos;
    return out;
}

LamplighterElement lamp_inverse(const LamplighterElement& x) {
    LamplighterElement out = lamplighter_identity(x.config.modulus);
    out.pos = -x.pos;
    for (const auto& [p, v] : x.config.entries) out.config.add_at(p - x.pos, -v);
    return out;
}

std::vector<LamplighterElement> lamplighter_generators(int m) {
    const LamplighterElement id = lamplighter_identity(m);
    LamplighterElement toggle_up = id;
    toggle_up.config.add_at(0, 1);
    LamplighterElement walk = id;
    walk.pos = 1;
    LamplighterElement walk_back = id;
    walk_back.pos = -1;
    std::vector<LamplighterElement> gens{toggle_up};
    if (m > 2) {
        LamplighterElement toggle_down = id;
        toggle_down.config.add_at(0, -1);
        gens.push_back(toggle_down);
    }
    gens.push_back(walk);
    gens.push_back(walk_back);
    return gens;
}

long long lamp_word_length(const LamplighterElement& x) {
    const int m = x.config.modulus;
    long long lamp_cost = 0;
    long long lo = std::min(0, x.pos);
    long long hi = std::max(0, x.pos);
    for (const auto& [p, v] : x.config.entries) {
        lamp_cost += std::min(v, m - v);
        lo = std::min<long long>(lo, p);
        hi = std::max<long long>(hi, p);
    }
    return lamp_cost + sweep_walk_cost(lo, hi, x.pos);
}

std::string encode_lamplighter(const LamplighterElement& x) {
    return "lamps:" + encode_map_body(x.config.entries) + ";pos:" + std::to_string(x.pos);
}

LamplighterElement parse_lamplighter(const std::string& text, int m) {
    const auto [lamps, pos] = split_two_fields(text, "lamps", "pos");
    LamplighterElement out = lamplighter_identity(m);
    out.pos = parse_int(pos, "lamplighter position");
    for (const auto& [k, v] : parse_ll_map(lamps, "lamp map")) {
        if (v < 1 || v >= m) fail_pre("parse_lamplighter: lamp value outside [1, m): " + text);
        out.config.entries[parse_int(std::to_string(k), "lamp position")] =
            static_cast<int>(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Z wr Z
// ---------------------------------------------------------------------------

WreathZZElement wreathzz_identity() { return WreathZZElement{}; }

namespace {

void wreathzz_add_at(WreathZZElement& x, int pos, long long delta) {
    const auto it = x.entries.find(pos);
    const long long v = (it == x.entries.end() ? 0 : it->second) + delta;
    if (v == 0) {
        if (it != x.entries.end()) x.entries.erase(it);
    } else {
        x.entries[pos] = v;
    }
}

} // namespace

WreathZZElement wreathzz_multiply(const WreathZZElement& x, const WreathZZElement& y) {
    WreathZZElement out = x;
    for (const auto& [p, v] : y.entries) wreathzz_add_at(out, p + x.pos, v);
    out.pos = x.pos + y.pos;
    return out;
}

WreathZZElement wreathzz_inverse(const WreathZZElement& x) {
    WreathZZElement out;
    out.pos = -x.pos;
    for (const auto& [p, v] : x.entries) out.entries[p - x.pos] = -v;
    return out;
}

std::vector<WreathZZElement> wreathzz_generators() {
    WreathZZElement up, down, walk, walk_back;
    up.entries[0] = 1;
    down.entries[0] = -1;
    walk.pos = 1;
    walk_back.pos = -1;
    return {up, down, walk, walk_back};
}

long long wreathzz_word_length(const WreathZZElement& x) {
    long long lamp_cost = 0;
    long long lo = std::min(0, x.pos);
    long long hi = std::max(0, x.pos);
    for (const auto& [p, v] : x.entries) {
        lamp_cost += std::llabs(v);
        lo = std::min<long long>(lo, p);
        hi = std::max<long long>(hi, p);
    }
    return lamp_cost + sweep_walk_cost(lo, hi, x.pos);
}

std::string encode_wreathzz(const WreathZZElement& x) {
    return "lamps:" + encode_map_body(x.entries) + ";pos:" + std::to_string(x.pos);
}

WreathZZElement parse_wreathzz(const std::string& text) {
    const auto [lamps, pos] = split_two_fields(text, "lamps", "pos");
    WreathZZElement out;
    out.pos = parse_int(pos, "wreath position");
    for (const auto& [k, v] : parse_ll_map(lamps, "wreath lamp map")) {
        if (v == 0) fail_pre("parse_wreathzz: zero entry stored: " + text);
        out.entries[parse_int(std::to_string(k), "wreath lamp position")] = v;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Z[1/pq] x| Z
// ---------------------------------------------------------------------------

void validate_mpq_params(long long p, long long q) {
    if (p == 0 || q == 0) fail_pre("mpq: p and q must be nonzero");
    if (std::gcd(std::llabs(p), std::llabs(q)) != 1) fail_pre("mpq: p and q must be coprime");
    if (std::llabs(p) * std::llabs(q) < 2) fail_pre("mpq: |p*q| must be >= 2");
}

bool mpq_in_coefficient_ring(const BigRational& x, long long p, long long q) {
    const BigInt pq = BigInt(p) * BigInt(q);
    BigInt d = denominator(x);
    while (d > 1) {
        const BigInt g = boost::multiprecision::gcd(d, pq);
        if (g == 1) return false;
        d /= g;
    }
    return true;
}

MpqElement mpq_identity() { return MpqElement{BigRational(0), 0}; }

MpqElement mpq_make(const BigRational& x, int i, long long p, long long q) {
    validate_mpq_params(p, q);
    if (!mpq_in_coefficient_ring(x, p, q))
        fail_pre("mpq_make: coefficient outside Z[1/pq]: " + exact::encode_rational(x));
    return MpqElement{x, i};
}

MpqElement mpq_multiply(const MpqElement& a, const MpqElement& b, long long p, long long q) {
    validate_mpq_params(p, q);
    const BigRational ratio = exact::rational_pow(BigRational(p) / q, a.i);
    return MpqElement{a.x + ratio * b.x, a.i + b.i};
}

MpqElement mpq_inverse(const MpqElement& a, long long p, long long q) {
    validate_mpq_params(p, q);
    const BigRational ratio = exact::rational_pow(BigRational(p) / q, -a.i);
    return MpqElement{-(ratio * a.x), -a.i};
}

std::vector<MpqElement> mpq_generators(long long p, long long q) {
    validate_mpq_params(p, q);
    return {MpqElement{BigRational(1), 0}, MpqElement{BigRational(-1), 0},
            MpqElement{BigRational(0), 1}, MpqElement{BigRational(0), -1}};
}

std::string encode_mpq(const MpqElement& a) {
    return "x:" + exact::encode_rational(a.x) + ";i:" + std::to_string(a.i);
}

MpqElement parse_mpq(const std::string& text, long long p, long long q) {
    const auto [x, i] = split_two_fields(text, "x", "i");
    return mpq_make(exact::parse_rational(x), parse_int(i, "mpq index"), p, q);
}

// ---------------------------------------------------------------------------
// Affine group of a valued field
// ---------------------------------------------------------------------------

AffineElement affine_make(ValuedScalar b, ValuedScalar a) {
    if (!(b.valuation() == a.valuation()))
        fail_pre("affine_make: parts carry different valuations");
    if (a.is_zero()) fail_pre("affine_make: scaling part must be invertible");
    if (!a.holds_rational() && !a.laurent().is_monomial())
        fail_pre("affine_make: Laurent scaling part must be a unit (monomial)");
    return AffineElement{std::move(b), std::move(a)};
}

AffineElement affine_identity_like(const ValuedScalar& sample) {
    return AffineElement{exact::scalar_zero_like(sample), exact::scalar_one_like(sample)};
}

AffineElement affine_multiply(const AffineElement& g, const AffineElement& h) {
    return AffineElement{exact::scalar_add(g.b, exact::scalar_mul(g.a, h.b)),
                         exact::scalar_mul(g.a, h.a)};
}

AffineElement affine_inverse(const AffineElement& g) {
    const ValuedScalar a_inv = exact::scalar_pow(g.a, -1);
    return AffineElement{exact::scalar_neg(exact::scalar_mul(a_inv, g.b)), a_inv};
}

ValuedScalar affine_act(const AffineElement& g, const ValuedScalar& x) {
    return exact::scalar_add(g.b, exact::scalar_mul(g.a, x));
}

bool conjugates_commute_check(const AffineElement& d, const AffineElement& delta, int window) {
    if (window < 1) fail_pre("conjugates_commute_check: window must be >= 1");
    std::vector<AffineElement> conj;
    conj.reserve(static_cast<std::size_t>(window));
    AffineElement power = affine_identity_like(delta.a);
    for (int j = 0; j < window; ++j) {
        conj.push_back(affine_multiply(affine_multiply(power, d), affine_inverse(power)));
        power = affine_multiply(power, delta);
    }
    for (int i = 0; i < window; ++i)
        for (int j = i + 1; j < window; ++j) {
            const AffineElement ij = affine_multiply(conj[i], conj[j]);
            const AffineElement ji = affine_multiply(conj[j], conj[i]);
            if (!(ij == ji)) return false;
        }
    return true;
}

std::string encode_affine(const AffineElement& g) {
    return "b:" + exact::encode_scalar(g.b) + ";a:" + exact::encode_scalar(g.a);
}

AffineElement parse_affine(const std::string& text, const Valuation& val) {
    const std::string pb = "b:";
    if (text.rfind(pb, 0) != 0) fail_pre("parse_affine: expected 'b:...': " + text);
    const std::size_t semi = text.find(";a:");
    if (semi == std::string::npos) fail_pre("parse_affine: expected ';a:...': " + text);
    const std::string b_text = text.substr(pb.size(), semi - pb.size());
    const std::string a_text = text.substr(semi + 3);
    return affine_make(exact::parse_scalar(b_text, val), exact::parse_scalar(a_text, val));
}

// ---------------------------------------------------------------------------
// Sym_fin(Z) x| Z
// ---------------------------------------------------------------------------

int perm_apply(const std::map<int, int>& perm, int x) {
    const auto it = perm.find(x);
    return it == perm.end() ? x : it->second;
}

std::map<int, int> perm_compose(const std::map<int, int>& f, const std::map<int, int>& g) {
    std::map<int, int> out;
    for (const auto& [x, gx] : g) {
        const int y = perm_apply(f, gx);
        if (y != x) out[x] = y;
    }
    for (const auto& [x, fx] : f) {
        if (g.count(x)) continue; // g moves x; handled above
        if (fx != x) out[x] = fx;
    }
    return out;
}

std::map<int, int> perm_inverse(const std::map<int, int>& f) {
    std::map<int, int> out;
    for (const auto& [x, fx] : f) out[fx] = x;
    return out;
}

std::map<int, int> perm_shift_conjugate(int t, const std::map<int, int>& f) {
    std::map<int, int> out;
    for (const auto& [x, fx] : f) out[x + t] = fx + t;
    return out;
}

SymShiftElement symshift_make(std::map<int, int> perm, int shift) {
    std::map<int, int> cleaned;
    std::map<int, int> seen_images;
    for (const auto& [x, fx] : perm) {
        if (fx == x) continue;
        if (seen_images.count(fx)) fail_pre("symshift_make: image repeated, not a bijection");
        seen_images[fx] = x;
        cleaned[x] = fx;
    }
    // Domain of moved points must equal the image set.
    for (const auto& [fx, x] : seen_images)
        if (!cleaned.count(fx))
            fail_pre("symshift_make: moved-point domain and image differ, not a bijection");
    return SymShiftElement{std::move(cleaned), shift};
}

SymShiftElement symshift_identity() { return SymShiftElement{}; }

SymShiftElement symshift_multiply(const SymShiftElement& x, const SymShiftElement& y) {
    return SymShiftElement{perm_compose(x.perm, perm_shift_conjugate(x.shift, y.perm)),
                           x.shift + y.shift};
}

SymShiftElement symshift_inverse(const SymShiftElement& x) {
    return SymShiftElement{perm_shift_conjugate(-x.shift, perm_inverse(x.perm)), -x.shift};
}

std::string encode_symshift(const SymShiftElement& x) {
    return "perm:" + encode_map_body(x.perm) + ";shift:" + std::to_string(x.shift);
}

SymShiftElement parse_symshift(const std::string& text) {
    const auto [perm, shift] = split_two_fields(text, "perm", "shift");
    std::map<int, int> moved;
    for (const auto& [k, v] : parse_ll_map(perm, "permutation map"))
        moved[parse_int(std::to_string(k), "permutation point")] =
            parse_int(std::to_string(v), "permutation image");
    return symshift_make(std::move(moved), parse_int(shift, "shift"));
}

} // namespace lampsep::groups
