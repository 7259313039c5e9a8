#pragma once

#include <map>
#include <string>
#include <vector>

#include "lampsep/exact.hpp"

namespace lampsep::groups {

using exact::BigInt;
using exact::BigRational;
using exact::Valuation;
using exact::ValuedScalar;

// ---------------------------------------------------------------------------
// Lamplighter-style wreath products over the integer line.
// ---------------------------------------------------------------------------

// Finitely supported configuration Z -> Z/m; only nonzero values are stored.
struct LampConfig {
    int modulus = 2;           // m >= 2
    std::map<int, int> entries; // position -> value in [1, m)

    static LampConfig empty(int m);
    int value_at(int pos) const;
    void add_at(int pos, int delta); // mod m; erases entries that become 0

    friend bool operator==(const LampConfig&, const LampConfig&) = default;
};

// Element of (Z/m) wr Z: lamp configuration plus lamplighter position.
struct LamplighterElement {
    LampConfig config;
    int pos = 0;

    friend bool operator==(const LamplighterElement&, const LamplighterElement&) = default;
};

LamplighterElement lamplighter_identity(int m);
LamplighterElement lamp_multiply(const LamplighterElement& x, const LamplighterElement& y);
LamplighterElement lamp_inverse(const LamplighterElement& x);
// Standard generators: toggle-up, toggle-down (equal when m == 2, listed
// once), walk right, walk left.
std::vector<LamplighterElement> lamplighter_generators(int m);
// Word length in the generators above, by the closed form: each lamp costs
// min(e, m - e) presses, plus the shorter of the two sweep routes that start
// at 0, cover the support, and end at pos.
long long lamp_word_length(const LamplighterElement& x);
std::string encode_lamplighter(const LamplighterElement& x); // "lamps:{p:v,...};pos:k"
LamplighterElement parse_lamplighter(const std::string& text, int m);

// Element of Z wr Z: finitely supported Z -> Z configuration plus position.
struct WreathZZElement {
    std::map<int, long long> entries; // position -> nonzero value
    int pos = 0;

    friend bool operator==(const WreathZZElement&, const WreathZZElement&) = default;
};

WreathZZElement wreathzz_identity();
WreathZZElement wreathzz_multiply(const WreathZZElement& x, const WreathZZElement& y);
WreathZZElement wreathzz_inverse(const WreathZZElement& x);
std::vector<WreathZZElement> wreathzz_generators();
long long wreathzz_word_length(const WreathZZElement& x);
std::string encode_wreathzz(const WreathZZElement& x); // "lamps:{p:v,...};pos:k"
WreathZZElement parse_wreathzz(const std::string& text);

// ---------------------------------------------------------------------------
// The solvable Baumslag-Solitar-like quotients Z[1/pq] x| Z.
// ---------------------------------------------------------------------------

// Element (x, i) with x in Z[1/pq]; the stable letter scales by p/q:
// (x, i)(y, j) = (x + (p/q)^i * y, i + j).
struct MpqElement {
    BigRational x;
    int i = 0;

    friend bool operator==(const MpqElement&, const MpqElement&) = default;
};

// p, q nonzero, coprime, |p*q| >= 2; throws otherwise.
void validate_mpq_params(long long p, long long q);
bool mpq_in_coefficient_ring(const BigRational& x, long long p, long long q);
MpqElement mpq_identity();
MpqElement mpq_make(const BigRational& x, int i, long long p, long long q);
MpqElement mpq_multiply(const MpqElement& a, const MpqElement& b, long long p, long long q);
MpqElement mpq_inverse(const MpqElement& a, long long p, long long q);
// Standard generators: translation by +-1 and stable letter +-1.
std::vector<MpqElement> mpq_generators(long long p, long long q);
std::string encode_mpq(const MpqElement& a); // "x:<rational>;i:<int>"
MpqElement parse_mpq(const std::string& text, long long p, long long q);

// ---------------------------------------------------------------------------
// Affine group of a valued field: pairs (b, a) acting as x -> b + a*x.
// ---------------------------------------------------------------------------

struct AffineElement {
    ValuedScalar b; // translation part
    ValuedScalar a; // invertible scaling part

    friend bool operator==(const AffineElement&, const AffineElement&) = default;
};

// Validates that b and a share a valuation and that a is invertible
// (nonzero rational; monomial in the Laurent case).
AffineElement affine_make(ValuedScalar b, ValuedScalar a);
AffineElement affine_identity_like(const ValuedScalar& sample);
AffineElement affine_multiply(const AffineElement& g, const AffineElement& h);
AffineElement affine_inverse(const AffineElement& g);
ValuedScalar affine_act(const AffineElement& g, const ValuedScalar& x);
// Pairwise-commutation check for the conjugates delta^j d delta^(-j),
// j in [0, window), computed by explicit group multiplication.
bool conjugates_commute_check(const AffineElement& d, const AffineElement& delta, int window);
std::string encode_affine(const AffineElement& g); // "b:<scalar>;a:<scalar>"
AffineElement parse_affine(const std::string& text, const Valuation& val);

// ---------------------------------------------------------------------------
// Finitary permutations of Z extended by the shift.
// ---------------------------------------------------------------------------

// Element (perm, shift) of Sym_fin(Z) x| Z; perm stores moved points only.
struct SymShiftElement {
    std::map<int, int> perm; // point -> image, for moved points
    int shift = 0;

    friend bool operator==(const SymShiftElement&, const SymShiftElement&) = default;
};

// Permutation helpers on moved-point maps.
int perm_apply(const std::map<int, int>& perm, int x);
std::map<int, int> perm_compose(const std::map<int, int>& f,
                                const std::map<int, int>& g); // x -> f(g(x))
std::map<int, int> perm_inverse(const std::map<int, int>& f);
// Conjugation by the shift: the moved pattern translated by t.
std::map<int, int> perm_shift_conjugate(int t, const std::map<int, int>& f);

// Validates bijectivity and strips fixed points.
SymShiftElement symshift_make(std::map<int, int> perm, int shift);
SymShiftElement symshift_identity();
// (p1, t1)(p2, t2) = (p1 o (t1 |> p2), t1 + t2), right factor applied first.
SymShiftElement symshift_multiply(const SymShiftElement& x, const SymShiftElement& y);
SymShiftElement symshift_inverse(const SymShiftElement& x);
std::string encode_symshift(const SymShiftElement& x); // "perm:{a:b,...};shift:t"
SymShiftElement parse_symshift(const std::string& text);

} // namespace lampsep::groups
