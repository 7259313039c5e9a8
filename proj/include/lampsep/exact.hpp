#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "lampsep/errors.hpp"

namespace lampsep::exact {

using BigInt = boost::multiprecision::cpp_int;
// Stored fully reduced with positive denominator by the backend.
using BigRational = boost::multiprecision::cpp_rational;

bool is_prime(const BigInt& n);

BigInt int_pow(const BigInt& base, unsigned long long e);

// Exponent of p in x; std::nullopt encodes +infinity (x == 0).
std::optional<long long> padic_valuation(const BigRational& x, const BigInt& p);

// base^e for any integer e; negative e requires base != 0.
BigRational rational_pow(const BigRational& base, long long e);

std::string encode_rational(const BigRational& x); // "n" or "n/d" with d > 1
BigRational parse_rational(const std::string& text);

// ---------------------------------------------------------------------------
// Laurent polynomials over the prime field F_p, the dyadic-free stand-in for a
// formal-series coefficient field. Units are exactly the monomials c*t^k.
// ---------------------------------------------------------------------------
struct LaurentPoly {
    int characteristic = 2;   // prime p
    std::map<int, int> coeffs; // exponent -> coefficient in [1, p); no zeros

    static LaurentPoly zero(int p);
    static LaurentPoly one(int p);
    static LaurentPoly monomial(int p, int coeff, int exponent);

    bool is_zero() const { return coeffs.empty(); }
    bool is_monomial() const { return coeffs.size() == 1; }

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
};

LaurentPoly laurent_add(const LaurentPoly& x, const LaurentPoly& y);
LaurentPoly laurent_neg(const LaurentPoly& x);
LaurentPoly laurent_sub(const LaurentPoly& x, const LaurentPoly& y);
LaurentPoly laurent_mul(const LaurentPoly& x, const LaurentPoly& y);
// Negative e requires a monomial base (the only invertible elements).
LaurentPoly laurent_pow(const LaurentPoly& x, long long e);
// Order of vanishing at t = 0 (minimal exponent); nullopt for the zero poly.
std::optional<long long> t_adic_order(const LaurentPoly& x);

std::string encode_laurent(const LaurentPoly& x); // "{p;e1:c1,e2:c2,...}"
LaurentPoly parse_laurent(const std::string& text);

// ---------------------------------------------------------------------------
// Valuations / absolute values.
// ---------------------------------------------------------------------------
enum class ValuationKind { archimedean, p_adic, t_adic };

struct Valuation {
    ValuationKind kind = ValuationKind::archimedean;
    BigInt prime = 0; // meaningful for p_adic only

    static Valuation archimedean();
    static Valuation p_adic(const BigInt& p); // p must be prime
    static Valuation t_adic();

    friend bool operator==(const Valuation&, const Valuation&) = default;
};

std::string encode_valuation(const Valuation& v); // "arch" | "<p>adic" | "tadic"
Valuation parse_valuation(const std::string& text);

enum class NormOrder { LT, EQ, GT };

// A field element paired with the absolute value it is measured in.
// Rational-backed for archimedean and p-adic valuations, Laurent-backed for
// the t-adic one. Binary operations refuse mixed valuations — no coercion.
class ValuedScalar {
public:
    ValuedScalar(); // archimedean zero
    ValuedScalar(BigRational x, Valuation val);
    ValuedScalar(LaurentPoly x, Valuation val);

    const Valuation& valuation() const { return val_; }
    bool holds_rational() const;
    const BigRational& rational() const; // precondition: rational-backed
    const LaurentPoly& laurent() const;  // precondition: Laurent-backed

    bool is_zero() const;
    // Valuation of the element under its own absolute value; nullopt encodes
    // +infinity (zero). Archimedean scalars have no valuation and throw.
    std::optional<long long> value_order() const;

    friend bool operator==(const ValuedScalar&, const ValuedScalar&) = default;

private:
    Valuation val_;
    std::variant<BigRational, LaurentPoly> payload_;
};

ValuedScalar scalar_zero_like(const ValuedScalar& sample);
ValuedScalar scalar_one_like(const ValuedScalar& sample);
ValuedScalar scalar_add(const ValuedScalar& x, const ValuedScalar& y);
ValuedScalar scalar_sub(const ValuedScalar& x, const ValuedScalar& y);
ValuedScalar scalar_mul(const ValuedScalar& x, const ValuedScalar& y);
ValuedScalar scalar_neg(const ValuedScalar& x);
// a^e; e < 0 requires an invertible base (nonzero rational / Laurent unit).
ValuedScalar scalar_pow(const ValuedScalar& a, long long e);

// Compares |x| against |y| exactly; both sides must carry the same valuation.
// Non-archimedean norms are compared through valuations (smaller valuation
// means strictly larger norm).
NormOrder norm_compare(const ValuedScalar& x, const ValuedScalar& y);

// Exact test for |a| >= 2: archimedean via rational comparison, otherwise
// valuation(a) <= -1. Rejects a == 0.
bool has_norm_at_least_two(const ValuedScalar& a);

// Exact test for |x| >= |y| / 2 in the scalar's own absolute value, where the
// halving happens in the real codomain of the norm. Archimedean: compare
// |2x| with |y| as rationals. Non-archimedean with |z| = p^(-v(z)): the test
// is v(x) <= v(y) + slack where slack = 1 when p == 2 (only then is
// p^(-1) >= 1/2) and 0 otherwise; p is the prime for p-adic scalars and the
// coefficient characteristic for t-adic ones.
bool norm_at_least_half_of(const ValuedScalar& x, const ValuedScalar& y);

std::string encode_scalar(const ValuedScalar& x);
ValuedScalar parse_scalar(const std::string& text, const Valuation& val);

} // namespace lampsep::exact
