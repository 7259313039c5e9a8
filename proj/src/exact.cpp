#include "lampsep/exact.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <utility>

namespace lampsep::exact {

namespace {

[[noreturn]] void fail_pre(const std::string& what) { throw precondition_error(what); }

long long checked_int(const std::string& text, const char* what) {
    if (text.empty()) fail_pre(std::string("empty ") + what);
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (i == text.size()) fail_pre(std::string("malformed ") + what + ": " + text);
    for (std::size_t k = i; k < text.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(text[k])))
            fail_pre(std::string("malformed ") + what + ": " + text);
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(text.c_str(), &end, 10);
    if (errno != 0 || end != text.c_str() + text.size())
        fail_pre(std::string("out-of-range ") + what + ": " + text);
    return v;
}

BigInt checked_bigint(const std::string& text, const char* what) {
    if (text.empty()) fail_pre(std::string("empty ") + what);
    std::size_t i = (text[0] == '-') ? 1 : 0;
    if (i == text.size()) fail_pre(std::string("malformed ") + what + ": " + text);
    for (std::size_t k = i; k < text.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(text[k])))
            fail_pre(std::string("malformed ") + what + ": " + text);
    return BigInt(text);
}

int coeff_mod(long long c, int p) {
    long long r = c % p;
    if (r < 0) r += p;
    return static_cast<int>(r);
}

} // namespace

bool is_prime(const BigInt& n) {
    if (n < 2) return false;
    for (int small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        if (n == small) return true;
        if (n % small == 0) return false;
    }
    if (n < 37 * 37) return true;
    if (n < 4'000'000) {
        for (BigInt d = 37; d * d <= n; d += 2)
            if (n % d == 0) return false;
        return true;
    }
    return boost::multiprecision::miller_rabin_test(n, 40);
}

BigInt int_pow(const BigInt& base, unsigned long long e) {
    BigInt acc = 1;
    BigInt b = base;
    while (e > 0) {
        if (e & 1ULL) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

std::optional<long long> padic_valuation(const BigRational& x, const BigInt& p) {
    if (!is_prime(p)) fail_pre("padic_valuation: modulus is not prime: " + p.str());
    if (x == 0) return std::nullopt;
    long long v = 0;
    BigInt n = boost::multiprecision::abs(numerator(x));
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    if (v > 0) return v;
    BigInt d = denominator(x);
    while (d % p == 0) {
        d /= p;
        --v;
    }
    return v;
}

BigRational rational_pow(const BigRational& base, long long e) {
    if (e == 0) return BigRational(1);
    if (base == 0) {
        if (e < 0) fail_pre("rational_pow: zero base with negative exponent");
        return BigRational(0);
    }
    const unsigned long long mag =
        e > 0 ? static_cast<unsigned long long>(e)
              : static_cast<unsigned long long>(-(e + 1)) + 1ULL;
    const BigRational direct(int_pow(numerator(base), mag), int_pow(denominator(base), mag));
    return e > 0 ? direct : BigRational(1) / direct;
}

std::string encode_rational(const BigRational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

BigRational parse_rational(const std::string& text) {
    const std::size_t slash = text.find('/');
    if (slash == std::string::npos) return BigRational(checked_bigint(text, "rational"));
    BigInt num = checked_bigint(text.substr(0, slash), "rational numerator");
    BigInt den = checked_bigint(text.substr(slash + 1), "rational denominator");
    if (den <= 0) fail_pre("parse_rational: denominator must be positive: " + text);
    return BigRational(num, den);
}

// --------------------------------------------------------------------------
// Laurent polynomials over F_p.
// --------------------------------------------------------------------------

LaurentPoly LaurentPoly::zero(int p) {
    if (p < 2 || !is_prime(BigInt(p))) fail_pre("LaurentPoly: characteristic must be prime");
    LaurentPoly out;
    out.characteristic = p;
    return out;
}

LaurentPoly LaurentPoly::one(int p) { return monomial(p, 1, 0); }

LaurentPoly LaurentPoly::monomial(int p, int coeff, int exponent) {
    LaurentPoly out = zero(p);
    const int c = coeff_mod(coeff, p);
    if (c != 0) out.coeffs[exponent] = c;
    return out;
}

namespace {

void require_same_char(const LaurentPoly& x, const LaurentPoly& y) {
    if (x.characteristic != y.characteristic)
        fail_pre("Laurent arithmetic across different characteristics");
}

} // namespace

LaurentPoly laurent_add(const LaurentPoly& x, const LaurentPoly& y) {
    require_same_char(x, y);
    LaurentPoly out = x;
    for (const auto& [e, c] : y.coeffs) {
        const auto it = out.coeffs.find(e);
        const int existing = it == out.coeffs.end() ? 0 : it->second;
        const int s = coeff_mod(static_cast<long long>(existing) + c, x.characteristic);
        if (s == 0) {
            if (it != out.coeffs.end()) out.coeffs.erase(it);
        } else {
            out.coeffs[e] = s;
        }
    }
    return out;
}

LaurentPoly laurent_neg(const LaurentPoly& x) {
    LaurentPoly out = LaurentPoly::zero(x.characteristic);
    for (const auto& [e, c] : x.coeffs) out.coeffs[e] = x.characteristic - c;
    return out;
}

LaurentPoly laurent_sub(const LaurentPoly& x, const LaurentPoly& y) {
    return laurent_add(x, laurent_neg(y));
}

LaurentPoly laurent_mul(const LaurentPoly& x, const LaurentPoly& y) {
    require_same_char(x, y);
    LaurentPoly out = LaurentPoly::zero(x.characteristic);
    std::map<int, long long> acc;
    for (const auto& [ex, cx] : x.coeffs)
        for (const auto& [ey, cy] : y.coeffs)
            acc[ex + ey] += static_cast<long long>(cx) * cy;
    for (const auto& [e, c] : acc) {
        const int r = coeff_mod(c, x.characteristic);
        if (r != 0) out.coeffs[e] = r;
    }
    return out;
}

LaurentPoly laurent_pow(const LaurentPoly& x, long long e) {
    if (e == 0) return LaurentPoly::one(x.characteristic);
    if (e > 0) {
        LaurentPoly acc = LaurentPoly::one(x.characteristic);
        LaurentPoly b = x;
        unsigned long long mag = static_cast<unsigned long long>(e);
        while (mag > 0) {
            if (mag & 1ULL) acc = laurent_mul(acc, b);
            b = laurent_mul(b, b);
            mag >>= 1;
        }
        return acc;
    }
    if (!x.is_monomial())
        fail_pre("laurent_pow: negative exponent requires an invertible (monomial) base");
    const auto [exp, coeff] = *x.coeffs.begin();
    // Invert the unit c*t^k: coefficient inverse mod p, negated exponent.
    int inv = 1;
    for (int cand = 1; cand < x.characteristic; ++cand)
        if (coeff_mod(static_cast<long long>(cand) * coeff, x.characteristic) == 1) {
            inv = cand;
            break;
        }
    LaurentPoly base_inv = LaurentPoly::monomial(x.characteristic, inv, -exp);
    return laurent_pow(base_inv, -e);
}

std::optional<long long> t_adic_order(const LaurentPoly& x) {
    if (x.is_zero()) return std::nullopt;
    return x.coeffs.begin()->first;
}

std::string encode_laurent(const LaurentPoly& x) {
    std::ostringstream out;
    out << '{' << x.characteristic << ';';
    bool first = true;
    for (const auto& [e, c] : x.coeffs) {
        if (!first) out << ',';
        first = false;
        out << e << ':' << c;
    }
    out << '}';
    return out.str();
}

LaurentPoly parse_laurent(const std::string& text) {
    if (text.size() < 4 || text.front() != '{' || text.back() != '}')
        fail_pre("parse_laurent: expected {p;e:c,...}: " + text);
    const std::string body = text.substr(1, text.size() - 2);
    const std::size_t semi = body.find(';');
    if (semi == std::string::npos) fail_pre("parse_laurent: missing ';': " + text);
    const long long p = checked_int(body.substr(0, semi), "Laurent characteristic");
    if (p < 2 || p > 1'000'000) fail_pre("parse_laurent: characteristic out of range: " + text);
    LaurentPoly out = LaurentPoly::zero(static_cast<int>(p));
    std::string rest = body.substr(semi + 1);
    if (rest.empty()) return out;
    std::istringstream terms(rest);
    std::string term;
    while (std::getline(terms, term, ',')) {
        const std::size_t colon = term.find(':');
        if (colon == std::string::npos) fail_pre("parse_laurent: malformed term: " + term);
        const long long e = checked_int(term.substr(0, colon), "Laurent exponent");
        const long long c = checked_int(term.substr(colon + 1), "Laurent coefficient");
        if (c <= 0 || c >= p) fail_pre("parse_laurent: coefficient outside [1, p): " + term);
        if (e < -1'000'000'000 || e > 1'000'000'000)
            fail_pre("parse_laurent: exponent out of range: " + term);
        const int exponent = static_cast<int>(e);
        if (out.coeffs.count(exponent)) fail_pre("parse_laurent: duplicate exponent: " + term);
        out.coeffs[exponent] = static_cast<int>(c);
    }
    return out;
}

// --------------------------------------------------------------------------
// Valuations and valued scalars.
// --------------------------------------------------------------------------

Valuation Valuation::archimedean() { return Valuation{ValuationKind::archimedean, 0}; }

Valuation Valuation::p_adic(const BigInt& p) {
    if (!is_prime(p)) fail_pre("Valuation::p_adic: not a prime: " + p.str());
    return Valuation{ValuationKind::p_adic, p};
}

Valuation Valuation::t_adic() { return Valuation{ValuationKind::t_adic, 0}; }

std::string encode_valuation(const Valuation& v) {
    switch (v.kind) {
        case ValuationKind::archimedean: return "arch";
        case ValuationKind::p_adic: return v.prime.str() + "adic";
        case ValuationKind::t_adic: return "tadic";
    }
    fail_pre("encode_valuation: corrupt valuation kind");
}

Valuation parse_valuation(const std::string& text) {
    if (text == "arch") return Valuation::archimedean();
    if (text == "tadic") return Valuation::t_adic();
    const std::size_t suffix = text.rfind("adic");
    if (suffix != std::string::npos && suffix + 4 == text.size() && suffix > 0)
        return Valuation::p_adic(checked_bigint(text.substr(0, suffix), "valuation prime"));
    fail_pre("parse_valuation: expected arch, <p>adic, or tadic: " + text);
}

ValuedScalar::ValuedScalar() : val_(Valuation::archimedean()), payload_(BigRational(0)) {}

ValuedScalar::ValuedScalar(BigRational x, Valuation val)
    : val_(std::move(val)), payload_(std::move(x)) {
    if (val_.kind == ValuationKind::t_adic)
        fail_pre("ValuedScalar: t-adic scalars must be Laurent-backed");
}

ValuedScalar::ValuedScalar(LaurentPoly x, Valuation val)
    : val_(std::move(val)), payload_(std::move(x)) {
    if (val_.kind != ValuationKind::t_adic)
        fail_pre("ValuedScalar: Laurent payload requires the t-adic valuation");
}

bool ValuedScalar::holds_rational() const {
    return std::holds_alternative<BigRational>(payload_);
}

const BigRational& ValuedScalar::rational() const {
    if (!holds_rational()) fail_pre("ValuedScalar::rational on a Laurent-backed scalar");
    return std::get<BigRational>(payload_);
}

const LaurentPoly& ValuedScalar::laurent() const {
    if (holds_rational()) fail_pre("ValuedScalar::laurent on a rational-backed scalar");
    return std::get<LaurentPoly>(payload_);
}

bool ValuedScalar::is_zero() const {
    return holds_rational() ? rational() == 0 : laurent().is_zero();
}

std::optional<long long> ValuedScalar::value_order() const {
    switch (val_.kind) {
        case ValuationKind::archimedean:
            fail_pre("value_order: archimedean scalars have no valuation");
        case ValuationKind::p_adic:
            return padic_valuation(rational(), val_.prime);
        case ValuationKind::t_adic:
            return t_adic_order(laurent());
    }
    fail_pre("value_order: corrupt valuation kind");
}

namespace {

void require_same_valuation(const ValuedScalar& x, const ValuedScalar& y, const char* op) {
    if (!(x.valuation() == y.valuation()))
        fail_pre(std::string(op) + ": operands carry different valuations (" +
                 encode_valuation(x.valuation()) + " vs " + encode_valuation(y.valuation()) + ")");
    if (!x.holds_rational() && !y.holds_rational() &&
        x.laurent().characteristic != y.laurent().characteristic)
        fail_pre(std::string(op) + ": Laurent operands with different characteristics");
}

} // namespace

ValuedScalar scalar_zero_like(const ValuedScalar& sample) {
    if (sample.holds_rational()) return ValuedScalar(BigRational(0), sample.valuation());
    return ValuedScalar(LaurentPoly::zero(sample.laurent().characteristic), sample.valuation());
}

ValuedScalar scalar_one_like(const ValuedScalar& sample) {
    if (sample.holds_rational()) return ValuedScalar(BigRational(1), sample.valuation());
    return ValuedScalar(LaurentPoly::one(sample.laurent().characteristic), sample.valuation());
}

ValuedScalar scalar_add(const ValuedScalar& x, const ValuedScalar& y) {
    require_same_valuation(x, y, "scalar_add");
    if (x.holds_rational()) return ValuedScalar(x.rational() + y.rational(), x.valuation());
    return ValuedScalar(laurent_add(x.laurent(), y.laurent()), x.valuation());
}

ValuedScalar scalar_sub(const ValuedScalar& x, const ValuedScalar& y) {
    require_same_valuation(x, y, "scalar_sub");
    if (x.holds_rational()) return ValuedScalar(x.rational() - y.rational(), x.valuation());
    return ValuedScalar(laurent_sub(x.laurent(), y.laurent()), x.valuation());
}

ValuedScalar scalar_mul(const ValuedScalar& x, const ValuedScalar& y) {
    require_same_valuation(x, y, "scalar_mul");
    if (x.holds_rational()) return ValuedScalar(x.rational() * y.rational(), x.valuation());
    return ValuedScalar(laurent_mul(x.laurent(), y.laurent()), x.valuation());
}

ValuedScalar scalar_neg(const ValuedScalar& x) {
    if (x.holds_rational()) return ValuedScalar(-x.rational(), x.valuation());
    return ValuedScalar(laurent_neg(x.laurent()), x.valuation());
}

ValuedScalar scalar_pow(const ValuedScalar& a, long long e) {
    if (a.holds_rational()) return ValuedScalar(rational_pow(a.rational(), e), a.valuation());
    return ValuedScalar(laurent_pow(a.laurent(), e), a.valuation());
}

NormOrder norm_compare(const ValuedScalar& x, const ValuedScalar& y) {
    require_same_valuation(x, y, "norm_compare");
    if (x.valuation().kind == ValuationKind::archimedean) {
        const BigRational ax = boost::multiprecision::abs(x.rational());
        const BigRational ay = boost::multiprecision::abs(y.rational());
        if (ax < ay) return NormOrder::LT;
        if (ax == ay) return NormOrder::EQ;
        return NormOrder::GT;
    }
    // |z| = p^(-v(z)): larger valuation means smaller norm; v = +inf is 0.
    const std::optional<long long> vx = x.value_order();
    const std::optional<long long> vy = y.value_order();
    if (!vx && !vy) return NormOrder::EQ;
    if (!vx) return NormOrder::LT;
    if (!vy) return NormOrder::GT;
    if (*vx > *vy) return NormOrder::LT;
    if (*vx == *vy) return NormOrder::EQ;
    return NormOrder::GT;
}

bool has_norm_at_least_two(const ValuedScalar& a) {
    if (a.is_zero()) fail_pre("has_norm_at_least_two: zero scalar");
    if (a.valuation().kind == ValuationKind::archimedean)
        return boost::multiprecision::abs(a.rational()) >= 2;
    return *a.value_order() <= -1;
}

bool norm_at_least_half_of(const ValuedScalar& x, const ValuedScalar& y) {
    require_same_valuation(x, y, "norm_at_least_half_of");
    if (x.valuation().kind == ValuationKind::archimedean) {
        const BigRational two_x = boost::multiprecision::abs(BigRational(2) * x.rational());
        return two_x >= boost::multiprecision::abs(y.rational());
    }
    const std::optional<long long> vy = y.value_order();
    if (!vy) return true; // |y| = 0, any |x| qualifies
    const std::optional<long long> vx = x.value_order();
    if (!vx) return false;
    BigInt base = x.valuation().prime;
    if (x.valuation().kind == ValuationKind::t_adic) base = x.laurent().characteristic;
    const long long slack = (base == 2) ? 1 : 0;
    return *vx <= *vy + slack;
}

std::string encode_scalar(const ValuedScalar& x) {
    return x.holds_rational() ? encode_rational(x.rational()) : encode_laurent(x.laurent());
}

ValuedScalar parse_scalar(const std::string& text, const Valuation& val) {
    if (val.kind == ValuationKind::t_adic) return ValuedScalar(parse_laurent(text), val);
    return ValuedScalar(parse_rational(text), val);
}

} // namespace lampsep::exact
