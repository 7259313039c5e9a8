#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <lampsep/cayley.hpp>
#include <lampsep/regmaps.hpp>

using namespace lampsep;
using exact::BigRational;
using exact::LaurentPoly;
using exact::Valuation;
using exact::ValuedScalar;
using groups::LamplighterElement;

namespace {

ValuedScalar arch(long long num, long long den = 1) {
    return ValuedScalar(BigRational(num, den), Valuation::archimedean());
}

ValuedScalar padic3(long long num, long long den = 1) {
    return ValuedScalar(BigRational(num, den), Valuation::p_adic(3));
}

LamplighterElement lamp2(const std::string& text) { return groups::parse_lamplighter(text, 2); }

regmaps::AffineEmbeddingParams doubling_params() {
    return regmaps::make_affine_params(arch(2), arch(1));
}

regmaps::AffineEmbeddingParams tripling_params() {
    return regmaps::make_affine_params(arch(3), arch(1));
}

regmaps::AffineEmbeddingParams triadic_params() {
    return regmaps::make_affine_params(padic3(1, 3), padic3(1));
}

} // namespace

TEST_CASE("affine embedding parameter validation") {
    CHECK_NOTHROW(doubling_params());
    CHECK_NOTHROW(triadic_params());
    // |3/2| < 2 archimedean.
    CHECK_THROWS_AS(regmaps::make_affine_params(arch(3, 2), arch(1)), precondition_error);
    // |3| = 1/3 under the 3-adic absolute value.
    CHECK_THROWS_AS(regmaps::make_affine_params(padic3(3), padic3(1)), precondition_error);
    CHECK_THROWS_AS(regmaps::make_affine_params(arch(2), arch(0)), precondition_error);
    CHECK_THROWS_AS(regmaps::make_affine_params(arch(0), arch(1)), precondition_error);
    CHECK_THROWS_AS(regmaps::make_affine_params(arch(2), padic3(1)), precondition_error);
    // t-adic: a = t^-1 is a unit of norm >= 2, a = t is small.
    const Valuation tv = Valuation::t_adic();
    const ValuedScalar tinv(LaurentPoly::monomial(2, 1, -1), tv);
    const ValuedScalar tpos(LaurentPoly::monomial(2, 1, 1), tv);
    const ValuedScalar tone(LaurentPoly::one(2), tv);
    CHECK_NOTHROW(regmaps::make_affine_params(tinv, tone));
    CHECK_THROWS_AS(regmaps::make_affine_params(tpos, tone), precondition_error);
}

TEST_CASE("affine image closed form") {
    const auto params = doubling_params();
    // Lamps at 0 and 1, position 3: translation 1 + 2 = 3, scaling 2^3 = 8.
    const auto image = regmaps::affine_image(lamp2("lamps:{0:1,1:1};pos:3"), params);
    CHECK(groups::encode_affine(image) == "b:3;a:8");

    // 3-adic with a = 1/3: lamp at -1 contributes b a^-1 = 3, position 0.
    const auto im2 = regmaps::affine_image(lamp2("lamps:{-1:1};pos:0"), triadic_params());
    CHECK(groups::encode_affine(im2) == "b:3;a:1");

    // Identity maps to the affine identity.
    const auto id = regmaps::affine_image(lamp2("lamps:{};pos:0"), params);
    CHECK(groups::encode_affine(id) == "b:0;a:1");

    // Negative position uses the inverse scaling.
    const auto neg = regmaps::affine_image(lamp2("lamps:{};pos:-2"), params);
    CHECK(groups::encode_affine(neg) == "b:0;a:1/4");

    // Lamp modulus other than 2 is rejected.
    CHECK_THROWS_AS(regmaps::affine_image(groups::lamplighter_identity(3), params),
                    precondition_error);
}

TEST_CASE("affine image over a Laurent coefficient field") {
    const Valuation tv = Valuation::t_adic();
    const auto params = regmaps::make_affine_params(
        ValuedScalar(LaurentPoly::monomial(2, 1, -1), tv), ValuedScalar(LaurentPoly::one(2), tv));
    const auto image = regmaps::affine_image(lamp2("lamps:{0:1};pos:1"), params);
    CHECK(groups::encode_affine(image) == "b:{2;0:1};a:{2;-1:1}");
    // Lamps at 0 and 2: 1 + t^-2.
    const auto im2 = regmaps::affine_image(lamp2("lamps:{0:1,2:1};pos:0"), params);
    CHECK(groups::encode_affine(im2) == "b:{2;-2:1,0:1};a:{2;0:1}");
}

TEST_CASE("affine image equals the conjugated-letter expansion on a ball") {
    const auto ball = cayley::ball_of(cayley::LamplighterOps{2}, 6, cayley::default_vertex_cap);
    const auto params = doubling_params();
    const auto triadic = triadic_params();
    for (const auto& x : ball.elements) {
        CHECK(regmaps::affine_image(x, params) == regmaps::affine_image_expanded(x, params));
        CHECK(regmaps::affine_image(x, triadic) == regmaps::affine_image_expanded(x, triadic));
    }
}

TEST_CASE("scaling-extension image values") {
    CHECK(groups::encode_mpq(regmaps::mpq_image(lamp2("lamps:{0:1};pos:0"), 2, 1)) == "x:1;i:0");
    CHECK(groups::encode_mpq(regmaps::mpq_image(lamp2("lamps:{0:1,2:1};pos:1"), 2, 1)) ==
          "x:5;i:1");
    CHECK(groups::encode_mpq(regmaps::mpq_image(lamp2("lamps:{-1:1};pos:0"), 3, 2)) ==
          "x:2/3;i:0");
    CHECK_THROWS_AS(regmaps::mpq_image(lamp2("lamps:{};pos:0"), 4, 2), precondition_error);
}

TEST_CASE("wreath quotient is a homomorphism on integer-lamp elements") {
    const auto ball = cayley::ball_of(cayley::WreathZZOps{}, 4, cayley::default_vertex_cap);
    for (const auto& x : ball.elements)
        for (const auto& y : ball.elements) {
            const auto lhs = regmaps::mpq_quotient(groups::wreathzz_multiply(x, y), 2, 1);
            const auto rhs = groups::mpq_multiply(regmaps::mpq_quotient(x, 2, 1),
                                                  regmaps::mpq_quotient(y, 2, 1), 2, 1);
            REQUIRE(lhs == rhs);
        }
}

TEST_CASE("scaling-extension image factors through the wreath inclusion") {
    const auto ball = cayley::ball_of(cayley::LamplighterOps{2}, 6, cayley::default_vertex_cap);
    for (const auto& x : ball.elements) {
        CHECK(regmaps::mpq_image(x, 2, 1) ==
              regmaps::mpq_quotient(regmaps::wreath_inclusion(x), 2, 1));
        CHECK(regmaps::mpq_image(x, 3, 2) ==
              regmaps::mpq_quotient(regmaps::wreath_inclusion(x), 3, 2));
    }
    // Composing with the two-state reduction is not multiplicative: s*s is the
    // domain identity while the image steps add up.
    const auto s = lamp2("lamps:{0:1};pos:0");
    const auto both = regmaps::mpq_image(groups::lamp_multiply(s, s), 2, 1);
    const auto stepped =
        groups::mpq_multiply(regmaps::mpq_image(s, 2, 1), regmaps::mpq_image(s, 2, 1), 2, 1);
    CHECK(groups::encode_mpq(both) == "x:0;i:0");
    CHECK(groups::encode_mpq(stepped) == "x:2;i:0");
    CHECK_FALSE(both == stepped);
}

TEST_CASE("wreath inclusion preserves configuration and position") {
    const auto x = regmaps::wreath_inclusion(lamp2("lamps:{-2:1,5:1};pos:-1"));
    CHECK(groups::encode_wreathzz(x) == "lamps:{-2:1,5:1};pos:-1");
    CHECK_THROWS_AS(regmaps::wreath_inclusion(groups::lamplighter_identity(5)),
                    precondition_error);
}

TEST_CASE("finitary-permutation image") {
    const std::map<int, int> swap01{{0, 1}, {1, 0}};
    // Single lamp at 0, position 1, block width 2.
    const auto image = regmaps::symshift_image(lamp2("lamps:{0:1};pos:1"), swap01, 2);
    CHECK(groups::encode_symshift(image) == "perm:{0:1,1:0};shift:2");
    // Lamps at 0 and 1 conjugate the swap into disjoint blocks.
    const auto two = regmaps::symshift_image(lamp2("lamps:{0:1,1:1};pos:0"), swap01, 2);
    CHECK(groups::encode_symshift(two) == "perm:{0:1,1:0,2:3,3:2};shift:0");
    // Negative lamp positions shift the block left.
    const auto neg = regmaps::symshift_image(lamp2("lamps:{-1:1};pos:-2"), swap01, 2);
    CHECK(groups::encode_symshift(neg) == "perm:{-2:-1,-1:-2};shift:-4");

    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(regmaps::validate_symshift_params({}, 2), precondition_error);
        CHECK_THROWS_AS(regmaps::validate_symshift_params({{3, 3}}, 2), precondition_error);
        CHECK_THROWS_AS(regmaps::validate_symshift_params(swap01, 1), precondition_error);
        CHECK_NOTHROW(regmaps::validate_symshift_params(swap01, 2));
        const std::map<int, int> three{{0, 1}, {1, 2}, {2, 0}};
        CHECK_THROWS_AS(regmaps::validate_symshift_params(three, 2), precondition_error);
        CHECK_NOTHROW(regmaps::validate_symshift_params(three, 3));
    }
}

TEST_CASE("injectivity gap inequality") {
    const auto x = lamp2("lamps:{2:1};pos:0");
    const auto y = lamp2("lamps:{0:1,1:1};pos:0");
    // a = 2: difference 4 - 3 = 1 against reference 4; 2*1 < 4 fails.
    CHECK_FALSE(regmaps::injectivity_gap(x, y, doubling_params()));
    // a = 3: difference 9 - 4 = 5 against reference 9; 2*5 >= 9 holds.
    CHECK(regmaps::injectivity_gap(x, y, tripling_params()));
    // Ultrametric case holds with equality of norms.
    CHECK(regmaps::injectivity_gap(x, y, triadic_params()));
    // Symmetry in the arguments.
    CHECK(regmaps::injectivity_gap(y, x, tripling_params()));

    CHECK_THROWS_AS(regmaps::injectivity_gap(x, x, doubling_params()), precondition_error);
    CHECK_THROWS_AS(
        regmaps::injectivity_gap(x, lamp2("lamps:{2:1};pos:1"), doubling_params()),
        precondition_error);
}

TEST_CASE("gap scan over a bounded support window") {
    SUBCASE("archimedean a = 2 dips below the half threshold") {
        const auto r = regmaps::gap_scan(doubling_params(), -3, 3);
        CHECK(r.pairs_total == 16384);
        CHECK(r.pairs_checked == 16256);
        CHECK(r.all_images_distinct);
        CHECK_FALSE(r.half_gap_all);
        REQUIRE(r.min_ratio.has_value());
        CHECK(exact::encode_rational(*r.min_ratio) == "1/64");
        CHECK(r.min_ratio_first == "lamps:{-3:1,-2:1,-1:1,0:1,1:1,2:1};pos:0");
        CHECK(r.min_ratio_second == "lamps:{3:1};pos:0");
        CHECK_FALSE(r.ultrametric_equal_all.has_value());
    }
    SUBCASE("archimedean a = 3 stays above the half threshold") {
        const auto r = regmaps::gap_scan(tripling_params(), -3, 3);
        CHECK(r.pairs_checked == 16256);
        CHECK(r.all_images_distinct);
        CHECK(r.half_gap_all);
        REQUIRE(r.min_ratio.has_value());
        CHECK(exact::encode_rational(*r.min_ratio) == "365/729");
    }
    SUBCASE("3-adic a = 1/3 meets the reference norm exactly") {
        const auto r = regmaps::gap_scan(triadic_params(), -3, 3);
        CHECK(r.pairs_checked == 16256);
        CHECK(r.all_images_distinct);
        CHECK(r.half_gap_all);
        REQUIRE(r.ultrametric_equal_all.has_value());
        CHECK(*r.ultrametric_equal_all);
        CHECK_FALSE(r.min_ratio.has_value());
    }
    SUBCASE("window validation") {
        CHECK_THROWS_AS(regmaps::gap_scan(doubling_params(), 2, 1), precondition_error);
        CHECK_THROWS_AS(regmaps::gap_scan(doubling_params(), 0, 8), precondition_error);
    }
    SUBCASE("json rendering") {
        const auto params = doubling_params();
        const auto j = regmaps::gap_scan_to_json(params, regmaps::gap_scan(params, -1, 1));
        CHECK(j["map"] == "affine");
        CHECK(j["valuation"] == "arch");
        CHECK(j["pairs_total"] == 64);
        CHECK(j["min_ratio"] == "1/4");
    }
}

TEST_CASE("edge-Lipschitz verification") {
    const auto ball = cayley::ball_of(cayley::LamplighterOps{2}, 6, cayley::default_vertex_cap);
    const long long edges = ball.graph.edge_count();

    const regmaps::MapSpec affine{regmaps::AffineMapSpec{doubling_params()}};
    const auto frag = regmaps::verify_edge_lipschitz(affine, 6);
    CHECK(frag.ok);
    CHECK(frag.checked_edges == edges);
    CHECK(frag.failures.empty());

    const regmaps::MapSpec triadic{regmaps::AffineMapSpec{triadic_params()}};
    CHECK(regmaps::verify_edge_lipschitz(triadic, 6).ok);

    const regmaps::MapSpec mpq{regmaps::MpqMapSpec{2, 1}};
    const auto mpq_frag = regmaps::verify_edge_lipschitz(mpq, 4);
    CHECK(mpq_frag.ok);

    const regmaps::MapSpec mpq32{regmaps::MpqMapSpec{3, 2}};
    CHECK(regmaps::verify_edge_lipschitz(mpq32, 4).ok);

    const regmaps::MapSpec wreath{regmaps::WreathInclusionMapSpec{}};
    CHECK(regmaps::verify_edge_lipschitz(wreath, 4).ok);

    const regmaps::MapSpec symshift{
        regmaps::SymShiftMapSpec{std::map<int, int>{{0, 1}, {1, 0}}, 2}};
    CHECK(regmaps::verify_edge_lipschitz(symshift, 4).ok);

    const regmaps::MapSpec identity{regmaps::IdentityMapSpec{}};
    CHECK(regmaps::verify_edge_lipschitz(identity, 4).ok);

    const regmaps::MapSpec constant{regmaps::ConstantMapSpec{}};
    CHECK(regmaps::verify_edge_lipschitz(constant, 4).ok);
}

TEST_CASE("injectivity verification") {
    const regmaps::MapSpec affine{regmaps::AffineMapSpec{doubling_params()}};
    const auto frag = regmaps::verify_injectivity(affine, 6);
    CHECK(frag.injective);
    CHECK(frag.max_fiber == 1);
    CHECK(frag.collision.empty());

    const regmaps::MapSpec triadic{regmaps::AffineMapSpec{triadic_params()}};
    CHECK(regmaps::verify_injectivity(triadic, 6).injective);

    const regmaps::MapSpec mpq{regmaps::MpqMapSpec{2, 1}};
    CHECK(regmaps::verify_injectivity(mpq, 6).injective);

    const regmaps::MapSpec wreath{regmaps::WreathInclusionMapSpec{}};
    CHECK(regmaps::verify_injectivity(wreath, 4).injective);

    const regmaps::MapSpec symshift{
        regmaps::SymShiftMapSpec{std::map<int, int>{{0, 1}, {1, 0}}, 2}};
    CHECK(regmaps::verify_injectivity(symshift, 4).injective);

    // The constant fixture collapses the whole ball onto one point.
    const regmaps::MapSpec constant{regmaps::ConstantMapSpec{}};
    const auto collapsed = regmaps::verify_injectivity(constant, 4);
    CHECK_FALSE(collapsed.injective);
    CHECK(collapsed.max_fiber == 44);
    REQUIRE(collapsed.collision.size() == 3);
    CHECK(collapsed.collision[0] == "lamps:{};pos:0");
    CHECK(collapsed.collision[1] == "lamps:{0:1};pos:0");
    CHECK(collapsed.collision[2] == "lamps:{};pos:0");
}

TEST_CASE("combined map verification report") {
    const regmaps::MapSpec affine{regmaps::AffineMapSpec{doubling_params()}};
    const auto report = regmaps::verify_map(affine, 6, 1);
    CHECK(report.map == "affine");
    CHECK(report.radius == 6);
    CHECK(report.domain_vertices == 155);
    CHECK(report.lipschitz.ok);
    CHECK(report.fibers.injective);
    CHECK(report.lipschitz_constant == 1);
    CHECK(report.fiber_constant == 1);

    const auto j = regmaps::report_to_json(report);
    CHECK(j["map"] == "affine");
    CHECK(j["parameters"]["a"] == "2");
    CHECK(j["parameters"]["b"] == "1");
    CHECK(j["parameters"]["valuation"] == "arch");
    CHECK(j["lipschitz"]["ok"] == true);
    CHECK(j["fibers"]["max_fiber"] == 1);

    // Worker count must not change the result.
    const auto parallel = regmaps::verify_map(affine, 6, 4);
    CHECK(regmaps::report_to_json(parallel) == j);

    const regmaps::MapSpec symshift{
        regmaps::SymShiftMapSpec{std::map<int, int>{{0, 1}, {1, 0}}, 2}};
    const auto sj = regmaps::report_to_json(regmaps::verify_map(symshift, 4));
    CHECK(sj["map"] == "symshift");
    CHECK(sj["parameters"]["sigma"] == "{0:1,1:0}");
    CHECK(sj["parameters"]["big_shift"] == 2);
}
