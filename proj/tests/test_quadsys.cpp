#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "gsca/quadsys.hpp"

using namespace gsca;
using fixtures::ring2;

TEST_CASE("independence") {
    Field F = Field::make(5);
    SkewRing R = ring2(5, 2);
    MuSymMatrix E11 = MuSymMatrix::zero(2), E22 = MuSymMatrix::zero(2);
    E11.at(2, 0, 0) = F.one();
    E22.at(2, 1, 1) = F.one();
    CHECK(check_independence(make_system(R, {E11, E22})));

    MuSymMatrix twice = MuSymMatrix::zero(2);
    twice.at(2, 0, 0) = F.from_int(2);
    CHECK_FALSE(check_independence(make_system(R, {E11, twice})));

    CHECK(check_independence(fixtures::cv53_system()));
    CHECK(check_independence(fixtures::vvw_gca_system()));
}

TEST_CASE("V(U) membership") {
    SkewRing R = ring2(5, 2);
    const Field& F = R.field();
    CHECK(vu_contains(R, fixtures::point(F, {1, 1}), fixtures::point(F, {2, 1})));
    CHECK_FALSE(vu_contains(R, fixtures::point(F, {1, 1}), fixtures::point(F, {1, 2})));
    CHECK(vu_contains(R, fixtures::point(F, {1, 0}), fixtures::point(F, {1, 0})));
}

TEST_CASE("lift evaluation is independent of the lift on V(U)") {
    SkewRing R = ring2(3, 2);
    const Field& F = R.field();
    ProjectiveSpace ps(F, 2);
    std::mt19937_64 rng(31);
    for (uint64_t i = 0; i < ps.size(); ++i)
        for (uint64_t j = 0; j < ps.size(); ++j) {
            Vec a = ps.decode(i), b = ps.decode(j);
            if (!vu_contains(R, a, b)) continue;
            for (int round = 0; round < 20; ++round) {
                QuadForm q = QuadForm::zero(2);
                for (auto& s : q.c) s = F.from_index(rng() % 3);
                // canonical lift: z_i z_j -> a_i b_j; reversed lift:
                // z_i z_j -> mu_ji a_j b_i
                Scalar canonical = eval_form_lift(R, q, a, b);
                Scalar reversed = F.zero();
                for (int x = 0; x < 2; ++x)
                    for (int y = x; y < 2; ++y) {
                        Scalar c = q.c[PairBasis::index(2, x, y)];
                        Scalar term = x == y ? F.mul(a[x], b[y])
                                             : F.mul(R.mu().at(y, x), F.mul(a[y], b[x]));
                        reversed = F.add(reversed, F.mul(c, term));
                    }
                REQUIRE(canonical == reversed);
            }
        }
}

TEST_CASE("base point search") {
    // {z1^2, z2^2} is base-point free for any mu
    QuadricSystem diag = fixtures::diag_f5_system();
    BasePointReport rep = find_base_points(diag, 2, 1000000);
    CHECK(rep.free);
    CHECK(rep.searched_extensions == std::vector<int>{1, 2});

    // {z1^2, z1*z2} has the base point ([0:1], [0:1])
    SkewRing R = ring2(5, 2);
    QuadricSystem bad = make_system_from_forms(R, {fixtures::form(R, "z1^2"), fixtures::form(R, "z1*z2")});
    BasePointReport rep2 = find_base_points(bad, 2, 1000000);
    CHECK_FALSE(rep2.free);
    CHECK(rep2.found_at_degree == 1);
    REQUIRE_FALSE(rep2.base_points.empty());
    const Field& F = R.field();
    CHECK(rep2.base_points[0].first == fixtures::point(F, {0, 1}));
    CHECK(rep2.base_points[0].second == fixtures::point(F, {0, 1}));

    // a degree-1 base point persists over the quadratic extension
    RingExtension ext = extend_ring(R, 2);
    Vec a2 = ext.hom(rep2.base_points[0].first), b2 = ext.hom(rep2.base_points[0].second);
    CHECK(vu_contains(ext.ring, a2, b2));
    for (const QuadForm& q : bad.forms)
        CHECK(ext.ring.field().is_zero(eval_form_lift(ext.ring, embed_form(ext.hom, q), a2, b2)));

    // the worked example systems are free at degree 1 (degree 2 covered by acceptance)
    CHECK(find_base_points(fixtures::vvw_gca_system(), 1, 1000000).free);
    CHECK(find_base_points(fixtures::cv53_system(), 1, 1000000).free);
}

TEST_CASE("validate_system") {
    SystemVerdict v1 = validate_system(fixtures::vvw_gca_system(), SkewRing::OrderPolicy::given, 1, 1000000);
    CHECK(v1.independent);
    CHECK(v1.normalizing);
    CHECK(v1.base_point_free);
    CHECK(v1.all());

    SystemVerdict v2 = validate_system(fixtures::cv53_system(), SkewRing::OrderPolicy::given, 1, 1000000);
    CHECK(v2.all());

    Field F = Field::make(5);
    SkewRing R = ring2(5, 2);
    MuSymMatrix E11 = MuSymMatrix::zero(2), twice = MuSymMatrix::zero(2);
    E11.at(2, 0, 0) = F.one();
    twice.at(2, 0, 0) = F.from_int(2);
    SystemVerdict v3 = validate_system(make_system(R, {E11, twice}), SkewRing::OrderPolicy::given, 1, 1000000);
    CHECK_FALSE(v3.independent);
    CHECK(v3.fail_fast);
    CHECK_FALSE(v3.all());
}

TEST_CASE("budget guard") {
    QuadricSystem diag = fixtures::diag_f5_system();
    CHECK_THROWS_MATCHES(find_base_points(diag, 2, 3), Error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("BudgetExceeded")));
}
