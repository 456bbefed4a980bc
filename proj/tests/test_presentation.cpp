#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "gsca/presentation.hpp"

using namespace gsca;
using fixtures::ring2;

namespace {

/// Free-algebra coefficient vector from a list of (i, j, value) terms for
/// x_i x_j (1-based).
Vec free_elem(const Field& F, int n, std::initializer_list<std::tuple<int, int, int64_t>> terms) {
    Vec v(static_cast<size_t>(n) * n, F.zero());
    for (auto [i, j, val] : terms)
        v[static_cast<size_t>(i - 1) * n + (j - 1)] =
            F.add(v[static_cast<size_t>(i - 1) * n + (j - 1)], F.from_int(val));
    return v;
}

bool same_span(const Field& F, const std::vector<Vec>& a, const std::vector<Vec>& b) {
    Mat ma(0, a[0].size()), mb(0, b[0].size()), mu(0, a[0].size());
    for (const Vec& r : a) {
        ma.add_row(r);
        mu.add_row(r);
    }
    for (const Vec& r : b) {
        mb.add_row(r);
        mu.add_row(r);
    }
    size_t ra = rank(F, ma), rb = rank(F, mb), ru = rank(F, mu);
    return ra == rb && rb == ru;
}

} // namespace

TEST_CASE("presentation of the quantum plane system") {
    QuadricSystem sys = fixtures::diag_f5_system();
    const Field& F = sys.ring.field();
    Presentation pres = build_presentation(sys);
    REQUIRE(pres.relator_count() == 1);
    // the single relation is x1 x2 + 2 x2 x1 = 0
    Vec r = relator_free(pres, 0);
    CHECK(same_span(F, {r}, {free_elem(F, 2, {{1, 2, 1}, {2, 1, 2}})}));
    // y_k are forced by x_i x_j + mu_ij x_j x_i = sum (M_k)_ij y_k:
    // y1 = 2 x1^2, y2 = 2 x2^2
    CHECK(verify_presentation(pres, sys));
}

TEST_CASE("dependent matrices are rejected") {
    Field F = Field::make(5);
    SkewRing R = ring2(5, 2);
    MuSymMatrix E11 = MuSymMatrix::zero(2), twice = MuSymMatrix::zero(2);
    E11.at(2, 0, 0) = F.one();
    twice.at(2, 0, 0) = F.from_int(2);
    QuadricSystem dep = make_system(R, {E11, twice});
    CHECK_THROWS_MATCHES(build_presentation(dep), Error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("DependentMatrices")));
}

TEST_CASE("presentation relations match the displayed lists") {
    // skew example: six relations
    {
        QuadricSystem sys = fixtures::cv53_system();
        const Field& F = sys.ring.field();
        Presentation pres = build_presentation(sys);
        REQUIRE(pres.relator_count() == 6);
        std::vector<Vec> mine;
        for (int m = 0; m < 6; ++m) mine.push_back(relator_free(pres, m));
        // x1 x3 = mu14 x3 x1; x3 x4 = x4 x3; x2 x3 + x3 x2 = -x4^2;
        // x1 x4 = -mu14 x4 x1; x4^2 = x2^2; x2 x4 - x4 x2 = -x1^2
        int64_t mu14 = 5;
        std::vector<Vec> displayed = {
            free_elem(F, 4, {{1, 3, 1}, {3, 1, -mu14}}),
            free_elem(F, 4, {{3, 4, 1}, {4, 3, -1}}),
            free_elem(F, 4, {{2, 3, 1}, {3, 2, 1}, {4, 4, 1}}),
            free_elem(F, 4, {{1, 4, 1}, {4, 1, mu14}}),
            free_elem(F, 4, {{4, 4, 1}, {2, 2, -1}}),
            free_elem(F, 4, {{2, 4, 1}, {4, 2, -1}, {1, 1, 1}}),
        };
        CHECK(same_span(F, mine, displayed));
        CHECK(verify_presentation(pres, sys));
    }
    // graded Clifford example with a = 1, b = 2: six relations
    {
        QuadricSystem sys = fixtures::vvw_gca_system();
        const Field& F = sys.ring.field();
        Presentation pres = build_presentation(sys);
        REQUIRE(pres.relator_count() == 6);
        std::vector<Vec> mine;
        for (int m = 0; m < 6; ++m) mine.push_back(relator_free(pres, m));
        // x1 x2 + x2 x1 = x1^2 - 4 x3^2;  x1 x3 + x3 x1 = 4 x3^2;
        // x1 x4 + x4 x1 = x1^2 - 4 x3^2;  x3 x4 + x4 x3 = 0;
        // x2 x4 + x4 x2 = x1^2 - 4 x3^2;  x2^2 + x3^2 = 0
        std::vector<Vec> displayed = {
            free_elem(F, 4, {{1, 2, 1}, {2, 1, 1}, {1, 1, -1}, {3, 3, 4}}),
            free_elem(F, 4, {{1, 3, 1}, {3, 1, 1}, {3, 3, -4}}),
            free_elem(F, 4, {{1, 4, 1}, {4, 1, 1}, {1, 1, -1}, {3, 3, 4}}),
            free_elem(F, 4, {{3, 4, 1}, {4, 3, 1}}),
            free_elem(F, 4, {{2, 4, 1}, {4, 2, 1}, {1, 1, -1}, {3, 3, 4}}),
            free_elem(F, 4, {{2, 2, 1}, {3, 3, 1}}),
        };
        CHECK(same_span(F, mine, displayed));
        CHECK(verify_presentation(pres, sys));
    }
}

TEST_CASE("hilbert dimensions") {
    Presentation qp = build_presentation(fixtures::diag_f5_system());
    CHECK(hilbert_dimensions(qp, 4, 5000000) == std::vector<uint64_t>{1, 2, 3, 4, 5});
    CHECK(hilbert_dimensions(qp, 0, 5000000) == std::vector<uint64_t>{1});

    Presentation cv = build_presentation(fixtures::cv53_system());
    CHECK(hilbert_dimensions(cv, 5, 5000000) == std::vector<uint64_t>{1, 4, 10, 20, 35, 56});

    Presentation gc = build_presentation(fixtures::vvw_gca_system());
    CHECK(hilbert_dimensions(gc, 5, 5000000) == std::vector<uint64_t>{1, 4, 10, 20, 35, 56});

    CHECK_THROWS_MATCHES(hilbert_dimensions(cv, 12, 1000), Error,
                         Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("BudgetExceeded")));
}

TEST_CASE("presentation audit catches corruption") {
    QuadricSystem sys = fixtures::cv53_system();
    Presentation pres = build_presentation(sys);
    REQUIRE(verify_presentation(pres, sys));
    Presentation broken = pres;
    for (size_t c = 0; c < broken.alpha.cols; ++c) broken.alpha.at(0, c) = sys.ring.field().zero();
    CHECK_FALSE(verify_presentation(broken, sys));
}

TEST_CASE("gamma reconstructs span coordinates") {
    QuadricSystem sys = fixtures::vvw_gca_system();
    const Field& F = sys.ring.field();
    int n = sys.ring.n();
    Presentation pres = build_presentation(sys);
    std::mt19937_64 rng(8);
    for (int round = 0; round < 50; ++round) {
        Vec beta(n);
        for (auto& s : beta) s = F.from_index(rng() % 13);
        // N = sum beta_k M_k; applying gamma to N's pair coordinates must
        // return beta exactly
        MuSymMatrix N = MuSymMatrix::zero(n);
        for (int k = 0; k < n; ++k)
            for (size_t t = 0; t < N.m.size(); ++t)
                N.m[t] = F.add(N.m[t], F.mul(beta[k], sys.mats[k].m[t]));
        for (int k = 0; k < n; ++k) {
            Scalar acc = F.zero();
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    acc = F.add(acc, F.mul(pres.gamma.at(k, PairBasis::index(n, i, j)), N.at(n, i, j)));
            REQUIRE(acc == beta[k]);
        }
    }
}
