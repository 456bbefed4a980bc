#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "presentation.hpp"

namespace gsca {

/// A point of the zero locus Gamma: a pair of canonical projective points
/// annihilating every relator of the presentation.
struct PointPair {
    Vec a, b;

    friend bool operator==(const PointPair&, const PointPair&) = default;
};

struct GammaSet {
    int ext_degree = 1;
    std::vector<PointPair> pairs; // sorted by (index(a), index(b))
};

/// Enumerate Gamma over the degree-m extension: for each projective a the
/// relator conditions sum alpha_ijm (a_i b_j + mu_ij a_j b_i) = 0 are linear
/// in b; every projective solution is collected. Each output additionally
/// passes the independent span-membership check Phi(a, b) in span{M_k}.
inline GammaSet enumerate_gamma(const Presentation& pres, const QuadricSystem& sys, int ext_degree,
                                uint64_t budget) {
    RingExtension ext = extend_ring(pres.ring, ext_degree);
    const SkewRing& R = ext.ring;
    const Field& G = R.field();
    const int n = R.n();
    const int npairs = PairBasis::count(n);
    const int nrel = pres.relator_count();

    Mat alpha(pres.alpha.rows, pres.alpha.cols);
    for (size_t i = 0; i < pres.alpha.a.size(); ++i) alpha.a[i] = ext.hom(pres.alpha.a[i]);
    Mat B = pair_coordinate_matrix(sys);
    Mat Bext(B.rows, B.cols);
    for (size_t i = 0; i < B.a.size(); ++i) Bext.a[i] = ext.hom(B.a[i]);

    ProjectiveSpace ps(G, n);
    require(ps.size() <= budget, errc::budget_exceeded,
            "gamma enumeration over " + std::to_string(ps.size()) + " points exceeds budget");

    GammaSet gamma;
    gamma.ext_degree = ext_degree;
    // the span-membership bridge is a theorem only for a complete relation
    // space; degenerate (rank-deficient) presentations skip it
    bool bridge = rank(G, alpha) == static_cast<size_t>(n * (n - 1) / 2);
    Mat rel(nrel, n);
    for (uint64_t idx = 0; idx < ps.size(); ++idx) {
        Vec a = ps.decode(idx);
        rel.reset(nrel, n);
        for (int m = 0; m < nrel; ++m)
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    const Scalar& al = alpha.at(m, PairBasis::index(n, i, j));
                    if (G.is_zero(al)) continue;
                    rel.at(m, j) = G.add(rel.at(m, j), G.mul(al, a[i]));
                    rel.at(m, i) = G.add(rel.at(m, i), G.mul(al, G.mul(R.mu().at(i, j), a[j])));
                }
        Mat ns = null_space(G, rel);
        if (ns.rows == 0) continue;
        // all projective points of the solution space
        ProjectiveSpace sol(G, static_cast<int>(ns.rows));
        for (uint64_t s = 0; s < sol.size(); ++s) {
            require(gamma.pairs.size() < budget, errc::budget_exceeded,
                    "gamma collected more pairs than the budget allows");
            Vec combo = sol.decode(s);
            Vec b(n, G.zero());
            for (size_t r = 0; r < ns.rows; ++r)
                for (int cix = 0; cix < n; ++cix) b[cix] = G.add(b[cix], G.mul(combo[r], ns.at(r, cix)));
            ps.canonicalize(b);
            if (bridge) {
                // independent membership route: Phi(a,b) must lie in span{M_k}
                MuSymMatrix P = phi(R, a, b);
                Vec coords(npairs);
                for (int i = 0; i < n; ++i)
                    for (int j = i; j < n; ++j) coords[PairBasis::index(n, i, j)] = P.at(n, i, j);
                require(in_row_span(G, Bext, coords).has_value(), errc::internal,
                        "gamma member fails the span-membership bridge");
            }
            gamma.pairs.push_back({a, std::move(b)});
        }
    }
    std::sort(gamma.pairs.begin(), gamma.pairs.end(), [&](const PointPair& x, const PointPair& y) {
        uint64_t xa = ps.encode(x.a), ya = ps.encode(y.a);
        if (xa != ya) return xa < ya;
        return ps.encode(x.b) < ps.encode(y.b);
    });
    return gamma;
}

/// One classified element of P(span{M_1..M_n}): its span coordinates, the
/// form, the factorization set, and whether it factors uniquely (the
/// Delta_mu stratum, where the pair-to-form correspondence is one-to-one).
struct Stratum {
    Vec beta;
    QuadForm form;
    FactorizationSet facts;
    bool delta_mu = false;
};

struct PointCountReport {
    int ext_degree = 1;
    uint64_t span_size = 0;
    uint64_t f1 = 0, f2 = 0;
    uint64_t f_ge3 = 0; // elements factoring in three or more ways (see FactorizationSet)
    uint64_t N = 0;     // total factorization count = sum over strata of |facts|
    std::vector<Stratum> strata; // elements with >= 1 factorization, in span index order
    // filled by cross_validate:
    uint64_t gamma_count = 0;
    bool match = false;
    bool hypotheses_verified = true;
    std::string hypothesis_warning;
};

/// The structured count: enumerate P(span{M_k}) = P^{n-1}, factor tau(M)
/// for each member, and tally f_j = #{elements with exactly j
/// factorizations}. N sums j * f_j; it reduces to 2 f_2 + f_1 whenever no
/// element factors more than twice, which covers every system whose span
/// avoids the multi-factorization locus.
inline PointCountReport count_by_factorization(const QuadricSystem& sys, int ext_degree, uint64_t budget) {
    RingExtension ext = extend_ring(sys.ring, ext_degree);
    const SkewRing& R = ext.ring;
    const Field& G = R.field();
    const int n = R.n();

    std::vector<MuSymMatrix> mats;
    for (const MuSymMatrix& M : sys.mats) {
        MuSymMatrix Me;
        Me.m = ext.hom(M.m);
        mats.push_back(std::move(Me));
    }

    ProjectiveSpace ps(G, n);
    require(ps.size() <= budget, errc::budget_exceeded,
            "span enumeration over " + std::to_string(ps.size()) + " elements exceeds budget");

    PointCountReport report;
    report.ext_degree = ext_degree;
    report.span_size = ps.size();
    MuSymMatrix M = MuSymMatrix::zero(n);
    for (uint64_t idx = 0; idx < ps.size(); ++idx) {
        Vec beta = ps.decode(idx);
        std::fill(M.m.begin(), M.m.end(), G.zero());
        for (int k = 0; k < n; ++k) {
            if (G.is_zero(beta[k])) continue;
            for (size_t t = 0; t < M.m.size(); ++t) M.m[t] = G.add(M.m[t], G.mul(beta[k], mats[k].m[t]));
        }
        QuadForm Q = tau(R, M);
        FactorizationSet facts = factorizations(R, Q);
        if (facts.empty()) continue;
        size_t count = facts.size();
        if (count == 1)
            ++report.f1;
        else if (count == 2)
            ++report.f2;
        else
            ++report.f_ge3;
        report.N += count;
        report.strata.push_back({beta, std::move(Q), std::move(facts), count == 1});
    }
    return report;
}

struct CrossValidation {
    bool match = false;
    std::vector<std::string> diagnostics;
};

/// Extensional check of the counting bijection at the report's degree:
/// N must equal |Gamma|, every factorization of every stratum must appear as
/// a Gamma pair, and every Gamma pair's product form must land on a stratum
/// that lists it.
inline CrossValidation cross_validate(const QuadricSystem& sys, const PointCountReport& report,
                                      const GammaSet& gamma) {
    CrossValidation cv;
    if (report.ext_degree != gamma.ext_degree) {
        cv.diagnostics.push_back("extension degrees differ");
        return cv;
    }
    RingExtension ext = extend_ring(sys.ring, report.ext_degree);
    const SkewRing& R = ext.ring;
    const Field& G = R.field();
    const int n = R.n();
    const int npairs = PairBasis::count(n);
    ProjectiveSpace ps(G, n);

    bool ok = true;
    if (report.N != gamma.pairs.size()) {
        ok = false;
        cv.diagnostics.push_back("N = " + std::to_string(report.N) + " but |Gamma| = " +
                                 std::to_string(gamma.pairs.size()));
    }

    auto pair_key = [&](const Vec& a, const Vec& b) {
        return std::pair<uint64_t, uint64_t>(ps.encode(a), ps.encode(b));
    };
    std::vector<std::pair<uint64_t, uint64_t>> gamma_keys;
    for (const PointPair& pp : gamma.pairs) gamma_keys.push_back(pair_key(pp.a, pp.b));
    std::sort(gamma_keys.begin(), gamma_keys.end());

    // strata -> Gamma
    size_t fact_total = 0;
    for (const Stratum& st : report.strata) {
        for (const Factorization& f : st.facts.facts) {
            ++fact_total;
            Vec b = f.right;
            ps.canonicalize(b);
            if (!std::binary_search(gamma_keys.begin(), gamma_keys.end(), pair_key(f.left, b))) {
                ok = false;
                cv.diagnostics.push_back("factorization pair missing from Gamma (span index " +
                                         std::to_string(ps.encode(st.beta)) + ")");
            }
        }
    }
    if (fact_total != report.N) {
        ok = false;
        cv.diagnostics.push_back("stratum factorization total differs from N");
    }

    // Gamma -> strata
    Mat B = pair_coordinate_matrix(sys);
    Mat Bext(B.rows, B.cols);
    for (size_t i = 0; i < B.a.size(); ++i) Bext.a[i] = ext.hom(B.a[i]);
    std::vector<std::pair<uint64_t, const Stratum*>> by_index;
    for (const Stratum& st : report.strata) by_index.emplace_back(ps.encode(st.beta), &st);
    std::sort(by_index.begin(), by_index.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });

    for (const PointPair& pp : gamma.pairs) {
        MuSymMatrix P = phi(R, pp.a, pp.b);
        Vec coords(npairs);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) coords[PairBasis::index(n, i, j)] = P.at(n, i, j);
        auto beta = in_row_span(G, Bext, coords);
        if (!beta) {
            ok = false;
            cv.diagnostics.push_back("Gamma pair's product form lies outside the span");
            continue;
        }
        Vec bvec = *beta;
        if (!ps.canonicalize(bvec)) {
            ok = false;
            cv.diagnostics.push_back("Gamma pair maps to the zero span element");
            continue;
        }
        uint64_t key = ps.encode(bvec);
        auto it = std::lower_bound(by_index.begin(), by_index.end(), key,
                                   [](const auto& x, uint64_t k) { return x.first < k; });
        bool listed = false;
        if (it != by_index.end() && it->first == key) {
            for (const Factorization& f : it->second->facts.facts) {
                Vec b = f.right;
                ps.canonicalize(b);
                if (f.left == pp.a && b == pp.b) listed = true;
            }
        }
        if (!listed) {
            ok = false;
            cv.diagnostics.push_back("Gamma pair (" + std::to_string(ps.encode(pp.a)) + ", " +
                                     std::to_string(ps.encode(pp.b)) + ") not listed by its span element");
        }
    }

    cv.match = ok;
    return cv;
}

struct StabilizedCount {
    std::vector<PointCountReport> per_degree;
    uint64_t N = 0;
    int stabilized_at = 0;   // first degree from which N stayed constant
    bool stable = false;     // false when N still changed at the last step
};

/// Run the structured count over F_{q^m} for m = 1..max_ext. The geometric
/// (closed-field) count is only ever reported as "stable through the
/// searched degrees"; a count still growing at the last step is flagged,
/// never silently treated as converged.
inline StabilizedCount stabilized_count(const QuadricSystem& sys, int max_ext, uint64_t budget) {
    StabilizedCount sc;
    for (int m = 1; m <= max_ext; ++m) sc.per_degree.push_back(count_by_factorization(sys, m, budget));
    sc.N = sc.per_degree.back().N;
    if (max_ext >= 2) {
        sc.stable = sc.per_degree[max_ext - 1].N == sc.per_degree[max_ext - 2].N;
        int at = max_ext;
        while (at > 1 && sc.per_degree[at - 2].N == sc.N) --at;
        sc.stabilized_at = at;
    } else {
        sc.stable = false;
        sc.stabilized_at = 1;
    }
    return sc;
}

} // namespace gsca
