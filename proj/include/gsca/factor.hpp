#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "quadform.hpp"

namespace gsca {

/// One factorization Q = left * right with left, right in S_1.
/// Canonical representative of the scalar orbit (a, b) ~ (s a, s^{-1} b):
/// the first nonzero coefficient of left is scaled to 1 and right carries the
/// exact compensating scale, so left * right reproduces Q on the nose.
struct Factorization {
    Vec left, right;

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// All factorizations of a form over the ring's field, canonicalized and
/// sorted lexicographically on the left factor.
///
/// For n = 2 the set has at most two members. For n >= 3 that bound can
/// fail: when the twisted right factor of a base factorization is
/// proportional to its left factor, the lift in the last generator is a
/// quadratic with up to two roots, so each reduction step can double the
/// count (e.g. 3 z1^2 + 2 z2^2 + 3 z3^2 factors in four distinct ways when
/// mu_23 = -1, mu_12 = mu_13 = 1 over F_5). The recursion bounds the size
/// by 2^{n-1}.
struct FactorizationSet {
    std::vector<Factorization> facts;

    size_t size() const { return facts.size(); }
    bool empty() const { return facts.empty(); }
};

namespace detail {

inline void canonicalize_factorization(const Field& F, Factorization& f) {
    size_t lead = 0;
    while (lead < f.left.size() && F.is_zero(f.left[lead])) ++lead;
    Scalar s = f.left[lead];
    Scalar si = F.inv(s);
    for (auto& c : f.left) c = F.mul(c, si);
    for (auto& c : f.right) c = F.mul(c, s);
}

/// Roots of alpha v^2 + beta v + gamma (alpha may be zero), sorted by index.
inline std::vector<Scalar> quadratic_roots(const Field& F, const Scalar& alpha, const Scalar& beta,
                                           const Scalar& gamma) {
    if (F.is_zero(alpha)) {
        if (F.is_zero(beta)) return {}; // constant equation; gamma != 0 has no roots, gamma = 0 is degenerate
        return {F.neg(F.div(gamma, beta))};
    }
    Scalar disc = F.sub(F.mul(beta, beta), F.mul(F.from_int(4), F.mul(alpha, gamma)));
    std::vector<Scalar> roots;
    Scalar denom = F.inv(F.mul(F.from_int(2), alpha));
    for (const Scalar& r : F.square_roots(disc)) {
        roots.push_back(F.mul(F.sub(r, beta), denom));
    }
    std::sort(roots.begin(), roots.end(),
              [&](const Scalar& x, const Scalar& y) { return F.index_of(x) < F.index_of(y); });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

/// Recursive factor search over the first m generators, following the
/// two-factorizations theorem's induction: reduce modulo z_m, factor the
/// image, then lift each base factorization by solving
///   u a_i + v (mu_im b_i) = c_im  and  u v = c_mm
/// for the z_m coefficients of the lifted pair (left gains v, right gains u).
/// Forms contained in <z_m> split off as left/right z_m multiples instead.
inline std::vector<Factorization> factor_rec(const SkewRing& R, int m, const std::vector<Scalar>& c) {
    const Field& F = R.field();
    bool zero = true;
    for (const Scalar& s : c)
        if (!F.is_zero(s)) zero = false;
    if (zero) return {};

    if (m == 1) {
        return {Factorization{{F.one()}, {c[0]}}};
    }

    const int last = m - 1;
    std::vector<Scalar> cbar(PairBasis::count(last));
    for (int i = 0; i < last; ++i)
        for (int j = i; j < last; ++j) cbar[PairBasis::index(last, i, j)] = c[PairBasis::index(m, i, j)];
    std::vector<Scalar> w(last);
    for (int i = 0; i < last; ++i) w[i] = c[PairBasis::index(m, i, last)];
    Scalar cnn = c[PairBasis::index(m, last, last)];

    bool bar_zero = true;
    for (const Scalar& s : cbar)
        if (!F.is_zero(s)) bar_zero = false;

    std::vector<Factorization> out;

    if (bar_zero) {
        // Q = u z_m = z_m v; a third factorization would force a zero
        // divisor in S or in S/<z_m>.
        bool w_zero = true;
        for (const Scalar& s : w)
            if (!F.is_zero(s)) w_zero = false;
        Vec em(m, F.zero());
        em[last] = F.one();
        if (w_zero) {
            Vec r = em;
            r[last] = cnn;
            out.push_back({em, r});
        } else {
            Vec u(m, F.zero());
            Vec v(m, F.zero());
            for (int i = 0; i < last; ++i) {
                u[i] = w[i];
                v[i] = F.mul(R.mu().at(last, i), w[i]); // mu_im^{-1} = mu_mi
            }
            u[last] = cnn;
            v[last] = cnn;
            out.push_back({u, em});
            out.push_back({em, v});
        }
    } else {
        std::vector<Factorization> base = factor_rec(R, last, cbar);
        for (const Factorization& fb : base) {
            const Vec& a = fb.left;
            const Vec& b = fb.right;
            Vec bs(last);
            for (int i = 0; i < last; ++i) bs[i] = F.mul(R.mu().at(i, last), b[i]);

            int i0 = 0;
            while (F.is_zero(a[i0])) ++i0;
            // is bs proportional to a?
            bool dependent = true;
            Scalar rho = F.div(bs[i0], a[i0]);
            for (int i = 0; i < last; ++i)
                if (!(F.mul(bs[i], a[i0]) == F.mul(a[i], bs[i0]))) dependent = false;

            auto push_lift = [&](const Scalar& u, const Scalar& v) {
                Factorization f;
                f.left = a;
                f.left.push_back(v);
                f.right = b;
                f.right.push_back(u);
                out.push_back(std::move(f));
            };

            if (!dependent) {
                Mat sys(last, 2);
                Vec rhs(last);
                for (int i = 0; i < last; ++i) {
                    sys.at(i, 0) = a[i];
                    sys.at(i, 1) = bs[i];
                    rhs[i] = w[i];
                }
                auto sol = solve(F, sys, rhs);
                if (!sol) continue;
                Scalar u = (*sol)[0], v = (*sol)[1];
                if (F.mul(u, v) == cnn) push_lift(u, v);
            } else {
                // solution line u = w0 - rho v, valid only if w lies on a
                Scalar w0 = F.div(w[i0], a[i0]);
                bool consistent = true;
                for (int i = 0; i < last; ++i)
                    if (!(F.mul(w[i], a[i0]) == F.mul(a[i], w[i0]))) consistent = false;
                if (!consistent) continue;
                for (const Scalar& v : quadratic_roots(F, rho, F.neg(w0), cnn)) {
                    Scalar u = F.sub(w0, F.mul(rho, v));
                    push_lift(u, v);
                }
            }
        }
    }

    for (auto& f : out) canonicalize_factorization(F, f);
    std::sort(out.begin(), out.end(), [&](const Factorization& x, const Factorization& y) {
        for (size_t i = 0; i < x.left.size(); ++i) {
            uint64_t xi = F.index_of(x.left[i]), yi = F.index_of(y.left[i]);
            if (xi != yi) return xi < yi;
        }
        return false;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace detail

/// The provable cap on the number of factorizations: two for n <= 2, at
/// most doubling per eliminated generator above that.
inline size_t factorization_cap(int n) { return n <= 1 ? 1 : (size_t{1} << (n - 1)); }

/// Every factorization Q = a b with a, b in S_1 over the ring's field,
/// canonicalized. Empty for the zero form and for forms with no factorization
/// over this field. Exceeding the 2^{n-1} recursion bound is an internal
/// contradiction and throws.
inline FactorizationSet factorizations(const SkewRing& R, const QuadForm& Q) {
    const Field& F = R.field();
    FactorizationSet set;
    set.facts = detail::factor_rec(R, R.n(), Q.c);
    if (set.facts.size() > factorization_cap(R.n()))
        fail(errc::theorem_violation,
             "a quadratic form produced more factorizations than the recursion bound allows");
    for (const Factorization& f : set.facts) {
        require(linear_product(R, f.left, f.right).c == Q.c, errc::internal,
                "factorization does not multiply back to the form");
    }
    return set;
}

/// Independent oracle: for every candidate left factor a in P^{n-1}(F) solve
/// the linear system a * b = Q for the right factor. Exact same contract and
/// canonical order as factorizations().
inline FactorizationSet factorizations_sweep(const SkewRing& R, const QuadForm& Q, uint64_t budget) {
    const Field& F = R.field();
    const int n = R.n();
    ProjectiveSpace ps(F, n);
    require(ps.size() <= budget, errc::budget_exceeded,
            "sweep over " + std::to_string(ps.size()) + " candidates exceeds budget " + std::to_string(budget));
    FactorizationSet set;
    if (form_is_zero(F, Q)) return set;
    const int rows = PairBasis::count(n);
    Mat sys(rows, n);
    Vec rhs(rows);
    for (uint64_t idx = 0; idx < ps.size(); ++idx) {
        Vec a = ps.decode(idx);
        sys.reset(rows, n);
        for (int i = 0; i < n; ++i) {
            // z_i^2 row
            int r = PairBasis::index(n, i, i);
            sys.at(r, i) = a[i];
            for (int j = i + 1; j < n; ++j) {
                r = PairBasis::index(n, i, j);
                sys.at(r, j) = F.add(sys.at(r, j), a[i]);
                sys.at(r, i) = F.add(sys.at(r, i), F.mul(R.mu().at(i, j), a[j]));
            }
        }
        for (int r = 0; r < rows; ++r) rhs[r] = Q.c[r];
        auto b = solve(F, sys, rhs);
        if (!b) continue;
        if (linear_product(R, a, *b).c != Q.c) continue; // free variables picked a non-solution
        bool bzero = true;
        for (const Scalar& s : *b)
            if (!F.is_zero(s)) bzero = false;
        if (bzero) continue;
        set.facts.push_back({a, *b});
    }
    // left factors are canonical representatives already and arrive in
    // projective index order; right factors are exact by construction
    if (set.facts.size() > factorization_cap(n))
        fail(errc::theorem_violation, "sweep exceeded the factorization recursion bound");
    return set;
}

/// Ring with scalars embedded into the degree-m extension of the base field.
struct RingExtension {
    SkewRing ring;
    FieldHom hom;
};

inline RingExtension extend_ring(const SkewRing& R, int m) {
    Field G = R.field().extended(m);
    FieldHom hom(R.field(), G);
    int n = R.n();
    std::vector<Scalar> entries(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) entries[static_cast<size_t>(i) * n + j] = hom(R.mu().at(i, j));
    return RingExtension{SkewRing(G, MuMatrix(G, n, std::move(entries))), std::move(hom)};
}

inline QuadForm embed_form(const FieldHom& hom, const QuadForm& q) {
    QuadForm out;
    out.c = hom(q.c);
    return out;
}

enum class MuRank { zero = 0, one = 1, two = 2, not_le_2 = 3 };

inline const char* mu_rank_label(MuRank r) {
    switch (r) {
        case MuRank::zero: return "0";
        case MuRank::one: return "1";
        case MuRank::two: return "2";
        case MuRank::not_le_2: return "not<=2-over-this-field";
    }
    return "?";
}

/// Field-relative mu-rank with extension escalation: 0 for the zero form; 1
/// once some factorization over an extension of degree <= max_ext has
/// right = lambda * left with lambda a square there; 2 when factorable but
/// never square-split within the bound; not<=2 when no factorization was
/// found at all.
inline MuRank mu_rank(const SkewRing& R, const QuadForm& Q, int max_ext) {
    const Field& F = R.field();
    if (form_is_zero(F, Q)) return MuRank::zero;
    bool factorable = false;
    for (int m = 1; m <= max_ext; ++m) {
        RingExtension ext = extend_ring(R, m);
        const Field& G = ext.ring.field();
        QuadForm Qm = embed_form(ext.hom, Q);
        FactorizationSet facts = factorizations(ext.ring, Qm);
        if (!facts.empty()) factorable = true;
        for (const Factorization& f : facts.facts) {
            size_t lead = 0;
            while (lead < f.left.size() && G.is_zero(f.left[lead])) ++lead;
            Scalar lambda = f.right[lead]; // left[lead] = 1 after canonicalization
            Vec scaled(f.left.size());
            for (size_t i = 0; i < f.left.size(); ++i) scaled[i] = G.mul(lambda, f.left[i]);
            if (scaled == f.right && G.is_square(lambda)) return MuRank::one;
        }
    }
    return factorable ? MuRank::two : MuRank::not_le_2;
}

} // namespace gsca
