#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "field.hpp"
#include "linalg.hpp"

namespace gsca {

/// Multiplicative structure constants of the quantum polynomial ring S:
/// z_j z_i = mu_ij z_i z_j. Requires mu_ii = 1, mu_ij mu_ji = 1, all entries
/// nonzero.
class MuMatrix {
  public:
    MuMatrix() = default;

    MuMatrix(const Field& F, int n, std::vector<Scalar> entries) : n_(n), e_(std::move(entries)) {
        require(n >= 1, errc::mu_constraint_violation, "mu must have n >= 1");
        require(e_.size() == static_cast<size_t>(n) * n, errc::mu_constraint_violation,
                "mu must be an n x n matrix");
        for (int i = 0; i < n; ++i) {
            require(at(i, i) == F.one(), errc::mu_constraint_violation,
                    "mu_" + ij_label(i, i) + " must be 1");
            for (int j = 0; j < n; ++j) {
                require(!F.is_zero(at(i, j)), errc::mu_constraint_violation,
                        "mu_" + ij_label(i, j) + " must be nonzero");
                if (i < j)
                    require(F.mul(at(i, j), at(j, i)) == F.one(), errc::mu_constraint_violation,
                            "mu_" + ij_label(i, j) + " * mu_" + ij_label(j, i) + " must be 1");
            }
        }
    }

    /// All-ones mu: the commutative polynomial ring.
    static MuMatrix ones(const Field& F, int n) {
        std::vector<Scalar> e(static_cast<size_t>(n) * n, F.one());
        return MuMatrix(F, n, std::move(e));
    }

    int n() const { return n_; }
    const Scalar& at(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }

    static std::string ij_label(int i, int j) { return std::to_string(i + 1) + std::to_string(j + 1); }

  private:
    int n_ = 0;
    std::vector<Scalar> e_;
};

/// Exponent vector of a normal-ordered monomial z_1^{e_1} ... z_n^{e_n}.
using Monomial = std::vector<uint8_t>;

inline int monomial_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), 0, [](int s, uint8_t e) { return s + e; });
}

/// Sparse element of S in the normal-form monomial basis; no zero
/// coefficients are stored, so structural equality is ring equality.
/// Monomial keys compare lexicographically on exponent vectors.
using SkewPoly = std::map<Monomial, Scalar>;

/// The quantum polynomial ring S = k<z_1..z_n> / (z_j z_i - mu_ij z_i z_j).
/// Pure value: all operations const.
class SkewRing {
  public:
    SkewRing() = default;
    SkewRing(Field F, MuMatrix mu) : F_(std::move(F)), mu_(std::move(mu)) {}

    const Field& field() const { return F_; }
    const MuMatrix& mu() const { return mu_; }
    int n() const { return mu_.n(); }

    // -- polynomial building blocks --

    SkewPoly zero_poly() const { return {}; }

    SkewPoly constant(const Scalar& c) const {
        SkewPoly f;
        if (!F_.is_zero(c)) f[Monomial(n(), 0)] = c;
        return f;
    }

    /// The generator z_i (1-based).
    SkewPoly gen(int i) const {
        require(i >= 1 && i <= n(), errc::internal, "generator index out of range");
        Monomial m(n(), 0);
        m[i - 1] = 1;
        SkewPoly f;
        f[m] = F_.one();
        return f;
    }

    SkewPoly from_linear(const Vec& coeffs) const {
        SkewPoly f;
        for (int i = 0; i < n(); ++i) {
            if (F_.is_zero(coeffs[i])) continue;
            Monomial m(n(), 0);
            m[i] = 1;
            f[m] = coeffs[i];
        }
        return f;
    }

    void add_term(SkewPoly& f, const Monomial& m, const Scalar& c) const {
        if (F_.is_zero(c)) return;
        auto it = f.find(m);
        if (it == f.end()) {
            f[m] = c;
            return;
        }
        it->second = F_.add(it->second, c);
        if (F_.is_zero(it->second)) f.erase(it);
    }

    SkewPoly add(const SkewPoly& f, const SkewPoly& g) const {
        SkewPoly r = f;
        for (const auto& [m, c] : g) add_term(r, m, c);
        return r;
    }

    SkewPoly sub(const SkewPoly& f, const SkewPoly& g) const {
        SkewPoly r = f;
        for (const auto& [m, c] : g) add_term(r, m, F_.neg(c));
        return r;
    }

    SkewPoly scale(const SkewPoly& f, const Scalar& s) const {
        SkewPoly r;
        if (F_.is_zero(s)) return r;
        for (const auto& [m, c] : f) r[m] = F_.mul(c, s);
        return r;
    }

    /// Normal-form product of two normal monomials: moving each z_i block of
    /// the right factor across the z_j blocks (j > i) of the left factor
    /// picks up mu_ij once per transposition, so the crossing coefficient is
    /// prod_{i<j} mu_ij^{left_j * right_i}.
    std::pair<Monomial, Scalar> monomial_mul(const Monomial& a, const Monomial& b) const {
        Scalar coeff = F_.one();
        for (int i = 0; i < n(); ++i) {
            if (!b[i]) continue;
            for (int j = i + 1; j < n(); ++j) {
                if (!a[j]) continue;
                uint64_t e = static_cast<uint64_t>(a[j]) * b[i];
                coeff = F_.mul(coeff, F_.pow(mu_.at(i, j), e));
            }
        }
        Monomial m(n());
        for (int i = 0; i < n(); ++i) m[i] = static_cast<uint8_t>(a[i] + b[i]);
        return {m, coeff};
    }

    SkewPoly mul(const SkewPoly& f, const SkewPoly& g) const {
        SkewPoly r;
        for (const auto& [mf, cf] : f) {
            check_poly(mf);
            for (const auto& [mg, cg] : g) {
                check_poly(mg);
                auto [m, cross] = monomial_mul(mf, mg);
                r_add(r, m, F_.mul(F_.mul(cf, cg), cross));
            }
        }
        return r;
    }

    /// Normal form of a word in the generators (1-based indices) times a
    /// coefficient: a single term.
    SkewPoly normal_form_word(const std::vector<int>& word, const Scalar& coeff) const {
        SkewPoly acc = constant(coeff);
        for (int i : word) acc = mul(acc, gen(i));
        return acc;
    }

    /// -1 for the zero polynomial; the common degree if homogeneous; throws
    /// otherwise.
    int homogeneous_degree(const SkewPoly& f) const {
        int d = -1;
        for (const auto& [m, c] : f) {
            int dm = monomial_degree(m);
            if (d == -1) d = dm;
            require(d == dm, errc::non_homogeneous, "polynomial is not homogeneous");
        }
        return d;
    }

    /// All degree-d normal monomials in lexicographic exponent order.
    std::vector<Monomial> monomial_basis(int d) const {
        std::vector<Monomial> out;
        Monomial cur(n(), 0);
        basis_rec(out, cur, 0, d);
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Dense coefficient row of f against a degree-d basis.
    Vec coefficient_row(const SkewPoly& f, const std::vector<Monomial>& basis) const {
        Vec row(basis.size(), F_.zero());
        for (const auto& [m, c] : f) {
            auto it = std::lower_bound(basis.begin(), basis.end(), m);
            require(it != basis.end() && *it == m, errc::internal, "monomial outside basis");
            row[it - basis.begin()] = c;
        }
        return row;
    }

    /// Row-reduced basis of the degree-d piece of the two-sided ideal
    /// generated by homogeneous gens: span{ m1 * g * m2 } over normal
    /// monomials m1, m2 with matching degrees.
    Mat graded_ideal_piece(const std::vector<SkewPoly>& gens, int d, const std::vector<Monomial>& basis) const {
        Mat rows(0, basis.size());
        for (const SkewPoly& g : gens) {
            if (g.empty()) continue;
            int e = homogeneous_degree(g);
            require(e <= d, errc::internal, "generator degree exceeds the requested piece");
            for (int lu = 0; lu + e <= d; ++lu) {
                int lv = d - e - lu;
                for (const Monomial& m1 : monomial_basis(lu)) {
                    SkewPoly left;
                    left[m1] = F_.one();
                    SkewPoly lg = mul(left, g);
                    for (const Monomial& m2 : monomial_basis(lv)) {
                        SkewPoly right;
                        right[m2] = F_.one();
                        rows.add_row(coefficient_row(mul(lg, right), basis));
                    }
                }
            }
        }
        size_t rk = rref(F_, rows).size();
        rows.rows = rk;
        rows.a.resize(rk * rows.cols);
        return rows;
    }

    Mat graded_ideal_piece(const std::vector<SkewPoly>& gens, int d) const {
        return graded_ideal_piece(gens, d, monomial_basis(d));
    }

    /// Certificate for normality of a degree-2 element modulo the ideal of
    /// prior forms: for each generator, the coefficients expressing q*z_i in
    /// span{z_j*q} + I_3 and z_i*q in span{q*z_j} + I_3.
    struct NormalityCertificate {
        bool normal = false;
        // right_witness[i] / left_witness[i]: coefficients over the n spanning
        // products followed by the ideal-piece basis rows.
        std::vector<Vec> right_witness, left_witness;
    };

    /// A degree-2 element q != 0 is normal in S/<prior> iff q S_1 and S_1 q
    /// agree modulo the degree-3 piece of <prior>. Degree 3 suffices: S is
    /// generated in degree 1, so the exchange relations propagate upward.
    NormalityCertificate is_normal_element(const SkewPoly& q, const std::vector<SkewPoly>& prior) const {
        require(!q.empty(), errc::internal, "normality of the zero element is undefined");
        std::vector<Monomial> basis = monomial_basis(3);
        Mat ideal = graded_ideal_piece(prior, 3, basis);

        auto side = [&](bool q_on_left) {
            // spanning set: the n products with q on the opposite side, then
            // the ideal basis rows
            Mat span(0, basis.size());
            for (int j = 1; j <= n(); ++j) {
                SkewPoly prod = q_on_left ? mul(gen(j), q) : mul(q, gen(j));
                span.add_row(coefficient_row(prod, basis));
            }
            for (size_t r = 0; r < ideal.rows; ++r) span.add_row(ideal.row(r));
            std::vector<Vec> witness;
            for (int i = 1; i <= n(); ++i) {
                SkewPoly target = q_on_left ? mul(q, gen(i)) : mul(gen(i), q);
                auto sol = in_row_span(F_, span, coefficient_row(target, basis));
                if (!sol) return std::pair<bool, std::vector<Vec>>{false, {}};
                witness.push_back(*sol);
            }
            return std::pair<bool, std::vector<Vec>>{true, std::move(witness)};
        };

        NormalityCertificate cert;
        auto [rok, rwit] = side(true);
        if (!rok) return cert;
        auto [lok, lwit] = side(false);
        if (!lok) return cert;
        cert.normal = true;
        cert.right_witness = std::move(rwit);
        cert.left_witness = std::move(lwit);
        return cert;
    }

    enum class OrderPolicy { given, search };

    struct NormalizingReport {
        bool ok = false;
        std::vector<int> order; // 0-based indices of the witnessing order
    };

    /// Does the sequence form a normalizing sequence? Under `given`, checked
    /// in input order; under `search`, all orders are tried lexicographically
    /// and the first success reported.
    NormalizingReport check_normalizing_sequence(const std::vector<SkewPoly>& forms, OrderPolicy policy) const {
        std::vector<int> order(forms.size());
        std::iota(order.begin(), order.end(), 0);
        auto try_order = [&](const std::vector<int>& ord) {
            std::vector<SkewPoly> prior;
            for (int idx : ord) {
                if (!is_normal_element(forms[idx], prior).normal) return false;
                prior.push_back(forms[idx]);
            }
            return true;
        };
        NormalizingReport rep;
        if (policy == OrderPolicy::given) {
            rep.ok = try_order(order);
            rep.order = order;
            return rep;
        }
        do {
            if (try_order(order)) {
                rep.ok = true;
                rep.order = order;
                return rep;
            }
        } while (std::next_permutation(order.begin(), order.end()));
        std::iota(order.begin(), order.end(), 0);
        rep.order = order;
        return rep;
    }

  private:
    void r_add(SkewPoly& f, const Monomial& m, const Scalar& c) const { add_term(f, m, c); }

    void check_poly(const Monomial& m) const {
        require(static_cast<int>(m.size()) == n(), errc::field_mismatch,
                "polynomial belongs to a ring with a different generator count");
    }

    void basis_rec(std::vector<Monomial>& out, Monomial& cur, int pos, int remaining) const {
        if (pos == n() - 1) {
            cur[pos] = static_cast<uint8_t>(remaining);
            out.push_back(cur);
            cur[pos] = 0;
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            cur[pos] = static_cast<uint8_t>(e);
            basis_rec(out, cur, pos + 1, remaining - e);
        }
        cur[pos] = 0;
    }

    Field F_;
    MuMatrix mu_;
};

} // namespace gsca
