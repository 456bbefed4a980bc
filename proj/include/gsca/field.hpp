#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace gsca {

/// Hard cap on the extension degree representable by inline Scalar storage.
/// Base fields default to k <= 2 and counting escalates by at most a few
/// degrees, so 6 leaves headroom without bloating hot-loop values.
inline constexpr int kMaxExtDegree = 6;

/// An element of F_{p^k} in coefficient representation against the extension
/// generator: value = sum_i c[i] * t^i, each c[i] reduced into [0, p).
/// Coefficients at positions >= k are kept at zero, so structural equality
/// coincides with field equality.
struct Scalar {
    std::array<uint32_t, kMaxExtDegree> c{};

    friend bool operator==(const Scalar&, const Scalar&) = default;
};

namespace detail {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t powmod_u64(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline uint64_t inv_mod_u64(uint64_t a, uint64_t p) {
    // extended Euclid; a nonzero mod p, p prime
    int64_t t = 0, nt = 1;
    int64_t r = static_cast<int64_t>(p), nr = static_cast<int64_t>(a % p);
    while (nr != 0) {
        int64_t q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (t < 0) t += static_cast<int64_t>(p);
    return static_cast<uint64_t>(t);
}

// -- dense polynomial helpers over F_p (coefficient vectors, low degree first) --

using PolyP = std::vector<uint64_t>;

inline void poly_trim(PolyP& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline PolyP poly_mulmod(const PolyP& a, const PolyP& b, const PolyP& mod, uint64_t p) {
    // mod monic of degree >= 1
    std::vector<uint64_t> prod(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    size_t k = mod.size() - 1;
    for (size_t i = prod.size(); i-- > k;) {
        uint64_t c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (size_t j = 0; j < k; ++j) {
            uint64_t sub = (c * mod[j]) % p;
            prod[i - k + j] = (prod[i - k + j] + p - sub) % p;
        }
    }
    prod.resize(k);
    return prod;
}

inline PolyP poly_powmod(PolyP base, uint64_t e, const PolyP& mod, uint64_t p) {
    PolyP r{1};
    r.resize(mod.size() - 1, 0);
    base.resize(mod.size() - 1, 0);
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, mod, p);
        base = poly_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

inline PolyP poly_mod(PolyP a, const PolyP& m, uint64_t p) {
    // m monic
    poly_trim(a);
    size_t dm = m.size() - 1;
    while (a.size() > dm) {
        uint64_t c = a.back();
        size_t shift = a.size() - 1 - dm;
        if (c != 0) {
            for (size_t j = 0; j < m.size(); ++j) {
                uint64_t sub = (c * m[j]) % p;
                a[shift + j] = (a[shift + j] + p - sub) % p;
            }
        }
        a.pop_back();
        poly_trim(a);
        if (a.size() <= dm) break;
    }
    return a;
}

inline PolyP poly_gcd(PolyP a, PolyP b, uint64_t p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        // make b monic for the division step
        uint64_t lead = b.back();
        if (lead != 1) {
            uint64_t li = inv_mod_u64(lead, p);
            for (auto& c : b) c = (c * li) % p;
        }
        PolyP r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// f monic of degree k over F_p is irreducible iff t^{p^k} == t (mod f) and
/// gcd(t^{p^{k/d}} - t, f) = 1 for every prime d | k.
inline bool poly_irreducible(const PolyP& f, uint64_t p) {
    size_t k = f.size() - 1;
    if (k == 0) return false;
    PolyP t{0, 1};
    if (k == 1) return true;
    PolyP x = t;
    x.resize(k, 0);
    std::vector<PolyP> frob(k + 1); // frob[i] = t^{p^i} mod f
    frob[0] = x;
    for (size_t i = 1; i <= k; ++i) frob[i] = poly_powmod(frob[i - 1], p, f, p);
    PolyP diff = frob[k];
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    poly_trim(diff);
    if (!diff.empty()) return false;
    for (size_t d = 2; d <= k; ++d) {
        if (k % d != 0) continue;
        bool prime = true;
        for (size_t e = 2; e * e <= d; ++e)
            if (d % e == 0) prime = false;
        if (!prime) continue;
        PolyP g = frob[k / d];
        g.resize(std::max<size_t>(g.size(), 2), 0);
        g[1] = (g[1] + p - 1) % p;
        PolyP gc = poly_gcd(f, g, p);
        if (gc.size() != 1) return false;
    }
    return true;
}

} // namespace detail

/// Description and arithmetic context of a finite field F_{p^k}, p an odd
/// prime. Extension fields are represented over the prime field by a monic
/// irreducible min_poly of degree k; elements are coefficient vectors against
/// its residue class t.
///
/// Copies are cheap (shared immutable state); all operations are pure.
class Field {
  public:
    Field() = default; // invalid until assigned

    /// Construct F_{p^k}. If k > 1 and min_poly is empty, a deterministic
    /// default is chosen: for k = 2, t^2 - s with s the least quadratic
    /// non-residue mod p; for k > 2, the first monic irreducible polynomial
    /// in canonical coefficient order. min_poly, when given, lists the k
    /// non-leading coefficients (constant term first) of a monic degree-k
    /// polynomial.
    static Field make(uint64_t p, int k = 1, std::vector<uint32_t> min_poly = {}) {
        require(p != 2, errc::even_characteristic, "characteristic 2 is unsupported");
        require(detail::is_prime_u64(p), errc::non_prime, "p = " + std::to_string(p) + " is not prime");
        require(p < (1ULL << 31), errc::unsupported, "p must be < 2^31");
        require(k >= 1 && k <= kMaxExtDegree, errc::unsupported,
                "extension degree k must be in [1, " + std::to_string(kMaxExtDegree) + "]");
        // keep p^k representable so element indices and exponents fit in uint64
        long double qld = 1.0L;
        for (int i = 0; i < k; ++i) qld *= static_cast<long double>(p);
        require(qld < 9.2e18L, errc::unsupported, "p^k too large");

        auto impl = std::make_shared<Impl>();
        impl->p = p;
        impl->k = k;
        impl->q = 1;
        for (int i = 0; i < k; ++i) impl->q *= p;
        if (k > 1) {
            if (min_poly.empty()) {
                min_poly = default_min_poly(p, k);
            } else {
                require(static_cast<int>(min_poly.size()) == k, errc::schema_error,
                        "min_poly must list exactly k coefficients");
                detail::PolyP f;
                for (uint32_t c : min_poly) f.push_back(c % p);
                f.push_back(1);
                require(detail::poly_irreducible(f, p), errc::reducible_min_poly,
                        "min_poly is reducible over F_p");
                for (auto& c : min_poly) c = static_cast<uint32_t>(c % p);
            }
            impl->min_poly = min_poly;
        }
        Field F;
        F.impl_ = impl;
        if (impl->q <= 65536) {
            const uint64_t q = impl->q;
            impl->inv_table.assign(q, 0);
            for (uint64_t i = 1; i < q; ++i) {
                Scalar a = F.from_index(i);
                Scalar b = (k == 1) ? F.from_index(detail::inv_mod_u64(i, p)) : F.pow(a, q - 2);
                impl->inv_table[i] = F.index_of(b);
            }
            impl->sqrt_table.assign(q, UINT64_MAX);
            for (uint64_t i = 0; i < q; ++i) {
                Scalar a = F.from_index(i);
                uint64_t sq = F.index_of(F.mul(a, a));
                if (impl->sqrt_table[sq] == UINT64_MAX) impl->sqrt_table[sq] = i;
            }
        }
        return F;
    }

    uint64_t p() const { return impl_->p; }
    int k() const { return impl_->k; }
    uint64_t order() const { return impl_->q; }
    const std::vector<uint32_t>& min_poly() const { return impl_->min_poly; }
    bool valid() const { return impl_ != nullptr; }

    friend bool operator==(const Field& a, const Field& b) {
        if (a.impl_ == b.impl_) return true;
        if (!a.impl_ || !b.impl_) return false;
        return a.impl_->p == b.impl_->p && a.impl_->k == b.impl_->k && a.impl_->min_poly == b.impl_->min_poly;
    }

    // -- element construction --

    Scalar zero() const { return Scalar{}; }

    Scalar one() const {
        Scalar s{};
        s.c[0] = 1;
        return s;
    }

    /// Embed an integer via reduction mod p (negatives allowed).
    Scalar from_int(int64_t v) const {
        int64_t m = static_cast<int64_t>(impl_->p);
        int64_t r = v % m;
        if (r < 0) r += m;
        Scalar s{};
        s.c[0] = static_cast<uint32_t>(r);
        return s;
    }

    Scalar from_coeffs(const std::vector<int64_t>& cs) const {
        require(static_cast<int>(cs.size()) <= impl_->k, errc::schema_error,
                "scalar has more coefficients than the extension degree");
        Scalar s{};
        int64_t m = static_cast<int64_t>(impl_->p);
        for (size_t i = 0; i < cs.size(); ++i) {
            int64_t r = cs[i] % m;
            if (r < 0) r += m;
            s.c[i] = static_cast<uint32_t>(r);
        }
        return s;
    }

    bool is_zero(const Scalar& a) const {
        for (int i = 0; i < impl_->k; ++i)
            if (a.c[i]) return false;
        return true;
    }

    /// Canonical element number in [0, q): sum of c[i] * p^i. Enumeration and
    /// all tie-breaking orders follow this index.
    uint64_t index_of(const Scalar& a) const {
        uint64_t idx = 0;
        for (int i = impl_->k; i-- > 0;) idx = idx * impl_->p + a.c[i];
        return idx;
    }

    Scalar from_index(uint64_t idx) const {
        Scalar s{};
        for (int i = 0; i < impl_->k; ++i) {
            s.c[i] = static_cast<uint32_t>(idx % impl_->p);
            idx /= impl_->p;
        }
        return s;
    }

    // -- arithmetic --

    Scalar add(const Scalar& a, const Scalar& b) const {
        Scalar r{};
        uint32_t p32 = static_cast<uint32_t>(impl_->p);
        for (int i = 0; i < impl_->k; ++i) {
            uint32_t s = a.c[i] + b.c[i];
            r.c[i] = s >= p32 ? s - p32 : s;
        }
        return r;
    }

    Scalar sub(const Scalar& a, const Scalar& b) const {
        Scalar r{};
        uint32_t p32 = static_cast<uint32_t>(impl_->p);
        for (int i = 0; i < impl_->k; ++i) {
            uint32_t s = a.c[i] + p32 - b.c[i];
            r.c[i] = s >= p32 ? s - p32 : s;
        }
        return r;
    }

    Scalar neg(const Scalar& a) const { return sub(Scalar{}, a); }

    Scalar mul(const Scalar& a, const Scalar& b) const {
        const int k = impl_->k;
        const uint64_t p = impl_->p;
        if (k == 1) {
            Scalar r{};
            r.c[0] = static_cast<uint32_t>((static_cast<uint64_t>(a.c[0]) * b.c[0]) % p);
            return r;
        }
        uint64_t prod[2 * kMaxExtDegree] = {};
        for (int i = 0; i < k; ++i) {
            if (!a.c[i]) continue;
            uint64_t ai = a.c[i];
            for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + ai * b.c[j]) % p;
        }
        const auto& mp = impl_->min_poly;
        for (int i = 2 * k - 2; i >= k; --i) {
            uint64_t c = prod[i];
            if (!c) continue;
            prod[i] = 0;
            for (int j = 0; j < k; ++j) {
                uint64_t sub = (c * mp[j]) % p;
                prod[i - k + j] = (prod[i - k + j] + p - sub) % p;
            }
        }
        Scalar r{};
        for (int i = 0; i < k; ++i) r.c[i] = static_cast<uint32_t>(prod[i]);
        return r;
    }

    Scalar inv(const Scalar& a) const {
        require(!is_zero(a), errc::division_by_zero, "inverse of zero");
        if (!impl_->inv_table.empty()) return from_index(impl_->inv_table[index_of(a)]);
        if (impl_->k == 1) {
            Scalar r{};
            r.c[0] = static_cast<uint32_t>(detail::inv_mod_u64(a.c[0], impl_->p));
            return r;
        }
        return pow(a, impl_->q - 2);
    }

    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    Scalar pow(Scalar base, uint64_t e) const {
        Scalar r = one();
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    bool is_square(const Scalar& a) const {
        if (is_zero(a)) return true;
        return pow(a, (impl_->q - 1) / 2) == one();
    }

    /// All r with r^2 = c: {0} for c = 0, a pair {r, -r} for nonzero squares
    /// (sorted by canonical index), empty for non-squares.
    std::vector<Scalar> square_roots(const Scalar& c) const {
        if (is_zero(c)) return {zero()};
        if (!impl_->sqrt_table.empty()) {
            uint64_t e = impl_->sqrt_table[index_of(c)];
            if (e == UINT64_MAX) return {};
            Scalar r = from_index(e);
            return root_pair(r);
        }
        if (!is_square(c)) return {};
        return root_pair(tonelli_shanks(c));
    }

    Field extended(int m) const {
        require(m >= 1, errc::unsupported, "extension degree must be >= 1");
        if (m == 1) return *this;
        return make(impl_->p, impl_->k * m);
    }

  private:
    struct Impl {
        uint64_t p = 0;
        int k = 1;
        uint64_t q = 0;
        std::vector<uint32_t> min_poly;     // k non-leading coefficients; empty for k = 1
        std::vector<uint64_t> inv_table;    // index -> index of inverse, for small q
        std::vector<uint64_t> sqrt_table;   // index -> index of least square root, UINT64_MAX if none
    };

    std::vector<Scalar> root_pair(const Scalar& r) const {
        Scalar nr = neg(r);
        if (index_of(r) <= index_of(nr)) return {r, nr};
        return {nr, r};
    }

    Scalar tonelli_shanks(const Scalar& c) const {
        const uint64_t q = impl_->q;
        uint64_t t = q - 1;
        int s = 0;
        while ((t & 1) == 0) t >>= 1, ++s;
        if (s == 1) return pow(c, (q + 1) / 4);
        // deterministic non-residue: first by canonical index
        Scalar z = zero();
        for (uint64_t i = 2; i < q; ++i) {
            z = from_index(i);
            if (!is_zero(z) && !is_square(z)) break;
        }
        int m = s;
        Scalar g = pow(z, t);
        Scalar r = pow(c, (t + 1) / 2);
        Scalar u = pow(c, t);
        while (!(u == one())) {
            int i = 0;
            Scalar v = u;
            while (!(v == one())) {
                v = mul(v, v);
                ++i;
            }
            Scalar b = g;
            for (int j = 0; j < m - i - 1; ++j) b = mul(b, b);
            m = i;
            g = mul(b, b);
            u = mul(u, g);
            r = mul(r, b);
        }
        return r;
    }

    static std::vector<uint32_t> default_min_poly(uint64_t p, int k) {
        if (k == 2) {
            // t^2 - s, s the least quadratic non-residue mod p
            uint64_t s = 2;
            while (detail::powmod_u64(s, (p - 1) / 2, p) == 1) ++s;
            return {static_cast<uint32_t>(p - s), 0};
        }
        // first irreducible monic polynomial in canonical coefficient order
        uint64_t limit = 1;
        for (int i = 0; i < k; ++i) {
            limit *= p;
            require(limit <= 100'000'000ULL, errc::unsupported,
                    "default min_poly search too large; supply min_poly explicitly");
        }
        for (uint64_t idx = 1; idx < limit; ++idx) {
            detail::PolyP f;
            uint64_t v = idx;
            for (int i = 0; i < k; ++i) {
                f.push_back(v % p);
                v /= p;
            }
            f.push_back(1);
            if (detail::poly_irreducible(f, p)) {
                std::vector<uint32_t> out;
                for (int i = 0; i < k; ++i) out.push_back(static_cast<uint32_t>(f[i]));
                return out;
            }
        }
        fail(errc::internal, "no irreducible polynomial found"); // unreachable
    }

    std::shared_ptr<const Impl> impl_;
};

/// Embedding F_{p^k} -> F_{p^{k*m}} determined by the first root (in canonical
/// index order) of the source min_poly in the target field.
class FieldHom {
  public:
    FieldHom(const Field& src, const Field& dst) : src_(src), dst_(dst) {
        require(src.p() == dst.p(), errc::field_mismatch, "embedding requires equal characteristic");
        require(dst.k() % src.k() == 0, errc::field_mismatch,
                "no embedding: source degree does not divide target degree");
        if (src.k() == 1) return;
        require(dst.order() <= 100'000'000ULL, errc::unsupported, "embedding root search too large");
        // evaluate the source min_poly at candidates until a root is found
        std::vector<Scalar> mp;
        for (uint32_t c : src.min_poly()) mp.push_back(dst.from_int(c));
        Scalar root{};
        bool found = false;
        for (uint64_t i = 0; i < dst.order(); ++i) {
            Scalar x = dst.from_index(i);
            Scalar acc = dst.pow(x, static_cast<uint64_t>(src.k()));
            for (int d = 0; d < src.k(); ++d) acc = dst.add(acc, dst.mul(mp[d], dst.pow(x, d)));
            if (dst.is_zero(acc)) {
                root = x;
                found = true;
                break;
            }
        }
        require(found, errc::internal, "min_poly has no root in the target field");
        gen_powers_.resize(src.k());
        gen_powers_[0] = dst.one();
        for (int i = 1; i < src.k(); ++i) gen_powers_[i] = dst.mul(gen_powers_[i - 1], root);
    }

    const Field& src() const { return src_; }
    const Field& dst() const { return dst_; }

    Scalar operator()(const Scalar& a) const {
        if (src_.k() == 1) {
            Scalar r{};
            r.c[0] = a.c[0];
            return r;
        }
        Scalar acc = dst_.zero();
        for (int i = 0; i < src_.k(); ++i) {
            Scalar coeff = dst_.from_int(a.c[i]);
            acc = dst_.add(acc, dst_.mul(coeff, gen_powers_[i]));
        }
        return acc;
    }

    std::vector<Scalar> operator()(const std::vector<Scalar>& v) const {
        std::vector<Scalar> out;
        out.reserve(v.size());
        for (const auto& a : v) out.push_back((*this)(a));
        return out;
    }

  private:
    Field src_, dst_;
    std::vector<Scalar> gen_powers_;
};

using Vec = std::vector<Scalar>;

/// Enumeration of P^{n-1}(F) by canonical representatives (first nonzero
/// coordinate scaled to 1), in lexicographic order of coordinate tuples with
/// scalars ordered by canonical index. Points decode from / encode to a dense
/// index in [0, size()).
class ProjectiveSpace {
  public:
    ProjectiveSpace(const Field& F, int n) : F_(F), n_(n) {
        require(n >= 1, errc::unsupported, "projective space needs n >= 1");
        uint64_t q = F.order();
        block_size_.resize(n);
        block_offset_.resize(n);
        // leading position n-1 comes first (all-smaller coordinates zero)
        uint64_t pow = 1, total = 0;
        for (int lead = n - 1; lead >= 0; --lead) {
            block_size_[lead] = pow;
            long double check = static_cast<long double>(pow) * q;
            require(check < 9.2e18L, errc::budget_exceeded, "projective space too large to index");
            pow *= q;
        }
        for (int lead = n - 1; lead >= 0; --lead) {
            block_offset_[lead] = total;
            total += block_size_[lead];
        }
        size_ = total;
    }

    uint64_t size() const { return size_; }
    int dim() const { return n_; }

    Vec decode(uint64_t idx) const {
        require(idx < size_, errc::internal, "projective index out of range");
        int lead = n_ - 1;
        while (lead > 0 && idx >= block_offset_[lead] + block_size_[lead]) --lead;
        uint64_t t = idx - block_offset_[lead];
        Vec v(n_, F_.zero());
        v[lead] = F_.one();
        uint64_t q = F_.order();
        for (int pos = n_ - 1; pos > lead; --pos) {
            v[pos] = F_.from_index(t % q);
            t /= q;
        }
        return v;
    }

    uint64_t encode(const Vec& canonical) const {
        int lead = 0;
        while (lead < n_ && F_.is_zero(canonical[lead])) ++lead;
        require(lead < n_, errc::internal, "cannot encode the zero vector");
        uint64_t t = 0;
        for (int pos = lead + 1; pos < n_; ++pos) t = t * F_.order() + F_.index_of(canonical[pos]);
        return block_offset_[lead] + t;
    }

    /// Scale so the first nonzero coordinate is 1. Returns false on the zero
    /// vector (left untouched).
    bool canonicalize(Vec& v) const {
        int lead = 0;
        while (lead < n_ && F_.is_zero(v[lead])) ++lead;
        if (lead == n_) return false;
        Scalar s = F_.inv(v[lead]);
        for (int i = lead; i < n_; ++i) v[i] = F_.mul(v[i], s);
        return true;
    }

  private:
    Field F_;
    int n_;
    uint64_t size_ = 0;
    std::vector<uint64_t> block_size_, block_offset_;
};

} // namespace gsca
