#pragma once

// Shared fixture builders for the test suites.

#include "gsca/expr.hpp"
#include "gsca/quadsys.hpp"

namespace fixtures {

using namespace gsca;

/// Two-generator ring over F_p with mu_12 = m.
inline SkewRing ring2(uint64_t p, int64_t m) {
    Field F = Field::make(p);
    std::vector<Scalar> mu = {F.one(), F.from_int(m), F.inv(F.from_int(m)), F.one()};
    return SkewRing(F, MuMatrix(F, 2, std::move(mu)));
}

inline SkewRing ring_n(const Field& F, int n, const std::vector<std::tuple<int, int, int64_t>>& upper) {
    std::vector<Scalar> mu(static_cast<size_t>(n) * n, F.one());
    for (auto [i, j, v] : upper) {
        Scalar s = F.from_int(v);
        mu[static_cast<size_t>(i - 1) * n + (j - 1)] = s;
        mu[static_cast<size_t>(j - 1) * n + (i - 1)] = F.inv(s);
    }
    return SkewRing(F, MuMatrix(F, n, std::move(mu)));
}

inline QuadForm form(const SkewRing& R, const std::string& expr) { return parse_form_expression(R, expr); }

/// The graded-Clifford example over F_p: mu_23 = -1, other mu_ij = 1,
/// parameters a = 1, b = 2.
inline QuadricSystem vvw_gca_system(uint64_t p = 13) {
    Field F = Field::make(p);
    SkewRing R = ring_n(F, 4, {{2, 3, -1}});
    return make_system_from_forms(R, {form(R, "z4^2"), form(R, "z2*z3"), form(R, "(z1+z2)*(z1+z4)"),
                                      form(R, "4*z1^2 - z2^2 + z3^2 + 4*z1*z3")});
}

/// The skew example over F_13: mu_14 = 5, mu_13 = 8, mu_24 = mu_34 = -1,
/// mu_23 = mu_12 = 1.
inline QuadricSystem cv53_system() {
    Field F = Field::make(13);
    SkewRing R = ring_n(F, 4, {{1, 3, 8}, {1, 4, 5}, {2, 4, -1}, {3, 4, -1}});
    return make_system_from_forms(R, {form(R, "z1*z2"), form(R, "z3^2"), form(R, "z1^2 - z2*z4"),
                                      form(R, "z2^2 + z4^2 - z2*z3")});
}

/// {z1^2, z2^2} over F_5 with mu_12 = 2 (the quantum-plane system).
inline QuadricSystem diag_f5_system() {
    SkewRing R = ring2(5, 2);
    return make_system_from_forms(R, {form(R, "z1^2"), form(R, "z2^2")});
}

inline Vec point(const Field& F, std::initializer_list<int64_t> cs) {
    Vec v;
    for (int64_t c : cs) v.push_back(F.from_int(c));
    return v;
}

} // namespace fixtures
