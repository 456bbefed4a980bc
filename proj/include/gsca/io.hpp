#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "expr.hpp"
#include "pointcount.hpp"

namespace gsca {

using json = nlohmann::ordered_json;

struct Options {
    int max_ext = 2;
    int ext_degree = 1; // single-degree operations (oracle)
    int dmax = 4;
    uint64_t budget = 5'000'000;
    SkewRing::OrderPolicy order_policy = SkewRing::OrderPolicy::given;
};

/// A validated input document: the field, the ring, the quadric system, and
/// run options. Exactly one of "matrices" / "forms" supplies the system.
struct InputDocument {
    QuadricSystem sys;
    Options options;
};

namespace detail {

inline void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& ptr) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        require(ok, errc::schema_error, "unknown key \"" + it.key() + "\" at " + ptr);
    }
}

inline int64_t get_i64(const json& j, const std::string& ptr) {
    require(j.is_number_integer(), errc::schema_error, "expected an integer at " + ptr);
    return j.get<int64_t>();
}

inline Scalar scalar_from_json(const Field& F, const json& j, const std::string& ptr) {
    if (j.is_number_integer()) return F.from_int(j.get<int64_t>());
    if (j.is_array()) {
        require(static_cast<int>(j.size()) == F.k(), errc::schema_error,
                "scalar array at " + ptr + " must have length k = " + std::to_string(F.k()));
        std::vector<int64_t> cs;
        for (size_t i = 0; i < j.size(); ++i) cs.push_back(get_i64(j[i], ptr + "/" + std::to_string(i)));
        return F.from_coeffs(cs);
    }
    fail(errc::schema_error, "expected a scalar (integer or coefficient array) at " + ptr);
}

inline std::vector<Scalar> scalar_matrix_from_json(const Field& F, const json& j, int n,
                                                   const std::string& ptr) {
    require(j.is_array() && static_cast<int>(j.size()) == n, errc::schema_error,
            "expected an array of " + std::to_string(n) + " rows at " + ptr);
    std::vector<Scalar> out;
    out.reserve(static_cast<size_t>(n) * n);
    for (int r = 0; r < n; ++r) {
        const json& row = j[r];
        std::string rptr = ptr + "/" + std::to_string(r);
        require(row.is_array() && static_cast<int>(row.size()) == n, errc::schema_error,
                "expected a row of " + std::to_string(n) + " scalars at " + rptr);
        for (int c = 0; c < n; ++c)
            out.push_back(scalar_from_json(F, row[c], rptr + "/" + std::to_string(c)));
    }
    return out;
}

/// Coefficient-map form: {"z1^2": 4, "z1*z3": 4}. Keys must be normal-order
/// degree-2 monomials.
inline QuadForm form_from_map(const SkewRing& R, const json& j, const std::string& ptr) {
    QuadForm q = QuadForm::zero(R.n());
    const Field& F = R.field();
    for (auto it = j.begin(); it != j.end(); ++it) {
        SkewPoly mono;
        try {
            mono = detail::ExprParser(R, it.key()).parse();
        } catch (const Error& e) {
            fail(errc::schema_error, std::string("bad monomial key at ") + ptr + ": " + e.what());
        }
        require(mono.size() == 1 && mono.begin()->second == F.one() &&
                    monomial_degree(mono.begin()->first) == 2,
                errc::schema_error,
                "key \"" + it.key() + "\" at " + ptr + " is not a normal-order degree-2 monomial");
        const Monomial& m = mono.begin()->first;
        int a = -1, b = -1;
        for (int t = 0; t < R.n(); ++t) {
            if (m[t] == 2) a = b = t;
            if (m[t] == 1) (a < 0 ? a : b) = t;
        }
        int idx = PairBasis::index(R.n(), a, b);
        require(F.is_zero(q.c[idx]), errc::schema_error, "duplicate monomial key at " + ptr);
        q.c[idx] = scalar_from_json(F, it.value(), ptr + "/" + it.key());
    }
    return q;
}

} // namespace detail

inline InputDocument parse_input(const std::string& bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const std::exception& e) {
        fail(errc::schema_error, std::string("invalid JSON: ") + e.what());
    }
    require(doc.is_object(), errc::schema_error, "top-level value must be an object");
    detail::check_keys(doc, {"field", "n", "mu", "matrices", "forms", "options", "comment"}, "/");

    require(doc.contains("field") && doc["field"].is_object(), errc::schema_error,
            "missing object \"field\" at /field");
    const json& jf = doc["field"];
    detail::check_keys(jf, {"p", "k", "min_poly"}, "/field");
    require(jf.contains("p"), errc::schema_error, "missing \"p\" at /field/p");
    int64_t p = detail::get_i64(jf["p"], "/field/p");
    int64_t k = jf.contains("k") ? detail::get_i64(jf["k"], "/field/k") : 1;
    require(p >= 2, errc::schema_error, "p must be >= 2 at /field/p");
    require(k >= 1 && k <= kMaxExtDegree, errc::schema_error, "k out of range at /field/k");
    std::vector<uint32_t> min_poly;
    if (jf.contains("min_poly")) {
        require(jf["min_poly"].is_array(), errc::schema_error, "expected an array at /field/min_poly");
        for (size_t i = 0; i < jf["min_poly"].size(); ++i) {
            int64_t c = detail::get_i64(jf["min_poly"][i], "/field/min_poly/" + std::to_string(i));
            int64_t r = c % p;
            if (r < 0) r += p;
            min_poly.push_back(static_cast<uint32_t>(r));
        }
        require(k > 1, errc::schema_error, "min_poly given for a prime field at /field/min_poly");
    }
    Field F = Field::make(static_cast<uint64_t>(p), static_cast<int>(k), std::move(min_poly));

    require(doc.contains("n"), errc::schema_error, "missing \"n\" at /n");
    int64_t n64 = detail::get_i64(doc["n"], "/n");
    require(n64 >= 1 && n64 <= 16, errc::schema_error, "n out of range [1, 16] at /n");
    int n = static_cast<int>(n64);

    require(doc.contains("mu"), errc::schema_error, "missing \"mu\" at /mu");
    MuMatrix mu(F, n, detail::scalar_matrix_from_json(F, doc["mu"], n, "/mu"));
    SkewRing ring(F, std::move(mu));

    bool has_m = doc.contains("matrices"), has_f = doc.contains("forms");
    require(has_m != has_f, errc::schema_error,
            "exactly one of \"matrices\" and \"forms\" must be given at /");

    InputDocument input;
    if (has_m) {
        const json& jm = doc["matrices"];
        require(jm.is_array() && static_cast<int>(jm.size()) == n, errc::schema_error,
                "expected " + std::to_string(n) + " matrices at /matrices");
        std::vector<MuSymMatrix> mats;
        for (int kx = 0; kx < n; ++kx) {
            std::string ptr = "/matrices/" + std::to_string(kx);
            MuSymMatrix M{detail::scalar_matrix_from_json(F, jm[kx], n, ptr)};
            require(is_mu_symmetric(ring, M), errc::not_mu_symmetric,
                    "matrix at " + ptr + " violates M_ij = mu_ij M_ji");
            mats.push_back(std::move(M));
        }
        input.sys = make_system(ring, std::move(mats));
    } else {
        const json& jq = doc["forms"];
        require(jq.is_array() && static_cast<int>(jq.size()) == n, errc::schema_error,
                "expected " + std::to_string(n) + " forms at /forms");
        std::vector<QuadForm> forms;
        for (int kx = 0; kx < n; ++kx) {
            std::string ptr = "/forms/" + std::to_string(kx);
            const json& jform = jq[kx];
            if (jform.is_string()) {
                forms.push_back(parse_form_expression(ring, jform.get<std::string>()));
            } else if (jform.is_object()) {
                forms.push_back(detail::form_from_map(ring, jform, ptr));
            } else {
                fail(errc::schema_error, "expected an expression string or coefficient map at " + ptr);
            }
        }
        input.sys = make_system_from_forms(ring, std::move(forms));
    }

    if (doc.contains("options")) {
        const json& jo = doc["options"];
        require(jo.is_object(), errc::schema_error, "expected an object at /options");
        detail::check_keys(jo, {"max_ext", "ext_degree", "dmax", "budget", "order_policy"}, "/options");
        if (jo.contains("max_ext")) {
            int64_t v = detail::get_i64(jo["max_ext"], "/options/max_ext");
            require(v >= 1 && v * F.k() <= kMaxExtDegree, errc::schema_error,
                    "max_ext out of range at /options/max_ext");
            input.options.max_ext = static_cast<int>(v);
        }
        if (jo.contains("ext_degree")) {
            int64_t v = detail::get_i64(jo["ext_degree"], "/options/ext_degree");
            require(v >= 1 && v * F.k() <= kMaxExtDegree, errc::schema_error,
                    "ext_degree out of range at /options/ext_degree");
            input.options.ext_degree = static_cast<int>(v);
        }
        if (jo.contains("dmax")) {
            int64_t v = detail::get_i64(jo["dmax"], "/options/dmax");
            require(v >= 0 && v <= 12, errc::schema_error, "dmax out of range at /options/dmax");
            input.options.dmax = static_cast<int>(v);
        }
        if (jo.contains("budget")) {
            int64_t v = detail::get_i64(jo["budget"], "/options/budget");
            require(v >= 1, errc::schema_error, "budget must be positive at /options/budget");
            input.options.budget = static_cast<uint64_t>(v);
        }
        if (jo.contains("order_policy")) {
            const json& vp = jo["order_policy"];
            require(vp.is_string(), errc::schema_error, "expected a string at /options/order_policy");
            std::string s = vp.get<std::string>();
            if (s == "given")
                input.options.order_policy = SkewRing::OrderPolicy::given;
            else if (s == "search")
                input.options.order_policy = SkewRing::OrderPolicy::search;
            else
                fail(errc::schema_error, "order_policy must be \"given\" or \"search\" at /options/order_policy");
        }
    }
    return input;
}

inline InputDocument load_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), errc::schema_error, "cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_input(ss.str());
}

// ---- JSON rendering of library values (canonical key and element order) ----

inline json scalar_to_json(const Field& F, const Scalar& s) {
    if (F.k() == 1) return static_cast<int64_t>(s.c[0]);
    json arr = json::array();
    for (int i = 0; i < F.k(); ++i) arr.push_back(static_cast<int64_t>(s.c[i]));
    return arr;
}

inline json vec_to_json(const Field& F, const Vec& v) {
    json arr = json::array();
    for (const Scalar& s : v) arr.push_back(scalar_to_json(F, s));
    return arr;
}

inline json form_to_json(const SkewRing& R, const QuadForm& q) {
    json obj = json::object();
    for (int idx = 0; idx < PairBasis::count(R.n()); ++idx) {
        if (R.field().is_zero(q.c[idx])) continue;
        auto [i, j] = PairBasis::unindex(R.n(), idx);
        obj[monomial_label(i, j)] = scalar_to_json(R.field(), q.c[idx]);
    }
    return obj;
}

inline json factorization_to_json(const SkewRing& R, const Factorization& f) {
    json obj = json::object();
    obj["left"] = vec_to_json(R.field(), f.left);
    obj["right"] = vec_to_json(R.field(), f.right);
    obj["left_expr"] = render_linear(R, f.left);
    obj["right_expr"] = render_linear(R, f.right);
    return obj;
}

inline json field_to_json(const Field& F) {
    json obj = json::object();
    obj["p"] = static_cast<int64_t>(F.p());
    obj["k"] = F.k();
    if (F.k() > 1) {
        json mp = json::array();
        for (uint32_t c : F.min_poly()) mp.push_back(static_cast<int64_t>(c));
        obj["min_poly"] = mp;
    }
    return obj;
}

} // namespace gsca
