#pragma once

#include <iostream>
#include <optional>
#include <string>

#include "io.hpp"

namespace gsca {

/// Parsed command invocation. Flags override the input document's options.
struct CliConfig {
    std::string command; // check | present | count | factor | hilbert | oracle
    std::string input_path;
    std::string format = "text"; // text | json
    std::string form_expr;       // factor
    bool with_oracle = false;    // factor: also run the sweep oracle
    std::optional<int> max_ext, ext_degree, dmax;
    std::optional<uint64_t> budget;
    std::optional<std::string> order_policy;
};

inline int exit_code_for(errc c) {
    switch (c) {
        case errc::dependent_matrices:
            return 2;
        case errc::theorem_violation:
        case errc::internal:
        case errc::field_mismatch:
        case errc::division_by_zero:
            return 3;
        default:
            return 1;
    }
}

namespace clidetail {

inline void apply_overrides(const CliConfig& cfg, const Field& F, Options& opt) {
    if (cfg.max_ext) {
        require(*cfg.max_ext >= 1 && *cfg.max_ext * F.k() <= kMaxExtDegree, errc::schema_error,
                "--max-ext out of range");
        opt.max_ext = *cfg.max_ext;
    }
    if (cfg.ext_degree) {
        require(*cfg.ext_degree >= 1 && *cfg.ext_degree * F.k() <= kMaxExtDegree, errc::schema_error,
                "--ext-degree out of range");
        opt.ext_degree = *cfg.ext_degree;
    }
    if (cfg.dmax) {
        require(*cfg.dmax >= 0 && *cfg.dmax <= 12, errc::schema_error, "--dmax out of range");
        opt.dmax = *cfg.dmax;
    }
    if (cfg.budget) {
        require(*cfg.budget >= 1, errc::schema_error, "--budget must be positive");
        opt.budget = *cfg.budget;
    }
    if (cfg.order_policy) {
        if (*cfg.order_policy == "given")
            opt.order_policy = SkewRing::OrderPolicy::given;
        else if (*cfg.order_policy == "search")
            opt.order_policy = SkewRing::OrderPolicy::search;
        else
            fail(errc::schema_error, "--order-policy must be given or search");
    }
}

inline json envelope(const CliConfig& cfg, const QuadricSystem& sys) {
    json rep = json::object();
    rep["command"] = cfg.command;
    rep["field"] = field_to_json(sys.ring.field());
    rep["n"] = sys.ring.n();
    return rep;
}

/// Free-algebra element over the x_i as a display string, coefficients in
/// row-major order x_i x_j.
inline std::string render_free(const SkewRing& R, const Vec& coeffs) {
    const Field& F = R.field();
    int n = R.n();
    std::string out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Scalar& c = coeffs[static_cast<size_t>(i) * n + j];
            if (F.is_zero(c)) continue;
            if (!out.empty()) out += " + ";
            std::string mono = i == j ? "x" + std::to_string(i + 1) + "^2"
                                      : "x" + std::to_string(i + 1) + "*x" + std::to_string(j + 1);
            if (c == F.one())
                out += mono;
            else
                out += render_scalar(F, c) + "*" + mono;
        }
    return out.empty() ? "0" : out;
}

inline json free_coeffs_to_json(const SkewRing& R, const Vec& coeffs) {
    const Field& F = R.field();
    int n = R.n();
    json obj = json::object();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Scalar& c = coeffs[static_cast<size_t>(i) * n + j];
            if (F.is_zero(c)) continue;
            std::string mono = i == j ? "x" + std::to_string(i + 1) + "^2"
                                      : "x" + std::to_string(i + 1) + "*x" + std::to_string(j + 1);
            obj[mono] = scalar_to_json(F, c);
        }
    return obj;
}

/// Expansion of y_k = sum_{i<=j} gamma_ijk (x_i x_j + mu_ij x_j x_i) into
/// free-algebra coefficients.
inline Vec y_expression_free(const Presentation& pres, int k) {
    const Field& F = pres.ring.field();
    int n = pres.ring.n();
    Vec out(static_cast<size_t>(n) * n, F.zero());
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Scalar g = pres.gamma.at(k, PairBasis::index(n, i, j));
            if (F.is_zero(g)) continue;
            if (i == j) {
                out[static_cast<size_t>(i) * n + i] =
                    F.add(out[static_cast<size_t>(i) * n + i], F.mul(F.from_int(2), g));
            } else {
                out[static_cast<size_t>(i) * n + j] = F.add(out[static_cast<size_t>(i) * n + j], g);
                out[static_cast<size_t>(j) * n + i] =
                    F.add(out[static_cast<size_t>(j) * n + i], F.mul(g, pres.ring.mu().at(i, j)));
            }
        }
    return out;
}

inline int run_check(const CliConfig& cfg, const InputDocument& input, std::ostream& out) {
    const QuadricSystem& sys = input.sys;
    SystemVerdict v = validate_system(sys, input.options.order_policy, input.options.max_ext,
                                      input.options.budget);
    json rep = envelope(cfg, sys);
    rep["order_policy"] = input.options.order_policy == SkewRing::OrderPolicy::given ? "given" : "search";
    rep["max_ext"] = input.options.max_ext;
    rep["independent"] = v.independent;
    if (v.fail_fast) {
        rep["certificate"] = "DependentMatrices";
        rep["normalizing"] = nullptr;
        rep["base_point_free"] = nullptr;
    } else {
        rep["normalizing"] = v.normalizing;
        if (v.normalizing) {
            json ord = json::array();
            for (int i : v.normalizing_report.order) ord.push_back(i + 1);
            rep["witness_order"] = ord;
        }
        rep["base_point_free"] = v.base_point_free;
        json bp = json::object();
        json searched = json::array();
        for (int m : v.base_report.searched_extensions) searched.push_back(m);
        bp["searched_extensions"] = searched;
        bp["found_at_degree"] = v.base_report.found_at_degree;
        json pts = json::array();
        const Field& G = sys.ring.field().extended(std::max(v.base_report.found_at_degree, 1));
        for (const auto& [a, b] : v.base_report.base_points) {
            json pt = json::object();
            pt["a"] = vec_to_json(G, a);
            pt["b"] = vec_to_json(G, b);
            pts.push_back(pt);
        }
        bp["base_points"] = pts;
        rep["base_point_search"] = bp;
    }
    rep["verdict"] = v.all();

    if (cfg.format == "json") {
        out << rep.dump(2) << "\n";
    } else {
        out << "check: n = " << sys.ring.n() << " over F_" << sys.ring.field().order() << "\n";
        out << "  independent:      " << (v.independent ? "yes" : "no") << "\n";
        if (v.fail_fast) {
            out << "  verdict:          FAIL (DependentMatrices)\n";
        } else {
            out << "  normalizing:      " << (v.normalizing ? "yes" : "no");
            if (v.normalizing) {
                out << " (order";
                for (int i : v.normalizing_report.order) out << " q" << i + 1;
                out << ")";
            }
            out << "\n";
            out << "  base-point free:  " << (v.base_point_free ? "yes" : "no") << " up to extension degree "
                << input.options.max_ext << "\n";
            if (!v.base_point_free) {
                const Field& G = sys.ring.field().extended(std::max(v.base_report.found_at_degree, 1));
                SkewRing dummy(G, MuMatrix::ones(G, sys.ring.n()));
                for (const auto& [a, b] : v.base_report.base_points)
                    out << "    base point a = (" << render_linear(dummy, a) << "), b = ("
                        << render_linear(dummy, b) << ")\n";
            }
            out << "  verdict:          " << (v.all() ? "PASS" : "FAIL") << "\n";
        }
    }
    return v.all() ? 0 : 2;
}

inline int run_present(const CliConfig& cfg, const InputDocument& input, std::ostream& out) {
    const QuadricSystem& sys = input.sys;
    Presentation pres = build_presentation(sys); // throws DependentMatrices -> exit 2
    bool verified = verify_presentation(pres, sys);
    json rep = envelope(cfg, sys);
    rep["relation_count"] = pres.relator_count();
    json rels = json::array();
    for (int m = 0; m < pres.relator_count(); ++m) {
        Vec coeffs = relator_free(pres, m);
        json r = json::object();
        r["coefficients"] = free_coeffs_to_json(sys.ring, coeffs);
        r["display"] = render_free(sys.ring, coeffs) + " = 0";
        rels.push_back(r);
    }
    rep["relations"] = rels;
    json ys = json::array();
    for (int k = 0; k < sys.ring.n(); ++k) {
        Vec coeffs = y_expression_free(pres, k);
        json y = json::object();
        y["coefficients"] = free_coeffs_to_json(sys.ring, coeffs);
        y["display"] = "y" + std::to_string(k + 1) + " = " + render_free(sys.ring, coeffs);
        ys.push_back(y);
    }
    rep["y_expressions"] = ys;
    rep["verified"] = verified;

    if (cfg.format == "json") {
        out << rep.dump(2) << "\n";
    } else {
        out << "presentation: " << pres.relator_count() << " quadratic relations on x1..x"
            << sys.ring.n() << "\n";
        for (const auto& r : rep["relations"]) out << "  " << r["display"].get<std::string>() << "\n";
        out << "degree-2 generators:\n";
        for (const auto& y : rep["y_expressions"]) out << "  " << y["display"].get<std::string>() << "\n";
        out << "audit: " << (verified ? "PASS" : "FAIL") << "\n";
    }
    return verified ? 0 : 3;
}

inline int run_count(const CliConfig& cfg, const InputDocument& input, std::ostream& out) {
    const QuadricSystem& sys = input.sys;
    SystemVerdict v = validate_system(sys, input.options.order_policy, input.options.max_ext,
                                      input.options.budget);
    StabilizedCount sc = stabilized_count(sys, input.options.max_ext, input.options.budget);
    PointCountReport& fin = sc.per_degree.back();
    fin.hypotheses_verified = v.all();
    if (!v.all())
        fin.hypothesis_warning = std::string("system hypotheses not verified (") +
                                 (v.independent ? "" : "independence ") + (v.normalizing ? "" : "normalizing ") +
                                 (v.base_point_free ? "" : "base-point-freeness ") + "failed)";

    Presentation pres = build_presentation(sys);
    GammaSet gamma = enumerate_gamma(pres, sys, fin.ext_degree, input.options.budget);
    CrossValidation cv = cross_validate(sys, fin, gamma);
    fin.gamma_count = gamma.pairs.size();
    fin.match = cv.match;

    RingExtension ext = extend_ring(sys.ring, fin.ext_degree);

    json rep = envelope(cfg, sys);
    rep["f1"] = fin.f1;
    rep["f2"] = fin.f2;
    rep["f_ge3"] = fin.f_ge3;
    rep["N"] = fin.N;
    rep["gamma_count"] = fin.gamma_count;
    rep["match"] = fin.match;
    rep["extension_degree"] = fin.ext_degree;
    rep["stable"] = sc.stable;
    rep["stabilized_at"] = sc.stabilized_at;
    rep["max_ext"] = input.options.max_ext;
    rep["hypotheses_verified"] = fin.hypotheses_verified;
    if (!fin.hypotheses_verified) rep["hypothesis_warning"] = fin.hypothesis_warning;
    json per = json::array();
    for (const PointCountReport& r : sc.per_degree) {
        json jd = json::object();
        jd["extension_degree"] = r.ext_degree;
        jd["span_size"] = r.span_size;
        jd["f1"] = r.f1;
        jd["f2"] = r.f2;
        jd["f_ge3"] = r.f_ge3;
        jd["N"] = r.N;
        per.push_back(jd);
    }
    rep["per_degree"] = per;
    json strata = json::array();
    for (const Stratum& st : fin.strata) {
        json js = json::object();
        js["beta"] = vec_to_json(ext.ring.field(), st.beta);
        js["form"] = form_to_json(ext.ring, st.form);
        js["form_expr"] = render_form(ext.ring, st.form);
        json facts = json::array();
        for (const Factorization& f : st.facts.facts) facts.push_back(factorization_to_json(ext.ring, f));
        js["factorizations"] = facts;
        js["delta_mu"] = st.delta_mu;
        strata.push_back(js);
    }
    rep["strata"] = strata;
    if (!cv.diagnostics.empty()) {
        json diag = json::array();
        for (const std::string& d : cv.diagnostics) diag.push_back(d);
        rep["diagnostics"] = diag;
    }

    if (cfg.format == "json") {
        out << rep.dump(2) << "\n";
    } else {
        out << "count: n = " << sys.ring.n() << " over F_" << sys.ring.field().order() << ", max_ext "
            << input.options.max_ext << "\n";
        if (!fin.hypotheses_verified) out << "  WARNING: " << fin.hypothesis_warning << "\n";
        for (const PointCountReport& r : sc.per_degree) {
            out << "  degree " << r.ext_degree << ": f1 = " << r.f1 << ", f2 = " << r.f2;
            if (r.f_ge3 > 0) out << ", f>=3 = " << r.f_ge3;
            out << ", N = " << r.N << "\n";
        }
        out << "  N = " << fin.N << " at extension degree " << fin.ext_degree;
        if (sc.stable)
            out << " (stable: unchanged at the last step)";
        else if (sc.per_degree.size() == 1)
            out << " (stability not assessed: single extension degree)";
        else
            out << " (NOT confirmed stable: value changed at the last step)";
        out << "\n";
        out << "  gamma count = " << fin.gamma_count << ", match = " << (fin.match ? "yes" : "no") << "\n";
        out << "  strata (elements with at least one factorization):\n";
        for (const Stratum& st : fin.strata) {
            out << "    [" << render_linear(ext.ring, st.beta) << " in q-coordinates] "
                << render_form(ext.ring, st.form) << " : " << st.facts.size() << " factorization"
                << (st.facts.size() == 1 ? "" : "s") << (st.delta_mu ? " (unique)" : "") << "\n";
            for (const Factorization& f : st.facts.facts)
                out << "      (" << render_linear(ext.ring, f.left) << ") * ("
                    << render_linear(ext.ring, f.right) << ")\n";
        }
    }
    return fin.match ? 0 : 3;
}

inline int run_factor(const CliConfig& cfg, const InputDocument& input, std::ostream& out) {
    require(!cfg.form_expr.empty(), errc::schema_error, "factor requires --form EXPR");
    const SkewRing& R = input.sys.ring;
    QuadForm Q = parse_form_expression(R, cfg.form_expr);
    FactorizationSet facts = factorizations(R, Q);
    MuRank rk = mu_rank(R, Q, input.options.max_ext);

    json rep = envelope(cfg, input.sys);
    rep["form"] = form_to_json(R, Q);
    rep["form_expr"] = render_form(R, Q);
    rep["count"] = facts.size();
    json jf = json::array();
    for (const Factorization& f : facts.facts) jf.push_back(factorization_to_json(R, f));
    rep["factorizations"] = jf;
    rep["mu_rank"] = mu_rank_label(rk);
    rep["max_ext"] = input.options.max_ext;
    bool oracle_ok = true;
    if (cfg.with_oracle) {
        FactorizationSet sw = factorizations_sweep(R, Q, input.options.budget);
        oracle_ok = sw.facts == facts.facts;
        rep["oracle_agrees"] = oracle_ok;
    }

    if (cfg.format == "json") {
        out << rep.dump(2) << "\n";
    } else {
        out << "factor: " << render_form(R, Q) << "\n";
        out << "  factorizations over F_" << R.field().order() << ": " << facts.size() << "\n";
        for (const Factorization& f : facts.facts)
            out << "    (" << render_linear(R, f.left) << ") * (" << render_linear(R, f.right) << ")\n";
        out << "  mu-rank (max_ext " << input.options.max_ext << "): " << mu_rank_label(rk) << "\n";
        if (cfg.with_oracle) out << "  sweep oracle agrees: " << (oracle_ok ? "yes" : "no") << "\n";
    }
    if (!oracle_ok) fail(errc::theorem_violation, "sweep oracle disagrees with the factorization engine");
    return 0;
}

inline int run_hilbert(const CliConfig& cfg, const InputDocument& input, std::ostream& out) {
    const QuadricSystem& sys = input.sys;
    Presentation pres = build_presentation(sys);
    std::vector<uint64_t> dims = hilbert_dimensions(pres, input.options.dmax, input.options.budget);
    json rep = envelope(cfg, sys);
    rep["dmax"] = input.options.dmax;
    json jd = json::array();
    for (uint64_t d : dims) jd.push_back(d);
    rep["dims"] = jd;
    if (cfg.format == "json") {
        out << rep.dump(2) << "\n";
    } else {
        out << "hilbert: dim A_d for d = 0.." << input.options.dmax << ":";
        for (uint64_t d : dims) out << " " << d;
        out << "\n";
    }
    return 0;
}

inline int run_oracle(const CliConfig& cfg, const InputDocument& input, std::ostream& out) {
    const QuadricSystem& sys = input.sys;
    Presentation pres = build_presentation(sys);
    int deg = input.options.ext_degree;
    GammaSet gamma = enumerate_gamma(pres, sys, deg, input.options.budget);
    RingExtension ext = extend_ring(sys.ring, deg);
    json rep = envelope(cfg, sys);
    rep["extension_degree"] = deg;
    rep["count"] = gamma.pairs.size();
    json pairs = json::array();
    for (const PointPair& pp : gamma.pairs) {
        json jp = json::object();
        jp["a"] = vec_to_json(ext.ring.field(), pp.a);
        jp["b"] = vec_to_json(ext.ring.field(), pp.b);
        pairs.push_back(jp);
    }
    rep["pairs"] = pairs;
    if (cfg.format == "json") {
        out << rep.dump(2) << "\n";
    } else {
        out << "oracle: |Gamma| = " << gamma.pairs.size() << " over extension degree " << deg << "\n";
        for (const PointPair& pp : gamma.pairs)
            out << "  a = (" << render_linear(ext.ring, pp.a) << "), b = (" << render_linear(ext.ring, pp.b)
                << ")\n";
    }
    return 0;
}

} // namespace clidetail

/// Execute one command against an input document. Exit codes: 0 success,
/// 1 invalid input, 2 failed mathematical check, 3 internal assertion.
inline int run_command(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        InputDocument input = load_input(cfg.input_path);
        clidetail::apply_overrides(cfg, input.sys.ring.field(), input.options);
        if (cfg.command == "check") return clidetail::run_check(cfg, input, out);
        if (cfg.command == "present") return clidetail::run_present(cfg, input, out);
        if (cfg.command == "count") return clidetail::run_count(cfg, input, out);
        if (cfg.command == "factor") return clidetail::run_factor(cfg, input, out);
        if (cfg.command == "hilbert") return clidetail::run_hilbert(cfg, input, out);
        if (cfg.command == "oracle") return clidetail::run_oracle(cfg, input, out);
        fail(errc::schema_error, "unknown command: " + cfg.command);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: Internal: " << e.what() << "\n";
        return 3;
    }
}

} // namespace gsca
