// Command-line front end: construct graded skew Clifford algebras from
// mu-symmetric matrices, verify the regularity hypotheses, factor
// noncommutative quadratic forms, and count point modules two ways.

#include "CLI11.hpp"

#include "gsca/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"graded skew Clifford algebra toolkit"};
    app.require_subcommand(1);

    gsca::CliConfig cfg;
    int max_ext = 0, ext_degree = 0, dmax = -1;
    uint64_t budget = 0;
    std::string order_policy;

    auto add_common = [&](CLI::App* sub, bool wants_form) {
        sub->add_option("--input", cfg.input_path, "input document (JSON)")->required();
        sub->add_option("--format", cfg.format, "output format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--budget", budget, "enumeration budget (points / pairs / matrix entries)");
        sub->add_option("--max-ext", max_ext, "maximum field-extension degree for escalating searches");
        sub->add_option("--ext-degree", ext_degree, "extension degree for single-degree operations");
        sub->add_option("--order-policy", order_policy, "normalizing-sequence order: given or search")
            ->check(CLI::IsMember({"given", "search"}));
        sub->add_option("--dmax", dmax, "largest degree for hilbert dimension checks");
        if (wants_form) {
            sub->add_option("--form", cfg.form_expr, "quadratic form expression, e.g. \"(z1+2*z2)^2\"")
                ->required();
            sub->add_flag("--oracle", cfg.with_oracle, "cross-check against the sweep oracle");
        }
    };

    add_common(app.add_subcommand("check", "validate a quadric system (independence, normalizing, base points)"),
               false);
    add_common(app.add_subcommand("present", "emit the algebra presentation and y-expressions"), false);
    add_common(app.add_subcommand("count", "count point modules two ways and cross-validate"), false);
    add_common(app.add_subcommand("factor", "factor a quadratic form and report its mu-rank"), true);
    add_common(app.add_subcommand("hilbert", "graded dimensions of the algebra at low degree"), false);
    add_common(app.add_subcommand("oracle", "enumerate the point scheme Gamma directly"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1; // flag errors are input errors; --help stays 0
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (max_ext > 0) cfg.max_ext = max_ext;
    if (ext_degree > 0) cfg.ext_degree = ext_degree;
    if (dmax >= 0) cfg.dmax = dmax;
    if (budget > 0) cfg.budget = budget;
    if (!order_policy.empty()) cfg.order_policy = order_policy;

    return gsca::run_command(cfg, std::cout, std::cerr);
}
