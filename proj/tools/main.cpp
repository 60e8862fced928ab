#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "cliffordprym/cli.hpp"

namespace {

// --field accepts P or P,M (prime and extension degree).
bool parse_field_flag(const std::string& text, cliffordprym::RunConfig& cfg) {
    const std::size_t comma = text.find(',');
    try {
        if (comma == std::string::npos) {
            cfg.field_p = std::stoll(text);
            cfg.field_m = 1;
        } else {
            cfg.field_p = std::stoll(text.substr(0, comma));
            cfg.field_m = std::stoi(text.substr(comma + 1));
        }
    } catch (const std::exception&) {
        return false;
    }
    return cfg.field_p >= 2 && cfg.field_m >= 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations around degenerating conic fibrations"};
    app.require_subcommand(1);

    cliffordprym::RunConfig cfg;
    std::string field_flag;

    const auto add_common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input)
            sub->add_option("--in", cfg.input_path, "input file")->required();
        sub->add_option("--out", cfg.output_path, "output file (default stdout)");
        sub->add_option("--seed", cfg.seed, "pseudo-random seed (default 0)");
        return sub;
    };

    add_common(app.add_subcommand("discriminant",
                                  "degeneration curve of a fibration"),
               true);
    auto* inter = add_common(
        app.add_subcommand("intersect", "curve meets the degeneration locus"),
        true);
    inter->add_option("--d", cfg.d, "curve degree when sampling one (1 or 2)")
        ->check(CLI::IsMember({1, 2}));
    auto* lift = add_common(
        app.add_subcommand("lift", "cross-checked module lift"), true);
    lift->add_option("--d", cfg.d, "curve degree when sampling one (1 or 2)")
        ->check(CLI::IsMember({1, 2}));
    lift->add_option("--e", cfg.e, "degree invariant of the module fiber");
    auto* parity = add_common(
        app.add_subcommand("parity", "half-index sweep over degree fibers"),
        true);
    parity->add_option("--d", cfg.d, "curve degree when sampling one (1 or 2)")
        ->check(CLI::IsMember({1, 2}));
    parity->add_option("--e", cfg.e, "first degree of the sweep");
    add_common(app.add_subcommand("spectral",
                                  "pushforward matrix of a cover bundle"),
               true);
    add_common(app.add_subcommand("verify", "run every property suite"), false);
    auto* demo = add_common(
        app.add_subcommand("demo", "sample a fibration with a smooth quintic"),
        false);
    demo->add_option("--field", field_flag, "coefficient field P or P,M");

    CLI11_PARSE(app, argc, argv);

    if (!field_flag.empty() && !parse_field_flag(field_flag, cfg)) {
        std::fprintf(stderr, "invalid --field value '%s'\n", field_flag.c_str());
        return 2;
    }
    cfg.command = app.get_subcommands().at(0)->get_name();

    const cliffordprym::RunResult res = cliffordprym::run(cfg);
    if (res.exit_code == 0) {
        if (cfg.output_path.empty()) std::fputs(res.report.c_str(), stdout);
    } else {
        std::fputs(res.report.c_str(), stderr);
    }
    return res.exit_code;
}
