#include "cliffordprym/cli.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cliffordprym/error.hpp"
#include "cliffordprym/factor.hpp"
#include "cliffordprym/io.hpp"
#include "cliffordprym/prymcomb.hpp"
#include "cliffordprym/sampling.hpp"
#include "cliffordprym/spectral.hpp"
#include "cliffordprym/verify.hpp"

namespace cliffordprym {

namespace {

using nlohmann::json;

json fel_json(const Fel& c) { return json(c.coords()); }

json poly_json(const UniPoly& p) {
    json out = json::array();
    for (const Fel& c : p.coeffs()) out.push_back(fel_json(c));
    return out;
}

json field_json(const FieldPtr& f) {
    return {{"characteristic", f->characteristic()}, {"degree", f->degree()}};
}

std::string dump_report(const json& report) { return report.dump(2) + "\n"; }

FieldPtr configured_field(const RunConfig& cfg) {
    return cfg.field_m <= 1 ? FieldSpec::prime(cfg.field_p)
                            : field_of_degree(cfg.field_p, cfg.field_m);
}

ConicFibration need_fibration(const ParsedInput& in) {
    if (!in.fibration) throw ParseError(1, 1, "input has no fibration section");
    return *in.fibration;
}

// The curve from the file when present, otherwise a sampled transversal one.
ParamCurve pick_curve(const ParsedInput& in, const ConicFibration& fib,
                      const RunConfig& cfg) {
    if (in.curve) return *in.curve;
    if (cfg.d != 1 && cfg.d != 2)
        throw MathError("bad-degree", "curve degree flag must be 1 or 2");
    return random_transversal_curve(fib, cfg.d, cfg.seed);
}

json curve_json(const ParamCurve& curve) {
    json comps = json::array();
    for (int c = 0; c < 3; ++c) {
        json terms = json::array();
        for (int k = 0; k <= curve.degree(); ++k) {
            const Fel coeff = curve.rho(c).coeff(k);
            if (coeff.is_zero()) continue;
            terms.push_back({{"coef", fel_json(coeff)},
                             {"exponents", {k, curve.degree() - k}}});
        }
        comps.push_back(terms);
    }
    return comps;
}

json cmd_discriminant(const ParsedInput& in) {
    const DiscriminantCurve dc = discriminant(need_fibration(in));
    json terms = json::array();
    for (const auto& [key, c] : dc.form.terms())
        terms.push_back(
            {{"coef", fel_json(c)}, {"exponents", {key[0], key[1], key[2]}}});
    return {{"schema", 1},
            {"command", "discriminant"},
            {"field", field_json(in.field)},
            {"degree", dc.degree},
            {"terms", terms}};
}

json cmd_intersect(const ParsedInput& in, const RunConfig& cfg) {
    const ConicFibration fib = need_fibration(in);
    const ParamCurve curve = pick_curve(in, fib, cfg);
    const IntersectionResult res = intersect_curve_discriminant(fib, curve);
    json points = json::array();
    for (const IntersectionDatum& p : res.points) {
        json coords = json::array();
        for (const Fel& c : p.point.xyz) coords.push_back(fel_json(c));
        points.push_back({{"at_infinity", p.at_infinity},
                          {"parameter", fel_json(p.parameter)},
                          {"ext_degree", p.ext_degree},
                          {"point", coords},
                          {"multiplicity", p.multiplicity}});
    }
    return {{"schema", 1},
            {"command", "intersect"},
            {"field", field_json(in.field)},
            {"curve", curve_json(curve)},
            {"curve_degree", curve.degree()},
            {"points", points},
            {"total_multiplicity", res.total_multiplicity},
            {"transversal", res.transversal}};
}

json half_histogram_json(const ParityFiberRow& row) {
    return {{"half_0", row.half_histogram[0]}, {"half_1", row.half_histogram[1]}};
}

json cmd_lift(const ParsedInput& in, const RunConfig& cfg) {
    const ConicFibration fib = need_fibration(in);
    const ParamCurve curve = pick_curve(in, fib, cfg);
    const ContextPtr ctx = build_context(fib, curve, cfg.e);
    const LiftConsistencyReport rep = rep_lift_consistency(base_module(ctx));
    const ParityReport fiber = parity_rule_check(ctx, cfg.e, cfg.e);
    json types = json::array();
    for (RepTypeTag t : rep.types) types.push_back(rep_type_name(t));
    return {{"schema", 1},
            {"command", "lift"},
            {"field", field_json(in.field)},
            {"n", ctx->n},
            {"d", curve.degree()},
            {"e", cfg.e},
            {"fiber_size", fiber.rows.at(0).fiber_size},
            {"half_histogram", half_histogram_json(fiber.rows.at(0))},
            {"chosen", rep.chosen},
            {"types", types},
            {"pass", rep.pass && fiber.pass}};
}

json cmd_parity(const ParsedInput& in, const RunConfig& cfg) {
    const ConicFibration fib = need_fibration(in);
    const ParamCurve curve = pick_curve(in, fib, cfg);
    const ContextPtr ctx = build_context(fib, curve, cfg.e);
    const ParityReport rep = parity_rule_check(ctx, cfg.e, cfg.e + 3);
    json rows = json::array();
    for (const ParityFiberRow& row : rep.rows)
        rows.push_back({{"e", row.e},
                        {"fiber_size", row.fiber_size},
                        {"half_histogram", half_histogram_json(row)},
                        {"uniform", row.uniform},
                        {"half_vs_base", row.half_vs_base}});
    return {{"schema", 1},
            {"command", "parity"},
            {"field", field_json(in.field)},
            {"n", rep.n},
            {"d", rep.d},
            {"base_e", rep.base_e},
            {"rows", rows},
            {"pass", rep.pass}};
}

json cmd_spectral(const ParsedInput& in) {
    if (!in.branch) throw ParseError(1, 1, "input has no branch section");
    if (!in.bundle_shape) throw ParseError(1, 1, "input has no bundle section");
    const SpectralCover cover(in.field, *in.branch);
    LineBundleOnCover lb = LineBundleOnCover::trivial(cover);
    if (*in.bundle_shape == "ramification")
        lb = LineBundleOnCover::ramification_ideal(cover, *in.bundle_payload);
    else if (*in.bundle_shape == "pullback")
        lb = LineBundleOnCover::pullback_twist(cover, *in.bundle_payload);
    const HiggsPair h = pushforward(cover, lb);
    const UniPoly trace = h.phi[0][0] + h.phi[1][1];
    const UniPoly det = h.phi[0][0] * h.phi[1][1] - h.phi[0][1] * h.phi[1][0];
    json phi = json::array();
    for (int i = 0; i < 2; ++i) {
        json row = json::array();
        for (int j = 0; j < 2; ++j)
            row.push_back(
                poly_json(h.phi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
        phi.push_back(row);
    }
    return {{"schema", 1},
            {"command", "spectral"},
            {"field", field_json(in.field)},
            {"shape", bundle_kind_name(lb.kind())},
            {"basis", {h.basis_tags[0], h.basis_tags[1]}},
            {"phi", phi},
            {"trace", poly_json(trace)},
            {"det", poly_json(det)},
            {"pass", char_identity(h, cover)}};
}

json cmd_verify(bool& all_pass) {
    const std::vector<VerifySuite> suites = run_verify_suites();
    json rows = json::array();
    all_pass = true;
    for (const VerifySuite& s : suites) {
        rows.push_back({{"name", s.name}, {"pass", s.pass}, {"detail", s.detail}});
        all_pass = all_pass && s.pass;
    }
    return {{"schema", 1},
            {"command", "verify"},
            {"suites", rows},
            {"pass", all_pass}};
}

}  // namespace

RunResult run_on_text(const RunConfig& cfg, const std::string& input_text) {
    try {
        if (cfg.command == "demo") {
            const ConicFibration fib = demo_fibration(configured_field(cfg), cfg.seed);
            return {0, serialize_fibration(fib)};
        }
        if (cfg.command == "verify") {
            bool all_pass = false;
            const json report = cmd_verify(all_pass);
            return {all_pass ? 0 : 1, dump_report(report)};
        }
        if (cfg.command != "discriminant" && cfg.command != "intersect" &&
            cfg.command != "lift" && cfg.command != "parity" &&
            cfg.command != "spectral")
            throw MathError("bad-command", "unknown command '" + cfg.command + "'");
        const ParsedInput in = parse_input(input_text);
        json report;
        if (cfg.command == "discriminant")
            report = cmd_discriminant(in);
        else if (cfg.command == "intersect")
            report = cmd_intersect(in, cfg);
        else if (cfg.command == "lift")
            report = cmd_lift(in, cfg);
        else if (cfg.command == "parity")
            report = cmd_parity(in, cfg);
        else
            report = cmd_spectral(in);
        return {0, dump_report(report)};
    } catch (const ParseError& e) {
        const json report = {{"schema", 1},
                             {"command", cfg.command},
                             {"error",
                              {{"kind", "parse"},
                               {"line", e.line()},
                               {"column", e.column()},
                               {"message", e.message()}}}};
        return {2, dump_report(report)};
    } catch (const MathError& e) {
        const json report = {{"schema", 1},
                             {"command", cfg.command},
                             {"error",
                              {{"kind", "math"},
                               {"name", e.name()},
                               {"detail", e.detail()}}}};
        return {3, dump_report(report)};
    }
}

RunResult run(const RunConfig& cfg) {
    std::string text;
    const bool needs_input =
        cfg.command == "discriminant" || cfg.command == "intersect" ||
        cfg.command == "lift" || cfg.command == "parity" ||
        cfg.command == "spectral";
    if (needs_input) {
        if (cfg.input_path.empty()) {
            const json report = {
                {"schema", 1},
                {"command", cfg.command},
                {"error",
                 {{"kind", "parse"},
                  {"line", 0},
                  {"column", 0},
                  {"message", "command needs an input file (--in)"}}}};
            return {2, dump_report(report)};
        }
        std::ifstream is(cfg.input_path, std::ios::binary);
        if (!is) {
            const json report = {
                {"schema", 1},
                {"command", cfg.command},
                {"error",
                 {{"kind", "parse"},
                  {"line", 0},
                  {"column", 0},
                  {"message", "cannot read input file " + cfg.input_path}}}};
            return {2, dump_report(report)};
        }
        std::ostringstream buf;
        buf << is.rdbuf();
        text = buf.str();
    }
    RunResult res = run_on_text(cfg, text);
    if (res.exit_code == 0 && !cfg.output_path.empty()) {
        std::ofstream os(cfg.output_path, std::ios::binary);
        if (!os) {
            const json report = {
                {"schema", 1},
                {"command", cfg.command},
                {"error",
                 {{"kind", "parse"},
                  {"line", 0},
                  {"column", 0},
                  {"message", "cannot write output file " + cfg.output_path}}}};
            return {2, dump_report(report)};
        }
        os << res.report;
    }
    return res;
}

}  // namespace cliffordprym
