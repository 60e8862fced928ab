#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cliffordprym/error.hpp"
#include "cliffordprym/factor.hpp"
#include "cliffordprym/io.hpp"
#include "cliffordprym/sampling.hpp"

using namespace cliffordprym;

namespace {

ConicFibration random_fibration(const FieldPtr& f, std::array<int, 3> a, int l,
                                Rng& rng) {
    std::array<std::array<TriPoly, 3>, 3> e{
        {{TriPoly::zero(f), TriPoly::zero(f), TriPoly::zero(f)},
         {TriPoly::zero(f), TriPoly::zero(f), TriPoly::zero(f)},
         {TriPoly::zero(f), TriPoly::zero(f), TriPoly::zero(f)}}};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            TriPoly p = random_form(
                f, a[static_cast<std::size_t>(i)] + a[static_cast<std::size_t>(j)] + l,
                rng);
            e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = p;
            e[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = p;
        }
    return ConicFibration(f, a, l, e);
}

}  // namespace

TEST_CASE("fibration text round-trips bit exactly") {
    const std::vector<std::pair<std::array<int, 3>, int>> shapes = {
        {{0, 0, 1}, 1}, {{0, 0, 0}, 1}, {{0, 1, 1}, 0}, {{1, 1, 1}, 0}};
    const std::vector<FieldPtr> fields = {FieldSpec::prime(13),
                                          field_of_degree(3, 2)};
    Rng rng(2024);
    int done = 0;
    for (const FieldPtr& f : fields)
        for (const auto& [a, l] : shapes)
            for (int rep = 0; rep < 7; ++rep) {
                const ConicFibration fib = random_fibration(f, a, l, rng);
                const std::string text = serialize_fibration(fib);
                const ConicFibration back = parse_fibration(text);
                CHECK((back.twist_degrees() == fib.twist_degrees()));
                CHECK(back.line_degree() == fib.line_degree());
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        CHECK((back.entry(i, j) == fib.entry(i, j)));
                CHECK(serialize_fibration(back) == text);
                ++done;
            }
    CHECK(done == 56);
}

TEST_CASE("fibration and curve block round-trips") {
    const FieldPtr f = FieldSpec::prime(13);
    const ConicFibration fib = demo_fibration(f, 0);
    for (int d = 1; d <= 2; ++d) {
        const ParamCurve curve = random_transversal_curve(fib, d, 0);
        const std::string text = serialize_fibration_and_curve(fib, curve);
        const ParsedInput in = parse_input(text);
        REQUIRE(in.fibration.has_value());
        REQUIRE(in.curve.has_value());
        CHECK(in.curve->degree() == d);
        for (int c = 0; c < 3; ++c)
            CHECK((in.curve->rho(c) == curve.rho(c)));
        CHECK(serialize_fibration_and_curve(*in.fibration, *in.curve) == text);
    }
}

TEST_CASE("hand-written fibration text parses") {
    const std::string text =
        "field 13\n"
        "twists 0 0 1 1\n"
        "1 1 0 0\n"
        "\n"
        "2 0 0 2\n"
        "1 0 1 0\n"
        "\n"
        "3 0 0 3 1 1 1 1\n";
    const ConicFibration fib = parse_fibration(text);
    CHECK((fib.twist_degrees() == std::array<int, 3>{0, 0, 1}));
    CHECK(fib.line_degree() == 1);
    CHECK(fib.entry(0, 1).is_zero());
    CHECK(fib.entry(1, 2).is_zero());
    CHECK((fib.entry(0, 1) == fib.entry(1, 0)));
    const FieldPtr f = fib.field();
    CHECK((fib.entry(0, 0) == TriPoly::monomial(f, Fel::from_int(f, 1), 1, 0, 0)));
    CHECK((fib.entry(1, 1) == TriPoly::monomial(f, Fel::from_int(f, 1), 0, 1, 0)));
}

TEST_CASE("degree-inconsistent entry terms are rejected with position") {
    const std::string text =
        "field 13\n"
        "twists 0 0 1 1\n"
        "1 1 0 0\n"
        "1 1 1 0\n"
        "\n"
        "\n"
        "\n"
        "\n";
    try {
        parse_fibration(text);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
        CHECK(e.column() == 1);
        CHECK(e.message().find("(0,1)") != std::string::npos);
        CHECK(e.message().find("degree 2") != std::string::npos);
        CHECK(e.message().find("expected 1") != std::string::npos);
    }
}

TEST_CASE("malformed tokens report line and column") {
    try {
        parse_input("field 13\ntwists 0 0 x 1\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 12);
    }
    try {
        parse_input("field 13\nwibble 1\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 1);
        CHECK(e.message().find("wibble") != std::string::npos);
    }
    try {
        parse_input("");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
    CHECK_THROWS_AS(parse_fibration("field 13\n"), ParseError);
    CHECK_THROWS_AS(parse_curve("field 13\n"), ParseError);
    CHECK_THROWS_AS(parse_input("field 13\ntwists 0 0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_input("field 4\n"), ParseError);
}

TEST_CASE("extension coefficients use colon-joined coordinates") {
    const FieldPtr f9 = field_of_degree(3, 2);
    Rng rng(7);
    const ConicFibration fib = random_fibration(f9, {0, 0, 1}, 1, rng);
    const std::string text = serialize_fibration(fib);
    CHECK(text.substr(0, 10) == "field 3 2\n");
    CHECK(text.find(':') != std::string::npos);
    CHECK(serialize_fibration(parse_fibration(text)) == text);
}

TEST_CASE("branch and bundle sections parse") {
    const ParsedInput in = parse_input(
        "field 13\n"
        "branch 0 12 1\n"
        "bundle ramification 0 1\n");
    REQUIRE(in.branch.has_value());
    CHECK(in.branch->degree() == 2);
    CHECK((in.branch->coeff(1) == Fel::from_int(in.field, -1)));
    REQUIRE(in.bundle_shape.has_value());
    CHECK(*in.bundle_shape == "ramification");
    REQUIRE(in.bundle_payload.has_value());
    CHECK((*in.bundle_payload == UniPoly::variable(in.field)));

    const ParsedInput triv = parse_input("field 13\nbranch 0 1\nbundle trivial\n");
    CHECK(*triv.bundle_shape == "trivial");
    CHECK(!triv.bundle_payload.has_value());

    CHECK_THROWS_AS(parse_input("field 13\nbundle exotic\n"), ParseError);
}

TEST_CASE("field serialization covers only canonical finite fields") {
    CHECK(serialize_field(FieldSpec::prime(13)) == "field 13\n");
    CHECK(serialize_field(field_of_degree(13, 4)) == "field 13 4\n");
    CHECK_THROWS_WITH_AS(serialize_field(FieldSpec::gaussian()),
                         doctest::Contains("bad-field"), MathError);
}

#include <json.hpp>

#include "cliffordprym/cli.hpp"

using nlohmann::json;

namespace {

RunConfig config_for(const std::string& command) {
    RunConfig cfg;
    cfg.command = command;
    return cfg;
}

const std::string& demo_text() {
    static std::string text = run_on_text(config_for("demo"), "").report;
    return text;
}

}  // namespace

TEST_CASE("demo output is a parsable fibration with a degree-5 locus") {
    const RunResult res = run_on_text(config_for("demo"), "");
    REQUIRE(res.exit_code == 0);
    const ConicFibration fib = parse_fibration(res.report);
    CHECK((fib.twist_degrees() == std::array<int, 3>{0, 0, 1}));
    CHECK(fib.line_degree() == 1);

    const RunResult disc = run_on_text(config_for("discriminant"), res.report);
    REQUIRE(disc.exit_code == 0);
    const json rep = json::parse(disc.report);
    CHECK(rep.at("schema") == 1);
    CHECK(rep.at("command") == "discriminant");
    CHECK(rep.at("degree") == 5);
    CHECK(rep.at("field").at("characteristic") == 13);
}

TEST_CASE("intersect on the demo delivers d * 5 points") {
    RunConfig cfg = config_for("intersect");
    cfg.d = 2;
    const RunResult res = run_on_text(cfg, demo_text());
    REQUIRE(res.exit_code == 0);
    const json rep = json::parse(res.report);
    CHECK(rep.at("points").size() == 10);
    CHECK(rep.at("total_multiplicity") == 10);
    CHECK(rep.at("transversal") == true);
    CHECK(rep.at("curve_degree") == 2);

    cfg.d = 1;
    const json rep1 = json::parse(run_on_text(cfg, demo_text()).report);
    CHECK(rep1.at("points").size() == 5);
    CHECK(rep1.at("total_multiplicity") == 5);
}

TEST_CASE("reports are byte-identical across repeated runs") {
    for (const char* cmd : {"discriminant", "intersect", "lift", "parity"}) {
        RunConfig cfg = config_for(cmd);
        cfg.seed = 2;
        const RunResult a = run_on_text(cfg, demo_text());
        const RunResult b = run_on_text(cfg, demo_text());
        CHECK(a.exit_code == 0);
        CHECK(a.report == b.report);
    }
}

TEST_CASE("lift report cross-checks the base module") {
    RunConfig cfg = config_for("lift");
    const RunResult res = run_on_text(cfg, demo_text());
    REQUIRE(res.exit_code == 0);
    const json rep = json::parse(res.report);
    CHECK(rep.at("command") == "lift");
    CHECK(rep.at("n") == 5);
    CHECK(rep.at("d") == 1);
    CHECK(rep.at("e") == 0);
    CHECK(rep.at("fiber_size") == 16);
    CHECK(rep.at("pass") == true);
    const json& hist = rep.at("half_histogram");
    CHECK((hist.at("half_0").get<long long>() +
           hist.at("half_1").get<long long>()) == 16);
    for (const auto& t : rep.at("types"))
        CHECK((t == "T1" || t == "T2"));
}

TEST_CASE("parity report rows alternate with e") {
    RunConfig cfg = config_for("parity");
    const RunResult res = run_on_text(cfg, demo_text());
    REQUIRE(res.exit_code == 0);
    const json rep = json::parse(res.report);
    CHECK(rep.at("pass") == true);
    const json& rows = rep.at("rows");
    REQUIRE(rows.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(rows.at(k).at("uniform") == true);
        CHECK(rows.at(k).at("e") == static_cast<int>(k));
        CHECK(rows.at(k).at("half_vs_base") == static_cast<int>(k % 2));
    }
}

TEST_CASE("spectral report certifies the endomorphism identities") {
    const std::string input =
        "field 13\n"
        "branch 0 12 1\n"
        "bundle ramification 0 1\n";
    const RunResult res = run_on_text(config_for("spectral"), input);
    REQUIRE(res.exit_code == 0);
    const json rep = json::parse(res.report);
    CHECK(rep.at("pass") == true);
    CHECK(rep.at("shape") == "ramification-ideal");
    CHECK((rep.at("basis") == json::array({"s1", "t"})));
    CHECK(rep.at("trace").empty());
    // det = -(u^2 - u) = u - u^2 as low-first coefficient vectors.
    CHECK((rep.at("det") == json::array({json::array({0}), json::array({1}),
                                         json::array({12})})));
}

TEST_CASE("parse failures exit 2 with the position in the report") {
    const RunResult res =
        run_on_text(config_for("discriminant"), "field 13\ntwists 0 0 x 1\n");
    CHECK(res.exit_code == 2);
    const json rep = json::parse(res.report);
    CHECK(rep.at("error").at("kind") == "parse");
    CHECK(rep.at("error").at("line") == 2);
    CHECK(rep.at("error").at("column") == 12);
}

TEST_CASE("mathematical failures exit 3 with the error name") {
    // Degeneration locus x0 x1 (x0 + x1) is a singular cubic, so the module
    // pipeline must refuse it.
    const std::string bad =
        "field 13\n"
        "twists 0 0 0 1\n"
        "1 1 0 0\n"
        "\n"
        "\n"
        "1 0 1 0\n"
        "\n"
        "1 1 0 0 1 0 1 0\n";
    RunConfig cfg = config_for("lift");
    const RunResult res = run_on_text(cfg, bad);
    CHECK(res.exit_code == 3);
    const json rep = json::parse(res.report);
    CHECK(rep.at("error").at("kind") == "math");
    CHECK(rep.at("error").at("name") == "not-simple-degeneration");

    const RunResult unknown = run_on_text(config_for("frobulate"), "");
    CHECK(unknown.exit_code == 3);
    CHECK(json::parse(unknown.report).at("error").at("name") == "bad-command");
}

TEST_CASE("file-level run reads input and writes output") {
    const std::string dir = "/tmp/cliffordprym-test";
    std::system(("mkdir -p " + dir).c_str());
    RunConfig demo = config_for("demo");
    demo.output_path = dir + "/fib.txt";
    const RunResult dres = run(demo);
    REQUIRE(dres.exit_code == 0);

    RunConfig disc = config_for("discriminant");
    disc.input_path = dir + "/fib.txt";
    disc.output_path = dir + "/disc.json";
    const RunResult rres = run(disc);
    REQUIRE(rres.exit_code == 0);
    std::ifstream is(dir + "/disc.json");
    std::stringstream buf;
    buf << is.rdbuf();
    CHECK(buf.str() == rres.report);
    CHECK(json::parse(buf.str()).at("degree") == 5);

    RunConfig missing = config_for("discriminant");
    missing.input_path = dir + "/nonexistent.txt";
    CHECK(run(missing).exit_code == 2);
    CHECK(run(config_for("intersect")).exit_code == 2);  // no --in at all
}

TEST_CASE("verify command reports every suite green") {
    const RunResult res = run_on_text(config_for("verify"), "");
    CHECK(res.exit_code == 0);
    const json rep = json::parse(res.report);
    CHECK(rep.at("pass") == true);
    CHECK(rep.at("suites").size() == 24);
    std::set<std::string> modules;
    for (const auto& s : rep.at("suites")) {
        CHECK(s.at("pass") == true);
        const std::string name = s.at("name").get<std::string>();
        modules.insert(name.substr(0, name.find('/')));
    }
    CHECK(modules == std::set<std::string>({"exactfield", "clifford", "fibration",
                                            "prymcomb", "spectral", "cli"}));
}
