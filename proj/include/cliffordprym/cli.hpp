#pragma once

#include <cstdint>
#include <string>

namespace cliffordprym {

/* One invocation of the command-line front end.  Commands:
 *
 *   discriminant   degeneration curve of the fibration in the input file
 *   intersect      intersection of a parametrized curve with that locus
 *   lift           cross-checked module lift over the intersection points
 *   parity         half-index sweep over the degree fibers [e, e+3]
 *   spectral       pushforward matrix of a line bundle on t^2 = s
 *   verify         every property suite of every module, pass/fail each
 *   demo           freshly sampled fibration with a smooth quintic locus
 *
 * Inputs follow the textual format of io.hpp.  Commands that need a curve
 * use the one in the input file when present and otherwise sample a
 * transversal curve of degree d from the seed.  The field flag selects the
 * coefficient field for demo; file-reading commands take the field from the
 * file header. */
struct RunConfig {
    std::string command;
    std::string input_path;
    std::string output_path;
    long long field_p = 13;
    int field_m = 1;
    std::uint64_t seed = 0;
    int d = 1;
    int e = 0;
};

struct RunResult {
    int exit_code = 0;     // 0 ok, 2 parse error, 3 math error
    std::string report;    // JSON text; the demo command emits a fibration file
};

// Runs on input text directly (no file access); used by tests and verify.
RunResult run_on_text(const RunConfig& config, const std::string& input_text);

// Reads config.input_path when the command needs input, runs, and writes the
// report to config.output_path (when set) on success.  Reports are
// deterministic: same seed and input, same bytes.  Errors are reported as
// JSON too: {"error": {"kind", ...}} with line/column for parse errors and
// the error name for mathematical ones.
RunResult run(const RunConfig& config);

}  // namespace cliffordprym
