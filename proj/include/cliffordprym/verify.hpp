#pragma once

#include <string>
#include <vector>

namespace cliffordprym {

/* One named property suite.  Suites re-check the library's documented
 * invariants from independent angles (hand-derived oracles, exhaustive
 * enumeration, random sampling with fixed seeds) and are what the verify
 * command reports. */
struct VerifySuite {
    std::string name;    // "module/property"
    bool pass = false;
    std::string detail;  // short summary or first failure
};

// Runs every suite in a fixed order.  Deterministic: fixed seeds throughout.
std::vector<VerifySuite> run_verify_suites();

}  // namespace cliffordprym
