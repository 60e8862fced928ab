#pragma once

#include "cliffordprym/fibration.hpp"
#include "cliffordprym/rng.hpp"

namespace cliffordprym {

/* Seeded generators for demonstration data.  Every function retries with
 * fresh pseudo-random coefficients until its postcondition holds, up to
 * 1000 attempts, then fails with "generation-failed". */

// Fibration of the standard shape: twist degrees (0, 0, 1), line twist 1,
// so the degeneration curve is a plane quintic; regenerated until that
// quintic is smooth (decided exactly at this degree).
ConicFibration demo_fibration(const FieldPtr& f, std::uint64_t seed);

// Degree d = 1 or 2 curve meeting the fibration's degeneration curve
// transversally in d * deg many points.
ParamCurve random_transversal_curve(const ConicFibration& fib, int d,
                                    std::uint64_t seed);

// Monic squarefree polynomial of the exact degree (degree >= 1).
UniPoly random_squarefree(const FieldPtr& f, int degree, Rng& rng);

// Homogeneous trivariate form of the given degree with uniform coefficients
// (possibly zero).
TriPoly random_form(const FieldPtr& f, int degree, Rng& rng);

}  // namespace cliffordprym
