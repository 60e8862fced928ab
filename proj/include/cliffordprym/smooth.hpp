#pragma once

#include <optional>

#include "cliffordprym/triform.hpp"

namespace cliffordprym {

/* Smoothness verdict for a plane projective curve.  Up to degree 6 the answer
 * is exact: singular points are located by eliminating one chart variable at
 * a time (interpolated Sylvester resultants, then root checks in the needed
 * extension fields), so `probabilistic` stays false and a failing curve comes
 * with a concrete singular witness.  Above degree 6 the check degrades to
 * seeded point sampling and says so via the flag. */
struct SmoothnessReport {
    bool smooth = false;
    bool probabilistic = false;
    std::optional<ProjPoint> witness;
};

SmoothnessReport is_smooth_curve(const TriPoly& form);

inline SmoothnessReport is_smooth_curve(const DiscriminantCurve& c) {
    return is_smooth_curve(c.form);
}

}  // namespace cliffordprym
