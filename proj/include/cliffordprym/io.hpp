#pragma once

#include <optional>
#include <string>

#include "cliffordprym/fibration.hpp"
#include "cliffordprym/spectral.hpp"

namespace cliffordprym {

/* Textual input format, line oriented.  A file opens with a field header
 * and then carries one or more sections:
 *
 *   field p [m]          prime field, or its degree-m canonical extension
 *   twists a1 a2 a3 l    fibration twist degrees, then 6 entry lines for
 *   <entry lines>        the upper triangle (00 01 02 11 12 22), each a
 *                        list of monomial terms "coef i j k"; a blank
 *                        entry line is the zero form
 *   curve d              then 3 lines of binary-form terms "coef i j"
 *   branch c0 c1 ...     spectral branch polynomial, low degree first
 *   bundle trivial       or "bundle ramification <coeffs>" or
 *                        "bundle pullback <coeffs>"
 *
 * Over an extension field a coefficient token is the colon-joined
 * coordinate vector (e.g. "3:0:1"); over a prime field it is a plain
 * integer.  Serialization is canonical and the parse/serialize pair is a
 * bit-exact round trip on canonical text. */
struct ParsedInput {
    FieldPtr field;
    std::optional<ConicFibration> fibration;
    std::optional<ParamCurve> curve;
    std::optional<UniPoly> branch;
    std::optional<std::string> bundle_shape;  // "trivial" | "ramification" | "pullback"
    std::optional<UniPoly> bundle_payload;    // s1 or g when present
};

ParsedInput parse_input(const std::string& text);

// Section accessors that fail with a ParseError when the section is absent.
ConicFibration parse_fibration(const std::string& text);
ParamCurve parse_curve(const std::string& text);

std::string serialize_field(const FieldPtr& f);
std::string serialize_fibration(const ConicFibration& fib);
// Fibration followed by the curve block, sharing the field header.
std::string serialize_fibration_and_curve(const ConicFibration& fib,
                                          const ParamCurve& curve);

}  // namespace cliffordprym
