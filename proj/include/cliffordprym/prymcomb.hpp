#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "cliffordprym/clifford.hpp"
#include "cliffordprym/fibration.hpp"
#include "cliffordprym/smooth.hpp"

namespace cliffordprym {

/* Frozen geometric data of one transversal curve/discriminant configuration:
 * the fibration, the parametrized curve, the ordered degeneration points with
 * their split fiber components, and a reference component choice at every
 * point.  All combinatorial operations below act relative to this context;
 * two modules interoperate only when they share the same context object. */
struct CurveContext {
    ConicFibration fib;
    ParamCurve curve;
    DiscriminantCurve disc;
    SmoothnessReport disc_smooth;           // cached once at build time
    std::vector<IntersectionDatum> points;  // canonical order, size n
    std::vector<CoverPointPair> cover_pairs;
    std::vector<int> frobenius_orbit;  // orbit id per point under the
                                       // relative power-of-p map
    std::vector<int> base_lift;        // reference label per point, 0 = plus
    int base_e = 0;                    // degree offset of the reference state
    int n = 0;                         // number of degeneration points

    // A component-flip vector respects the arithmetic of the points when it
    // is constant on every conjugacy orbit.
    bool lambda_frobenius_stable(const std::vector<int>& lambda) const;
};

using ContextPtr = std::shared_ptr<const CurveContext>;

/* Intersects, splits every degenerate fiber, and freezes the reference
 * lift (all plus).  Errors: "outside-U_d" when the intersection is not
 * transversal, "not-simple-degeneration" when a fiber degenerates past
 * corank one or the degeneration curve itself is singular. */
ContextPtr build_context(const ConicFibration& fib, const ParamCurve& curve,
                         int base_e);

/* Combinatorial state of a rank-zero module on the fibration: which points
 * carry a flipped component (lambda) and a global twisting integer.  The
 * degree invariant e = base_e + 2 twist + |lambda| is what the operations
 * below preserve or shift in controlled ways. */
struct ModuleFiberData {
    ContextPtr ctx;
    std::vector<int> lambda;  // 0/1 per point
    int twist = 0;

    int weight() const;  // |lambda|
    int e() const;       // base_e + 2 twist + weight()
};

// The distinguished state: lambda = 0, twist = 0, so e = base_e.
ModuleFiberData base_module(const ContextPtr& ctx);

// All states with the given e whose twist matches the fiber normalization
// twist = (e - base_e - |lambda|) / 2.  Eager up to n = 12 points.
std::vector<ModuleFiberData> fiber_elements(const ContextPtr& ctx, int e);

// Streaming form of the same enumeration, usable for any n.
void for_each_fiber_element(
    const ContextPtr& ctx, int e,
    const std::function<void(const ModuleFiberData&)>& fn);

/* Element of the 2-torsion group acting on a fixed-e fiber: a subset of the
 * points of even size, acting by flipping lambda there and compensating the
 * twist so e is unchanged. */
struct EvenSubsetElement {
    std::vector<int> mu;  // 0/1 per point, even weight

    int weight() const;
};

// All even-weight subsets of n points (group of order 2^(n-1), n <= 20).
std::vector<EvenSubsetElement> even_subsets(int n);

// Flip at g.mu, twist += |lambda AND mu| - |mu| / 2.  Keeps e fixed.
// Errors: "not-a-group-element" for odd |mu|, "context-mismatch" on size.
ModuleFiberData group_act(const EvenSubsetElement& g, const ModuleFiberData& m);

// Flip lambda at one point; when the flip removes a 1, absorb it into the
// twist.  Either way e goes up by exactly 1.
ModuleFiberData half_twist(const ModuleFiberData& m, int index);

// Shift the twist by k, moving e by 2k.
ModuleFiberData twist_by(const ModuleFiberData& m, int k);

struct ChernCharacter {
    int ch0 = 0;
    int ch1 = 0;
    int ch2 = 0;

    bool operator==(const ChernCharacter& o) const {
        return ch0 == o.ch0 && ch1 == o.ch1 && ch2 == o.ch2;
    }
};

// (0, 2d, e): the rank is zero, the support class is twice the curve class,
// and the degree term is the e invariant.
ChernCharacter chern_char(const ModuleFiberData& m);

/* Choice of one fiber component over every degeneration point, relative to
 * the context's reference lift: label 0 keeps the reference component,
 * label 1 takes the other one. */
struct LiftedDivisor {
    ContextPtr ctx;
    std::vector<int> choices;
};

// The component choice a module state determines: flip the reference label
// exactly where lambda is set.
LiftedDivisor lift_to_cover(const ModuleFiberData& m);

// Parity of the number of points where the two choices differ.
// Errors: "context-mismatch" when the divisors live on different contexts.
int half_index(const LiftedDivisor& a, const LiftedDivisor& b);

struct ParityFiberRow {
    int e = 0;
    long long fiber_size = 0;
    std::array<long long, 2> half_histogram = {0, 0};  // counts by half index
    bool uniform = false;   // every lift in the fiber has the same half
    int half_vs_base = -1;  // the shared value when uniform
};

struct ParityReport {
    int n = 0;
    int d = 0;
    int base_e = 0;
    std::vector<ParityFiberRow> rows;
    bool pass = false;  // uniform everywhere, halves alternate with e, and
                        // e and e + 2 always agree
};

// Sweeps every fiber with e in [e_lo, e_hi] and checks that the half index
// is a function of e alone, alternating with step 1.
ParityReport parity_rule_check(const ContextPtr& ctx, int e_lo, int e_hi);

/* Exact matrices of the four algebra generators acting on the rank-2
 * direct image of the structure sheaf of t^2 = s near a degeneration,
 * in the two natural frames, together with the s = 0 kernels inside
 * span(b, c) and the weight of the grading character on each frame vector.
 * Generator order everywhere: identity, grading involution a, odd b, odd c.
 */
struct LocalModelReport {
    FieldPtr field;
    // frame_plain = (w, t w'), frame_scaled = (s w, t w').
    std::array<std::array<std::array<UniPoly, 2>, 2>, 4> frame_plain;
    std::array<std::array<std::array<UniPoly, 2>, 2>, 4> frame_scaled;
    std::vector<Fel> kernel_plain;   // coefficients (c_b, c_c), canonical
    std::vector<Fel> kernel_scaled;  // expected (1, 1) and (1, -1)
    std::array<int, 2> grading = {0, 1};
    bool kernels_differ = false;
    bool character_product_negative = false;
    bool relations_hold = false;  // a^2 = 1, b^2 = s, c^2 = -s, anticommute
};

// Computes the report over the given field; characteristic 2 is rejected
// with "bad-field".
LocalModelReport local_model(const FieldPtr& field);

struct LiftConsistencyReport {
    bool pass = false;
    int n = 0;
    std::vector<int> chosen;        // the lift labels that were verified
    std::vector<RepTypeTag> types;  // classification seen at each point
};

/* Cross-check of the combinatorial lift against representation theory: at
 * every degeneration point, build the standard rank-2 representation of the
 * class attached to the chosen component, push it through the kernel-line
 * construction on the actual local gram, and require the resulting plane to
 * be that component.  Only classes T1 and T2 may ever appear. */
LiftConsistencyReport rep_lift_consistency(const ModuleFiberData& m);

}  // namespace cliffordprym
