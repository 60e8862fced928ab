#pragma once

#include <array>
#include <vector>

#include "cliffordprym/triform.hpp"

namespace cliffordprym {

/* Parametrized rational plane curve of degree 1 or 2: three binary forms
 * rho_i(s, t) of equal degree without a common root.  For degree 2 the
 * coefficient matrix must have rank 3 so the image is a genuine conic. */
class ParamCurve {
public:
    ParamCurve(FieldPtr field, int degree, std::array<BiForm, 3> rho);

    const FieldPtr& field() const { return field_; }
    int degree() const { return d_; }
    const BiForm& rho(int i) const { return rho_[static_cast<std::size_t>(i)]; }

    // Image of (s : t); the coordinates live in the field of s and t.
    ProjPoint eval(const Fel& s, const Fel& t) const;

private:
    FieldPtr field_;
    int d_;
    std::array<BiForm, 3> rho_;
};

// Composition f(rho0, rho1, rho2) of a homogeneous trivariate form with the
// parametrization, as a binary form of degree deg(f) * deg(rho).
BiForm substitute_curve(const TriPoly& f, const ParamCurve& curve);

/* One point of curve ∩ discriminant.  The parameter is the affine s-value
 * (t = 1) in its minimal extension, or the marker at_infinity for (1 : 0). */
struct IntersectionDatum {
    bool at_infinity;
    Fel parameter;     // s with t = 1; equals 1 for the infinity datum
    int ext_degree;    // of the parameter field over the curve field
    ProjPoint point;
    FieldGram local_gram;
    int multiplicity;
};

struct IntersectionResult {
    std::vector<IntersectionDatum> points;  // canonical order, see below
    bool transversal;  // all multiplicities 1 and all local grams of rank 2
    int total_multiplicity;  // = curve degree * discriminant degree
};

/* All intersection points of the curve with the discriminant, counted with
 * multiplicity (Bezout total enforced).  Points are ordered by (extension
 * degree, infinity first, parameter coordinates). */
IntersectionResult intersect_curve_discriminant(const ConicFibration& fib,
                                                const ParamCurve& curve);

// True iff the fiber gram at the point has rank exactly 2; the point must
// lie on the discriminant.
bool simple_degeneration_at(const ConicFibration& fib, const ProjPoint& p);

/* The two components of a rank-2 fiber conic: a pair of distinct isotropic
 * planes meeting in the radical line, labeled by the clifford tie-break. */
struct CoverPointPair {
    FieldPtr field;  // where both components are defined
    Embedding emb;   // local gram field -> field
    Mat line_plus, line_minus;  // 2x3 canonical bases
    RepTypeTag tag_plus, tag_minus;
};

CoverPointPair split_degenerate_conic(const IntersectionDatum& datum);

int gram_rank(const FieldGram& g);

}  // namespace cliffordprym
