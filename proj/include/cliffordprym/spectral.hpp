#pragma once

#include <array>
#include <string>
#include <vector>

#include "cliffordprym/matrix.hpp"
#include "cliffordprym/poly.hpp"

namespace cliffordprym {

/* Affine double cover t^2 = s(u) of the u-line.  The branch polynomial must
 * be squarefree (gcd with its derivative constant) so the cover is smooth,
 * and the characteristic must be odd so t is a coordinate transverse to the
 * branch locus. */
class SpectralCover {
public:
    SpectralCover(FieldPtr field, UniPoly branch);

    const FieldPtr& field() const { return field_; }
    const UniPoly& branch() const { return branch_; }
    bool same(const SpectralCover& o) const;

private:
    FieldPtr field_;
    UniPoly branch_;
};

// Element a = on_one + on_t * t of the cover ring R' = R[t]/(t^2 - s).
struct RingElem2 {
    UniPoly on_one, on_t;
};

enum class BundleKind { trivial, ramification_ideal, pullback_twist };

const char* bundle_kind_name(BundleKind k);

/* Fractional ideal of the cover ring in the canonical form g * (s1, t):
 * a polynomial twist g pulled back from the base times the ideal of a
 * partial branch divisor s1 | s (s1 = 1 means the free module).  Every
 * supported bundle and every product of supported bundles normalizes to
 * this form; rank one is certified by a determinant test on the generator
 * presentation over the base ring. */
class LineBundleOnCover {
public:
    static LineBundleOnCover trivial(const SpectralCover& cover);
    static LineBundleOnCover ramification_ideal(const SpectralCover& cover,
                                                const UniPoly& s1);
    static LineBundleOnCover pullback_twist(const SpectralCover& cover,
                                            const UniPoly& g);

    // Ideal product, renormalized: shared branch factors of the two
    // ramification parts migrate into the twist.
    LineBundleOnCover product(const LineBundleOnCover& other) const;

    BundleKind kind() const;
    const SpectralCover& cover() const { return cover_; }
    const UniPoly& twist() const { return twist_; }
    const UniPoly& ramification() const { return ram_; }

    // One generator (g) for a free bundle, two (g s1, g t) otherwise.
    std::vector<RingElem2> generators() const;

private:
    LineBundleOnCover(SpectralCover cover, UniPoly twist, UniPoly ram);

    SpectralCover cover_;
    UniPoly twist_;  // g, nonzero
    UniPoly ram_;    // s1, monic divisor of the branch polynomial
};

/* Rank-2 pushforward datum: the matrix of multiplication by t in a fixed
 * free basis of the bundle over the base ring, with formal tags naming the
 * basis vectors. */
struct HiggsPair {
    std::array<std::string, 2> basis_tags;
    std::array<std::array<UniPoly, 2>, 2> phi;
};

// Pushes the bundle down the cover: computes the canonical basis and the
// mult-by-t matrix.  Errors: "ring-mismatch" when the bundle belongs to a
// different cover.
HiggsPair pushforward(const SpectralCover& cover, const LineBundleOnCover& lb);

// True iff trace(phi) = 0, det(phi) = -s, and phi^2 = s * Id hold as exact
// polynomial identities.
bool char_identity(const HiggsPair& h, const SpectralCover& cover);

/* Kernel of phi at a root r of the branch polynomial; always exactly
 * one-dimensional for a squarefree branch.  The root may live in an
 * extension of the cover's field.  Errors: "not-a-branch-point" when
 * s(r) != 0. */
Mat ramification_kernel(const HiggsPair& h, const SpectralCover& cover,
                        const Fel& r);

}  // namespace cliffordprym
