#pragma once

#include <array>
#include <vector>

#include "cliffordprym/factor.hpp"
#include "cliffordprym/matrix.hpp"
#include "cliffordprym/series.hpp"

namespace cliffordprym {

/* Even Clifford algebra of a ternary quadratic form.
 *
 * The generators satisfy e_i e_j + e_j e_i = 2 f_ij and e_i^2 = f_ii, where
 * (f_ij) is the gram matrix.  Even elements are stored in the ordered basis
 * (1, e1e2, e2e3, e1e3).  Coefficients come from a field or from a truncated
 * series ring, so the same multiplication serves both a single fiber and a
 * one-parameter degeneration. */

inline bool same_ring(const Fel& a, const Fel& b) {
    return a.field()->same(*b.field());
}
inline bool same_ring(const TruncSeries& a, const TruncSeries& b) {
    return a.field()->same(*b.field()) && a.precision() == b.precision();
}

template <class R>
class TernaryGram {
public:
    explicit TernaryGram(const std::array<std::array<R, 3>, 3>& m) : m_(m) {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (!same_ring(m_[i][j], m_[0][0]))
                    throw MathError("ring-mismatch", "gram entries from mixed rings");
                if (!(m_[i][j] == m_[j][i]))
                    throw MathError("asymmetric-gram", "gram matrix must be symmetric");
            }
    }

    const R& at(int i, int j) const {
        return m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    // Any entry, used as the ring prototype for zero/one construction.
    const R& proto() const { return m_[0][0]; }

    bool operator==(const TernaryGram& o) const { return m_ == o.m_; }

private:
    std::array<std::array<R, 3>, 3> m_;
};

using FieldGram = TernaryGram<Fel>;
using SeriesGram = TernaryGram<TruncSeries>;

FieldGram diagonal_gram(const FieldPtr& f, long long d1, long long d2, long long d3);
FieldGram gram_from_ints(const FieldPtr& f,
                         const std::array<std::array<long long, 3>, 3>& m);
// Series entries must share precision >= 2 so first-order behavior survives.
SeriesGram series_gram(const std::array<std::array<TruncSeries, 3>, 3>& m);

template <class R>
struct EvenElem {
    R c0, c12, c23, c13;

    static EvenElem zero(const R& like) {
        R z = ring_zero(like);
        return {z, z, z, z};
    }
    static EvenElem unit(const R& like) {
        return {ring_one(like), ring_zero(like), ring_zero(like), ring_zero(like)};
    }

    EvenElem operator+(const EvenElem& o) const {
        return {c0 + o.c0, c12 + o.c12, c23 + o.c23, c13 + o.c13};
    }
    EvenElem operator-(const EvenElem& o) const {
        return {c0 - o.c0, c12 - o.c12, c23 - o.c23, c13 - o.c13};
    }
    EvenElem operator-() const { return {-c0, -c12, -c23, -c13}; }
    EvenElem operator*(const R& s) const {
        return {c0 * s, c12 * s, c23 * s, c13 * s};
    }
    bool operator==(const EvenElem& o) const {
        return c0 == o.c0 && c12 == o.c12 && c23 == o.c23 && c13 == o.c13;
    }
    bool operator!=(const EvenElem& o) const { return !(*this == o); }
    bool is_zero() const {
        return c0.is_zero() && c12.is_zero() && c23.is_zero() && c13.is_zero();
    }
};

using EvenCliffordElement = EvenElem<Fel>;
using SeriesCliffordElement = EvenElem<TruncSeries>;

/* Rewrites a generator word into the subset basis of the full 8-dimensional
 * Clifford algebra: equal neighbors contract to f_ii, out-of-order neighbors
 * swap against 2 f_ij.  Exposed so tests can drive it on raw words. */
template <class R>
void reduce_word_into(const TernaryGram<R>& g, std::vector<int> word, R coef,
                      std::array<R, 8>& acc) {
    for (std::size_t k = 0; k + 1 < word.size(); ++k) {
        int a = word[k], b = word[k + 1];
        if (a == b) {
            R c = coef * g.at(a, a);
            word.erase(word.begin() + static_cast<long>(k),
                       word.begin() + static_cast<long>(k) + 2);
            reduce_word_into(g, std::move(word), std::move(c), acc);
            return;
        }
        if (a > b) {
            std::vector<int> contracted(word);
            contracted.erase(contracted.begin() + static_cast<long>(k),
                             contracted.begin() + static_cast<long>(k) + 2);
            reduce_word_into(g, std::move(contracted),
                             coef * (g.at(a, b) + g.at(a, b)), acc);
            std::swap(word[k], word[k + 1]);
            reduce_word_into(g, std::move(word), -coef, acc);
            return;
        }
    }
    int mask = 0;
    for (int i : word) mask |= 1 << i;
    acc[static_cast<std::size_t>(mask)] = acc[static_cast<std::size_t>(mask)] + coef;
}

// Product in the full Clifford algebra; index = subset mask over (e1, e2, e3).
template <class R>
std::array<R, 8> full_clifford_multiply(const TernaryGram<R>& g,
                                        const std::array<R, 8>& u,
                                        const std::array<R, 8>& v) {
    R z = ring_zero(g.proto());
    std::array<R, 8> acc = {z, z, z, z, z, z, z, z};
    for (int s = 0; s < 8; ++s) {
        if (u[static_cast<std::size_t>(s)].is_zero()) continue;
        for (int t = 0; t < 8; ++t) {
            if (v[static_cast<std::size_t>(t)].is_zero()) continue;
            std::vector<int> word;
            for (int i = 0; i < 3; ++i)
                if (s & (1 << i)) word.push_back(i);
            for (int i = 0; i < 3; ++i)
                if (t & (1 << i)) word.push_back(i);
            reduce_word_into(g, std::move(word),
                             u[static_cast<std::size_t>(s)] *
                                 v[static_cast<std::size_t>(t)],
                             acc);
        }
    }
    return acc;
}

template <class R>
EvenElem<R> even_clifford_multiply(const TernaryGram<R>& g, const EvenElem<R>& u,
                                   const EvenElem<R>& v) {
    if (!same_ring(g.proto(), u.c0) || !same_ring(g.proto(), v.c0))
        throw MathError("ring-mismatch", "even product across different rings");
    R z = ring_zero(g.proto());
    std::array<R, 8> ua = {u.c0, z, z, u.c12, z, u.c13, u.c23, z};
    std::array<R, 8> va = {v.c0, z, z, v.c12, z, v.c13, v.c23, z};
    std::array<R, 8> w = full_clifford_multiply(g, ua, va);
    for (int mask : {1, 2, 4, 7})
        if (!w[static_cast<std::size_t>(mask)].is_zero())
            throw MathError("parity", "even product left an odd component");
    return {w[0], w[3], w[6], w[5]};
}

/* Elements of the normalized algebra in the symbol basis (1, x, y, z) with
 * x^2 = 1, y^2 = z^2 = 0, xy = -z = -yx, xz = -y = -zx, yz = zy = 0.  This
 * presentation is rational: it needs no square root of -1, so it works over
 * every coefficient field of odd characteristic. */
struct SymbolElement {
    Fel s0, sx, sy, sz;

    static SymbolElement zero(const FieldPtr& f);
    static SymbolElement unit(const FieldPtr& f);
    static SymbolElement from_ints(const FieldPtr& f, long long a0, long long ax,
                                   long long ay, long long az);

    SymbolElement operator+(const SymbolElement& o) const;
    SymbolElement operator-(const SymbolElement& o) const;
    SymbolElement operator-() const;
    SymbolElement operator*(const Fel& s) const;
    bool operator==(const SymbolElement& o) const;
    bool operator!=(const SymbolElement& o) const { return !(*this == o); }
    bool is_zero() const;
    std::string str() const;
};

SymbolElement normalized_multiply(const SymbolElement& u, const SymbolElement& v);

// Basis change between the symbol and wedge coordinates; i must square to -1.
EvenCliffordElement symbol_to_even(const SymbolElement& s, const Fel& i);
SymbolElement even_to_symbol(const EvenCliffordElement& u, const Fel& i);

/* Diagonalization of a corank-one form: change^T gram change = diag(1, 1, 0).
 * When a needed square root is missing the base field is replaced by its
 * canonical quadratic extension, which already contains every further root
 * this construction can ask for.  All choices are canonical, so the output
 * is deterministic. */
struct Rank2Normalization {
    FieldPtr field;       // base field or its quadratic extension
    Embedding emb;        // base -> field
    Mat change;           // 3x3 invertible, columns = new basis
    FieldGram normalized; // always diag(1, 1, 0) over field
};

Rank2Normalization normalize_rank2(const FieldGram& gram);

// Images of the path-algebra generators inside the normalized algebra.
// Internally certified: unital homomorphism, zero composite arrows, bijective.
struct QuiverImages {
    SymbolElement e_plus, e_minus, alpha, beta;
};

QuiverImages quiver_presentation(const FieldGram& normalized_gram);

/* Exhaustive idempotent scan of the 4-dimensional normalized algebra over a
 * small field, against the closed family 0, 1, (1 +- x)/2 + a y + b z. */
struct IdempotentFamily {
    std::vector<SymbolElement> members;  // every idempotent, enumeration order
    long long count;                     // equals 2 + 2 |field|^2
    bool family_matches;                 // scan agrees with the closed family
};

IdempotentFamily idempotent_family(const FieldPtr& field);

// Jacobson radical span(y, z) of the normalized algebra with certificates.
struct RadicalCertificate {
    std::vector<SymbolElement> basis;
    bool square_zero;     // every pairwise product of radical elements is 0
    int quotient_dim;     // 2
    bool quotient_split;  // quotient = field x field via the two idempotents
};

RadicalCertificate radical_ideal(const FieldPtr& field);

enum class RepTypeTag { T1, T2, T3, T4, T5 };

const char* rep_type_name(RepTypeTag t);

// Two-dimensional representation given by the images of x, y, z.
struct Rep2 {
    Mat x, y, z;
};

// Quiver-shaped data of a rank-2 representation: dimensions at the two
// vertices and the arrow matrices between them.
struct QuiverRep2 {
    int dim_plus = 0, dim_minus = 0;
    Mat mat_alpha;  // dim_minus x dim_plus
    Mat mat_beta;   // dim_plus x dim_minus
};

// Checks the defining relations and splits the plane by the idempotent
// eigenvalues; errors with "not-a-representation" when a relation fails.
QuiverRep2 to_quiver_rep(const Rep2& rep);

RepTypeTag classify_quiver(const QuiverRep2& q);
RepTypeTag classify_rep2(const Rep2& rep);

// The standard representative of each class, over the given field.
Rep2 standard_rep(const FieldPtr& f, RepTypeTag tag);

/* Kernel data of a type T1 or T2 representation of the even Clifford algebra
 * of a corank-one gram: the unique bivector line killed by the representation
 * and the 2-dimensional totally isotropic subspace it cuts out of the base
 * space via the wedge pairing.  Coordinates refer to the original frame of
 * the gram; the field may be a quadratic extension of the rep's field when
 * expressing the line needs a square root of -1. */
struct KernelLine {
    RepTypeTag tag;
    FieldPtr field;
    Embedding emb;  // gram base field -> field
    Mat k_line;     // 1x3 canonical, coordinates over (e1e2, e2e3, e1e3)
    Mat k_plane;    // 2x3 canonical basis of the isotropic subspace
};

KernelLine rep_kernel_line(const FieldGram& gram, const Rep2& rep);

/* Both isotropic planes of a corank-one gram at once, labeled by the fixed
 * tie-break: in normalized coordinates the plane whose canonical basis is
 * lexicographically smaller is "plus".  Each label also records which
 * representation class produces that plane. */
struct IsotropicSplit {
    FieldPtr field;
    Embedding emb;  // gram base field -> field
    Mat plane_plus, plane_minus;  // 2x3 canonical bases
    Mat line_plus, line_minus;    // 1x3 canonical bivector lines
    RepTypeTag tag_plus, tag_minus;
};

IsotropicSplit split_isotropic_planes(const FieldGram& gram);

}  // namespace cliffordprym
