#pragma once

#include <utility>
#include <vector>

#include "cliffordprym/poly.hpp"

namespace cliffordprym {

/* Polynomial factorization over finite fields (any FieldSpec finite kind):
 * squarefree decomposition, then distinct-degree splitting, then seeded
 * equal-degree splitting.  On top of it: root listing in the algebraic
 * closure, canonical extension fields of prescribed degree, and embeddings
 * between compatible finite fields. */

struct IrreducibleFactor {
    UniPoly poly;  // monic irreducible
    int multiplicity;
};

// Pairwise-coprime monic squarefree parts g with f = lead * prod g^mult.
std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& f);

// Full irreducible factorization (deterministic: the internal equal-degree
// splitting draws from a fixed-seed generator).
std::vector<IrreducibleFactor> factor_poly(const UniPoly& f);

bool is_irreducible(const UniPoly& f);

struct RootInfo {
    Fel root;            // element of `field`
    int multiplicity;
    int ext_degree;      // minimal extension degree over the coefficient field
    int orbit;           // Frobenius orbit index (over the coefficient field)
    FieldPtr field;
};

struct FactoredRoots {
    Fel lead;
    std::vector<RootInfo> roots;  // sorted by (ext_degree, orbit, coords)
};

// Complete list of roots of f in the algebraic closure of its coefficient
// field.  Errors with "zero-polynomial" on the zero input.
FactoredRoots factor_roots(const UniPoly& f);

// Canonical field with p^n elements (deterministically chosen modulus).
FieldPtr field_of_degree(long long p, int n);

/* Field homomorphism determined by the image of the generator; canonical
 * (the lex-least root of the source modulus is chosen). */
class Embedding {
public:
    static Embedding identity(const FieldPtr& f);
    static Embedding find(const FieldPtr& from, const FieldPtr& to);
    // first then second; the intermediate fields must agree.
    static Embedding compose(const Embedding& first, const Embedding& second);

    const FieldPtr& from() const { return from_; }
    const FieldPtr& to() const { return to_; }
    Fel operator()(const Fel& x) const;

private:
    Embedding(FieldPtr from, FieldPtr to, Fel gen_image)
        : from_(std::move(from)), to_(std::move(to)),
          gen_image_(std::move(gen_image)) {}

    FieldPtr from_, to_;
    Fel gen_image_;
};

// Square root that always succeeds over finite fields by passing to the
// degree-2 extension when needed.  Result field is a.field() or its
// canonical quadratic extension (paired with the embedding used).
struct SqrtResult {
    Fel root;
    FieldPtr field;
    Embedding emb;  // a.field() -> field
};
SqrtResult sqrt_in_extension(const Fel& a);

}  // namespace cliffordprym
