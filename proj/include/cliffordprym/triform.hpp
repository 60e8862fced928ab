#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cliffordprym/clifford.hpp"
#include "cliffordprym/poly.hpp"

namespace cliffordprym {

/* Homogeneous forms in three variables x0, x1, x2 over a FieldSpec field,
 * stored sparsely by exponent triple.  The zero form carries no fixed degree
 * and is accepted wherever a form of any prescribed degree is expected. */
class TriPoly {
public:
    using Key = std::array<int, 3>;

    explicit TriPoly(FieldPtr field) : field_(std::move(field)) {}

    static TriPoly zero(const FieldPtr& f) { return TriPoly(f); }
    static TriPoly monomial(const FieldPtr& f, const Fel& c, int i, int j, int k);
    // Terms as (coef, i, j, k) integer quadruples.
    static TriPoly from_terms(const FieldPtr& f,
                              const std::vector<std::array<long long, 4>>& terms);
    static TriPoly variable(const FieldPtr& f, int idx);

    const FieldPtr& field() const { return field_; }
    const std::map<Key, Fel>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    // Total degree; -1 for the zero form.
    int degree() const;
    bool homogeneous_of(int d) const;

    TriPoly operator+(const TriPoly& o) const;
    TriPoly operator-(const TriPoly& o) const;
    TriPoly operator-() const;
    TriPoly operator*(const TriPoly& o) const;
    TriPoly operator*(const Fel& c) const;
    bool operator==(const TriPoly& o) const;
    bool operator!=(const TriPoly& o) const { return !(*this == o); }

    TriPoly derivative(int var) const;
    Fel eval(const Fel& x0, const Fel& x1, const Fel& x2) const;
    // Same form with coefficients pushed through an embedding.
    TriPoly mapped(const Embedding& emb) const;
    std::string str() const;

    void add_term(const Key& k, const Fel& c);

private:
    FieldPtr field_;
    std::map<Key, Fel> t_;
};

/* Homogeneous binary form in (s, t), kept as the coefficient polynomial in s
 * together with its homogeneous degree, so t-degrees are implicit. */
class BiForm {
public:
    BiForm(int degree, UniPoly in_s);

    static BiForm zero(const FieldPtr& f, int degree);
    // Terms as (coef, i, j) with i + j = degree.
    static BiForm from_terms(const FieldPtr& f, int degree,
                             const std::vector<std::array<long long, 3>>& terms);

    const FieldPtr& field() const { return in_s_.field(); }
    int degree() const { return degree_; }
    const UniPoly& in_s() const { return in_s_; }
    bool is_zero() const { return in_s_.is_zero(); }
    Fel coeff(int s_exp) const { return in_s_.coeff(s_exp); }
    // Vanishing order at (1 : 0).
    int infinity_multiplicity() const;

    BiForm operator+(const BiForm& o) const;
    BiForm operator*(const BiForm& o) const;
    BiForm operator*(const Fel& c) const;
    bool operator==(const BiForm& o) const;

    Fel eval(const Fel& s, const Fel& t) const;
    BiForm mapped(const Embedding& emb) const;
    std::string str() const;

private:
    int degree_;
    UniPoly in_s_;
};

// Projective point with canonically scaled coordinates: the first nonzero
// coordinate equals 1.
struct ProjPoint {
    FieldPtr field;
    std::vector<Fel> xyz;  // size 3

    static ProjPoint make(const FieldPtr& f, std::vector<Fel> coords);
    bool operator==(const ProjPoint& o) const;
    std::string str() const;
};

/* Conic fibration over the projective plane: a symmetric 3x3 matrix of forms
 * with deg entry[i][j] = a_i + a_j + l.  Degenerate fibers happen where the
 * determinant vanishes. */
class ConicFibration {
public:
    ConicFibration(FieldPtr field, std::array<int, 3> twist_degrees,
                   int line_degree, std::array<std::array<TriPoly, 3>, 3> entries);

    const FieldPtr& field() const { return field_; }
    const std::array<int, 3>& twist_degrees() const { return a_; }
    int line_degree() const { return l_; }
    const TriPoly& entry(int i, int j) const {
        return e_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    int entry_degree(int i, int j) const {
        return a_[static_cast<std::size_t>(i)] + a_[static_cast<std::size_t>(j)] +
               l_;
    }

    // Fiber gram matrix at a projective point, over the point's field.
    FieldGram gram_at(const ProjPoint& p) const;

private:
    FieldPtr field_;
    std::array<int, 3> a_;
    int l_;
    std::array<std::array<TriPoly, 3>, 3> e_;
};

struct DiscriminantCurve {
    TriPoly form;
    int degree;  // 2(a1 + a2 + a3) + 3 l
};

// Determinant of the entry matrix, with the degree bookkeeping attached.
DiscriminantCurve discriminant(const ConicFibration& fib);

}  // namespace cliffordprym
