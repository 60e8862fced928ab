#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cliffordprym/field.hpp"

namespace cliffordprym {

/* Univariate polynomial over a FieldSpec field.  Coefficients are stored
 * lowest degree first and kept trimmed (zero polynomial = empty vector). */
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(FieldPtr field) : field_(std::move(field)) {}
    UniPoly(FieldPtr field, std::vector<Fel> coeffs);

    static UniPoly zero(const FieldPtr& f) { return UniPoly(f); }
    static UniPoly constant(const Fel& c);
    static UniPoly from_ints(const FieldPtr& f, std::vector<long long> cs);
    // c * t^k
    static UniPoly monomial(const Fel& c, int k);
    static UniPoly variable(const FieldPtr& f);  // t

    const FieldPtr& field() const { return field_; }
    const std::vector<Fel>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Fel coeff(int k) const;  // zero beyond stored range
    Fel lead() const;        // error on zero polynomial
    Fel eval(const Fel& x) const;

    UniPoly operator-() const;
    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator*(const Fel& c) const;
    bool operator==(const UniPoly& o) const;
    bool operator!=(const UniPoly& o) const { return !(*this == o); }

    UniPoly monic() const;
    UniPoly derivative() const;
    UniPoly shifted(int k) const;  // * t^k
    // Quotient and remainder by a nonzero divisor.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
    UniPoly rem(const UniPoly& d) const { return divmod(d).second; }
    // Exact quotient; errors when the division leaves a remainder.
    UniPoly divide_exact(const UniPoly& d) const;
    bool divides(const UniPoly& other) const;  // this | other

    std::string str() const;

private:
    void trim();

    FieldPtr field_;
    std::vector<Fel> c_;
};

UniPoly gcd_poly(const UniPoly& a, const UniPoly& b);  // monic gcd
UniPoly pow_mod(const UniPoly& base, const mpz_class& e, const UniPoly& mod);
// Coefficient-wise map (e.g. Frobenius or an embedding into a larger field).
UniPoly map_coeffs(const UniPoly& a, const FieldPtr& target,
                   const std::function<Fel(const Fel&)>& fn);

// Determinant of the Sylvester matrix.  Errors with "zero-polynomial" when
// both inputs vanish; returns 0 when exactly one vanishes.
Fel resultant(const UniPoly& f, const UniPoly& g);

}  // namespace cliffordprym
