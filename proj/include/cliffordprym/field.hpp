#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cliffordprym/error.hpp"
#include "cliffordprym/rng.hpp"

namespace cliffordprym {

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

enum class FieldKind { Prime, Extension, Gaussian };

/* Description of an exact coefficient field: a prime field of odd
 * characteristic, a finite extension presented by a monic irreducible
 * modulus over the prime field, or the rationals with a square root of -1
 * adjoined.  Characteristic 2 is rejected at construction. */
class FieldSpec : public std::enable_shared_from_this<FieldSpec> {
public:
    static FieldPtr prime(long long p);
    // modulus: coefficients low to high over F_p, monic, irreducible (checked).
    static FieldPtr extension(long long p, std::vector<long long> modulus);
    static FieldPtr gaussian();

    FieldKind kind() const { return kind_; }
    long long characteristic() const { return p_; }
    // Extension degree over the prime field (1 for prime and gaussian kinds).
    int degree() const { return degree_; }
    const std::vector<long long>& modulus() const { return modulus_; }

    bool finite() const { return kind_ != FieldKind::Gaussian; }
    mpz_class order() const;  // finite kinds only

    bool same(const FieldSpec& other) const;
    std::string str() const;

private:
    FieldSpec(FieldKind kind, long long p, int degree,
              std::vector<long long> modulus)
        : kind_(kind), p_(p), degree_(degree), modulus_(std::move(modulus)) {}

    FieldKind kind_;
    long long p_;
    int degree_;
    std::vector<long long> modulus_;
};

/* Element of a FieldSpec field.  Finite kinds store a coordinate vector over
 * the prime field (length = extension degree, entries reduced to 0..p-1);
 * the gaussian kind stores two exact rationals (real and i-part). */
class Fel {
public:
    Fel() = default;

    static Fel zero(const FieldPtr& f);
    static Fel one(const FieldPtr& f);
    static Fel from_int(const FieldPtr& f, long long k);
    static Fel from_coords(const FieldPtr& f, std::vector<long long> coords);
    static Fel gauss(const mpq_class& re, const mpq_class& im);

    const FieldPtr& field() const { return field_; }
    const std::vector<long long>& coords() const { return coords_; }
    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const;
    bool is_one() const;

    Fel operator-() const;
    Fel operator+(const Fel& o) const;
    Fel operator-(const Fel& o) const;
    Fel operator*(const Fel& o) const;
    Fel operator/(const Fel& o) const;
    bool operator==(const Fel& o) const;
    bool operator!=(const Fel& o) const { return !(*this == o); }

    Fel inv() const;                    // error on zero
    Fel pow(const mpz_class& e) const;  // e >= 0
    Fel frobenius() const;              // x^p, finite kinds only
    Fel conj() const;                   // i -> -i, gaussian kind only

    // Deterministic total order inside one field (coordinate lex order for
    // finite kinds, (re, im) rational order for gaussian).
    bool lex_less(const Fel& o) const;

    std::string str() const;

private:
    FieldPtr field_;
    std::vector<long long> coords_;
    mpq_class re_, im_;
};

Fel operator*(long long k, const Fel& a);

// Square root inside the ambient field, when one exists.  The returned root
// is the canonical one (lex-least of the two).
std::optional<Fel> sqrt_element(const Fel& a);

// Quadratic extension of a prime field by its least nonresidue (t^2 - a).
FieldPtr quadratic_extension_of_prime(long long p);

// All field elements in canonical (coordinate odometer) order.  Errors with
// "enumeration-bound" when the field order exceeds `bound`.
std::vector<Fel> all_elements(const FieldPtr& f, unsigned long long bound);

// Uniform random element (finite kinds).
Fel random_element(const FieldPtr& f, Rng& rng);

}  // namespace cliffordprym
