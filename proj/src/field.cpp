#include "cliffordprym/field.hpp"

#include <algorithm>
#include <sstream>

namespace cliffordprym {
namespace {

long long mod_ll(long long a, long long p) {
    long long r = a % p;
    return r < 0 ? r + p : r;
}

long long mulmod(long long a, long long b, long long p) {
    return static_cast<long long>((__int128)a * b % p);
}

long long powmod_ll(long long a, long long e, long long p) {
    long long r = 1 % p;
    a = mod_ll(a, p);
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

long long invmod(long long a, long long p) {
    // p prime; Fermat.
    a = mod_ll(a, p);
    if (a == 0) throw MathError("division-by-zero", "inverse of 0 mod p");
    return powmod_ll(a, p - 2, p);
}

bool is_prime_ll(long long n) {
    if (n < 2) return false;
    for (long long q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % q == 0) return n == q;
    }
    // Deterministic Miller-Rabin for 64-bit range.
    long long d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (long long a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        long long x = powmod_ll(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/* Bootstrap polynomial arithmetic over F_p on raw coefficient vectors
 * (low to high).  Used only to validate extension moduli and to run
 * coordinate arithmetic inside Fel; the general-purpose polynomial layer
 * over arbitrary FieldSpec coefficients lives in poly.cpp. */
using PV = std::vector<long long>;

void pv_trim(PV& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PV pv_add(const PV& a, const PV& b, long long p) {
    PV r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        long long v = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = mod_ll(v, p);
    }
    pv_trim(r);
    return r;
}

PV pv_scale(const PV& a, long long c, long long p) {
    PV r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], mod_ll(c, p), p);
    pv_trim(r);
    return r;
}

PV pv_sub(const PV& a, const PV& b, long long p) {
    return pv_add(a, pv_scale(b, p - 1, p), p);
}

PV pv_mul(const PV& a, const PV& b, long long p) {
    if (a.empty() || b.empty()) return {};
    PV r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = mod_ll(r[i + j] + mulmod(a[i], b[j], p), p);
    pv_trim(r);
    return r;
}

// Remainder of a by b (b nonzero).
PV pv_rem(PV a, const PV& b, long long p) {
    pv_trim(a);
    long long lead_inv = invmod(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
        long long c = mulmod(a.back(), lead_inv, p);
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] = mod_ll(a[shift + i] - mulmod(c, b[i], p), p);
        pv_trim(a);
    }
    return a;
}

PV pv_gcd(PV a, PV b, long long p) {
    pv_trim(a);
    pv_trim(b);
    while (!b.empty()) {
        PV r = pv_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) a = pv_scale(a, invmod(a.back(), p), p);
    return a;
}

PV pv_powmod_x(const mpz_class& e, const PV& f, long long p) {
    // x^e mod f.
    PV base = pv_rem(PV{0, 1}, f, p);
    PV r{1};
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = pv_rem(pv_mul(r, r, p), f, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = pv_rem(pv_mul(r, base, p), f, p);
    }
    return r;
}

bool pv_irreducible(const PV& f, long long p) {
    int n = static_cast<int>(f.size()) - 1;
    if (n < 1) return false;
    if (n == 1) return true;
    mpz_class pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(n));
    PV xq = pv_powmod_x(pn, f, p);
    if (pv_sub(xq, PV{0, 1}, p) != PV{}) return false;
    // For each prime divisor q of n: gcd(x^(p^(n/q)) - x, f) must be 1.
    int m = n;
    for (int q = 2; q * q <= m; ++q) {
        if (m % q != 0) continue;
        while (m % q == 0) m /= q;
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(n / q));
        PV g = pv_gcd(pv_sub(pv_powmod_x(e, f, p), PV{0, 1}, p), f, p);
        if (g.size() != 1) return false;
    }
    if (m > 1) {
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p),
                      static_cast<unsigned long>(n / m));
        PV g = pv_gcd(pv_sub(pv_powmod_x(e, f, p), PV{0, 1}, p), f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

// Extended Euclid: returns (g, u) with u*a = g mod b, g monic gcd.
std::pair<PV, PV> pv_half_xgcd(PV a, PV b, long long p) {
    PV u0{1}, u1{};
    pv_trim(a);
    pv_trim(b);
    while (!b.empty()) {
        // a = q*b + r
        PV r = a;
        PV q{};
        long long lead_inv = invmod(b.back(), p);
        while (r.size() >= b.size() && !r.empty()) {
            long long c = mulmod(r.back(), lead_inv, p);
            size_t shift = r.size() - b.size();
            if (q.size() < shift + 1) q.resize(shift + 1, 0);
            q[shift] = mod_ll(q[shift] + c, p);
            for (size_t i = 0; i < b.size(); ++i)
                r[shift + i] = mod_ll(r[shift + i] - mulmod(c, b[i], p), p);
            pv_trim(r);
        }
        PV u2 = pv_sub(u0, pv_mul(q, u1, p), p);
        a = std::move(b);
        b = std::move(r);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    if (!a.empty()) {
        long long c = invmod(a.back(), p);
        a = pv_scale(a, c, p);
        u0 = pv_scale(u0, c, p);
    }
    return {a, u0};
}

void check_same_field(const Fel& a, const Fel& b) {
    if (!a.field() || !b.field() || !a.field()->same(*b.field()))
        throw MathError("ring-mismatch",
                        "operands belong to different fields");
}

}  // namespace

FieldPtr FieldSpec::prime(long long p) {
    if (p < 3 || p > 1000000 || !is_prime_ll(p))
        throw MathError("bad-field",
                        "characteristic must be an odd prime <= 10^6, got " +
                            std::to_string(p));
    return FieldPtr(new FieldSpec(FieldKind::Prime, p, 1, {}));
}

FieldPtr FieldSpec::extension(long long p, std::vector<long long> modulus) {
    if (p < 3 || p > 1000000 || !is_prime_ll(p))
        throw MathError("bad-field",
                        "characteristic must be an odd prime <= 10^6, got " +
                            std::to_string(p));
    for (auto& c : modulus) c = mod_ll(c, p);
    pv_trim(modulus);
    int deg = static_cast<int>(modulus.size()) - 1;
    if (deg < 2)
        throw MathError("bad-field", "extension modulus must have degree >= 2");
    if (modulus.back() != 1)
        throw MathError("bad-field", "extension modulus must be monic");
    if (!pv_irreducible(modulus, p))
        throw MathError("bad-field",
                        "extension modulus is reducible over the prime field");
    return FieldPtr(new FieldSpec(FieldKind::Extension, p, deg,
                                  std::move(modulus)));
}

FieldPtr FieldSpec::gaussian() {
    return FieldPtr(new FieldSpec(FieldKind::Gaussian, 0, 1, {}));
}

mpz_class FieldSpec::order() const {
    if (!finite()) throw MathError("bad-field", "infinite field has no order");
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p_),
                  static_cast<unsigned long>(degree_));
    return r;
}

bool FieldSpec::same(const FieldSpec& other) const {
    return kind_ == other.kind_ && p_ == other.p_ &&
           degree_ == other.degree_ && modulus_ == other.modulus_;
}

std::string FieldSpec::str() const {
    std::ostringstream os;
    switch (kind_) {
        case FieldKind::Prime:
            os << "F" << p_;
            break;
        case FieldKind::Extension: {
            os << "F" << p_ << "^" << degree_ << "[";
            for (size_t i = 0; i < modulus_.size(); ++i) {
                if (i) os << ",";
                os << modulus_[i];
            }
            os << "]";
            break;
        }
        case FieldKind::Gaussian:
            os << "Q(i)";
            break;
    }
    return os.str();
}

Fel Fel::zero(const FieldPtr& f) {
    Fel r;
    r.field_ = f;
    if (f->finite()) r.coords_.assign(f->degree(), 0);
    return r;
}

Fel Fel::one(const FieldPtr& f) { return from_int(f, 1); }

Fel Fel::from_int(const FieldPtr& f, long long k) {
    Fel r = zero(f);
    if (f->finite())
        r.coords_[0] = mod_ll(k, f->characteristic());
    else
        r.re_ = static_cast<long>(k);
    return r;
}

Fel Fel::from_coords(const FieldPtr& f, std::vector<long long> coords) {
    if (!f->finite())
        throw MathError("bad-field", "coordinate vectors require a finite field");
    if (coords.size() > static_cast<size_t>(f->degree()))
        throw MathError("bad-field", "coordinate vector longer than degree");
    Fel r = zero(f);
    for (size_t i = 0; i < coords.size(); ++i)
        r.coords_[i] = mod_ll(coords[i], f->characteristic());
    return r;
}

Fel Fel::gauss(const mpq_class& re, const mpq_class& im) {
    Fel r = zero(FieldSpec::gaussian());
    r.re_ = re;
    r.im_ = im;
    r.re_.canonicalize();
    r.im_.canonicalize();
    return r;
}

bool Fel::is_zero() const {
    if (field_->finite())
        return std::all_of(coords_.begin(), coords_.end(),
                           [](long long c) { return c == 0; });
    return re_ == 0 && im_ == 0;
}

bool Fel::is_one() const {
    if (field_->finite()) {
        if (coords_[0] != 1) return false;
        for (size_t i = 1; i < coords_.size(); ++i)
            if (coords_[i] != 0) return false;
        return true;
    }
    return re_ == 1 && im_ == 0;
}

Fel Fel::operator-() const {
    Fel r = *this;
    if (field_->finite()) {
        long long p = field_->characteristic();
        for (auto& c : r.coords_) c = c == 0 ? 0 : p - c;
    } else {
        r.re_ = -r.re_;
        r.im_ = -r.im_;
    }
    return r;
}

Fel Fel::operator+(const Fel& o) const {
    check_same_field(*this, o);
    Fel r = *this;
    if (field_->finite()) {
        long long p = field_->characteristic();
        for (size_t i = 0; i < coords_.size(); ++i)
            r.coords_[i] = mod_ll(coords_[i] + o.coords_[i], p);
    } else {
        r.re_ += o.re_;
        r.im_ += o.im_;
    }
    return r;
}

Fel Fel::operator-(const Fel& o) const { return *this + (-o); }

Fel Fel::operator*(const Fel& o) const {
    check_same_field(*this, o);
    Fel r = zero(field_);
    if (field_->finite()) {
        long long p = field_->characteristic();
        if (field_->kind() == FieldKind::Prime) {
            r.coords_[0] = mulmod(coords_[0], o.coords_[0], p);
        } else {
            PV prod = pv_mul(coords_, o.coords_, p);
            prod = pv_rem(prod, field_->modulus(), p);
            prod.resize(field_->degree(), 0);
            r.coords_ = std::move(prod);
        }
    } else {
        r.re_ = re_ * o.re_ - im_ * o.im_;
        r.im_ = re_ * o.im_ + im_ * o.re_;
        r.re_.canonicalize();
        r.im_.canonicalize();
    }
    return r;
}

Fel Fel::inv() const {
    if (is_zero()) throw MathError("division-by-zero", "inverse of zero");
    Fel r = zero(field_);
    if (field_->finite()) {
        long long p = field_->characteristic();
        if (field_->kind() == FieldKind::Prime) {
            r.coords_[0] = invmod(coords_[0], p);
        } else {
            PV a = coords_;
            pv_trim(a);
            auto [g, u] = pv_half_xgcd(a, field_->modulus(), p);
            if (g.size() != 1)
                throw MathError("division-by-zero",
                                "element not invertible (reducible modulus?)");
            u = pv_rem(u, field_->modulus(), p);
            u.resize(field_->degree(), 0);
            r.coords_ = std::move(u);
        }
    } else {
        mpq_class n = re_ * re_ + im_ * im_;
        r.re_ = re_ / n;
        r.im_ = -im_ / n;
        r.re_.canonicalize();
        r.im_.canonicalize();
    }
    return r;
}

Fel Fel::operator/(const Fel& o) const { return *this * o.inv(); }

bool Fel::operator==(const Fel& o) const {
    if (!field_->same(*o.field_)) return false;
    if (field_->finite()) return coords_ == o.coords_;
    return re_ == o.re_ && im_ == o.im_;
}

Fel Fel::pow(const mpz_class& e) const {
    if (e < 0) return inv().pow(-e);
    Fel r = one(field_);
    Fel base = *this;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return r;
    for (size_t i = bits; i-- > 0;) {
        r = r * r;
        if (mpz_tstbit(e.get_mpz_t(), i)) r = r * base;
    }
    return r;
}

Fel Fel::frobenius() const {
    if (!field_->finite())
        throw MathError("bad-field", "frobenius requires a finite field");
    return pow(mpz_class(static_cast<long>(field_->characteristic())));
}

Fel Fel::conj() const {
    if (field_->finite())
        throw MathError("bad-field", "conj is the gaussian involution");
    Fel r = *this;
    r.im_ = -r.im_;
    return r;
}

bool Fel::lex_less(const Fel& o) const {
    check_same_field(*this, o);
    if (field_->finite()) return coords_ < o.coords_;
    if (re_ != o.re_) return re_ < o.re_;
    return im_ < o.im_;
}

std::string Fel::str() const {
    std::ostringstream os;
    if (field_->finite()) {
        os << "(";
        for (size_t i = 0; i < coords_.size(); ++i) {
            if (i) os << ",";
            os << coords_[i];
        }
        os << ")";
    } else {
        os << re_.get_str();
        if (im_ != 0) os << "+" << im_.get_str() << "i";
    }
    return os.str();
}

Fel operator*(long long k, const Fel& a) {
    return Fel::from_int(a.field(), k) * a;
}

namespace {

std::optional<Fel> sqrt_finite(const Fel& a) {
    const FieldPtr& f = a.field();
    if (a.is_zero()) return Fel::zero(f);
    mpz_class q = f->order();
    mpz_class half = (q - 1) / 2;
    Fel legendre = a.pow(half);
    if (!legendre.is_one()) return std::nullopt;
    // Tonelli-Shanks in the multiplicative group of order q-1.
    mpz_class Q = q - 1;
    unsigned long S = 0;
    while (mpz_even_p(Q.get_mpz_t())) Q /= 2, ++S;
    // Deterministic nonresidue scan in canonical element order.
    Fel z = Fel::zero(f);
    {
        std::vector<long long> odo(f->degree(), 0);
        bool found = false;
        while (!found) {
            size_t i = 0;
            while (i < odo.size()) {
                if (++odo[i] < f->characteristic()) break;
                odo[i] = 0;
                ++i;
            }
            if (i == odo.size())
                throw MathError("bad-field", "no quadratic nonresidue found");
            Fel cand = Fel::from_coords(f, odo);
            if (!cand.is_zero() && !cand.pow(half).is_one()) {
                z = cand;
                found = true;
            }
        }
    }
    Fel c = z.pow(Q);
    Fel t = a.pow(Q);
    Fel r = a.pow((Q + 1) / 2);
    unsigned long M = S;
    while (!t.is_one()) {
        Fel t2 = t;
        unsigned long i = 0;
        while (!t2.is_one()) {
            t2 = t2 * t2;
            ++i;
            if (i == M) throw MathError("bad-field", "sqrt loop failure");
        }
        Fel b = c;
        for (unsigned long j = 0; j + i + 1 < M; ++j) b = b * b;
        M = i;
        c = b * b;
        t = t * c;
        r = r * b;
    }
    Fel neg = -r;
    return neg.lex_less(r) ? neg : r;
}

// Exact square root of a nonnegative rational, if it is a perfect square.
std::optional<mpq_class> sqrt_rational(const mpq_class& x) {
    if (x < 0) return std::nullopt;
    mpz_class num = x.get_num(), den = x.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) ||
        !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return mpq_class(rn, rd);
}

std::optional<Fel> sqrt_gaussian(const Fel& a) {
    const mpq_class& x = a.re();
    const mpq_class& y = a.im();
    if (y == 0) {
        if (auto r = sqrt_rational(x)) return Fel::gauss(*r, 0);
        if (auto r = sqrt_rational(-x)) return Fel::gauss(0, *r);
        return std::nullopt;
    }
    // (c + d i)^2 = x + y i  =>  c^2 + d^2 = |a|, c^2 = (x + |a|)/2, d = y/2c.
    auto n = sqrt_rational(x * x + y * y);
    if (!n) return std::nullopt;
    auto c2 = sqrt_rational((x + *n) / 2);
    if (!c2) return std::nullopt;
    mpq_class c = *c2;
    if (c == 0) return std::nullopt;  // y != 0 forces c != 0
    mpq_class d = y / (2 * c);
    Fel r = Fel::gauss(c, d);
    Fel neg = -r;
    return neg.lex_less(r) ? neg : r;
}

}  // namespace

std::optional<Fel> sqrt_element(const Fel& a) {
    if (a.field()->finite()) return sqrt_finite(a);
    return sqrt_gaussian(a);
}

FieldPtr quadratic_extension_of_prime(long long p) {
    FieldPtr fp = FieldSpec::prime(p);
    for (long long a = 2; a < p; ++a) {
        if (powmod_ll(a, (p - 1) / 2, p) != 1)
            return FieldSpec::extension(p, {mod_ll(-a, p), 0, 1});
    }
    throw MathError("bad-field", "no nonresidue in prime field");
}

std::vector<Fel> all_elements(const FieldPtr& f, unsigned long long bound) {
    if (!f->finite())
        throw MathError("enumeration-bound", "cannot enumerate an infinite field");
    mpz_class q = f->order();
    if (q > mpz_class(static_cast<unsigned long>(bound)))
        throw MathError("enumeration-bound",
                        "field order " + q.get_str() + " exceeds bound " +
                            std::to_string(bound));
    std::vector<Fel> out;
    out.reserve(q.get_ui());
    std::vector<long long> odo(f->degree(), 0);
    while (true) {
        out.push_back(Fel::from_coords(f, odo));
        size_t i = 0;
        while (i < odo.size()) {
            if (++odo[i] < f->characteristic()) break;
            odo[i] = 0;
            ++i;
        }
        if (i == odo.size()) break;
    }
    return out;
}

Fel random_element(const FieldPtr& f, Rng& rng) {
    if (!f->finite())
        throw MathError("bad-field", "random elements require a finite field");
    std::vector<long long> coords(f->degree());
    for (auto& c : coords)
        c = static_cast<long long>(
            rng.below(static_cast<std::uint64_t>(f->characteristic())));
    return Fel::from_coords(f, coords);
}

}  // namespace cliffordprym
