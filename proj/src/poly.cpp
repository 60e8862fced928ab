#include "cliffordprym/poly.hpp"

#include <sstream>

#include "cliffordprym/matrix.hpp"

namespace cliffordprym {

UniPoly::UniPoly(FieldPtr field, std::vector<Fel> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    trim();
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::constant(const Fel& c) {
    return UniPoly(c.field(), {c});
}

UniPoly UniPoly::from_ints(const FieldPtr& f, std::vector<long long> cs) {
    std::vector<Fel> v;
    v.reserve(cs.size());
    for (long long c : cs) v.push_back(Fel::from_int(f, c));
    return UniPoly(f, std::move(v));
}

UniPoly UniPoly::monomial(const Fel& c, int k) {
    std::vector<Fel> v(static_cast<size_t>(k) + 1, Fel::zero(c.field()));
    v.back() = c;
    return UniPoly(c.field(), std::move(v));
}

UniPoly UniPoly::variable(const FieldPtr& f) {
    return UniPoly(f, {Fel::zero(f), Fel::one(f)});
}

Fel UniPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Fel::zero(field_);
    return c_[k];
}

Fel UniPoly::lead() const {
    if (c_.empty()) throw MathError("zero-polynomial", "leading coefficient");
    return c_.back();
}

Fel UniPoly::eval(const Fel& x) const {
    Fel acc = Fel::zero(x.field());
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
}

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<Fel> v(std::max(c_.size(), o.c_.size()), Fel::zero(field_));
    for (size_t i = 0; i < v.size(); ++i) {
        Fel a = i < c_.size() ? c_[i] : Fel::zero(field_);
        Fel b = i < o.c_.size() ? o.c_[i] : Fel::zero(field_);
        v[i] = a + b;
    }
    return UniPoly(field_, std::move(v));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (c_.empty() || o.c_.empty()) return UniPoly(field_);
    std::vector<Fel> v(c_.size() + o.c_.size() - 1, Fel::zero(field_));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            v[i + j] = v[i + j] + c_[i] * o.c_[j];
    }
    return UniPoly(field_, std::move(v));
}

UniPoly UniPoly::operator*(const Fel& c) const {
    UniPoly r = *this;
    for (auto& x : r.c_) x = x * c;
    r.trim();
    return r;
}

bool UniPoly::operator==(const UniPoly& o) const { return c_ == o.c_; }

UniPoly UniPoly::monic() const {
    if (c_.empty()) return *this;
    return *this * lead().inv();
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly(field_);
    std::vector<Fel> v;
    v.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        v.push_back(static_cast<long long>(i) * c_[i]);
    return UniPoly(field_, std::move(v));
}

UniPoly UniPoly::shifted(int k) const {
    if (c_.empty()) return *this;
    std::vector<Fel> v(c_.size() + k, Fel::zero(field_));
    for (size_t i = 0; i < c_.size(); ++i) v[i + k] = c_[i];
    return UniPoly(field_, std::move(v));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
    if (d.is_zero()) throw MathError("zero-polynomial", "division by zero poly");
    UniPoly r = *this;
    UniPoly q(field_);
    q.c_.assign(c_.size(), Fel::zero(field_));
    Fel lead_inv = d.lead().inv();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int shift = r.degree() - d.degree();
        Fel c = r.lead() * lead_inv;
        q.c_[shift] = q.c_[shift] + c;
        r = r - d.shifted(shift) * c;
    }
    q.trim();
    return {q, r};
}

UniPoly UniPoly::divide_exact(const UniPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero())
        throw MathError("bad-division", "inexact polynomial division");
    return q;
}

bool UniPoly::divides(const UniPoly& other) const {
    if (is_zero()) return other.is_zero();
    return other.divmod(*this).second.is_zero();
}

std::string UniPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << " + ";
        os << c_[i].str() << "*t^" << i;
    }
    return os.str();
}

UniPoly gcd_poly(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = x.rem(y);
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

UniPoly pow_mod(const UniPoly& base, const mpz_class& e, const UniPoly& mod) {
    UniPoly r = UniPoly::constant(Fel::one(base.field()));
    r = r.rem(mod);
    if (e == 0) return r;
    UniPoly b = base.rem(mod);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = (r * r).rem(mod);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b).rem(mod);
    }
    return r;
}

UniPoly map_coeffs(const UniPoly& a, const FieldPtr& target,
                   const std::function<Fel(const Fel&)>& fn) {
    std::vector<Fel> v;
    v.reserve(a.coeffs().size());
    for (const Fel& c : a.coeffs()) v.push_back(fn(c));
    return UniPoly(target, std::move(v));
}

Fel resultant(const UniPoly& f, const UniPoly& g) {
    const FieldPtr& k = f.field();
    if (f.is_zero() && g.is_zero())
        throw MathError("zero-polynomial", "resultant of two zero polynomials");
    if (f.is_zero() || g.is_zero()) return Fel::zero(k);
    int m = f.degree(), n = g.degree();
    if (m == 0 && n == 0) return Fel::one(k);
    if (m == 0) return f.lead().pow(n);
    if (n == 0) return g.lead().pow(m);
    Mat s(k, m + n, m + n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s.at(i, i + j) = f.coeff(m - j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s.at(n + i, i + j) = g.coeff(n - j);
    return s.det();
}

}  // namespace cliffordprym
