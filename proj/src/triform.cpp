#include "cliffordprym/triform.hpp"

#include <sstream>

#include "cliffordprym/error.hpp"

namespace cliffordprym {

namespace {

void require_same_field(const FieldPtr& a, const FieldPtr& b, const char* what) {
    if (!a->same(*b))
        throw MathError("ring-mismatch", std::string(what) + " over different fields");
}

}  // namespace

TriPoly TriPoly::monomial(const FieldPtr& f, const Fel& c, int i, int j, int k) {
    if (i < 0 || j < 0 || k < 0)
        throw MathError("bad-exponent", "negative exponent in monomial");
    TriPoly p(f);
    p.add_term({i, j, k}, c);
    return p;
}

TriPoly TriPoly::from_terms(const FieldPtr& f,
                            const std::vector<std::array<long long, 4>>& terms) {
    TriPoly p(f);
    for (const auto& t : terms) {
        if (t[1] < 0 || t[2] < 0 || t[3] < 0)
            throw MathError("bad-exponent", "negative exponent in term");
        p.add_term({static_cast<int>(t[1]), static_cast<int>(t[2]),
                    static_cast<int>(t[3])},
                   Fel::from_int(f, t[0]));
    }
    return p;
}

TriPoly TriPoly::variable(const FieldPtr& f, int idx) {
    if (idx < 0 || idx > 2) throw MathError("bad-exponent", "variable index");
    int e[3] = {0, 0, 0};
    e[idx] = 1;
    return monomial(f, Fel::one(f), e[0], e[1], e[2]);
}

void TriPoly::add_term(const Key& k, const Fel& c) {
    if (!c.field()->same(*field_))
        throw MathError("ring-mismatch", "coefficient from a different field");
    auto it = t_.find(k);
    if (it == t_.end()) {
        if (!c.is_zero()) t_.emplace(k, c);
        return;
    }
    Fel s = it->second + c;
    if (s.is_zero())
        t_.erase(it);
    else
        it->second = s;
}

int TriPoly::degree() const {
    int d = -1;
    for (const auto& [k, c] : t_) d = std::max(d, k[0] + k[1] + k[2]);
    return d;
}

bool TriPoly::homogeneous_of(int d) const {
    for (const auto& [k, c] : t_)
        if (k[0] + k[1] + k[2] != d) return false;
    return true;
}

TriPoly TriPoly::operator+(const TriPoly& o) const {
    require_same_field(field_, o.field_, "form sum");
    TriPoly r = *this;
    for (const auto& [k, c] : o.t_) r.add_term(k, c);
    return r;
}

TriPoly TriPoly::operator-() const {
    TriPoly r(field_);
    for (const auto& [k, c] : t_) r.t_.emplace(k, -c);
    return r;
}

TriPoly TriPoly::operator-(const TriPoly& o) const { return *this + (-o); }

TriPoly TriPoly::operator*(const TriPoly& o) const {
    require_same_field(field_, o.field_, "form product");
    TriPoly r(field_);
    for (const auto& [ka, ca] : t_)
        for (const auto& [kb, cb] : o.t_)
            r.add_term({ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]}, ca * cb);
    return r;
}

TriPoly TriPoly::operator*(const Fel& c) const {
    TriPoly r(field_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : t_) r.t_.emplace(k, v * c);
    return r;
}

bool TriPoly::operator==(const TriPoly& o) const {
    if (!field_->same(*o.field_) || t_.size() != o.t_.size()) return false;
    auto it = o.t_.begin();
    for (const auto& [k, c] : t_) {
        if (k != it->first || !(c == it->second)) return false;
        ++it;
    }
    return true;
}

TriPoly TriPoly::derivative(int var) const {
    if (var < 0 || var > 2) throw MathError("bad-exponent", "variable index");
    TriPoly r(field_);
    for (const auto& [k, c] : t_) {
        int e = k[static_cast<std::size_t>(var)];
        if (e == 0) continue;
        Key kk = k;
        kk[static_cast<std::size_t>(var)] = e - 1;
        r.add_term(kk, c * Fel::from_int(field_, e));
    }
    return r;
}

namespace {

Fel fel_pow(const Fel& x, int e) {
    Fel r = Fel::one(x.field());
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
}

}  // namespace

Fel TriPoly::eval(const Fel& x0, const Fel& x1, const Fel& x2) const {
    const FieldPtr& f = x0.field();
    require_same_field(x0.field(), x1.field(), "evaluation point");
    require_same_field(x0.field(), x2.field(), "evaluation point");
    Fel acc = Fel::zero(f);
    Embedding emb = Embedding::find(field_, f);
    for (const auto& [k, c] : t_)
        acc = acc + emb(c) * fel_pow(x0, k[0]) * fel_pow(x1, k[1]) * fel_pow(x2, k[2]);
    return acc;
}

TriPoly TriPoly::mapped(const Embedding& emb) const {
    TriPoly r(emb.to());
    for (const auto& [k, c] : t_) r.t_.emplace(k, emb(c));
    return r;
}

std::string TriPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << c.str() << "*x0^" << k[0] << "*x1^" << k[1] << "*x2^" << k[2];
    }
    return os.str();
}

BiForm::BiForm(int degree, UniPoly in_s) : degree_(degree), in_s_(std::move(in_s)) {
    if (degree_ < 0) throw MathError("bad-degree", "negative form degree");
    if (in_s_.degree() > degree_)
        throw MathError("bad-degree", "s-degree exceeds the form degree");
}

BiForm BiForm::zero(const FieldPtr& f, int degree) {
    return BiForm(degree, UniPoly::zero(f));
}

BiForm BiForm::from_terms(const FieldPtr& f, int degree,
                          const std::vector<std::array<long long, 3>>& terms) {
    std::vector<Fel> coeffs(static_cast<std::size_t>(degree) + 1, Fel::zero(f));
    for (const auto& t : terms) {
        if (t[1] < 0 || t[2] < 0 || t[1] + t[2] != degree)
            throw MathError("bad-degree", "term exponents do not match the degree");
        auto i = static_cast<std::size_t>(t[1]);
        coeffs[i] = coeffs[i] + Fel::from_int(f, t[0]);
    }
    return BiForm(degree, UniPoly(f, coeffs));
}

int BiForm::infinity_multiplicity() const {
    if (in_s_.is_zero()) return degree_ + 1;  // sentinel: vanishes identically
    return degree_ - in_s_.degree();
}

BiForm BiForm::operator+(const BiForm& o) const {
    require_same_field(field(), o.field(), "binary form sum");
    if (degree_ != o.degree_)
        throw MathError("bad-degree", "sum of forms of different degrees");
    return BiForm(degree_, in_s_ + o.in_s_);
}

BiForm BiForm::operator*(const BiForm& o) const {
    require_same_field(field(), o.field(), "binary form product");
    return BiForm(degree_ + o.degree_, in_s_ * o.in_s_);
}

BiForm BiForm::operator*(const Fel& c) const {
    return BiForm(degree_, in_s_ * c);
}

bool BiForm::operator==(const BiForm& o) const {
    return degree_ == o.degree_ && in_s_ == o.in_s_;
}

Fel BiForm::eval(const Fel& s, const Fel& t) const {
    require_same_field(s.field(), t.field(), "evaluation point");
    const FieldPtr& f = s.field();
    Embedding emb = Embedding::find(field(), f);
    Fel acc = Fel::zero(f);
    for (int i = 0; i <= degree_; ++i) {
        Fel c = in_s_.coeff(i);
        if (c.is_zero()) continue;
        acc = acc + emb(c) * fel_pow(s, i) * fel_pow(t, degree_ - i);
    }
    return acc;
}

BiForm BiForm::mapped(const Embedding& emb) const {
    return BiForm(degree_, map_coeffs(in_s_, emb.to(),
                                      [&emb](const Fel& x) { return emb(x); }));
}

std::string BiForm::str() const {
    if (in_s_.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i <= degree_; ++i) {
        Fel c = in_s_.coeff(i);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << c.str() << "*s^" << i << "*t^" << (degree_ - i);
    }
    return os.str();
}

ProjPoint ProjPoint::make(const FieldPtr& f, std::vector<Fel> coords) {
    if (coords.size() != 3)
        throw MathError("bad-point", "projective point needs three coordinates");
    std::size_t lead = 3;
    for (std::size_t i = 0; i < 3; ++i) {
        if (!coords[i].field()->same(*f))
            throw MathError("ring-mismatch", "point coordinate field");
        if (lead == 3 && !coords[i].is_zero()) lead = i;
    }
    if (lead == 3) throw MathError("bad-point", "all coordinates vanish");
    Fel inv = coords[lead].inv();
    for (auto& c : coords) c = c * inv;
    return ProjPoint{f, std::move(coords)};
}

bool ProjPoint::operator==(const ProjPoint& o) const {
    if (!field->same(*o.field)) return false;
    for (std::size_t i = 0; i < 3; ++i)
        if (!(xyz[i] == o.xyz[i])) return false;
    return true;
}

std::string ProjPoint::str() const {
    return "(" + xyz[0].str() + " : " + xyz[1].str() + " : " + xyz[2].str() + ")";
}

ConicFibration::ConicFibration(FieldPtr field, std::array<int, 3> twist_degrees,
                               int line_degree,
                               std::array<std::array<TriPoly, 3>, 3> entries)
    : field_(std::move(field)), a_(twist_degrees), l_(line_degree), e_(std::move(entries)) {
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const TriPoly& p = entry(i, j);
            if (!p.field()->same(*field_))
                throw MathError("ring-mismatch", "entry field differs from the base");
            if (p != entry(j, i))
                throw MathError("asymmetric-gram", "entry matrix is not symmetric");
            int want = entry_degree(i, j);
            if (!p.is_zero() && (want < 0 || !p.homogeneous_of(want)))
                throw MathError("bad-degree",
                                "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") is not homogeneous of degree " +
                                    std::to_string(want));
        }
    }
}

FieldGram ConicFibration::gram_at(const ProjPoint& p) const {
    std::array<std::array<Fel, 3>, 3> g{{{Fel::zero(p.field), Fel::zero(p.field), Fel::zero(p.field)},
                                         {Fel::zero(p.field), Fel::zero(p.field), Fel::zero(p.field)},
                                         {Fel::zero(p.field), Fel::zero(p.field), Fel::zero(p.field)}}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            g[i][j] = entry(static_cast<int>(i), static_cast<int>(j))
                          .eval(p.xyz[0], p.xyz[1], p.xyz[2]);
    return FieldGram(g);
}

DiscriminantCurve discriminant(const ConicFibration& fib) {
    const auto& e = [&fib](int i, int j) -> const TriPoly& { return fib.entry(i, j); };
    TriPoly det = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) -
                  e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
                  e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
    int deg = 2 * (fib.twist_degrees()[0] + fib.twist_degrees()[1] +
                   fib.twist_degrees()[2]) +
              3 * fib.line_degree();
    return DiscriminantCurve{det, deg};
}

}  // namespace cliffordprym
