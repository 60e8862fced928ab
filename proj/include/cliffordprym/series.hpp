#pragma once

#include <vector>

#include "cliffordprym/field.hpp"

namespace cliffordprym {

/* Truncated power series k[[t]] / (t^prec) over a finite or gaussian field.
 * Fixed precision per value; mixing precisions is an error.  Used as the
 * coefficient ring for quadratic forms on a formal disc. */
class TruncSeries {
public:
    TruncSeries(FieldPtr field, int prec, std::vector<Fel> coeffs)
        : field_(std::move(field)), prec_(prec), c_(std::move(coeffs)) {
        if (prec_ < 1) throw MathError("precision", "precision must be >= 1");
        c_.resize(prec_, Fel::zero(field_));
        for (auto& x : c_) check_ring(x);
    }

    static TruncSeries zero(const FieldPtr& f, int prec) {
        return TruncSeries(f, prec, {});
    }
    static TruncSeries one(const FieldPtr& f, int prec) {
        return TruncSeries(f, prec, {Fel::one(f)});
    }
    static TruncSeries constant(const Fel& c, int prec) {
        return TruncSeries(c.field(), prec, {c});
    }
    // The parameter t itself.
    static TruncSeries parameter(const FieldPtr& f, int prec) {
        if (prec < 2) throw MathError("precision", "parameter needs precision >= 2");
        std::vector<Fel> c = {Fel::zero(f), Fel::one(f)};
        return TruncSeries(f, prec, std::move(c));
    }
    static TruncSeries from_ints(const FieldPtr& f, int prec,
                                 const std::vector<long long>& v) {
        std::vector<Fel> c;
        c.reserve(v.size());
        for (long long x : v) c.push_back(Fel::from_int(f, x));
        return TruncSeries(f, prec, std::move(c));
    }

    const FieldPtr& field() const { return field_; }
    int precision() const { return prec_; }
    const Fel& coeff(int k) const { return c_.at(static_cast<std::size_t>(k)); }
    const Fel& constant_term() const { return c_[0]; }

    bool is_zero() const {
        for (auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_unit() const { return !c_[0].is_zero(); }

    // Order of vanishing at t = 0; prec for the zero value.
    int valuation() const {
        for (int k = 0; k < prec_; ++k)
            if (!c_[static_cast<std::size_t>(k)].is_zero()) return k;
        return prec_;
    }

    TruncSeries operator-() const {
        std::vector<Fel> r;
        r.reserve(c_.size());
        for (auto& x : c_) r.push_back(-x);
        return TruncSeries(field_, prec_, std::move(r));
    }
    TruncSeries operator+(const TruncSeries& o) const {
        match(o);
        std::vector<Fel> r;
        r.reserve(c_.size());
        for (int k = 0; k < prec_; ++k)
            r.push_back(c_[static_cast<std::size_t>(k)] +
                        o.c_[static_cast<std::size_t>(k)]);
        return TruncSeries(field_, prec_, std::move(r));
    }
    TruncSeries operator-(const TruncSeries& o) const { return *this + (-o); }
    TruncSeries operator*(const TruncSeries& o) const {
        match(o);
        std::vector<Fel> r(static_cast<std::size_t>(prec_), Fel::zero(field_));
        for (int a = 0; a < prec_; ++a) {
            if (c_[static_cast<std::size_t>(a)].is_zero()) continue;
            for (int b = 0; a + b < prec_; ++b)
                r[static_cast<std::size_t>(a + b)] =
                    r[static_cast<std::size_t>(a + b)] +
                    c_[static_cast<std::size_t>(a)] * o.c_[static_cast<std::size_t>(b)];
        }
        return TruncSeries(field_, prec_, std::move(r));
    }
    TruncSeries operator*(const Fel& s) const {
        std::vector<Fel> r;
        r.reserve(c_.size());
        for (auto& x : c_) r.push_back(x * s);
        return TruncSeries(field_, prec_, std::move(r));
    }

    // Multiplicative inverse; requires a unit constant term.
    TruncSeries inv() const {
        if (!is_unit()) throw MathError("not-a-unit", "series has zero constant term");
        std::vector<Fel> r(static_cast<std::size_t>(prec_), Fel::zero(field_));
        Fel u = c_[0].inv();
        r[0] = u;
        for (int k = 1; k < prec_; ++k) {
            Fel acc = Fel::zero(field_);
            for (int j = 1; j <= k; ++j)
                acc = acc + c_[static_cast<std::size_t>(j)] *
                                r[static_cast<std::size_t>(k - j)];
            r[static_cast<std::size_t>(k)] = -(u * acc);
        }
        return TruncSeries(field_, prec_, std::move(r));
    }

    bool operator==(const TruncSeries& o) const {
        match(o);
        return c_ == o.c_;
    }
    bool operator!=(const TruncSeries& o) const { return !(*this == o); }

    std::string str() const {
        std::string s = "[";
        for (int k = 0; k < prec_; ++k) {
            if (k) s += ", ";
            s += c_[static_cast<std::size_t>(k)].str();
        }
        return s + "]";
    }

private:
    void check_ring(const Fel& x) const {
        if (!x.field()->same(*field_))
            throw MathError("ring-mismatch", "series coefficient from wrong field");
    }
    void match(const TruncSeries& o) const {
        if (!field_->same(*o.field_) || prec_ != o.prec_)
            throw MathError("ring-mismatch", "series rings differ");
    }

    FieldPtr field_;
    int prec_;
    std::vector<Fel> c_;
};

// Uniform coefficient-ring hooks shared by field elements and series.
inline Fel ring_zero(const Fel& like) { return Fel::zero(like.field()); }
inline Fel ring_one(const Fel& like) { return Fel::one(like.field()); }
inline Fel ring_from_int(const Fel& like, long long n) {
    return Fel::from_int(like.field(), n);
}
inline TruncSeries ring_zero(const TruncSeries& like) {
    return TruncSeries::zero(like.field(), like.precision());
}
inline TruncSeries ring_one(const TruncSeries& like) {
    return TruncSeries::one(like.field(), like.precision());
}
inline TruncSeries ring_from_int(const TruncSeries& like, long long n) {
    return TruncSeries::constant(Fel::from_int(like.field(), n), like.precision());
}

}  // namespace cliffordprym
