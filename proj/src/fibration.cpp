#include "cliffordprym/fibration.hpp"

#include <algorithm>

#include "cliffordprym/error.hpp"
#include "cliffordprym/matrix.hpp"

namespace cliffordprym {

namespace {

BiForm biform_pow(const BiForm& b, int e, const FieldPtr& f) {
    BiForm acc(0, UniPoly::constant(Fel::one(f)));
    for (int i = 0; i < e; ++i) acc = acc * b;
    return acc;
}

Mat gram_to_mat(const FieldGram& g) {
    const FieldPtr& f = g.proto().field();
    Mat m(f, 3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = g.at(i, j);
    return m;
}

}  // namespace

int gram_rank(const FieldGram& g) { return gram_to_mat(g).rank(); }

ParamCurve::ParamCurve(FieldPtr field, int degree, std::array<BiForm, 3> rho)
    : field_(std::move(field)), d_(degree), rho_(std::move(rho)) {
    if (d_ != 1 && d_ != 2)
        throw MathError("unsupported-degree",
                        "parametrized curves exist for degree 1 and 2 only");
    for (const auto& r : rho_) {
        if (!r.field()->same(*field_))
            throw MathError("ring-mismatch", "parametrization over a different field");
        if (r.degree() != d_)
            throw MathError("bad-degree", "component degree differs from the curve degree");
    }
    // No common root: gcd of the dehomogenized forms is constant and the
    // forms do not all vanish at (1 : 0).
    UniPoly g = UniPoly::zero(field_);
    bool any = false, all_drop = true;
    for (const auto& r : rho_) {
        if (r.degree() == r.in_s().degree()) all_drop = false;
        if (r.is_zero()) continue;
        g = any ? gcd_poly(g, r.in_s()) : r.in_s().monic();
        any = true;
    }
    if (!any || !g.is_constant() || all_drop)
        throw MathError("base-point", "the three components share a root");
    if (d_ == 2) {
        Mat coef(field_, 3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                coef.at(i, j) = rho_[static_cast<std::size_t>(i)].coeff(2 - j);
        if (coef.rank() != 3)
            throw MathError("not-a-conic",
                            "coefficient matrix of the degree-2 map has rank < 3");
    }
}

ProjPoint ParamCurve::eval(const Fel& s, const Fel& t) const {
    std::vector<Fel> coords;
    for (const auto& r : rho_) coords.push_back(r.eval(s, t));
    return ProjPoint::make(s.field(), std::move(coords));
}

BiForm substitute_curve(const TriPoly& f, const ParamCurve& curve) {
    const FieldPtr& k = curve.field();
    if (!f.field()->same(*k))
        throw MathError("ring-mismatch", "form and curve over different fields");
    int fd = f.degree();
    if (fd < 0) return BiForm::zero(k, 0);
    if (!f.homogeneous_of(fd))
        throw MathError("bad-degree", "substitution needs a homogeneous form");
    BiForm acc = BiForm::zero(k, fd * curve.degree());
    for (const auto& [e, coef] : f.terms()) {
        BiForm term = biform_pow(curve.rho(0), e[0], k) *
                      biform_pow(curve.rho(1), e[1], k) *
                      biform_pow(curve.rho(2), e[2], k) * coef;
        acc = acc + term;
    }
    return acc;
}

IntersectionResult intersect_curve_discriminant(const ConicFibration& fib,
                                                const ParamCurve& curve) {
    const FieldPtr& k = curve.field();
    DiscriminantCurve disc = discriminant(fib);
    BiForm sub = substitute_curve(disc.form, curve);
    if (sub.is_zero())
        throw MathError("curve-in-discriminant",
                        "the parametrized curve lies inside the discriminant");

    int total = curve.degree() * disc.degree;
    IntersectionResult out;
    out.total_multiplicity = total;

    int inf_mult = sub.infinity_multiplicity();
    if (inf_mult > 0) {
        ProjPoint p = curve.eval(Fel::one(k), Fel::zero(k));
        out.points.push_back(IntersectionDatum{true, Fel::one(k), 1, p,
                                               fib.gram_at(p), inf_mult});
    }
    int seen = inf_mult;
    for (const RootInfo& r : factor_roots(sub.in_s()).roots) {
        ProjPoint p = curve.eval(r.root, Fel::one(r.field));
        out.points.push_back(IntersectionDatum{false, r.root, r.ext_degree, p,
                                               fib.gram_at(p), r.multiplicity});
        seen += r.multiplicity;
    }
    if (seen != total)
        throw MathError("internal-check", "intersection multiplicities miss Bezout");

    std::stable_sort(out.points.begin(), out.points.end(),
                     [](const IntersectionDatum& a, const IntersectionDatum& b) {
                         if (a.ext_degree != b.ext_degree)
                             return a.ext_degree < b.ext_degree;
                         if (a.at_infinity != b.at_infinity) return a.at_infinity;
                         return a.parameter.lex_less(b.parameter);
                     });

    out.transversal = true;
    for (const auto& d : out.points) {
        if (d.multiplicity != 1 || gram_rank(d.local_gram) != 2)
            out.transversal = false;
    }
    // The discriminant really vanishes at every reported point.
    for (const auto& d : out.points) {
        if (!disc.form.eval(d.point.xyz[0], d.point.xyz[1], d.point.xyz[2]).is_zero())
            throw MathError("internal-check", "intersection point off the discriminant");
    }
    return out;
}

bool simple_degeneration_at(const ConicFibration& fib, const ProjPoint& p) {
    DiscriminantCurve disc = discriminant(fib);
    if (!disc.form.eval(p.xyz[0], p.xyz[1], p.xyz[2]).is_zero())
        throw MathError("not-on-discriminant",
                        "the fiber at this point is a smooth conic");
    return gram_rank(fib.gram_at(p)) == 2;
}

CoverPointPair split_degenerate_conic(const IntersectionDatum& datum) {
    IsotropicSplit sp = split_isotropic_planes(datum.local_gram);

    // The two components are distinct and meet exactly in the radical line.
    Mat both(sp.field, 4, 3);
    for (int j = 0; j < 3; ++j) {
        both.at(0, j) = sp.plane_plus.at(0, j);
        both.at(1, j) = sp.plane_plus.at(1, j);
        both.at(2, j) = sp.plane_minus.at(0, j);
        both.at(3, j) = sp.plane_minus.at(1, j);
    }
    if (both.rank() != 3 || sp.plane_plus == sp.plane_minus)
        throw MathError("internal-check", "component planes are not distinct");

    auto rad = gram_to_mat(datum.local_gram).kernel_basis();
    if (rad.size() != 1)
        throw MathError("internal-check", "radical of a rank-2 gram must be a line");
    for (const Mat* plane : {&sp.plane_plus, &sp.plane_minus}) {
        Mat ext(sp.field, 3, 3);
        for (int j = 0; j < 3; ++j) {
            ext.at(0, j) = plane->at(0, j);
            ext.at(1, j) = plane->at(1, j);
            ext.at(2, j) = sp.emb(rad[0][static_cast<std::size_t>(j)]);
        }
        if (ext.rank() != 2)
            throw MathError("internal-check", "radical line escapes a component");
    }

    return CoverPointPair{sp.field, sp.emb, sp.plane_plus, sp.plane_minus,
                          sp.tag_plus, sp.tag_minus};
}

}  // namespace cliffordprym
