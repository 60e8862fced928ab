#include "cliffordprym/smooth.hpp"

#include <algorithm>

#include "cliffordprym/error.hpp"
#include "cliffordprym/matrix.hpp"
#include "cliffordprym/rng.hpp"

namespace cliffordprym {

namespace {

constexpr unsigned long long kSampleSeed = 0x5eedc10c0ffee5ULL;

// First n elements of a finite field in coordinate odometer order.
std::vector<Fel> first_elements(const FieldPtr& f, int n) {
    std::vector<Fel> out;
    std::vector<long long> coords(static_cast<std::size_t>(f->degree()), 0);
    long long p = f->characteristic();
    mpz_class order = f->order();
    for (int i = 0; i < n; ++i) {
        if (mpz_class(i) >= order) break;
        out.push_back(Fel::from_coords(f, coords));
        for (auto& c : coords) {
            if (++c < p) break;
            c = 0;
        }
    }
    return out;
}

/* Bivariate polynomial in chart coordinates (u, v), stored by v-power with
 * univariate-in-u coefficients.  Only lives inside the smoothness check. */
struct BivPoly {
    FieldPtr field;
    std::vector<UniPoly> c;  // c[j] multiplies v^j, trailing zeros trimmed

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg_v() const { return static_cast<int>(c.size()) - 1; }
    const UniPoly& lead() const { return c.back(); }
    bool is_constant() const {
        return c.size() == 1 && c[0].is_constant();
    }
    int max_deg_u() const {
        int d = 0;
        for (const auto& q : c) d = std::max(d, q.degree());
        return d;
    }
};

BivPoly biv_zero(const FieldPtr& f) { return BivPoly{f, {}}; }

BivPoly biv_sub(const BivPoly& a, const BivPoly& b) {
    BivPoly r{a.field, {}};
    std::size_t n = std::max(a.c.size(), b.c.size());
    for (std::size_t j = 0; j < n; ++j) {
        UniPoly x = j < a.c.size() ? a.c[j] : UniPoly::zero(a.field);
        UniPoly y = j < b.c.size() ? b.c[j] : UniPoly::zero(a.field);
        r.c.push_back(x - y);
    }
    r.trim();
    return r;
}

// a * q * v^shift
BivPoly biv_scale(const BivPoly& a, const UniPoly& q, int shift) {
    if (a.is_zero() || q.is_zero()) return biv_zero(a.field);
    BivPoly r{a.field, {}};
    r.c.assign(static_cast<std::size_t>(shift), UniPoly::zero(a.field));
    for (const auto& x : a.c) r.c.push_back(x * q);
    r.trim();
    return r;
}

// Pseudo-remainder of a by b in the v-variable (b nonzero, deg_v b <= deg_v a
// not required; returns a when deg_v a < deg_v b).
BivPoly biv_pseudo_rem(BivPoly a, const BivPoly& b) {
    while (!a.is_zero() && a.deg_v() >= b.deg_v()) {
        int shift = a.deg_v() - b.deg_v();
        UniPoly la = a.lead(), lb = b.lead();
        a = biv_sub(biv_scale(a, lb, 0), biv_scale(b, la, shift));
    }
    return a;
}

UniPoly biv_content(const BivPoly& a) {
    UniPoly g = UniPoly::zero(a.field);
    for (const auto& q : a.c) {
        if (q.is_zero()) continue;
        g = g.is_zero() ? q.monic() : gcd_poly(g, q);
        if (g.is_constant()) break;
    }
    return g;
}

BivPoly biv_primitive(const BivPoly& a, const UniPoly& content) {
    BivPoly r{a.field, {}};
    for (const auto& q : a.c) r.c.push_back(q.divide_exact(content));
    r.trim();
    return r;
}

/* Full bivariate gcd (content and primitive part handled separately; the
 * primitive part comes from a pseudo-remainder sequence). */
BivPoly biv_gcd(const BivPoly& a, const BivPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    UniPoly ca = biv_content(a), cb = biv_content(b);
    UniPoly cg = gcd_poly(ca, cb);
    BivPoly x = biv_primitive(a, ca), y = biv_primitive(b, cb);
    if (x.deg_v() < y.deg_v()) std::swap(x, y);
    while (!y.is_zero()) {
        BivPoly r = biv_pseudo_rem(x, y);
        x = y;
        if (r.is_zero()) {
            y = biv_zero(a.field);
        } else {
            y = biv_primitive(r, biv_content(r));
        }
    }
    BivPoly g = biv_scale(x, cg, 0);
    // Normalize: the leading v-coefficient becomes monic.
    Fel scale = g.lead().lead().inv();
    for (auto& q : g.c) q = q * scale;
    return g;
}

BivPoly biv_add(const BivPoly& a, const BivPoly& b) {
    return biv_sub(a, biv_scale(b, UniPoly::constant(-Fel::one(a.field)), 0));
}

// Dehomogenize to the chart x_chart = 1; (u, v) are the remaining coordinates
// in their original order.
BivPoly chart_poly(const TriPoly& f, int chart) {
    BivPoly r{f.field(), {}};
    for (const auto& [k, coef] : f.terms()) {
        int eu, ev;
        if (chart == 0) {
            eu = k[1];
            ev = k[2];
        } else if (chart == 1) {
            eu = k[0];
            ev = k[2];
        } else {
            eu = k[0];
            ev = k[1];
        }
        while (r.deg_v() < ev) r.c.push_back(UniPoly::zero(f.field()));
        r.c[static_cast<std::size_t>(ev)] =
            r.c[static_cast<std::size_t>(ev)] + UniPoly::monomial(coef, eu);
    }
    r.trim();
    return r;
}

std::array<Fel, 3> chart_coords(int chart, const Fel& u, const Fel& v) {
    Fel one = Fel::one(u.field());
    if (chart == 0) return {one, u, v};
    if (chart == 1) return {u, one, v};
    return {u, v, one};
}

// Specialize u = u0 (living in ext); the result is a univariate in v over ext.
UniPoly specialize_u(const BivPoly& a, const Fel& u0) {
    const FieldPtr& ext = u0.field();
    Embedding emb = Embedding::find(a.field, ext);
    std::vector<Fel> cs;
    for (const auto& q : a.c)
        cs.push_back(map_coeffs(q, ext, [&emb](const Fel& x) { return emb(x); })
                         .eval(u0));
    return UniPoly(ext, cs);
}

/* Resultant of a and b with respect to v, as a univariate in u.  Computed by
 * evaluating the Sylvester determinant at enough sample points (drawn from an
 * extension when the base field is too small) and interpolating; the matrix
 * shape is fixed by the v-degrees, so evaluation commutes with the
 * determinant. */
UniPoly biv_resultant_v(const BivPoly& a, const BivPoly& b) {
    const FieldPtr& k = a.field;
    if (a.deg_v() == 0 && b.deg_v() == 0) {
        // No v to eliminate; the common u-roots are cut out by the gcd.
        return gcd_poly(a.c[0], b.c[0]);
    }
    if (a.deg_v() == 0) {
        UniPoly r = UniPoly::constant(Fel::one(k));
        for (int i = 0; i < b.deg_v(); ++i) r = r * a.c[0];
        return r;
    }
    if (b.deg_v() == 0) return biv_resultant_v(b, a);

    int m = a.deg_v(), n = b.deg_v();
    int bound = n * a.max_deg_u() + m * b.max_deg_u();
    FieldPtr sample_field = k;
    if (sample_field->order() <= bound + 1) {
        int r = 1;
        mpz_class need(bound + 1);
        mpz_class have = sample_field->order();
        while (have <= need) {
            ++r;
            mpz_class o;
            mpz_class base(static_cast<long>(k->characteristic()));
            mpz_pow_ui(o.get_mpz_t(), base.get_mpz_t(),
                       static_cast<unsigned long>(k->degree() * r));
            have = o;
        }
        sample_field = field_of_degree(k->characteristic(), k->degree() * r);
    }
    Embedding emb = Embedding::find(k, sample_field);
    std::vector<Fel> xs = first_elements(sample_field, bound + 1);
    if (static_cast<int>(xs.size()) != bound + 1)
        throw MathError("internal-check", "not enough interpolation samples");

    auto entry = [&](int i, int j) -> UniPoly {
        // Sylvester layout: n rows of a-coefficients, then m rows of b's.
        if (i < n) {
            int e = m - (j - i);
            if (j < i || e < 0 || e > m) return UniPoly::zero(k);
            return a.c[static_cast<std::size_t>(e)];
        }
        int i2 = i - n;
        int e = n - (j - i2);
        if (j < i2 || e < 0 || e > n) return UniPoly::zero(k);
        return b.c[static_cast<std::size_t>(e)];
    };

    int nn = m + n;
    std::vector<Fel> ys;
    for (const Fel& x : xs) {
        Mat mat(sample_field, nn, nn);
        for (int i = 0; i < nn; ++i)
            for (int j = 0; j < nn; ++j)
                mat.at(i, j) =
                    map_coeffs(entry(i, j), sample_field,
                               [&emb](const Fel& c) { return emb(c); })
                        .eval(x);
        ys.push_back(mat.det());
    }

    // Lagrange interpolation over the sample field.
    UniPoly acc = UniPoly::zero(sample_field);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (ys[i].is_zero()) continue;
        UniPoly num = UniPoly::constant(Fel::one(sample_field));
        Fel den = Fel::one(sample_field);
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            num = num * UniPoly(sample_field, {-xs[j], Fel::one(sample_field)});
            den = den * (xs[i] - xs[j]);
        }
        acc = acc + num * (ys[i] / den);
    }

    // The resultant lies over the base field; pull the coefficients back.
    if (sample_field->same(*k)) return acc;
    std::vector<Fel> base;
    for (int d = 0; d <= acc.degree(); ++d) {
        Fel c = acc.coeff(d);
        bool found = false;
        if (k->degree() == 1) {
            for (std::size_t t = 1; t < c.coords().size(); ++t)
                if (c.coords()[t] != 0)
                    throw MathError("internal-check", "resultant left the base field");
            base.push_back(Fel::from_int(k, c.coords()[0]));
            found = true;
        } else {
            // Solve emb(x) = c coordinate-wise over the prime field.
            FieldPtr fp = FieldSpec::prime(k->characteristic());
            int dk = k->degree(), de = sample_field->degree();
            Mat sys(fp, de, dk + 1);
            std::vector<long long> gen_coords(static_cast<std::size_t>(dk), 0);
            gen_coords[1] = 1;
            Fel kgen_img = emb(Fel::from_coords(k, gen_coords));
            Fel gpow = Fel::one(sample_field);
            for (int col = 0; col < dk; ++col) {
                for (int row = 0; row < de; ++row)
                    sys.at(row, col) = Fel::from_int(
                        fp, gpow.coords()[static_cast<std::size_t>(row)]);
                gpow = gpow * kgen_img;
            }
            for (int row = 0; row < de; ++row)
                sys.at(row, dk) = Fel::from_int(fp, -c.coords()[static_cast<std::size_t>(row)]);
            auto ker = sys.kernel_basis();
            std::vector<long long> coords(static_cast<std::size_t>(dk), 0);
            for (const auto& vec : ker) {
                if (!vec[static_cast<std::size_t>(dk)].is_zero()) {
                    Fel inv = vec[static_cast<std::size_t>(dk)].inv();
                    for (int t = 0; t < dk; ++t)
                        coords[static_cast<std::size_t>(t)] =
                            (vec[static_cast<std::size_t>(t)] * inv).coords()[0];
                    found = true;
                    break;
                }
            }
            if (!found)
                throw MathError("internal-check", "resultant left the base field");
            Fel x = Fel::from_coords(k, coords);
            if (!(emb(x) == c))
                throw MathError("internal-check", "resultant pullback mismatch");
            base.push_back(x);
        }
    }
    return UniPoly(k, base);
}

struct ChartHit {
    ProjPoint point;
};

// A point on the vanishing locus of a nonconstant bivariate polynomial.
std::optional<std::array<Fel, 2>> point_on_locus(const BivPoly& g) {
    const FieldPtr& k = g.field;
    if (g.deg_v() == 0) {
        FactoredRoots fr = factor_roots(g.c[0]);
        if (fr.roots.empty()) return std::nullopt;
        const RootInfo& r = fr.roots.front();
        return std::array<Fel, 2>{r.root, Fel::zero(r.field)};
    }
    // Find u0 keeping the v-leading coefficient nonzero, searching the base
    // field first and then small extensions.
    for (int extdeg = 1; extdeg <= 3; ++extdeg) {
        FieldPtr e = extdeg == 1
                         ? k
                         : field_of_degree(k->characteristic(), k->degree() * extdeg);
        Embedding emb = Embedding::find(k, e);
        UniPoly lead = map_coeffs(g.lead(), e, [&emb](const Fel& x) { return emb(x); });
        for (const Fel& u0 : first_elements(e, 64)) {
            if (lead.eval(u0).is_zero()) continue;
            UniPoly spec = specialize_u(g, u0);
            FactoredRoots fr = factor_roots(spec);
            if (fr.roots.empty()) continue;
            const RootInfo& r = fr.roots.front();
            Embedding up = Embedding::find(e, r.field);
            return std::array<Fel, 2>{up(u0), r.root};
        }
    }
    return std::nullopt;
}

bool vanishes_all(const std::vector<TriPoly>& polys, const std::array<Fel, 3>& pt) {
    for (const auto& f : polys)
        if (!f.eval(pt[0], pt[1], pt[2]).is_zero()) return false;
    return true;
}

/* Exact singular-point search in one affine chart.  Returns the first
 * singular point in canonical order, if the chart holds one. */
std::optional<ChartHit> chart_singular_point(const std::vector<TriPoly>& sys,
                                             int chart) {
    const FieldPtr& k = sys.front().field();
    std::vector<BivPoly> s;
    for (const auto& f : sys) {
        BivPoly b = chart_poly(f, chart);
        if (b.is_zero()) continue;
        bool dup = false;
        for (const auto& prev : s) {
            if (prev.c.size() != b.c.size()) continue;
            bool eq = true;
            for (std::size_t j = 0; j < b.c.size(); ++j)
                if (prev.c[j] != b.c[j]) { eq = false; break; }
            if (eq) { dup = true; break; }
        }
        if (!dup) s.push_back(b);
    }

    if (s.empty()) {
        // Everything vanishes identically on this chart.
        Fel z = Fel::zero(k);
        auto pt = chart_coords(chart, z, z);
        return ChartHit{ProjPoint::make(k, {pt[0], pt[1], pt[2]})};
    }
    for (const auto& b : s)
        if (b.is_constant()) return std::nullopt;  // a unit rules the chart out

    BivPoly g = s.front();
    for (std::size_t i = 1; i < s.size(); ++i) g = biv_gcd(g, s[i]);
    if (!(g.deg_v() == 0 && g.c[0].is_constant())) {
        // Positive-dimensional common zero locus: any of its points works.
        auto uv = point_on_locus(g);
        if (!uv) throw MathError("internal-check", "locus point search failed");
        auto pt = chart_coords(chart, (*uv)[0], (*uv)[1]);
        if (!vanishes_all(sys, pt))
            throw MathError("internal-check", "locus point fails the system");
        return ChartHit{ProjPoint::make((*uv)[0].field(), {pt[0], pt[1], pt[2]})};
    }

    // Finite zero set: u-candidates come from a nonzero pair resultant.
    UniPoly res = UniPoly::zero(k);
    for (std::size_t i = 0; i < s.size() && res.is_zero(); ++i)
        for (std::size_t j = i + 1; j < s.size() && res.is_zero(); ++j)
            res = biv_resultant_v(s[i], s[j]);
    if (res.is_zero() && s.size() >= 2) {
        for (const Fel& cmix : first_elements(k, 16)) {
            if (cmix.is_zero()) continue;
            for (std::size_t j = 1; j < s.size() && res.is_zero(); ++j) {
                BivPoly combo = biv_add(
                    s[j], biv_scale(s[(j + 1) % s.size()], UniPoly::constant(cmix), 0));
                if (combo.is_zero()) continue;
                res = biv_resultant_v(s[0], combo);
            }
            if (!res.is_zero()) break;
        }
    }
    if (res.is_zero())
        throw MathError("degenerate-input",
                        "chart elimination found no usable resultant");
    if (res.is_constant()) return std::nullopt;

    for (const RootInfo& u : factor_roots(res).roots) {
        UniPoly w = UniPoly::zero(u.field);
        bool any = false;
        for (const auto& b : s) {
            UniPoly spec = specialize_u(b, u.root);
            if (spec.is_zero()) continue;
            w = any ? gcd_poly(w, spec) : spec.monic();
            any = true;
        }
        if (!any)
            throw MathError("internal-check", "system vanished along a line");
        if (w.is_constant()) continue;
        for (const RootInfo& v : factor_roots(w).roots) {
            Embedding up = Embedding::find(u.field, v.field);
            auto pt = chart_coords(chart, up(u.root), v.root);
            if (vanishes_all(sys, pt))
                return ChartHit{ProjPoint::make(v.field, {pt[0], pt[1], pt[2]})};
        }
    }
    return std::nullopt;
}

std::optional<ProjPoint> sampled_singular_point(const std::vector<TriPoly>& sys) {
    const FieldPtr& k = sys.front().field();
    if (k->order() <= 2048) {
        // Full rational sweep: charts in order, odometer order inside.
        long long n = k->order().get_si();
        std::vector<Fel> els = first_elements(k, static_cast<int>(n));
        for (const Fel& a : els)
            for (const Fel& b : els) {
                std::array<Fel, 3> pt{Fel::one(k), a, b};
                if (vanishes_all(sys, pt))
                    return ProjPoint::make(k, {pt[0], pt[1], pt[2]});
            }
        for (const Fel& c : els) {
            std::array<Fel, 3> pt{Fel::zero(k), Fel::one(k), c};
            if (vanishes_all(sys, pt))
                return ProjPoint::make(k, {pt[0], pt[1], pt[2]});
        }
        std::array<Fel, 3> pt{Fel::zero(k), Fel::zero(k), Fel::one(k)};
        if (vanishes_all(sys, pt)) return ProjPoint::make(k, {pt[0], pt[1], pt[2]});
    }
    Rng rng(kSampleSeed);
    for (int extdeg = 1; extdeg <= 2; ++extdeg) {
        FieldPtr e = extdeg == 1
                         ? k
                         : field_of_degree(k->characteristic(), k->degree() * extdeg);
        for (int trial = 0; trial < 4000; ++trial) {
            std::array<Fel, 3> pt{random_element(e, rng), random_element(e, rng),
                                  random_element(e, rng)};
            if (pt[0].is_zero() && pt[1].is_zero() && pt[2].is_zero()) continue;
            if (vanishes_all(sys, pt))
                return ProjPoint::make(e, {pt[0], pt[1], pt[2]});
        }
    }
    return std::nullopt;
}

}  // namespace

SmoothnessReport is_smooth_curve(const TriPoly& form) {
    const FieldPtr& k = form.field();
    if (!k->finite())
        throw MathError("bad-field", "smoothness check needs a finite field");

    std::vector<TriPoly> sys{form, form.derivative(0), form.derivative(1),
                             form.derivative(2)};

    SmoothnessReport rep;
    if (form.degree() <= 6) {
        for (int chart = 0; chart < 3; ++chart) {
            auto hit = chart_singular_point(sys, chart);
            if (hit) {
                rep.smooth = false;
                rep.witness = hit->point;
                return rep;
            }
        }
        rep.smooth = true;
        return rep;
    }

    rep.probabilistic = true;
    auto w = sampled_singular_point(sys);
    if (w) {
        rep.smooth = false;
        rep.witness = *w;
    } else {
        rep.smooth = true;
    }
    return rep;
}

}  // namespace cliffordprym
