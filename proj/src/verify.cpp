#include "cliffordprym/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cliffordprym/cli.hpp"
#include "cliffordprym/error.hpp"
#include "cliffordprym/io.hpp"
#include "cliffordprym/prymcomb.hpp"
#include "cliffordprym/sampling.hpp"
#include "cliffordprym/spectral.hpp"

namespace cliffordprym {

namespace {

/* Each suite accumulates into a Check; the first failing condition freezes
 * the detail message.  Suites re-derive expectations independently of the
 * code under test wherever possible (hand-computed tables, brute-force
 * enumeration, alternative formulas). */
struct Check {
    bool ok = true;
    std::string detail;
    long long count = 0;

    void require(bool cond, const std::string& msg) {
        ++count;
        if (!cond && ok) {
            ok = false;
            detail = msg;
        }
    }
};

VerifySuite finish(const std::string& name, Check& c, const std::string& summary) {
    return {name, c.ok, c.ok ? summary : c.detail};
}

FieldPtr F(long long p) { return FieldSpec::prime(p); }

UniPoly random_poly(const FieldPtr& f, int max_deg, Rng& rng) {
    std::vector<Fel> cs;
    const int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_deg))) + 1;
    for (int i = 0; i <= d; ++i) cs.push_back(random_element(f, rng));
    return UniPoly(f, std::move(cs));
}

// ----- exactfield ---------------------------------------------------------

VerifySuite suite_factor_roots() {
    Check c;
    Rng rng(101);
    for (long long p : {13, 5}) {
        const FieldPtr f = F(p);
        for (int trial = 0; trial < 10; ++trial) {
            UniPoly poly = random_poly(f, 6, rng);
            while (poly.is_zero()) poly = random_poly(f, 6, rng);
            const FactoredRoots fr = factor_roots(poly);
            long long root_count = 0;
            for (const RootInfo& info : fr.roots) {
                const Embedding emb = Embedding::find(f, info.field);
                const UniPoly lifted =
                    map_coeffs(poly, info.field, [&](const Fel& x) { return emb(x); });
                c.require(lifted.eval(info.root).is_zero(),
                          "a reported root does not evaluate to zero");
                c.require(info.ext_degree == info.field->degree(),
                          "root extension degree disagrees with its field");
                root_count += info.multiplicity;
            }
            // Degree bookkeeping: roots grouped by extension degree must
            // reassemble the degree of the squarefree-by-multiplicity split.
            long long weighted = 0;
            for (const RootInfo& info : fr.roots) weighted += info.multiplicity;
            c.require(weighted == poly.degree(),
                      "root multiplicities do not sum to the degree");
            // Reconstruction per extension: the monic product of (t - r) over
            // the roots inside one field divides the lifted polynomial there.
            std::set<int> degrees;
            for (const RootInfo& info : fr.roots) degrees.insert(info.ext_degree);
            for (int k : degrees) {
                FieldPtr ext;
                for (const RootInfo& info : fr.roots)
                    if (info.ext_degree == k) {
                        ext = info.field;
                        break;
                    }
                const Embedding emb = Embedding::find(f, ext);
                const UniPoly lifted =
                    map_coeffs(poly, ext, [&](const Fel& x) { return emb(x); });
                UniPoly prod = UniPoly::from_ints(ext, {1});
                for (const RootInfo& info : fr.roots) {
                    if (info.ext_degree != k) continue;
                    const UniPoly lin =
                        UniPoly(ext, {-info.root, Fel::one(ext)});
                    for (int m = 0; m < info.multiplicity; ++m) prod = prod * lin;
                }
                c.require(prod.divides(lifted),
                          "product of root factors does not divide the input");
            }
        }
    }
    return finish("exactfield/factor-roots", c, "20 random polynomials, 2 fields");
}

VerifySuite suite_sqrt() {
    Check c;
    Rng rng(102);
    long long produced = 0;
    for (const FieldPtr& f : {F(13), field_of_degree(13, 2), field_of_degree(3, 2)}) {
        for (int trial = 0; trial < 40; ++trial) {
            const Fel a = random_element(f, rng);
            if (const auto r = sqrt_element(a)) {
                c.require((*r) * (*r) == a, "sqrt result does not square back");
                ++produced;
            }
            const Fel b = random_element(f, rng);
            const auto rs = sqrt_element(b * b);
            c.require(rs.has_value(), "square of a field element lost its root");
            if (rs) c.require((*rs) * (*rs) == b * b, "sqrt of square is wrong");
        }
    }
    c.require(produced > 0, "no nontrivial square root was ever produced");
    return finish("exactfield/sqrt", c, "120 samples across 3 fields");
}

VerifySuite suite_resultant_gcd() {
    Check c;
    Rng rng(103);
    const FieldPtr f = F(13);
    for (int trial = 0; trial < 40; ++trial) {
        const UniPoly a = random_poly(f, 5, rng);
        const UniPoly b = random_poly(f, 5, rng);
        if (a.is_zero() && b.is_zero()) continue;
        const bool res_zero = resultant(a, b).is_zero();
        const bool common = gcd_poly(a, b).degree() > 0;
        c.require(res_zero == common,
                  "resultant vanishing disagrees with the gcd degree");
    }
    // Forced common factors.
    for (int trial = 0; trial < 20; ++trial) {
        const UniPoly g = random_poly(f, 3, rng);
        if (g.degree() < 1) continue;
        const UniPoly a = g * random_poly(f, 3, rng);
        const UniPoly b = g * random_poly(f, 3, rng);
        if (a.is_zero() || b.is_zero()) continue;
        c.require(resultant(a, b).is_zero(),
                  "resultant nonzero despite a shared factor");
        c.require(gcd_poly(a, b).degree() > 0, "gcd missed a shared factor");
    }
    return finish("exactfield/resultant-gcd", c, "60 polynomial pairs");
}

// ----- clifford -----------------------------------------------------------

FieldGram random_gram(const FieldPtr& f, Rng& rng) {
    std::array<std::array<Fel, 3>, 3> m{
        {{Fel::zero(f), Fel::zero(f), Fel::zero(f)},
         {Fel::zero(f), Fel::zero(f), Fel::zero(f)},
         {Fel::zero(f), Fel::zero(f), Fel::zero(f)}}};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            const Fel v = random_element(f, rng);
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
            m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
        }
    return FieldGram(m);
}

EvenCliffordElement random_even(const FieldPtr& f, Rng& rng) {
    return {random_element(f, rng), random_element(f, rng), random_element(f, rng),
            random_element(f, rng)};
}

VerifySuite suite_associativity() {
    Check c;
    Rng rng(104);
    const FieldPtr f = F(13);
    for (int trial = 0; trial < 200; ++trial) {
        const FieldGram g = random_gram(f, rng);
        const EvenCliffordElement u = random_even(f, rng);
        const EvenCliffordElement v = random_even(f, rng);
        const EvenCliffordElement w = random_even(f, rng);
        const EvenCliffordElement left =
            even_clifford_multiply(g, even_clifford_multiply(g, u, v), w);
        const EvenCliffordElement right =
            even_clifford_multiply(g, u, even_clifford_multiply(g, v, w));
        c.require(left == right, "product is not associative");
    }
    return finish("clifford/associativity", c, "200 random triples");
}

VerifySuite suite_degenerate_relations() {
    Check c;
    for (const FieldPtr& f : {F(13), FieldSpec::gaussian()}) {
        const SymbolElement one = SymbolElement::unit(f);
        const SymbolElement x = SymbolElement::from_ints(f, 0, 1, 0, 0);
        const SymbolElement y = SymbolElement::from_ints(f, 0, 0, 1, 0);
        const SymbolElement z = SymbolElement::from_ints(f, 0, 0, 0, 1);
        const auto mul = normalized_multiply;
        c.require(mul(x, x) == one, "x^2 != 1");
        c.require(mul(y, y).is_zero(), "y^2 != 0");
        c.require(mul(z, z).is_zero(), "z^2 != 0");
        c.require(mul(x, y) == -z, "xy != -z");
        c.require(mul(x, z) == -y, "xz != -y");
        c.require(mul(y, x) == z, "yx != z");
        c.require(mul(z, x) == y, "zx != y");
        c.require(mul(y, z).is_zero(), "yz != 0");
        c.require(mul(z, y).is_zero(), "zy != 0");
    }
    return finish("clifford/degenerate-relations", c, "9 relations over 2 fields");
}

VerifySuite suite_quiver_presentation() {
    Check c;
    const FieldPtr f = F(13);
    const QuiverImages q = quiver_presentation(diagonal_gram(f, 1, 1, 0));
    const SymbolElement one = SymbolElement::unit(f);
    const auto mul = normalized_multiply;
    c.require(mul(q.e_plus, q.e_plus) == q.e_plus, "e+ not idempotent");
    c.require(mul(q.e_minus, q.e_minus) == q.e_minus, "e- not idempotent");
    c.require(mul(q.e_plus, q.e_minus).is_zero(), "e+ e- != 0");
    c.require(q.e_plus + q.e_minus == one, "e+ + e- != 1");
    c.require(mul(mul(q.e_minus, q.alpha), q.e_plus) == q.alpha,
              "alpha is not a (+ -> -) arrow");
    c.require(mul(mul(q.e_plus, q.beta), q.e_minus) == q.beta,
              "beta is not a (- -> +) arrow");
    c.require(mul(q.alpha, q.beta).is_zero(), "alpha beta != 0");
    c.require(mul(q.beta, q.alpha).is_zero(), "beta alpha != 0");
    return finish("clifford/quiver-presentation", c, "8 identities");
}

VerifySuite suite_rank2_classification() {
    Check c;
    const FieldPtr f3 = F(3);
    std::set<std::string> seen;
    try {
        seen.insert(rep_type_name(
            classify_quiver(QuiverRep2{2, 0, Mat(f3, 0, 2), Mat(f3, 2, 0)})));
        seen.insert(rep_type_name(
            classify_quiver(QuiverRep2{0, 2, Mat(f3, 2, 0), Mat(f3, 0, 2)})));
    } catch (const MathError&) {
        c.require(false, "full-split shapes failed to classify");
    }
    int valid = 0;
    for (long long a = 0; a < 3; ++a)
        for (long long b = 0; b < 3; ++b) {
            Mat ma(f3, 1, 1), mb(f3, 1, 1);
            ma.at(0, 0) = Fel::from_int(f3, a);
            mb.at(0, 0) = Fel::from_int(f3, b);
            const QuiverRep2 q{1, 1, ma, mb};
            if (a * b % 3 == 0) {
                seen.insert(rep_type_name(classify_quiver(q)));
                ++valid;
            } else {
                bool threw = false;
                try {
                    classify_quiver(q);
                } catch (const MathError&) {
                    threw = true;
                }
                c.require(threw, "nonzero composite was accepted");
            }
        }
    c.require(valid == 5, "balanced relation-satisfying pair count is not 5");
    c.require(seen == std::set<std::string>({"T1", "T2", "T3", "T4", "T5"}),
              "classification did not produce exactly the five classes");
    return finish("clifford/rank2-classification", c, "exhaustive over F_3");
}

Fel gram_value(const FieldGram& g, const Embedding& emb, const std::vector<Fel>& v) {
    Fel acc = Fel::zero(v[0].field());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            acc = acc + emb(g.at(i, j)) * v[static_cast<std::size_t>(i)] *
                            v[static_cast<std::size_t>(j)];
    return acc;
}

Mat random_invertible3(const FieldPtr& f, Rng& rng) {
    for (;;) {
        Mat m(f, 3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m.at(i, j) = random_element(f, rng);
        if (m.rank() == 3) return m;
    }
}

FieldGram congruent_rank2_gram(const FieldPtr& f, Rng& rng) {
    const Mat s = random_invertible3(f, rng);
    const FieldGram base = diagonal_gram(f, 1, 1, 0);
    std::array<std::array<Fel, 3>, 3> m{
        {{Fel::zero(f), Fel::zero(f), Fel::zero(f)},
         {Fel::zero(f), Fel::zero(f), Fel::zero(f)},
         {Fel::zero(f), Fel::zero(f), Fel::zero(f)}}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Fel acc = Fel::zero(f);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    acc = acc + s.at(a, i) * base.at(a, b) * s.at(b, j);
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc;
        }
    return FieldGram(m);
}

VerifySuite suite_kernel_geometry() {
    Check c;
    Rng rng(105);
    const FieldPtr f = F(13);
    for (int trial = 0; trial < 100; ++trial) {
        const FieldGram g = congruent_rank2_gram(f, rng);
        const Rank2Normalization norm = normalize_rank2(g);
        for (RepTypeTag tag : {RepTypeTag::T1, RepTypeTag::T2}) {
            const KernelLine kd =
                rep_kernel_line(g, standard_rep(norm.field, tag));
            c.require(kd.k_line.rows() == 1 && kd.k_line.rank() == 1,
                      "bivector kernel is not a line");
            c.require(kd.k_plane.rows() == 2 && kd.k_plane.rank() == 2,
                      "isotropic subspace is not a plane");
            // The quadratic form vanishes on every point of the plane: it is
            // enough to scan the projective line v0 + c v1 and v1 itself.
            const long long q =
                kd.field->degree() == 1
                    ? kd.field->characteristic()
                    : kd.field->characteristic() * kd.field->characteristic();
            for (long long ci = 0; ci <= q; ++ci) {
                std::vector<Fel> v(3, Fel::zero(kd.field));
                if (ci == q) {
                    for (int j = 0; j < 3; ++j) v[static_cast<std::size_t>(j)] =
                        kd.k_plane.at(1, j);
                } else {
                    Fel cc = Fel::from_int(kd.field, ci % kd.field->characteristic());
                    if (kd.field->degree() == 2)
                        cc = Fel::from_coords(
                            kd.field, {ci % kd.field->characteristic(),
                                       ci / kd.field->characteristic()});
                    for (int j = 0; j < 3; ++j)
                        v[static_cast<std::size_t>(j)] =
                            kd.k_plane.at(0, j) + cc * kd.k_plane.at(1, j);
                }
                c.require(gram_value(g, kd.emb, v).is_zero(),
                          "a point of the kernel plane misses the conic");
            }
        }
    }
    return finish("clifford/kernel-geometry", c, "100 random corank-one grams");
}

// ----- fibration ----------------------------------------------------------

VerifySuite suite_discriminant_degree() {
    Check c;
    Rng rng(106);
    const FieldPtr f = F(13);
    const std::vector<std::pair<std::array<int, 3>, int>> shapes = {
        {{0, 0, 1}, 1}, {{0, 0, 0}, 1}, {{0, 1, 1}, 0}, {{1, 1, 1}, 0},
        {{0, 0, 2}, 1}};
    int done = 0, guard = 0;
    while (done < 50 && guard < 500) {
        ++guard;
        const auto& [a, l] = shapes[static_cast<std::size_t>(done) % shapes.size()];
        std::array<std::array<TriPoly, 3>, 3> e{
            {{TriPoly::zero(f), TriPoly::zero(f), TriPoly::zero(f)},
             {TriPoly::zero(f), TriPoly::zero(f), TriPoly::zero(f)},
             {TriPoly::zero(f), TriPoly::zero(f), TriPoly::zero(f)}}};
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                TriPoly p = random_form(
                    f,
                    a[static_cast<std::size_t>(i)] + a[static_cast<std::size_t>(j)] + l,
                    rng);
                e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = p;
                e[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = p;
            }
        const ConicFibration fib(f, a, l, e);
        const DiscriminantCurve dc = discriminant(fib);
        if (dc.form.is_zero()) continue;  // resample degenerate draws
        const int want = 2 * (a[0] + a[1] + a[2]) + 3 * l;
        c.require(dc.degree == want, "declared degree breaks the shape formula");
        c.require(dc.form.homogeneous_of(dc.degree),
                  "determinant is not homogeneous of the declared degree");
        ++done;
    }
    c.require(done == 50, "could not draw 50 nonzero determinants");
    return finish("fibration/discriminant-degree", c, "50 random fibrations");
}

const ConicFibration& shared_demo_fib() {
    static ConicFibration fib = demo_fibration(F(13), 0);
    return fib;
}

const ContextPtr& shared_ctx_d1() {
    static ContextPtr ctx = build_context(
        shared_demo_fib(), random_transversal_curve(shared_demo_fib(), 1, 0), 0);
    return ctx;
}

const ContextPtr& shared_ctx_d2() {
    static ContextPtr ctx = build_context(
        shared_demo_fib(), random_transversal_curve(shared_demo_fib(), 2, 0), 0);
    return ctx;
}

bool point_in_plane(const Mat& plane, const std::vector<Fel>& v) {
    Mat ext(plane.field(), 3, 3);
    for (int j = 0; j < 3; ++j) {
        ext.at(0, j) = plane.at(0, j);
        ext.at(1, j) = plane.at(1, j);
        ext.at(2, j) = v[static_cast<std::size_t>(j)];
    }
    return ext.rank() == 2;
}

VerifySuite suite_isotropic_splitting() {
    Check c;
    for (const ContextPtr& ctx : {shared_ctx_d1(), shared_ctx_d2()}) {
        for (std::size_t k = 0; k < ctx->points.size(); ++k) {
            const IntersectionDatum& datum = ctx->points[k];
            const CoverPointPair& pair = ctx->cover_pairs[k];
            for (const Mat* plane : {&pair.line_plus, &pair.line_minus}) {
                std::vector<Fel> v0, v1, vs;
                for (int j = 0; j < 3; ++j) {
                    v0.push_back(plane->at(0, j));
                    v1.push_back(plane->at(1, j));
                    vs.push_back(plane->at(0, j) + plane->at(1, j));
                }
                c.require(gram_value(datum.local_gram, pair.emb, v0).is_zero(),
                          "first basis vector is not isotropic");
                c.require(gram_value(datum.local_gram, pair.emb, v1).is_zero(),
                          "second basis vector is not isotropic");
                c.require(gram_value(datum.local_gram, pair.emb, vs).is_zero(),
                          "plane is not totally isotropic");
            }
            c.require(pair.line_plus != pair.line_minus,
                      "the two components coincide");
            // Shared line = radical of the local gram, lifted to the pair
            // field.
            Mat gm(datum.point.field, 3, 3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) gm.at(i, j) = datum.local_gram.at(i, j);
            const auto rad = gm.kernel_basis();
            c.require(rad.size() == 1, "local gram radical is not a line");
            if (rad.size() == 1) {
                std::vector<Fel> r;
                for (const Fel& x : rad[0]) r.push_back(pair.emb(x));
                c.require(point_in_plane(pair.line_plus, r),
                          "radical line is missing from the plus plane");
                c.require(point_in_plane(pair.line_minus, r),
                          "radical line is missing from the minus plane");
            }
        }
    }
    return finish("fibration/isotropic-splitting", c, "15 degeneration points");
}

ParamCurve tangent_line(const ConicFibration& fib) {
    const DiscriminantCurve disc = discriminant(fib);
    const FieldPtr& f = fib.field();
    const long long p = f->characteristic();
    for (long long a = 0; a < p; ++a)
        for (long long b = 0; b < p; ++b) {
            const Fel x = Fel::from_int(f, a), y = Fel::from_int(f, b),
                      z = Fel::one(f);
            if (!disc.form.eval(x, y, z).is_zero()) continue;
            Mat grad(f, 1, 3);
            grad.at(0, 0) = disc.form.derivative(0).eval(x, y, z);
            grad.at(0, 1) = disc.form.derivative(1).eval(x, y, z);
            grad.at(0, 2) = disc.form.derivative(2).eval(x, y, z);
            if (grad.is_zero()) continue;
            const auto kernel = grad.kernel_basis();
            if (kernel.size() != 2) continue;
            std::array<BiForm, 3> rho = {BiForm::zero(f, 1), BiForm::zero(f, 1),
                                         BiForm::zero(f, 1)};
            for (int cc = 0; cc < 3; ++cc) {
                const std::size_t ci = static_cast<std::size_t>(cc);
                rho[ci] = BiForm(1, UniPoly(f, {kernel[1][ci], kernel[0][ci]}));
            }
            return ParamCurve(f, 1, rho);
        }
    throw MathError("generation-failed", "no tangent line at a rational point");
}

VerifySuite suite_bezout() {
    Check c;
    const ConicFibration& fib = shared_demo_fib();
    const DiscriminantCurve disc = discriminant(fib);
    for (int d = 1; d <= 2; ++d)
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const ParamCurve curve = random_transversal_curve(fib, d, seed);
            const IntersectionResult res = intersect_curve_discriminant(fib, curve);
            long long total = 0;
            for (const auto& pt : res.points) total += pt.multiplicity;
            c.require(total == static_cast<long long>(d) * disc.degree,
                      "multiplicity total misses d * deg");
            c.require(res.total_multiplicity == total,
                      "reported total disagrees with the sum");
        }
    // A tangent line: non-transversal, yet the weighted total still matches.
    const ParamCurve tangent = tangent_line(fib);
    const IntersectionResult res = intersect_curve_discriminant(fib, tangent);
    c.require(!res.transversal, "tangency was not detected");
    long long total = 0;
    bool has_multiple = false;
    for (const auto& pt : res.points) {
        total += pt.multiplicity;
        has_multiple = has_multiple || pt.multiplicity > 1;
    }
    c.require(has_multiple, "tangent contact of order >= 2 is missing");
    c.require(total == disc.degree, "tangent line weighted total misses deg");
    return finish("fibration/bezout", c, "6 transversal draws + 1 tangent");
}

Mat frobenius_subspace(const Mat& plane) {
    std::vector<std::vector<Fel>> rows;
    for (int i = 0; i < plane.rows(); ++i) {
        std::vector<Fel> r;
        for (int j = 0; j < plane.cols(); ++j)
            r.push_back(plane.at(i, j).frobenius());
        rows.push_back(std::move(r));
    }
    return canonical_subspace(plane.field(), rows);
}

VerifySuite suite_frobenius_closure() {
    Check c;
    const FieldPtr f = F(7);
    const TriPoly x0 = TriPoly::variable(f, 0), x1 = TriPoly::variable(f, 1),
                  x2 = TriPoly::variable(f, 2);
    const TriPoly z = TriPoly::zero(f);
    const ConicFibration fib(
        f, {0, 0, 0}, 1,
        {{{{x0, z, z}}, {{z, x1, z}}, {{z, z, x0 + x2}}}});
    const ParamCurve conic(f, 2,
                           {BiForm::from_terms(f, 2, {{1, 2, 0}}),
                            BiForm::from_terms(f, 2, {{1, 1, 1}}),
                            BiForm::from_terms(f, 2, {{1, 0, 2}})});
    const IntersectionResult res = intersect_curve_discriminant(fib, conic);
    std::vector<const IntersectionDatum*> quad;
    for (const auto& d : res.points)
        if (d.ext_degree == 2) quad.push_back(&d);
    c.require(quad.size() == 2, "expected one conjugate quadratic pair");
    if (quad.size() == 2) {
        c.require(quad[0]->parameter.frobenius() == quad[1]->parameter,
                  "quadratic parameters are not frobenius conjugate");
        const CoverPointPair pa = split_degenerate_conic(*quad[0]);
        const CoverPointPair pb = split_degenerate_conic(*quad[1]);
        c.require(pa.field->same(*pb.field), "conjugate pairs split differently");
        const Mat ca = frobenius_subspace(pa.line_plus);
        const Mat cb = frobenius_subspace(pa.line_minus);
        const bool direct = (ca == pb.line_plus && cb == pb.line_minus);
        const bool swapped = (ca == pb.line_minus && cb == pb.line_plus);
        c.require(direct || swapped,
                  "frobenius does not map the component pair coherently");
    }
    return finish("fibration/frobenius-closure", c, "conjugate pair over F_49");
}

// ----- prymcomb -----------------------------------------------------------

int xor_weight(const std::vector<int>& a, const std::vector<int>& b) {
    int w = 0;
    for (std::size_t i = 0; i < a.size(); ++i) w += a[i] ^ b[i];
    return w;
}

VerifySuite suite_group_axioms() {
    Check c;
    const std::vector<EvenSubsetElement> g5 = even_subsets(5);
    c.require(g5.size() == 16, "group order over 5 points is not 2^4");
    c.require(even_subsets(8).size() == 128, "group order over 8 points is not 2^7");
    bool has_identity = false;
    for (const auto& a : g5) {
        c.require(a.weight() % 2 == 0, "odd-weight element in the group");
        has_identity = has_identity ||
                       a.mu == std::vector<int>(5, 0);
        for (const auto& b : g5) {
            std::vector<int> x(5);
            for (int i = 0; i < 5; ++i)
                x[static_cast<std::size_t>(i)] =
                    a.mu[static_cast<std::size_t>(i)] ^
                    b.mu[static_cast<std::size_t>(i)];
            int w = 0;
            for (int v : x) w += v;
            c.require(w % 2 == 0, "group is not closed under XOR");
        }
    }
    c.require(has_identity, "identity element is missing");
    return finish("prymcomb/group-axioms", c, "exhaustive for 5 points");
}

VerifySuite suite_torsor() {
    Check c;
    const ContextPtr& c1 = shared_ctx_d1();
    const std::vector<ModuleFiberData> fiber = fiber_elements(c1, c1->base_e);
    c.require(fiber.size() == 16, "degree fiber size is not 2^(n-1)");
    for (const auto& m1 : fiber)
        for (const auto& m2 : fiber) {
            // The only candidate connecting m1 to m2 flips exactly where the
            // lambda vectors differ; freeness on lambda gives uniqueness.
            EvenSubsetElement g;
            g.mu.resize(m1.lambda.size());
            for (std::size_t i = 0; i < m1.lambda.size(); ++i)
                g.mu[i] = m1.lambda[i] ^ m2.lambda[i];
            c.require(xor_weight(m1.lambda, m2.lambda) % 2 == 0,
                      "fiber elements differ by an odd flip");
            const ModuleFiberData moved = group_act(g, m1);
            c.require(moved.lambda == m2.lambda && moved.twist == m2.twist,
                      "the connecting element does not transport the state");
        }
    const ContextPtr& c2 = shared_ctx_d2();
    const std::vector<ModuleFiberData> fiber2 = fiber_elements(c2, c2->base_e);
    c.require(fiber2.size() == 512, "degree fiber size over 10 points is off");
    Rng rng(107);
    for (int trial = 0; trial < 500; ++trial) {
        const auto& m1 = fiber2[rng.below(fiber2.size())];
        const auto& m2 = fiber2[rng.below(fiber2.size())];
        EvenSubsetElement g;
        g.mu.resize(m1.lambda.size());
        for (std::size_t i = 0; i < m1.lambda.size(); ++i)
            g.mu[i] = m1.lambda[i] ^ m2.lambda[i];
        const ModuleFiberData moved = group_act(g, m1);
        c.require(moved.lambda == m2.lambda && moved.twist == m2.twist,
                  "sampled transport failed over 10 points");
    }
    return finish("prymcomb/torsor", c, "exhaustive n=5, 500 sampled pairs n=10");
}

VerifySuite suite_equivariance() {
    Check c;
    const ContextPtr& ctx = shared_ctx_d1();
    const std::vector<ModuleFiberData> fiber = fiber_elements(ctx, ctx->base_e);
    const std::vector<EvenSubsetElement> group = even_subsets(ctx->n);
    for (const auto& g : group)
        for (const auto& m : fiber) {
            const LiftedDivisor before = lift_to_cover(m);
            const LiftedDivisor after = lift_to_cover(group_act(g, m));
            for (int i = 0; i < ctx->n; ++i) {
                const std::size_t k = static_cast<std::size_t>(i);
                c.require(after.choices[k] == (before.choices[k] ^ g.mu[k]),
                          "acting does not conjugate the lift at the support");
            }
        }
    return finish("prymcomb/equivariance", c, "16 x 16 exhaustive");
}

VerifySuite suite_parity() {
    Check c;
    const ParityReport rep = parity_rule_check(shared_ctx_d1(), 0, 3);
    c.require(rep.pass, "half index is not the parity of e");
    c.require(rep.rows.size() == 4, "sweep row count is wrong");
    for (const auto& row : rep.rows) {
        c.require(row.uniform, "a fiber mixes the two halves");
        c.require(row.fiber_size == 16, "fiber size drifted inside the sweep");
    }
    // Pairwise form: equal chern characters force half index 0, and in
    // general the half index is the parity of the degree gap.
    const ContextPtr& ctx = shared_ctx_d1();
    Rng rng(108);
    for (int trial = 0; trial < 100; ++trial) {
        const int e1 = static_cast<int>(rng.below(4));
        const int e2 = static_cast<int>(rng.below(4));
        const auto f1 = fiber_elements(ctx, e1);
        const auto f2 = fiber_elements(ctx, e2);
        const auto& m1 = f1[rng.below(f1.size())];
        const auto& m2 = f2[rng.below(f2.size())];
        const int h = half_index(lift_to_cover(m1), lift_to_cover(m2));
        if (chern_char(m1) == chern_char(m2))
            c.require(h == 0, "equal characters with distinct halves");
        c.require(h == (((e1 - e2) % 2) + 2) % 2,
                  "half index is not the degree gap parity");
    }
    return finish("prymcomb/parity", c, "sweep e in [0,3] + 100 sampled pairs");
}

VerifySuite suite_chern() {
    Check c;
    const ContextPtr& ctx = shared_ctx_d1();
    const std::vector<ModuleFiberData> fiber = fiber_elements(ctx, 1);
    const std::vector<EvenSubsetElement> group = even_subsets(ctx->n);
    for (const auto& m : fiber) {
        const ChernCharacter ch = chern_char(m);
        c.require(ch.ch0 == 0 && ch.ch1 == 2 * ctx->curve.degree(),
                  "rank or support class is off");
        c.require(ch.ch2 == 1, "degree term disagrees with the fiber");
        for (const auto& g : group)
            c.require(chern_char(group_act(g, m)) == ch,
                      "group action moved the chern character");
        for (int i = 0; i < ctx->n; ++i)
            c.require(chern_char(half_twist(m, i)).ch2 == ch.ch2 + 1,
                      "half twist does not raise the degree term by 1");
        c.require(chern_char(twist_by(m, 3)).ch2 == ch.ch2 + 6,
                  "full twist does not raise the degree term by 2k");
    }
    return finish("prymcomb/chern", c, "16-element fiber, all moves");
}

VerifySuite suite_local_model() {
    Check c;
    const FieldPtr f = F(13);
    const LocalModelReport rep = local_model(f);
    c.require(rep.relations_hold, "generator relations fail");
    c.require((rep.grading == std::array<int, 2>{0, 1}),
              "grading weights are not (0, 1)");
    c.require(rep.character_product_negative,
              "component characters do not multiply to -1");
    c.require(rep.kernels_differ, "the two frame kernels agree");
    const UniPoly s = UniPoly::variable(f);
    const UniPoly one = UniPoly::from_ints(f, {1});
    const UniPoly neg = UniPoly::from_ints(f, {-1});
    const UniPoly zero = UniPoly::zero(f);
    const auto entry = [&](int gen, bool scaled, int i, int j) -> const UniPoly& {
        const auto& fr = scaled ? rep.frame_scaled : rep.frame_plain;
        return fr[static_cast<std::size_t>(gen)][static_cast<std::size_t>(i)]
                 [static_cast<std::size_t>(j)];
    };
    c.require(entry(1, false, 0, 0) == neg && entry(1, false, 1, 1) == one,
              "grading involution matrix is off");
    c.require(entry(2, false, 0, 1) == s && entry(2, false, 1, 0) == one,
              "first odd generator in the plain frame is off");
    c.require(entry(2, true, 0, 1) == one && entry(2, true, 1, 0) == s,
              "first odd generator in the scaled frame is off");
    c.require(entry(3, false, 0, 1) == s && entry(3, false, 1, 0) == neg,
              "second odd generator in the plain frame is off");
    c.require(entry(3, true, 0, 1) == one && entry(3, true, 1, 0) == neg * s,
              "second odd generator in the scaled frame is off");
    c.require(entry(2, false, 0, 0) == zero && entry(2, false, 1, 1) == zero,
              "odd generators must be off-diagonal");
    c.require(rep.kernel_plain[0] == rep.kernel_plain[1],
              "plain-frame kernel is not the sum direction");
    c.require(rep.kernel_scaled[0] + rep.kernel_scaled[1] == Fel::zero(f),
              "scaled-frame kernel is not the difference direction");
    return finish("prymcomb/local-model", c, "frozen matrices and kernels");
}

// ----- spectral -----------------------------------------------------------

std::vector<LineBundleOnCover> three_shapes(const SpectralCover& cover,
                                            const UniPoly& s, Rng& rng) {
    std::vector<LineBundleOnCover> out;
    out.push_back(LineBundleOnCover::trivial(cover));
    const FactoredRoots fr = factor_roots(s);
    // A monic branch divisor: the linear factor of the first rational root
    // when one exists, otherwise the whole branch polynomial.
    UniPoly s1 = s.monic();
    for (const RootInfo& info : fr.roots)
        if (info.ext_degree == 1) {
            s1 = UniPoly(cover.field(), {-info.root, Fel::one(cover.field())});
            break;
        }
    out.push_back(LineBundleOnCover::ramification_ideal(cover, s1));
    UniPoly g = random_poly(cover.field(), 3, rng);
    while (g.is_zero()) g = random_poly(cover.field(), 3, rng);
    out.push_back(LineBundleOnCover::pullback_twist(cover, g));
    return out;
}

VerifySuite suite_char_identity() {
    Check c;
    Rng rng(109);
    const FieldPtr f = F(13);
    for (int trial = 0; trial < 20; ++trial) {
        const int deg = static_cast<int>(rng.below(6)) + 1;
        Rng sub = rng.fork();
        const UniPoly s = random_squarefree(f, deg, sub);
        const SpectralCover cover(f, s);
        for (const LineBundleOnCover& lb : three_shapes(cover, s, rng)) {
            const HiggsPair h = pushforward(cover, lb);
            c.require(char_identity(h, cover),
                      "trace/determinant/square identity fails");
        }
    }
    return finish("spectral/char-identity", c, "20 covers x 3 bundle shapes");
}

VerifySuite suite_ramification_kernels() {
    Check c;
    Rng rng(110);
    const FieldPtr f = F(13);
    for (int trial = 0; trial < 20; ++trial) {
        const int deg = static_cast<int>(rng.below(6)) + 1;
        Rng sub = rng.fork();
        const UniPoly s = random_squarefree(f, deg, sub);
        const SpectralCover cover(f, s);
        const FactoredRoots fr = factor_roots(s);
        for (const LineBundleOnCover& lb : three_shapes(cover, s, rng)) {
            const HiggsPair h = pushforward(cover, lb);
            for (const RootInfo& info : fr.roots) {
                const Mat k = ramification_kernel(h, cover, info.root);
                c.require(k.rows() == 1 && k.cols() == 2 && k.rank() == 1,
                          "branch kernel is not one-dimensional");
                // Independent re-check: the evaluated matrix kills it.
                const Embedding emb = Embedding::find(f, info.field);
                Fel acc0 = Fel::zero(info.field), acc1 = Fel::zero(info.field);
                for (int j = 0; j < 2; ++j) {
                    const UniPoly m0 = map_coeffs(
                        h.phi[0][static_cast<std::size_t>(j)], info.field,
                        [&](const Fel& x) { return emb(x); });
                    const UniPoly m1 = map_coeffs(
                        h.phi[1][static_cast<std::size_t>(j)], info.field,
                        [&](const Fel& x) { return emb(x); });
                    acc0 = acc0 + m0.eval(info.root) * k.at(0, j);
                    acc1 = acc1 + m1.eval(info.root) * k.at(0, j);
                }
                c.require(acc0.is_zero() && acc1.is_zero(),
                          "reported kernel vector is not killed at the branch");
            }
        }
    }
    return finish("spectral/ramification-kernels", c, "all roots, all shapes");
}

VerifySuite suite_pullback_invariance() {
    Check c;
    Rng rng(111);
    const FieldPtr f = F(13);
    const UniPoly s = random_squarefree(f, 4, rng);
    const SpectralCover cover(f, s);
    const LineBundleOnCover triv = LineBundleOnCover::trivial(cover);
    for (int trial = 0; trial < 10; ++trial) {
        UniPoly g = random_poly(f, 4, rng);
        while (g.is_zero()) g = random_poly(f, 4, rng);
        const LineBundleOnCover tw = LineBundleOnCover::pullback_twist(cover, g);
        const HiggsPair before = pushforward(cover, triv);
        const HiggsPair after = pushforward(cover, triv.product(tw));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                c.require((before.phi[static_cast<std::size_t>(i)]
                                     [static_cast<std::size_t>(j)] ==
                           after.phi[static_cast<std::size_t>(i)]
                                    [static_cast<std::size_t>(j)]),
                          "pullback twist changed the endomorphism matrix");
    }
    return finish("spectral/pullback-invariance", c, "10 random twists");
}

VerifySuite suite_ramification_square() {
    Check c;
    Rng rng(112);
    const FieldPtr f = F(13);
    for (int trial = 0; trial < 5; ++trial) {
        Rng sub = rng.fork();
        const UniPoly s = random_squarefree(f, 4, sub);
        const SpectralCover cover(f, s);
        const FactoredRoots fr = factor_roots(s);
        UniPoly s1 = s.monic();
        for (const RootInfo& info : fr.roots)
            if (info.ext_degree == 1) {
                s1 = UniPoly(f, {-info.root, Fel::one(f)});
                break;
            }
        const LineBundleOnCover ram =
            LineBundleOnCover::ramification_ideal(cover, s1);
        const LineBundleOnCover sq = ram.product(ram);
        c.require(sq.kind() == BundleKind::pullback_twist,
                  "squared branch ideal did not normalize to a pullback");
        c.require((sq.twist() == s1), "squared ideal twist is not the divisor");
        const HiggsPair a = pushforward(cover, sq);
        const HiggsPair b =
            pushforward(cover, LineBundleOnCover::pullback_twist(cover, s1));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                c.require((a.phi[static_cast<std::size_t>(i)]
                                [static_cast<std::size_t>(j)] ==
                           b.phi[static_cast<std::size_t>(i)]
                                [static_cast<std::size_t>(j)]),
                          "squared ideal and pulled-back divisor disagree");
    }
    return finish("spectral/ramification-square", c, "5 random covers");
}

// ----- cli ----------------------------------------------------------------

VerifySuite suite_cli_determinism() {
    Check c;
    RunConfig demo;
    demo.command = "demo";
    demo.seed = 3;
    const RunResult d1 = run_on_text(demo, "");
    const RunResult d2 = run_on_text(demo, "");
    c.require(d1.exit_code == 0, "demo generation failed");
    c.require(d1.report == d2.report, "demo output is not reproducible");
    RunConfig disc;
    disc.command = "discriminant";
    const RunResult r1 = run_on_text(disc, d1.report);
    const RunResult r2 = run_on_text(disc, d1.report);
    c.require(r1.exit_code == 0, "discriminant on the demo failed");
    c.require(r1.report == r2.report, "discriminant report is not reproducible");
    RunConfig inter;
    inter.command = "intersect";
    inter.d = 2;
    inter.seed = 1;
    const RunResult i1 = run_on_text(inter, d1.report);
    const RunResult i2 = run_on_text(inter, d1.report);
    c.require(i1.exit_code == 0, "intersect on the demo failed");
    c.require(i1.report == i2.report, "intersect report is not reproducible");
    return finish("cli/determinism", c, "demo + 2 reports, byte-compared");
}

VerifySuite suite_cli_round_trip() {
    Check c;
    Rng rng(113);
    const std::vector<std::pair<std::array<int, 3>, int>> shapes = {
        {{0, 0, 1}, 1}, {{0, 0, 0}, 1}, {{0, 1, 1}, 0}, {{1, 1, 1}, 0},
        {{0, 0, 2}, 1}};
    for (int trial = 0; trial < 50; ++trial) {
        const auto& [a, l] = shapes[static_cast<std::size_t>(trial) % shapes.size()];
        const FieldPtr f = trial % 2 == 0 ? F(13) : field_of_degree(3, 2);
        std::array<std::array<TriPoly, 3>, 3> e{
            {{TriPoly::zero(f), TriPoly::zero(f), TriPoly::zero(f)},
             {TriPoly::zero(f), TriPoly::zero(f), TriPoly::zero(f)},
             {TriPoly::zero(f), TriPoly::zero(f), TriPoly::zero(f)}}};
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                TriPoly p = random_form(
                    f,
                    a[static_cast<std::size_t>(i)] + a[static_cast<std::size_t>(j)] + l,
                    rng);
                e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = p;
                e[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = p;
            }
        const ConicFibration fib(f, a, l, e);
        const std::string text = serialize_fibration(fib);
        const ConicFibration back = parse_fibration(text);
        c.require(serialize_fibration(back) == text,
                  "serialize-parse-serialize is not the identity");
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                c.require((back.entry(i, j) == fib.entry(i, j)),
                          "round trip changed an entry");
    }
    return finish("cli/round-trip", c, "50 random fibrations");
}

VerifySuite guarded(VerifySuite (*fn)(), const char* name) {
    try {
        return fn();
    } catch (const std::exception& e) {
        return {name, false, std::string("unexpected error: ") + e.what()};
    }
}

}  // namespace

std::vector<VerifySuite> run_verify_suites() {
    std::vector<VerifySuite> out;
    out.push_back(guarded(suite_factor_roots, "exactfield/factor-roots"));
    out.push_back(guarded(suite_sqrt, "exactfield/sqrt"));
    out.push_back(guarded(suite_resultant_gcd, "exactfield/resultant-gcd"));
    out.push_back(guarded(suite_associativity, "clifford/associativity"));
    out.push_back(
        guarded(suite_degenerate_relations, "clifford/degenerate-relations"));
    out.push_back(
        guarded(suite_quiver_presentation, "clifford/quiver-presentation"));
    out.push_back(
        guarded(suite_rank2_classification, "clifford/rank2-classification"));
    out.push_back(guarded(suite_kernel_geometry, "clifford/kernel-geometry"));
    out.push_back(
        guarded(suite_discriminant_degree, "fibration/discriminant-degree"));
    out.push_back(
        guarded(suite_isotropic_splitting, "fibration/isotropic-splitting"));
    out.push_back(guarded(suite_bezout, "fibration/bezout"));
    out.push_back(guarded(suite_frobenius_closure, "fibration/frobenius-closure"));
    out.push_back(guarded(suite_group_axioms, "prymcomb/group-axioms"));
    out.push_back(guarded(suite_torsor, "prymcomb/torsor"));
    out.push_back(guarded(suite_equivariance, "prymcomb/equivariance"));
    out.push_back(guarded(suite_parity, "prymcomb/parity"));
    out.push_back(guarded(suite_chern, "prymcomb/chern"));
    out.push_back(guarded(suite_local_model, "prymcomb/local-model"));
    out.push_back(guarded(suite_char_identity, "spectral/char-identity"));
    out.push_back(
        guarded(suite_ramification_kernels, "spectral/ramification-kernels"));
    out.push_back(
        guarded(suite_pullback_invariance, "spectral/pullback-invariance"));
    out.push_back(
        guarded(suite_ramification_square, "spectral/ramification-square"));
    out.push_back(guarded(suite_cli_determinism, "cli/determinism"));
    out.push_back(guarded(suite_cli_round_trip, "cli/round-trip"));
    return out;
}

}  // namespace cliffordprym
