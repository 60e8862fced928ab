#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>

#include "cliffordprym/clifford.hpp"

using namespace cliffordprym;

namespace {

// Hand-derived products of the wedge basis under a generic gram (f_ij),
// obtained by applying the two rewrite rules on paper.  P = e1e2, Q = e2e3,
// R = e1e3:
//   P^2 = 2 f12 P - f11 f22
//   Q^2 = 2 f23 Q - f22 f33
//   R^2 = 2 f13 R - f11 f33
//   PQ  = f22 R
//   QP  = 2 f13 f22 - 4 f12 f23 + 2 f23 P + 2 f12 Q - f22 R
//   QR  = -2 f12 f33 + f33 P + 2 f13 Q
//   RQ  = 2 f23 R - f33 P
//   PR  = 2 f12 R - f11 Q
//   RP  = -2 f11 f23 + 2 f13 P + f11 Q
// These serve as an oracle that is independent of the word rewriting code.
struct GenericOracle {
    Fel f11, f12, f13, f22, f23, f33;
    FieldPtr f;

    static GenericOracle over(const FieldPtr& f, long long a11, long long a12,
                              long long a13, long long a22, long long a23,
                              long long a33) {
        return {Fel::from_int(f, a11), Fel::from_int(f, a12),
                Fel::from_int(f, a13), Fel::from_int(f, a22),
                Fel::from_int(f, a23), Fel::from_int(f, a33), f};
    }
    FieldGram gram() const {
        return FieldGram({{{f11, f12, f13}, {f12, f22, f23}, {f13, f23, f33}}});
    }
    Fel two() const { return Fel::from_int(f, 2); }
    Fel four() const { return Fel::from_int(f, 4); }
    EvenCliffordElement el(Fel c0, Fel c12, Fel c23, Fel c13) const {
        return {c0, c12, c23, c13};
    }
    Fel z() const { return Fel::zero(f); }
};

void check_generic_products(const GenericOracle& o) {
    FieldGram g = o.gram();
    Fel z = o.z(), one = Fel::one(o.f);
    EvenCliffordElement P = {z, one, z, z};
    EvenCliffordElement Q = {z, z, one, z};
    EvenCliffordElement R = {z, z, z, one};
    auto mul = [&](const EvenCliffordElement& u, const EvenCliffordElement& v) {
        return even_clifford_multiply(g, u, v);
    };
    Fel two = o.two(), four = o.four();
    CHECK(mul(P, P) == o.el(-(o.f11 * o.f22), two * o.f12, z, z));
    CHECK(mul(Q, Q) == o.el(-(o.f22 * o.f33), z, two * o.f23, z));
    CHECK(mul(R, R) == o.el(-(o.f11 * o.f33), z, z, two * o.f13));
    CHECK(mul(P, Q) == o.el(z, z, z, o.f22));
    CHECK(mul(Q, P) == o.el(two * o.f13 * o.f22 - four * o.f12 * o.f23,
                            two * o.f23, two * o.f12, -o.f22));
    CHECK(mul(Q, R) ==
          o.el(-(two * o.f12 * o.f33), o.f33, two * o.f13, z));
    CHECK(mul(R, Q) == o.el(z, -o.f33, z, two * o.f23));
    CHECK(mul(P, R) == o.el(z, z, -o.f11, two * o.f12));
    CHECK(mul(R, P) ==
          o.el(-(two * o.f11 * o.f23), two * o.f13, o.f11, z));
    // Unit and associativity on the basis.
    EvenCliffordElement u1 = EvenCliffordElement::unit(one);
    CHECK(mul(u1, P) == P);
    CHECK(mul(R, u1) == R);
    CHECK(mul(mul(P, Q), R) == mul(P, mul(Q, R)));
    CHECK(mul(mul(Q, P), R) == mul(Q, mul(P, R)));
}

FieldGram random_symmetric_gram(const FieldPtr& f, Rng& rng) {
    Fel a = random_element(f, rng), b = random_element(f, rng);
    Fel c = random_element(f, rng), d = random_element(f, rng);
    Fel e = random_element(f, rng), g = random_element(f, rng);
    return FieldGram({{{a, b, c}, {b, d, e}, {c, e, g}}});
}

EvenCliffordElement random_even(const FieldPtr& f, Rng& rng) {
    return {random_element(f, rng), random_element(f, rng),
            random_element(f, rng), random_element(f, rng)};
}

Mat congruence(const FieldGram& g, const Mat& s) {
    const FieldPtr& f = s.field();
    Mat gm(f, 3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) gm.at(i, j) = g.at(i, j);
    return s.transpose() * gm * s;
}

FieldGram gram_of_mat(const Mat& m) {
    return FieldGram({{{m.at(0, 0), m.at(0, 1), m.at(0, 2)},
                       {m.at(1, 0), m.at(1, 1), m.at(1, 2)},
                       {m.at(2, 0), m.at(2, 1), m.at(2, 2)}}});
}

Mat random_invertible3(const FieldPtr& f, Rng& rng) {
    for (;;) {
        Mat s(f, 3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s.at(i, j) = random_element(f, rng);
        if (!s.det().is_zero()) return s;
    }
}

}  // namespace

TEST_CASE("generic gram products match the hand-derived table") {
    auto f13 = FieldSpec::prime(13);
    check_generic_products(GenericOracle::over(f13, 2, 3, 5, 7, 11, 6));
    check_generic_products(GenericOracle::over(f13, 1, 1, 1, 1, 1, 1));
    auto f9 = field_of_degree(3, 2);
    check_generic_products(GenericOracle::over(f9, 2, 1, 4, 5, 7, 8));
    auto gq = FieldSpec::gaussian();
    check_generic_products(GenericOracle::over(gq, 2, -3, 5, -7, 11, 6));
}

TEST_CASE("convention pin: x squared under a generic gram") {
    // x = i e1e2 squares to 2 i f21 x + f11 f22, i.e. wedge coordinates
    // (f11 f22, -2 f12, 0, 0).
    auto f13 = FieldSpec::prime(13);
    auto o = GenericOracle::over(f13, 2, 3, 5, 7, 11, 6);
    FieldGram g = o.gram();
    Fel i = sqrt_element(Fel::from_int(f13, -1)).value();
    Fel z = Fel::zero(f13);
    EvenCliffordElement x = {z, i, z, z};
    EvenCliffordElement got = even_clifford_multiply(g, x, x);
    CHECK(got == o.el(o.f11 * o.f22, -(o.two() * o.f12), z, z));

    // y z = 2 f31 y - 2 i f33 f21 + f33 x with y = i e2e3, z = e1e3.
    EvenCliffordElement y = {z, z, i, z};
    EvenCliffordElement zel = {z, z, z, Fel::one(f13)};
    EvenCliffordElement yz = even_clifford_multiply(g, y, zel);
    Fel two = o.two();
    CHECK(yz == o.el(-(two * i * o.f33 * o.f12), i * o.f33, two * i * o.f13, z));
}

TEST_CASE("relation suite at diag(1,1,0)") {
    auto f13 = FieldSpec::prime(13);
    FieldGram g = diagonal_gram(f13, 1, 1, 0);
    Fel i = sqrt_element(Fel::from_int(f13, -1)).value();
    Fel z = Fel::zero(f13), one = Fel::one(f13);
    EvenCliffordElement x = {z, i, z, z};
    EvenCliffordElement y = {z, z, i, z};
    EvenCliffordElement w = {z, z, z, one};
    EvenCliffordElement u1 = EvenCliffordElement::unit(one);
    EvenCliffordElement zero = EvenCliffordElement::zero(one);
    auto mul = [&](const EvenCliffordElement& a, const EvenCliffordElement& b) {
        return even_clifford_multiply(g, a, b);
    };
    CHECK(mul(x, x) == u1);
    CHECK(mul(y, y) == zero);
    CHECK(mul(w, w) == zero);
    CHECK(mul(x, y) == -w);
    CHECK(mul(y, x) == w);
    CHECK(mul(x, w) == -y);
    CHECK(mul(w, x) == y);
    CHECK(mul(y, w) == zero);
    CHECK(mul(w, y) == zero);
}

TEST_CASE("symbol algebra agrees with the wedge route") {
    auto f13 = FieldSpec::prime(13);
    FieldGram g = diagonal_gram(f13, 1, 1, 0);
    Fel i = sqrt_element(Fel::from_int(f13, -1)).value();
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        SymbolElement u = {random_element(f13, rng), random_element(f13, rng),
                           random_element(f13, rng), random_element(f13, rng)};
        SymbolElement v = {random_element(f13, rng), random_element(f13, rng),
                           random_element(f13, rng), random_element(f13, rng)};
        SymbolElement direct = normalized_multiply(u, v);
        EvenCliffordElement viaeven =
            even_clifford_multiply(g, symbol_to_even(u, i), symbol_to_even(v, i));
        CHECK(even_to_symbol(viaeven, i) == direct);
    }
}

TEST_CASE("associativity over random grams") {
    auto f13 = FieldSpec::prime(13);
    Rng rng(101);
    for (int t = 0; t < 200; ++t) {
        FieldGram g = random_symmetric_gram(f13, rng);
        EvenCliffordElement u = random_even(f13, rng);
        EvenCliffordElement v = random_even(f13, rng);
        EvenCliffordElement w = random_even(f13, rng);
        EvenCliffordElement l =
            even_clifford_multiply(g, even_clifford_multiply(g, u, v), w);
        EvenCliffordElement r =
            even_clifford_multiply(g, u, even_clifford_multiply(g, v, w));
        CHECK(l == r);
    }
}

TEST_CASE("series coefficients flow through the same multiplication") {
    auto f13 = FieldSpec::prime(13);
    int prec = 3;
    TruncSeries z = TruncSeries::zero(f13, prec);
    TruncSeries one = TruncSeries::one(f13, prec);
    TruncSeries t = TruncSeries::parameter(f13, prec);
    SeriesGram g = series_gram({{{one, z, z}, {z, one, z}, {z, z, t}}});
    SeriesCliffordElement Q = {z, z, one, z};
    // Q^2 = -f22 f33 = -t for this degenerating family.
    SeriesCliffordElement qq = even_clifford_multiply(g, Q, Q);
    CHECK(qq.c0 == -t);
    CHECK(qq.c23.is_zero());
    SeriesCliffordElement R = {z, z, z, one};
    // QR = f33 P + ... = t e1e2 here (f12 = f13 = 0).
    SeriesCliffordElement qr = even_clifford_multiply(g, Q, R);
    CHECK(qr.c12 == t);
    CHECK(qr.c0.is_zero());

    CHECK_THROWS_AS(series_gram({{{TruncSeries::one(f13, 1),
                                   TruncSeries::zero(f13, 1),
                                   TruncSeries::zero(f13, 1)},
                                  {TruncSeries::zero(f13, 1),
                                   TruncSeries::one(f13, 1),
                                   TruncSeries::zero(f13, 1)},
                                  {TruncSeries::zero(f13, 1),
                                   TruncSeries::zero(f13, 1),
                                   TruncSeries::zero(f13, 1)}}}),
                    MathError);
}

TEST_CASE("gram validation") {
    auto f13 = FieldSpec::prime(13);
    auto f7 = FieldSpec::prime(7);
    Fel z = Fel::zero(f13), one = Fel::one(f13), two = Fel::from_int(f13, 2);
    CHECK_THROWS_AS(FieldGram({{{one, one, z}, {two, one, z}, {z, z, one}}}),
                    MathError);
    FieldGram g = diagonal_gram(f13, 1, 1, 0);
    EvenCliffordElement foreign = EvenCliffordElement::unit(Fel::one(f7));
    EvenCliffordElement local = EvenCliffordElement::unit(one);
    CHECK_THROWS_AS(even_clifford_multiply(g, foreign, local), MathError);
}

TEST_CASE("normalization: already normalized input is fixed") {
    auto f13 = FieldSpec::prime(13);
    auto n = normalize_rank2(diagonal_gram(f13, 1, 1, 0));
    CHECK(n.field->same(*f13));
    CHECK(n.change == Mat::identity(f13, 3));
    CHECK(congruence(diagonal_gram(f13, 1, 1, 0), n.change) ==
          congruence(n.normalized, Mat::identity(n.field, 3)));

    auto f3 = FieldSpec::prime(3);
    auto n3 = normalize_rank2(diagonal_gram(f3, 1, 1, 0));
    CHECK(n3.field->same(*f3));
    CHECK(n3.change == Mat::identity(f3, 3));
}

TEST_CASE("normalization of the hyperbolic block over F13") {
    auto f13 = FieldSpec::prime(13);
    FieldGram g = gram_from_ints(
        f13, {{{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}});
    auto n = normalize_rank2(g);
    CHECK(n.field->same(*f13));
    // Frozen change worked out by hand: columns (1, 7, 0), (5, 4, 0), (0, 0, 1)
    // with i = 5 the canonical square root of -1 mod 13.
    Mat expect = Mat::from_rows(
        f13, {{Fel::from_int(f13, 1), Fel::from_int(f13, 5), Fel::zero(f13)},
              {Fel::from_int(f13, 7), Fel::from_int(f13, 4), Fel::zero(f13)},
              {Fel::zero(f13), Fel::zero(f13), Fel::one(f13)}});
    CHECK(n.change == expect);
    Mat target = congruence(n.normalized, Mat::identity(n.field, 3));
    CHECK(congruence(g, n.change) == target);
}

TEST_CASE("normalization of diag(2,3,0) extends F13 quadratically") {
    auto f13 = FieldSpec::prime(13);
    FieldGram g = diagonal_gram(f13, 2, 3, 0);
    auto n = normalize_rank2(g);
    CHECK(n.field->degree() == 2);
    CHECK(n.field->characteristic() == 13);
    Mat gm(n.field, 3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) gm.at(i, j) = n.emb(g.at(i, j));
    Mat got = n.change.transpose() * gm * n.change;
    CHECK(got == congruence(n.normalized, Mat::identity(n.field, 3)));
    // sqrt(2) is missing downstairs, so the first column genuinely uses the
    // extension coordinate.
    CHECK(n.change.at(0, 0).coords()[1] != 0);
}

TEST_CASE("normalization rejects wrong ranks") {
    auto f13 = FieldSpec::prime(13);
    CHECK_THROWS_AS(normalize_rank2(diagonal_gram(f13, 1, 0, 0)), MathError);
    CHECK_THROWS_AS(normalize_rank2(diagonal_gram(f13, 1, 1, 1)), MathError);
    CHECK_THROWS_AS(normalize_rank2(diagonal_gram(f13, 0, 0, 0)), MathError);
}

TEST_CASE("normalization fixes random congruence transforms") {
    auto f13 = FieldSpec::prime(13);
    Rng rng(23);
    FieldGram base = diagonal_gram(f13, 1, 1, 0);
    for (int t = 0; t < 20; ++t) {
        Mat s = random_invertible3(f13, rng);
        FieldGram g = gram_of_mat(congruence(base, s));
        auto n = normalize_rank2(g);
        Mat gm(n.field, 3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) gm.at(i, j) = n.emb(g.at(i, j));
        CHECK(n.change.transpose() * gm * n.change ==
              congruence(n.normalized, Mat::identity(n.field, 3)));
    }
}

TEST_CASE("normalization is deterministic") {
    auto f13 = FieldSpec::prime(13);
    FieldGram g = gram_from_ints(
        f13, {{{2, 5, 0}, {5, 9, 0}, {0, 0, 0}}});
    auto n1 = normalize_rank2(g);
    auto n2 = normalize_rank2(g);
    CHECK(n1.change == n2.change);
    CHECK(n1.field->same(*n2.field));
}

TEST_CASE("quiver generator images and their algebra") {
    auto f13 = FieldSpec::prime(13);
    auto qi = quiver_presentation(diagonal_gram(f13, 1, 1, 0));
    Fel h = Fel::from_int(f13, 2).inv(), z = Fel::zero(f13);
    CHECK(qi.e_plus == (SymbolElement{h, h, z, z}));
    CHECK(qi.e_minus == (SymbolElement{h, -h, z, z}));
    CHECK(qi.alpha == (SymbolElement{z, z, h, h}));
    CHECK(qi.beta == (SymbolElement{z, z, h, -h}));

    CHECK(qi.e_plus + qi.e_minus == SymbolElement::unit(f13));
    CHECK(normalized_multiply(qi.alpha, qi.beta).is_zero());
    CHECK(normalized_multiply(qi.beta, qi.alpha).is_zero());

    // Path compatibility through the wedge route as an independent check:
    // (1-x)/2 * (y+z)/2 * (1+x)/2 returns (y+z)/2.
    Fel i = sqrt_element(Fel::from_int(f13, -1)).value();
    FieldGram g = diagonal_gram(f13, 1, 1, 0);
    auto e = [&](const SymbolElement& s) { return symbol_to_even(s, i); };
    EvenCliffordElement path = even_clifford_multiply(
        g, e(qi.e_minus), even_clifford_multiply(g, e(qi.alpha), e(qi.e_plus)));
    CHECK(even_to_symbol(path, i) == qi.alpha);

    CHECK_THROWS_AS(quiver_presentation(diagonal_gram(f13, 1, 2, 0)), MathError);

    // Also valid over a field with no square root of -1.
    auto f3 = FieldSpec::prime(3);
    auto qi3 = quiver_presentation(diagonal_gram(f3, 1, 1, 0));
    CHECK(qi3.e_plus + qi3.e_minus == SymbolElement::unit(f3));
}

TEST_CASE("idempotents over F3: exactly 2 + 2 * 9 = 20") {
    auto f3 = FieldSpec::prime(3);
    auto fam = idempotent_family(f3);
    CHECK(fam.count == 20);
    CHECK(fam.family_matches);

    // (1+x)/2 + y squares to itself; over F3 the half is 2.
    SymbolElement u = SymbolElement::from_ints(f3, 2, 2, 1, 0);
    CHECK(normalized_multiply(u, u) == u);
    bool found = false;
    for (auto& m : fam.members)
        if (m == u) found = true;
    CHECK(found);
}

TEST_CASE("idempotent counts follow 2 + 2 q^2") {
    auto f5 = FieldSpec::prime(5);
    CHECK(idempotent_family(f5).count == 2 + 2 * 25);
    auto f9 = field_of_degree(3, 2);
    CHECK(idempotent_family(f9).count == 2 + 2 * 81);
    auto big = FieldSpec::prime(1009);
    CHECK_THROWS_AS(idempotent_family(big), MathError);
}

TEST_CASE("radical span(y, z) squares to zero with split quotient") {
    auto f13 = FieldSpec::prime(13);
    auto rad = radical_ideal(f13);
    CHECK(rad.square_zero);
    CHECK(rad.quotient_dim == 2);
    CHECK(rad.quotient_split);
    REQUIRE(rad.basis.size() == 2);
    CHECK(normalized_multiply(rad.basis[0], rad.basis[1]).is_zero());
    CHECK(normalized_multiply(rad.basis[1], rad.basis[0]).is_zero());

    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        SymbolElement v = rad.basis[0] * random_element(f13, rng) +
                          rad.basis[1] * random_element(f13, rng);
        CHECK(normalized_multiply(v, v).is_zero());
    }
}

TEST_CASE("representation classification round trips the five classes") {
    auto f13 = FieldSpec::prime(13);
    for (RepTypeTag tag : {RepTypeTag::T1, RepTypeTag::T2, RepTypeTag::T3,
                           RepTypeTag::T4, RepTypeTag::T5}) {
        Rep2 r = standard_rep(f13, tag);
        CHECK(classify_rep2(r) == tag);
    }

    // Frozen shape of the first class: x = diag(1,-1), y = z = [[0,0],[1,0]].
    Rep2 t1 = standard_rep(f13, RepTypeTag::T1);
    CHECK(t1.x.at(0, 0) == Fel::one(f13));
    CHECK(t1.x.at(1, 1) == -Fel::one(f13));
    CHECK(t1.y.at(1, 0) == Fel::one(f13));
    CHECK(t1.y.at(0, 1).is_zero());
    CHECK(t1.z == t1.y);
    auto q1 = to_quiver_rep(t1);
    CHECK(q1.dim_plus == 1);
    CHECK(q1.dim_minus == 1);
    CHECK(q1.mat_alpha.at(0, 0) == Fel::one(f13));
    CHECK(q1.mat_beta.at(0, 0).is_zero());

    auto q4 = to_quiver_rep(standard_rep(f13, RepTypeTag::T4));
    CHECK(q4.dim_plus == 2);
    CHECK(q4.dim_minus == 0);
}

TEST_CASE("exhaustive rank-2 classification over F3 yields five classes") {
    auto f3 = FieldSpec::prime(3);
    std::set<std::string> seen;

    // Full split shapes.
    QuiverRep2 all_plus{2, 0, Mat(f3, 0, 2), Mat(f3, 2, 0)};
    QuiverRep2 all_minus{0, 2, Mat(f3, 2, 0), Mat(f3, 0, 2)};
    seen.insert(rep_type_name(classify_quiver(all_plus)));
    seen.insert(rep_type_name(classify_quiver(all_minus)));

    // Balanced shapes: scalars with both composites zero.
    int valid = 0;
    for (long long a = 0; a < 3; ++a)
        for (long long b = 0; b < 3; ++b) {
            Mat ma(f3, 1, 1), mb(f3, 1, 1);
            ma.at(0, 0) = Fel::from_int(f3, a);
            mb.at(0, 0) = Fel::from_int(f3, b);
            QuiverRep2 q{1, 1, ma, mb};
            if (a * b % 3 == 0) {
                seen.insert(rep_type_name(classify_quiver(q)));
                ++valid;
            } else {
                CHECK_THROWS_AS(classify_quiver(q), MathError);
            }
        }
    CHECK(valid == 5);
    CHECK(seen == std::set<std::string>({"T1", "T2", "T3", "T4", "T5"}));
}

TEST_CASE("broken relations are rejected") {
    auto f13 = FieldSpec::prime(13);
    Rep2 bad = standard_rep(f13, RepTypeTag::T1);
    bad.x = Mat::identity(f13, 2);  // x = 1 but y nonzero breaks xy = -z
    CHECK_THROWS_AS(to_quiver_rep(bad), MathError);
}

TEST_CASE("kernel data of the two split classes at diag(1,1,0)") {
    auto f13 = FieldSpec::prime(13);
    FieldGram g = diagonal_gram(f13, 1, 1, 0);
    Fel i = Fel::from_int(f13, 5);  // canonical sqrt(-1) mod 13

    auto k2 = rep_kernel_line(g, standard_rep(f13, RepTypeTag::T2));
    CHECK(k2.tag == RepTypeTag::T2);
    CHECK(k2.field->same(*f13));
    // span(y + z): wedge coordinates (0, i, 1), scaled to lead with 1.
    Mat line2 = Mat::from_rows(
        f13, {{Fel::zero(f13), Fel::one(f13), Fel::from_int(f13, 8)}});
    CHECK(k2.k_line == line2);
    Mat plane2 = Mat::from_rows(
        f13, {{Fel::one(f13), i, Fel::zero(f13)},
              {Fel::zero(f13), Fel::zero(f13), Fel::one(f13)}});
    CHECK(k2.k_plane == plane2);

    auto k1 = rep_kernel_line(g, standard_rep(f13, RepTypeTag::T1));
    CHECK(k1.tag == RepTypeTag::T1);
    Mat line1 = Mat::from_rows(
        f13, {{Fel::zero(f13), Fel::one(f13), Fel::from_int(f13, 5)}});
    CHECK(k1.k_line == line1);
    Mat plane1 = Mat::from_rows(
        f13, {{Fel::one(f13), Fel::from_int(f13, 8), Fel::zero(f13)},
              {Fel::zero(f13), Fel::zero(f13), Fel::one(f13)}});
    CHECK(k1.k_plane == plane1);
}

TEST_CASE("non-split classes have no kernel line") {
    auto f13 = FieldSpec::prime(13);
    FieldGram g = diagonal_gram(f13, 1, 1, 0);
    for (RepTypeTag tag : {RepTypeTag::T3, RepTypeTag::T4, RepTypeTag::T5}) {
        CHECK_THROWS_AS(rep_kernel_line(g, standard_rep(f13, tag)), MathError);
    }
}

TEST_CASE("kernel planes transport through congruence and stay isotropic") {
    auto f13 = FieldSpec::prime(13);
    Rng rng(31);
    FieldGram base = diagonal_gram(f13, 1, 1, 0);
    for (int t = 0; t < 20; ++t) {
        Mat s = random_invertible3(f13, rng);
        FieldGram g = gram_of_mat(congruence(base, s));
        auto n = normalize_rank2(g);
        auto kd = rep_kernel_line(g, standard_rep(n.field, RepTypeTag::T2));
        CHECK(kd.k_plane.rows() == 2);
        CHECK(kd.k_line.rows() == 1);
        // Isotropy across every point of the plane, not only the basis: for
        // all field multiples v0 + c v1 the form vanishes (it is quadratic,
        // so basis vectors plus their sum suffice; spot check more anyway).
        Mat gm(kd.field, 3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) gm.at(i, j) = kd.emb(g.at(i, j));
        for (int trial = 0; trial < 5; ++trial) {
            Fel c = random_element(kd.field, rng);
            std::vector<Fel> v = {
                kd.k_plane.at(0, 0) + c * kd.k_plane.at(1, 0),
                kd.k_plane.at(0, 1) + c * kd.k_plane.at(1, 1),
                kd.k_plane.at(0, 2) + c * kd.k_plane.at(1, 2)};
            Fel acc = Fel::zero(kd.field);
            for (int r = 0; r < 3; ++r)
                for (int cc = 0; cc < 3; ++cc)
                    acc = acc + v[static_cast<std::size_t>(r)] * gm.at(r, cc) *
                                    v[static_cast<std::size_t>(cc)];
            CHECK(acc.is_zero());
        }
    }
}

TEST_CASE("kernel subspaces ignore the trivialization scale") {
    // Rescaling the form by a nonzero square keeps the same pair of rulings
    // and the same pair of bivector lines; the canonical square roots inside
    // the normalization may swap which standard rep reaches which member, so
    // the comparison is on the unordered pairs.
    auto f13 = FieldSpec::prime(13);
    Rng rng(47);
    FieldGram base = diagonal_gram(f13, 1, 1, 0);
    auto plane_pair = [](const KernelLine& a, const KernelLine& b) {
        std::set<std::string> s;
        auto key = [](const Mat& m) {
            std::string k;
            for (int r = 0; r < m.rows(); ++r)
                for (int c = 0; c < m.cols(); ++c) k += m.at(r, c).str() + "|";
            return k;
        };
        s.insert(key(a.k_plane) + "#" + key(a.k_line));
        s.insert(key(b.k_plane) + "#" + key(b.k_line));
        return s;
    };
    for (int t = 0; t < 10; ++t) {
        Mat s = random_invertible3(f13, rng);
        FieldGram g = gram_of_mat(congruence(base, s));
        Fel lam = random_element(f13, rng);
        while (lam.is_zero()) lam = random_element(f13, rng);
        Fel scale = lam * lam;
        Mat gm(f13, 3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) gm.at(i, j) = g.at(i, j) * scale;
        FieldGram gs = gram_of_mat(gm);
        auto n = normalize_rank2(g);
        auto ns = normalize_rank2(gs);
        CHECK(n.field->same(*ns.field));
        auto ka = rep_kernel_line(g, standard_rep(n.field, RepTypeTag::T2));
        auto k1a = rep_kernel_line(g, standard_rep(n.field, RepTypeTag::T1));
        auto kb = rep_kernel_line(gs, standard_rep(ns.field, RepTypeTag::T2));
        auto k1b = rep_kernel_line(gs, standard_rep(ns.field, RepTypeTag::T1));
        CHECK(plane_pair(ka, k1a) == plane_pair(kb, k1b));
    }

    // With scale 4 on the already diagonal form the square roots line up and
    // the labeled outputs match one for one.
    auto ka = rep_kernel_line(diagonal_gram(f13, 1, 1, 0),
                              standard_rep(f13, RepTypeTag::T2));
    auto kb = rep_kernel_line(diagonal_gram(f13, 4, 4, 0),
                              standard_rep(f13, RepTypeTag::T2));
    CHECK(ka.k_plane == kb.k_plane);
    CHECK(ka.k_line == kb.k_line);
}

TEST_CASE("plane labels at diag(1,1,0) and the hyperbolic block") {
    auto f13 = FieldSpec::prime(13);
    auto sp = split_isotropic_planes(diagonal_gram(f13, 1, 1, 0));
    CHECK(sp.tag_plus == RepTypeTag::T2);
    CHECK(sp.tag_minus == RepTypeTag::T1);
    Mat plus = Mat::from_rows(
        f13, {{Fel::one(f13), Fel::from_int(f13, 5), Fel::zero(f13)},
              {Fel::zero(f13), Fel::zero(f13), Fel::one(f13)}});
    Mat minus = Mat::from_rows(
        f13, {{Fel::one(f13), Fel::from_int(f13, 8), Fel::zero(f13)},
              {Fel::zero(f13), Fel::zero(f13), Fel::one(f13)}});
    CHECK(sp.plane_plus == plus);
    CHECK(sp.plane_minus == minus);

    FieldGram hyp = gram_from_ints(
        f13, {{{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}});
    auto sh = split_isotropic_planes(hyp);
    Mat v1zero = Mat::from_rows(
        f13, {{Fel::zero(f13), Fel::one(f13), Fel::zero(f13)},
              {Fel::zero(f13), Fel::zero(f13), Fel::one(f13)}});
    Mat v2zero = Mat::from_rows(
        f13, {{Fel::one(f13), Fel::zero(f13), Fel::zero(f13)},
              {Fel::zero(f13), Fel::zero(f13), Fel::one(f13)}});
    CHECK(sh.plane_plus == v1zero);
    CHECK(sh.plane_minus == v2zero);
    CHECK(sh.tag_plus == RepTypeTag::T2);
    CHECK(sh.tag_minus == RepTypeTag::T1);
}

TEST_CASE("splitting over F3 lands in the quadratic extension") {
    auto f3 = FieldSpec::prime(3);
    auto sp = split_isotropic_planes(diagonal_gram(f3, 1, 1, 0));
    CHECK(sp.field->degree() == 2);
    CHECK(sp.field->characteristic() == 3);
    // The canonical sqrt of -1 upstairs is the generator itself.
    Fel i = sqrt_element(Fel::from_int(sp.field, -1)).value();
    CHECK(sp.plane_plus.at(0, 1) == i);
    CHECK(sp.plane_minus.at(0, 1) == -i);
}
