#include "cliffordprym/clifford.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace cliffordprym {

namespace {

Fel half_of(const FieldPtr& f) { return Fel::from_int(f, 2).inv(); }

Mat gram_matrix(const FieldGram& g) {
    const FieldPtr& f = g.proto().field();
    Mat m(f, 3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = g.at(i, j);
    return m;
}

bool lex_mat_less(const Mat& a, const Mat& b) {
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a.at(i, j) == b.at(i, j)) continue;
            return a.at(i, j).lex_less(b.at(i, j));
        }
    return false;
}

bool symbol_lex_less(const SymbolElement& a, const SymbolElement& b) {
    if (a.s0 != b.s0) return a.s0.lex_less(b.s0);
    if (a.sx != b.sx) return a.sx.lex_less(b.sx);
    if (a.sy != b.sy) return a.sy.lex_less(b.sy);
    return a.sz.lex_less(b.sz);
}

}  // namespace

FieldGram diagonal_gram(const FieldPtr& f, long long d1, long long d2,
                        long long d3) {
    Fel z = Fel::zero(f);
    return FieldGram({{{Fel::from_int(f, d1), z, z},
                       {z, Fel::from_int(f, d2), z},
                       {z, z, Fel::from_int(f, d3)}}});
}

FieldGram gram_from_ints(const FieldPtr& f,
                         const std::array<std::array<long long, 3>, 3>& m) {
    std::array<std::array<Fel, 3>, 3> e = {
        {{Fel::from_int(f, m[0][0]), Fel::from_int(f, m[0][1]),
          Fel::from_int(f, m[0][2])},
         {Fel::from_int(f, m[1][0]), Fel::from_int(f, m[1][1]),
          Fel::from_int(f, m[1][2])},
         {Fel::from_int(f, m[2][0]), Fel::from_int(f, m[2][1]),
          Fel::from_int(f, m[2][2])}}};
    return FieldGram(e);
}

SeriesGram series_gram(const std::array<std::array<TruncSeries, 3>, 3>& m) {
    if (m[0][0].precision() < 2)
        throw MathError("precision", "series gram needs precision >= 2");
    return SeriesGram(m);
}

SymbolElement SymbolElement::zero(const FieldPtr& f) {
    Fel z = Fel::zero(f);
    return {z, z, z, z};
}

SymbolElement SymbolElement::unit(const FieldPtr& f) {
    Fel z = Fel::zero(f);
    return {Fel::one(f), z, z, z};
}

SymbolElement SymbolElement::from_ints(const FieldPtr& f, long long a0,
                                       long long ax, long long ay, long long az) {
    return {Fel::from_int(f, a0), Fel::from_int(f, ax), Fel::from_int(f, ay),
            Fel::from_int(f, az)};
}

SymbolElement SymbolElement::operator+(const SymbolElement& o) const {
    return {s0 + o.s0, sx + o.sx, sy + o.sy, sz + o.sz};
}

SymbolElement SymbolElement::operator-(const SymbolElement& o) const {
    return {s0 - o.s0, sx - o.sx, sy - o.sy, sz - o.sz};
}

SymbolElement SymbolElement::operator-() const { return {-s0, -sx, -sy, -sz}; }

SymbolElement SymbolElement::operator*(const Fel& s) const {
    return {s0 * s, sx * s, sy * s, sz * s};
}

bool SymbolElement::operator==(const SymbolElement& o) const {
    return s0 == o.s0 && sx == o.sx && sy == o.sy && sz == o.sz;
}

bool SymbolElement::is_zero() const {
    return s0.is_zero() && sx.is_zero() && sy.is_zero() && sz.is_zero();
}

std::string SymbolElement::str() const {
    return "(" + s0.str() + ", " + sx.str() + ", " + sy.str() + ", " + sz.str() +
           ")";
}

SymbolElement normalized_multiply(const SymbolElement& u, const SymbolElement& v) {
    if (!same_ring(u.s0, v.s0))
        throw MathError("ring-mismatch", "symbol product across different fields");
    return {u.s0 * v.s0 + u.sx * v.sx,
            u.s0 * v.sx + u.sx * v.s0,
            u.s0 * v.sy + u.sy * v.s0 - u.sx * v.sz + u.sz * v.sx,
            u.s0 * v.sz + u.sz * v.s0 - u.sx * v.sy + u.sy * v.sx};
}

EvenCliffordElement symbol_to_even(const SymbolElement& s, const Fel& i) {
    if (!(i * i == Fel::from_int(i.field(), -1)))
        throw MathError("bad-field", "conversion scalar does not square to -1");
    return {s.s0, i * s.sx, i * s.sy, s.sz};
}

SymbolElement even_to_symbol(const EvenCliffordElement& u, const Fel& i) {
    if (!(i * i == Fel::from_int(i.field(), -1)))
        throw MathError("bad-field", "conversion scalar does not square to -1");
    Fel mi = -i;  // 1/i
    return {u.c0, mi * u.c12, mi * u.c23, u.c13};
}

Rank2Normalization normalize_rank2(const FieldGram& gram) {
    FieldPtr base = gram.proto().field();
    Mat g = gram_matrix(gram);
    if (g.rank() != 2)
        throw MathError("not-corank-one", "gram rank is not 2");

    Mat rad = canonical_subspace(base, g.kernel_basis());

    // First index pair whose principal 2x2 block is nondegenerate; one always
    // exists because the radical is a single line.
    int i1 = -1, i2 = -1;
    for (auto [p, q] : {std::pair<int, int>{0, 1}, {0, 2}, {1, 2}}) {
        Fel d2 = gram.at(p, p) * gram.at(q, q) - gram.at(p, q) * gram.at(p, q);
        if (!d2.is_zero()) {
            i1 = p;
            i2 = q;
            break;
        }
    }
    if (i1 < 0) throw MathError("not-corank-one", "no nondegenerate block");

    Fel a = gram.at(i1, i1), b = gram.at(i1, i2), c = gram.at(i2, i2);
    bool diagonal = b.is_zero();
    Fel disc = b * b - a * c;

    std::vector<Fel> needed;
    if (diagonal) {
        needed = {a, c};
    } else if (a.is_zero() || c.is_zero()) {
        needed = {Fel::from_int(base, -1)};
    } else {
        needed = {Fel::from_int(base, -1), disc};
    }

    FieldPtr field = base;
    Embedding emb = Embedding::identity(base);
    for (auto& x : needed) {
        if (!sqrt_element(x)) {
            SqrtResult s = sqrt_in_extension(x);
            field = s.field;
            emb = s.emb;
            break;
        }
    }

    // New basis columns in old coordinates, over the final field.
    std::vector<Fel> eps1(3, Fel::zero(field)), eps2(3, Fel::zero(field));
    if (diagonal) {
        eps1[static_cast<std::size_t>(i1)] = sqrt_element(emb(a)).value().inv();
        eps2[static_cast<std::size_t>(i2)] = sqrt_element(emb(c)).value().inv();
    } else {
        Fel fa = emb(a), fb = emb(b), fc = emb(c);
        // Isotropic direction u of the binary block, then a partner w with
        // pairing 1, then the standard orthonormal pair from the hyperbolic
        // plane.  q(s,t) = fa s^2 + 2 fb s t + fc t^2.
        Fel u0 = Fel::one(field), u1 = Fel::zero(field);
        if (fa.is_zero()) {
            u0 = Fel::one(field);
            u1 = Fel::zero(field);
        } else if (fc.is_zero()) {
            u0 = Fel::zero(field);
            u1 = Fel::one(field);
        } else {
            Fel delta = sqrt_element(emb(disc)).value();
            u0 = (delta - fb) / fa;
            u1 = Fel::one(field);
        }
        auto pair2 = [&](Fel s0, Fel t0, Fel s1, Fel t1) {
            return fa * s0 * s1 + fb * (s0 * t1 + t0 * s1) + fc * t0 * t1;
        };
        Fel w0 = Fel::one(field), w1 = Fel::zero(field);
        Fel bw = pair2(u0, u1, w0, w1);
        if (bw.is_zero()) {
            w0 = Fel::zero(field);
            w1 = Fel::one(field);
            bw = pair2(u0, u1, w0, w1);
        }
        w0 = w0 / bw;
        w1 = w1 / bw;
        Fel half = half_of(field);
        Fel mu = pair2(w0, w1, w0, w1) * half;
        w0 = w0 - mu * u0;
        w1 = w1 - mu * u1;
        Fel iu = sqrt_element(Fel::from_int(field, -1)).value();
        eps1[static_cast<std::size_t>(i1)] = u0 + w0 * half;
        eps1[static_cast<std::size_t>(i2)] = u1 + w1 * half;
        eps2[static_cast<std::size_t>(i1)] = (u0 - w0 * half) * iu;
        eps2[static_cast<std::size_t>(i2)] = (u1 - w1 * half) * iu;
    }

    Mat change(field, 3, 3);
    for (int r = 0; r < 3; ++r) {
        change.at(r, 0) = eps1[static_cast<std::size_t>(r)];
        change.at(r, 1) = eps2[static_cast<std::size_t>(r)];
        change.at(r, 2) = emb(rad.at(0, r));
    }

    Mat glift(field, 3, 3);
    for (int r = 0; r < 3; ++r)
        for (int s = 0; s < 3; ++s) glift.at(r, s) = emb(gram.at(r, s));
    Mat check = change.transpose() * glift * change;
    FieldGram target = diagonal_gram(field, 1, 1, 0);
    if (check != gram_matrix(target))
        throw MathError("internal-check", "normalization did not reach diag(1,1,0)");

    return {field, emb, change, target};
}

QuiverImages quiver_presentation(const FieldGram& normalized_gram) {
    FieldPtr f = normalized_gram.proto().field();
    if (!(normalized_gram == diagonal_gram(f, 1, 1, 0)))
        throw MathError("not-normalized", "expected the diag(1,1,0) form");

    Fel h = half_of(f), z = Fel::zero(f);
    QuiverImages out = {{h, h, z, z}, {h, -h, z, z}, {z, z, h, h}, {z, z, h, -h}};

    SymbolElement one = SymbolElement::unit(f);
    SymbolElement zero = SymbolElement::zero(f);
    auto mul = [](const SymbolElement& u, const SymbolElement& v) {
        return normalized_multiply(u, v);
    };
    bool ok = mul(out.e_plus, out.e_plus) == out.e_plus &&
              mul(out.e_minus, out.e_minus) == out.e_minus &&
              mul(out.e_plus, out.e_minus) == zero &&
              mul(out.e_minus, out.e_plus) == zero &&
              out.e_plus + out.e_minus == one &&
              mul(out.alpha, out.beta) == zero &&
              mul(out.beta, out.alpha) == zero &&
              mul(out.e_minus, mul(out.alpha, out.e_plus)) == out.alpha &&
              mul(out.e_plus, mul(out.beta, out.e_minus)) == out.beta;
    Mat span = Mat::from_rows(
        f, {{out.e_plus.s0, out.e_plus.sx, out.e_plus.sy, out.e_plus.sz},
            {out.e_minus.s0, out.e_minus.sx, out.e_minus.sy, out.e_minus.sz},
            {out.alpha.s0, out.alpha.sx, out.alpha.sy, out.alpha.sz},
            {out.beta.s0, out.beta.sx, out.beta.sy, out.beta.sz}});
    ok = ok && span.rank() == 4;
    if (!ok) throw MathError("internal-check", "generator map certification failed");
    return out;
}

IdempotentFamily idempotent_family(const FieldPtr& field) {
    mpz_class q = field->order();
    mpz_class total = q * q * q * q;
    if (total > 100000000)
        throw MathError("enumeration-bound", "field too large for the idempotent scan");

    std::vector<Fel> els = all_elements(field, 100000000ULL);
    IdempotentFamily out;
    for (auto& a0 : els)
        for (auto& ax : els)
            for (auto& ay : els)
                for (auto& az : els) {
                    SymbolElement u = {a0, ax, ay, az};
                    if (normalized_multiply(u, u) == u) out.members.push_back(u);
                }
    out.count = static_cast<long long>(out.members.size());

    Fel h = half_of(field), z = Fel::zero(field);
    std::vector<SymbolElement> family;
    family.push_back(SymbolElement::zero(field));
    family.push_back(SymbolElement::unit(field));
    for (auto& ay : els)
        for (auto& az : els) {
            family.push_back({h, h, ay, az});
            family.push_back({h, -h, ay, az});
        }
    std::vector<SymbolElement> got = out.members;
    std::sort(got.begin(), got.end(), symbol_lex_less);
    std::sort(family.begin(), family.end(), symbol_lex_less);
    out.family_matches = got == family;
    return out;
}

RadicalCertificate radical_ideal(const FieldPtr& field) {
    Fel z = Fel::zero(field), one = Fel::one(field);
    RadicalCertificate out;
    out.basis = {{z, z, one, z}, {z, z, z, one}};

    out.square_zero = true;
    for (auto& u : out.basis)
        for (auto& v : out.basis)
            if (!normalized_multiply(u, v).is_zero()) out.square_zero = false;

    Mat span = Mat::from_rows(field,
                              {{out.basis[0].s0, out.basis[0].sx, out.basis[0].sy,
                                out.basis[0].sz},
                               {out.basis[1].s0, out.basis[1].sx, out.basis[1].sy,
                                out.basis[1].sz}});
    out.quotient_dim = 4 - span.rank();

    // The two idempotents (1 +- x)/2 are orthogonal, sum to 1, and stay
    // nonzero modulo the radical, so the quotient splits as field x field.
    Fel h = half_of(field);
    SymbolElement ep = {h, h, z, z}, em = {h, -h, z, z};
    auto in_radical = [&](const SymbolElement& u) {
        return u.s0.is_zero() && u.sx.is_zero();
    };
    out.quotient_split = normalized_multiply(ep, ep) == ep &&
                         normalized_multiply(em, em) == em &&
                         normalized_multiply(ep, em).is_zero() &&
                         normalized_multiply(em, ep).is_zero() &&
                         ep + em == SymbolElement::unit(field) &&
                         !in_radical(ep) && !in_radical(em);
    return out;
}

const char* rep_type_name(RepTypeTag t) {
    switch (t) {
        case RepTypeTag::T1: return "T1";
        case RepTypeTag::T2: return "T2";
        case RepTypeTag::T3: return "T3";
        case RepTypeTag::T4: return "T4";
        case RepTypeTag::T5: return "T5";
    }
    return "?";
}

QuiverRep2 to_quiver_rep(const Rep2& rep) {
    const FieldPtr& f = rep.x.field();
    if (rep.x.rows() != 2 || rep.x.cols() != 2 || rep.y.rows() != 2 ||
        rep.y.cols() != 2 || rep.z.rows() != 2 || rep.z.cols() != 2)
        throw MathError("not-a-representation", "images must be 2x2");
    if (!rep.y.field()->same(*f) || !rep.z.field()->same(*f))
        throw MathError("ring-mismatch", "rep images over different fields");

    Mat id = Mat::identity(f, 2);
    Mat zero(f, 2, 2);
    const Mat &x = rep.x, &y = rep.y, &zz = rep.z;
    bool ok = x * x == id && y * y == zero && zz * zz == zero &&
              x * y == (zero - zz) && y * x == zz && x * zz == (zero - y) &&
              zz * x == y && y * zz == zero && zz * y == zero;
    if (!ok)
        throw MathError("not-a-representation", "defining relations violated");

    // Eigenspace bases for x; x^2 = 1 in odd characteristic makes the plane
    // split as the +1 and -1 eigenspaces.
    auto plus = (x - id).kernel_basis();
    auto minus = (x + id).kernel_basis();
    QuiverRep2 out;
    out.dim_plus = static_cast<int>(plus.size());
    out.dim_minus = static_cast<int>(minus.size());
    if (out.dim_plus + out.dim_minus != 2)
        throw MathError("not-a-representation", "eigenspaces do not span");

    Mat basis(f, 2, 2);
    int col = 0;
    for (auto& v : plus) {
        basis.at(0, col) = v[0];
        basis.at(1, col) = v[1];
        ++col;
    }
    for (auto& v : minus) {
        basis.at(0, col) = v[0];
        basis.at(1, col) = v[1];
        ++col;
    }
    Mat inv = basis.inverse();
    Fel h = half_of(f);
    Mat am = inv * ((y + zz) * h) * basis;
    Mat bm = inv * ((y - zz) * h) * basis;

    // In the adapted basis the arrow images must concentrate in the off
    // blocks: alpha maps the plus block into the minus block, beta back.
    auto block = [&](const Mat& m, int r0, int rn, int c0, int cn) {
        Mat sub(f, rn, cn);
        for (int r = 0; r < rn; ++r)
            for (int cidx = 0; cidx < cn; ++cidx)
                sub.at(r, cidx) = m.at(r0 + r, c0 + cidx);
        return sub;
    };
    int dp = out.dim_plus, dm = out.dim_minus;
    if (!block(am, 0, dp, 0, dp).is_zero() || !block(am, 0, dp, dp, dm).is_zero() ||
        !block(am, dp, dm, dp, dm).is_zero())
        throw MathError("not-a-representation", "alpha image escapes its block");
    if (!block(bm, dp, dm, 0, dp).is_zero() || !block(bm, 0, dp, 0, dp).is_zero() ||
        !block(bm, dp, dm, dp, dm).is_zero())
        throw MathError("not-a-representation", "beta image escapes its block");
    out.mat_alpha = block(am, dp, dm, 0, dp);
    out.mat_beta = block(bm, 0, dp, dp, dm);
    return out;
}

RepTypeTag classify_quiver(const QuiverRep2& q) {
    if (q.dim_plus + q.dim_minus != 2 || q.dim_plus < 0 || q.dim_minus < 0)
        throw MathError("not-a-representation", "vertex dimensions must sum to 2");
    if (q.dim_plus > 0 && q.dim_minus > 0) {
        if (!(q.mat_alpha * q.mat_beta).is_zero() ||
            !(q.mat_beta * q.mat_alpha).is_zero())
            throw MathError("not-a-representation", "composite arrows nonzero");
    }
    if (q.dim_plus == 2) return RepTypeTag::T4;
    if (q.dim_minus == 2) return RepTypeTag::T5;
    int ra = q.mat_alpha.rank(), rb = q.mat_beta.rank();
    if (ra == 1 && rb == 0) return RepTypeTag::T1;
    if (ra == 0 && rb == 1) return RepTypeTag::T2;
    if (ra == 0 && rb == 0) return RepTypeTag::T3;
    throw MathError("not-a-representation", "both arrows invertible");
}

RepTypeTag classify_rep2(const Rep2& rep) { return classify_quiver(to_quiver_rep(rep)); }

Rep2 standard_rep(const FieldPtr& f, RepTypeTag tag) {
    Fel one = Fel::one(f);
    Mat x(f, 2, 2), y(f, 2, 2), w(f, 2, 2);
    // Arrow scalars for the split (1,1) shapes; y = alpha + beta, z = alpha - beta.
    auto split = [&](long long aval, long long bval) {
        x.at(0, 0) = one;
        x.at(1, 1) = -one;
        Fel a = Fel::from_int(f, aval), b = Fel::from_int(f, bval);
        y.at(1, 0) = a;
        y.at(0, 1) = b;
        w.at(1, 0) = a;
        w.at(0, 1) = -b;
    };
    switch (tag) {
        case RepTypeTag::T1: split(1, 0); break;
        case RepTypeTag::T2: split(0, 1); break;
        case RepTypeTag::T3: split(0, 0); break;
        case RepTypeTag::T4:
            x = Mat::identity(f, 2);
            break;
        case RepTypeTag::T5:
            x = Mat::identity(f, 2) * (-one);
            break;
    }
    return {x, y, w};
}

KernelLine rep_kernel_line(const FieldGram& gram, const Rep2& rep) {
    Rank2Normalization n = normalize_rank2(gram);
    if (!rep.x.field()->same(*n.field))
        throw MathError("ring-mismatch",
                        "rep must live over the normalization field");
    QuiverRep2 q = to_quiver_rep(rep);
    RepTypeTag tag = classify_quiver(q);

    // Solve a1 x + a2 y + a3 z = 0 inside the span of the three symbols.
    Mat sys(n.field, 4, 3);
    const Mat* imgs[3] = {&rep.x, &rep.y, &rep.z};
    for (int j = 0; j < 3; ++j)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) sys.at(2 * r + c, j) = imgs[j]->at(r, c);
    auto ker = sys.kernel_basis();
    if (ker.size() != 1)
        throw MathError("kernel-not-a-line",
                        "kernel dimension " + std::to_string(ker.size()) +
                            " in the bivector span");

    FieldPtr kf = n.field;
    Embedding ext = Embedding::identity(kf);
    if (!sqrt_element(Fel::from_int(kf, -1))) {
        SqrtResult s = sqrt_in_extension(Fel::from_int(kf, -1));
        kf = s.field;
        ext = s.emb;
    }
    Fel iu = sqrt_element(Fel::from_int(kf, -1)).value();

    // Normalized-frame bivector coordinates of the kernel line, then wedge
    // transport back to the original frame: columns of the transport are the
    // 2x2 minors of the basis change on the index pairs (12), (23), (13).
    std::vector<Fel> keps = {iu * ext(ker[0][0]), iu * ext(ker[0][1]),
                             ext(ker[0][2])};
    const int pr[3][2] = {{0, 1}, {1, 2}, {0, 2}};
    Mat cl(kf, 3, 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) cl.at(r, c) = ext(n.change.at(r, c));
    Mat wedge(kf, 3, 3);
    for (int row = 0; row < 3; ++row)
        for (int col = 0; col < 3; ++col) {
            int r0 = pr[row][0], r1 = pr[row][1];
            int c0 = pr[col][0], c1 = pr[col][1];
            wedge.at(row, col) =
                cl.at(r0, c0) * cl.at(r1, c1) - cl.at(r1, c0) * cl.at(r0, c1);
        }
    std::vector<Fel> korig = wedge.apply(keps);
    Mat k_line = canonical_subspace(kf, {korig});

    // The annihilated plane of the wedge pairing v -> v ^ kappa.
    Mat pairing(kf, 1, 3);
    pairing.at(0, 0) = korig[1];
    pairing.at(0, 1) = -korig[2];
    pairing.at(0, 2) = korig[0];
    Mat k_plane = canonical_subspace(kf, pairing.kernel_basis());
    if (k_plane.rows() != 2)
        throw MathError("internal-check", "annihilated subspace is not a plane");

    // Isotropy of the plane under the original form.
    Mat glift(kf, 3, 3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) glift.at(r, c) = ext(n.emb(gram.at(r, c)));
    auto qval = [&](const std::vector<Fel>& v) {
        Fel acc = Fel::zero(kf);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) acc = acc + v[static_cast<std::size_t>(r)] *
                                                   glift.at(r, c) *
                                                   v[static_cast<std::size_t>(c)];
        return acc;
    };
    std::vector<Fel> v0 = {k_plane.at(0, 0), k_plane.at(0, 1), k_plane.at(0, 2)};
    std::vector<Fel> v1 = {k_plane.at(1, 0), k_plane.at(1, 1), k_plane.at(1, 2)};
    std::vector<Fel> vs = {v0[0] + v1[0], v0[1] + v1[1], v0[2] + v1[2]};
    if (!qval(v0).is_zero() || !qval(v1).is_zero() || !qval(vs).is_zero())
        throw MathError("internal-check", "kernel plane is not isotropic");

    // The bivector line is the wedge square of the plane.
    std::vector<Fel> wsq = {v0[0] * v1[1] - v0[1] * v1[0],
                            v0[1] * v1[2] - v0[2] * v1[1],
                            v0[0] * v1[2] - v0[2] * v1[0]};
    if (canonical_subspace(kf, {wsq}) != k_line)
        throw MathError("internal-check", "line is not the wedge of the plane");

    return {tag, kf, Embedding::compose(n.emb, ext), k_line, k_plane};
}

IsotropicSplit split_isotropic_planes(const FieldGram& gram) {
    Rank2Normalization n = normalize_rank2(gram);
    Rep2 r1 = standard_rep(n.field, RepTypeTag::T1);
    Rep2 r2 = standard_rep(n.field, RepTypeTag::T2);
    KernelLine k1 = rep_kernel_line(gram, r1);
    KernelLine k2 = rep_kernel_line(gram, r2);
    if (!k1.field->same(*k2.field))
        throw MathError("internal-check", "the two kernel fields differ");
    FieldPtr kf = k1.field;
    Fel iu = sqrt_element(Fel::from_int(kf, -1)).value();

    // Label by the normalized-frame planes, not the transported ones, so the
    // choice is independent of the original frame.
    auto normalized_plane = [&](const Rep2& rep) {
        Mat sys(n.field, 4, 3);
        const Mat* imgs[3] = {&rep.x, &rep.y, &rep.z};
        for (int j = 0; j < 3; ++j)
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    sys.at(2 * r + c, j) = imgs[j]->at(r, c);
        auto ker = sys.kernel_basis();
        Embedding lift = Embedding::find(n.field, kf);
        std::vector<Fel> keps = {iu * lift(ker[0][0]), iu * lift(ker[0][1]),
                                 lift(ker[0][2])};
        Mat pairing(kf, 1, 3);
        pairing.at(0, 0) = keps[1];
        pairing.at(0, 1) = -keps[2];
        pairing.at(0, 2) = keps[0];
        return canonical_subspace(kf, pairing.kernel_basis());
    };
    Mat p1 = normalized_plane(r1);
    Mat p2 = normalized_plane(r2);

    IsotropicSplit out{kf,
                       k1.emb,
                       Mat(),
                       Mat(),
                       Mat(),
                       Mat(),
                       RepTypeTag::T1,
                       RepTypeTag::T2};
    if (lex_mat_less(p2, p1)) {
        out.plane_plus = k2.k_plane;
        out.line_plus = k2.k_line;
        out.tag_plus = RepTypeTag::T2;
        out.plane_minus = k1.k_plane;
        out.line_minus = k1.k_line;
        out.tag_minus = RepTypeTag::T1;
    } else {
        out.plane_plus = k1.k_plane;
        out.line_plus = k1.k_line;
        out.tag_plus = RepTypeTag::T1;
        out.plane_minus = k2.k_plane;
        out.line_minus = k2.k_line;
        out.tag_minus = RepTypeTag::T2;
    }
    return out;
}

}  // namespace cliffordprym
