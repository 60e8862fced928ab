#include "cliffordprym/prymcomb.hpp"

#include <algorithm>

#include "cliffordprym/error.hpp"

namespace cliffordprym {

namespace {

int mod2(long long v) { return static_cast<int>(((v % 2) + 2) % 2); }

int popcount_vec(const std::vector<int>& bits) {
    int w = 0;
    for (int b : bits) w += b;
    return w;
}

void check_bits(const std::vector<int>& bits, const char* what) {
    for (int b : bits)
        if (b != 0 && b != 1)
            throw MathError("bad-label", std::string(what) + " entries must be 0 or 1");
}

// Relative power-of-p map fixing the curve's base field.
Fel relative_frobenius(const Fel& x, int base_degree) {
    Fel y = x;
    for (int k = 0; k < base_degree; ++k) y = y.frobenius();
    return y;
}

std::vector<int> compute_orbits(const std::vector<IntersectionDatum>& pts,
                                int base_degree) {
    const int n = static_cast<int>(pts.size());
    std::vector<int> orbit(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
        if (orbit[static_cast<std::size_t>(i)] >= 0) continue;
        const int id = next++;
        orbit[static_cast<std::size_t>(i)] = id;
        if (pts[static_cast<std::size_t>(i)].at_infinity ||
            pts[static_cast<std::size_t>(i)].ext_degree == 1)
            continue;
        Fel x = pts[static_cast<std::size_t>(i)].parameter;
        const int r = pts[static_cast<std::size_t>(i)].ext_degree;
        for (int step = 1; step < r; ++step) {
            x = relative_frobenius(x, base_degree);
            bool found = false;
            for (int j = i + 1; j < n; ++j) {
                const auto& q = pts[static_cast<std::size_t>(j)];
                if (q.at_infinity || q.ext_degree != r) continue;
                if (orbit[static_cast<std::size_t>(j)] >= 0) continue;
                if (q.parameter == x) {
                    orbit[static_cast<std::size_t>(j)] = id;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw MathError("internal-check",
                                "conjugate of an intersection parameter is missing");
        }
    }
    return orbit;
}

bool mats_equal_over_same_spec(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a.at(i, j).coords() != b.at(i, j).coords()) return false;
    return true;
}

}  // namespace

bool CurveContext::lambda_frobenius_stable(const std::vector<int>& lambda) const {
    if (static_cast<int>(lambda.size()) != n)
        throw MathError("context-mismatch", "lambda length differs from point count");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (frobenius_orbit[static_cast<std::size_t>(i)] ==
                    frobenius_orbit[static_cast<std::size_t>(j)] &&
                lambda[static_cast<std::size_t>(i)] != lambda[static_cast<std::size_t>(j)])
                return false;
    return true;
}

ContextPtr build_context(const ConicFibration& fib, const ParamCurve& curve,
                         int base_e) {
    auto c = std::make_shared<CurveContext>(
        CurveContext{fib, curve, discriminant(fib), SmoothnessReport{}, {}, {}, {}, {},
                     base_e, 0});

    c->disc_smooth = is_smooth_curve(c->disc.form);
    if (!c->disc_smooth.smooth)
        throw MathError("not-simple-degeneration",
                        "the degeneration curve is singular");

    IntersectionResult inter = intersect_curve_discriminant(fib, curve);
    for (std::size_t i = 0; i < inter.points.size(); ++i)
        if (gram_rank(inter.points[i].local_gram) != 2)
            throw MathError("not-simple-degeneration",
                            "fiber degenerates past corank one at point " +
                                std::to_string(i));
    if (!inter.transversal)
        throw MathError("outside-U_d",
                        "curve meets the degeneration locus non-transversally");

    c->points = std::move(inter.points);
    c->n = static_cast<int>(c->points.size());
    c->cover_pairs.reserve(c->points.size());
    for (const auto& datum : c->points)
        c->cover_pairs.push_back(split_degenerate_conic(datum));
    c->frobenius_orbit = compute_orbits(c->points, curve.field()->degree());
    c->base_lift.assign(static_cast<std::size_t>(c->n), 0);
    return c;
}

int ModuleFiberData::weight() const { return popcount_vec(lambda); }

int ModuleFiberData::e() const { return ctx->base_e + 2 * twist + weight(); }

ModuleFiberData base_module(const ContextPtr& ctx) {
    return ModuleFiberData{ctx, std::vector<int>(static_cast<std::size_t>(ctx->n), 0), 0};
}

void for_each_fiber_element(
    const ContextPtr& ctx, int e,
    const std::function<void(const ModuleFiberData&)>& fn) {
    const int n = ctx->n;
    if (n > 26) throw MathError("enumeration-bound", "too many points to enumerate");
    const int parity = mod2(e - ctx->base_e);
    for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
        const int w = __builtin_popcountll(mask);
        if (w % 2 != parity) continue;
        std::vector<int> lambda(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i)
            if (mask & (1ULL << i)) lambda[static_cast<std::size_t>(i)] = 1;
        const int twist = (e - ctx->base_e - w) / 2;
        fn(ModuleFiberData{ctx, std::move(lambda), twist});
    }
}

std::vector<ModuleFiberData> fiber_elements(const ContextPtr& ctx, int e) {
    if (ctx->n > 12)
        throw MathError("enumeration-bound",
                        "eager fiber listing is limited to 12 points; "
                        "use the streaming form");
    std::vector<ModuleFiberData> out;
    out.reserve(ctx->n > 0 ? (1ULL << (ctx->n - 1)) : 1);
    for_each_fiber_element(ctx, e,
                           [&out](const ModuleFiberData& m) { out.push_back(m); });
    return out;
}

int EvenSubsetElement::weight() const { return popcount_vec(mu); }

std::vector<EvenSubsetElement> even_subsets(int n) {
    if (n < 0 || n > 20)
        throw MathError("enumeration-bound", "group listing is limited to 20 points");
    std::vector<EvenSubsetElement> out;
    out.reserve(n > 0 ? (1ULL << (n - 1)) : 1);
    for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
        if (__builtin_popcountll(mask) % 2 != 0) continue;
        std::vector<int> mu(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i)
            if (mask & (1ULL << i)) mu[static_cast<std::size_t>(i)] = 1;
        out.push_back(EvenSubsetElement{std::move(mu)});
    }
    return out;
}

ModuleFiberData group_act(const EvenSubsetElement& g, const ModuleFiberData& m) {
    if (g.mu.size() != m.lambda.size())
        throw MathError("context-mismatch", "group element size differs from module");
    check_bits(g.mu, "mu");
    check_bits(m.lambda, "lambda");
    const int wmu = popcount_vec(g.mu);
    if (wmu % 2 != 0)
        throw MathError("not-a-group-element", "subset must have even size");
    ModuleFiberData out = m;
    int overlap = 0;
    for (std::size_t i = 0; i < g.mu.size(); ++i) {
        if (g.mu[i] && m.lambda[i]) ++overlap;
        out.lambda[i] = m.lambda[i] ^ g.mu[i];
    }
    out.twist = m.twist + overlap - wmu / 2;
    if (out.e() != m.e())
        throw MathError("internal-check", "group action moved the degree invariant");
    return out;
}

ModuleFiberData half_twist(const ModuleFiberData& m, int index) {
    if (index < 0 || index >= m.ctx->n)
        throw MathError("bad-index", "point index out of range");
    ModuleFiberData out = m;
    auto& bit = out.lambda[static_cast<std::size_t>(index)];
    if (bit == 1) {
        bit = 0;
        out.twist = m.twist + 1;
    } else {
        bit = 1;
    }
    if (out.e() != m.e() + 1)
        throw MathError("internal-check", "half twist must raise the degree by one");
    return out;
}

ModuleFiberData twist_by(const ModuleFiberData& m, int k) {
    ModuleFiberData out = m;
    out.twist += k;
    return out;
}

ChernCharacter chern_char(const ModuleFiberData& m) {
    return ChernCharacter{0, 2 * m.ctx->curve.degree(), m.e()};
}

LiftedDivisor lift_to_cover(const ModuleFiberData& m) {
    LiftedDivisor out{m.ctx, m.ctx->base_lift};
    for (std::size_t i = 0; i < out.choices.size(); ++i)
        out.choices[i] ^= m.lambda[i];
    return out;
}

int half_index(const LiftedDivisor& a, const LiftedDivisor& b) {
    if (a.ctx.get() != b.ctx.get())
        throw MathError("context-mismatch",
                        "lifted divisors live on different contexts");
    int diff = 0;
    for (std::size_t i = 0; i < a.choices.size(); ++i)
        if (a.choices[i] != b.choices[i]) ++diff;
    return diff % 2;
}

ParityReport parity_rule_check(const ContextPtr& ctx, int e_lo, int e_hi) {
    if (e_hi < e_lo) throw MathError("bad-range", "empty degree range");
    ParityReport report;
    report.n = ctx->n;
    report.d = ctx->curve.degree();
    report.base_e = ctx->base_e;
    const LiftedDivisor base{ctx, ctx->base_lift};
    bool all_uniform = true;
    for (int e = e_lo; e <= e_hi; ++e) {
        ParityFiberRow row;
        row.e = e;
        for_each_fiber_element(ctx, e, [&](const ModuleFiberData& m) {
            ++row.fiber_size;
            ++row.half_histogram[static_cast<std::size_t>(
                half_index(lift_to_cover(m), base))];
        });
        row.uniform = row.half_histogram[0] == row.fiber_size ||
                      row.half_histogram[1] == row.fiber_size;
        if (row.uniform)
            row.half_vs_base = row.half_histogram[1] == row.fiber_size ? 1 : 0;
        all_uniform = all_uniform && row.uniform;
        report.rows.push_back(row);
    }
    bool alternates = true;
    bool two_periodic = true;
    for (std::size_t k = 0; k + 1 < report.rows.size(); ++k)
        if (report.rows[k].half_vs_base == report.rows[k + 1].half_vs_base)
            alternates = false;
    for (std::size_t k = 0; k + 2 < report.rows.size(); ++k)
        if (report.rows[k].half_vs_base != report.rows[k + 2].half_vs_base)
            two_periodic = false;
    report.pass = all_uniform && alternates && two_periodic;
    return report;
}

namespace {

// Element of the quadratic cover's coordinate ring near the branch point:
// ev(s) + od(s) t with t^2 = s.
struct CoverElem {
    UniPoly ev, od;
};

CoverElem ce_zero(const FieldPtr& f) { return {UniPoly::zero(f), UniPoly::zero(f)}; }

CoverElem ce_mul(const CoverElem& a, const CoverElem& b) {
    const UniPoly s = UniPoly::variable(a.ev.field());
    return {a.ev * b.ev + (a.od * b.od) * s, a.ev * b.od + a.od * b.ev};
}

CoverElem ce_add(const CoverElem& a, const CoverElem& b) {
    return {a.ev + b.ev, a.od + b.od};
}

using CoverMat = std::array<std::array<CoverElem, 2>, 2>;

CoverMat cm_mul(const CoverMat& a, const CoverMat& b) {
    const FieldPtr f = a[0][0].ev.field();
    CoverMat out{{{ce_zero(f), ce_zero(f)}, {ce_zero(f), ce_zero(f)}}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = ce_add(
                    out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                    ce_mul(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                           b[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]));
    return out;
}

bool cm_equal(const CoverMat& a, const CoverMat& b) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const auto& x = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            const auto& y = b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (!(x.ev - y.ev).is_zero() || !(x.od - y.od).is_zero()) return false;
        }
    return true;
}

CoverMat cm_scale(const CoverElem& c, const CoverMat& a) {
    CoverMat out = a;
    for (auto& row : out)
        for (auto& entry : row) entry = ce_mul(c, entry);
    return out;
}

// Matrix of a generator in a frame (v1, v2) of the even part, where
// v1 = s^k e1 and v2 = t e2.  Columns are the frame coordinates of the
// generator applied to the frame vectors.
std::array<std::array<UniPoly, 2>, 2> frame_matrix(const CoverMat& gen,
                                                   const UniPoly& v1_scale) {
    const FieldPtr f = v1_scale.field();
    const UniPoly s = UniPoly::variable(f);
    std::array<std::array<UniPoly, 2>, 2> m{
        {{UniPoly::zero(f), UniPoly::zero(f)}, {UniPoly::zero(f), UniPoly::zero(f)}}};
    for (int col = 0; col < 2; ++col) {
        // Frame vector as an element of R'^2 over (e1, e2).
        std::array<CoverElem, 2> v{ce_zero(f), ce_zero(f)};
        if (col == 0)
            v[0].ev = v1_scale;
        else
            v[1].od = UniPoly::from_ints(f, {1});
        std::array<CoverElem, 2> image{ce_zero(f), ce_zero(f)};
        for (int i = 0; i < 2; ++i)
            for (int k = 0; k < 2; ++k)
                image[static_cast<std::size_t>(i)] = ce_add(
                    image[static_cast<std::size_t>(i)],
                    ce_mul(gen[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                           v[static_cast<std::size_t>(k)]));
        // First coordinate multiplies v1 = v1_scale * e1, second multiplies
        // v2 = t e2; mixed parities cannot appear.
        if (!image[0].od.is_zero() || !image[1].ev.is_zero())
            throw MathError("internal-check", "frame image has mixed parity");
        auto [q, r] = image[0].ev.divmod(v1_scale);
        if (!r.is_zero())
            throw MathError("internal-check", "frame image not divisible by the scale");
        m[0][static_cast<std::size_t>(col)] = q;
        m[1][static_cast<std::size_t>(col)] = image[1].od;
    }
    return m;
}

std::vector<Fel> kernel_in_span_bc(
    const std::array<std::array<std::array<UniPoly, 2>, 2>, 4>& mats,
    const FieldPtr& f) {
    const Fel zero = Fel::from_int(f, 0);
    // Columns: images of b and c at s = 0, flattened to length 4.
    Mat m(f, 4, 2);
    for (int g = 2; g < 4; ++g)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                m.at(2 * i + j, g - 2) =
                    mats[static_cast<std::size_t>(g)][static_cast<std::size_t>(i)]
                        [static_cast<std::size_t>(j)]
                            .eval(zero);
    auto basis = m.kernel_basis();
    if (basis.size() != 1)
        throw MathError("internal-check",
                        "kernel inside span(b, c) must be one-dimensional");
    return basis[0];
}

}  // namespace

LocalModelReport local_model(const FieldPtr& field) {
    if (field->characteristic() == 2)
        throw MathError("bad-field", "characteristic two is not supported");
    LocalModelReport report;
    report.field = field;

    const FieldPtr f = field;
    const UniPoly one = UniPoly::from_ints(f, {1});
    const UniPoly neg_one = UniPoly::constant(Fel::from_int(f, -1));
    const UniPoly s = UniPoly::variable(f);
    const CoverElem t{UniPoly::zero(f), one};
    const CoverElem neg_t{UniPoly::zero(f), neg_one};
    const CoverElem zero = ce_zero(f);

    const CoverElem even_one{one, UniPoly::zero(f)};
    const CoverElem even_neg_one{neg_one, UniPoly::zero(f)};
    const CoverElem even_s{s, UniPoly::zero(f)};
    const CoverElem even_neg_s{neg_one * s, UniPoly::zero(f)};
    const CoverMat gen_i{{{even_one, zero}, {zero, even_one}}};
    const CoverMat gen_a{{{even_neg_one, zero}, {zero, even_one}}};
    const CoverMat gen_b{{{zero, t}, {t, zero}}};
    const CoverMat gen_c{{{zero, t}, {neg_t, zero}}};
    const std::array<CoverMat, 4> gens = {gen_i, gen_a, gen_b, gen_c};

    bool rel = cm_equal(cm_mul(gen_a, gen_a), gen_i);
    rel = rel && cm_equal(cm_mul(gen_b, gen_b), cm_scale(even_s, gen_i));
    rel = rel && cm_equal(cm_mul(gen_c, gen_c), cm_scale(even_neg_s, gen_i));
    const auto anti = [&](const CoverMat& u, const CoverMat& v) {
        const CoverMat uv = cm_mul(u, v);
        const CoverMat vu = cm_scale(even_neg_one, cm_mul(v, u));
        return cm_equal(uv, vu);
    };
    rel = rel && anti(gen_a, gen_b) && anti(gen_a, gen_c) && anti(gen_b, gen_c);
    report.relations_hold = rel;
    if (!rel) throw MathError("internal-check", "local generator relations failed");

    for (int g = 0; g < 4; ++g) {
        report.frame_plain[static_cast<std::size_t>(g)] =
            frame_matrix(gens[static_cast<std::size_t>(g)], one);
        report.frame_scaled[static_cast<std::size_t>(g)] =
            frame_matrix(gens[static_cast<std::size_t>(g)], s);
    }

    report.kernel_plain = kernel_in_span_bc(report.frame_plain, f);
    report.kernel_scaled = kernel_in_span_bc(report.frame_scaled, f);
    report.kernels_differ = report.kernel_plain != report.kernel_scaled;
    report.grading = {0, 1};
    report.character_product_negative =
        mod2(report.grading[0] + report.grading[1]) == 1;
    return report;
}

LiftConsistencyReport rep_lift_consistency(const ModuleFiberData& m) {
    const CurveContext& ctx = *m.ctx;
    LiftConsistencyReport report;
    report.n = ctx.n;
    const LiftedDivisor lift = lift_to_cover(m);
    report.chosen = lift.choices;
    report.pass = true;
    for (int i = 0; i < ctx.n; ++i) {
        const auto& pair = ctx.cover_pairs[static_cast<std::size_t>(i)];
        const auto label_ok = [](RepTypeTag tag) {
            return tag == RepTypeTag::T1 || tag == RepTypeTag::T2;
        };
        if (!label_ok(pair.tag_plus) || !label_ok(pair.tag_minus) ||
            pair.tag_plus == pair.tag_minus)
            throw MathError("internal-check",
                            "component classes at a point must be T1 and T2");
        const int choice = lift.choices[static_cast<std::size_t>(i)];
        const RepTypeTag tag = choice == 0 ? pair.tag_plus : pair.tag_minus;
        const Mat& target = choice == 0 ? pair.line_plus : pair.line_minus;
        const auto& gram = ctx.points[static_cast<std::size_t>(i)].local_gram;
        const Rank2Normalization norm = normalize_rank2(gram);
        const Rep2 rep = standard_rep(norm.field, tag);
        if (classify_rep2(rep) != tag)
            throw MathError("internal-check", "standard representative misclassified");
        const KernelLine kl = rep_kernel_line(gram, rep);
        report.types.push_back(kl.tag);
        const bool same_field = kl.field->same(*pair.field);
        const bool same_plane = same_field && mats_equal_over_same_spec(kl.k_plane, target);
        report.pass = report.pass && same_plane && kl.tag == tag;
    }
    return report;
}

}  // namespace cliffordprym
