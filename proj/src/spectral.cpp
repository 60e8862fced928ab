#include "cliffordprym/spectral.hpp"

#include "cliffordprym/error.hpp"
#include "cliffordprym/factor.hpp"

namespace cliffordprym {

namespace {

UniPoly one_poly(const FieldPtr& f) { return UniPoly::from_ints(f, {1}); }

bool is_one(const UniPoly& p) {
    return p.degree() == 0 && p.lead() == Fel::from_int(p.field(), 1);
}

UniPoly monic_of(const UniPoly& p) { return p.monic(); }

}  // namespace

SpectralCover::SpectralCover(FieldPtr field, UniPoly branch)
    : field_(std::move(field)), branch_(std::move(branch)) {
    if (field_->characteristic() == 2)
        throw MathError("bad-field", "characteristic two is not supported");
    if (branch_.is_zero() || gcd_poly(branch_, branch_.derivative()).degree() != 0)
        throw MathError("cover-singular", "branch polynomial must be squarefree");
}

bool SpectralCover::same(const SpectralCover& o) const {
    return field_->same(*o.field_) && branch_ == o.branch_;
}

const char* bundle_kind_name(BundleKind k) {
    switch (k) {
        case BundleKind::trivial: return "trivial";
        case BundleKind::ramification_ideal: return "ramification-ideal";
        case BundleKind::pullback_twist: return "pullback-twist";
    }
    return "unknown";
}

LineBundleOnCover::LineBundleOnCover(SpectralCover cover, UniPoly twist,
                                     UniPoly ram)
    : cover_(std::move(cover)), twist_(std::move(twist)), ram_(std::move(ram)) {
    if (twist_.is_zero())
        throw MathError("unsupported-line-bundle", "twist polynomial must be nonzero");
    if (ram_.is_zero() || !(ram_.lead() == Fel::from_int(ram_.field(), 1)))
        throw MathError("unsupported-line-bundle",
                        "ramification part must be monic");
    if (!ram_.divides(cover_.branch()))
        throw MathError("unsupported-line-bundle",
                        "ramification part must divide the branch polynomial");
    // Rank-one certificate: the generators over the basis (1, t) of the
    // cover ring form a presentation matrix with nonzero determinant.
    const UniPoly det = twist_ * ram_ * twist_;
    if (det.is_zero())
        throw MathError("unsupported-line-bundle", "presentation is degenerate");
}

LineBundleOnCover LineBundleOnCover::trivial(const SpectralCover& cover) {
    const FieldPtr& f = cover.field();
    return LineBundleOnCover(cover, one_poly(f), one_poly(f));
}

LineBundleOnCover LineBundleOnCover::ramification_ideal(const SpectralCover& cover,
                                                        const UniPoly& s1) {
    if (s1.is_zero())
        throw MathError("unsupported-line-bundle", "zero ramification divisor");
    return LineBundleOnCover(cover, one_poly(cover.field()), monic_of(s1));
}

LineBundleOnCover LineBundleOnCover::pullback_twist(const SpectralCover& cover,
                                                    const UniPoly& g) {
    return LineBundleOnCover(cover, g, one_poly(cover.field()));
}

LineBundleOnCover LineBundleOnCover::product(const LineBundleOnCover& other) const {
    if (!cover_.same(other.cover_))
        throw MathError("ring-mismatch", "bundles live on different covers");
    // (t, a)(t, b) = (gcd(a, b)) * (t, ab / gcd^2): the shared branch part
    // becomes a pullback factor.
    const UniPoly c = gcd_poly(ram_, other.ram_);
    const UniPoly merged_ram = (ram_ * other.ram_).divide_exact(c * c);
    return LineBundleOnCover(cover_, twist_ * other.twist_ * c, merged_ram);
}

BundleKind LineBundleOnCover::kind() const {
    if (!is_one(ram_)) return BundleKind::ramification_ideal;
    if (!is_one(twist_)) return BundleKind::pullback_twist;
    return BundleKind::trivial;
}

std::vector<RingElem2> LineBundleOnCover::generators() const {
    const UniPoly zero = UniPoly::zero(cover_.field());
    if (is_one(ram_)) return {RingElem2{twist_, zero}};
    return {RingElem2{twist_ * ram_, zero}, RingElem2{zero, twist_}};
}

HiggsPair pushforward(const SpectralCover& cover, const LineBundleOnCover& lb) {
    if (!lb.cover().same(cover))
        throw MathError("ring-mismatch", "bundle belongs to a different cover");
    const FieldPtr& f = cover.field();
    const UniPoly& s = cover.branch();
    const UniPoly& g = lb.twist();
    const UniPoly& s1 = lb.ramification();
    const UniPoly s2 = s.divide_exact(s1);

    // Basis (g s1, g t); multiplication by t sends the first vector to
    // s1 (g t) and the second to g s = s2 (g s1).  Both coordinates come
    // out of exact divisions so any mismatch would be caught here.
    const UniPoly b1 = g * s1;
    const UniPoly lower_left = (g * s1).divide_exact(g);
    const UniPoly upper_right = (g * s).divide_exact(b1);
    if (!(lower_left == s1) || !(upper_right == s2))
        throw MathError("internal-check", "pushforward coordinates disagree");

    HiggsPair out;
    switch (lb.kind()) {
        case BundleKind::trivial:
            out.basis_tags = {"1", "t"};
            break;
        case BundleKind::pullback_twist:
            out.basis_tags = {"g", "g*t"};
            break;
        case BundleKind::ramification_ideal:
            out.basis_tags = is_one(lb.twist())
                                 ? std::array<std::string, 2>{"s1", "t"}
                                 : std::array<std::string, 2>{"g*s1", "g*t"};
            break;
    }
    const UniPoly zero = UniPoly::zero(f);
    out.phi = {{{zero, upper_right}, {lower_left, zero}}};
    return out;
}

bool char_identity(const HiggsPair& h, const SpectralCover& cover) {
    const FieldPtr& f = cover.field();
    const UniPoly& s = cover.branch();
    const auto& m = h.phi;
    const UniPoly trace = m[0][0] + m[1][1];
    if (!trace.is_zero()) return false;
    const UniPoly det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (!(det + s).is_zero()) return false;
    // phi^2 = s Id entrywise.
    const UniPoly zero = UniPoly::zero(f);
    const std::array<std::array<UniPoly, 2>, 2> target = {{{s, zero}, {zero, s}}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            UniPoly entry = zero;
            for (int k = 0; k < 2; ++k)
                entry = entry + m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                                    m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            if (!(entry ==
                  target[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]))
                return false;
        }
    return true;
}

Mat ramification_kernel(const HiggsPair& h, const SpectralCover& cover,
                        const Fel& r) {
    const FieldPtr& rf = r.field();
    const Embedding emb = Embedding::find(cover.field(), rf);
    const auto lift = [&](const UniPoly& p) {
        return map_coeffs(p, rf, [&](const Fel& c) { return emb(c); });
    };
    if (!(lift(cover.branch()).eval(r) == Fel::from_int(rf, 0)))
        throw MathError("not-a-branch-point",
                        "kernel is only defined at roots of the branch polynomial");
    Mat m(rf, 2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            m.at(i, j) =
                lift(h.phi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                    .eval(r);
    const auto basis = m.kernel_basis();
    if (basis.size() != 1)
        throw MathError("internal-check",
                        "kernel at a simple branch point must be a line");
    Mat out(rf, 1, 2);
    out.at(0, 0) = basis[0][0];
    out.at(0, 1) = basis[0][1];
    return out;
}

}  // namespace cliffordprym
