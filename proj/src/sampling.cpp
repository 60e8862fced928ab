#include "cliffordprym/sampling.hpp"

#include "cliffordprym/error.hpp"
#include "cliffordprym/smooth.hpp"

namespace cliffordprym {

namespace {

constexpr int kAttempts = 1000;

BiForm random_biform(const FieldPtr& f, int degree, Rng& rng) {
    std::vector<Fel> coeffs;
    coeffs.reserve(static_cast<std::size_t>(degree) + 1);
    for (int i = 0; i <= degree; ++i) coeffs.push_back(random_element(f, rng));
    return BiForm(degree, UniPoly(f, coeffs));
}

}  // namespace

TriPoly random_form(const FieldPtr& f, int degree, Rng& rng) {
    TriPoly out = TriPoly::zero(f);
    for (int i = 0; i <= degree; ++i)
        for (int j = 0; i + j <= degree; ++j) {
            const int k = degree - i - j;
            out = out + TriPoly::monomial(f, random_element(f, rng), i, j, k);
        }
    return out;
}

ConicFibration demo_fibration(const FieldPtr& f, std::uint64_t seed) {
    Rng rng(seed);
    const std::array<int, 3> twists = {0, 0, 1};
    const int line_twist = 1;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        std::array<std::array<TriPoly, 3>, 3> entries{
            {{TriPoly::zero(f), TriPoly::zero(f), TriPoly::zero(f)},
             {TriPoly::zero(f), TriPoly::zero(f), TriPoly::zero(f)},
             {TriPoly::zero(f), TriPoly::zero(f), TriPoly::zero(f)}}};
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                const int deg = twists[static_cast<std::size_t>(i)] +
                                twists[static_cast<std::size_t>(j)] + line_twist;
                TriPoly e = random_form(f, deg, rng);
                entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e;
                entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = e;
            }
        ConicFibration fib(f, twists, line_twist, entries);
        const DiscriminantCurve disc = discriminant(fib);
        if (disc.form.is_zero()) continue;
        const SmoothnessReport rep = is_smooth_curve(disc.form);
        if (rep.smooth) return fib;
    }
    throw MathError("generation-failed",
                    "no smooth degeneration curve found in 1000 attempts");
}

ParamCurve random_transversal_curve(const ConicFibration& fib, int d,
                                    std::uint64_t seed) {
    if (d != 1 && d != 2)
        throw MathError("unsupported-degree", "curve degree must be 1 or 2");
    const FieldPtr& f = fib.field();
    const int disc_degree = discriminant(fib).degree;
    Rng rng(seed);
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        std::array<BiForm, 3> rho = {random_biform(f, d, rng),
                                     random_biform(f, d, rng),
                                     random_biform(f, d, rng)};
        try {
            ParamCurve curve(f, d, rho);
            const IntersectionResult inter = intersect_curve_discriminant(fib, curve);
            if (inter.transversal &&
                static_cast<int>(inter.points.size()) == d * disc_degree)
                return curve;
        } catch (const MathError&) {
            continue;
        }
    }
    throw MathError("generation-failed",
                    "no transversal curve found in 1000 attempts");
}

UniPoly random_squarefree(const FieldPtr& f, int degree, Rng& rng) {
    if (degree < 1) throw MathError("bad-degree", "need degree at least one");
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        std::vector<Fel> coeffs;
        coeffs.reserve(static_cast<std::size_t>(degree) + 1);
        for (int i = 0; i < degree; ++i) coeffs.push_back(random_element(f, rng));
        coeffs.push_back(Fel::from_int(f, 1));
        UniPoly s(f, coeffs);
        if (gcd_poly(s, s.derivative()).degree() == 0) return s;
    }
    throw MathError("generation-failed",
                    "no squarefree polynomial found in 1000 attempts");
}

}  // namespace cliffordprym
