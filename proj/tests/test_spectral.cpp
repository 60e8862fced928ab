#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cliffordprym/error.hpp"
#include "cliffordprym/factor.hpp"
#include "cliffordprym/sampling.hpp"
#include "cliffordprym/spectral.hpp"

using namespace cliffordprym;

namespace {

FieldPtr F(long long p) { return FieldSpec::prime(p); }

UniPoly P(const FieldPtr& f, std::vector<long long> cs) {
    return UniPoly::from_ints(f, std::move(cs));
}

using PhiMat = std::array<std::array<UniPoly, 2>, 2>;

bool phi_equal(const PhiMat& a, const PhiMat& b) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
                  b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]))
                return false;
    return true;
}

}  // namespace

TEST_CASE("cover validation") {
    const FieldPtr f = F(13);
    CHECK_NOTHROW(SpectralCover(f, P(f, {1, 2, 0, 1})));
    CHECK_NOTHROW(SpectralCover(f, P(f, {1})));  // split, no ramification
    CHECK_THROWS_WITH_AS(SpectralCover(f, P(f, {0, 0, 1})),  // u^2
                         doctest::Contains("cover-singular"), MathError);
    CHECK_THROWS_WITH_AS(SpectralCover(f, UniPoly::zero(f)),
                         doctest::Contains("cover-singular"), MathError);
}

TEST_CASE("pushforward matrices are the frozen ones") {
    const FieldPtr f = F(13);
    const UniPoly s = P(f, {1, 2, 0, 1});  // u^3 + 2u + 1, squarefree
    const SpectralCover cover(f, s);
    const UniPoly zero = UniPoly::zero(f);
    const UniPoly one = P(f, {1});

    const HiggsPair triv = pushforward(cover, LineBundleOnCover::trivial(cover));
    CHECK((triv.basis_tags == std::array<std::string, 2>{"1", "t"}));
    CHECK(phi_equal(triv.phi, {{{zero, s}, {one, zero}}}));

    // s = u (u - 1): the ideal at the branch point u = 0.
    const SpectralCover split_cover(f, P(f, {0, -1, 1}));
    const HiggsPair ram = pushforward(
        split_cover,
        LineBundleOnCover::ramification_ideal(split_cover, P(f, {0, 1})));
    CHECK((ram.basis_tags == std::array<std::string, 2>{"s1", "t"}));
    CHECK(phi_equal(ram.phi, {{{zero, P(f, {-1, 1})}, {P(f, {0, 1}), zero}}}));

    const HiggsPair tw = pushforward(
        cover, LineBundleOnCover::pullback_twist(cover, P(f, {3, 0, 7})));
    CHECK((tw.basis_tags == std::array<std::string, 2>{"g", "g*t"}));
    CHECK(phi_equal(tw.phi, triv.phi));
}

TEST_CASE("characteristic identities") {
    const FieldPtr f = F(13);
    const SpectralCover cover(f, P(f, {1, 2, 0, 1}));
    CHECK(char_identity(pushforward(cover, LineBundleOnCover::trivial(cover)),
                        cover));

    // Split rank-1 situation: diagonal phi over s = 1.
    const SpectralCover unit(f, P(f, {1}));
    const UniPoly zero = UniPoly::zero(f);
    CHECK(char_identity(HiggsPair{{"1", "t"}, {{{P(f, {1}), zero}, {zero, P(f, {-1})}}}},
                        unit));
    // Nonzero trace fails.
    CHECK_FALSE(char_identity(
        HiggsPair{{"1", "t"}, {{{P(f, {1}), zero}, {zero, zero}}}}, unit));
}

TEST_CASE("ramification kernels at rational branch points") {
    const FieldPtr f = F(13);
    const Fel zero = Fel::from_int(f, 0);
    const Fel one = Fel::from_int(f, 1);

    const SpectralCover line(f, P(f, {0, 1}));  // s = u
    const HiggsPair triv = pushforward(line, LineBundleOnCover::trivial(line));
    const Mat k0 = ramification_kernel(triv, line, zero);
    REQUIRE(k0.rows() == 1);
    CHECK(k0.at(0, 0) == zero);
    CHECK(k0.at(0, 1) == one);

    const SpectralCover two(f, P(f, {0, -1, 1}));  // s = u (u - 1)
    const HiggsPair ram =
        pushforward(two, LineBundleOnCover::ramification_ideal(two, P(f, {0, 1})));
    const Mat k1 = ramification_kernel(ram, two, zero);
    CHECK(k1.at(0, 0) == one);
    CHECK(k1.at(0, 1) == zero);
    const Mat k2 = ramification_kernel(ram, two, one);
    CHECK(k2.rows() == 1);  // the other branch point is just as simple
    CHECK(k2.at(0, 0) == zero);
    CHECK(k2.at(0, 1) == one);

    CHECK_THROWS_WITH_AS(ramification_kernel(triv, line, Fel::from_int(f, 5)),
                         doctest::Contains("not-a-branch-point"), MathError);
}

TEST_CASE("kernels stay one-dimensional over extension branch points") {
    const FieldPtr f = F(13);
    const SpectralCover cover(f, P(f, {-2, 0, 1}));  // u^2 - 2, irreducible
    const HiggsPair h = pushforward(cover, LineBundleOnCover::trivial(cover));
    const FactoredRoots roots = factor_roots(cover.branch());
    REQUIRE(roots.roots.size() == 2);
    for (const auto& info : roots.roots) {
        CHECK(info.ext_degree == 2);
        const Mat k = ramification_kernel(h, cover, info.root);
        CHECK(k.rows() == 1);
        CHECK_FALSE(k.is_zero());
    }
}

TEST_CASE("random squarefree covers: identities and kernel ranks") {
    const FieldPtr f = F(13);
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const int deg = 1 + static_cast<int>(rng.below(6));
        const UniPoly s = random_squarefree(f, deg, rng);
        const SpectralCover cover(f, s);

        std::vector<LineBundleOnCover> shapes;
        shapes.push_back(LineBundleOnCover::trivial(cover));
        UniPoly g = UniPoly::zero(f);
        while (g.is_zero()) {
            std::vector<Fel> cs;
            for (int i = 0; i < 3; ++i) cs.push_back(random_element(f, rng));
            g = UniPoly(f, cs);
        }
        shapes.push_back(LineBundleOnCover::pullback_twist(cover, g));
        const auto factors = factor_poly(s);
        shapes.push_back(
            LineBundleOnCover::ramification_ideal(cover, factors.front().poly));

        for (const auto& lb : shapes) {
            const HiggsPair h = pushforward(cover, lb);
            CHECK(char_identity(h, cover));
            for (const auto& info : factor_roots(s).roots) {
                const Mat k = ramification_kernel(h, cover, info.root);
                CHECK(k.rows() == 1);
            }
        }
    }
}

TEST_CASE("pullback twists never change the matrix") {
    const FieldPtr f = F(13);
    const SpectralCover cover(f, P(f, {3, 1, 0, 0, 1}));
    const HiggsPair triv = pushforward(cover, LineBundleOnCover::trivial(cover));
    Rng rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        UniPoly g = UniPoly::zero(f);
        while (g.is_zero()) {
            std::vector<Fel> cs;
            for (int i = 0; i <= static_cast<int>(rng.below(4)); ++i)
                cs.push_back(random_element(f, rng));
            g = UniPoly(f, cs);
        }
        const HiggsPair tw =
            pushforward(cover, LineBundleOnCover::pullback_twist(cover, g));
        CHECK(phi_equal(tw.phi, triv.phi));
    }
}

TEST_CASE("squared ramification ideal is the pulled-back branch divisor") {
    const FieldPtr f = F(13);
    const SpectralCover cover(f, P(f, {0, -1, 0, 1}));  // u^3 - u
    const UniPoly s1 = P(f, {0, 1});                    // branch point u = 0
    const LineBundleOnCover ideal =
        LineBundleOnCover::ramification_ideal(cover, s1);
    const LineBundleOnCover squared = ideal.product(ideal);

    CHECK(squared.kind() == BundleKind::pullback_twist);
    CHECK(squared.twist() == s1);
    CHECK(squared.ramification() == P(f, {1}));

    const LineBundleOnCover direct = LineBundleOnCover::pullback_twist(cover, s1);
    CHECK(phi_equal(pushforward(cover, squared).phi,
                    pushforward(cover, direct).phi));
    // Both equal the free-module matrix: the twist is invisible downstairs.
    CHECK(phi_equal(pushforward(cover, squared).phi,
                    pushforward(cover, LineBundleOnCover::trivial(cover)).phi));
}

TEST_CASE("product normalization mixes twists and disjoint branch parts") {
    const FieldPtr f = F(13);
    const SpectralCover cover(f, P(f, {0, -1, 0, 1}));  // roots 0, 1, -1
    const auto at0 = LineBundleOnCover::ramification_ideal(cover, P(f, {0, 1}));
    const auto at1 = LineBundleOnCover::ramification_ideal(cover, P(f, {-1, 1}));
    const auto both = at0.product(at1);
    CHECK(both.kind() == BundleKind::ramification_ideal);
    CHECK(both.ramification() == P(f, {0, -1, 1}));  // u (u - 1)
    CHECK(both.twist() == P(f, {1}));

    const HiggsPair h = pushforward(cover, both);
    CHECK((h.basis_tags == std::array<std::string, 2>{"s1", "t"}));
    CHECK(char_identity(h, cover));
    // phi = [[0, s2],[s1, 0]] with s2 = u + 1 the complementary factor.
    CHECK(h.phi[0][1] == P(f, {1, 1}));
    CHECK(h.phi[1][0] == P(f, {0, -1, 1}));
}

TEST_CASE("unsupported shapes are rejected") {
    const FieldPtr f = F(13);
    const SpectralCover cover(f, P(f, {1, 2, 0, 1}));
    CHECK_THROWS_WITH_AS(
        LineBundleOnCover::ramification_ideal(cover, P(f, {0, 1})),  // u does not divide s
        doctest::Contains("unsupported-line-bundle"), MathError);
    CHECK_THROWS_WITH_AS(LineBundleOnCover::pullback_twist(cover, UniPoly::zero(f)),
                         doctest::Contains("unsupported-line-bundle"), MathError);
    const SpectralCover other(f, P(f, {0, 1}));
    CHECK_THROWS_WITH_AS(
        LineBundleOnCover::trivial(cover).product(LineBundleOnCover::trivial(other)),
        doctest::Contains("ring-mismatch"), MathError);
    CHECK_THROWS_WITH_AS(
        pushforward(other, LineBundleOnCover::trivial(cover)),
        doctest::Contains("ring-mismatch"), MathError);
}

TEST_CASE("generator presentations follow the canonical form") {
    const FieldPtr f = F(13);
    const SpectralCover cover(f, P(f, {0, -1, 1}));
    const auto triv = LineBundleOnCover::trivial(cover).generators();
    REQUIRE(triv.size() == 1);
    CHECK(triv[0].on_one == P(f, {1}));
    CHECK(triv[0].on_t.is_zero());

    const auto ram =
        LineBundleOnCover::ramification_ideal(cover, P(f, {0, 1})).generators();
    REQUIRE(ram.size() == 2);
    CHECK(ram[0].on_one == P(f, {0, 1}));
    CHECK(ram[0].on_t.is_zero());
    CHECK(ram[1].on_one.is_zero());
    CHECK(ram[1].on_t == P(f, {1}));
}
