#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "cliffordprym/factor.hpp"
#include "cliffordprym/matrix.hpp"

using namespace cliffordprym;

namespace {

// Verifies the complete root listing without any shared big extension: each
// Frobenius orbit must multiply back to one irreducible factor of f inside
// the orbit's own field, and the factors must multiply back to f over the
// base field.  Together that is the full reconstruction
// f = lead * prod (t - root)^mult, organized orbit by orbit.
void check_reconstruction(const UniPoly& f) {
    auto fr = factor_roots(f);
    auto facs = factor_poly(f);

    UniPoly base_prod = UniPoly::constant(fr.lead);
    for (auto& fac : facs)
        for (int j = 0; j < fac.multiplicity; ++j) base_prod = base_prod * fac.poly;
    CHECK(base_prod == f);

    std::map<std::pair<int, int>, std::vector<const RootInfo*>> orbits;
    for (auto& r : fr.roots) orbits[{r.ext_degree, r.orbit}].push_back(&r);

    int total = 0;
    std::vector<bool> used(facs.size(), false);
    for (auto& [key, group] : orbits) {
        FieldPtr ext = group.front()->field;
        int mult = group.front()->multiplicity;
        for (auto* r : group) {
            CHECK(r->field->same(*ext));
            CHECK(r->multiplicity == mult);
            total += r->multiplicity;
        }
        Embedding emb = Embedding::find(f.field(), ext);
        UniPoly flocal = map_coeffs(f, ext, [&](const Fel& c) { return emb(c); });
        for (auto* r : group) CHECK(flocal.eval(r->root).is_zero());

        // The orbit annihilates exactly one unused irreducible factor of the
        // matching degree; distinct monic irreducibles never share a root.
        std::size_t match = facs.size();
        for (std::size_t i = 0; i < facs.size(); ++i) {
            if (used[i] || facs[i].poly.degree() != static_cast<int>(group.size()))
                continue;
            UniPoly lift = map_coeffs(facs[i].poly, ext,
                                      [&](const Fel& c) { return emb(c); });
            if (lift.eval(group.front()->root).is_zero()) {
                match = i;
                break;
            }
        }
        REQUIRE(match < facs.size());
        used[match] = true;
        CHECK(facs[match].multiplicity == mult);

        UniPoly orbit_prod = UniPoly::constant(Fel::one(ext));
        for (auto* r : group)
            orbit_prod = orbit_prod * UniPoly(ext, {-(r->root), Fel::one(ext)});
        UniPoly factor_lift = map_coeffs(facs[match].poly, ext,
                                         [&](const Fel& c) { return emb(c); });
        CHECK(orbit_prod == factor_lift);
    }
    CHECK(total == f.degree());
    for (bool u : used) CHECK(u);
}

}  // namespace

TEST_CASE("polynomial arithmetic round trips") {
    auto f13 = FieldSpec::prime(13);
    UniPoly a = UniPoly::from_ints(f13, {1, 2, 0, 5});
    UniPoly b = UniPoly::from_ints(f13, {7, 3});
    auto [q, r] = (a * b + UniPoly::from_ints(f13, {4})).divmod(b);
    CHECK(q * b + r == a * b + UniPoly::from_ints(f13, {4}));
    CHECK(r.degree() < b.degree());
    CHECK((a * b).divide_exact(b) == a);
    CHECK(a.derivative() == UniPoly::from_ints(f13, {2, 0, 15}));
}

TEST_CASE("roots of t^2 - 1 over F_7 are 1 and 6") {
    auto f7 = FieldSpec::prime(7);
    auto fr = factor_roots(UniPoly::from_ints(f7, {-1, 0, 1}));
    REQUIRE(fr.roots.size() == 2);
    CHECK(fr.roots[0].ext_degree == 1);
    CHECK(fr.roots[1].ext_degree == 1);
    std::vector<long long> vals = {fr.roots[0].root.coords()[0],
                                   fr.roots[1].root.coords()[0]};
    std::sort(vals.begin(), vals.end());
    CHECK(vals == std::vector<long long>{1, 6});
    check_reconstruction(UniPoly::from_ints(f7, {-1, 0, 1}));
}

TEST_CASE("roots of t^2 + 1 over F_7 are a conjugate degree-2 pair") {
    auto f7 = FieldSpec::prime(7);
    UniPoly f = UniPoly::from_ints(f7, {1, 0, 1});
    // Oracle: no residue squares to -1 mod 7 (checked in test_field), so both
    // roots must sit in the quadratic extension and form one Frobenius orbit.
    auto fr = factor_roots(f);
    REQUIRE(fr.roots.size() == 2);
    CHECK(fr.roots[0].ext_degree == 2);
    CHECK(fr.roots[1].ext_degree == 2);
    CHECK(fr.roots[0].orbit == fr.roots[1].orbit);
    CHECK(fr.roots[0].root.frobenius() == fr.roots[1].root);
    CHECK(fr.roots[1].root.frobenius() == fr.roots[0].root);
    check_reconstruction(f);
}

TEST_CASE("double root of (t-3)^2 over F_13 reported with multiplicity 2") {
    auto f13 = FieldSpec::prime(13);
    UniPoly f = UniPoly::from_ints(f13, {9, -6, 1});
    auto fr = factor_roots(f);
    REQUIRE(fr.roots.size() == 1);
    CHECK(fr.roots[0].multiplicity == 2);
    CHECK(fr.roots[0].ext_degree == 1);
    CHECK(fr.roots[0].root == Fel::from_int(f13, 3));
}

TEST_CASE("zero polynomial is rejected") {
    auto f13 = FieldSpec::prime(13);
    CHECK_THROWS_AS(factor_roots(UniPoly::zero(f13)), MathError);
    CHECK_THROWS_AS(squarefree_decomposition(UniPoly::zero(f13)), MathError);
    CHECK_THROWS_AS(resultant(UniPoly::zero(f13), UniPoly::zero(f13)),
                    MathError);
}

TEST_CASE("random reconstruction across degrees up to 20") {
    auto f13 = FieldSpec::prime(13);
    Rng rng(42);
    for (int trial = 0; trial < 12; ++trial) {
        int deg = 2 + static_cast<int>(rng.below(19));
        std::vector<Fel> cs;
        for (int i = 0; i < deg; ++i) cs.push_back(random_element(f13, rng));
        cs.push_back(Fel::one(f13));
        UniPoly f(f13, std::move(cs));
        check_reconstruction(f);
    }
}

TEST_CASE("reconstruction over an extension coefficient field") {
    auto f9 = field_of_degree(3, 2);
    Rng rng(11);
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<Fel> cs;
        for (int i = 0; i < 4; ++i) cs.push_back(random_element(f9, rng));
        cs.push_back(Fel::one(f9));
        UniPoly f(f9, std::move(cs));
        check_reconstruction(f);
    }
}

TEST_CASE("squarefree decomposition splits multiplicities") {
    auto f5 = FieldSpec::prime(5);
    UniPoly t = UniPoly::variable(f5);
    UniPoly one = UniPoly::constant(Fel::one(f5));
    UniPoly f = (t - one) * (t - one) * (t + one) * t * t * t;
    auto sq = squarefree_decomposition(f);
    // multiplicities {1: t+1, 2: t-1, 3: t}
    REQUIRE(sq.size() == 3);
    UniPoly recon = one;
    for (auto& [g, m] : sq)
        for (int i = 0; i < m; ++i) recon = recon * g;
    CHECK(recon == f.monic());
    // p-th power multiplicities (derivative vanishes) still come out right.
    UniPoly g5 = (t - one);
    UniPoly p5 = g5 * g5 * g5 * g5 * g5;
    auto sq5 = squarefree_decomposition(p5 * (t + one));
    int maxmult = 0;
    for (auto& [g, m] : sq5) maxmult = std::max(maxmult, m);
    CHECK(maxmult == 5);
}

TEST_CASE("resultant of t^2+1 and t+3 over F_5 vanishes: shared root") {
    auto f5 = FieldSpec::prime(5);
    UniPoly f = UniPoly::from_ints(f5, {1, 0, 1});
    UniPoly g = UniPoly::from_ints(f5, {3, 1});
    // Independent confirmation: -3 = 2 satisfies 2^2 = 4 = -1 mod 5.
    CHECK(f.eval(Fel::from_int(f5, 2)).is_zero());
    CHECK(g.eval(Fel::from_int(f5, 2)).is_zero());
    CHECK(resultant(f, g).is_zero());
}

TEST_CASE("resultant vanishes iff gcd is nonconstant (Euclid cross-check)") {
    auto f13 = FieldSpec::prime(13);
    Rng rng(5);
    int vanishing = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Fel> ca, cb;
        int da = 1 + static_cast<int>(rng.below(5));
        int db = 1 + static_cast<int>(rng.below(5));
        for (int i = 0; i < da; ++i) ca.push_back(random_element(f13, rng));
        ca.push_back(Fel::one(f13));
        for (int i = 0; i < db; ++i) cb.push_back(random_element(f13, rng));
        cb.push_back(Fel::one(f13));
        UniPoly a(f13, ca), b(f13, cb);
        bool res_zero = resultant(a, b).is_zero();
        bool gcd_nontrivial = gcd_poly(a, b).degree() > 0;
        CHECK(res_zero == gcd_nontrivial);
        if (res_zero) ++vanishing;
        // Force some vanishing cases by sharing a linear factor.
        UniPoly lin = UniPoly(f13, {random_element(f13, rng), Fel::one(f13)});
        CHECK(resultant(a * lin, b * lin).is_zero());
    }
    CHECK(vanishing < 60);  // generic pairs are coprime
}

TEST_CASE("resultant multiplicativity spot check") {
    auto f13 = FieldSpec::prime(13);
    Rng rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        auto rnd = [&](int d) {
            std::vector<Fel> cs;
            for (int i = 0; i < d; ++i) cs.push_back(random_element(f13, rng));
            cs.push_back(Fel::one(f13));
            return UniPoly(f13, cs);
        };
        UniPoly a = rnd(2), b = rnd(3), c = rnd(2);
        CHECK(resultant(a * b, c) == resultant(a, c) * resultant(b, c));
    }
}

TEST_CASE("irreducibility test agrees with factorization") {
    auto f13 = FieldSpec::prime(13);
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        int deg = 2 + static_cast<int>(rng.below(6));
        std::vector<Fel> cs;
        for (int i = 0; i < deg; ++i) cs.push_back(random_element(f13, rng));
        cs.push_back(Fel::one(f13));
        UniPoly f(f13, cs);
        auto factors = factor_poly(f);
        bool irred = factors.size() == 1 && factors[0].multiplicity == 1 &&
                     factors[0].poly.degree() == deg;
        CHECK(is_irreducible(f) == irred);
    }
}
