#include "cliffordprym/factor.hpp"

#include <algorithm>
#include <map>

namespace cliffordprym {
namespace {

constexpr std::uint64_t kSplitSeed = 0x5eedc0de5eedc0deULL;

// Inverse of x -> x^p on the coefficient field (bijective on finite fields).
Fel pth_root_elem(const Fel& a) {
    const FieldPtr& f = a.field();
    mpz_class e = f->order() / static_cast<long>(f->characteristic());
    return a.pow(e);
}

// For f with vanishing derivative (f a polynomial in t^p): the g with
// g(t)^p = f(t).
UniPoly pth_root_poly(const UniPoly& f) {
    long long p = f.field()->characteristic();
    std::vector<Fel> out;
    for (int i = 0; i <= f.degree(); ++i) {
        Fel c = f.coeff(i);
        if (i % p != 0) {
            if (!c.is_zero())
                throw MathError("bad-factorization",
                                "not a p-th power polynomial");
            continue;
        }
        out.push_back(pth_root_elem(c));
    }
    return UniPoly(f.field(), std::move(out));
}

UniPoly random_poly_below(const FieldPtr& f, int degree_bound, Rng& rng) {
    std::vector<Fel> cs;
    cs.reserve(degree_bound);
    for (int i = 0; i < degree_bound; ++i) cs.push_back(random_element(f, rng));
    return UniPoly(f, std::move(cs));
}

// Cantor-Zassenhaus equal-degree splitting: h is a squarefree monic product
// of irreducibles all of degree r.
void equal_degree_split(const UniPoly& h, int r, Rng& rng,
                        std::vector<UniPoly>& out) {
    if (h.degree() == r) {
        out.push_back(h);
        return;
    }
    const FieldPtr& f = h.field();
    mpz_class qr;
    {
        mpz_class q = f->order();
        mpz_pow_ui(qr.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(r));
    }
    mpz_class e = (qr - 1) / 2;
    while (true) {
        UniPoly u = random_poly_below(f, h.degree(), rng);
        if (u.is_zero()) continue;
        UniPoly g = gcd_poly(u, h);
        if (g.degree() > 0 && g.degree() < h.degree()) {
            equal_degree_split(g, r, rng, out);
            equal_degree_split(h.divide_exact(g).monic(), r, rng, out);
            return;
        }
        UniPoly w = pow_mod(u, e, h) - UniPoly::constant(Fel::one(f));
        g = gcd_poly(w, h);
        if (g.degree() > 0 && g.degree() < h.degree()) {
            equal_degree_split(g, r, rng, out);
            equal_degree_split(h.divide_exact(g).monic(), r, rng, out);
            return;
        }
    }
}

// Distinct-degree decomposition of a squarefree monic polynomial: pairs
// (product of irreducible factors of degree r, r).
std::vector<std::pair<UniPoly, int>> distinct_degree(const UniPoly& g0) {
    const FieldPtr& f = g0.field();
    mpz_class q = f->order();
    std::vector<std::pair<UniPoly, int>> out;
    UniPoly g = g0;
    UniPoly h = UniPoly::variable(f).rem(g);
    int r = 0;
    while (g.degree() > 0) {
        ++r;
        if (2 * r > g.degree()) {
            out.emplace_back(g, g.degree());
            break;
        }
        h = pow_mod(h, q, g);
        UniPoly d = gcd_poly(h - UniPoly::variable(f), g);
        if (d.degree() > 0) {
            out.emplace_back(d, r);
            g = g.divide_exact(d).monic();
            h = h.rem(g);
        }
    }
    return out;
}

}  // namespace

std::vector<std::pair<UniPoly, int>> squarefree_decomposition(
    const UniPoly& f0) {
    if (f0.is_zero())
        throw MathError("zero-polynomial", "squarefree decomposition of 0");
    UniPoly f = f0.monic();
    std::vector<std::pair<UniPoly, int>> out;
    if (f.degree() == 0) return out;
    long long p = f.field()->characteristic();
    UniPoly d = f.derivative();
    if (d.is_zero()) {
        for (auto& [g, m] : squarefree_decomposition(pth_root_poly(f)))
            out.emplace_back(g, m * static_cast<int>(p));
        return out;
    }
    UniPoly T = gcd_poly(f, d);
    UniPoly V = f.divide_exact(T).monic();
    int k = 0;
    while (V.degree() > 0) {
        ++k;
        UniPoly W = gcd_poly(T, V);
        UniPoly A = V.divide_exact(W).monic();
        if (A.degree() > 0) out.emplace_back(A, k);
        T = T.divide_exact(W).monic();
        V = W;
    }
    if (T.degree() > 0) {
        for (auto& [g, m] : squarefree_decomposition(pth_root_poly(T)))
            out.emplace_back(g, m * static_cast<int>(p));
    }
    return out;
}

std::vector<IrreducibleFactor> factor_poly(const UniPoly& f) {
    if (f.is_zero()) throw MathError("zero-polynomial", "factorization of 0");
    std::vector<IrreducibleFactor> out;
    Rng rng(kSplitSeed);
    for (auto& [sq, mult] : squarefree_decomposition(f)) {
        for (auto& [prod, r] : distinct_degree(sq)) {
            std::vector<UniPoly> irred;
            equal_degree_split(prod, r, rng, irred);
            std::sort(irred.begin(), irred.end(),
                      [](const UniPoly& a, const UniPoly& b) {
                          if (a.degree() != b.degree())
                              return a.degree() < b.degree();
                          for (int i = a.degree(); i >= 0; --i) {
                              if (a.coeff(i) != b.coeff(i))
                                  return a.coeff(i).lex_less(b.coeff(i));
                          }
                          return false;
                      });
            for (auto& h : irred) out.push_back({h, mult});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const IrreducibleFactor& a, const IrreducibleFactor& b) {
                  if (a.poly.degree() != b.poly.degree())
                      return a.poly.degree() < b.poly.degree();
                  for (int i = a.poly.degree(); i >= 0; --i) {
                      if (a.poly.coeff(i) != b.poly.coeff(i))
                          return a.poly.coeff(i).lex_less(b.poly.coeff(i));
                  }
                  return a.multiplicity < b.multiplicity;
              });
    return out;
}

bool is_irreducible(const UniPoly& f) {
    int n = f.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    const FieldPtr& k = f.field();
    mpz_class q = k->order();
    UniPoly x = UniPoly::variable(k);
    mpz_class qn;
    mpz_pow_ui(qn.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n));
    if (!(pow_mod(x, qn, f) - x.rem(f)).is_zero()) return false;
    int m = n;
    for (int l = 2; l * l <= m; ++l) {
        if (m % l) continue;
        while (m % l == 0) m /= l;
        mpz_class e;
        mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(),
                   static_cast<unsigned long>(n / l));
        if (gcd_poly(pow_mod(x, e, f) - x.rem(f), f).degree() != 0)
            return false;
    }
    if (m > 1) {
        mpz_class e;
        mpz_pow_ui(e.get_mpz_t(), q.get_mpz_t(),
                   static_cast<unsigned long>(n / m));
        if (gcd_poly(pow_mod(x, e, f) - x.rem(f), f).degree() != 0)
            return false;
    }
    return true;
}

FieldPtr field_of_degree(long long p, int n) {
    if (n <= 0) throw MathError("bad-field", "extension degree must be >= 1");
    if (n == 1) return FieldSpec::prime(p);
    if (n == 2) return quadratic_extension_of_prime(p);
    FieldPtr fp = FieldSpec::prime(p);
    // Deterministic seeded search; the seed mixes (p, n) so each target field
    // gets a reproducible modulus.
    Rng rng(kSplitSeed ^ (static_cast<std::uint64_t>(p) << 20) ^
            static_cast<std::uint64_t>(n));
    for (int attempt = 0; attempt < 20000; ++attempt) {
        std::vector<Fel> cs;
        for (int i = 0; i < n; ++i) cs.push_back(random_element(fp, rng));
        cs.push_back(Fel::one(fp));
        UniPoly cand(fp, std::move(cs));
        if (cand.degree() == n && is_irreducible(cand)) {
            std::vector<long long> mod;
            for (int i = 0; i <= n; ++i) mod.push_back(cand.coeff(i).coords()[0]);
            return FieldSpec::extension(p, std::move(mod));
        }
    }
    throw MathError("bad-field", "irreducible modulus search exhausted");
}

Embedding Embedding::identity(const FieldPtr& f) {
    Fel gen = f->kind() == FieldKind::Extension
                  ? Fel::from_coords(f, {0, 1})
                  : Fel::one(f);
    return Embedding(f, f, gen);
}

Embedding Embedding::find(const FieldPtr& from, const FieldPtr& to) {
    if (from->same(*to)) return identity(from);
    if (!from->finite() || !to->finite() ||
        from->characteristic() != to->characteristic() ||
        to->degree() % from->degree() != 0)
        throw MathError("bad-field", "no embedding between these fields");
    if (from->kind() == FieldKind::Prime) {
        return Embedding(from, to, Fel::one(to));
    }
    // Image of the generator = canonical (lex-least) root of the source
    // modulus inside the target.
    UniPoly h = UniPoly::from_ints(to, std::vector<long long>(
                                           from->modulus().begin(),
                                           from->modulus().end()));
    std::vector<Fel> roots;
    for (auto& fac : factor_poly(h)) {
        if (fac.poly.degree() == 1)
            roots.push_back(-fac.poly.coeff(0) / fac.poly.coeff(1));
    }
    if (roots.empty())
        throw MathError("bad-field", "source modulus has no root in target");
    Fel best = roots[0];
    for (auto& r : roots)
        if (r.lex_less(best)) best = r;
    return Embedding(from, to, best);
}

Embedding Embedding::compose(const Embedding& first, const Embedding& second) {
    if (!first.to_->same(*second.from_))
        throw MathError("ring-mismatch", "embeddings do not chain");
    return Embedding(first.from_, second.to_, second(first.gen_image_));
}

Fel Embedding::operator()(const Fel& x) const {
    if (!x.field()->same(*from_))
        throw MathError("ring-mismatch", "embedding applied to foreign element");
    if (from_->same(*to_)) return x;
    Fel acc = Fel::zero(to_);
    const auto& cs = x.coords();
    for (size_t i = cs.size(); i-- > 0;)
        acc = acc * gen_image_ + Fel::from_int(to_, cs[i]);
    return acc;
}

FactoredRoots factor_roots(const UniPoly& f) {
    if (f.is_zero()) throw MathError("zero-polynomial", "roots of 0");
    const FieldPtr& k = f.field();
    if (!k->finite())
        throw MathError("bad-field", "root listing requires a finite field");
    FactoredRoots out{f.is_zero() ? Fel() : f.lead(), {}};
    if (f.degree() == 0) return out;
    int orbit = 0;
    for (auto& fac : factor_poly(f)) {
        int r = fac.poly.degree();
        if (r == 1) {
            out.roots.push_back({-fac.poly.coeff(0) / fac.poly.coeff(1),
                                 fac.multiplicity, 1, orbit, k});
            ++orbit;
            continue;
        }
        std::vector<Fel> orbit_roots;
        if (k->kind() == FieldKind::Prime) {
            // Present the root field by the factor itself; the generator is a
            // root and its Frobenius orbit exhausts the conjugates.
            std::vector<long long> mod;
            for (int i = 0; i <= r; ++i)
                mod.push_back(fac.poly.coeff(i).coords()[0]);
            FieldPtr ext = FieldSpec::extension(k->characteristic(), mod);
            Fel root = Fel::from_coords(ext, {0, 1});
            Fel cur = root;
            for (int j = 0; j < r; ++j) {
                orbit_roots.push_back(cur);
                cur = cur.frobenius();
            }
        } else {
            // Coefficients already live in an extension: move to the
            // canonical compositum and split there.
            FieldPtr ext =
                field_of_degree(k->characteristic(), k->degree() * r);
            Embedding emb = Embedding::find(k, ext);
            UniPoly lifted =
                map_coeffs(fac.poly, ext, [&](const Fel& c) { return emb(c); });
            std::vector<Fel> roots;
            for (auto& lf : factor_poly(lifted)) {
                if (lf.poly.degree() != 1)
                    throw MathError("bad-factorization",
                                    "factor fails to split in compositum");
                roots.push_back(-lf.poly.coeff(0) / lf.poly.coeff(1));
            }
            // One Frobenius orbit over k: walk x -> x^{|k|} from the
            // lex-least root for a canonical listing order.
            Fel start = roots[0];
            for (auto& rt : roots)
                if (rt.lex_less(start)) start = rt;
            Fel cur = start;
            mpz_class qk = k->order();
            for (int j = 0; j < r; ++j) {
                orbit_roots.push_back(cur);
                cur = cur.pow(qk);
            }
        }
        for (auto& rt : orbit_roots)
            out.roots.push_back({rt, fac.multiplicity, r, orbit, rt.field()});
        ++orbit;
    }
    std::stable_sort(out.roots.begin(), out.roots.end(),
                     [](const RootInfo& a, const RootInfo& b) {
                         if (a.ext_degree != b.ext_degree)
                             return a.ext_degree < b.ext_degree;
                         return a.orbit < b.orbit;
                     });
    return out;
}

SqrtResult sqrt_in_extension(const Fel& a) {
    const FieldPtr& k = a.field();
    if (auto r = sqrt_element(a))
        return {*r, k, Embedding::identity(k)};
    if (!k->finite())
        throw MathError("not-a-square",
                        "no square root in the gaussian rationals and no "
                        "tower support for number fields");
    FieldPtr ext = field_of_degree(k->characteristic(), 2 * k->degree());
    Embedding emb = Embedding::find(k, ext);
    auto r = sqrt_element(emb(a));
    if (!r)
        throw MathError("bad-field",
                        "element not a square in its quadratic extension");
    return {*r, ext, emb};
}

}  // namespace cliffordprym
