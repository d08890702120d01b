#include "hopf3/fpoly.hpp"

#include <deque>

namespace hopf3 {

namespace {

// Simplest rational in the open interval (lo, hi) via the Stern–Brocot walk.
Rat simplest_in(const Rat& lo, const Rat& hi) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    Rat f(fl);
    if (f + 1 < hi) return f + 1; // an integer strictly inside
    Rat a = lo - f, b = hi - f;   // now 0 <= a < b <= 1
    if (a == 0) {
        // simplest in (0, b) is the unit fraction 1/n with n minimal, 1/n < b
        Rat inv = 1 / b;
        mpz_class n;
        mpz_fdiv_q(n.get_mpz_t(), inv.get_num().get_mpz_t(), inv.get_den().get_mpz_t());
        Rat nn(n + 1);
        return f + 1 / nn;
    }
    return f + 1 / simplest_in(1 / b, 1 / a);
}

// Try to pin an isolated root of a rational square-free polynomial to an
// exact rational (Stern–Brocot convergents within the shrinking interval).
bool try_rational_root(IsolatedRoot& r) {
    if (r.exact) return true;
    for (int round = 0; round < 48; ++round) {
        if (r.iv.lo < r.iv.hi) {
            Rat cand = simplest_in(r.iv.lo, r.iv.hi);
            if (cand > r.iv.lo && cand < r.iv.hi && r.poly.eval(cand) == 0) {
                r.iv = IntervalQ{cand, cand};
                r.exact = true;
                return true;
            }
        }
        refine_root(r);
        if (r.exact) return true;
    }
    return false;
}

std::vector<FPoly> fpoly_sturm(const FPoly& p) {
    auto rem = [](FPoly a, const FPoly& b) {
        FieldElem lead_inv = b.c.back().inv();
        while (!a.is_zero() && a.deg() >= b.deg()) {
            FieldElem k = a.c.back() * lead_inv;
            int off = a.deg() - b.deg();
            for (int i = 0; i <= b.deg(); ++i)
                a.c[off + i] = a.c[off + i] - k * b.c[i];
            a.trim();
        }
        return a;
    };
    std::vector<FPoly> chain{p, p.derivative()};
    if (chain[1].is_zero()) { chain.pop_back(); return chain; }
    while (true) {
        FPoly r = rem(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        for (auto& e : r.c) e = -e;
        chain.push_back(std::move(r));
    }
    return chain;
}

int fp_sign_changes(const std::vector<FPoly>& chain, const Rat& x) {
    int changes = 0, prev = 0;
    for (const auto& p : chain) {
        int s = p.eval(x).sign();
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

FPoly fpoly_squarefree(const FPoly& p) {
    // gcd(p, p') via field Euclid, then exact division
    auto rem = [](FPoly a, const FPoly& b) {
        FieldElem lead_inv = b.c.back().inv();
        while (!a.is_zero() && a.deg() >= b.deg()) {
            FieldElem k = a.c.back() * lead_inv;
            int off = a.deg() - b.deg();
            for (int i = 0; i <= b.deg(); ++i)
                a.c[off + i] = a.c[off + i] - k * b.c[i];
            a.trim();
        }
        return a;
    };
    FPoly a = p, b = p.derivative();
    while (!b.is_zero()) {
        FPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.deg() <= 0) return p;
    // p / gcd
    FPoly q;
    FPoly rempoly = p;
    FieldElem lead_inv = a.c.back().inv();
    q.c.assign(p.deg() - a.deg() + 1, FieldElem());
    while (!rempoly.is_zero() && rempoly.deg() >= a.deg()) {
        FieldElem k = rempoly.c.back() * lead_inv;
        int off = rempoly.deg() - a.deg();
        q.c[off] = k;
        for (int i = 0; i <= a.deg(); ++i)
            rempoly.c[off + i] = rempoly.c[off + i] - k * a.c[i];
        rempoly.trim();
    }
    q.trim();
    return q;
}

} // namespace

QPoly norm_poly_from_field(const FPoly& p) {
    // Res_x(mod(x), sum_i p_i(x) y^i), square-free part.
    RootPtr root;
    for (const auto& e : p.c)
        if (e.root()) { root = e.root(); break; }
    if (!root) return qpoly_squarefree(p.to_qpoly());
    auto snap = root->snapshot();
    // q coefficients by powers of x, entries in Q[y]
    int dx = snap->modulus.deg();
    std::vector<QPoly> q(std::max(1, dx), QPoly{});
    for (size_t i = 0; i < p.c.size(); ++i) {
        // p_i as polynomial in alpha: reduced rep (aligned to this root)
        FieldElem e = p.c[i];
        if (e.root() && e.root() != root)
            throw std::logic_error("norm_poly_from_field: mixed fields");
        const auto& rep = e.coeffs();
        for (size_t j = 0; j < rep.size(); ++j) {
            if (rep[j] == 0) continue;
            if ((int)j >= (int)q.size()) q.resize(j + 1, QPoly{});
            q[j] = q[j] + QPoly::monomial(rep[j], (int)i);
        }
    }
    std::vector<QPoly> pm;
    for (const auto& k : snap->modulus.c) pm.push_back(QPoly::constant(k));
    QPoly res = resultant_xy(pm, q);
    if (res.is_zero())
        throw std::logic_error("norm_poly_from_field: zero resultant (non-generic)");
    return qpoly_squarefree(res);
}

std::vector<FieldElem> fpoly_real_roots(const FPoly& p0) {
    FPoly p = p0;
    p.trim();
    if (p.is_zero()) throw std::domain_error("fpoly_real_roots: zero polynomial");
    std::vector<FieldElem> out;
    if (p.deg() <= 0) return out;

    if (p.all_rational()) {
        auto roots = isolate_real_roots(p.to_qpoly());
        for (auto& r : roots) {
            try_rational_root(r);
            out.push_back(algebraic_from_root(r));
        }
        return out;
    }

    FPoly sf = fpoly_squarefree(p);
    auto chain = fpoly_sturm(sf);
    // Cauchy bound from coefficient enclosures
    Rat bound(1);
    {
        IntervalQ lead = sf.c.back().enclosure();
        while (lead.contains_zero()) {
            for (const auto& e : sf.c)
                if (e.root()) e.root()->refine();
            lead = sf.c.back().enclosure();
        }
        Rat lm = lead.mig();
        Rat mx(0);
        for (int i = 0; i < sf.deg(); ++i) mx = std::max(mx, sf.c[i].enclosure().mag());
        bound = Rat(1) + mx / lm;
    }
    struct Seg { Rat a, b; int n; };
    std::deque<Seg> work;
    int total = fp_sign_changes(chain, -bound) - fp_sign_changes(chain, bound);
    if (total > 0) work.push_back({-bound, bound, total});
    std::vector<IntervalQ> isolated;
    while (!work.empty()) {
        Seg s = work.front();
        work.pop_front();
        if (s.n == 1) { isolated.push_back(IntervalQ{s.a, s.b}); continue; }
        Rat mid = (s.a + s.b) / 2;
        while (sf.eval(mid).is_zero()) mid = (s.a + mid) / 2; // avoid landing on a root
        int nl = fp_sign_changes(chain, s.a) - fp_sign_changes(chain, mid);
        int nr = s.n - nl;
        if (nl > 0) work.push_back({s.a, mid, nl});
        if (nr > 0) work.push_back({mid, s.b, nr});
    }
    std::sort(isolated.begin(), isolated.end(),
              [](const IntervalQ& x, const IntervalQ& y) { return x.lo < y.lo; });

    // express each root over Q via the norm polynomial
    QPoly norm = norm_poly_from_field(sf);
    auto nroots = isolate_real_roots(norm);
    for (auto& iv : isolated) {
        // shrink the field-isolated interval until exactly one norm root fits
        IntervalQ cur = iv;
        auto inside = [&](IsolatedRoot& nr) {
            return nr.iv.lo >= cur.lo && nr.iv.hi <= cur.hi;
        };
        auto disjoint = [&](IsolatedRoot& nr) {
            return nr.iv.hi < cur.lo || nr.iv.lo > cur.hi;
        };
        for (int round = 0; round < 512; ++round) {
            int contained = -1;
            bool ambiguous = false;
            for (size_t i = 0; i < nroots.size(); ++i) {
                if (inside(nroots[i])) {
                    if (contained >= 0) ambiguous = true;
                    contained = (int)i;
                } else if (!disjoint(nroots[i])) {
                    ambiguous = true;
                }
            }
            if (!ambiguous && contained >= 0) {
                IsolatedRoot pick = nroots[contained];
                try_rational_root(pick);
                out.push_back(algebraic_from_root(pick));
                contained = -2;
            }
            if (contained == -2) break;
            // refine both sides
            for (auto& nr : nroots) refine_root(nr);
            // bisect cur against the field chain
            Rat mid = (cur.lo + cur.hi) / 2;
            while (sf.eval(mid).is_zero()) mid = (cur.lo + mid) / 2;
            if (fp_sign_changes(chain, cur.lo) - fp_sign_changes(chain, mid) == 1)
                cur = IntervalQ{cur.lo, mid};
            else
                cur = IntervalQ{mid, cur.hi};
            if (round == 511)
                throw std::runtime_error("fpoly_real_roots: failed to match norm root");
        }
    }
    return out;
}

} // namespace hopf3
