#include "hopf3/qpoly.hpp"

#include <deque>

namespace hopf3 {

std::vector<IsolatedRoot> isolate_real_roots(const QPoly& p) {
    if (p.is_zero()) throw std::domain_error("root isolation of the zero polynomial");
    QPoly sf = qpoly_squarefree(p);
    std::vector<IsolatedRoot> out;
    if (sf.deg() <= 0) return out;
    auto chain = sturm_chain(sf);
    Rat b = cauchy_bound(sf);

    struct Seg { Rat a, b; int n; };
    std::deque<Seg> work;
    {
        int total = sturm_count(chain, -b, b);
        if (total > 0) work.push_back({-b, b, total});
    }
    while (!work.empty()) {
        Seg s = work.front();
        work.pop_front();
        if (s.n == 1) {
            // shrink until the left endpoint is not a root and the interval
            // is reasonably tight; endpoints stay non-roots by construction
            out.push_back({sf, IntervalQ{s.a, s.b}, false});
            continue;
        }
        Rat mid = (s.a + s.b) / 2;
        if (sf.eval(mid) == 0) {
            out.push_back({sf, IntervalQ{mid, mid}, true});
            // perturb around the exact root so the halves exclude it
            Rat eps = (s.b - s.a);
            Rat lo = mid, hi = mid;
            do {
                eps /= 4;
                lo = mid - eps;
                hi = mid + eps;
            } while (sf.eval(lo) == 0 || sf.eval(hi) == 0);
            int nl = sturm_count(chain, s.a, lo);
            int nr = sturm_count(chain, hi, s.b);
            if (nl > 0) work.push_back({s.a, lo, nl});
            if (nr > 0) work.push_back({hi, s.b, nr});
        } else {
            int nl = sturm_count(chain, s.a, mid);
            int nr = s.n - nl;
            if (nl > 0) work.push_back({s.a, mid, nl});
            if (nr > 0) work.push_back({mid, s.b, nr});
        }
    }
    std::sort(out.begin(), out.end(), [](const IsolatedRoot& x, const IsolatedRoot& y) {
        return x.iv.hi < y.iv.lo || (x.iv.lo < y.iv.lo);
    });
    // tighten every interval a little so comparisons downstream are cheap
    for (auto& r : out)
        for (int i = 0; i < 4 && !r.exact; ++i) refine_root(r);
    return out;
}

void refine_root(IsolatedRoot& r) {
    if (r.exact) return;
    Rat mid = (r.iv.lo + r.iv.hi) / 2;
    Rat v = r.poly.eval(mid);
    if (v == 0) {
        r.iv = IntervalQ{mid, mid};
        r.exact = true;
        return;
    }
    // sign change decides the half (endpoints are non-roots of square-free poly)
    Rat va = r.poly.eval(r.iv.lo);
    if ((va > 0) != (v > 0))
        r.iv = IntervalQ{r.iv.lo, mid};
    else
        r.iv = IntervalQ{mid, r.iv.hi};
}

int sign_at_root(const QPoly& p, IsolatedRoot r) {
    if (p.is_zero()) return 0;
    // p vanishes at the root iff gcd(p, r.poly) does
    QPoly g = qpoly_gcd(p, r.poly);
    if (g.deg() >= 1) {
        if (r.exact) {
            if (g.eval(r.iv.lo) == 0) return 0;
        } else {
            auto chain = sturm_chain(g);
            if (sturm_count(chain, r.iv.lo, r.iv.hi) > 0) return 0;
        }
    } else if (r.exact) {
        Rat v = p.eval(r.iv.lo);
        return v > 0 ? 1 : (v < 0 ? -1 : 0);
    }
    for (int iter = 0; iter < 4096; ++iter) {
        IntervalQ v = p.eval(r.iv);
        if (v.sign() != 0) return v.sign();
        refine_root(r);
        if (r.exact) {
            Rat w = p.eval(r.iv.lo);
            return w > 0 ? 1 : (w < 0 ? -1 : 0);
        }
    }
    throw std::runtime_error("sign_at_root: refinement did not converge");
}

Rat qpoly_resultant(QPoly a, QPoly b) {
    if (a.is_zero() || b.is_zero()) return Rat(0);
    Rat res(1);
    while (true) {
        if (b.deg() == 0) {
            res *= rat_pow(b.lead(), (unsigned)std::max(0, a.deg()));
            return res;
        }
        QPoly r = qpoly_rem(a, b);
        if (r.is_zero()) return Rat(0);
        // res(a,b) = (-1)^{deg a * deg b} res(b,a); res(b, r) relation:
        // res(a,b) = lc(b)^{deg a - deg r} * (-1)^{deg a deg b} * res(b,r)
        int da = a.deg(), db = b.deg(), dr = r.deg();
        Rat factor = rat_pow(b.lead(), (unsigned)(da - dr));
        if ((da % 2) && (db % 2)) factor = -factor;
        res *= factor;
        a = std::move(b);
        b = std::move(r);
    }
}

} // namespace hopf3
