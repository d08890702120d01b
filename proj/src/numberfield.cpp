#include "hopf3/numberfield.hpp"

#include <sstream>

namespace hopf3 {

namespace {

// Extended gcd over Q[x]: g = gcd(a,b) monic, with u*a + v*b = g.
void qpoly_extgcd(QPoly a, QPoly b, QPoly& g, QPoly& u, QPoly& v) {
    QPoly u0 = QPoly::constant(Rat(1)), v0;
    QPoly u1, v1 = QPoly::constant(Rat(1));
    while (!b.is_zero()) {
        QPoly q, r;
        qpoly_divmod(a, b, q, r);
        QPoly u2 = u0 - q * u1, v2 = v0 - q * v1;
        a = std::move(b); b = std::move(r);
        u0 = std::move(u1); u1 = std::move(u2);
        v0 = std::move(v1); v1 = std::move(v2);
    }
    if (a.is_zero()) { g = a; u = u0; v = v0; return; }
    Rat k = Rat(1) / a.lead();
    g = k * a; u = k * u0; v = k * v0;
}

// Does g vanish at the root tracked by `root`? g is assumed to divide the
// current modulus (so root count in the isolating interval is 0 or 1).
bool vanishes_at(const QPoly& g, const RootPtr& root) {
    auto s = root->snapshot();
    if (s->exact) return g.eval(s->iv.lo) == 0;
    auto chain = sturm_chain(g);
    return sturm_count(chain, s->iv.lo, s->iv.hi) > 0;
}

// Sylvester-matrix resultant with respect to x of p(x) and q(x), where the
// coefficients of q live in Q[y]; p has rational coefficients. Gaussian
// elimination over Q(y) done with QPoly fractions via Bareiss would be
// neater; plain fraction arithmetic is fine at these degrees.
struct RatFuncQ {
    QPoly num, den; // den != 0
    RatFuncQ() : num{}, den{QPoly::constant(Rat(1))} {}
    RatFuncQ(QPoly n) : num(std::move(n)), den(QPoly::constant(Rat(1))) {}
    bool is_zero() const { return num.is_zero(); }
    void normalize() {
        if (num.is_zero()) { den = QPoly::constant(Rat(1)); return; }
        QPoly g = qpoly_gcd(num, den);
        if (g.deg() >= 1) {
            QPoly q, r;
            qpoly_divmod(num, g, q, r); num = q;
            qpoly_divmod(den, g, q, r); den = q;
        }
        Rat k = Rat(1) / den.lead();
        num = k * num; den = k * den;
    }
    friend RatFuncQ operator*(const RatFuncQ& a, const RatFuncQ& b) {
        RatFuncQ r; r.num = a.num * b.num; r.den = a.den * b.den; r.normalize(); return r;
    }
    friend RatFuncQ operator-(const RatFuncQ& a, const RatFuncQ& b) {
        RatFuncQ r; r.num = a.num * b.den - b.num * a.den; r.den = a.den * b.den; r.normalize(); return r;
    }
    friend RatFuncQ operator/(const RatFuncQ& a, const RatFuncQ& b) {
        if (b.is_zero()) throw std::domain_error("RatFuncQ division by zero");
        RatFuncQ r; r.num = a.num * b.den; r.den = a.den * b.num; r.normalize(); return r;
    }
};

} // namespace

QPoly resultant_xy(const std::vector<QPoly>& p, const std::vector<QPoly>& q) {
    // p, q: coefficient lists in x (entries in Q[y]), highest degree last.
    int m = (int)p.size() - 1, n = (int)q.size() - 1;
    if (m < 0 || n < 0) return {};
    int N = m + n;
    std::vector<std::vector<RatFuncQ>> a(N, std::vector<RatFuncQ>(N));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) a[i][i + j] = RatFuncQ(p[m - j]);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) a[n + i][i + j] = RatFuncQ(q[n - j]);
    // fraction Gaussian elimination, determinant accumulation
    RatFuncQ det{QPoly::constant(Rat(1))};
    for (int col = 0; col < N; ++col) {
        int piv = -1;
        for (int r = col; r < N; ++r)
            if (!a[r][col].is_zero()) { piv = r; break; }
        if (piv < 0) return {};
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det.num = Rat(-1) * det.num;
        }
        det = det * a[col][col];
        for (int r = col + 1; r < N; ++r) {
            if (a[r][col].is_zero()) continue;
            RatFuncQ f = a[r][col] / a[col][col];
            for (int cidx = col; cidx < N; ++cidx)
                a[r][cidx] = a[r][cidx] - f * a[col][cidx];
        }
    }
    det.normalize();
    if (det.den.deg() != 0) throw std::logic_error("resultant_xy: non-polynomial determinant");
    return Rat(1) / det.den.c[0] * det.num;
}

void FieldElem::reduce() {
    if (!root_) { while (!c_.empty() && c_.back() == 0) c_.pop_back(); return; }
    auto s = root_->snapshot();
    QPoly rep{std::vector<Rat>(c_)};
    if (rep.deg() >= s->modulus.deg()) rep = qpoly_rem(rep, s->modulus);
    c_ = std::move(rep.c);
    if (c_.size() <= 1) root_ = nullptr; // collapsed to a rational
}

bool FieldElem::is_zero() const {
    if (!root_) return c_.empty();
    QPoly rep{std::vector<Rat>(c_)};
    if (rep.is_zero()) return true;
    auto s = root_->snapshot();
    QPoly g = qpoly_gcd(rep, s->modulus);
    if (g.deg() < 1) return false;
    return vanishes_at(g, root_);
}

FieldElem FieldElem::operator-() const {
    FieldElem r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

void FieldElem::align(FieldElem& a, FieldElem& b) {
    if (!a.root_ || !b.root_ || a.root_ == b.root_) return;
    auto pr = join_fields(a, b);
    a = pr.first;
    b = pr.second;
}

FieldElem operator+(const FieldElem& a0, const FieldElem& b0) {
    FieldElem a = a0, b = b0;
    FieldElem::align(a, b);
    FieldElem r;
    r.root_ = a.root_ ? a.root_ : b.root_;
    r.c_.assign(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r.c_[i] += b.c_[i];
    r.reduce();
    return r;
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

FieldElem operator*(const FieldElem& a0, const FieldElem& b0) {
    FieldElem a = a0, b = b0;
    FieldElem::align(a, b);
    FieldElem r;
    r.root_ = a.root_ ? a.root_ : b.root_;
    QPoly prod = QPoly{std::vector<Rat>(a.c_)} * QPoly{std::vector<Rat>(b.c_)};
    r.c_ = std::move(prod.c);
    r.reduce();
    return r;
}

FieldElem FieldElem::inv() const {
    if (is_zero()) throw std::domain_error("FieldElem: inverse of zero");
    if (!root_) { FieldElem r; r.c_ = {Rat(1) / c_[0]}; return r; }
    RootPtr root = root_;
    QPoly rep{std::vector<Rat>(c_)};
    for (int guard = 0; guard < 64; ++guard) {
        auto s = root->snapshot();
        QPoly mod = s->modulus;
        QPoly e = qpoly_rem(rep, mod);
        if (e.is_zero()) throw std::domain_error("FieldElem: inverse of zero");
        QPoly g = qpoly_gcd(e, mod);
        if (g.deg() < 1) {
            QPoly gg, u, v;
            qpoly_extgcd(e, mod, gg, u, v);
            // u*e = 1 mod modulus (gg is the constant 1)
            return FieldElem(root, u);
        }
        // zero divisor: alpha is a root of exactly one of g, mod/g
        if (vanishes_at(g, root)) {
            root->shrink(g);
        } else {
            QPoly q, r;
            qpoly_divmod(mod, g, q, r);
            root->shrink(q);
        }
    }
    throw std::runtime_error("FieldElem::inv: modulus refinement did not terminate");
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) { return a * b.inv(); }

IntervalQ FieldElem::enclosure() const {
    if (!root_) return IntervalQ{c_.empty() ? Rat(0) : c_[0]};
    auto s = root_->snapshot();
    return QPoly{std::vector<Rat>(c_)}.eval(s->iv);
}

int FieldElem::sign() const {
    if (is_zero()) return 0;
    for (int iter = 0; iter < 4096; ++iter) {
        IntervalQ e = enclosure();
        if (e.sign() != 0) return e.sign();
        root_->refine();
    }
    throw std::runtime_error("FieldElem::sign: refinement did not converge");
}

double FieldElem::to_double() const {
    if (!root_) return c_.empty() ? 0.0 : rat_double(c_[0]);
    for (int i = 0; i < 80; ++i) {
        IntervalQ e = enclosure();
        if (rat_double(e.width()) < 1e-15 * (1.0 + std::abs(rat_double(e.lo)))) break;
        root_->refine();
    }
    IntervalQ e = enclosure();
    return rat_double((e.lo + e.hi) / 2);
}

std::string FieldElem::str() const {
    if (!root_) return c_.empty() ? "0" : rat_str(c_[0]);
    std::ostringstream os;
    os << "alg[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << rat_str(c_[i]);
    }
    auto s = root_->snapshot();
    os << " ; m=";
    for (size_t i = 0; i < s->modulus.c.size(); ++i) {
        if (i) os << ",";
        os << rat_str(s->modulus.c[i]);
    }
    os << " ; iv=" << rat_str(s->iv.lo) << ".." << rat_str(s->iv.hi) << "]";
    return os.str();
}

QPoly minimalish_poly(const FieldElem& e) {
    if (e.is_rational())
        return QPoly{{-e.rational_value(), Rat(1)}};
    auto s = e.root()->snapshot();
    // Res_x(modulus(x), y - e(x)) as a polynomial in y
    std::vector<QPoly> p;  // modulus: Q[y]-coeff view (constants)
    for (const auto& k : s->modulus.c) p.push_back(QPoly::constant(k));
    // q(x) = y - e(x): coefficients in y by powers of x
    std::vector<QPoly> q;
    const auto& ec = e.coeffs();
    for (size_t i = 0; i < ec.size(); ++i) {
        QPoly ci = QPoly::constant(-ec[i]);
        if (i == 0) ci = ci + QPoly::monomial(Rat(1), 1); // + y
        q.push_back(ci);
    }
    if (q.empty()) q.push_back(QPoly::monomial(Rat(1), 1));
    QPoly res = resultant_xy(p, q);
    if (res.is_zero()) throw std::logic_error("minimalish_poly: zero resultant");
    return qpoly_squarefree(res);
}

FieldElem algebraic_from_root(const IsolatedRoot& r) {
    if (r.exact) return FieldElem(r.iv.lo);
    // degree-1 factor shortcut
    QPoly sf = r.poly;
    if (sf.deg() == 1) return FieldElem(-sf.c[0] / sf.c[1]);
    auto handle = std::make_shared<RootHandle>(sf, r.iv, false);
    return FieldElem::alpha(handle);
}

std::pair<FieldElem, FieldElem> join_fields(const FieldElem& a, const FieldElem& b) {
    if (a.is_rational() || b.is_rational() || a.root() == b.root()) return {a, b};
    QPoly pa = minimalish_poly(a), pb = minimalish_poly(b);
    IntervalQ iva = a.enclosure(), ivb = b.enclosure();
    for (long k = 1; k <= 64; ++k) {
        // tau = a + k b ; p_tau(t) = Res_x( pb(x), pa(t - k x) )
        std::vector<QPoly> p;
        for (const auto& c : pb.c) p.push_back(QPoly::constant(c));
        // pa(t - k x) = sum_i pa_i (t - kx)^i: collect by powers of x with Q[t] coeffs
        int da = pa.deg();
        std::vector<QPoly> q(da + 1); // coefficient of x^j is a poly in t
        {
            // (t - kx)^i expanded: sum_j binom(i,j) t^(i-j) (-k)^j x^j
            std::vector<std::vector<Rat>> binom(da + 1, std::vector<Rat>(da + 1, Rat(0)));
            for (int i = 0; i <= da; ++i) {
                binom[i][0] = 1;
                for (int j = 1; j <= i; ++j)
                    binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : Rat(0));
            }
            for (int j = 0; j <= da; ++j) {
                QPoly cj;
                for (int i = j; i <= da; ++i) {
                    Rat f = pa.c[i] * binom[i][j] * rat_pow(Rat(-k), (unsigned)j);
                    cj = cj + QPoly::monomial(f, i - j);
                }
                q[j] = cj;
            }
        }
        QPoly ptau = resultant_xy(p, q);
        if (ptau.is_zero()) continue;
        ptau = qpoly_squarefree(ptau);
        // isolate tau = a + k b among roots of ptau
        auto chain = sturm_chain(ptau);
        IntervalQ ia = iva, ib = ivb;
        IntervalQ ivt = ia + IntervalQ{Rat(k), Rat(k)} * ib;
        bool isolated = false;
        for (int ref = 0; ref < 512; ++ref) {
            int cnt = sturm_count(chain, ivt.lo, ivt.hi);
            if (cnt == 1 && ptau.eval(ivt.lo) != 0 && ptau.eval(ivt.hi) != 0) { isolated = true; break; }
            if (a.root()) a.root()->refine();
            if (b.root()) b.root()->refine();
            ia = a.enclosure();
            ib = b.enclosure();
            ivt = ia + IntervalQ{Rat(k), Rat(k)} * ib;
        }
        if (!isolated) continue;
        auto tau = std::make_shared<RootHandle>(ptau, ivt, false);
        // express b in Q(tau): common root of pb(x) and pa(tau - k x) -> gcd over Q(tau)
        // gcd computed by Euclid with FieldElem coefficients
        auto poly_mod_tau = [&](const std::vector<QPoly>& coeffs_in_t) {
            std::vector<FieldElem> out;
            for (const auto& ct : coeffs_in_t) out.emplace_back(tau, ct);
            return out;
        };
        std::vector<QPoly> pb_t;
        for (const auto& c : pb.c) pb_t.push_back(QPoly::constant(c));
        std::vector<FieldElem> f = poly_mod_tau(pb_t), g = poly_mod_tau(q);
        auto trim = [](std::vector<FieldElem>& v) {
            while (!v.empty() && v.back().is_zero()) v.pop_back();
        };
        trim(f); trim(g);
        try {
            while (!g.empty()) {
                // f = q g + r via field division
                std::vector<FieldElem> r = f;
                trim(r);
                FieldElem glead_inv = g.back().inv();
                while (!r.empty() && r.size() >= g.size()) {
                    FieldElem kk = r.back() * glead_inv;
                    size_t off = r.size() - g.size();
                    for (size_t i = 0; i < g.size(); ++i)
                        r[off + i] = r[off + i] - kk * g[i];
                    trim(r);
                }
                f = std::move(g);
                g = std::move(r);
            }
        } catch (const std::domain_error&) {
            continue; // unlucky split; try next k
        }
        if (f.size() != 2) continue; // gcd not linear; unlucky k
        FieldElem broot = -(f[0] / f[1]);
        FieldElem aroot = FieldElem::alpha(tau) - FieldElem(Rat(k)) * broot;
        // map original representations through alpha -> aroot, beta -> broot
        auto eval_rep = [](const FieldElem& base, const std::vector<Rat>& rep) {
            FieldElem acc;
            for (auto it = rep.rbegin(); it != rep.rend(); ++it)
                acc = acc * base + FieldElem(*it);
            return acc;
        };
        return {eval_rep(aroot, a.coeffs()), eval_rep(broot, b.coeffs())};
    }
    throw std::runtime_error("join_fields: no suitable primitive element found");
}

} // namespace hopf3
