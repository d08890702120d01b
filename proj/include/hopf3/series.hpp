#ifndef HOPF3_SERIES_HPP
#define HOPF3_SERIES_HPP

#include "hopf3/trig.hpp"

#include <array>
#include <functional>
#include <map>

namespace hopf3 {

constexpr int ORD_INF = 1 << 20;

// Variable indices in cylinder-chart series (z, rho).
enum : int { CZ = 0, CR = 1 };

inline int ord_add(int a, int b) { return (a >= ORD_INF || b >= ORD_INF) ? ORD_INF : a + b; }
inline int ord_sub(int a, int b) { return a >= ORD_INF ? ORD_INF : std::max(0, a - b); }

struct Mono {
    std::array<int, 3> e{0, 0, 0};
    int total() const { return e[0] + e[1] + e[2]; }
    friend bool operator<(const Mono& a, const Mono& b) { return a.e < b.e; }
    friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
};

// Trustworthy-order metadata. A stored coefficient of monomial m is the true
// coefficient of the underlying function whenever m.total() <= total and
// m.e[i] <= var[i] for every i. Operations propagate the minimum trustworthy
// order; jets beyond the window raise.
struct Trust {
    int total = ORD_INF;
    std::array<int, 3> var{ORD_INF, ORD_INF, ORD_INF};

    static Trust exact() { return {}; }
    static Trust meet(const Trust& a, const Trust& b) {
        Trust t;
        t.total = std::min(a.total, b.total);
        for (int i = 0; i < 3; ++i) t.var[i] = std::min(a.var[i], b.var[i]);
        return t;
    }
    bool admits(const Mono& m) const {
        if (m.total() > total) return false;
        for (int i = 0; i < 3; ++i)
            if (m.e[i] > var[i]) return false;
        return true;
    }
    bool is_exact() const {
        return total >= ORD_INF && var[0] >= ORD_INF && var[1] >= ORD_INF && var[2] >= ORD_INF;
    }
};

template <class C> struct coeff_traits;
template <> struct coeff_traits<Scalar> {
    static Scalar zero() { return {}; }
    static Scalar one() { return Scalar(1); }
    static bool invertible_const(const Scalar& c) { return !c.is_zero(); }
    static Scalar invert(const Scalar& c) { return Scalar(1) / c; }
};
template <> struct coeff_traits<TrigPoly> {
    static TrigPoly zero() { return {}; }
    static TrigPoly one() { return TrigPoly(Scalar(1)); }
    // Ring units of R[cos,sin] used here: theta-free nonzero constants.
    static bool invertible_const(const TrigPoly& c) { return c.is_const() && !c.mean().is_zero(); }
    static TrigPoly invert(const TrigPoly& c) {
        if (!invertible_const(c)) throw std::domain_error("TrigPoly: not a unit");
        return TrigPoly(Scalar(1) / c.mean());
    }
};
template <> struct coeff_traits<ThetaTrig> {
    static ThetaTrig zero() { return {}; }
    static ThetaTrig one() { return ThetaTrig(Scalar(1)); }
    static bool invertible_const(const ThetaTrig&) { return false; }
    static ThetaTrig invert(const ThetaTrig&) {
        throw std::domain_error("ThetaTrig: no ring inverses");
    }
};

// Sparse multivariate truncated power series over coefficient ring C
// (Scalar or TrigPoly). Variables are positional; callers name them.
template <class C>
class Series {
public:
    using coeff_type = C;

    Series() : nvars_(0) {}
    explicit Series(int nvars) : nvars_(nvars) {}

    static Series zero(int nvars) { return Series(nvars); }
    static Series constant(int nvars, C c) {
        Series s(nvars);
        if (!c.is_zero()) s.m_[Mono{}] = std::move(c);
        return s;
    }
    static Series var(int nvars, int i, C c = coeff_traits<C>::one()) {
        Series s(nvars);
        Mono m;
        m.e[i] = 1;
        if (!c.is_zero()) s.m_[m] = std::move(c);
        return s;
    }

    int nvars() const { return nvars_; }
    const std::map<Mono, C>& terms() const { return m_; }
    bool is_zero() const { return m_.empty(); }
    const Trust& trust() const { return trust_; }
    void set_trust(Trust t) { trust_ = t; prune(); }
    void mark_exact() { trust_ = Trust::exact(); }

    C coeff(const Mono& m) const {
        auto it = m_.find(m);
        return it == m_.end() ? coeff_traits<C>::zero() : it->second;
    }
    C coeff2(int a, int b) const { return coeff(Mono{{a, b, 0}}); }
    C constant_term() const { return coeff(Mono{}); }

    void set_coeff(const Mono& m, C c) {
        if (c.is_zero()) m_.erase(m);
        else m_[m] = std::move(c);
    }
    void add_coeff(const Mono& m, const C& c) {
        if (c.is_zero()) return;
        auto it = m_.find(m);
        if (it == m_.end()) m_[m] = c;
        else {
            it->second = it->second + c;
            if (it->second.is_zero()) m_.erase(it);
        }
    }

    int ord_total() const {
        int o = ORD_INF;
        for (const auto& [m, c] : m_) o = std::min(o, m.total());
        return o;
    }
    int ord_var(int i) const {
        int o = ORD_INF;
        for (const auto& [m, c] : m_) o = std::min(o, m.e[i]);
        return o;
    }
    int deg_var(int i) const {
        int d = -1;
        for (const auto& [m, c] : m_) d = std::max(d, m.e[i]);
        return d;
    }
    int deg_total() const {
        int d = -1;
        for (const auto& [m, c] : m_) d = std::max(d, m.total());
        return d;
    }

    Series operator-() const {
        Series r = *this;
        for (auto& [m, c] : r.m_) c = -c;
        return r;
    }
    friend Series operator+(const Series& a, const Series& b) {
        Series r = a;
        r.trust_ = Trust::meet(a.trust_, b.trust_);
        for (const auto& [m, c] : b.m_) r.add_coeff(m, c);
        r.prune();
        return r;
    }
    friend Series operator-(const Series& a, const Series& b) { return a + (-b); }
    friend Series operator*(const Series& a, const Series& b) {
        Series r(a.nvars_ ? a.nvars_ : b.nvars_);
        // refined jet rule: trust(FG) componentwise min(tF + ord G, tG + ord F)
        r.trust_.total = std::min(ord_add(a.trust_.total, b.ord_total()),
                                  ord_add(b.trust_.total, a.ord_total()));
        for (int i = 0; i < 3; ++i)
            r.trust_.var[i] = std::min(ord_add(a.trust_.var[i], b.ord_var(i)),
                                       ord_add(b.trust_.var[i], a.ord_var(i)));
        if (a.is_zero() || b.is_zero()) { r.trust_ = Trust::exact(); return r; }
        for (const auto& [ma, ca] : a.m_)
            for (const auto& [mb, cb] : b.m_) {
                Mono m;
                for (int i = 0; i < 3; ++i) m.e[i] = ma.e[i] + mb.e[i];
                if (!r.trust_.admits(m)) continue;
                r.add_coeff(m, ca * cb);
            }
        return r;
    }
    friend Series operator*(const C& k, const Series& a) {
        Series r = a;
        for (auto& [m, c] : r.m_) c = k * c;
        r.prune();
        return r;
    }
    friend bool operator==(const Series& a, const Series& b) { return (a - b).is_zero(); }

    // Total-degree jet. Requires k within the trusted window.
    Series jet(int k) const {
        if (k > trust_.total) throw std::domain_error("jet beyond trustworthy order");
        Series r(nvars_);
        r.trust_ = trust_;
        for (const auto& [m, c] : m_)
            if (m.total() <= k) r.m_[m] = c;
        return r;
    }
    // Partial jet in one variable.
    Series jet_var(int i, int k) const {
        if (k > trust_.var[i]) throw std::domain_error("partial jet beyond trustworthy order");
        Series r(nvars_);
        r.trust_ = trust_;
        for (const auto& [m, c] : m_)
            if (m.e[i] <= k) r.m_[m] = c;
        return r;
    }

    Series derivative(int i) const {
        Series r(nvars_);
        r.trust_ = trust_;
        r.trust_.total = ord_sub(trust_.total, 1);
        r.trust_.var[i] = ord_sub(trust_.var[i], 1);
        for (const auto& [m, c] : m_) {
            if (m.e[i] == 0) continue;
            Mono d = m;
            d.e[i] -= 1;
            r.add_coeff(d, Scalar(Rat(m.e[i])) * c);
        }
        r.prune();
        return r;
    }

    // Multiply by var_i^n (n may be negative: exact division, errors if not exact).
    Series shift_var(int i, int n) const {
        Series r(nvars_);
        r.trust_ = trust_;
        r.trust_.var[i] = n >= 0 ? ord_add(trust_.var[i], n) : ord_sub(trust_.var[i], -n);
        r.trust_.total = n >= 0 ? ord_add(trust_.total, n) : ord_sub(trust_.total, -n);
        for (const auto& [m, c] : m_) {
            Mono d = m;
            d.e[i] += n;
            if (d.e[i] < 0) throw std::domain_error("shift_var: division not exact");
            r.m_[d] = c;
        }
        return r;
    }

    // Substitute var_i -> var_i + a (a exact scalar). Only for variables with
    // an unlimited window: translating a truncated variable breaks order
    // bookkeeping (see Trust).
    Series translate(int i, const Scalar& a) const {
        if (trust_.total < ORD_INF || trust_.var[i] < ORD_INF)
            throw std::domain_error("translate: variable or total order is truncated");
        if (a.is_zero()) return *this;
        Series r(nvars_);
        r.trust_ = trust_;
        for (const auto& [m, c] : m_) {
            int n = m.e[i];
            // (x+a)^n
            Scalar pw(Rat(1));
            Rat binom(1);
            for (int j = n; j >= 0; --j) {
                // coefficient of x^j: binom(n, j) a^{n-j}
                Mono d = m;
                d.e[i] = j;
                r.add_coeff(d, (Scalar(binom) * pw) * c);
                if (j > 0) {
                    binom = binom * j / (n - j + 1);
                    pw = pw * a;
                }
            }
        }
        r.prune();
        return r;
    }

    // Inverse of a unit graded by one variable: the remainder B - B(.,0) must
    // be divisible by var_i, and the result window in var_i is capped at
    // `work` (each graded coefficient is computed exactly).
    Series invert_unit_var(int vi, int work) const {
        C c0 = constant_term();
        if (!coeff_traits<C>::invertible_const(c0))
            throw std::domain_error("invert_unit_var: constant term is not a unit");
        for (const auto& [m, c] : m_)
            if (m.e[vi] == 0 && !(m == Mono{}))
                throw std::domain_error("invert_unit_var: unit part depends on other variables");
        C inv0 = coeff_traits<C>::invert(c0);
        Series rest = *this;
        rest.m_.erase(Mono{});
        Trust wt = trust_;
        wt.var[vi] = std::min(wt.var[vi], work);
        Series r = Series::constant(nvars_, inv0);
        Series t = Series::constant(nvars_, inv0);
        for (int k = 1; k <= std::min(work, wt.var[vi]); ++k) {
            t = t * rest;
            t = (-inv0) * t;
            t.trust_ = wt;
            t.prune();
            if (t.is_zero()) break;
            r = r + t;
        }
        r.trust_ = wt;
        r.prune();
        return r;
    }

    // Inverse of a unit, to the stored trustworthy window capped at `work`.
    Series invert_unit(int work) const {
        C c0 = constant_term();
        if (!coeff_traits<C>::invertible_const(c0))
            throw std::domain_error("invert_unit: constant term is not a unit");
        C inv0 = coeff_traits<C>::invert(c0);
        Series rest = *this;
        rest.m_.erase(Mono{});
        Series r = Series::constant(nvars_, inv0);
        // Neumann series: (c0 + R)^{-1} = inv0 * sum (-inv0 R)^k
        Series t = Series::constant(nvars_, inv0);
        int o = rest.is_zero() ? ORD_INF : rest.ord_total();
        if (o <= 0) throw std::logic_error("invert_unit: zero-order remainder");
        Trust wt = trust_;
        wt.total = std::min(wt.total, work);
        for (int k = 1; k * o <= std::min(work, wt.total); ++k) {
            t = t * rest;
            t = (-inv0) * t;
            t.trust_ = wt;
            t.prune();
            r = r + t;
            if (t.is_zero()) break;
        }
        r.trust_ = wt;
        r.prune();
        return r;
    }

    // Partial evaluation: set var_i = 0 (keeps arity, degree 0 in i).
    Series at_zero(int i) const {
        Series r(nvars_);
        r.trust_ = trust_;
        r.trust_.var[i] = ORD_INF;
        for (const auto& [m, c] : m_)
            if (m.e[i] == 0) r.m_[m] = c;
        return r;
    }

    // Full substitution of series for variables. args[i] substitutes var_i;
    // composition truncated to the meet of windows and `work` total order.
    Series compose(const std::vector<Series>& args, int work) const {
        Series r(args.empty() ? nvars_ : args[0].nvars());
        Trust wt = Trust::exact();
        wt.total = work;
        for (const auto& [m, c] : m_) {
            Series term = Series::constant(r.nvars(), c);
            for (int i = 0; i < nvars_; ++i)
                for (int j = 0; j < m.e[i]; ++j) {
                    term = term * args[i];
                    term.trust_ = Trust::meet(term.trust_, wt);
                    term.prune();
                }
            r = r + term;
        }
        r.trust_ = Trust::meet(r.trust_, wt);
        r.prune();
        return r;
    }

    template <class F>
    auto map_coeffs(F&& f) const {
        using D = decltype(f(std::declval<C>()));
        Series<D> r(nvars_);
        r.set_trust(trust_);
        for (const auto& [m, c] : m_) {
            D d = f(c);
            if (!d.is_zero()) r.set_coeff(m, std::move(d));
        }
        return r;
    }

    void prune() {
        for (auto it = m_.begin(); it != m_.end();)
            it = (!trust_.admits(it->first) || it->second.is_zero()) ? m_.erase(it) : std::next(it);
    }

    std::string str(const std::array<const char*, 3>& names) const;

private:
    int nvars_;
    std::map<Mono, C> m_;
    Trust trust_;

    template <class D> friend class Series;
};

template <class C>
std::string Series<C>::str(const std::array<const char*, 3>& names) const {
    if (m_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : m_) {
        if (!out.empty()) out += " + ";
        std::string cs;
        if constexpr (std::is_same_v<C, Scalar>) cs = c.str();
        else cs = c.str();
        out += "(" + cs + ")";
        for (int i = 0; i < nvars_; ++i) {
            if (m.e[i] == 0) continue;
            out += "*";
            out += names[i];
            if (m.e[i] > 1) out += "^" + std::to_string(m.e[i]);
        }
    }
    return out;
}

using SSeries = Series<Scalar>;   // scalar coefficients
using TSeries = Series<TrigPoly>; // trig-polynomial coefficients

inline TSeries lift_trig(const SSeries& s) {
    return s.map_coeffs([](const Scalar& c) { return TrigPoly(c); });
}

// Requires every coefficient to be theta-free.
inline SSeries drop_trig(const TSeries& s) {
    return s.map_coeffs([](const TrigPoly& c) {
        if (!c.is_const()) throw std::domain_error("drop_trig: theta-dependent coefficient");
        return c.mean();
    });
}

inline bool is_theta_free(const TSeries& s) {
    for (const auto& [m, c] : s.terms())
        if (!c.is_const()) return false;
    return true;
}

} // namespace hopf3

#endif
