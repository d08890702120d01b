#ifndef HOPF3_QPOLY_HPP
#define HOPF3_QPOLY_HPP

#include "hopf3/rational.hpp"

#include <algorithm>
#include <vector>

namespace hopf3 {

// Dense univariate polynomial over Q, coefficient of x^i at index i.
// Normalized: no trailing zero coefficients (zero polynomial = empty vector).
struct QPoly {
    std::vector<Rat> c;

    QPoly() = default;
    explicit QPoly(std::vector<Rat> v) : c(std::move(v)) { trim(); }
    static QPoly constant(Rat a) { return QPoly{{std::move(a)}}; }
    static QPoly monomial(Rat a, int deg) {
        std::vector<Rat> v(deg + 1, Rat(0));
        v[deg] = std::move(a);
        return QPoly{std::move(v)};
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return (int)c.size() - 1; } // -1 for zero
    const Rat& lead() const { return c.back(); }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    IntervalQ eval(const IntervalQ& x) const {
        IntervalQ acc;
        for (auto it = c.rbegin(); it != c.rend(); ++it)
            acc = acc * x + IntervalQ(*it);
        return acc;
    }

    QPoly derivative() const {
        if (c.size() <= 1) return {};
        std::vector<Rat> d(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * (long)i;
        return QPoly{std::move(d)};
    }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        std::vector<Rat> v(std::max(a.c.size(), b.c.size()), Rat(0));
        for (size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) v[i] += b.c[i];
        return QPoly{std::move(v)};
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) {
        std::vector<Rat> v(std::max(a.c.size(), b.c.size()), Rat(0));
        for (size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) v[i] -= b.c[i];
        return QPoly{std::move(v)};
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> v(a.c.size() + b.c.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
        return QPoly{std::move(v)};
    }
    friend QPoly operator*(const Rat& k, const QPoly& a) {
        if (k == 0) return {};
        std::vector<Rat> v(a.c);
        for (auto& x : v) x *= k;
        return QPoly{std::move(v)};
    }
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c == b.c; }

    QPoly monic() const {
        if (is_zero()) return {};
        return Rat(1) / lead() * (*this);
    }
};

// Euclidean division over Q: a = q*b + r with deg r < deg b.
inline void qpoly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    r = a;
    q = QPoly{};
    q.c.assign(std::max<int>(0, a.deg() - b.deg() + 1), Rat(0));
    while (!r.is_zero() && r.deg() >= b.deg()) {
        Rat k = r.lead() / b.lead();
        int d = r.deg() - b.deg();
        q.c[d] += k;
        for (int i = 0; i <= b.deg(); ++i) r.c[i + d] -= k * b.c[i];
        r.trim();
    }
    q.trim();
}

inline QPoly qpoly_rem(const QPoly& a, const QPoly& b) {
    QPoly q, r;
    qpoly_divmod(a, b, q, r);
    return r;
}

inline QPoly qpoly_gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = qpoly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

inline QPoly qpoly_squarefree(const QPoly& p) {
    if (p.deg() <= 0) return p;
    QPoly g = qpoly_gcd(p, p.derivative());
    if (g.deg() <= 0) return p.monic();
    QPoly q, r;
    qpoly_divmod(p, g, q, r);
    return q.monic();
}

// Sturm chain of a (square-free recommended) polynomial.
inline std::vector<QPoly> sturm_chain(const QPoly& p) {
    std::vector<QPoly> s;
    if (p.is_zero()) return s;
    s.push_back(p);
    QPoly d = p.derivative();
    if (d.is_zero()) return s;
    s.push_back(d);
    while (true) {
        QPoly r = qpoly_rem(s[s.size() - 2], s.back());
        if (r.is_zero()) break;
        s.push_back(Rat(-1) * r);
    }
    return s;
}

inline int sign_changes_at(const std::vector<QPoly>& chain, const Rat& x) {
    int changes = 0, prev = 0;
    for (const auto& p : chain) {
        Rat v = p.eval(x);
        int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s != 0) {
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
    }
    return changes;
}

// Number of distinct real roots of the square-free p in (a, b].
inline int sturm_count(const std::vector<QPoly>& chain, const Rat& a, const Rat& b) {
    if (chain.empty()) return 0;
    return sign_changes_at(chain, a) - sign_changes_at(chain, b);
}

// Cauchy root bound: all real roots lie in (-B, B).
inline Rat cauchy_bound(const QPoly& p) {
    Rat m(0);
    for (int i = 0; i < p.deg(); ++i) m = std::max(m, rat_abs(p.c[i]));
    return Rat(1) + m / rat_abs(p.lead());
}

struct IsolatedRoot {
    QPoly poly;    // square-free polynomial vanishing at the root
    IntervalQ iv;  // isolating interval; exactly one root of poly inside
    bool exact;    // true if iv.lo == iv.hi (rational root)
};

// Isolate all distinct real roots of p != 0, sorted increasingly.
// Intervals are chosen with endpoints that are not roots (unless exact).
std::vector<IsolatedRoot> isolate_real_roots(const QPoly& p);

// Halve the width of an isolating interval (no-op on exact roots).
void refine_root(IsolatedRoot& r);

// Sign of p at the algebraic number described by r.
int sign_at_root(const QPoly& p, IsolatedRoot r);

// Resultant of two univariate rational polynomials (subresultant-free,
// via the Euclidean remainder sequence; fine at the degrees we meet).
Rat qpoly_resultant(QPoly a, QPoly b);

} // namespace hopf3

#endif
