#ifndef HOPF3_TRIG_HPP
#define HOPF3_TRIG_HPP

#include "hopf3/scalar.hpp"

#include <cmath>
#include <map>

namespace hopf3 {

// Finite Fourier expansion a0 + sum_k (a_k cos k·theta + b_k sin k·theta).
// Closed under sum and product; the antiderivative is again a TrigPoly plus
// a theta-linear part mean()*theta, which callers track separately.
class TrigPoly {
public:
    TrigPoly() = default;
    TrigPoly(Scalar a0) { if (!a0.is_zero()) a0_ = std::move(a0); }
    TrigPoly(long n) : TrigPoly(Scalar(n)) {}

    static TrigPoly cosk(int k, Scalar c = Scalar(1)) {
        TrigPoly t;
        if (k == 0) return TrigPoly(std::move(c));
        t.h_[k].first = std::move(c);
        t.trim();
        return t;
    }
    static TrigPoly sink(int k, Scalar c = Scalar(1)) {
        TrigPoly t;
        if (k == 0) return t;
        t.h_[k].second = std::move(c);
        t.trim();
        return t;
    }

    bool is_zero() const { return a0_.is_zero() && h_.empty(); }
    bool is_const() const { return h_.empty(); }
    const Scalar& mean() const { return a0_; }
    Scalar cos_coeff(int k) const {
        auto it = h_.find(k);
        return it == h_.end() ? Scalar() : it->second.first;
    }
    Scalar sin_coeff(int k) const {
        auto it = h_.find(k);
        return it == h_.end() ? Scalar() : it->second.second;
    }
    int max_freq() const { return h_.empty() ? 0 : h_.rbegin()->first; }

    TrigPoly operator-() const {
        TrigPoly r = *this;
        r.a0_ = -r.a0_;
        for (auto& [k, ab] : r.h_) {
            ab.first = -ab.first;
            ab.second = -ab.second;
        }
        return r;
    }
    friend TrigPoly operator+(const TrigPoly& x, const TrigPoly& y) {
        TrigPoly r = x;
        r.a0_ = r.a0_ + y.a0_;
        for (const auto& [k, ab] : y.h_) {
            auto& t = r.h_[k];
            t.first = t.first + ab.first;
            t.second = t.second + ab.second;
        }
        r.trim();
        return r;
    }
    friend TrigPoly operator-(const TrigPoly& x, const TrigPoly& y) { return x + (-y); }

    friend TrigPoly operator*(const TrigPoly& x, const TrigPoly& y);
    friend TrigPoly operator*(const Scalar& s, const TrigPoly& y) {
        TrigPoly r;
        if (s.is_zero()) return r;
        r.a0_ = s * y.a0_;
        for (const auto& [k, ab] : y.h_) r.h_[k] = {s * ab.first, s * ab.second};
        r.trim();
        return r;
    }
    friend TrigPoly operator/(const TrigPoly& x, const Scalar& s) {
        TrigPoly r;
        r.a0_ = x.a0_ / s;
        for (const auto& [k, ab] : x.h_) r.h_[k] = {ab.first / s, ab.second / s};
        r.trim();
        return r;
    }
    friend bool operator==(const TrigPoly& x, const TrigPoly& y) { return (x - y).is_zero(); }

    // d/dtheta
    TrigPoly derivative() const {
        TrigPoly r;
        for (const auto& [k, ab] : h_) {
            // d/dθ (a cos kθ + b sin kθ) = kb cos kθ - ka sin kθ
            r.h_[k] = {Scalar(Rat(k)) * ab.second, -(Scalar(Rat(k)) * ab.first)};
        }
        r.trim();
        return r;
    }

    // Antiderivative with zero constant term of the oscillating part.
    // The full antiderivative is  periodic_part + mean()*theta.
    TrigPoly antiderivative_periodic() const {
        TrigPoly r;
        for (const auto& [k, ab] : h_) {
            Scalar kk{Rat(k)};
            // ∫ a cos kθ = (a/k) sin kθ ; ∫ b sin kθ = -(b/k) cos kθ
            r.h_[k] = {-(ab.second / kk), ab.first / kk};
        }
        r.trim();
        return r;
    }

    Scalar eval0() const { // theta = 0
        Scalar s = a0_;
        for (const auto& [k, ab] : h_) s = s + ab.first;
        return s;
    }
    Scalar eval_2pi() const { return eval0(); } // cos(2πk)=1, sin=0

    double eval_double(double theta) const {
        double s = a0_.to_double();
        for (const auto& [k, ab] : h_)
            s += ab.first.to_double() * std::cos(k * theta) +
                 ab.second.to_double() * std::sin(k * theta);
        return s;
    }

    // sup bound: |a0| + sum (|a_k| + |b_k|), as an exact upper rational
    Rat sup_bound() const {
        Rat s = a0_.enclosure().mag();
        for (const auto& [k, ab] : h_)
            s += ab.first.enclosure().mag() + ab.second.enclosure().mag();
        return s;
    }

    std::string str() const;

    template <class F> void for_each(F&& f) const {
        if (!a0_.is_zero()) f(0, a0_, true);
        for (const auto& [k, ab] : h_) {
            if (!ab.first.is_zero()) f(k, ab.first, true);
            if (!ab.second.is_zero()) f(k, ab.second, false);
        }
    }

private:
    Scalar a0_;
    std::map<int, std::pair<Scalar, Scalar>> h_; // k >= 1 -> (cos, sin) coeffs
    void trim() {
        for (auto it = h_.begin(); it != h_.end();)
            it = (it->second.first.is_zero() && it->second.second.is_zero()) ? h_.erase(it) : std::next(it);
    }
    friend class ThetaTrig;
};

inline TrigPoly operator*(const TrigPoly& x, const TrigPoly& y) {
    TrigPoly r;
    r.a0_ = x.a0_ * y.a0_;
    auto add_cos = [&r](int k, const Scalar& v) {
        if (k == 0) r.a0_ = r.a0_ + v;
        else r.h_[k].first = r.h_[k].first + v;
    };
    auto add_sin = [&r](int k, const Scalar& v) {
        if (k == 0) return;
        if (k > 0) r.h_[k].second = r.h_[k].second + v;
        else r.h_[-k].second = r.h_[-k].second - v;
    };
    for (const auto& [k, ab] : x.h_) {
        add_cos(k, y.a0_ * ab.first);
        add_sin(k, y.a0_ * ab.second);
    }
    for (const auto& [m, cd] : y.h_) {
        add_cos(m, x.a0_ * cd.first);
        add_sin(m, x.a0_ * cd.second);
    }
    for (const auto& [k, ab] : x.h_) {
        for (const auto& [m, cd] : y.h_) {
            const Scalar &a = ab.first, &b = ab.second, &c = cd.first, &d = cd.second;
            // cos k cos m = ½(cos(k-m) + cos(k+m))
            Scalar ac = half(a * c);
            add_cos(std::abs(k - m), ac);
            add_cos(k + m, ac);
            // sin k sin m = ½(cos(k-m) - cos(k+m))
            Scalar bd = half(b * d);
            add_cos(std::abs(k - m), bd);
            add_cos(k + m, -bd);
            // sin k cos m = ½(sin(k-m) + sin(k+m))
            Scalar bc = half(b * c);
            add_sin(k - m, bc);
            add_sin(k + m, bc);
            // cos k sin m = ½(sin(k+m) - sin(k-m))
            Scalar ad = half(a * d);
            add_sin(k + m, ad);
            add_sin(-(k - m), ad);
        }
    }
    r.trim();
    return r;
}

// Polynomial in theta with TrigPoly coefficients: the closure of TrigPoly
// under repeated antidifferentiation. Used by the Poincaré jet transport.
class ThetaTrig {
public:
    ThetaTrig() = default;
    ThetaTrig(TrigPoly t) { if (!t.is_zero()) m_[0] = std::move(t); }
    ThetaTrig(Scalar s) : ThetaTrig(TrigPoly(std::move(s))) {}

    bool is_zero() const { return m_.empty(); }

    friend ThetaTrig operator+(const ThetaTrig& x, const ThetaTrig& y) {
        ThetaTrig r = x;
        for (const auto& [j, t] : y.m_) {
            auto it = r.m_.find(j);
            if (it == r.m_.end()) r.m_[j] = t;
            else {
                it->second = it->second + t;
                if (it->second.is_zero()) r.m_.erase(it);
            }
        }
        return r;
    }
    ThetaTrig operator-() const {
        ThetaTrig r;
        for (const auto& [j, t] : m_) r.m_[j] = -t;
        return r;
    }
    friend ThetaTrig operator-(const ThetaTrig& x, const ThetaTrig& y) { return x + (-y); }
    friend ThetaTrig operator*(const Scalar& s, const ThetaTrig& y) {
        ThetaTrig r;
        for (const auto& [j, t] : y.m_) {
            TrigPoly p = s * t;
            if (!p.is_zero()) r.m_[j] = std::move(p);
        }
        return r;
    }
    friend ThetaTrig operator*(const ThetaTrig& x, const ThetaTrig& y) {
        ThetaTrig r;
        for (const auto& [i, s] : x.m_)
            for (const auto& [j, t] : y.m_) {
                TrigPoly p = s * t;
                if (p.is_zero()) continue;
                auto it = r.m_.find(i + j);
                if (it == r.m_.end()) r.m_[i + j] = std::move(p);
                else {
                    it->second = it->second + p;
                    if (it->second.is_zero()) r.m_.erase(it);
                }
            }
        return r;
    }
    friend bool operator==(const ThetaTrig& x, const ThetaTrig& y) { return (x - y).is_zero(); }

    // Exact antiderivative with F(0) = 0.
    ThetaTrig antiderivative() const {
        ThetaTrig r;
        for (const auto& [j, t] : m_) {
            // ∫ θ^j · osc(θ): integrate by parts until the power is gone.
            TrigPoly osc = t;
            Scalar mean = osc.mean();
            if (!mean.is_zero()) {
                // θ^j · mean integrates to mean θ^{j+1}/(j+1)
                r.add(j + 1, TrigPoly(mean / Scalar(Rat(j + 1))));
                osc = osc - TrigPoly(mean);
            }
            int p = j;
            Scalar sign{Rat(1)};
            Rat fall(1); // falling factorial j (j-1) ... down to current power
            TrigPoly cur = osc;
            while (true) {
                TrigPoly prim = cur.antiderivative_periodic();
                r.add(p, sign * Scalar(fall) * prim);
                if (p == 0) break;
                fall *= p;
                p -= 1;
                sign = -sign;
                cur = prim;
                // re-express: ∫θ^p cur' handled by the loop via parts
            }
        }
        // enforce F(0) = 0
        Scalar at0 = r.eval_theta0();
        if (!at0.is_zero()) r.add(0, TrigPoly(-at0));
        return r;
    }

    Scalar eval_theta0() const {
        auto it = m_.find(0);
        return it == m_.end() ? Scalar() : it->second.eval0();
    }

    // theta = 2π: trig factors collapse, powers of theta become powers of pi.
    Scalar eval_2pi() const {
        Scalar acc;
        Scalar two_pi = Scalar::pi(1, Rat(2));
        for (const auto& [j, t] : m_) {
            Scalar pw{Rat(1)};
            for (int i = 0; i < j; ++i) pw = pw * two_pi;
            acc = acc + pw * t.eval_2pi();
        }
        return acc;
    }

    double eval_double(double theta) const {
        double acc = 0;
        for (const auto& [j, t] : m_) acc += std::pow(theta, j) * t.eval_double(theta);
        return acc;
    }

    Rat sup_bound_on_period() const { // |θ| ≤ 2π, with 2π ≤ 7
        Rat acc(0);
        for (const auto& [j, t] : m_) acc += rat_pow(Rat(7), (unsigned)j) * t.sup_bound();
        return acc;
    }

    const std::map<int, TrigPoly>& parts() const { return m_; }

private:
    std::map<int, TrigPoly> m_; // theta power -> TrigPoly
    void add(int j, TrigPoly t) {
        if (t.is_zero()) return;
        auto it = m_.find(j);
        if (it == m_.end()) m_[j] = std::move(t);
        else {
            it->second = it->second + t;
            if (it->second.is_zero()) m_.erase(it);
        }
    }
};

} // namespace hopf3

#endif
