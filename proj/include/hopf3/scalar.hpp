#ifndef HOPF3_SCALAR_HPP
#define HOPF3_SCALAR_HPP

#include "hopf3/numberfield.hpp"

#include <sstream>

namespace hopf3 {

// Exact scalar: polynomial in the transcendental symbol pi with coefficients
// in Q or in a real algebraic extension Q(alpha). This is the coefficient
// domain of every symbolic computation. No floats.
class Scalar {
public:
    Scalar() = default;
    Scalar(long n) { if (n != 0) pc_.push_back(FieldElem(Rat(n))); }
    Scalar(Rat r) { if (r != 0) pc_.push_back(FieldElem(std::move(r))); }
    Scalar(FieldElem e) { if (!e.is_zero()) pc_.push_back(std::move(e)); }

    static Scalar pi(unsigned power = 1, Rat coeff = Rat(1)) {
        Scalar s;
        if (coeff == 0) return s;
        s.pc_.assign(power + 1, FieldElem());
        s.pc_[power] = FieldElem(std::move(coeff));
        return s;
    }

    bool is_zero() const { return pc_.empty(); }
    bool pi_free() const { return pc_.size() <= 1; }
    bool is_rational() const { return pi_free() && (pc_.empty() || pc_[0].is_rational()); }
    Rat rational_value() const {
        if (pc_.empty()) return Rat(0);
        if (!is_rational()) throw std::logic_error("Scalar: not rational");
        return pc_[0].rational_value();
    }
    FieldElem field_value() const {
        if (pc_.empty()) return FieldElem();
        if (!pi_free()) throw std::logic_error("Scalar: not pi-free");
        return pc_[0];
    }
    int pi_degree() const { return (int)pc_.size() - 1; }
    FieldElem pi_coeff(int k) const {
        return (k >= 0 && k < (int)pc_.size()) ? pc_[k] : FieldElem();
    }

    Scalar operator-() const {
        Scalar r = *this;
        for (auto& e : r.pc_) e = -e;
        return r;
    }
    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        Scalar r;
        r.pc_.assign(std::max(a.pc_.size(), b.pc_.size()), FieldElem());
        for (size_t i = 0; i < a.pc_.size(); ++i) r.pc_[i] = r.pc_[i] + a.pc_[i];
        for (size_t i = 0; i < b.pc_.size(); ++i) r.pc_[i] = r.pc_[i] + b.pc_[i];
        r.trim();
        return r;
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        Scalar r;
        if (a.is_zero() || b.is_zero()) return r;
        r.pc_.assign(a.pc_.size() + b.pc_.size() - 1, FieldElem());
        for (size_t i = 0; i < a.pc_.size(); ++i)
            for (size_t j = 0; j < b.pc_.size(); ++j)
                r.pc_[i + j] = r.pc_[i + j] + a.pc_[i] * b.pc_[j];
        r.trim();
        return r;
    }
    // Division by a pi-free scalar (the only division the series kernel needs).
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (!b.pi_free()) throw std::domain_error("Scalar: division by a pi-dependent value");
        if (b.is_zero()) throw std::domain_error("Scalar: division by zero");
        FieldElem inv = b.pc_[0].inv();
        Scalar r = a;
        for (auto& e : r.pc_) e = e * inv;
        return r;
    }
    friend bool operator==(const Scalar& a, const Scalar& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Exact sign. Zero test is coefficientwise (pi is transcendental over
    // the real algebraic numbers); otherwise interval refinement.
    int sign() const {
        if (is_zero()) return 0;
        if (pi_free()) return pc_[0].sign();
        for (int iter = 0; iter < 4096; ++iter) {
            IntervalQ e = enclosure();
            if (e.sign() != 0) return e.sign();
            for (const auto& c : pc_)
                if (c.root()) c.root()->refine();
        }
        throw std::runtime_error("Scalar::sign: refinement did not converge");
    }

    IntervalQ enclosure() const {
        IntervalQ acc;
        const IntervalQ& piiv = pi_interval();
        for (auto it = pc_.rbegin(); it != pc_.rend(); ++it)
            acc = acc * piiv + it->enclosure();
        return acc;
    }

    double to_double() const {
        double acc = 0;
        double pid = 3.14159265358979323846;
        for (auto it = pc_.rbegin(); it != pc_.rend(); ++it)
            acc = acc * pid + it->to_double();
        return acc;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (size_t k = 0; k < pc_.size(); ++k) {
            if (pc_[k].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << pc_[k].str();
            if (k == 1) os << "*pi";
            else if (k > 1) os << "*pi^" << k;
        }
        return os.str();
    }

private:
    std::vector<FieldElem> pc_; // pc_[k] multiplies pi^k
    void trim() {
        while (!pc_.empty() && pc_.back().is_zero()) pc_.pop_back();
    }
};

inline Scalar half(const Scalar& s) { return s / Scalar(Rat(2)); }

} // namespace hopf3

#endif
