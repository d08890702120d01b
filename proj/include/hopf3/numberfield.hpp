#ifndef HOPF3_NUMBERFIELD_HPP
#define HOPF3_NUMBERFIELD_HPP

#include "hopf3/qpoly.hpp"

#include <atomic>
#include <memory>
#include <mutex>

namespace hopf3 {

// One real algebraic number alpha, tracked by a square-free polynomial that
// vanishes at it plus an isolating interval. The polynomial is not required
// to be irreducible: when arithmetic meets a zero divisor the modulus is
// replaced by the factor that still vanishes at alpha (dynamic evaluation).
// Snapshots are immutable; the handle swaps in finer ones.
struct FieldSnapshot {
    QPoly modulus;  // square-free, monic, vanishes at alpha, deg >= 1
    IntervalQ iv;   // isolates alpha among the roots of modulus
    bool exact = false;
};

class RootHandle {
public:
    RootHandle(QPoly modulus, IntervalQ iv, bool exact = false) {
        auto s = std::make_shared<FieldSnapshot>();
        s->modulus = modulus.monic();
        s->iv = std::move(iv);
        s->exact = exact;
        cur_ = std::move(s);
    }

    std::shared_ptr<const FieldSnapshot> snapshot() const {
        std::lock_guard<std::mutex> g(mu_);
        return cur_;
    }

    // Halve the isolating interval.
    void refine() const {
        std::lock_guard<std::mutex> g(mu_);
        if (cur_->exact) return;
        auto s = std::make_shared<FieldSnapshot>(*cur_);
        Rat mid = (s->iv.lo + s->iv.hi) / 2;
        Rat v = s->modulus.eval(mid);
        if (v == 0) {
            s->iv = IntervalQ{mid, mid};
            s->exact = true;
        } else {
            Rat va = s->modulus.eval(s->iv.lo);
            if ((va > 0) != (v > 0))
                s->iv = IntervalQ{s->iv.lo, mid};
            else
                s->iv = IntervalQ{mid, s->iv.hi};
        }
        cur_ = std::move(s);
    }

    // Replace the modulus by a divisor that still vanishes at alpha.
    void shrink(QPoly divisor) const {
        std::lock_guard<std::mutex> g(mu_);
        auto s = std::make_shared<FieldSnapshot>(*cur_);
        s->modulus = divisor.monic();
        cur_ = std::move(s);
    }

private:
    mutable std::mutex mu_;
    mutable std::shared_ptr<const FieldSnapshot> cur_;
};

using RootPtr = std::shared_ptr<RootHandle>;

// Element of Q(alpha) (or plain Q when root is null): polynomial in alpha
// reduced modulo the current modulus.
class FieldElem {
public:
    FieldElem() : c_{} {}
    FieldElem(Rat r) {
        if (r != 0) c_.push_back(std::move(r));
    }
    FieldElem(RootPtr root, QPoly rep) : root_(std::move(root)), c_(std::move(rep.c)) {
        reduce();
    }

    static FieldElem alpha(RootPtr root) {
        return FieldElem(std::move(root), QPoly::monomial(Rat(1), 1));
    }

    bool is_rational() const { return !root_ || c_.size() <= 1; }
    bool is_zero() const;
    Rat rational_value() const {
        if (c_.empty()) return Rat(0);
        if (c_.size() == 1) return c_[0];
        throw std::logic_error("FieldElem: not rational");
    }
    const RootPtr& root() const { return root_; }
    const std::vector<Rat>& coeffs() const { return c_; }
    QPoly rep() const { return QPoly{std::vector<Rat>(c_)}; }

    FieldElem operator-() const;
    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
    FieldElem inv() const;

    int sign() const;          // exact
    IntervalQ enclosure() const;
    double to_double() const;
    std::string str() const;

    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        return (a - b).is_zero();
    }

private:
    RootPtr root_;            // null for plain rationals
    std::vector<Rat> c_;      // c_[i] * alpha^i
    void reduce();
    static void align(FieldElem& a, FieldElem& b);
};

// Square-free polynomial over Q vanishing at e (e expressed in Q(alpha)).
QPoly minimalish_poly(const FieldElem& e);

// Resultant with respect to x of p(x) and q(x) whose coefficients are
// rational polynomials in y; entries listed by powers of x.
QPoly resultant_xy(const std::vector<QPoly>& p, const std::vector<QPoly>& q);

// Turn an isolated root of a rational polynomial into a number.
FieldElem algebraic_from_root(const IsolatedRoot& r);

// Smallest common field: expresses both numbers in one Q(tau).
// Returns the images of a and b in the joint field.
std::pair<FieldElem, FieldElem> join_fields(const FieldElem& a, const FieldElem& b);

} // namespace hopf3

#endif
