#ifndef HOPF3_RATIONAL_HPP
#define HOPF3_RATIONAL_HPP

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>

namespace hopf3 {

using Rat = mpq_class;

inline Rat rat_of(long n, long d = 1) { Rat r(n, d); r.canonicalize(); return r; }

inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline double rat_double(const Rat& r) { return r.get_d(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline Rat rat_pow(const Rat& r, unsigned e) {
    Rat acc(1), base(r);
    while (e) {
        if (e & 1u) acc *= base;
        base *= base;
        e >>= 1u;
    }
    return acc;
}

// Closed rational interval. Used for isolating intervals of algebraic
// numbers and for certified evaluation of bounds.
struct IntervalQ {
    Rat lo, hi;

    IntervalQ() : lo(0), hi(0) {}
    IntervalQ(Rat a) : lo(a), hi(a) {}
    IntervalQ(Rat a, Rat b) : lo(std::move(a)), hi(std::move(b)) {
        if (lo > hi) throw std::logic_error("interval endpoints out of order");
    }

    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    Rat width() const { return hi - lo; }
    Rat mag() const { return std::max(rat_abs(lo), rat_abs(hi)); }
    // Largest m with |x| >= m for all x in the interval (0 if it straddles 0).
    Rat mig() const {
        if (contains_zero()) return Rat(0);
        return std::min(rat_abs(lo), rat_abs(hi));
    }

    IntervalQ operator+(const IntervalQ& o) const { return {lo + o.lo, hi + o.hi}; }
    IntervalQ operator-(const IntervalQ& o) const { return {lo - o.hi, hi - o.lo}; }
    IntervalQ operator-() const { return {-hi, -lo}; }
    IntervalQ operator*(const IntervalQ& o) const {
        Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return {std::min(std::min(a, b), std::min(c, d)),
                std::max(std::max(a, b), std::max(c, d))};
    }
    IntervalQ pow(unsigned e) const {
        IntervalQ acc{Rat(1), Rat(1)}, base = *this;
        while (e) {
            if (e & 1u) acc = acc * base;
            base = base * base;
            e >>= 1u;
        }
        return acc;
    }
    int sign() const {
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        return 0; // undecided / contains zero
    }
};

// Rational enclosure of pi, 50 decimal digits on each side.
inline const IntervalQ& pi_interval() {
    static const IntervalQ iv = [] {
        Rat lo, hi;
        lo.set_str("31415926535897932384626433832795028841971693993751/"
                   "10000000000000000000000000000000000000000000000000", 10);
        hi.set_str("31415926535897932384626433832795028841971693993752/"
                   "10000000000000000000000000000000000000000000000000", 10);
        lo.canonicalize();
        hi.canonicalize();
        return IntervalQ{lo, hi};
    }();
    return iv;
}

} // namespace hopf3

#endif
