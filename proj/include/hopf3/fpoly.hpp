#ifndef HOPF3_FPOLY_HPP
#define HOPF3_FPOLY_HPP

#include "hopf3/numberfield.hpp"

namespace hopf3 {

// Univariate polynomial with real algebraic coefficients, used to isolate
// the adapted singular locus when blow-up centers are irrational.
struct FPoly {
    std::vector<FieldElem> c; // c[i] * x^i

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return (int)c.size() - 1; }
    bool all_rational() const {
        for (const auto& e : c)
            if (!e.is_rational()) return false;
        return true;
    }
    QPoly to_qpoly() const {
        std::vector<Rat> v;
        for (const auto& e : c) v.push_back(e.rational_value());
        return QPoly{std::move(v)};
    }
    FieldElem eval(const Rat& x) const {
        FieldElem acc;
        for (auto it = c.rbegin(); it != c.rend(); ++it)
            acc = acc * FieldElem(x) + *it;
        return acc;
    }
    FPoly derivative() const {
        FPoly d;
        for (size_t i = 1; i < c.size(); ++i) d.c.push_back(FieldElem(Rat((long)i)) * c[i]);
        d.trim();
        return d;
    }
};

// Distinct real roots, sorted increasingly, as exact field elements.
std::vector<FieldElem> fpoly_real_roots(const FPoly& p);

// Resultant-based polynomial over Q vanishing at every root of p (square-free).
QPoly norm_poly_from_field(const FPoly& p);

} // namespace hopf3

#endif
