#include "hopf3/bounds.hpp"

namespace hopf3 {

Rat poly_sup(const TSeries& s, const Rat& rz, const Rat& rr) {
    Rat acc(0);
    for (const auto& [m, c] : s.terms())
        acc += c.sup_bound() * rat_pow(rz, (unsigned)m.e[CZ]) * rat_pow(rr, (unsigned)m.e[CR]);
    return acc;
}

Rat poly_sup(const SSeries& s, const Rat& rz, const Rat& rr) {
    Rat acc(0);
    for (const auto& [m, c] : s.terms())
        acc += c.enclosure().mag() * rat_pow(rz, (unsigned)m.e[CZ]) *
               rat_pow(rr, (unsigned)m.e[CR]);
    return acc;
}

Rat cauchy_tail_2d(const Rat& M, const Rat& rz, const Rat& rr, int N, const Rat& sz,
                   const Rat& sr) {
    Rat qz = sz / rz, qr = sr / rr;
    Rat q = std::max(qz, qr);
    if (q >= 1) throw std::domain_error("cauchy_tail_2d: radius not inside the polydisc");
    // sum_{d>N} (d+1) q^d = 1/(1-q)^2 - sum_{d<=N} (d+1) q^d
    Rat total = Rat(1) / ((Rat(1) - q) * (Rat(1) - q));
    Rat partial(0), qp(1);
    for (int d = 0; d <= N; ++d) {
        partial += Rat(d + 1) * qp;
        qp *= q;
    }
    return M * (total - partial);
}

Rat geometric_tail(const Rat& M, const Rat& rr, int W, const Rat& s) {
    Rat q = s / rr;
    if (q >= 1) throw std::domain_error("geometric_tail: radius not inside the disc");
    return M * rat_pow(q, (unsigned)(W + 1)) / (Rat(1) - q);
}

FlowEnclosure flow_enclosure(const std::function<Rat(const Rat&, const Rat&)>& sup_f,
                             const std::function<Rat(const Rat&, const Rat&)>& sup_g,
                             Rat rz_in, Rat rr_in) {
    FlowEnclosure e;
    e.rz_in = rz_in;
    e.rr_in = rr_in;
    const Rat two_pi_ub(7); // 2*pi < 7
    for (long factor : {2L, 4L}) {
        Rat rz = rz_in * factor, rr = rr_in * factor;
        Rat mf = sup_f(rz, rr), mg = sup_g(rz, rr);
        if (rz_in + two_pi_ub * mf <= rz && rr_in + two_pi_ub * mg <= rr) {
            e.ok = true;
            e.rz_out = rz;
            e.rr_out = rr;
            return e;
        }
    }
    // fails on this polydisc; the caller shrinks the input radii
    return e;
}

Rat unit_lower_bound(const TSeries& btheta, const Rat& rz, const Rat& rr) {
    Rat rest(0);
    for (const auto& [m, c] : btheta.terms()) {
        if (m == Mono{}) continue;
        rest += c.sup_bound() * rat_pow(rz, (unsigned)m.e[CZ]) * rat_pow(rr, (unsigned)m.e[CR]);
    }
    Rat lb = Rat(1) - rest;
    return lb > 0 ? lb : Rat(0);
}

} // namespace hopf3
