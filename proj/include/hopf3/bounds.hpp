#ifndef HOPF3_BOUNDS_HPP
#define HOPF3_BOUNDS_HPP

#include "hopf3/series.hpp"

#include <functional>

namespace hopf3 {

// Exact upper bound for |s| on the closed polydisc |z| <= rz, |rho| <= rr
// (uniform over real theta for trig-polynomial coefficients).
Rat poly_sup(const TSeries& s, const Rat& rz, const Rat& rr);
Rat poly_sup(const SSeries& s, const Rat& rz, const Rat& rr);

// Upper bound for sum_{a+b>N} M (sz/rz)^a (sr/rr)^b  (2-variable Cauchy tail;
// requires sz < rz and sr < rr).
Rat cauchy_tail_2d(const Rat& M, const Rat& rz, const Rat& rr, int N, const Rat& sz,
                   const Rat& sr);

// Upper bound for M * sum_{b>W} (s/rr)^b (one-variable graded tail).
Rat geometric_tail(const Rat& M, const Rat& rr, int W, const Rat& s);

// A-priori enclosure of the time-2pi flow of the chart system
//   dz/dtheta = f, drho/dtheta = g
// started on the polydisc (rz_in, rr_in): the solution stays inside
// (rz_out, rr_out) and the Poincaré map is analytic on the input polydisc
// with |Psi_z| <= rz_out, |Psi_rho| <= rr_out.
struct FlowEnclosure {
    bool ok = false;
    Rat rz_in, rr_in, rz_out, rr_out;
};

// Mf(r) must bound |f| on the polydisc r (callers build it from the exact
// polynomial numerators and the unit-denominator lower bound).
FlowEnclosure flow_enclosure(const std::function<Rat(const Rat&, const Rat&)>& sup_f,
                             const std::function<Rat(const Rat&, const Rat&)>& sup_g,
                             Rat rz_in, Rat rr_in);

// Lower bound of |u| for the unit u = B_theta on the polydisc, as
// u(0,0)=1 minus the monomial bound of the rest; 0 if not certifiable there.
Rat unit_lower_bound(const TSeries& btheta, const Rat& rz, const Rat& rr);

} // namespace hopf3

#endif
