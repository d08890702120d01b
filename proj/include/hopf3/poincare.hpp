#ifndef HOPF3_POINCARE_HPP
#define HOPF3_POINCARE_HPP

#include "hopf3/bounds.hpp"
#include "hopf3/planar.hpp"

namespace hopf3 {

// Chart data translated so a non-corner characteristic cycle sits at the
// origin of its section.
struct CycleChartData {
    int element = -1;
    TSeries f, g;        // associated system dz/dtheta, drho/dtheta (rho-jets to work order)
    SSeries bz, brho;    // exact translated B-pair (theta-free, polynomial)
    TSeries btheta;      // exact translated B_theta
    int n1 = 0;
    int work = 0;
};

CycleChartData cycle_chart_data(const BlowupTree& tree, int element_id);

// Jet of the first-return map in (z, rho), coefficients in Q[pi].
struct PoincareJet {
    SSeries Pz, Pr;
    int order = 0;
};

// Closed-form jet transport: coefficientwise integration of the
// non-autonomous system in theta, evaluated at theta = 2 pi.
PoincareJet poincare_jet(const CycleChartData& c, int order);

// Truncated exponential Exp(2 pi xi~)(z,rho) for theta-free data: the
// independent route of the flow/exponential identity.
PoincareJet exp_flow_jet(const CycleChartData& c, int order);

// Formal invariant surface z = h(theta, rho) of the chart field along the
// cycle; theta-free sections carry h as a plain series in rho.
struct InvariantSurfaceJet {
    SSeries h;       // z-free series in rho (vars (z,rho))
    bool exact = false; // certified polynomial invariant curve
};

InvariantSurfaceJet invariant_surface_jet(const CycleChartData& c,
                                          const PlanarClassification& cls, int order);

// Restriction of P to the invariant curve: Theta(rho) with
// P(h(rho), rho) = (h(Theta), Theta).
struct CurveRestriction {
    SSeries theta;     // Theta as a series in rho
    int m = -1;        // ord(Theta - rho) - 1, or -1 when identity to the order
    Scalar leading;    // coefficient of rho^{m+1} in Theta - rho
    bool invariance_ok = false;
};

CurveRestriction restriction_to_curve(const PoincareJet& P, const SSeries& h, int order);

enum class FixKind { NonFix, FixExact, FixUpTo };

struct FixVerdict {
    FixKind kind = FixKind::FixUpTo;
    int m = -1;
    Scalar leading;
    int order_checked = 0;
};

FixVerdict fix_verdict(const CycleChartData& c, const PoincareJet& P,
                       const InvariantSurfaceJet& S, int order);

// Certified cone data per Lemmas on periodic points near the curve.
struct ConeParams {
    FixKind kind;
    int N = 0;
    int k = 0, s = 0;
    Scalar alpha;          // leading coefficient (exact, in Q[pi])
    int monotone_sign = 0; // sign of rho o P - rho inside the cone (NonFix)
    Rat delta;             // certified cone radius
    Rat K;                 // bound used in the inequality chain
    Rat C = Rat(1);        // 3D cone opening constant
    bool rho_fixed = false;    // FIX branch with rho o P = rho identically
    int z_monotone_sign = 0;   // FIX branch: sign driving the z-coordinate
    bool certified = false;
    std::string note;
};

ConeParams cone_parameters(const CycleChartData& c, const PoincareJet& P,
                           const InvariantSurfaceJet& S, const FixVerdict& v);

// Lemma on transporting cones through a chart diffeomorphism jet: given
// phi = id + (phi_theta, phi_z, phi_rho) with entries divisible by rho and of
// order >= 2, surfaces S1, S2 with phi^*(S2) = S1, find C2 < C1 and delta2
// with phi^{-1}(Sigma_{N,C2,delta2}(S2)) inside Sigma_{N,C1,delta1}(S1).
struct ConeTransport {
    bool ok = false;
    Rat C2, delta2;
};

ConeTransport cone_transport_check(const TSeries& phi_z, const TSeries& phi_rho,
                                   const SSeries& f1, const SSeries& f2, int N,
                                   const Rat& C1, const Rat& delta1);

} // namespace hopf3

#endif
