#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopf3/poincare.hpp"

using namespace hopf3;

namespace {

SSeries uv(int a, int c, Scalar k = Scalar(1)) {
    SSeries s(2);
    Mono m;
    m.e[VU] = a;
    m.e[VV] = c;
    s.set_coeff(m, k);
    return s;
}
VectorField3 cone_field() {
    return rotational_field(uv(0, 0), uv(1, 0) - uv(0, 2), uv(0, 3) - uv(1, 1));
}
VectorField3 plane_field() {
    return rotational_field(uv(0, 0), SSeries::zero(2), uv(0, 2));
}

int find_cycle(const BlowupTree& t, const Scalar& w) {
    for (const auto& e : t.elements)
        if (!e.consumed && e.kind == ElementKind::NonCornerCycle && e.omega == w) return e.id;
    return -1;
}

Scalar coeff(const SSeries& s, int a, int b) {
    Mono m;
    m.e[CZ] = a;
    m.e[CR] = b;
    return s.coeff(m);
}

} // namespace

TEST_CASE("Poincare jets on the cone fixture") {
    BlowupTree tree = blow_up_origin(cone_field(), 16);
    auto res = adapted_resolution(tree, 20);
    REQUIRE(res.complete);

    SUBCASE("cycle at omega=1: leading displacement 8 pi rho^2 z") {
        int id = find_cycle(tree, Scalar(1));
        REQUIRE(id >= 0);
        CycleChartData c = cycle_chart_data(tree, id);
        PoincareJet P = poincare_jet(c, 5);
        // hand oracle: dz/dtheta = rho^2 2(z+1)z(z+2), drho = -rho^3 z(z+2):
        // first order in the displacement: z o P - z = 2pi * 4 z rho^2 = 8pi rho^2 z
        SSeries dz = P.Pz - SSeries::var(2, CZ);
        CHECK(coeff(dz, 1, 2) == Scalar::pi(1, Rat(8)));
        CHECK(coeff(dz, 0, 2).is_zero());
        CHECK(coeff(dz, 0, 0).is_zero());
        SSeries dr = P.Pr - SSeries::var(2, CR);
        CHECK(coeff(dr, 1, 3) == Scalar::pi(1, Rat(-4)));
        // divisor {rho=0} pointwise fixed and tangency to the identity
        CHECK(dz.ord_var(CR) >= 1);
        CHECK(dr.ord_var(CR) >= 1);
        CHECK(dz.ord_total() >= 2);
        CHECK(dr.ord_total() >= 2);
    }

    SUBCASE("cycle at omega=0: Theta = rho + 2 pi rho^3 + 6 pi^2 rho^5 + ...") {
        int id = find_cycle(tree, Scalar(0));
        REQUIRE(id >= 0);
        CycleChartData c = cycle_chart_data(tree, id);
        PoincareJet P = poincare_jet(c, 6);
        InvariantSurfaceJet S = invariant_surface_jet(c, res.entries.at(id).cls, 6);
        CHECK(S.h.is_zero());
        CHECK(S.exact);
        CurveRestriction r = restriction_to_curve(P, S.h, 6);
        REQUIRE(r.invariance_ok);
        CHECK(r.m == 2);
        CHECK(r.leading == Scalar::pi(1, Rat(2)));
        // the separable exact solution rho (1 - 4 pi rho^2)^{-1/2}
        CHECK(coeff(r.theta, 0, 1) == Scalar(1));
        CHECK(coeff(r.theta, 0, 3) == Scalar::pi(1, Rat(2)));
        CHECK(coeff(r.theta, 0, 5) == Scalar::pi(2, Rat(6)));
        FixVerdict v = fix_verdict(c, P, S, 6);
        CHECK(v.kind == FixKind::NonFix);
        CHECK(v.m == 2);
        CHECK(v.leading == Scalar::pi(1, Rat(2)));
    }

    SUBCASE("cycles at omega=±1 are FIX-exact") {
        for (long w : {1L, -1L}) {
            int id = find_cycle(tree, Scalar(w));
            REQUIRE(id >= 0);
            CycleChartData c = cycle_chart_data(tree, id);
            PoincareJet P = poincare_jet(c, 5);
            InvariantSurfaceJet S = invariant_surface_jet(c, res.entries.at(id).cls, 5);
            CHECK(S.h.is_zero());
            FixVerdict v = fix_verdict(c, P, S, 5);
            CHECK(v.kind == FixKind::FixExact);
        }
    }
}

TEST_CASE("Poincare jet on the plane fixture: exact geometric series") {
    BlowupTree tree = blow_up_origin(plane_field(), 16);
    auto res = adapted_resolution(tree, 20);
    REQUIRE(res.complete);
    int id = find_cycle(tree, Scalar(0));
    REQUIRE(id >= 0);
    CycleChartData c = cycle_chart_data(tree, id);
    PoincareJet P = poincare_jet(c, 7);
    // rho o P = rho exactly
    CHECK((P.Pr - SSeries::var(2, CR)).is_zero());
    // z o P = z / (1 - 2 pi rho z) = z + 2pi rho z^2 + 4pi^2 rho^2 z^3 + ...
    SSeries dz = P.Pz - SSeries::var(2, CZ);
    CHECK(coeff(dz, 2, 1) == Scalar::pi(1, Rat(2)));
    CHECK(coeff(dz, 3, 2) == Scalar::pi(2, Rat(4)));
    CHECK(coeff(dz, 4, 3) == Scalar::pi(3, Rat(8)));
    CHECK(coeff(dz, 2, 2).is_zero());
    InvariantSurfaceJet S = invariant_surface_jet(c, res.entries.at(id).cls, 7);
    FixVerdict v = fix_verdict(c, P, S, 7);
    CHECK(v.kind == FixKind::FixExact);
    // identity-on-rho branch of the fixed-curve lemma: monotone z
    ConeParams cp = cone_parameters(c, P, S, v);
    CHECK(cp.certified);
    CHECK(cp.rho_fixed);
    CHECK(cp.z_monotone_sign > 0); // z o P - z = 2 pi rho z^2 + ...: A = 2pi rho
    CHECK(cp.delta > 0);
}

TEST_CASE("exponential/flow identity through total order 3") {
    for (const VectorField3& f : {cone_field(), plane_field()}) {
        BlowupTree tree = blow_up_origin(f, 16);
        auto res = adapted_resolution(tree, 20);
        REQUIRE(res.complete);
        for (const auto& e : tree.elements) {
            if (e.consumed || e.kind != ElementKind::NonCornerCycle) continue;
            CycleChartData c = cycle_chart_data(tree, e.id);
            PoincareJet P = poincare_jet(c, 3);
            PoincareJet E = exp_flow_jet(c, 3);
            CHECK((P.Pz.jet(3) - E.Pz.jet(3)).is_zero());
            CHECK((P.Pr.jet(3) - E.Pr.jet(3)).is_zero());
        }
    }
}

TEST_CASE("cone parameters for the NONFIX cycle") {
    BlowupTree tree = blow_up_origin(cone_field(), 16);
    auto res = adapted_resolution(tree, 20);
    REQUIRE(res.complete);
    int id = find_cycle(tree, Scalar(0));
    CycleChartData c = cycle_chart_data(tree, id);
    PoincareJet P = poincare_jet(c, 6);
    InvariantSurfaceJet S = invariant_surface_jet(c, res.entries.at(id).cls, 6);
    FixVerdict v = fix_verdict(c, P, S, 6);
    REQUIRE(v.kind == FixKind::NonFix);
    ConeParams cp = cone_parameters(c, P, S, v);
    CHECK(cp.certified);
    CHECK(cp.N == 3);
    CHECK(cp.k == 3);
    CHECK(cp.s == 0);
    CHECK(cp.alpha == Scalar::pi(1, Rat(2)));
    CHECK(cp.monotone_sign == 1);
    CHECK(cp.delta > 0);
    // relations from the no-periodic-points lemma
    CHECK(cp.k + cp.s == v.m + 1);
    CHECK(cp.N == v.m + 1);
}

TEST_CASE("FIX cone parameters at omega=1") {
    BlowupTree tree = blow_up_origin(cone_field(), 16);
    auto res = adapted_resolution(tree, 20);
    REQUIRE(res.complete);
    int id = find_cycle(tree, Scalar(1));
    CycleChartData c = cycle_chart_data(tree, id);
    PoincareJet P = poincare_jet(c, 6);
    InvariantSurfaceJet S = invariant_surface_jet(c, res.entries.at(id).cls, 6);
    FixVerdict v = fix_verdict(c, P, S, 6);
    REQUIRE(v.kind == FixKind::FixExact);
    ConeParams cp = cone_parameters(c, P, S, v);
    CHECK(cp.certified);
    CHECK_FALSE(cp.rho_fixed); // rho o P - rho = -4 pi rho^3 z + ...
    CHECK(cp.delta > 0);
    CHECK(cp.N > cp.s);
}

TEST_CASE("synthetic separatrix round trip: z = rho + rho^2") {
    // X_z = -(z - h) + h' X_rho with X_rho = rho, pushed through nothing:
    // X_z = -z + 2 rho + 3 rho^2, exactly invariant along z = h(rho).
    SSeries z = SSeries::var(2, CZ), rho = SSeries::var(2, CR);
    SSeries xz = -z + Scalar(2) * rho + Scalar(3) * (rho * rho);
    SSeries xr = rho;
    auto cls = classify_planar(xz, xr, false, 12);
    REQUIRE(cls.status == SingStatus::Simple);
    SSeries h = separatrix_jet(xz, xr, cls, 12);
    SSeries want(2);
    Mono m1, m2;
    m1.e[CR] = 1;
    m2.e[CR] = 2;
    want.set_coeff(m1, Scalar(1));
    want.set_coeff(m2, Scalar(1));
    CHECK(h == want);
}

TEST_CASE("cone transport through a chart diffeomorphism jet") {
    SSeries zero1(2);
    // f1 = f2 = 0; phi = id: (C2, delta2) = (C1/2, <= delta1), trivially certified
    ConeTransport t0 = cone_transport_check(TSeries::zero(2), TSeries::zero(2), zero1, zero1,
                                            2, Rat(1), Rat(1, 4));
    CHECK(t0.ok);
    CHECK(t0.delta2 <= Rat(1, 4));
    // phi with a z-perturbation rho^2 (divisible by rho, order 2):
    // maps S1 = {z = -rho^2} to S2 = {z = 0}
    TSeries pz(2);
    {
        Mono m;
        m.e[CR] = 2;
        pz.set_coeff(m, TrigPoly(Scalar(1)));
    }
    SSeries f1(2);
    {
        Mono m;
        m.e[CR] = 2;
        f1.set_coeff(m, Scalar(-1));
    }
    ConeTransport t1 = cone_transport_check(pz, TSeries::zero(2), f1, zero1, 2, Rat(1), Rat(1, 4));
    CHECK(t1.ok);
    CHECK(t1.C2 < Rat(1));
    // N = 1 degenerate cone still certified
    ConeTransport t2 = cone_transport_check(pz, TSeries::zero(2), f1, zero1, 1, Rat(1), Rat(1, 4));
    CHECK(t2.ok);
}
