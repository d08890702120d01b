#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopf3/planar.hpp"

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
SSeries Zs() { return SSeries::var(2, CZ); }
SSeries Rs() { return SSeries::var(2, CR); }
SSeries c2(long n) { return SSeries::constant(2, Scalar(n)); }

} // namespace

TEST_CASE("hand Jacobian oracle: cone reduced field at the origin") {
    // eta' = 2z(z^2-1) dz + rho(1-z^2) drho: diag(-2, 1), ratio -2
    SSeries xz = Scalar(2) * Zs() * (Zs() * Zs() - c2(1));
    SSeries xr = Rs() * (c2(1) - Zs() * Zs());
    auto cls = classify_planar(xz, xr, false, 10);
    CHECK(cls.status == SingStatus::Simple);
    CHECK(cls.lambda_z == Scalar(-2));
    CHECK(cls.lambda_rho == Scalar(1));
    CHECK(cls.div_rho_invariant);
    // eigenvalue ratio agrees with a brute-force rational search (denominators <= 50)
    bool in_pos_q = false;
    for (int p = 1; p <= 50 && !in_pos_q; ++p)
        for (int q = 1; q <= 50; ++q)
            if (cls.lambda_z * Scalar(Rat(q)) == cls.lambda_rho * Scalar(Rat(p))) {
                in_pos_q = true;
                break;
            }
    CHECK_FALSE(in_pos_q);
    // separatrix through it: h = 0
    SSeries h = separatrix_jet(xz, xr, cls, 10);
    CHECK(h.is_zero());
}

TEST_CASE("factorization oracle: cone reduced field at (1,0)") {
    SSeries xz = Scalar(2) * Zs() * (Zs() * Zs() - c2(1));
    SSeries xr = Rs() * (c2(1) - Zs() * Zs());
    auto cls = classify_planar(xz.translate(CZ, Scalar(1)), xr.translate(CZ, Scalar(1)),
                               false, 10);
    CHECK(cls.status == SingStatus::NonSaturatedSimple);
    CHECK(cls.r == 1);
    CHECK(cls.gamma.is_zero());
    CHECK(cls.gamma_exact);
    CHECK(cls.cof_z0 == Scalar(4)); // cofactor 2(z+1)(z+2) at 0
}

TEST_CASE("direct inspection oracle: z^2 dz with F = {rho=0}") {
    SSeries xz = Zs() * Zs();
    SSeries xr = SSeries::zero(2);
    auto cls = classify_planar(xz, xr, false, 10);
    CHECK(cls.status == SingStatus::NonSaturatedSimple);
    CHECK(cls.r == 2);
    CHECK(cls.gamma.is_zero());
    CHECK(cls.cof_z0 == Scalar(1));
}

TEST_CASE("non-simple germs escalate") {
    // nilpotent: z^2 - rho z, rho^2 (from R=u, Z=v^2)
    auto cls = classify_planar(Zs() * Zs() - Rs() * Zs(), Rs() * Rs(), false, 10);
    CHECK(cls.status == SingStatus::NonSimple);
    // positive rational ratio
    auto cls2 = classify_planar(Zs() + Zs() * Zs(), Scalar(2) * Rs(), false, 10);
    CHECK(cls2.status == SingStatus::NonSimple);
    // negative ratio is fine
    auto cls3 = classify_planar(Zs(), -Scalar(2) * Rs(), false, 10);
    CHECK(cls3.status == SingStatus::Simple);
    // cusp singular locus (z^2 - rho^3 divides both): not a transverse graph
    SSeries cusp = Zs() * Zs() - Rs() * Rs() * Rs();
    auto cls4 = classify_planar(cusp * c2(1), cusp * (c2(1) + Zs()), false, 10);
    CHECK(cls4.status == SingStatus::NonSimple);
}

TEST_CASE("separatrix via undetermined coefficients") {
    // dz/dt = -z + rho^2, drho/dt = rho: separatrix z = h(rho):
    // -h + rho^2 - h' rho = 0 order by order: h = rho^2/3... check: h=c rho^2:
    // -c rho^2 + rho^2 - 2c rho^2 = 0 -> c = 1/3
    SSeries xz = -Zs() + Rs() * Rs();
    SSeries xr = Rs();
    auto cls = classify_planar(xz, xr, false, 12);
    REQUIRE(cls.status == SingStatus::Simple);
    SSeries h = separatrix_jet(xz, xr, cls, 12);
    SSeries want(2);
    Mono m;
    m.e[CR] = 2;
    want.set_coeff(m, Scalar(Rat(1, 3)));
    CHECK(h == want);
    // invariance identity to the working order
    std::vector<SSeries> args{h, Rs()};
    SSeries res = xz.compose(args, 12) - h.derivative(CR) * xr.compose(args, 12);
    CHECK(res.is_zero());
}

TEST_CASE("axis pole resolution") {
    BlowupTree tc = blow_up_origin(cone_field(), 12);
    auto r = resolve_axis_poles(tc, true, 10);
    CHECK(r.resolved);
    CHECK(r.t == 3);
    CHECK(r.blowups == 0);
    CHECK(r.trace == std::vector<int>{1, 3}); // t_0 = 1 from v^3 - uv, then t = 3
    auto r2 = resolve_axis_poles(tc, false, 10);
    CHECK(r2.resolved);
    CHECK(r2.t == 3);

    BlowupTree tp = blow_up_origin(plane_field(), 12);
    auto rp = resolve_axis_poles(tp, true, 10);
    CHECK(rp.resolved);
    CHECK(rp.t == 2);

    // Z = v^3 + u v^2: one recursion stage t_0 = 2 -> t_1 = 3 (traced by the
    // identity t_1 = t_0 + nu(G); the origin blow-up itself realizes it)
    VectorField3 f = rotational_field(uv(0, 0), SSeries::zero(2), uv(0, 3) + uv(1, 2));
    BlowupTree t3 = blow_up_origin(f, 12);
    auto r3 = resolve_axis_poles(t3, true, 10);
    CHECK(r3.resolved);
    CHECK(r3.t == 3);
    CHECK(r3.trace == std::vector<int>{2, 3});

    // degenerate Z = uv: never resolves
    VectorField3 fd = rotational_field(uv(0, 0), SSeries::zero(2), uv(1, 1));
    BlowupTree td = blow_up_origin(fd, 12);
    auto rd = resolve_axis_poles(td, true, 3);
    CHECK_FALSE(rd.resolved);
}

TEST_CASE("adapted resolution of the fixtures") {
    BlowupTree tc = blow_up_origin(cone_field(), 12);
    auto rc = adapted_resolution(tc, 20);
    REQUIRE(rc.complete);
    CHECK(tc.length == 0); // complete after the single origin blow-up
    int n_noncorner = 0;
    for (const auto& [eid, ent] : rc.entries) {
        const Element& el = tc.elements[eid];
        if (el.kind != ElementKind::NonCornerCycle) continue;
        ++n_noncorner;
        CHECK(ent.separatrix.is_zero()); // h == 0 at all three cycles
        // non-corner cycles lie on non-dicritical components
        CHECK_FALSE(tc.components[el.comp_a].dicritical);
    }
    CHECK(n_noncorner == 3);

    BlowupTree tp = blow_up_origin(plane_field(), 12);
    auto rp = adapted_resolution(tp, 20);
    REQUIRE(rp.complete);
    CHECK(tp.length == 0);
    int np = 0;
    for (const auto& [eid, ent] : rp.entries)
        if (tp.elements[eid].kind == ElementKind::NonCornerCycle) {
            ++np;
            CHECK(ent.separatrix.is_zero());
            CHECK(ent.cls.status == SingStatus::NonSaturatedSimple);
        }
    CHECK(np == 1);
}

TEST_CASE("a field needing one extra cycle blow-up resolves") {
    // R = u, Z = v^2: nilpotent reduced singularity at z = 0
    VectorField3 f = rotational_field(uv(0, 0), uv(1, 0), uv(0, 2));
    BlowupTree t = blow_up_origin(f, 12);
    auto r = adapted_resolution(t, 25);
    CHECK(r.complete);
    CHECK(t.length >= 1);
    // every live element carries a final status
    for (int eid : t.live_elements()) {
        const Element& el = t.elements[eid];
        if (el.kind == ElementKind::SingularityPlus || el.kind == ElementKind::SingularityMinus)
            continue;
        CHECK(r.entries.count(eid) == 1);
    }
}
