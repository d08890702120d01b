#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopf3/normal_form.hpp"

#include <random>

using namespace hopf3;

namespace {

SSeries X() { return SSeries::var(3, VX); }
SSeries Y() { return SSeries::var(3, VY); }
SSeries Z3() { return SSeries::var(3, VZ); }

// Cone fixture, sign-corrected z-component: T=1, R=u-v^2, Z=v^3-uv.
VectorField3 cone_field() {
    VectorField3 f = VectorField3::zero();
    SSeries u = X() * X() + Y() * Y();
    f.x = -Y() - X() * (Z3() * Z3()) + X() * u;
    f.y = X() - Y() * (Z3() * Z3()) + Y() * u;
    f.z = Z3() * Z3() * Z3() - Z3() * u;
    return f;
}

VectorField3 plane_field() {
    VectorField3 f = VectorField3::zero();
    f.x = -Y();
    f.y = X();
    f.z = Z3() * Z3();
    return f;
}

SSeries uv(int a, int c, Scalar k = Scalar(1)) {
    SSeries s(2);
    Mono m;
    m.e[VU] = a;
    m.e[VV] = c;
    s.set_coeff(m, k);
    return s;
}

std::mt19937 rng(7);

} // namespace

TEST_CASE("rotationally symmetric input is recognized exactly") {
    VectorField3 f = cone_field();
    HopfData h = detect_hopf(f);
    CHECK(h.b == Scalar(1));
    CHECK(h.c.is_zero());
    RotationalNormalForm nf = takens_normal_form(f, h.c, 6);
    CHECK(nf.exact);
    CHECK(nf.identity_phi);
    CHECK(nf.T == uv(0, 0));                    // T = 1
    CHECK(nf.R == uv(1, 0) - uv(0, 2));         // R = u - v^2
    CHECK(nf.Z == uv(0, 3) - uv(1, 1));         // Z = v^3 - u v
    // reconstruction round-trips
    VectorField3 back = rotational_field(nf.T, nf.R, nf.Z);
    CHECK((back - f).is_zero());
}

TEST_CASE("plane fixture: T=1, R=0, Z=v^2") {
    RotationalNormalForm nf = takens_normal_form(plane_field(), Scalar(), 4);
    CHECK(nf.exact);
    CHECK(nf.T == uv(0, 0));
    CHECK(nf.R.is_zero());
    CHECK(nf.Z == uv(0, 2));
    VectorField3 xl = truncated_normal_form(nf, 2);
    CHECK((xl - plane_field()).is_zero());
}

TEST_CASE("averaging oracle: R coefficient of u is the angular mean") {
    // xi = (-y + x^3) dx + x dy + z^2 dz: mean of the radial component
    // r' = x^4/r = r^3 cos^4 -> mean 3/8 r^3, so R(u,v) = (3/8) u + ...
    VectorField3 f = VectorField3::zero();
    f.x = -Y() + X() * X() * X();
    f.y = X();
    f.z = Z3() * Z3();
    RotationalNormalForm nf = takens_normal_form(f, Scalar(), 3);
    CHECK_FALSE(nf.exact);
    CHECK(nf.R.coeff(Mono{{1, 0, 0}}) == Scalar(Rat(3, 8)));
    CHECK(nf.T.coeff(Mono{}) == Scalar(1));
}

TEST_CASE("homological solve: j_ell of the transformed field is resonant") {
    // random perturbation of the plane fixture
    std::uniform_int_distribution<int> co(-2, 2);
    for (int trial = 0; trial < 5; ++trial) {
        VectorField3 f = plane_field();
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; a + b <= 2; ++b) {
                int c = 2 - a - b;
                Mono m{{a, b, c}};
                f.x.add_coeff(m, Scalar(Rat(co(rng), 3)));
                f.y.add_coeff(m, Scalar(Rat(co(rng), 2)));
                f.z.add_coeff(m, Scalar(Rat(co(rng), 5)));
            }
        int ell = 4;
        RotationalNormalForm nf = takens_normal_form(f, Scalar(), ell);
        // truncated normal form is rotationally symmetric by construction;
        // recomputing its normal form must be the identity transformation
        VectorField3 xl = truncated_normal_form(nf, ell);
        RotationalNormalForm nf2 = takens_normal_form(xl, Scalar(), ell);
        CHECK(nf2.exact);
        CHECK(nf2.identity_phi);
        auto wcap = [ell](const SSeries& s, int budget) {
            SSeries r(2);
            for (const auto& [m, c] : s.terms())
                if (2 * m.e[VU] + m.e[VV] <= budget) r.set_coeff(m, c);
            return r;
        };
        CHECK(wcap(nf2.T, ell - 1) == wcap(nf.T, ell - 1));
        CHECK(wcap(nf2.R, ell - 1) == wcap(nf.R, ell - 1));
        CHECK(wcap(nf2.Z, ell) == wcap(nf.Z, ell));
    }
}

TEST_CASE("phi conjugates: j_ell(phi^* xi) equals the normal form jet") {
    VectorField3 f = VectorField3::zero();
    f.x = -Y() + X() * X() * X();
    f.y = X();
    f.z = Z3() * Z3() + X() * X();
    int ell = 4;
    RotationalNormalForm nf = takens_normal_form(f, Scalar(), ell);
    // pull back f through phi by brute force and compare ell-jets
    std::vector<SSeries> args{nf.phi.x, nf.phi.y, nf.phi.z};
    std::array<SSeries, 3> comp{f.x.compose(args, ell), f.y.compose(args, ell),
                                f.z.compose(args, ell)};
    // solve Dphi * eta = comp order by order: eta = (Dphi)^{-1} comp
    std::array<std::array<SSeries, 3>, 3> dphi;
    std::array<const SSeries*, 3> pc{&nf.phi.x, &nf.phi.y, &nf.phi.z};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) dphi[i][j] = pc[i]->derivative(j);
    // Neumann inverse of I + (Dphi - I)
    std::array<std::array<SSeries, 3>, 3> n, acc, pw;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            n[i][j] = dphi[i][j] - (i == j ? SSeries::constant(3, Scalar(1)) : SSeries::zero(3));
            acc[i][j] = i == j ? SSeries::constant(3, Scalar(1)) : SSeries::zero(3);
            pw[i][j] = acc[i][j];
        }
    for (int k = 1; k <= ell; ++k) {
        std::array<std::array<SSeries, 3>, 3> nxt;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                SSeries s(3);
                for (int t = 0; t < 3; ++t) s = s + pw[i][t] * n[t][j];
                nxt[i][j] = (-s).jet(ell);
            }
        pw = std::move(nxt);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) acc[i][j] = acc[i][j] + pw[i][j];
    }
    VectorField3 pulled = VectorField3::zero();
    std::array<SSeries*, 3> dst{&pulled.x, &pulled.y, &pulled.z};
    for (int i = 0; i < 3; ++i) {
        SSeries s(3);
        for (int j = 0; j < 3; ++j) s = s + acc[i][j] * comp[j];
        *dst[i] = s.jet(ell);
    }
    VectorField3 want = truncated_normal_form(nf, ell);
    CHECK((pulled.x.jet(ell) - want.x.jet(ell)).is_zero());
    CHECK((pulled.y.jet(ell) - want.y.jet(ell)).is_zero());
    CHECK((pulled.z.jet(ell) - want.z.jet(ell)).is_zero());
}

TEST_CASE("isolated singularity check") {
    RotationalNormalForm nf;
    nf.exact = true;
    nf.T = uv(0, 0);
    nf.R = SSeries::zero(2);
    nf.Z = uv(0, 3) - uv(1, 1); // v^3 - uv: isolated via v^3
    auto r = isolated_singularity_check(nf, 8);
    CHECK(r.kind == IsolatedCheck::Isolated);
    CHECK(r.order == 3);
    nf.Z = uv(1, 1); // uv: Z(0,v) = 0 identically
    auto r2 = isolated_singularity_check(nf, 8);
    CHECK(r2.kind == IsolatedCheck::AxisOfSingularities);
    nf.exact = false;
    nf.ell = 8;
    auto r3 = isolated_singularity_check(nf, 8);
    CHECK(r3.kind == IsolatedCheck::Undetermined);
    nf.Z = uv(0, 2);
    auto r4 = isolated_singularity_check(nf, 8);
    CHECK(r4.kind == IsolatedCheck::Isolated);
    CHECK(r4.order == 2);
}
