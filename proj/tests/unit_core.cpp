#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopf3/series.hpp"
#include "hopf3/vf.hpp"

#include <random>

using namespace hopf3;

namespace {

SSeries svar(int i) { return SSeries::var(2, i); }
SSeries sconst(long n) { return SSeries::constant(2, Scalar(n)); }

// Brute-force polynomial product used as the independent oracle for jet
// arithmetic: multiply fully, then truncate.
SSeries mul_then_truncate(const SSeries& f, const SSeries& g, int k) {
    SSeries full = f * g;
    return full.jet(k);
}

std::mt19937 rng(20240817);

Scalar random_rat() {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    return Scalar(Rat(num(rng), den(rng)));
}

SSeries random_series(int nvars, int deg, bool unit) {
    SSeries s(nvars);
    std::uniform_int_distribution<int> pick(0, 2);
    for (int a = 0; a <= deg; ++a)
        for (int b = 0; a + b <= deg; ++b) {
            if (pick(rng) == 0) continue;
            Mono m;
            m.e[0] = a;
            m.e[1] = b;
            s.add_coeff(m, random_rat());
        }
    Mono m0;
    if (unit) s.set_coeff(m0, Scalar(1));
    return s;
}

} // namespace

TEST_CASE("rational roots: Sturm isolation") {
    // 2z^3 - 2z -> {-1, 0, 1}
    QPoly p{{Rat(0), Rat(-2), Rat(0), Rat(2)}};
    auto roots = isolate_real_roots(p);
    REQUIRE(roots.size() == 3);
    std::vector<Rat> expect{Rat(-1), Rat(0), Rat(1)};
    for (size_t i = 0; i < 3; ++i) {
        CHECK(roots[i].iv.lo <= expect[i]);
        CHECK(roots[i].iv.hi >= expect[i]);
    }
    // z^2 + 1 -> no real roots
    QPoly q{{Rat(1), Rat(0), Rat(1)}};
    CHECK(isolate_real_roots(q).empty());
    // z^2 - 2 -> two roots with disjoint isolating intervals
    QPoly r{{Rat(-2), Rat(0), Rat(1)}};
    auto rr = isolate_real_roots(r);
    REQUIRE(rr.size() == 2);
    CHECK(rr[0].iv.hi < rr[1].iv.lo);
    CHECK(rr[1].iv.lo > 0);
    FieldElem s2 = algebraic_from_root(rr[1]);
    // sqrt(2)^2 == 2
    CHECK((s2 * s2 - FieldElem(Rat(2))).is_zero());
    CHECK(s2.sign() == 1);
    // count matches Sturm count over the Cauchy bound
    auto chain = sturm_chain(qpoly_squarefree(p));
    Rat b = cauchy_bound(p);
    CHECK(sturm_count(chain, -b, b) == 3);
}

TEST_CASE("algebraic arithmetic and field joins") {
    auto r2 = isolate_real_roots(QPoly{{Rat(-2), Rat(0), Rat(1)}});
    auto r3 = isolate_real_roots(QPoly{{Rat(-3), Rat(0), Rat(1)}});
    FieldElem a = algebraic_from_root(r2.back()); // sqrt 2
    FieldElem b = algebraic_from_root(r3.back()); // sqrt 3
    FieldElem s = a + b;                          // joins the fields
    // (sqrt2 + sqrt3)^2 = 5 + 2 sqrt6
    FieldElem t = s * s - FieldElem(Rat(5));
    CHECK((t * t - FieldElem(Rat(24))).is_zero());
    CHECK(s.sign() == 1);
    CHECK((a * a).rational_value() == Rat(2));
    // inversion round trip
    FieldElem inv = (a + FieldElem(Rat(1))).inv();
    CHECK(((a + FieldElem(Rat(1))) * inv - FieldElem(Rat(1))).is_zero());
}

TEST_CASE("pi-polynomial scalars") {
    Scalar twopi = Scalar::pi(1, Rat(2));
    Scalar prod = twopi * twopi;
    CHECK(prod == Scalar::pi(2, Rat(4)));
    CHECK((prod - Scalar::pi(2, Rat(4))).is_zero());
    CHECK(twopi.sign() == 1);
    CHECK((Scalar(3) - Scalar::pi()).sign() < 0);
    CHECK(Scalar::pi().to_double() == doctest::Approx(3.14159265358979).epsilon(1e-12));
}

TEST_CASE("series multiplication matches expansion oracle") {
    // (1+rho)(1-rho) at k=2 -> 1 - rho^2
    SSeries f = sconst(1) + svar(1);
    SSeries g = sconst(1) - svar(1);
    SSeries expect = sconst(1) - svar(1) * svar(1);
    CHECK((f * g).jet(2) == expect);
    // j2((1+rho+rho^2)(1+rho)) -> 1 + 2rho + 2rho^2
    SSeries h = sconst(1) + svar(1) + svar(1) * svar(1);
    SSeries k = sconst(1) + svar(1);
    SSeries want = sconst(1) + Scalar(2) * svar(1) + Scalar(2) * (svar(1) * svar(1));
    CHECK((h * k).jet(2) == want);
    // j3(z * (2z^3 - 2z)) = -2 z^2   (direct expansion oracle)
    SSeries z = svar(0);
    SSeries p = Scalar(2) * (z * z * z) - Scalar(2) * z;
    CHECK(mul_then_truncate(z, p, 3) == Scalar(-2) * (z * z));
}

TEST_CASE("series ring axioms on random data") {
    for (int trial = 0; trial < 60; ++trial) {
        SSeries a = random_series(2, 3, false);
        SSeries b = random_series(2, 3, false);
        SSeries c = random_series(2, 3, false);
        CHECK((a * b) == (b * a));
        CHECK(((a * b) * c) == (a * (b * c)));
        CHECK((a * (b + c)) == (a * b + a * c));
    }
}

TEST_CASE("series inversion") {
    // 1 + rho at k=2 -> 1 - rho + rho^2
    SSeries f = sconst(1) + svar(1);
    SSeries inv = f.invert_unit(2);
    CHECK(inv == sconst(1) - svar(1) + svar(1) * svar(1));
    // identity
    CHECK(sconst(1).invert_unit(5) == sconst(1));
    // 1 + rho z at k=3 in rho: 1 - rho z + rho^2 z^2 - rho^3 z^3 (multiply-back check)
    SSeries g = sconst(1) + svar(0) * svar(1);
    SSeries gi = g.invert_unit(6);
    SSeries back = (g * gi).jet(6);
    CHECK(back == sconst(1));
    // round trip on random units
    for (int trial = 0; trial < 100; ++trial) {
        SSeries u = random_series(2, 3, true);
        SSeries ui = u.invert_unit(5);
        CHECK((u * ui).jet(5) == sconst(1));
    }
}

TEST_CASE("jets: idempotence and partial jets") {
    SSeries z = svar(0), rho = svar(1);
    SSeries f = sconst(1) + z + z * z;
    CHECK(f.jet(1) == sconst(1) + z);
    // j2^rho of rho^3 z + rho^2 z^5 -> rho^2 z^5
    SSeries g = (rho * rho * rho) * z + (rho * rho) * (z * z * z * z * z);
    CHECK(g.jet_var(1, 2) == (rho * rho) * (z * z * z * z * z));
    for (int trial = 0; trial < 40; ++trial) {
        SSeries f2 = random_series(2, 5, false);
        int k = trial % 5;
        CHECK(f2.jet(k).jet(k) == f2.jet(k));
        CHECK(f2.jet_var(0, k).jet(k) == f2.jet(k)); // j_k(j_k^x(F)) = j_k(F)
    }
}

TEST_CASE("translate") {
    SSeries z = svar(0);
    // 2z^3 - 2z shifted by 1 -> 2z^3 + 6z^2 + 4z (binomial oracle)
    SSeries p = Scalar(2) * (z * z * z) - Scalar(2) * z;
    SSeries got = p.translate(0, Scalar(1));
    SSeries want = Scalar(2) * (z * z * z) + Scalar(6) * (z * z) + Scalar(4) * z;
    CHECK(got == want);
    CHECK(p.translate(0, Scalar()) == p);
    // z^2 - 1 shifted by -1 -> z^2 - 2z
    SSeries q = z * z - sconst(1);
    CHECK(q.translate(0, Scalar(-1)) == z * z - Scalar(2) * z);
    // translate commutes with partial jet in the other variable
    for (int trial = 0; trial < 30; ++trial) {
        SSeries f = random_series(2, 4, false);
        Scalar a = random_rat();
        CHECK(f.translate(0, a).jet_var(1, 2) == f.jet_var(1, 2).translate(0, a));
    }
    // translating by sqrt(2) exactly
    auto rr = isolate_real_roots(QPoly{{Rat(-2), Rat(0), Rat(1)}});
    Scalar s2{algebraic_from_root(rr.back())};
    SSeries t = (z * z).translate(0, s2); // (z + sqrt2)^2 = z^2 + 2 sqrt2 z + 2
    CHECK(t.coeff(Mono{}) == Scalar(Rat(2)));
    CHECK(t.coeff(Mono{{1, 0, 0}}) == Scalar(2) * s2);
}

TEST_CASE("trig polynomial ring") {
    TrigPoly c1 = TrigPoly::cosk(1), s1 = TrigPoly::sink(1);
    // cos^2 + sin^2 = 1
    CHECK((c1 * c1 + s1 * s1) == TrigPoly(Scalar(1)));
    // cos^2 = 1/2 + 1/2 cos 2theta
    TrigPoly cc = c1 * c1;
    CHECK(cc.mean() == Scalar(Rat(1, 2)));
    CHECK(cc.cos_coeff(2) == Scalar(Rat(1, 2)));
    // antiderivative: d/dtheta respects
    TrigPoly p = TrigPoly::cosk(2, Scalar(3)) + TrigPoly::sink(1, Scalar(Rat(1, 2)));
    CHECK(p.antiderivative_periodic().derivative() == p);
    // ThetaTrig: antiderivative of constant has mean*theta
    ThetaTrig t{TrigPoly(Scalar(5))};
    ThetaTrig it = t.antiderivative();
    CHECK(it.eval_2pi() == Scalar::pi(1, Rat(10)));
    // antiderivative of theta*cos(theta): exact parts; F(0)=0
    ThetaTrig tc = ThetaTrig{TrigPoly::cosk(1)} * it; // 5 theta cos(theta)... via product
    ThetaTrig anti = tc.antiderivative();
    CHECK(anti.eval_theta0().is_zero());
    // d/dtheta check numerically at a few points
    double th = 0.7;
    double fd = (anti.eval_double(th + 1e-6) - anti.eval_double(th - 1e-6)) / 2e-6;
    CHECK(fd == doctest::Approx(tc.eval_double(th)).epsilon(1e-5));
}

TEST_CASE("detect_hopf") {
    // -y dx + x dy + z^2 dz: b=1, c=0, identity change
    VectorField3 xi = VectorField3::zero();
    xi.x = -SSeries::var(3, VY);
    xi.y = SSeries::var(3, VX);
    xi.z = SSeries::var(3, VZ) * SSeries::var(3, VZ);
    HopfData h = detect_hopf(xi);
    CHECK(h.b == Scalar(1));
    CHECK(h.c.is_zero());
    CHECK(h.identity_change);
    CHECK(h.eigen_case == EigenCase::ZeroHopf);

    // -2y dx + 2x dy - z dz: b=2, c=-1, semi-hyperbolic
    VectorField3 xi2 = VectorField3::zero();
    xi2.x = Scalar(-2) * SSeries::var(3, VY);
    xi2.y = Scalar(2) * SSeries::var(3, VX);
    xi2.z = -SSeries::var(3, VZ);
    HopfData h2 = detect_hopf(xi2);
    CHECK(h2.b == Scalar(2));
    CHECK(h2.c == Scalar(-1));
    CHECK(h2.eigen_case == EigenCase::SemiHyperbolic);
    // time rescaling by 1/b
    VectorField3 n2 = normalize_linear(xi2, h2);
    CHECK(n2.x == -SSeries::var(3, VY));
    CHECK(n2.y == SSeries::var(3, VX));

    // a rotated/mixed linear part must be detected and normalized
    VectorField3 xi3 = VectorField3::zero();
    // A = [[0,-1,1],[1,0,0],[0,0,0]] has spectrum {±i, 0}
    xi3.x = -SSeries::var(3, VY) + SSeries::var(3, VZ);
    xi3.y = SSeries::var(3, VX);
    xi3.z = SSeries::zero(3);
    HopfData h3 = detect_hopf(xi3);
    CHECK(h3.b == Scalar(1));
    CHECK(h3.c.is_zero());
    VectorField3 n3 = normalize_linear(xi3, h3);
    auto d = jacobian_origin(n3);
    CHECK(d[0][1] == Scalar(-1));
    CHECK(d[1][0] == Scalar(1));
    CHECK(d[0][0].is_zero());
    CHECK(d[2][2].is_zero());
    CHECK(d[0][2].is_zero());
    CHECK(d[1][2].is_zero());
    CHECK(d[2][0].is_zero());
    CHECK(d[2][1].is_zero());

    // not Hopf: all-real spectrum
    VectorField3 bad = VectorField3::zero();
    bad.x = SSeries::var(3, VX);
    bad.y = -SSeries::var(3, VY);
    bad.z = SSeries::var(3, VZ);
    CHECK_THROWS_AS(detect_hopf(bad), NotHopf);
}
