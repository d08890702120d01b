#include "hopf3/poincare.hpp"

namespace hopf3 {

namespace {

using PSeries = Series<ThetaTrig>;

PSeries lift_theta(const TSeries& s) {
    return s.map_coeffs([](const TrigPoly& c) { return ThetaTrig(c); });
}

SSeries collapse_2pi(const PSeries& s) {
    return s.map_coeffs([](const ThetaTrig& c) { return c.eval_2pi(); });
}

PSeries compose_p(const TSeries& f, const PSeries& Pz, const PSeries& Pr, int N) {
    PSeries out(2);
    Trust cap;
    cap.total = N;
    for (const auto& [m, c] : f.terms()) {
        if (m.total() > N) continue;
        PSeries term = PSeries::constant(2, ThetaTrig(c));
        for (int i = 0; i < m.e[CZ]; ++i) {
            term = term * Pz;
            term.set_trust(Trust::meet(term.trust(), cap));
        }
        for (int i = 0; i < m.e[CR]; ++i) {
            term = term * Pr;
            term.set_trust(Trust::meet(term.trust(), cap));
        }
        out = out + term;
    }
    out.set_trust(Trust::meet(out.trust(), cap));
    return out;
}

PSeries antiderivative_theta(const PSeries& s) {
    return s.map_coeffs([](const ThetaTrig& c) { return c.antiderivative(); });
}

SSeries compose_univariate(const SSeries& f, const SSeries& hz, const SSeries& hr, int N) {
    std::vector<SSeries> args{hz, hr};
    return f.compose(args, N);
}

} // namespace

CycleChartData cycle_chart_data(const BlowupTree& tree, int element_id) {
    const Element& el = tree.elements.at(element_id);
    if (el.kind != ElementKind::NonCornerCycle)
        throw std::domain_error("cycle_chart_data: not a non-corner cycle");
    const ChartField& F = tree.field_in(el.chart);
    CycleChartData c;
    c.element = element_id;
    c.work = tree.work;
    c.n1 = tree.cyl_data(el.chart).n1;
    TSeries bt = F.b_theta, bz = F.b_z, br = F.b_rho;
    if (!el.omega.is_zero()) {
        bt = bt.translate(CZ, el.omega);
        bz = bz.translate(CZ, el.omega);
        br = br.translate(CZ, el.omega);
    }
    c.btheta = bt;
    c.bz = drop_trig(bz);
    c.brho = drop_trig(br);
    TSeries binv = bt.invert_unit_var(CR, tree.work);
    c.f = bz * binv;
    c.g = br * binv;
    if (std::min(c.f.is_zero() ? ORD_INF : c.f.ord_total(),
                 c.g.is_zero() ? ORD_INF : c.g.ord_total()) < 2)
        throw std::domain_error("cycle_chart_data: return map is not tangent to the identity");
    return c;
}

PoincareJet poincare_jet(const CycleChartData& c, int order) {
    if (c.work < order)
        throw std::domain_error("poincare_jet: trustworthy order below the requested jet");
    PSeries z0 = PSeries::var(2, CZ, ThetaTrig(Scalar(1)));
    PSeries r0 = PSeries::var(2, CR, ThetaTrig(Scalar(1)));
    PSeries Pz = z0, Pr = r0;
    for (int it = 0; it < order; ++it) {
        PSeries Fz = compose_p(c.f, Pz, Pr, order);
        PSeries Fr = compose_p(c.g, Pz, Pr, order);
        Pz = z0 + antiderivative_theta(Fz);
        Pr = r0 + antiderivative_theta(Fr);
    }
    PoincareJet out;
    out.order = order;
    out.Pz = collapse_2pi(Pz);
    out.Pr = collapse_2pi(Pr);
    Trust cap;
    cap.total = order;
    out.Pz.set_trust(Trust::meet(out.Pz.trust(), cap));
    out.Pr.set_trust(Trust::meet(out.Pr.trust(), cap));
    return out;
}

PoincareJet exp_flow_jet(const CycleChartData& c, int order) {
    if (!is_theta_free(c.f) || !is_theta_free(c.g))
        throw std::domain_error("exp_flow_jet: theta-dependent field");
    SSeries f = drop_trig(c.f), g = drop_trig(c.g);
    Trust cap;
    cap.total = order;
    auto flow_of = [&](int var) {
        SSeries u = SSeries::var(2, var);
        SSeries acc = u;
        Rat coef(1);
        for (int k = 1; k <= order; ++k) {
            // u <- xi~(u) = f du/dz + g du/drho  (the d/dtheta part vanishes)
            SSeries nu = f * u.derivative(CZ) + g * u.derivative(CR);
            nu.set_trust(Trust::meet(nu.trust(), cap));
            nu.prune();
            u = std::move(nu);
            if (u.is_zero()) break;
            coef = coef * 2 / k; // (2)^k / k!
            acc = acc + Scalar::pi((unsigned)k, coef) * u;
        }
        acc.set_trust(Trust::meet(acc.trust(), cap));
        return acc;
    };
    PoincareJet out;
    out.order = order;
    out.Pz = flow_of(CZ);
    out.Pr = flow_of(CR);
    return out;
}

InvariantSurfaceJet invariant_surface_jet(const CycleChartData& c,
                                          const PlanarClassification& cls, int order) {
    if (!is_theta_free(c.f) || !is_theta_free(c.g))
        throw std::domain_error("invariant_surface_jet: theta-dependent chart data");
    // reduced pair: (bz, brho)/rho^{n1}; z^{n2} factors at omega>0 are units
    SSeries rz = c.bz.shift_var(CR, -c.n1);
    SSeries rr = c.brho.is_zero() ? c.brho : c.brho.shift_var(CR, -c.n1);
    InvariantSurfaceJet out;
    out.h = separatrix_jet(rz, rr, cls, order);
    // invariance residual against the associated system (unit factor aside):
    // E = bz(h,rho) - h' * brho(h,rho) must vanish to the working order
    SSeries E = compose_univariate(c.bz, out.h, SSeries::var(2, CR), order + c.n1 + 1) -
                out.h.derivative(CR) *
                    compose_univariate(c.brho, out.h, SSeries::var(2, CR), order + c.n1 + 1);
    SSeries Ej = E;
    Trust cap;
    cap.total = order + c.n1;
    Ej.set_trust(Trust::meet(Ej.trust(), cap));
    Ej.prune();
    if (!Ej.is_zero())
        throw std::logic_error("invariant_surface_jet: invariance residual nonzero");
    // exactness: polynomial h whose residual vanishes identically
    if (cls.gamma_exact && cls.status == SingStatus::NonSaturatedSimple) {
        out.exact = true;
    } else {
        // a stored polynomial h with identically vanishing residual IS the
        // invariant curve (uniqueness of the transverse separatrix)
        SSeries hp = out.h;
        hp.mark_exact();
        SSeries Efull = compose_univariate(c.bz, hp, SSeries::var(2, CR), ORD_INF) -
                        hp.derivative(CR) *
                            compose_univariate(c.brho, hp, SSeries::var(2, CR), ORD_INF);
        out.exact = Efull.is_zero();
    }
    return out;
}

CurveRestriction restriction_to_curve(const PoincareJet& P, const SSeries& h, int order) {
    CurveRestriction out;
    SSeries rho = SSeries::var(2, CR);
    out.theta = compose_univariate(P.Pr, h, rho, order);
    SSeries zpart = compose_univariate(P.Pz, h, rho, order);
    // invariance: z o P on the curve equals h(Theta)
    SSeries hTheta = compose_univariate(h, SSeries::zero(2), out.theta, order);
    out.invariance_ok = ((zpart - hTheta).jet(order)).is_zero();
    SSeries diff = (out.theta - rho).jet(order);
    if (diff.is_zero()) {
        out.m = -1;
        return out;
    }
    int o = diff.ord_var(CR);
    out.m = o - 1;
    Mono mo;
    mo.e[CR] = o;
    out.leading = diff.coeff(mo);
    return out;
}

FixVerdict fix_verdict(const CycleChartData& c, const PoincareJet& P,
                       const InvariantSurfaceJet& S, int order) {
    FixVerdict v;
    v.order_checked = order;
    CurveRestriction r = restriction_to_curve(P, S.h, order);
    if (!r.invariance_ok)
        throw std::logic_error("fix_verdict: curve is not invariant for P");
    if (r.m >= 0) {
        v.kind = FixKind::NonFix;
        v.m = r.m;
        v.leading = r.leading;
        return v;
    }
    // restriction is the identity to the computed order; decide exact fixing
    // by divisibility of the exact chart pair by the surface generator
    if (S.exact) {
        try {
            SSeries q1 = c.bz, q2 = c.brho;
            bool ok = true;
            {
                // divide by (z - h) exactly: remainder = value on the graph
                SSeries rem1 = compose_univariate(c.bz, S.h, SSeries::var(2, CR), ORD_INF);
                SSeries rem2 = compose_univariate(c.brho, S.h, SSeries::var(2, CR), ORD_INF);
                ok = rem1.is_zero() && rem2.is_zero();
            }
            if (ok) {
                v.kind = FixKind::FixExact;
                return v;
            }
        } catch (const std::exception&) {
            // fall through to the honest bounded verdict
        }
    }
    v.kind = FixKind::FixUpTo;
    return v;
}

namespace {

struct PBounds {
    bool ok = false;
    Rat rz_in, rr_in;   // analyticity polydisc of P
    Rat MW;             // bound for the return-map displacement components there
};

PBounds p_bounds(const CycleChartData& c, const Rat& rz_in, const Rat& rr_in) {
    PBounds b;
    const Rat huge = Rat(mpz_class(1) << 40);
    auto supf = [&](const Rat& rz, const Rat& rr) {
        Rat lb = unit_lower_bound(c.btheta, rz, rr);
        if (lb == 0) return huge;
        return Rat(poly_sup(lift_trig(c.bz), rz, rr) / lb);
    };
    auto supg = [&](const Rat& rz, const Rat& rr) {
        Rat lb = unit_lower_bound(c.btheta, rz, rr);
        if (lb == 0) return huge;
        return Rat(poly_sup(lift_trig(c.brho), rz, rr) / lb);
    };
    FlowEnclosure e = flow_enclosure(supf, supg, rz_in, rr_in);
    if (!e.ok) return b;
    b.ok = true;
    b.rz_in = rz_in;
    b.rr_in = rr_in;
    b.MW = e.rr_out + rr_in + e.rz_out + rz_in;
    return b;
}

Rat scalar_mag_ub(const Scalar& s) { return s.enclosure().mag(); }

// Tail model for the full return map over the cone {|zbar| <= rho^N,
// 0 < rho < delta}: the analytic remainder beyond the computed jet is
// bounded by coef(order) * rho^{order+1}, uniformly on the cone, for every
// delta <= delta_max. The polydisc is found once, independently of delta.
struct ConeTail {
    bool ok = false;
    Rat MW, rz2, rr, delta_max;
    Rat qmax(int N, const Rat& delta) const {
        return std::max(rat_pow(delta, (unsigned)(N - 1)) / rz2, Rat(1) / rr);
    }
    Rat coef(int order, int N, const Rat& delta) const {
        return Rat(4 * (order + 2)) * MW * rat_pow(qmax(N, delta), (unsigned)(order + 1));
    }
};

ConeTail cone_tail_model(const CycleChartData& c, const SSeries& hj, int N) {
    ConeTail t;
    Rat r(1, 2);
    for (int i = 0; i < 80; ++i, r /= 2) {
        PBounds pb = p_bounds(c, r, r);
        if (!pb.ok) continue;
        Rat rz2 = pb.rz_in - poly_sup(hj, Rat(0), pb.rr_in);
        if (rz2 <= 0) continue;
        // the cone with delta <= delta_max sits inside the polydisc
        Rat dmax = pb.rr_in / 2;
        while (poly_sup(hj, Rat(0), dmax) + rat_pow(dmax, (unsigned)N) > rz2 / 2) dmax /= 2;
        t.ok = true;
        t.MW = pb.MW;
        t.rz2 = rz2 / 2;
        t.rr = pb.rr_in;
        t.delta_max = dmax;
        return t;
    }
    return t;
}

} // namespace

ConeParams cone_parameters(const CycleChartData& c, const PoincareJet& P,
                           const InvariantSurfaceJet& S, const FixVerdict& v) {
    ConeParams out;
    out.kind = v.kind;
    const int order = P.order;
    SSeries rho = SSeries::var(2, CR);

    // pass to coordinates centered on the curve jet: zbar = z - j(h)
    SSeries hj = S.h.jet(std::min(order, v.kind == FixKind::NonFix ? v.m + 1 : order));
    SSeries zbar_to_z = SSeries::var(2, CZ) + hj;
    SSeries W = compose_univariate(P.Pr - rho, zbar_to_z, rho, order);
    SSeries Wz = compose_univariate(P.Pz, zbar_to_z, rho, order) - zbar_to_z;

    if (v.kind == FixKind::NonFix) {
        out.N = v.m + 1;
        if (order < out.N + 1) {
            out.note = "jet order too small for the cone chain";
            return out;
        }
        out.k = W.ord_var(CR);
        SSeries A = W.shift_var(CR, -out.k).at_zero(CZ);
        if (A.is_zero()) {
            out.note = "A vanishes to the computed order";
            return out;
        }
        out.s = A.ord_var(CR);
        Mono ma;
        ma.e[CR] = out.s;
        out.alpha = A.coeff(ma);
        if (out.k + out.s != v.m + 1)
            throw std::logic_error("cone_parameters: k+s != m+1");
        out.monotone_sign = out.alpha.sign();
        Rat alpha_lb = out.alpha.enclosure().mig();
        const int base = out.k + out.s;

        ConeTail tm = cone_tail_model(c, hj, out.N);
        if (!tm.ok) {
            out.note = "no certified flow enclosure";
            return out;
        }
        // paper-shaped chain: K bounds |B| on the cone via the analytic
        // quotient B = (W/rho^k - A)/zbar, |B| <= 2 MW / (rr^k rz2)
        Rat K = 2 * tm.MW / (rat_pow(tm.rr, (unsigned)out.k) * tm.rz2);
        Rat delta = tm.delta_max;
        for (int halved = 0; halved < 200; ++halved, delta /= 2) {
            if (delta * tm.qmax(out.N, delta) >= Rat(1, 2)) continue;
            // known monomials beyond the leading one, majorized on the cone
            Rat extra(0);
            for (const auto& [m, cf] : W.terms()) {
                int e = out.N * m.e[CZ] + m.e[CR];
                if (m.e[CZ] == 0 && m.e[CR] == base) continue;
                if (e <= base)
                    throw std::logic_error("cone_parameters: exponent ordering violated");
                extra += scalar_mag_ub(cf) * rat_pow(delta, (unsigned)(e - base));
            }
            Rat tail_rel = tm.coef(order, out.N, delta) *
                           rat_pow(delta, (unsigned)(order + 1 - base));
            bool chain = rat_pow(delta, (unsigned)(out.N - out.s)) * 4 * K < alpha_lb;
            bool margin = extra + tail_rel < alpha_lb / 2;
            if (chain && margin) {
                out.delta = delta;
                out.K = K;
                out.certified = true;
                return out;
            }
        }
        out.note = "no certified delta found";
        return out;
    }

    // FIX branches (Gamma pointwise fixed): periodic points only on Gamma
    bool w_zero = W.is_zero();
    const SSeries& D = w_zero ? Wz : W;
    if (D.is_zero()) {
        out.note = "P is the identity to the computed order";
        return out;
    }
    out.rho_fixed = w_zero;
    // D = rho^{k1} zbar^{k2} (A(rho) + zbar B); k2 >= 1 since Gamma is fixed
    int k1 = D.ord_var(CR), k2 = D.ord_var(CZ);
    if (k2 < 1) {
        out.note = "displacement does not vanish on the curve";
        return out;
    }
    SSeries Dred = D.shift_var(CR, -k1).shift_var(CZ, -k2);
    SSeries A = Dred.at_zero(CZ);
    if (A.is_zero()) {
        out.note = "degenerate leading structure";
        return out;
    }
    out.k = k1;
    out.s = A.ord_var(CR);
    Mono ma;
    ma.e[CR] = out.s;
    out.alpha = A.coeff(ma);
    out.N = out.s + 1;
    out.z_monotone_sign = out.alpha.sign();
    Rat alpha_lb = out.alpha.enclosure().mig();
    const int dropD = k1 + out.s + out.N * k2; // cone-degree of the leading term
    if (order + 1 <= dropD) {
        out.note = "jet order too small for the cone chain";
        return out;
    }
    ConeTail tm = cone_tail_model(c, hj, out.N);
    if (!tm.ok) {
        out.note = "no certified flow enclosure";
        return out;
    }
    Rat delta = tm.delta_max;
    for (int halved = 0; halved < 200; ++halved, delta /= 2) {
        if (delta * tm.qmax(out.N, delta) >= Rat(1, 2)) continue;
        // |A + zbar B - alpha rho^s| < alpha_lb/2 rho^s on the cone
        Rat extra(0);
        bool bad = false;
        for (const auto& [m, cf] : Dred.terms()) {
            int e = out.N * m.e[CZ] + m.e[CR];
            if (m.e[CZ] == 0 && m.e[CR] == out.s) continue;
            if (e <= out.s) { bad = true; break; }
            extra += scalar_mag_ub(cf) * rat_pow(delta, (unsigned)(e - out.s));
        }
        if (bad) {
            out.note = "leading structure not dominant";
            return out;
        }
        Rat tail_rel = tm.coef(order, out.N, delta) *
                       rat_pow(delta, (unsigned)(order + 1 - dropD));
        // the sign claim for z o P = zbar (1 + psi): |psi| < 1/2 on the cone
        Rat psi_ub(0);
        if (!Wz.is_zero()) {
            if (Wz.ord_var(CZ) < 1) {
                out.note = "z displacement not divisible by zbar";
                return out;
            }
            SSeries psi = Wz.shift_var(CZ, -1);
            for (const auto& [m, cf] : psi.terms())
                psi_ub += scalar_mag_ub(cf) *
                          rat_pow(rat_pow(delta, (unsigned)out.N), (unsigned)m.e[CZ]) *
                          rat_pow(delta, (unsigned)m.e[CR]);
            Rat Mpsi = tm.MW / tm.rz2;
            psi_ub += Rat(4 * (order + 1)) * Mpsi *
                      rat_pow(tm.qmax(out.N, delta), (unsigned)order) *
                      rat_pow(delta, (unsigned)order);
        }
        if (extra + tail_rel < alpha_lb / 2 && psi_ub < Rat(1, 2)) {
            out.delta = delta;
            out.K = extra + tail_rel;
            out.certified = true;
            return out;
        }
    }
    out.note = "no certified delta found";
    return out;
}

ConeTransport cone_transport_check(const TSeries& phi_z, const TSeries& phi_rho,
                                   const SSeries& f1, const SSeries& f2, int N,
                                   const Rat& C1, const Rat& delta1) {
    ConeTransport out;
    // shape preconditions: divisible by rho, order >= 2 (or identically 0)
    for (const TSeries* p : {&phi_z, &phi_rho}) {
        if (p->is_zero()) continue;
        if (p->ord_var(CR) < 1 || p->ord_total() < 2)
            throw std::domain_error("cone_transport_check: map not of the stated shape");
    }
    // components of phi as series in (z, rho)
    TSeries z = TSeries::var(2, CZ), rho = TSeries::var(2, CR);
    TSeries rho_phi = rho + phi_rho;
    auto jN = [&](const SSeries& f) {
        SSeries r(2);
        for (const auto& [m, c] : f.terms())
            if (m.e[CR] <= N) r.set_coeff(m, c);
        return r;
    };
    SSeries f1N = jN(f1), f2N = jN(f2);
    // residual of the surface correspondence on z = f1(rho), to order N
    {
        std::vector<TSeries> on_curve{lift_trig(f1N), rho};
        TSeries res = lift_trig(SSeries::var(2, CZ)).compose(on_curve, N + 1) +
                      phi_z.compose(on_curve, N + 1) -
                      lift_trig(f2N).compose(
                          std::vector<TSeries>{TSeries::zero(2),
                                               rho.compose(on_curve, N + 1) +
                                                   phi_rho.compose(on_curve, N + 1)},
                          N + 1);
        TSeries resN = res;
        Trust cap;
        cap.var[CR] = N;
        resN.set_trust(Trust::meet(resN.trust(), cap));
        resN.prune();
        if (!resN.is_zero())
            throw std::domain_error("cone_transport_check: phi does not map S1 to S2 to order N");
    }
    Rat C2 = C1 / 2;
    // boundary polynomials on z = jN(f1) +/- C1 rho^N, as series in rho
    auto boundary_residual = [&](int sign) {
        SSeries zb = f1N;
        Mono mN;
        mN.e[CR] = N;
        zb.add_coeff(mN, Scalar(Rat(sign) * C1));
        std::vector<TSeries> args{lift_trig(zb), rho};
        TSeries rp = rho + phi_rho.compose(args, 4 * N + 8);
        TSeries zp = lift_trig(zb) + phi_z.compose(args, 4 * N + 8);
        // g_{2,±} o phi = zp - jN(f2)(rp) ∓ C2 rp^N
        TSeries f2rp = lift_trig(f2N).compose(std::vector<TSeries>{TSeries::zero(2), rp},
                                              4 * N + 8);
        TSeries rpN = TSeries::constant(2, TrigPoly(Scalar(1)));
        for (int i = 0; i < N; ++i) rpN = rpN * rp;
        return zp - f2rp - TSeries::constant(2, TrigPoly(Scalar(Rat(sign) * C2))) * rpN;
    };
    TSeries rplus = boundary_residual(+1), rminus = boundary_residual(-1);
    // both are (C1 - C2)(±rho^N) + higher order; find delta2 by halving
    auto leading_ok = [&](const TSeries& r, int sign) {
        Mono mN;
        mN.e[CR] = N;
        TrigPoly lead = r.coeff(mN);
        if (!lead.is_const()) return false;
        return (lead.mean() - Scalar(Rat(sign) * (C1 - C2))).is_zero();
    };
    if (!leading_ok(rplus, +1) || !leading_ok(rminus, -1)) return out;
    Rat delta2 = std::min(delta1, Rat(1, 2));
    for (int halved = 0; halved < 300; ++halved, delta2 /= 2) {
        bool ok = true;
        for (const TSeries* r : {&rplus, &rminus}) {
            Rat high(0);
            for (const auto& [m, c] : r->terms())
                if (m.e[CR] > N) high += c.sup_bound() * rat_pow(delta2, (unsigned)(m.e[CR] - N));
            if (!(high < (C1 - C2))) ok = false;
        }
        // rho o phi stays below delta1 on the cone up to delta2 and exceeds
        // delta2 on the outer rim {rho = delta1}
        Rat zmax = poly_sup(f1N, Rat(0), delta1) + C1 * rat_pow(delta1, (unsigned)N);
        Rat drift = poly_sup(phi_rho, zmax, delta1);
        if (!(delta2 < delta1 - drift)) ok = false;
        if (ok) {
            out.ok = true;
            out.C2 = C2;
            out.delta2 = delta2;
            return out;
        }
    }
    return out;
}

} // namespace hopf3
