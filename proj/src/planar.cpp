#include "hopf3/planar.hpp"

#include <sstream>

namespace hopf3 {

namespace {

// ---- small univariate layers over the scalar field ------------------------

FPoly fpoly_gcd(FPoly a, FPoly b) {
    auto rem = [](FPoly x, const FPoly& y) {
        FieldElem inv = y.c.back().inv();
        while (!x.is_zero() && x.deg() >= y.deg()) {
            FieldElem k = x.c.back() * inv;
            int off = x.deg() - y.deg();
            for (int i = 0; i <= y.deg(); ++i) x.c[off + i] = x.c[off + i] - k * y.c[i];
            x.trim();
        }
        return x;
    };
    a.trim();
    b.trim();
    while (!b.is_zero()) {
        FPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) {
        FieldElem inv = a.c.back().inv();
        for (auto& e : a.c) e = e * inv;
    }
    return a;
}

FPoly fpoly_mul(const FPoly& a, const FPoly& b) {
    FPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, FieldElem());
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    r.trim();
    return r;
}

FPoly fpoly_sub(FPoly a, const FPoly& b) {
    if (a.c.size() < b.c.size()) a.c.resize(b.c.size(), FieldElem());
    for (size_t i = 0; i < b.c.size(); ++i) a.c[i] = a.c[i] - b.c[i];
    a.trim();
    return a;
}

// exact division (throws if not exact)
FPoly fpoly_div(const FPoly& a, const FPoly& b) {
    FPoly q, r = a;
    r.trim();
    if (b.is_zero()) throw std::domain_error("fpoly_div by zero");
    FieldElem inv = b.c.back().inv();
    if (r.is_zero()) return q;
    if (r.deg() < b.deg()) throw std::domain_error("fpoly_div: not divisible");
    q.c.assign(r.deg() - b.deg() + 1, FieldElem());
    while (!r.is_zero() && r.deg() >= b.deg()) {
        FieldElem k = r.c.back() * inv;
        int off = r.deg() - b.deg();
        q.c[off] = k;
        for (int i = 0; i <= b.deg(); ++i) r.c[off + i] = r.c[off + i] - k * b.c[i];
        r.trim();
    }
    if (!r.is_zero()) throw std::domain_error("fpoly_div: nonzero remainder");
    q.trim();
    return q;
}

// rational functions over K[rho]
struct RF {
    FPoly n, d;
    RF() { d.c = {FieldElem(Rat(1))}; }
    explicit RF(FPoly p) : n(std::move(p)) { d.c = {FieldElem(Rat(1))}; }
    bool is_zero() const { return n.is_zero(); }
    void norm() {
        if (n.is_zero()) {
            d.c = {FieldElem(Rat(1))};
            return;
        }
        FPoly g = fpoly_gcd(n, d);
        if (g.deg() >= 1) {
            n = fpoly_div(n, g);
            d = fpoly_div(d, g);
        }
        FieldElem inv = d.c.back().inv();
        for (auto& e : n.c) e = e * inv;
        for (auto& e : d.c) e = e * inv;
    }
    friend RF operator*(const RF& a, const RF& b) {
        RF r;
        r.n = fpoly_mul(a.n, b.n);
        r.d = fpoly_mul(a.d, b.d);
        r.norm();
        return r;
    }
    friend RF operator-(const RF& a, const RF& b) {
        RF r;
        r.n = fpoly_sub(fpoly_mul(a.n, b.d), fpoly_mul(b.n, a.d));
        r.d = fpoly_mul(a.d, b.d);
        r.norm();
        return r;
    }
    friend RF operator/(const RF& a, const RF& b) {
        RF r;
        r.n = fpoly_mul(a.n, b.d);
        r.d = fpoly_mul(a.d, b.n);
        r.norm();
        return r;
    }
};

// ---- conversions between SSeries (z,rho) and z-polynomials ---------------

std::vector<FPoly> to_zpoly(const SSeries& s) {
    std::vector<FPoly> out;
    for (const auto& [m, c] : s.terms()) {
        if (!c.pi_free()) throw std::logic_error("planar data with pi coefficient");
        if ((int)out.size() <= m.e[CZ]) out.resize(m.e[CZ] + 1);
        auto& p = out[m.e[CZ]];
        if ((int)p.c.size() <= m.e[CR]) p.c.resize(m.e[CR] + 1, FieldElem());
        p.c[m.e[CR]] = c.field_value();
    }
    for (auto& p : out) p.trim();
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

SSeries from_zpoly(const std::vector<FPoly>& v) {
    SSeries s(2);
    for (size_t a = 0; a < v.size(); ++a)
        for (size_t b = 0; b < v[a].c.size(); ++b) {
            if (v[a].c[b].is_zero()) continue;
            Mono m;
            m.e[CZ] = (int)a;
            m.e[CR] = (int)b;
            s.set_coeff(m, Scalar(v[a].c[b]));
        }
    return s;
}

// gcd of two bivariate polynomials, primitive in K[rho][z]
SSeries bivariate_gcd(const SSeries& A, const SSeries& B) {
    if (A.is_zero()) return B;
    if (B.is_zero()) return A;
    auto az = to_zpoly(A), bz = to_zpoly(B);
    auto lift = [](const std::vector<FPoly>& v) {
        std::vector<RF> r;
        for (const auto& p : v) r.emplace_back(p);
        return r;
    };
    std::vector<RF> f = lift(az), g = lift(bz);
    auto trim = [](std::vector<RF>& v) {
        while (!v.empty() && v.back().is_zero()) v.pop_back();
    };
    trim(f);
    trim(g);
    while (!g.empty()) {
        std::vector<RF> r = f;
        trim(r);
        while (!r.empty() && r.size() >= g.size()) {
            RF k = r.back() / g.back();
            size_t off = r.size() - g.size();
            for (size_t i = 0; i < g.size(); ++i) r[off + i] = r[off + i] - k * g[i];
            trim(r);
        }
        f = std::move(g);
        g = std::move(r);
    }
    // clear denominators, take the primitive part
    FPoly den;
    den.c = {FieldElem(Rat(1))};
    for (const auto& rf : f) den = fpoly_div(fpoly_mul(den, rf.d), fpoly_gcd(den, rf.d));
    std::vector<FPoly> poly;
    for (const auto& rf : f) poly.push_back(fpoly_mul(rf.n, fpoly_div(den, rf.d)));
    FPoly content;
    for (const auto& p : poly)
        if (!p.is_zero()) content = content.is_zero() ? p : fpoly_gcd(content, p);
    if (!content.is_zero() && content.deg() >= 1)
        for (auto& p : poly) p = p.is_zero() ? p : fpoly_div(p, content);
    while (!poly.empty() && poly.back().is_zero()) poly.pop_back();
    return from_zpoly(poly);
}

// Hensel split to rho-order `work`: G = A*B with A(z,0) = z^m and B(z,0)
// a unit at z=0. Returns A (monic of z-degree m, coefficients rho-jets).
SSeries hensel_local_factor(const SSeries& G, int m, int work) {
    auto gz = to_zpoly(G);
    int dz = (int)gz.size() - 1;
    // per rho-order coefficient polynomials in z over the field
    auto slice = [&](int k) {
        FPoly out; // poly in z at rho-order k
        out.c.assign(dz + 1, FieldElem());
        for (int a = 0; a <= dz; ++a)
            if (k < (int)gz[a].c.size()) out.c[a] = gz[a].c[k];
        out.trim();
        return out;
    };
    FPoly G0 = slice(0); // = z^m * u(z)
    FPoly zm;
    zm.c.assign(m + 1, FieldElem());
    zm.c[m] = FieldElem(Rat(1));
    FPoly B0 = fpoly_div(G0, zm);
    // inverse of B0 modulo z^m
    FPoly B0inv;
    {
        B0inv.c = {B0.c[0].inv()};
        for (int k = 1; k < m; ++k) {
            // refine: B0inv += (1 - B0inv*B0) truncated... direct coefficient solve
            FPoly prod = fpoly_mul(B0inv, B0);
            FieldElem defect = (k < (int)prod.c.size()) ? prod.c[k] : FieldElem();
            FieldElem corr = -(defect * B0inv.c[0]);
            B0inv.c.resize(k + 1, FieldElem());
            B0inv.c[k] = corr;
        }
        B0inv.trim();
    }
    auto mod_zm = [&](FPoly p) {
        if ((int)p.c.size() > m) p.c.resize(m);
        p.trim();
        return p;
    };
    std::vector<FPoly> A{zm}, B{B0}; // by rho-order
    for (int k = 1; k <= work; ++k) {
        // RHS_k = G_k - sum_{i=1..k-1} A_i B_{k-i}
        FPoly rhs = slice(k);
        for (int i = 1; i < k; ++i)
            if (i < (int)A.size() && (k - i) < (int)B.size())
                rhs = fpoly_sub(rhs, fpoly_mul(A[i], B[k - i]));
        // A_k = (rhs * B0inv) mod z^m ; B_k = (rhs - A_k B0) / z^m
        FPoly Ak = mod_zm(fpoly_mul(rhs, B0inv));
        FPoly num = fpoly_sub(rhs, fpoly_mul(Ak, B0));
        FPoly Bk;
        if (!num.is_zero()) {
            if (num.deg() < m) throw std::logic_error("hensel: division defect");
            Bk.c.assign(num.c.begin() + m, num.c.end());
            for (int j = 0; j < m; ++j)
                if (!num.c[j].is_zero()) throw std::logic_error("hensel: nonzero residue");
        }
        A.push_back(Ak);
        B.push_back(Bk);
    }
    // assemble A as an SSeries
    SSeries out(2);
    for (size_t k = 0; k < A.size(); ++k)
        for (size_t a = 0; a < A[k].c.size(); ++a) {
            if (A[k].c[a].is_zero()) continue;
            Mono mm;
            mm.e[CZ] = (int)a;
            mm.e[CR] = (int)k;
            out.add_coeff(mm, Scalar(A[k].c[a]));
        }
    Trust t;
    t.var[CR] = work;
    out.set_trust(Trust::meet(out.trust(), t));
    return out;
}

// divide S by (z - g(rho)) exactly (jets to the trust window); remainder
// must vanish (throws otherwise)
SSeries divide_by_graph(const SSeries& S, const SSeries& g, int work) {
    // synthetic division in z: S = sum S_a(rho) z^a; Q_a = S_{a+1} + g Q_{a+1}
    int dz = S.deg_var(CZ);
    std::vector<SSeries> coef(dz + 1, SSeries(2));
    for (const auto& [m, c] : S.terms()) {
        Mono mm;
        mm.e[CR] = m.e[CR];
        coef[m.e[CZ]].add_coeff(mm, c);
    }
    Trust cap;
    cap.var[CR] = work;
    std::vector<SSeries> q(std::max(0, dz), SSeries(2));
    SSeries carry(2);
    for (int a = dz; a >= 1; --a) {
        SSeries qa = coef[a] + carry;
        q[a - 1] = qa;
        carry = g * qa;
        carry.set_trust(Trust::meet(carry.trust(), cap));
    }
    SSeries rem = coef[0] + carry;
    if (!rem.is_zero()) throw std::domain_error("divide_by_graph: nonzero remainder");
    SSeries out(2);
    for (int a = 0; a < (int)q.size(); ++a)
        for (const auto& [m, c] : q[a].terms()) {
            Mono mm = m;
            mm.e[CZ] = a;
            out.add_coeff(mm, c);
        }
    out.set_trust(Trust::meet(S.trust(), cap));
    return out;
}

Scalar lin_coeff(const SSeries& s, int var) {
    Mono m;
    m.e[var] = 1;
    return s.coeff(m);
}

bool ratio_in_positive_q(const Scalar& a, const Scalar& d) {
    // lambda_z / lambda_rho in Q_{>0}? (with either zero: no)
    if (a.is_zero() || d.is_zero()) return false;
    Scalar q = a / d;
    if (!q.is_rational()) return false;
    return q.sign() > 0;
}

} // namespace

const char* sing_status_name(SingStatus s) {
    switch (s) {
        case SingStatus::Simple: return "adapted-simple";
        case SingStatus::NonSaturatedSimple: return "non-saturated-adapted-simple";
        case SingStatus::RegularInvariant: return "regular-invariant";
        case SingStatus::RegularTransverse: return "regular-transverse";
        case SingStatus::RegularAdapted: return "regular-adapted";
        case SingStatus::NonSimple: return "non-simple";
        case SingStatus::Undecided: return "undecided";
    }
    return "?";
}

PlanarClassification classify_planar(const SSeries& Xz, const SSeries& Xrho,
                                     bool corner_germ, int work) {
    PlanarClassification out;
    out.gamma = SSeries::zero(2);
    Scalar vz = Xz.constant_term(), vr = Xrho.constant_term();
    out.div_rho_invariant = Xrho.is_zero() || Xrho.ord_var(CR) >= 1;
    out.div_z_invariant = corner_germ && (Xz.is_zero() || Xz.ord_var(CZ) >= 1);

    if (!vz.is_zero() || !vr.is_zero()) {
        // regular point
        if (corner_germ) {
            bool along_z_branch = out.div_z_invariant && !vr.is_zero();
            bool along_rho_branch = out.div_rho_invariant && !vz.is_zero();
            if (along_z_branch || along_rho_branch) {
                out.status = SingStatus::RegularInvariant;
                out.detail = along_z_branch ? "trajectory = {z=0}" : "trajectory = {rho=0}";
            } else {
                out.status = SingStatus::NonSimple;
                out.detail = "regular corner, no invariant branch";
            }
        } else if (out.div_rho_invariant) {
            out.status = SingStatus::RegularInvariant;
            out.detail = "trajectory = divisor";
        } else if (!vr.is_zero()) {
            out.status = SingStatus::RegularTransverse;
        } else {
            out.status = SingStatus::RegularAdapted;
            out.detail = "tangency with the divisor";
        }
        return out;
    }

    out.lambda_z = lin_coeff(Xz, CZ);
    out.lambda_rho = lin_coeff(Xrho, CR);

    // singular-locus factor through the origin
    SSeries G = bivariate_gcd(Xz, Xrho);
    int m = 0;
    {
        SSeries g0 = G.at_zero(CR); // G(z, 0)
        // multiplicity of z = 0
        m = g0.is_zero() ? -1 : g0.ord_var(CZ);
        if (m < 0) throw std::logic_error("classify_planar: gcd vanishes on rho=0");
    }
    if (m == 0) {
        // isolated singularity (coprime pair up to units at the origin)
        if (!out.div_rho_invariant) {
            out.status = SingStatus::NonSimple;
            out.detail = "divisor not invariant at a singular point";
            return out;
        }
        if (corner_germ && !out.div_z_invariant) {
            out.status = SingStatus::NonSimple;
            out.detail = "corner branch {z=0} not invariant";
            return out;
        }
        if (out.lambda_z.is_zero() && out.lambda_rho.is_zero()) {
            out.status = SingStatus::NonSimple;
            out.detail = "nilpotent linear part";
            return out;
        }
        // with the divisor invariant the Jacobian is triangular: eigenvalues
        // are the two diagonal entries
        if (ratio_in_positive_q(out.lambda_z, out.lambda_rho)) {
            out.status = SingStatus::NonSimple;
            out.detail = "eigenvalue ratio in Q_{>0}";
            return out;
        }
        out.status = SingStatus::Simple;
        return out;
    }

    // case 2 candidate: extract the local factor and test (z - g)^r
    if (corner_germ) {
        out.status = SingStatus::NonSimple;
        out.detail = "singular curve through a corner";
        return out;
    }
    SSeries A = hensel_local_factor(G, m, work);
    // g = -(coefficient of z^{m-1})/m; A must equal (z-g)^m
    SSeries g(2);
    for (const auto& [mm, c] : A.terms())
        if (mm.e[CZ] == m - 1) {
            Mono d;
            d.e[CR] = mm.e[CR];
            g.add_coeff(d, -(c / Scalar(Rat(m))));
        }
    {
        Mono c0;
        if (!g.coeff(c0).is_zero()) {
            out.status = SingStatus::NonSimple;
            out.detail = "singular branch not through the origin";
            return out;
        }
        SSeries pw = SSeries::var(2, CZ) - g;
        SSeries acc = SSeries::constant(2, Scalar(1));
        Trust cap;
        cap.var[CR] = work;
        for (int i = 0; i < m; ++i) {
            acc = acc * pw;
            acc.set_trust(Trust::meet(acc.trust(), cap));
        }
        SSeries diff = acc - A;
        if (!diff.is_zero()) {
            out.status = SingStatus::NonSimple;
            out.detail = "singular locus is not an r-fold transverse graph";
            return out;
        }
    }
    out.r = m;
    out.gamma = g;
    // is the factor exact (polynomial) rather than a jet? re-divide exactly
    SSeries bz = Xz, br = Xrho;
    bool exact = true;
    try {
        for (int i = 0; i < m; ++i) {
            bz = divide_by_graph(bz, g, ORD_INF);
            br = br.is_zero() ? br : divide_by_graph(br, g, ORD_INF);
        }
    } catch (const std::domain_error&) {
        exact = false;
        bz = Xz;
        br = Xrho;
        for (int i = 0; i < m; ++i) {
            bz = divide_by_graph(bz, g, work);
            br = br.is_zero() ? br : divide_by_graph(br, g, work);
        }
    }
    out.gamma_exact = exact;
    // cofactor analysis
    Scalar cz = bz.constant_term(), cr = br.constant_term();
    out.cof_z0 = cz;
    out.cof_rho0 = cr;
    bool cof_rho_inv = br.is_zero() || br.ord_var(CR) >= 1;
    if (!cz.is_zero() || !cr.is_zero()) {
        // regular cofactor: F must be the trajectory through 0
        if (cof_rho_inv && !cz.is_zero()) {
            out.status = SingStatus::NonSaturatedSimple;
        } else {
            out.status = SingStatus::NonSimple;
            out.detail = "regular cofactor not tangent to the divisor";
        }
        return out;
    }
    // singular cofactor: simple with separatrices {F, Gamma}
    Scalar la = lin_coeff(bz, CZ), ld = lin_coeff(br, CR);
    out.lambda_z = la;
    out.lambda_rho = ld;
    if ((la.is_zero() && ld.is_zero()) || ratio_in_positive_q(la, ld) || !cof_rho_inv) {
        out.status = SingStatus::NonSimple;
        out.detail = "cofactor not adapted simple";
        return out;
    }
    // Gamma invariant for the cofactor: (bz - g' brho)(g(rho), rho) = 0
    {
        SSeries gp = g.derivative(CR);
        SSeries expr = bz - gp * br;
        // substitute z = g(rho)
        std::vector<SSeries> args{g, SSeries::var(2, CR)};
        SSeries res = expr.compose(args, work);
        if (!res.is_zero()) {
            out.status = SingStatus::NonSimple;
            out.detail = "singular locus is not a cofactor separatrix";
            return out;
        }
    }
    out.status = SingStatus::NonSaturatedSimple;
    return out;
}

SSeries separatrix_jet(const SSeries& Xz, const SSeries& Xrho,
                       const PlanarClassification& cls, int work) {
    if (cls.status == SingStatus::NonSaturatedSimple) return cls.gamma;
    if (cls.status != SingStatus::Simple)
        throw std::domain_error("separatrix_jet: not an adapted simple singularity");
    // undetermined coefficients: E(h) = Xz(h,rho) - h' Xrho(h,rho) = 0
    SSeries h(2); // z-free series in rho
    auto invariance_defect = [&](const SSeries& hh, int order) {
        std::vector<SSeries> args{hh, SSeries::var(2, CR)};
        SSeries e = Xz.compose(args, order + 1) -
                    hh.derivative(CR) * Xrho.compose(args, order + 1);
        Mono m;
        m.e[CR] = order;
        return e.coeff(m);
    };
    for (int j = 1; j <= work; ++j) {
        Mono mj;
        mj.e[CR] = j;
        SSeries h1 = h;
        h1.add_coeff(mj, Scalar(1));
        Scalar e0 = invariance_defect(h, j);
        Scalar e1 = invariance_defect(h1, j);
        Scalar c = e1 - e0;
        if (c.is_zero()) {
            if (e0.is_zero()) continue; // order j unconstrained (stays 0)
            throw std::logic_error("separatrix_jet: resonance obstruction");
        }
        Scalar hj = -(e0 / c);
        if (!hj.is_zero()) h.add_coeff(mj, hj);
    }
    Trust cap;
    cap.var[CR] = work;
    h.set_trust(Trust::meet(h.trust(), cap));
    return h;
}

std::pair<SSeries, SSeries> element_germ(const BlowupTree& tree, int element_id) {
    const Element& el = tree.elements.at(element_id);
    const CylinderData& d = tree.cyl_data(el.chart);
    SSeries xz = d.red_z, xr = d.red_rho;
    if (el.kind == ElementKind::NonCornerCycle && !el.omega.is_zero()) {
        xz = xz.translate(CZ, el.omega);
        xr = xr.translate(CZ, el.omega);
    }
    return {xz, xr};
}

AxisPoleResult resolve_axis_poles(BlowupTree& tree, bool plus_end, int budget) {
    AxisPoleResult res;
    // ambient stage t_0: the pure z-power dividing the z-component
    res.trace.push_back(tree.root.z.is_zero() ? 0 : tree.root.z.ord_var(VZ));
    for (int step = 0; step <= budget; ++step) {
        int eid = -1;
        for (const auto& e : tree.elements) {
            if (e.consumed) continue;
            if (plus_end && e.kind == ElementKind::SingularityPlus) eid = e.id;
            if (!plus_end && e.kind == ElementKind::SingularityMinus) eid = e.id;
        }
        if (eid < 0) throw BlowupError("axis element missing");
        const PointData& p = tree.point_data(tree.elements[eid].chart);
        res.trace.push_back(p.n);
        if (p.unit) {
            res.resolved = true;
            res.t = p.n;
            return res;
        }
        if (step == budget) break;
        blow_up_characteristic_singularity(tree, eid);
        res.blowups += 1;
    }
    res.resolved = false;
    return res;
}

ResolutionOutcome adapted_resolution(BlowupTree& tree, int budget) {
    ResolutionOutcome out;
    int spent = 0;
    auto log = [&](const std::string& s) { out.trace.push_back(s); };

    out.axis_plus = resolve_axis_poles(tree, true, budget);
    out.axis_minus = resolve_axis_poles(tree, false, budget);
    spent += out.axis_plus.blowups + out.axis_minus.blowups;
    if (!out.axis_plus.resolved || !out.axis_minus.resolved) {
        out.failure = "axis pole recursion exhausted the budget";
        return out;
    }
    for (int b : out.axis_plus.trace) log("axis+: t=" + std::to_string(b));
    for (int b : out.axis_minus.trace) log("axis-: t=" + std::to_string(b));

    while (true) {
        bool progressed = false;
        bool all_final = true;
        for (int eid : tree.live_elements()) {
            const Element el = tree.elements[eid];
            if (el.kind == ElementKind::SingularityPlus ||
                el.kind == ElementKind::SingularityMinus)
                continue; // units already
            bool dic = tree.components[el.comp_a].dicritical ||
                       (el.comp_b >= 0 && tree.components[el.comp_b].dicritical);
            auto [xz, xr] = element_germ(tree, eid);
            PlanarClassification cls =
                classify_planar(xz, xr, el.kind == ElementKind::CornerCycle, tree.work);
            bool final_ok = false;
            if (el.kind == ElementKind::CornerCycle) {
                bool both_dic = el.comp_b >= 0 && tree.components[el.comp_a].dicritical &&
                                tree.components[el.comp_b].dicritical;
                final_ok = !both_dic && (cls.status == SingStatus::RegularInvariant ||
                                         cls.status == SingStatus::Simple);
            } else {
                if (dic) {
                    // dicritical components must end with an empty adapted locus
                    final_ok = false;
                } else {
                    final_ok = cls.status == SingStatus::Simple ||
                               cls.status == SingStatus::NonSaturatedSimple;
                }
            }
            if (final_ok) {
                ResolutionEntry ent;
                ent.element = eid;
                ent.cls = cls;
                if (el.kind == ElementKind::NonCornerCycle)
                    ent.separatrix = separatrix_jet(xz, xr, cls, tree.work);
                ent.final_status = true;
                out.entries[eid] = std::move(ent);
                continue;
            }
            all_final = false;
            if (spent >= budget) {
                out.failure = "blow-up budget exhausted";
                return out;
            }
            log("blow up " + el.I.str() + " [" + sing_status_name(cls.status) + "]");
            out.entries.erase(eid);
            if (el.kind == ElementKind::CornerCycle)
                blow_up_corner_cycle(tree, eid);
            else
                blow_up_noncorner_cycle(tree, eid);
            ++spent;
            progressed = true;
            break; // element list changed; restart the sweep
        }
        if (all_final) break;
        if (!progressed) {
            out.failure = "no progress";
            return out;
        }
    }
    out.complete = true;
    return out;
}

} // namespace hopf3
