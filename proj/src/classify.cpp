#include "hopf3/classify.hpp"

#include <cmath>

namespace hopf3 {

const char* case_tag_name(CaseTag t) {
    switch (t) {
        case CaseTag::CaseI: return "i";
        case CaseTag::CaseII: return "ii";
        case CaseTag::CaseIICandidate: return "ii-candidate";
        case CaseTag::SemiHyperbolic: return "semi-hyperbolic";
        case CaseTag::Undetermined: return "undetermined";
    }
    return "?";
}

namespace {

// interval evaluation of the theta-free slice polynomial q(z)
IntervalQ eval_slice(const std::vector<IntervalQ>& coeffs, const IntervalQ& x) {
    IntervalQ acc;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<IntervalQ> slice_coeff_intervals(const SSeries& slice) {
    std::vector<IntervalQ> out;
    for (const auto& [m, c] : slice.terms()) {
        if ((int)out.size() <= m.e[CZ]) out.resize(m.e[CZ] + 1, IntervalQ{});
        out[m.e[CZ]] = c.enclosure();
    }
    return out;
}

// certified positive lower bound for |q| on [lo, hi] by adaptive bisection
std::optional<Rat> min_abs_on_interval(const SSeries& slice, const Rat& lo, const Rat& hi) {
    auto coeffs = slice_coeff_intervals(slice);
    std::vector<IntervalQ> work{IntervalQ{lo, hi}};
    Rat best(-1);
    int guard = 0;
    while (!work.empty()) {
        if (++guard > 4096) return std::nullopt;
        IntervalQ seg = work.back();
        work.pop_back();
        IntervalQ v = eval_slice(coeffs, seg);
        if (v.contains_zero()) {
            if (seg.width() == 0) return std::nullopt;
            Rat mid = (seg.lo + seg.hi) / 2;
            work.push_back(IntervalQ{seg.lo, mid});
            work.push_back(IntervalQ{mid, seg.hi});
            continue;
        }
        Rat m = v.mig();
        if (best < 0 || m < best) best = m;
    }
    if (best <= 0) return std::nullopt;
    return best;
}

int sign_on_interval(const SSeries& slice, const Rat& lo, const Rat& hi) {
    // exact sign at the midpoint (the interval carries no roots of the slice)
    Scalar mid{Rat((lo + hi) / 2)};
    Scalar acc;
    int dz = slice.deg_var(CZ);
    for (int a = dz; a >= 0; --a) {
        Mono m;
        m.e[CZ] = a;
        acc = acc * mid + slice.coeff(m);
    }
    return acc.sign();
}

// sup over the box [ -zmax, zmax ] x [0, delta] of the rho-positive part
Rat rho_part_sup(const SSeries& s, const Rat& zmax, const Rat& delta) {
    Rat acc(0);
    for (const auto& [m, c] : s.terms()) {
        if (m.e[CR] == 0) continue;
        acc += c.enclosure().mag() * rat_pow(zmax, (unsigned)m.e[CZ]) *
               rat_pow(delta, (unsigned)m.e[CR]);
    }
    return acc;
}

Rat scal_ub(const Scalar& s) { return s.enclosure().mag(); }

} // namespace

std::array<double, 3> ambient_of_chart_point(const std::vector<SubstStep>& chain,
                                             double theta, double z, double rho) {
    // apply the chain backwards: innermost chart coordinates up to ambient
    bool is_cyl = true;
    double cx = theta, cy = z, cz = rho; // cylinder: (theta, z, rho); point: (x, y, z)
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        switch (it->kind) {
            case SubstStep::OriginCyl:
            case SubstStep::SingCyl: {
                double th = cx, zz = cy, rr = cz;
                cx = rr * std::cos(th);
                cy = rr * std::sin(th);
                cz = rr * zz;
                is_cyl = false; // now point/ambient coordinates
                break;
            }
            case SubstStep::OriginPoint:
            case SubstStep::SingPoint: {
                double eps = it->kind == SubstStep::OriginPoint ? it->eps : +1;
                cx = cx * cz;
                cy = cy * cz;
                cz = eps * cz;
                break;
            }
            case SubstStep::CornerUp: {
                double zz = cy, rr = cz;
                cy = zz;
                cz = rr * zz;
                break;
            }
            case SubstStep::CornerDown: {
                double zz = cy, rr = cz;
                cy = rr * zz;
                cz = rr;
                break;
            }
            case SubstStep::NonCornerCentral: {
                double zz = cy, rr = cz;
                cy = it->omega.to_double() + rr * zz;
                cz = rr;
                break;
            }
            case SubstStep::NonCornerUp: {
                double zz = cy, rr = cz;
                cy = it->omega.to_double() + zz;
                cz = rr * zz;
                break;
            }
            case SubstStep::NonCornerDown: {
                double zz = cy, rr = cz;
                cy = it->omega.to_double() - zz;
                cz = rr * zz;
                break;
            }
        }
    }
    (void)is_cyl;
    return {cx, cy, cz};
}

AxisCertificate certify_characteristic_singularity(const BlowupTree& tree, bool plus_end) {
    AxisCertificate out;
    out.plus_end = plus_end;
    int eid = -1;
    for (const auto& e : tree.elements) {
        if (e.consumed) continue;
        if (plus_end && e.kind == ElementKind::SingularityPlus) eid = e.id;
        if (!plus_end && e.kind == ElementKind::SingularityMinus) eid = e.id;
    }
    if (eid < 0) {
        out.err = "axis element missing";
        return out;
    }
    const PointData& p = tree.point_data(tree.elements[eid].chart);
    if (!p.unit) {
        out.err = "cofactor is not a unit (axis pole unresolved)";
        return out;
    }
    out.t = p.n;
    Scalar g0 = p.cof.constant_term();
    out.sign_g0 = g0.sign();
    Rat g0lb = g0.enclosure().mig();
    Rat r(1, 2);
    for (int i = 0; i < 200; ++i, r /= 2) {
        // |G - G(0)| < |G(0)| on the polydisc of radius r
        Rat rest(0);
        for (const auto& [m, c] : p.cof.terms()) {
            if (m == Mono{}) continue;
            rest += scal_ub(c) * rat_pow(r, (unsigned)m.total());
        }
        if (rest < g0lb) {
            out.ok = true;
            out.radius = r;
            return out;
        }
    }
    out.err = "no sign radius found";
    return out;
}

CornerCertificate certify_corner_cycle(const BlowupTree& tree, int element_id) {
    CornerCertificate out;
    out.element = element_id;
    const Element& el = tree.elements.at(element_id);
    if (el.kind != ElementKind::CornerCycle) {
        out.err = "not a corner cycle";
        return out;
    }
    const CylinderData& d = tree.cyl_data(el.chart);
    const ChartField& F = tree.field_in(el.chart);
    PlanarClassification cls = classify_planar(d.red_z, d.red_rho, true, tree.work);
    SSeries drive(2);
    if (cls.status == SingStatus::RegularInvariant) {
        out.case_tag = "regular corner (one branch is the trajectory)";
        // monotone coordinate: the transversal one
        if (!d.red_rho.constant_term().is_zero()) {
            out.monotone = 'r';
            out.lambda = d.red_rho.constant_term();
            drive = d.red_rho;
        } else {
            out.monotone = 'z';
            out.lambda = d.red_z.constant_term();
            drive = d.red_z;
        }
    } else if (cls.status == SingStatus::Simple) {
        out.case_tag = "simple corner (both branches invariant)";
        if (!cls.lambda_z.is_zero()) {
            out.monotone = 'z';
            out.lambda = cls.lambda_z;
            drive = d.red_z.shift_var(CZ, -1);
        } else {
            out.monotone = 'r';
            out.lambda = cls.lambda_rho;
            drive = d.red_rho.shift_var(CR, -1);
        }
    } else {
        out.err = std::string("corner is not final: ") + sing_status_name(cls.status);
        return out;
    }
    Rat lam_lb = out.lambda.enclosure().mig();
    Rat r(1, 2);
    for (int i = 0; i < 200; ++i, r /= 2) {
        Rat rest(0);
        for (const auto& [m, c] : drive.terms()) {
            if (m == Mono{}) continue;
            rest += scal_ub(c) * rat_pow(r, (unsigned)m.total());
        }
        if (!(rest < lam_lb)) continue;
        if (unit_lower_bound(F.b_theta, r, r) <= 0) continue;
        out.ok = true;
        out.radius = r;
        return out;
    }
    out.err = "no sign radius found";
    return out;
}

std::vector<BoxCertificate> build_boxes(const BlowupTree& tree,
                                        const std::optional<Rat>& eps_override,
                                        const std::optional<Rat>& delta_override,
                                        Rat* eps_used) {
    std::vector<BoxCertificate> out;
    // global inset: (minimal gap)/4 between consecutive marks, and on
    // dicritical components also to the zeros of the z-drive
    Rat min_gap(-1);
    auto note_gap = [&](const Scalar& a, const Scalar& b) {
        Scalar d = a - b;
        if (d.is_zero()) return;
        d.sign();
        Rat g = d.enclosure().mig();
        if (g > 0 && (min_gap < 0 || g < min_gap)) min_gap = g;
    };
    for (const auto& comp : tree.components) {
        std::vector<Scalar> pos;
        for (const auto& mk : comp.marks)
            if (!mk.at_minf && !mk.at_pinf) pos.push_back(mk.pos);
        for (size_t i = 0; i + 1 < pos.size(); ++i) note_gap(pos[i], pos[i + 1]);
        if (comp.dicritical) {
            const CylinderData& d = tree.cyl_data(comp.home_chart);
            SSeries slice = d.red_z.at_zero(CR);
            if (!slice.is_zero()) {
                FPoly p;
                for (const auto& [m, c] : slice.terms()) {
                    if ((int)p.c.size() <= m.e[CZ]) p.c.resize(m.e[CZ] + 1, FieldElem());
                    p.c[m.e[CZ]] = c.field_value();
                }
                p.trim();
                if (!p.is_zero() && p.deg() >= 1)
                    for (auto& t : fpoly_real_roots(p))
                        for (const auto& w : pos) note_gap(w, Scalar(t));
            }
        }
    }
    if (min_gap < 0) min_gap = Rat(2); // no finite marks anywhere
    Rat eps = eps_override ? *eps_override : Rat(min_gap / 4);
    if (eps_used) *eps_used = eps;

    for (const auto& comp : tree.components) {
        const Chart& home = tree.chart(comp.home_chart);
        const CylinderData& d = tree.cyl_data(comp.home_chart);
        const ChartField& F = tree.field_in(comp.home_chart);
        bool dic = comp.dicritical;
        const SSeries drive = dic ? d.red_rho : d.red_z;
        SSeries drive_slice = drive.at_zero(CR);
        SSeries zslice = d.red_z.at_zero(CR);
        // ordered marks define the intervals
        std::vector<Mark> marks = comp.marks;
        int index = 0;
        for (size_t i = 0; i + 1 < marks.size(); ++i) {
            const Mark& a = marks[i];
            const Mark& b = marks[i + 1];
            if (a.at_pinf || b.at_minf) continue;
            BoxCertificate box;
            box.component = comp.id;
            box.index = index++;
            box.dicritical = dic;
            box.monotone = dic ? 'r' : 'z';
            // rational endpoints with the epsilon inset
            auto rpos = [&](const Scalar& s, bool up) {
                Scalar sc = s;
                sc.sign(); // refine underlying enclosures
                IntervalQ e = sc.enclosure();
                return up ? e.hi : e.lo;
            };
            if (a.at_minf) {
                box.unbounded_lo = true;
                Rat ref = b.at_pinf ? Rat(0) : rpos(b.pos, false);
                box.lo = ref - 1 / eps;
            } else {
                box.lo = rpos(a.pos, true) + eps;
            }
            if (b.at_pinf) {
                box.unbounded_hi = true;
                Rat ref = a.at_minf ? Rat(0) : rpos(a.pos, true);
                box.hi = ref + 1 / eps;
            } else {
                box.hi = rpos(b.pos, false) - eps;
            }
            if (home.z_nonneg && box.lo < 0) box.lo = std::min(box.hi / 2, eps / 2);
            if (!(box.lo < box.hi)) {
                box.err = "empty box (epsilon too large)";
                out.push_back(box);
                continue;
            }
            auto lb = min_abs_on_interval(drive_slice, box.lo, box.hi);
            if (!lb) {
                box.err = "drive slice has no certified sign on the interval";
                out.push_back(box);
                continue;
            }
            box.sign = sign_on_interval(drive_slice, box.lo, box.hi);
            Rat zmax = std::max(rat_abs(box.lo), rat_abs(box.hi));
            // delta: the rho-dependent part stays below the slice minimum and
            // B_theta keeps positive
            Rat delta = delta_override ? *delta_override : Rat(1, 4);
            bool okd = false;
            for (int hv = 0; hv < 200; ++hv, delta /= 2) {
                if (rho_part_sup(drive, zmax, delta) < *lb &&
                    unit_lower_bound(F.b_theta, zmax, delta) > 0) {
                    okd = true;
                    break;
                }
                if (delta_override) break;
            }
            if (!okd) {
                box.err = "no certified box height";
                out.push_back(box);
                continue;
            }
            if (dic) {
                if (!zslice.is_zero()) {
                    box.dicase = 2;
                    // wall transversality: the z-drive keeps its sign on both walls
                    auto wall_ok = [&](const Rat& w) -> std::optional<Rat> {
                        SSeries at_w(2);
                        for (const auto& [m, c] : zslice.terms()) {
                            Mono mm;
                            Scalar v = c * Scalar(rat_pow(w, (unsigned)m.e[CZ]));
                            at_w.add_coeff(mm, v);
                        }
                        Scalar v0 = at_w.constant_term();
                        if (v0.is_zero()) return std::nullopt;
                        Rat v0lb = v0.enclosure().mig();
                        // rho-dependent variation of red_z along the wall
                        Rat var(0);
                        for (const auto& [m, c] : d.red_z.terms()) {
                            if (m.e[CR] == 0) continue;
                            var += scal_ub(c) * rat_pow(rat_abs(w), (unsigned)m.e[CZ]) *
                                   rat_pow(delta, (unsigned)m.e[CR]);
                        }
                        if (var < v0lb) return Rat(v0lb - var);
                        return std::nullopt;
                    };
                    auto m1 = wall_ok(box.lo), m2 = wall_ok(box.hi);
                    while ((!m1 || !m2) && delta > Rat(mpz_class(1), mpz_class(1) << 40)) {
                        delta /= 2;
                        m1 = wall_ok(box.lo);
                        m2 = wall_ok(box.hi);
                    }
                    if (m1 && m2) box.wall_margin = std::min(*m1, *m2);
                    else {
                        box.err = "wall transversality not certified";
                        out.push_back(box);
                        continue;
                    }
                } else {
                    box.dicase = 3;
                    // drift bound |dz/drho| <= C rho with C = K/a over the
                    // epsilon/2-expanded box
                    Rat lo2 = box.lo - eps / 2, hi2 = box.hi + eps / 2;
                    if (home.z_nonneg && lo2 < 0) lo2 = 0;
                    auto a_lb = min_abs_on_interval(drive_slice, lo2, hi2);
                    if (!a_lb) {
                        box.err = "case-3 drift: no lower bound for the rho-drive";
                        out.push_back(box);
                        continue;
                    }
                    Rat zmax2 = std::max(rat_abs(lo2), rat_abs(hi2));
                    Rat a_den = *a_lb - rho_part_sup(d.red_rho, zmax2, delta);
                    SSeries ztil = d.red_z.shift_var(CR, -1);
                    Rat K = poly_sup(ztil, zmax2, delta);
                    Rat bt_lb = unit_lower_bound(F.b_theta, zmax2, delta);
                    Rat bt_ub = Rat(2) - bt_lb; // 1 + rest <= 2 - (1 - rest)
                    while ((a_den <= 0 || !(delta * delta * (K * bt_ub / a_den) < eps)) &&
                           delta > Rat(mpz_class(1), mpz_class(1) << 40)) {
                        delta /= 2;
                        a_den = *a_lb - rho_part_sup(d.red_rho, zmax2, delta);
                        K = poly_sup(ztil, zmax2, delta);
                    }
                    if (a_den <= 0) {
                        box.err = "case-3 drift: no certified constants";
                        out.push_back(box);
                        continue;
                    }
                    box.drift_c = K * bt_ub / a_den;
                }
            }
            box.delta = delta;
            box.ok = true;
            out.push_back(box);
        }
    }
    return out;
}

namespace {

int locate_cycle_at(const BlowupTree& tree, int chart, const Scalar& w) {
    for (const auto& e : tree.elements)
        if (!e.consumed && e.kind == ElementKind::NonCornerCycle && e.chart == chart &&
            e.omega == w)
            return e.id;
    return -1;
}

} // namespace

ClassifyResult classify(const VectorField3& xi, const ClassifyOptions& opt) {
    ClassifyResult R;
    try {
        R.hopf = detect_hopf(xi);
    } catch (const NotHopf& e) {
        R.verdict = CaseTag::Undetermined;
        R.failure = std::string("not a Hopf-type singularity: ") + e.what();
        return R;
    }
    if (R.hopf.eigen_case == EigenCase::SemiHyperbolic) {
        R.verdict = CaseTag::SemiHyperbolic;
        R.warnings.push_back(
            "semi-hyperbolic spectrum: at most one limit central surface (the center "
            "manifold); the symbolic cycle pipeline applies to the zero-Hopf case");
        return R;
    }
    VectorField3 normalized = normalize_linear(xi, R.hopf);

    int ell = opt.ell > 0 ? opt.ell : std::max(2 * normalized.deg() + 2, 10);
    RotationalNormalForm nf = takens_normal_form(normalized, R.hopf.c, ell);
    R.symmetric_exact = nf.exact;
    R.ell = nf.exact ? std::max(ell, rotational_field(nf.T, nf.R, nf.Z).deg()) : ell;
    R.isolated = isolated_singularity_check(nf, std::max(opt.work, ell));
    if (R.isolated.kind == IsolatedCheck::AxisOfSingularities) {
        R.verdict = CaseTag::Undetermined;
        R.failure = "the singular locus contains the rotational axis (not an isolated "
                    "singularity)";
        return R;
    }
    if (R.isolated.kind == IsolatedCheck::Undetermined) {
        R.verdict = CaseTag::Undetermined;
        R.failure = "isolated-singularity certificate undetermined at the working order";
        return R;
    }
    VectorField3 xl = nf.exact ? rotational_field(nf.T, nf.R, nf.Z)
                               : truncated_normal_form(nf, ell);
    R.normalized = xl;
    if (!nf.exact)
        R.warnings.push_back("input is not rotationally symmetric: all verdicts apply to "
                             "the degree-" + std::to_string(ell) + " truncated normal form");

    BlowupTree tree = blow_up_origin(xl, opt.work);
    R.resolution = adapted_resolution(tree, opt.budget);
    if (!R.resolution.complete) {
        R.tree = std::move(tree);
        R.verdict = CaseTag::Undetermined;
        R.failure = "resolution: " + R.resolution.failure;
        return R;
    }

    R.axis_plus = certify_characteristic_singularity(tree, true);
    R.axis_minus = certify_characteristic_singularity(tree, false);

    bool all_ok = R.axis_plus.ok && R.axis_minus.ok;
    bool any_fix_exact = false, any_fix_upto = false;

    // per-cycle certificates on the resolved tree (before cone opening)
    std::vector<int> noncorner;
    for (const auto& e : tree.elements)
        if (!e.consumed && e.kind == ElementKind::NonCornerCycle) noncorner.push_back(e.id);
    for (int eid : noncorner) {
        CycleCertificate cc;
        cc.element = eid;
        cc.omega = tree.elements[eid].omega;
        try {
            const ResolutionEntry& ent = R.resolution.entries.at(eid);
            cc.status = ent.cls.status;
            CycleChartData data = cycle_chart_data(tree, eid);
            int order = std::max({opt.poincare_order, opt.fix_order, 4});
            cc.pjet = poincare_jet(data, order);
            cc.surface = invariant_surface_jet(data, ent.cls, std::max(order, opt.work));
            cc.verdict = fix_verdict(data, cc.pjet, cc.surface, order);
            cc.cone = cone_parameters(data, cc.pjet, cc.surface, cc.verdict);
            cc.ok = cc.cone.certified;
            if (!cc.ok) cc.err = cc.cone.note;
            if (cc.verdict.kind == FixKind::FixExact) any_fix_exact = true;
            if (cc.verdict.kind == FixKind::FixUpTo) any_fix_upto = true;
        } catch (const std::exception& e) {
            cc.err = e.what();
        }
        all_ok = all_ok && cc.ok;
        R.cycles.push_back(std::move(cc));
    }

    // corner certificates
    for (const auto& e : tree.elements) {
        if (e.consumed || e.kind != ElementKind::CornerCycle) continue;
        CornerCertificate c = certify_corner_cycle(tree, e.id);
        all_ok = all_ok && c.ok;
        R.corners.push_back(std::move(c));
    }

    // boxes on the resolved tree
    R.boxes = build_boxes(tree, opt.epsilon, opt.delta, &R.epsilon);
    for (const auto& b : R.boxes) all_ok = all_ok && b.ok;
    Rat delta_min(-1);
    for (const auto& b : R.boxes)
        if (b.ok && (delta_min < 0 || b.delta < delta_min)) delta_min = b.delta;

    // sampled limit central surfaces for the FIX cycles
    for (auto& cc : R.cycles) {
        if (cc.verdict.kind == FixKind::NonFix) continue;
        const Element& el = tree.elements[cc.element];
        const Chart& ch = tree.chart(el.chart);
        SampledSurface s;
        s.element = cc.element;
        double dmax = cc.cone.certified ? rat_double(cc.cone.delta) : 0.05;
        for (int i = 1; i <= 6; ++i) {
            double rho = dmax * i / 6.0;
            // z-position on the invariant curve, shifted by the cycle position
            double zc = el.omega.to_double();
            for (const auto& [m, c] : cc.surface.h.terms())
                zc += c.to_double() * std::pow(rho, m.e[CR]);
            for (int j = 0; j < 12; ++j) {
                double th = 2 * M_PI * j / 12.0;
                s.points.push_back(ambient_of_chart_point(ch.chain, th, zc, rho));
            }
        }
        R.surfaces.push_back(std::move(s));
    }

    // cone opening along every non-corner cycle (the final neighborhoods)
    R.ell_M = tree.ell_M();
    if (opt.open_cones) {
        for (auto& cc : R.cycles) {
            if (!cc.cone.certified) continue;
            int steps = cc.cone.N;
            SSeries h = cc.surface.h;
            int cur = cc.element;
            for (int i = 0; i < steps; ++i) {
                Mono m1;
                m1.e[CR] = 1;
                Scalar a1 = h.coeff(m1);
                int next = -1;
                try {
                    next = blow_up_noncorner_cycle(tree, cur, &a1);
                } catch (const std::exception& e) {
                    R.warnings.push_back(std::string("cone opening stopped: ") + e.what());
                    break;
                }
                ++cc.opened;
                if (next < 0) break;
                // strict transform of the curve: h <- (h - a1 rho)/rho
                SSeries hs(2);
                for (const auto& [m, c] : h.terms()) {
                    if (m.e[CR] == 1) continue;
                    Mono d = m;
                    d.e[CR] -= 1;
                    hs.set_coeff(d, c);
                }
                h = hs;
                cur = next;
            }
        }
    }
    R.ell_prime = std::max(R.ell, tree.ell_M() + 1);
    if (!R.symmetric_exact && R.ell < R.ell_prime)
        R.warnings.push_back("ell below ell' = " + std::to_string(R.ell_prime) +
                             "; rerun with --order >= that value");

    // certified ambient radius: directions through the boxes up to their
    // delta, poles through the axis radii
    {
        Rat r = delta_min > 0 ? delta_min : Rat(1, 64);
        if (R.axis_plus.ok) r = std::min(r, R.axis_plus.radius);
        if (R.axis_minus.ok) r = std::min(r, R.axis_minus.radius);
        for (const auto& c : R.corners)
            if (c.ok) r = std::min(r, c.radius);
        R.region_radius = r / 2;
    }

    if (!all_ok) {
        R.verdict = CaseTag::Undetermined;
        R.failure = "certification incomplete";
    } else if (any_fix_upto) {
        R.verdict = CaseTag::CaseIICandidate;
        R.warnings.push_back("a FIX-up-to verdict is not decidable from finite jets; "
                             "case (ii) unconfirmed");
    } else if (any_fix_exact) {
        R.verdict = CaseTag::CaseII;
    } else {
        R.verdict = CaseTag::CaseI;
    }
    R.tree = std::move(tree);
    return R;
}

} // namespace hopf3
