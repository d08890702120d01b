#include "hopf3/report.hpp"

namespace hopf3 {

Json scalar_json(const Scalar& s) {
    Json j;
    j["exact"] = s.str();
    j["approx"] = s.to_double();
    return j;
}

Json series_json(const SSeries& s, const std::array<const char*, 3>& names) {
    Json terms = Json::object();
    for (const auto& [m, c] : s.terms()) {
        std::string key;
        for (int i = 0; i < s.nvars(); ++i) {
            if (i) key += " ";
            key += std::to_string(m.e[i]);
        }
        terms[key] = c.str();
    }
    Json j;
    j["vars"] = Json::array();
    for (int i = 0; i < s.nvars(); ++i) j["vars"].push_back(names[i]);
    j["coeffs"] = std::move(terms);
    return j;
}

namespace {

const char* step_name(SubstStep::Kind k) {
    switch (k) {
        case SubstStep::OriginCyl: return "origin-cylinder";
        case SubstStep::OriginPoint: return "origin-point";
        case SubstStep::SingCyl: return "axis-cylinder";
        case SubstStep::SingPoint: return "axis-point";
        case SubstStep::CornerUp: return "corner-up";
        case SubstStep::CornerDown: return "corner-down";
        case SubstStep::NonCornerCentral: return "cycle-central";
        case SubstStep::NonCornerUp: return "cycle-up";
        case SubstStep::NonCornerDown: return "cycle-down";
    }
    return "?";
}

const char* element_kind_name(ElementKind k) {
    switch (k) {
        case ElementKind::SingularityPlus: return "characteristic-singularity+";
        case ElementKind::SingularityMinus: return "characteristic-singularity-";
        case ElementKind::CornerCycle: return "corner-cycle";
        case ElementKind::NonCornerCycle: return "non-corner-cycle";
    }
    return "?";
}

} // namespace

Json tree_json(const BlowupTree& tree) {
    Json j;
    j["length"] = tree.length;
    j["work_order"] = tree.work;
    j["charts"] = Json::array();
    for (const auto& c : tree.charts) {
        Json jc;
        jc["id"] = c.id;
        jc["index"] = c.J.str();
        jc["kind"] = c.kind == ChartKind::Point ? "point" : "cylinder";
        jc["corner"] = c.corner;
        jc["alive"] = c.alive;
        Json chain = Json::array();
        for (const auto& st : c.chain) {
            Json js;
            js["map"] = step_name(st.kind);
            if (st.kind == SubstStep::OriginPoint) js["eps"] = st.eps;
            if (st.kind == SubstStep::NonCornerCentral || st.kind == SubstStep::NonCornerUp ||
                st.kind == SubstStep::NonCornerDown)
                js["omega"] = scalar_json(st.omega);
            chain.push_back(std::move(js));
        }
        jc["substitutions"] = std::move(chain);
        if (c.alive) {
            if (c.kind == ChartKind::Cylinder) {
                const CylinderData& d = tree.cyl_data(c.id);
                jc["n1"] = d.n1;
                jc["n2"] = d.n2;
                jc["dicritical"] = d.dicritical;
            } else {
                const PointData& p = tree.point_data(c.id);
                jc["n"] = p.n;
                jc["unit_cofactor"] = p.unit;
            }
        }
        j["charts"].push_back(std::move(jc));
    }
    j["components"] = Json::array();
    for (const auto& comp : tree.components) {
        Json jc;
        jc["id"] = comp.id;
        jc["dicritical"] = comp.dicritical;
        jc["home_chart"] = comp.home_chart;
        j["components"].push_back(std::move(jc));
    }
    j["elements"] = Json::array();
    for (const auto& e : tree.elements) {
        Json je;
        je["id"] = e.id;
        je["index"] = e.I.str();
        je["kind"] = element_kind_name(e.kind);
        je["chart"] = e.chart;
        je["consumed"] = e.consumed;
        if (e.kind == ElementKind::NonCornerCycle) je["omega"] = scalar_json(e.omega);
        j["elements"].push_back(std::move(je));
    }
    j["ell_M"] = tree.ell_M();
    return j;
}

Json report_json(const ClassifyResult& r, const Json& input_echo, const Json& options_echo) {
    Json j;
    j["schema"] = "hopf3/1";
    j["case"] = case_tag_name(r.verdict);
    if (!r.failure.empty()) j["failure"] = r.failure;
    j["input"] = input_echo;
    j["options"] = options_echo;
    {
        Json h;
        h["b"] = scalar_json(r.hopf.b);
        h["c"] = scalar_json(r.hopf.c);
        h["eigen_case"] =
            r.hopf.eigen_case == EigenCase::ZeroHopf ? "zero-hopf" : "semi-hyperbolic";
        h["identity_change"] = r.hopf.identity_change;
        j["hopf"] = std::move(h);
    }
    if (r.verdict == CaseTag::SemiHyperbolic) {
        j["warnings"] = r.warnings;
        return j;
    }
    {
        Json o;
        o["ell"] = r.ell;
        o["ell_M"] = r.ell_M;
        o["ell_prime"] = r.ell_prime;
        o["symmetric_exact_input"] = r.symmetric_exact;
        j["orders"] = std::move(o);
    }
    {
        Json iso;
        iso["kind"] = r.isolated.kind == IsolatedCheck::Isolated
                          ? "isolated"
                          : (r.isolated.kind == IsolatedCheck::AxisOfSingularities
                                 ? "axis-of-singularities"
                                 : "undetermined");
        if (r.isolated.kind == IsolatedCheck::Isolated) {
            iso["order"] = r.isolated.order;
            iso["leading"] = scalar_json(r.isolated.leading);
        }
        j["isolated_singularity"] = std::move(iso);
    }
    if (r.tree) j["resolution"] = tree_json(*r.tree);
    j["resolution_trace"] = r.resolution.trace;

    Json certs = Json::array();
    for (const auto& a : {r.axis_plus, r.axis_minus}) {
        Json c;
        c["kind"] = "axis";
        c["end"] = a.plus_end ? "+" : "-";
        c["ok"] = a.ok;
        if (a.ok) {
            c["t"] = a.t;
            c["cofactor_sign"] = a.sign_g0;
            c["radius"] = rat_str(a.radius);
            c["radius_approx"] = rat_double(a.radius);
        } else
            c["error"] = a.err;
        certs.push_back(std::move(c));
    }
    for (const auto& cr : r.corners) {
        Json c;
        c["kind"] = "corner";
        c["element"] = cr.element;
        c["ok"] = cr.ok;
        if (cr.ok) {
            c["monotone"] = std::string(1, cr.monotone);
            c["lambda"] = scalar_json(cr.lambda);
            c["radius"] = rat_str(cr.radius);
            c["case"] = cr.case_tag;
        } else
            c["error"] = cr.err;
        certs.push_back(std::move(c));
    }
    for (const auto& cy : r.cycles) {
        Json c;
        c["kind"] = "non-corner-cycle";
        c["element"] = cy.element;
        c["omega"] = scalar_json(cy.omega);
        c["status"] = sing_status_name(cy.status);
        c["ok"] = cy.ok;
        if (!cy.err.empty()) c["error"] = cy.err;
        c["surface_jet"] = series_json(cy.surface.h, {"z", "rho", ""});
        c["surface_exact"] = cy.surface.exact;
        switch (cy.verdict.kind) {
            case FixKind::NonFix: {
                c["verdict"] = "NONFIX";
                c["m"] = cy.verdict.m;
                c["leading"] = scalar_json(cy.verdict.leading);
                break;
            }
            case FixKind::FixExact: c["verdict"] = "FIX-exact"; break;
            case FixKind::FixUpTo:
                c["verdict"] = "FIX-up-to";
                c["order_checked"] = cy.verdict.order_checked;
                break;
        }
        if (cy.cone.certified) {
            Json k;
            k["N"] = cy.cone.N;
            k["k"] = cy.cone.k;
            k["s"] = cy.cone.s;
            k["alpha"] = scalar_json(cy.cone.alpha);
            k["delta"] = rat_str(cy.cone.delta);
            k["delta_approx"] = rat_double(cy.cone.delta);
            k["K"] = rat_double(cy.cone.K);
            k["C"] = rat_str(cy.cone.C);
            if (cy.verdict.kind == FixKind::NonFix)
                k["monotone_rho_sign"] = cy.cone.monotone_sign;
            else {
                k["rho_fixed"] = cy.cone.rho_fixed;
                k["drive_sign"] = cy.cone.z_monotone_sign;
            }
            c["cone"] = std::move(k);
        }
        c["opened"] = cy.opened;
        {
            Json pj;
            pj["order"] = cy.pjet.order;
            pj["z"] = series_json(cy.pjet.Pz, {"z", "rho", ""});
            pj["rho"] = series_json(cy.pjet.Pr, {"z", "rho", ""});
            c["poincare_jet"] = std::move(pj);
        }
        certs.push_back(std::move(c));
    }
    j["certificates"] = std::move(certs);

    Json boxes = Json::array();
    for (const auto& b : r.boxes) {
        Json jb;
        jb["component"] = b.component;
        jb["index"] = b.index;
        jb["ok"] = b.ok;
        if (!b.err.empty()) jb["error"] = b.err;
        jb["interval"] = Json::array({rat_double(b.lo), rat_double(b.hi)});
        jb["interval_exact"] = Json::array({rat_str(b.lo), rat_str(b.hi)});
        jb["monotone"] = std::string(1, b.monotone);
        jb["sign"] = b.sign;
        jb["delta"] = rat_str(b.delta);
        jb["delta_approx"] = rat_double(b.delta);
        jb["dicritical"] = b.dicritical;
        jb["case"] = b.dicase;
        if (b.dicase == 3) jb["drift_C"] = rat_double(b.drift_c);
        boxes.push_back(std::move(jb));
    }
    j["boxes"] = std::move(boxes);
    j["epsilon"] = rat_str(r.epsilon);
    j["region_radius"] = rat_double(r.region_radius);

    Json surfaces = Json::array();
    for (const auto& s : r.surfaces) {
        Json js;
        js["cycle"] = s.element;
        Json pts = Json::array();
        for (const auto& p : s.points) pts.push_back(Json::array({p[0], p[1], p[2]}));
        js["samples"] = std::move(pts);
        surfaces.push_back(std::move(js));
    }
    j["surfaces"] = std::move(surfaces);
    j["warnings"] = r.warnings;
    return j;
}

} // namespace hopf3
