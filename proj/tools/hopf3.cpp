// Command-line front end: normal form, resolution, Poincaré data,
// classification, and the floating-point lab.

#include "hopf3/input.hpp"
#include "hopf3/planar.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

using namespace hopf3;

namespace {

struct CommonArgs {
    std::string file, format, outdir;
    int order = 0, budget = 20, fix_order = 0, porder = 0;
    std::string epsilon, delta;
    unsigned seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("file", a.file, "input field file (TOML or JSON)")->required();
    cmd->add_option("--format", a.format, "input format: toml|json (default: by extension)");
    cmd->add_option("--order", a.order, "jet order ell of the truncated normal form");
    cmd->add_option("--budget", a.budget, "blow-up budget for the resolution");
    cmd->add_option("--fix-order", a.fix_order, "order for FIX-up-to verdicts");
    cmd->add_option("--poincare-order", a.porder, "Poincare jet order");
    cmd->add_option("--epsilon", a.epsilon, "box inset override (exact rational)");
    cmd->add_option("--delta", a.delta, "box height override (exact rational)");
    cmd->add_option("--seed", a.seed, "random seed for the numeric lab");
    cmd->add_option("--out", a.outdir, "directory for data files (CSV, JSON)");
}

InputSpec load(const CommonArgs& a) {
    InputSpec spec = load_input(a.file, a.format);
    if (a.order > 0) spec.options.ell = a.order;
    if (a.budget > 0) spec.options.budget = a.budget;
    if (a.fix_order > 0) spec.options.fix_order = a.fix_order;
    if (a.porder > 0) spec.options.poincare_order = a.porder;
    if (!a.epsilon.empty()) spec.options.epsilon = parse_rat(a.epsilon);
    if (!a.delta.empty()) spec.options.delta = parse_rat(a.delta);
    if (a.seed) spec.options.seed = a.seed;
    return spec;
}

Json options_echo(const ClassifyOptions& o) {
    Json j;
    j["order"] = o.ell;
    j["work"] = o.work;
    j["poincare_order"] = o.poincare_order;
    j["budget"] = o.budget;
    j["fix_order"] = o.fix_order;
    j["seed"] = o.seed;
    j["open_cones"] = o.open_cones;
    if (o.epsilon) j["epsilon"] = rat_str(*o.epsilon);
    if (o.delta) j["delta"] = rat_str(*o.delta);
    return j;
}

void emit(const Json& j, const std::string& outdir, const std::string& name) {
    if (outdir.empty()) {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::filesystem::create_directories(outdir);
    std::ofstream out(outdir + "/" + name);
    out << j.dump(2) << "\n";
    std::cout << outdir + "/" + name << "\n";
}

int run_normal_form(const CommonArgs& a) {
    InputSpec spec = load(a);
    HopfData h = detect_hopf(spec.field);
    VectorField3 nl = normalize_linear(spec.field, h);
    int ell = spec.options.ell > 0 ? spec.options.ell : std::max(2 * nl.deg() + 2, 10);
    RotationalNormalForm nf = takens_normal_form(nl, h.c, ell);
    Json j;
    j["schema"] = "hopf3/1";
    j["b"] = scalar_json(h.b);
    j["c"] = scalar_json(h.c);
    j["ell"] = ell;
    j["exact"] = nf.exact;
    j["T"] = series_json(nf.T, {"u", "v", ""});
    j["R"] = series_json(nf.R, {"u", "v", ""});
    j["Z"] = series_json(nf.Z, {"u", "v", ""});
    j["phi"] = Json::object();
    j["phi"]["identity"] = nf.identity_phi;
    if (!nf.identity_phi) {
        j["phi"]["x"] = series_json(nf.phi.x, {"x", "y", "z"});
        j["phi"]["y"] = series_json(nf.phi.y, {"x", "y", "z"});
        j["phi"]["z"] = series_json(nf.phi.z, {"x", "y", "z"});
    }
    emit(j, a.outdir, "normal_form.json");
    return 0;
}

int run_resolve(const CommonArgs& a) {
    InputSpec spec = load(a);
    HopfData h = detect_hopf(spec.field);
    if (h.eigen_case == EigenCase::SemiHyperbolic) {
        std::cout << "semi-hyperbolic case: resolution applies to the zero-Hopf case\n";
        return 2;
    }
    VectorField3 nl = normalize_linear(spec.field, h);
    int ell = spec.options.ell > 0 ? spec.options.ell : std::max(2 * nl.deg() + 2, 10);
    RotationalNormalForm nf = takens_normal_form(nl, h.c, ell);
    VectorField3 xl =
        nf.exact ? rotational_field(nf.T, nf.R, nf.Z) : truncated_normal_form(nf, ell);
    BlowupTree tree = blow_up_origin(xl, spec.options.work);
    ResolutionOutcome res = adapted_resolution(tree, spec.options.budget);
    Json j;
    j["schema"] = "hopf3/1";
    j["complete"] = res.complete;
    if (!res.complete) j["failure"] = res.failure;
    j["trace"] = res.trace;
    Json st = Json::array();
    for (const auto& [eid, ent] : res.entries) {
        Json e;
        e["element"] = eid;
        e["index"] = tree.elements[eid].I.str();
        e["status"] = sing_status_name(ent.cls.status);
        if (tree.elements[eid].kind == ElementKind::NonCornerCycle)
            e["separatrix"] = series_json(ent.separatrix, {"z", "rho", ""});
        st.push_back(std::move(e));
    }
    j["statuses"] = std::move(st);
    j["tree"] = tree_json(tree);
    emit(j, a.outdir, "resolution.json");
    return res.complete ? 0 : 2;
}

int run_poincare(const CommonArgs& a, const std::string& cycle) {
    InputSpec spec = load(a);
    ClassifyOptions opt = spec.options;
    ClassifyResult r = classify(spec.field, opt);
    if (!r.tree) {
        std::cerr << "classification did not reach the Poincare stage: " << r.failure << "\n";
        return 2;
    }
    Json all = Json::array();
    for (const auto& cy : r.cycles) {
        if (!cycle.empty() && r.tree->elements[cy.element].I.str() != cycle) continue;
        Json c;
        c["element"] = cy.element;
        c["index"] = r.tree->elements[cy.element].I.str();
        c["omega"] = scalar_json(cy.omega);
        c["order"] = cy.pjet.order;
        c["P_z"] = series_json(cy.pjet.Pz, {"z", "rho", ""});
        c["P_rho"] = series_json(cy.pjet.Pr, {"z", "rho", ""});
        switch (cy.verdict.kind) {
            case FixKind::NonFix:
                c["verdict"] = "NONFIX";
                c["m"] = cy.verdict.m;
                c["leading"] = scalar_json(cy.verdict.leading);
                break;
            case FixKind::FixExact: c["verdict"] = "FIX-exact"; break;
            case FixKind::FixUpTo:
                c["verdict"] = "FIX-up-to";
                c["order_checked"] = cy.verdict.order_checked;
                break;
        }
        if (cy.cone.certified) {
            c["cone"] = Json::object();
            c["cone"]["N"] = cy.cone.N;
            c["cone"]["delta"] = rat_str(cy.cone.delta);
            c["cone"]["alpha"] = scalar_json(cy.cone.alpha);
        }
        all.push_back(std::move(c));
    }
    Json j;
    j["schema"] = "hopf3/1";
    j["cycles"] = std::move(all);
    emit(j, a.outdir, "poincare.json");
    return 0;
}

int run_classify(const CommonArgs& a) {
    InputSpec spec = load(a);
    ClassifyResult r = classify(spec.field, spec.options);
    Json j = report_json(r, spec.echo, options_echo(spec.options));
    emit(j, a.outdir, "report.json");
    if (r.verdict == CaseTag::Undetermined) return 2;
    return 0;
}

int run_simulate(const CommonArgs& a, int nseeds, double region) {
    InputSpec spec = load(a);
    ClassifyResult r = classify(spec.field, spec.options);
    NumField3 nf = NumField3::compile(spec.field);
    double R = region > 0 ? region : rat_double(r.region_radius);
    if (R <= 0) R = 0.25;
    std::mt19937 rng(spec.options.seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<std::array<double, 3>> seeds;
    while ((int)seeds.size() < nseeds) {
        std::array<double, 3> p{U(rng) * R, U(rng) * R, U(rng) * R};
        double n2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        if (n2 > R * R || n2 < 1e-8 * R * R) continue;
        seeds.push_back(p);
    }
    auto cycles = detect_cycles(nf, seeds);
    Json j;
    j["schema"] = "hopf3/1";
    j["case"] = case_tag_name(r.verdict);
    j["region_radius"] = R;
    j["seeds"] = nseeds;
    Json cj = Json::array();
    for (const auto& c : cycles) {
        Json e;
        e["point"] = Json::array({c.point[0], c.point[1], c.point[2]});
        e["period"] = c.period;
        e["residual"] = c.residual;
        cj.push_back(std::move(e));
    }
    j["cycles"] = std::move(cj);
    // certificate validation summary: monotone boxes vs sampled trajectories
    int boxes_checked = 0, boxes_passed = 0;
    if (r.tree) {
        for (const auto& b : r.boxes) {
            if (!b.ok) continue;
            ++boxes_checked;
            const Component& comp = r.tree->components[b.component];
            const ChartField& F = r.tree->field_in(comp.home_chart);
            NumChartSystem sys = NumChartSystem::compile(
                F.b_z * F.b_theta.invert_unit_var(CR, r.tree->work),
                F.b_rho * F.b_theta.invert_unit_var(CR, r.tree->work));
            bool pass = true;
            double lo = rat_double(b.lo), hi = rat_double(b.hi), dd = rat_double(b.delta);
            for (int i = 0; i < 5 && pass; ++i) {
                double z = lo + (hi - lo) * (i + 0.5) / 5.0;
                double rho = dd * (0.2 + 0.15 * i);
                double zc = z, rc = rho;
                double prev = b.monotone == 'z' ? zc : rc;
                for (int k = 0; k < 4; ++k) {
                    auto nxt = chart_return(sys, zc, rc);
                    zc = nxt[0];
                    rc = nxt[1];
                    if (zc < lo || zc > hi || rc <= 0 || rc > dd) break;
                    double cur = b.monotone == 'z' ? zc : rc;
                    if (b.sign > 0 ? cur <= prev : cur >= prev) {
                        pass = false;
                        break;
                    }
                    prev = cur;
                }
            }
            if (pass) ++boxes_passed;
        }
    }
    j["boxes_checked"] = boxes_checked;
    j["boxes_passed"] = boxes_passed;
    emit(j, a.outdir, "simulate.json");
    // CSV trajectories
    if (!a.outdir.empty()) {
        std::ofstream csv(a.outdir + "/trajectories.csv");
        csv << "seed,t,x,y,z\n";
        for (int i = 0; i < std::min(16, (int)seeds.size()); ++i) {
            Trajectory tr = integrate(nf, seeds[i], 20.0);
            for (size_t k = 0; k < tr.t.size(); k += 8)
                csv << i << "," << tr.t[k] << "," << tr.x[k][0] << "," << tr.x[k][1] << ","
                    << tr.x[k][2] << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified classification of the local cycle locus at a Hopf-type "
                 "singularity on R^3"};
    app.require_subcommand(1);

    CommonArgs a_nf, a_res, a_poi, a_cls, a_sim;
    std::string cycle_filter;
    int nseeds = 200;
    double region = 0;

    auto* c_nf = app.add_subcommand("normal-form", "Takens normal form T, R, Z and phi");
    add_common(c_nf, a_nf);
    auto* c_res = app.add_subcommand("resolve", "adapted resolution of singularities");
    add_common(c_res, a_res);
    auto* c_poi = app.add_subcommand("poincare", "Poincare first-return jets and verdicts");
    add_common(c_poi, a_poi);
    c_poi->add_option("--cycle", cycle_filter, "restrict to one cycle index, e.g. (1)");
    auto* c_cls = app.add_subcommand("classify", "full certified classification report");
    add_common(c_cls, a_cls);
    auto* c_sim = app.add_subcommand("simulate", "numeric lab: cycles and validation");
    add_common(c_sim, a_sim);
    c_sim->add_option("--seeds", nseeds, "number of random seeds");
    c_sim->add_option("--region", region, "ambient sampling radius (default: certified)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_nf->parsed()) return run_normal_form(a_nf);
        if (c_res->parsed()) return run_resolve(a_res);
        if (c_poi->parsed()) return run_poincare(a_poi, cycle_filter);
        if (c_cls->parsed()) return run_classify(a_cls);
        if (c_sim->parsed()) return run_simulate(a_sim, nseeds, region);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
