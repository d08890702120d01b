#include "hopf3/blowup.hpp"

#include <sstream>

namespace hopf3 {

std::string IndexTuple::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        if (v[i] == IDX_PINF) os << "inf";
        else if (v[i] == IDX_MINF) os << "-inf";
        else os << v[i];
    }
    os << ")";
    return os.str();
}

namespace {

TrigPoly trig_pow(int a, int b) {
    TrigPoly t{Scalar(1)};
    for (int i = 0; i < a; ++i) t = t * TrigPoly::cosk(1);
    for (int i = 0; i < b; ++i) t = t * TrigPoly::sink(1);
    return t;
}

// Joint-min trust rule for the substitution maps below: sound, possibly a
// touch conservative; the paper budgets (Prop. on chart jets) are enforced
// separately where they matter.
Trust joint_trust(const Trust& t) {
    int m = std::min(std::min(t.total, t.var[0]), std::min(t.var[1], t.var[2]));
    Trust r;
    if (m < ORD_INF) {
        r.total = m;
        r.var = {m, m, m};
    }
    return r;
}

// (x,y,z) -> cylinder: x = rho cos, y = rho sin, z = rho * z_new.
TSeries subst_ambient_cyl(const SSeries& s) {
    TSeries r(2);
    r.set_trust(joint_trust(s.trust()));
    for (const auto& [m, c] : s.terms()) {
        Mono d;
        d.e[CZ] = m.e[2];
        d.e[CR] = m.e[0] + m.e[1] + m.e[2];
        r.add_coeff(d, c * trig_pow(m.e[0], m.e[1]));
    }
    r.prune();
    return r;
}

// (x,y,z) -> point chart: x = x z, y = y z, z = eps z.
SSeries subst_ambient_point(const SSeries& s, int eps) {
    SSeries r(3);
    r.set_trust(joint_trust(s.trust()));
    for (const auto& [m, c] : s.terms()) {
        Mono d = m;
        d.e[2] = m.e[0] + m.e[1] + m.e[2];
        Scalar k = (eps < 0 && (m.e[2] % 2)) ? -Scalar(1) : Scalar(1);
        r.add_coeff(d, k * c);
    }
    r.prune();
    return r;
}

enum class CylMap { CornerUp, CornerDown, NonCornerUp, NonCornerDown };

// Monomial maps between cylinder charts.
TSeries subst_cyl(const TSeries& s, CylMap map) {
    TSeries r(2);
    r.set_trust(joint_trust(s.trust()));
    for (const auto& [m, c] : s.terms()) {
        Mono d;
        int a = m.e[CZ], b = m.e[CR];
        TrigPoly cc = c;
        switch (map) {
            case CylMap::CornerUp: // z = z', rho = rho' z'
            case CylMap::NonCornerUp:
                d.e[CZ] = a + b;
                d.e[CR] = b;
                break;
            case CylMap::CornerDown: // z = rho' z', rho = rho'
                d.e[CZ] = a;
                d.e[CR] = a + b;
                break;
            case CylMap::NonCornerDown: // z = -z', rho = rho' z'
                d.e[CZ] = a + b;
                d.e[CR] = b;
                if (a % 2) cc = -cc;
                break;
        }
        r.add_coeff(d, cc);
    }
    r.prune();
    return r;
}

ChartField step_origin_cyl(const VectorField3& f) {
    TSeries P = subst_ambient_cyl(f.x), Q = subst_ambient_cyl(f.y), R = subst_ambient_cyl(f.z);
    TSeries cosv = TSeries::constant(2, TrigPoly::cosk(1));
    TSeries sinv = TSeries::constant(2, TrigPoly::sink(1));
    ChartField out;
    out.kind = ChartKind::Cylinder;
    out.b_theta = (cosv * Q - sinv * P).shift_var(CR, -1);
    out.b_rho = cosv * P + sinv * Q;
    out.b_z = (R - TSeries::var(2, CZ) * out.b_rho).shift_var(CR, -1);
    return out;
}

ChartField step_point(const SSeries& px, const SSeries& py, const SSeries& pz, int eps) {
    SSeries P = subst_ambient_point(px, eps), Q = subst_ambient_point(py, eps),
            R = subst_ambient_point(pz, eps);
    ChartField out;
    out.kind = ChartKind::Point;
    out.pz = (eps < 0) ? -R : R;
    out.px = (P - SSeries::var(3, 0) * out.pz).shift_var(2, -1);
    out.py = (Q - SSeries::var(3, 1) * out.pz).shift_var(2, -1);
    return out;
}

ChartField step_sing_cyl(const ChartField& f) {
    // same formulas as the origin blow-up, applied to a point-chart field
    VectorField3 v{f.px, f.py, f.pz};
    return step_origin_cyl(v);
}

ChartField step_cyl(const ChartField& f, SubstStep::Kind kind, const Scalar& omega) {
    TSeries bt = f.b_theta, bz = f.b_z, br = f.b_rho;
    if (kind == SubstStep::NonCornerCentral || kind == SubstStep::NonCornerUp ||
        kind == SubstStep::NonCornerDown) {
        bt = bt.translate(CZ, omega);
        bz = bz.translate(CZ, omega);
        br = br.translate(CZ, omega);
    }
    ChartField out;
    out.kind = ChartKind::Cylinder;
    switch (kind) {
        case SubstStep::CornerUp:
        case SubstStep::NonCornerUp: {
            TSeries BT = subst_cyl(bt, kind == SubstStep::CornerUp ? CylMap::CornerUp
                                                                   : CylMap::NonCornerUp);
            TSeries BZ = subst_cyl(bz, kind == SubstStep::CornerUp ? CylMap::CornerUp
                                                                   : CylMap::NonCornerUp);
            TSeries BR = subst_cyl(br, kind == SubstStep::CornerUp ? CylMap::CornerUp
                                                                   : CylMap::NonCornerUp);
            out.b_theta = BT;
            out.b_z = BZ;
            out.b_rho = (BR - TSeries::var(2, CR) * BZ).shift_var(CZ, -1);
            break;
        }
        case SubstStep::NonCornerDown: {
            TSeries BT = subst_cyl(bt, CylMap::NonCornerDown);
            TSeries BZ = subst_cyl(bz, CylMap::NonCornerDown);
            TSeries BR = subst_cyl(br, CylMap::NonCornerDown);
            out.b_theta = BT;
            out.b_z = -BZ;
            out.b_rho = (BR - TSeries::var(2, CR) * out.b_z).shift_var(CZ, -1);
            break;
        }
        case SubstStep::CornerDown:
        case SubstStep::NonCornerCentral: {
            TSeries BT = subst_cyl(bt, CylMap::CornerDown);
            TSeries BZ = subst_cyl(bz, CylMap::CornerDown);
            TSeries BR = subst_cyl(br, CylMap::CornerDown);
            out.b_theta = BT;
            out.b_rho = BR;
            out.b_z = (BZ - TSeries::var(2, CZ) * BR).shift_var(CR, -1);
            break;
        }
        default:
            throw std::logic_error("step_cyl: not a cylinder step");
    }
    return out;
}

} // namespace

ChartField pullback_chain(const VectorField3& f, const std::vector<SubstStep>& chain,
                          int /*work*/) {
    ChartField cur;
    bool started = false;
    for (const auto& st : chain) {
        switch (st.kind) {
            case SubstStep::OriginCyl:
                cur = step_origin_cyl(f);
                started = true;
                break;
            case SubstStep::OriginPoint:
                cur = step_point(f.x, f.y, f.z, st.eps);
                started = true;
                break;
            case SubstStep::SingPoint:
                if (!started || cur.kind != ChartKind::Point)
                    throw BlowupError("SingPoint step needs a point chart");
                cur = step_point(cur.px, cur.py, cur.pz, +1);
                break;
            case SubstStep::SingCyl:
                if (!started || cur.kind != ChartKind::Point)
                    throw BlowupError("SingCyl step needs a point chart");
                cur = step_sing_cyl(cur);
                break;
            default:
                if (!started || cur.kind != ChartKind::Cylinder)
                    throw BlowupError("cylinder step needs a cylinder chart");
                cur = step_cyl(cur, st.kind, st.omega);
        }
    }
    if (!started) throw BlowupError("empty substitution chain");
    return cur;
}

CylinderData analyze_cylinder(const ChartField& f, bool corner, int work) {
    if (f.kind != ChartKind::Cylinder) throw BlowupError("analyze_cylinder: wrong chart kind");
    CylinderData d;
    int oz = f.b_z.is_zero() ? ORD_INF : f.b_z.ord_var(CR);
    int orr = f.b_rho.is_zero() ? ORD_INF : f.b_rho.ord_var(CR);
    if (oz >= ORD_INF && orr >= ORD_INF)
        throw BlowupError("associated planar field vanishes to working order");
    d.n1 = std::min(oz, orr);
    if (corner) {
        int cz = f.b_z.is_zero() ? ORD_INF : f.b_z.ord_var(CZ);
        int cr = f.b_rho.is_zero() ? ORD_INF : f.b_rho.ord_var(CZ);
        d.n2 = std::min(cz, cr);
        if (d.n2 >= ORD_INF) d.n2 = 0;
    }
    TSeries rz = f.b_z.shift_var(CR, -d.n1).shift_var(CZ, -d.n2);
    TSeries rr = f.b_rho.shift_var(CR, -d.n1).shift_var(CZ, -d.n2);
    d.red_z = drop_trig(rz);
    d.red_rho = drop_trig(rr);
    TSeries binv = f.b_theta.invert_unit_var(CR, work);
    d.a_z = rz * binv;
    d.a_rho = rr * binv;
    SSeries slice = d.red_rho.at_zero(CR);
    d.dicritical = !slice.is_zero();
    return d;
}

PointData analyze_point(const ChartField& f) {
    if (f.kind != ChartKind::Point) throw BlowupError("analyze_point: wrong chart kind");
    PointData d;
    if (f.pz.is_zero()) throw BlowupError("axis component vanishes identically to working order");
    d.n = f.pz.ord_var(2);
    d.cof = f.pz.shift_var(2, -d.n);
    d.unit = !d.cof.constant_term().is_zero();
    return d;
}

std::vector<int> BlowupTree::alive_charts() const {
    std::vector<int> out;
    for (const auto& c : charts)
        if (c.alive) out.push_back(c.id);
    return out;
}

std::vector<int> BlowupTree::live_elements() const {
    std::vector<int> out;
    for (const auto& e : elements)
        if (!e.consumed) out.push_back(e.id);
    return out;
}

int BlowupTree::find_element(const IndexTuple& I) const {
    for (const auto& e : elements)
        if (!e.consumed && e.I == I) return e.id;
    return -1;
}

const ChartField& BlowupTree::field_in(int chart_id) const {
    const Chart& c = chart(chart_id);
    if (!c.field) c.field = pullback_chain(root, c.chain, work);
    return *c.field;
}

const CylinderData& BlowupTree::cyl_data(int chart_id) const {
    const Chart& c = chart(chart_id);
    if (!c.cyl) c.cyl = analyze_cylinder(field_in(chart_id), c.corner, work);
    return *c.cyl;
}

const PointData& BlowupTree::point_data(int chart_id) const {
    const Chart& c = chart(chart_id);
    if (!c.pt) c.pt = analyze_point(field_in(chart_id));
    return *c.pt;
}

int BlowupTree::n_of_chart(int id) const {
    const Chart& c = chart(id);
    if (c.kind == ChartKind::Point) return point_data(id).n;
    const CylinderData& d = cyl_data(id);
    return std::max(d.n1, d.n2);
}

int BlowupTree::ell_M() const {
    int m = 0;
    for (int id : alive_charts()) m = std::max(m, n_of_chart(id));
    return m + length + 1;
}

std::vector<Scalar> adapted_locus(const BlowupTree& tree, int chart_id) {
    const Chart& c = tree.chart(chart_id);
    const CylinderData& d = tree.cyl_data(chart_id);
    const SSeries& which = d.dicritical ? d.red_rho : d.red_z;
    SSeries slice = which.at_zero(CR);
    FPoly p;
    for (const auto& [m, co] : slice.terms()) {
        if (!co.pi_free()) throw BlowupError("adapted_locus: unexpected pi in planar data");
        if ((int)p.c.size() <= m.e[CZ]) p.c.resize(m.e[CZ] + 1, FieldElem());
        p.c[m.e[CZ]] = co.field_value();
    }
    p.trim();
    std::vector<Scalar> out;
    if (p.is_zero()) {
        if (d.dicritical) throw std::logic_error("adapted_locus: dicritical with zero slice");
        // non-dicritical with A_z(.,0) = 0 would contradict maximality of n1
        throw BlowupError("adapted_locus: reduced slice vanishes identically");
    }
    for (auto& r : fpoly_real_roots(p)) {
        Scalar w{r};
        if (c.corner && w.sign() <= 0) continue; // regular part z > 0 only
        out.push_back(std::move(w));
    }
    return out;
}

namespace {

void add_cycles_from_locus(BlowupTree& tree, int chart_id, const IndexTuple& base,
                           int comp_id) {
    auto roots = adapted_locus(tree, chart_id);
    Component& comp = tree.components[comp_id];
    int i = 1;
    for (auto& w : roots) {
        Element e;
        e.id = (int)tree.elements.size();
        e.I = base;
        e.I.v.push_back(i++);
        e.kind = ElementKind::NonCornerCycle;
        e.chart = chart_id;
        e.omega = w;
        e.comp_a = comp_id;
        tree.elements.push_back(e);
        Mark mk;
        mk.pos = w;
        mk.element = e.id;
        comp.marks.push_back(mk);
    }
}

int push_chart(BlowupTree& tree, Chart c) {
    c.id = (int)tree.charts.size();
    tree.charts.push_back(std::move(c));
    return tree.charts.back().id;
}

Mark sentinel_mark(bool plus, int element) {
    Mark m;
    m.at_pinf = plus;
    m.at_minf = !plus;
    m.element = element;
    return m;
}

void sort_marks(Component& comp) {
    std::sort(comp.marks.begin(), comp.marks.end(), [](const Mark& a, const Mark& b) {
        if (a.at_minf != b.at_minf) return a.at_minf;
        if (a.at_pinf != b.at_pinf) return b.at_pinf;
        if (a.at_pinf && b.at_pinf) return false;
        if (a.at_minf && b.at_minf) return false;
        int s = (a.pos - b.pos).sign();
        if (s != 0) return s < 0;
        return a.side < b.side;
    });
}

} // namespace

BlowupTree blow_up_origin(const VectorField3& symmetric_field, int work) {
    BlowupTree tree;
    tree.root = symmetric_field;
    tree.work = work;
    tree.length = 0;

    Chart c0;
    c0.J.v = {IDX_ZERO};
    c0.kind = ChartKind::Cylinder;
    c0.corner = false;
    c0.z_nonneg = false;
    c0.chain = {SubstStep{SubstStep::OriginCyl}};
    c0.comp_rho = 0;
    int id0 = push_chart(tree, std::move(c0));

    Chart cp;
    cp.J.v = {IDX_PINF};
    cp.kind = ChartKind::Point;
    cp.chain = {SubstStep{SubstStep::OriginPoint, +1}};
    cp.comp_z = 0;
    int idp = push_chart(tree, std::move(cp));

    Chart cm;
    cm.J.v = {IDX_MINF};
    cm.kind = ChartKind::Point;
    cm.chain = {SubstStep{SubstStep::OriginPoint, -1}};
    cm.comp_z = 0;
    int idm = push_chart(tree, std::move(cm));

    Component e0;
    e0.id = 0;
    e0.home_chart = id0;
    tree.components.push_back(e0);
    tree.components[0].dicritical = tree.cyl_data(id0).dicritical;

    Element sp;
    sp.id = 0;
    sp.I.v = {IDX_PINF};
    sp.kind = ElementKind::SingularityPlus;
    sp.chart = idp;
    sp.comp_a = 0;
    tree.elements.push_back(sp);
    Element sm;
    sm.id = 1;
    sm.I.v = {IDX_MINF};
    sm.kind = ElementKind::SingularityMinus;
    sm.chart = idm;
    sm.comp_a = 0;
    tree.elements.push_back(sm);
    tree.components[0].marks.push_back(sentinel_mark(true, 0));
    tree.components[0].marks.push_back(sentinel_mark(false, 1));

    add_cycles_from_locus(tree, id0, IndexTuple{}, 0);
    sort_marks(tree.components[0]);
    return tree;
}

void blow_up_characteristic_singularity(BlowupTree& tree, int element_id) {
    const Element el = tree.elements.at(element_id); // copy: the vector grows below
    if (el.consumed) throw BlowupError("element already blown up");
    if (el.kind != ElementKind::SingularityPlus && el.kind != ElementKind::SingularityMinus)
        throw BlowupError("not a characteristic singularity");
    const std::vector<SubstStep> old_chain = tree.chart(el.chart).chain;
    const int old_chart_id = el.chart;
    int old_comp = tree.chart(el.chart).comp_z;
    int sent = el.kind == ElementKind::SingularityPlus ? IDX_PINF : IDX_MINF;

    // new point chart (the next infinitely-near axis point)
    Chart np;
    np.J = el.I;
    np.J.v.push_back(sent);
    np.kind = ChartKind::Point;
    np.chain = old_chain;
    np.chain.push_back(SubstStep{SubstStep::SingPoint, +1});
    int new_comp = (int)tree.components.size();
    np.comp_z = new_comp;
    int idp = push_chart(tree, std::move(np));

    // corner cylinder chart
    Chart nc;
    nc.J = el.I;
    nc.J.v.push_back(IDX_ZERO);
    nc.kind = ChartKind::Cylinder;
    nc.corner = true;
    nc.z_nonneg = true;
    nc.chain = old_chain;
    nc.chain.push_back(SubstStep{SubstStep::SingCyl});
    nc.comp_rho = new_comp;
    nc.comp_z = old_comp;
    int idc = push_chart(tree, std::move(nc));

    Component comp;
    comp.id = new_comp;
    comp.home_chart = idc;
    tree.components.push_back(comp);
    tree.components[new_comp].dicritical = tree.cyl_data(idc).dicritical;

    // new characteristic singularity
    Element ns;
    ns.id = (int)tree.elements.size();
    ns.I = el.I;
    ns.I.v.push_back(sent);
    ns.kind = el.kind;
    ns.chart = idp;
    ns.comp_a = new_comp;
    tree.elements.push_back(ns);

    // corner characteristic cycle at {z=rho=0} of the cylinder chart
    Element cc;
    cc.id = (int)tree.elements.size();
    cc.I = el.I;
    cc.I.v.push_back(sent == IDX_PINF ? IDX_MINF : IDX_PINF);
    cc.kind = ElementKind::CornerCycle;
    cc.chart = idc;
    cc.comp_a = old_comp;
    cc.comp_b = new_comp;
    tree.elements.push_back(cc);

    // old component's pole mark now ends at the corner
    for (auto& mk : tree.components[old_comp].marks)
        if (mk.element == el.id) mk.element = cc.id;

    // new component marks: corner at z=0, new singularity at the far end
    {
        Mark m0;
        m0.pos = Scalar();
        m0.element = cc.id;
        tree.components[new_comp].marks.push_back(m0);
        tree.components[new_comp].marks.push_back(sentinel_mark(true, ns.id));
    }

    add_cycles_from_locus(tree, idc, el.I, new_comp);
    sort_marks(tree.components[new_comp]);

    tree.chart(old_chart_id).alive = false;
    tree.elements.at(element_id).consumed = true;
    tree.length += 1;
}

void blow_up_corner_cycle(BlowupTree& tree, int element_id) {
    const Element el = tree.elements.at(element_id); // copy: the vector grows below
    if (el.consumed) throw BlowupError("element already blown up");
    if (el.kind != ElementKind::CornerCycle) throw BlowupError("not a corner cycle");
    const std::vector<SubstStep> old_chain = tree.chart(el.chart).chain;
    const int old_chart_id = el.chart;
    int cz = tree.chart(el.chart).comp_z, cr = tree.chart(el.chart).comp_rho;

    Chart up;
    up.J = el.I;
    up.J.v.push_back(IDX_PINF);
    up.kind = ChartKind::Cylinder;
    up.corner = true;
    up.z_nonneg = true;
    up.chain = old_chain;
    up.chain.push_back(SubstStep{SubstStep::CornerUp});
    int new_comp = (int)tree.components.size();
    up.comp_rho = cr;
    up.comp_z = new_comp;
    int idu = push_chart(tree, std::move(up));

    Chart dn;
    dn.J = el.I;
    dn.J.v.push_back(IDX_ZERO);
    dn.kind = ChartKind::Cylinder;
    dn.corner = true;
    dn.z_nonneg = true;
    dn.chain = old_chain;
    dn.chain.push_back(SubstStep{SubstStep::CornerDown});
    dn.comp_rho = new_comp;
    dn.comp_z = cz;
    int idd = push_chart(tree, std::move(dn));

    Component comp;
    comp.id = new_comp;
    comp.home_chart = idd;
    tree.components.push_back(comp);
    tree.components[new_comp].dicritical = tree.cyl_data(idd).dicritical;

    Element cu; // E_new ∩ comp(rho=0 strict): corner of the up chart
    cu.id = (int)tree.elements.size();
    cu.I = el.I;
    cu.I.v.push_back(IDX_PINF);
    cu.kind = ElementKind::CornerCycle;
    cu.chart = idu;
    cu.comp_a = cr;
    cu.comp_b = new_comp;
    tree.elements.push_back(cu);

    Element cd; // E_new ∩ comp(z=0 strict): corner of the down chart
    cd.id = (int)tree.elements.size();
    cd.I = el.I;
    cd.I.v.push_back(IDX_MINF);
    cd.kind = ElementKind::CornerCycle;
    cd.chart = idd;
    cd.comp_a = cz;
    cd.comp_b = new_comp;
    tree.elements.push_back(cd);

    for (auto& mk : tree.components[cr].marks)
        if (mk.element == el.id) mk.element = cu.id;
    for (auto& mk : tree.components[cz].marks)
        if (mk.element == el.id) mk.element = cd.id;
    if (tree.components[cr].home_chart == old_chart_id) tree.components[cr].home_chart = idu;

    {
        Mark m0;
        m0.pos = Scalar();
        m0.element = cd.id;
        tree.components[new_comp].marks.push_back(m0);
        tree.components[new_comp].marks.push_back(sentinel_mark(true, cu.id));
    }
    add_cycles_from_locus(tree, idd, el.I, new_comp);
    sort_marks(tree.components[new_comp]);

    tree.elements.at(element_id).consumed = true;
    tree.length += 1;
}

int blow_up_noncorner_cycle(BlowupTree& tree, int element_id, const Scalar* emerging_hint) {
    const Element el = tree.elements.at(element_id); // copy: the vector grows below
    if (el.consumed) throw BlowupError("element already blown up");
    if (el.kind != ElementKind::NonCornerCycle) throw BlowupError("not a non-corner cycle");
    const std::vector<SubstStep> old_chain = tree.chart(el.chart).chain;
    int c = tree.chart(el.chart).comp_rho;
    Scalar w = el.omega;

    Chart ce;
    ce.J = el.I;
    ce.J.v.push_back(IDX_ZERO);
    ce.kind = ChartKind::Cylinder;
    ce.corner = false;
    ce.z_nonneg = false;
    ce.chain = old_chain;
    ce.chain.push_back(SubstStep{SubstStep::NonCornerCentral, +1, w});
    int new_comp = (int)tree.components.size();
    ce.comp_rho = new_comp;
    int idc = push_chart(tree, std::move(ce));

    Chart up;
    up.J = el.I;
    up.J.v.push_back(IDX_PINF);
    up.kind = ChartKind::Cylinder;
    up.corner = true;
    up.z_nonneg = true;
    up.chain = old_chain;
    up.chain.push_back(SubstStep{SubstStep::NonCornerUp, +1, w});
    up.comp_rho = c;
    up.comp_z = new_comp;
    int idu = push_chart(tree, std::move(up));

    Chart dn;
    dn.J = el.I;
    dn.J.v.push_back(IDX_MINF);
    dn.kind = ChartKind::Cylinder;
    dn.corner = true;
    dn.z_nonneg = true;
    dn.chain = old_chain;
    dn.chain.push_back(SubstStep{SubstStep::NonCornerDown, +1, w});
    dn.comp_rho = c;
    dn.comp_z = new_comp;
    int idd = push_chart(tree, std::move(dn));

    Component comp;
    comp.id = new_comp;
    comp.home_chart = idc;
    tree.components.push_back(comp);
    tree.components[new_comp].dicritical = tree.cyl_data(idc).dicritical;

    Element cu;
    cu.id = (int)tree.elements.size();
    cu.I = el.I;
    cu.I.v.push_back(IDX_PINF);
    cu.kind = ElementKind::CornerCycle;
    cu.chart = idu;
    cu.comp_a = c;
    cu.comp_b = new_comp;
    tree.elements.push_back(cu);

    Element cd;
    cd.id = (int)tree.elements.size();
    cd.I = el.I;
    cd.I.v.push_back(IDX_MINF);
    cd.kind = ElementKind::CornerCycle;
    cd.chart = idd;
    cd.comp_a = c;
    cd.comp_b = new_comp;
    tree.elements.push_back(cd);

    // the cycle's mark splits into the two adjacent corner marks
    {
        auto& marks = tree.components[c].marks;
        for (auto it = marks.begin(); it != marks.end(); ++it)
            if (it->element == el.id) {
                Mark lo = *it, hi = *it;
                lo.side = -1;
                lo.element = cd.id;
                hi.side = +1;
                hi.element = cu.id;
                *it = lo;
                marks.insert(std::next(it), hi);
                break;
            }
        sort_marks(tree.components[c]);
    }

    tree.components[new_comp].marks.push_back(sentinel_mark(false, cd.id));
    tree.components[new_comp].marks.push_back(sentinel_mark(true, cu.id));
    add_cycles_from_locus(tree, idc, el.I, new_comp);
    sort_marks(tree.components[new_comp]);

    tree.elements.at(element_id).consumed = true;
    tree.length += 1;

    if (emerging_hint) {
        for (const auto& e : tree.elements) {
            if (e.consumed || e.kind != ElementKind::NonCornerCycle || e.chart != idc) continue;
            if (e.omega == *emerging_hint) return e.id;
        }
        return -1;
    }
    return -1;
}

} // namespace hopf3
