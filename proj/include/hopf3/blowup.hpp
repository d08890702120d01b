#ifndef HOPF3_BLOWUP_HPP
#define HOPF3_BLOWUP_HPP

#include "hopf3/fpoly.hpp"
#include "hopf3/normal_form.hpp"

#include <optional>

namespace hopf3 {

// Index tuple entries: cycle counters are >= 1; the axis directions use
// sentinels so tuples like (inf, inf, 0) remain readable.
constexpr int IDX_PINF = 1 << 24;
constexpr int IDX_MINF = -(1 << 24);
constexpr int IDX_ZERO = 0;

struct IndexTuple {
    std::vector<int> v;
    std::string str() const;
    friend bool operator==(const IndexTuple& a, const IndexTuple& b) { return a.v == b.v; }
};

enum class ChartKind { Cylinder, Point };

// One elementary substitution in a chart chain (composed left to right from
// the ambient coordinates down to the chart).
struct SubstStep {
    enum Kind {
        OriginCyl,        // (x,y,z) -> (theta, z, rho)
        OriginPoint,      // (x,y,z) -> directional chart at the z-axis, sign eps
        SingCyl,          // point chart -> corner cylinder chart
        SingPoint,        // point chart -> point chart
        CornerUp,         // corner cycle blow-up, chart J_inf
        CornerDown,       // corner cycle blow-up, chart J_0
        NonCornerCentral, // cycle blow-up at z = omega, central chart
        NonCornerUp,      // side chart covering z - omega > 0
        NonCornerDown,    // side chart covering z - omega < 0
    } kind;
    int eps = +1;   // OriginPoint only
    Scalar omega;   // NonCorner* only
};

// Pulled-back vector field in one chart.
struct ChartField {
    ChartKind kind = ChartKind::Cylinder;
    // cylinder charts: components along d/dtheta, d/dz, d/drho
    TSeries b_theta, b_z, b_rho;
    // point charts: components along d/dx, d/dy, d/dz
    SSeries px, py, pz;
};

// Reduced data of a cylinder chart field (paper-style A's and exponents).
struct CylinderData {
    int n1 = 0, n2 = 0;
    TSeries a_z, a_rho;       // associated reduced system, jet in rho to the work order
    SSeries red_z, red_rho;   // exact reduced B-pair: B_{z,rho} / (rho^{n1} z^{n2}), theta-free
    bool dicritical = false;
};

struct PointData {
    int n = 0;       // z-component = z^n * G
    SSeries cof;     // G, exact polynomial
    bool unit = false;
};

struct Chart {
    int id = -1;
    IndexTuple J;
    ChartKind kind = ChartKind::Cylinder;
    bool corner = false;   // cylinder chart with divisor {z rho = 0}
    bool z_nonneg = false; // domain tag of the z coordinate
    std::vector<SubstStep> chain;
    int comp_rho = -1; // divisor component carried by {rho = 0}
    int comp_z = -1;   // divisor component carried by {z = 0} (corner / point charts)
    bool alive = true;

    // memoized analysis of the tree's root field
    mutable std::optional<ChartField> field;
    mutable std::optional<CylinderData> cyl;
    mutable std::optional<PointData> pt;
};

// Marks order the characteristic elements along a divisor component's
// section; boxes are built between consecutive marks.
struct Mark {
    bool at_minf = false, at_pinf = false; // sentinel ends
    Scalar pos;                            // z-position in the home chart
    int side = 0;                          // disambiguates paired corners at one position
    int element = -1;
};

struct Component {
    int id = -1;
    bool dicritical = false;
    int home_chart = -1; // cylinder chart where the component is {rho = 0}
    std::vector<Mark> marks;
};

enum class ElementKind { SingularityPlus, SingularityMinus, CornerCycle, NonCornerCycle };

struct Element {
    int id = -1;
    IndexTuple I;
    ElementKind kind;
    int chart = -1;  // canonical chart (point chart for singularities)
    Scalar omega;    // cycle position: {z = omega, rho = 0} in the canonical chart
    int comp_a = -1; // component carrying the element
    int comp_b = -1; // second component (corner cycles)
    bool consumed = false;
};

struct BlowupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The tuple M = (M, pi, A, D): atlas, characteristic elements, divisor
// bookkeeping, with the root field fixed once at construction.
struct BlowupTree {
    VectorField3 root;   // rotationally symmetric polynomial field
    int work = 16;       // rho-order for unit inversions / reduced jets
    int length = 0;      // number of blow-ups performed
    std::vector<Chart> charts;
    std::vector<Component> components;
    std::vector<Element> elements;

    const Chart& chart(int id) const { return charts.at(id); }
    Chart& chart(int id) { return charts.at(id); }
    std::vector<int> alive_charts() const;
    std::vector<int> live_elements() const;
    int find_element(const IndexTuple& I) const;

    int n_of_chart(int id) const;   // n^{(J)}
    int ell_M() const;              // max n^{(J)} + l + 1
    int jet_budget(int k) const { return ell_M() + k; }

    const ChartField& field_in(int chart_id) const;
    const CylinderData& cyl_data(int chart_id) const;
    const PointData& point_data(int chart_id) const;
};

// General pullback of an arbitrary polynomial field through a chart chain
// (the vehicle for the jet-coherence checks).
ChartField pullback_chain(const VectorField3& f, const std::vector<SubstStep>& chain,
                          int work);

// Analysis of a cylinder field: exponents, reduced pair, dicritical flag.
CylinderData analyze_cylinder(const ChartField& f, bool corner, int work);
PointData analyze_point(const ChartField& f);

// Adapted singular locus positions on {rho=0} of a cylinder chart,
// restricted to z > 0 for corner charts. Sorted increasingly.
std::vector<Scalar> adapted_locus(const BlowupTree& tree, int chart_id);

// sigma_0: blow up the origin. Creates charts C_0, C_inf, C_-inf.
BlowupTree blow_up_origin(const VectorField3& symmetric_field, int work);

// Admissible blow-ups (the element is consumed, new elements created).
void blow_up_characteristic_singularity(BlowupTree& tree, int element_id);
void blow_up_corner_cycle(BlowupTree& tree, int element_id);
// Returns the id of the emerging cycle when `emerging_hint` (next separatrix
// coefficient) is supplied, else -1.
int blow_up_noncorner_cycle(BlowupTree& tree, int element_id,
                            const Scalar* emerging_hint = nullptr);

} // namespace hopf3

#endif
