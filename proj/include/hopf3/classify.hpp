#ifndef HOPF3_CLASSIFY_HPP
#define HOPF3_CLASSIFY_HPP

#include "hopf3/numeric.hpp"

#include <optional>

namespace hopf3 {

struct AxisCertificate {
    bool ok = false;
    bool plus_end = true;
    int t = 0;
    int sign_g0 = 0;
    Rat radius;     // polydisc radius where the cofactor keeps its sign
    std::string err;
};

struct CornerCertificate {
    bool ok = false;
    int element = -1;
    char monotone = 'z'; // which coordinate is monotone along trajectories
    Scalar lambda;       // the driving nonzero eigenvalue / transversal speed
    Rat radius;          // certified box radius in (z, rho)
    std::string case_tag;
    std::string err;
};

struct BoxCertificate {
    int component = -1;
    int index = 0; // position along the component
    bool unbounded_lo = false, unbounded_hi = false;
    Rat lo, hi;   // certified z-interval
    char monotone = 'z';
    int sign = 0; // sign of the monotone coordinate's drive inside the box
    Rat delta;
    bool dicritical = false;
    int dicase = 1;   // box lemma case (1), (2) or (3)
    Rat drift_c;      // case (3): |dz/drho| <= C rho inside the box
    Rat wall_margin;  // case (2): |xi(z)| lower bound on the walls
    bool ok = false;
    std::string err;
};

struct CycleCertificate {
    int element = -1;
    Scalar omega;
    SingStatus status = SingStatus::Undecided;
    InvariantSurfaceJet surface;
    FixVerdict verdict;
    ConeParams cone;
    PoincareJet pjet;
    int opened = 0; // cone-opening blow-ups performed along this cycle
    bool ok = false;
    std::string err;
};

struct ClassifyOptions {
    int ell = 0;          // 0: choose automatically
    int work = 16;        // rho-order of reduced jets
    int poincare_order = 6;
    int budget = 20;      // resolution blow-up budget
    int fix_order = 6;    // order for FIX-up-to honesty
    std::optional<Rat> epsilon; // box inset override
    std::optional<Rat> delta;   // box height override
    unsigned seed = 1;
    bool open_cones = true;
};

enum class CaseTag { CaseI, CaseII, CaseIICandidate, SemiHyperbolic, Undetermined };
const char* case_tag_name(CaseTag t);

struct SampledSurface {
    int element = -1;                   // generating cycle
    std::vector<std::array<double, 3>> points;
};

struct ClassifyResult {
    CaseTag verdict = CaseTag::Undetermined;
    std::string failure;
    HopfData hopf;
    bool symmetric_exact = false;
    int ell = 0, ell_M = 0, ell_prime = 0;
    IsolatedCheck isolated{IsolatedCheck::Undetermined, 0, Scalar()};
    std::optional<BlowupTree> tree;
    ResolutionOutcome resolution;
    AxisCertificate axis_plus, axis_minus;
    std::vector<CornerCertificate> corners;
    std::vector<BoxCertificate> boxes;
    std::vector<CycleCertificate> cycles;
    std::vector<SampledSurface> surfaces;
    Rat epsilon, region_radius;
    std::vector<std::string> warnings;
    VectorField3 normalized; // the polynomial field the pipeline analyzed
};

AxisCertificate certify_characteristic_singularity(const BlowupTree& tree, bool plus_end);
CornerCertificate certify_corner_cycle(const BlowupTree& tree, int element_id);
std::vector<BoxCertificate> build_boxes(const BlowupTree& tree,
                                        const std::optional<Rat>& eps_override,
                                        const std::optional<Rat>& delta_override,
                                        Rat* eps_used = nullptr);

ClassifyResult classify(const VectorField3& xi, const ClassifyOptions& opt);

// Forward chart-to-ambient coordinate map, evaluated in doubles.
std::array<double, 3> ambient_of_chart_point(const std::vector<SubstStep>& chain,
                                             double theta, double z, double rho);

} // namespace hopf3

#endif
