#ifndef HOPF3_PLANAR_HPP
#define HOPF3_PLANAR_HPP

#include "hopf3/blowup.hpp"

#include <map>

namespace hopf3 {

enum class SingStatus {
    Simple,             // adapted simple, isolated singularity (case 1)
    NonSaturatedSimple, // singular locus (z-g(rho))^r kept, cofactor tame (case 2)
    RegularInvariant,   // regular point whose trajectory is a divisor branch
    RegularTransverse,  // regular crossing of a dicritical component
    RegularAdapted,     // regular but tangent: still in the adapted locus
    NonSimple,          // needs further blow-ups
    Undecided,          // working order exhausted
};

const char* sing_status_name(SingStatus s);

// Classification of a planar germ at the origin, on the exact reduced pair.
struct PlanarClassification {
    SingStatus status = SingStatus::Undecided;
    Scalar lambda_z, lambda_rho; // Jacobian eigenvalues along dz / drho
    bool div_rho_invariant = false;
    bool div_z_invariant = false; // corner germs only
    int r = 0;                    // multiplicity of the singular-locus factor
    SSeries gamma;                // g with Sing = {z = g(rho)} (case 2); vars (z,rho), z-free
    bool gamma_exact = false;     // g certified as an exact polynomial factor
    Scalar cof_z0, cof_rho0;      // cofactor value at 0 (case 2, regular cofactor)
    std::string detail;
};

// chi' = Xz d/dz + Xrho d/drho, germ at the origin; corner_germ selects the
// divisor {z rho = 0} instead of {rho = 0}. `work` caps rho-jets.
PlanarClassification classify_planar(const SSeries& Xz, const SSeries& Xrho,
                                     bool corner_germ, int work);

// Separatrix jet z = h(rho) through an adapted simple singularity, to order
// `work` (the transverse invariant curve; exact for case 2 factors).
SSeries separatrix_jet(const SSeries& Xz, const SSeries& Xrho,
                       const PlanarClassification& cls, int work);

struct AxisPoleResult {
    bool resolved = false;
    int t = 0;              // xi^{(J)}(z) = z^t G with G a unit
    int blowups = 0;
    std::vector<int> trace; // the successive exponents t_0, t_1, ...
};

// Iterate axis-point blow-ups until the z-component has a unit cofactor.
AxisPoleResult resolve_axis_poles(BlowupTree& tree, bool plus_end, int budget);

struct ResolutionEntry {
    int element = -1;
    PlanarClassification cls;
    SSeries separatrix; // h jet for final non-corner cycles
    bool final_status = false;
};

struct ResolutionOutcome {
    bool complete = false;
    std::string failure;
    AxisPoleResult axis_plus, axis_minus;
    std::map<int, ResolutionEntry> entries; // by element id (final elements)
    std::vector<std::string> trace;         // ordered blow-up log
};

// Drive admissible blow-ups to an adapted resolution of singularities.
ResolutionOutcome adapted_resolution(BlowupTree& tree, int budget);

// Reduced pair of an element's germ, translated so the element sits at the
// origin of its canonical chart section.
std::pair<SSeries, SSeries> element_germ(const BlowupTree& tree, int element_id);

} // namespace hopf3

#endif
