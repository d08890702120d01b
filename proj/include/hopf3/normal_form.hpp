#ifndef HOPF3_NORMAL_FORM_HPP
#define HOPF3_NORMAL_FORM_HPP

#include "hopf3/vf.hpp"

#include <optional>

namespace hopf3 {

// Variable indices for series in the rotation invariants u = x^2+y^2, v = z.
enum : int { VU = 0, VV = 1 };

// Rotational normal form data: the field
//   T(u,v) (-y dx + x dy) + R(u,v) (x dx + y dy) + Z(u,v) dz
// known through ambient jet order ell (weighted degree 2a+c of u^a v^c).
struct RotationalNormalForm {
    SSeries T, R, Z;   // series in (u, v)
    int ell = 0;       // ambient jet order the data is exact through
    VectorField3 phi;  // polynomial change of coordinates, j_{ell+1} of the formal one
    bool identity_phi = true;
    bool exact = false; // input was already rotationally symmetric: T,R,Z exact polynomials
};

// Writes an ambient series as a polynomial in (u, v) if possible.
std::optional<SSeries> uv_collapse(const SSeries& ambient);
SSeries uv_expand(const SSeries& uv);

// Rebuild the ambient vector field j_ell of the normal form from (T,R,Z).
// When `ambient_jet` < 0 no truncation is applied (exact polynomial data).
VectorField3 rotational_field(const SSeries& T, const SSeries& R, const SSeries& Z,
                              int ambient_jet = -1);

// Takens normal form of a field with linear part -y dx + x dy + c z dz,
// computed degree by degree through ambient order ell.
RotationalNormalForm takens_normal_form(const VectorField3& xi, const Scalar& c, int ell);

// xi_ell: polynomial field with j_ell(xi_ell) = j_ell(formal normal form).
VectorField3 truncated_normal_form(const RotationalNormalForm& nf, int ell);

struct IsolatedCheck {
    enum Kind { Isolated, AxisOfSingularities, Undetermined } kind;
    int order;              // order of the first nonzero coefficient of Z(0,v), if isolated
    Scalar leading;         // that coefficient
};

// Z(0,v) != 0 detection through order K (exact for symmetric polynomial input).
IsolatedCheck isolated_singularity_check(const RotationalNormalForm& nf, int K);

} // namespace hopf3

#endif
