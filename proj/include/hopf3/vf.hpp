#ifndef HOPF3_VF_HPP
#define HOPF3_VF_HPP

#include "hopf3/series.hpp"

namespace hopf3 {

// Variable indices of ambient coordinates.
enum : int { VX = 0, VY = 1, VZ = 2 };

// Polynomial vector field on R^3 vanishing at the origin.
struct VectorField3 {
    SSeries x, y, z; // components

    static VectorField3 zero() {
        return {SSeries::zero(3), SSeries::zero(3), SSeries::zero(3)};
    }
    bool singular_at_origin() const {
        return x.constant_term().is_zero() && y.constant_term().is_zero() &&
               z.constant_term().is_zero();
    }
    VectorField3 jet(int k) const { return {x.jet(k), y.jet(k), z.jet(k)}; }
    int deg() const {
        return std::max(x.deg_total(), std::max(y.deg_total(), z.deg_total()));
    }
    friend VectorField3 operator-(const VectorField3& a, const VectorField3& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    bool is_zero() const { return x.is_zero() && y.is_zero() && z.is_zero(); }

    // Apply as a derivation to a function of (x,y,z).
    SSeries apply(const SSeries& g) const {
        return x * g.derivative(VX) + y * g.derivative(VY) + z * g.derivative(VZ);
    }
};

enum class EigenCase { SemiHyperbolic, ZeroHopf };

// Linear data of a Hopf-type singularity: spectrum {±bi, c} with b != 0,
// and the exact linear change of coordinates that brings the linear part to
// -b y d/dx + b x d/dy + c z d/dz.
struct HopfData {
    Scalar b, c;
    EigenCase eigen_case;
    std::array<std::array<Scalar, 3>, 3> change;     // columns: new basis
    std::array<std::array<Scalar, 3>, 3> change_inv;
    bool identity_change = true;
};

struct NotHopf : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checks Spec(Dxi(0)) = {±bi, c} and produces the linearizing change.
HopfData detect_hopf(const VectorField3& xi);

// Pull back the field through the linear change and rescale time by 1/b,
// so the linear part becomes -y d/dx + x d/dy + c z d/dz.
VectorField3 normalize_linear(const VectorField3& xi, const HopfData& h);

// 3x3 Jacobian at the origin (entries exact).
std::array<std::array<Scalar, 3>, 3> jacobian_origin(const VectorField3& xi);

} // namespace hopf3

#endif
