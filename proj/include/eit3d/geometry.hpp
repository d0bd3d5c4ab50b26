#ifndef EIT3D_GEOMETRY_HPP
#define EIT3D_GEOMETRY_HPP

#include <complex>

#include "eit3d/linalg.hpp"

namespace eit3d {

/// Real spatial frequency.
struct Xi {
    Vec3 v;

    double magnitude() const { return norm(v); }
};

/// Complex frequency zeta = re + i*im with zeta . zeta = 0, i.e. |re| = |im|
/// and re . im = 0. Constructors validate; see is_null().
struct ComplexFrequency {
    Vec3 re;
    Vec3 im;

    double magnitude() const { return std::sqrt(norm2(re) + norm2(im)); }

    /// zeta . zeta as a complex number (should vanish for members of V).
    Complex self_dot() const {
        return {norm2(re) - norm2(im), 2.0 * dot(re, im)};
    }
    bool is_null(double rel_tol = 1e-12) const;

    ComplexFrequency conj() const { return {re, -im}; }
};

/// (xi, zeta) with zeta in V_xi: zeta.zeta = (xi+zeta).(xi+zeta) = 0.
struct FrequencyPair {
    Xi xi;
    ComplexFrequency zeta;

    /// (xi+zeta).(xi+zeta); vanishes for a valid pair.
    Complex shifted_dot() const;
    bool is_valid(double tol = 1e-10) const;
};

/// zeta = kappa*(k_perp + i*k) with orthonormal (k_perp, k); `rotation` has
/// rows (k_perp, k, k_perp x k) so that the Green's function identity
/// g_zeta(x) = kappa * g_ref(kappa * rotation * x) holds.
struct ZetaDecomposition {
    double kappa;
    Vec3 k;
    Vec3 k_perp;
    Mat3 rotation;
};

/// Builds zeta in V_xi with |zeta| = magnitude. The real part is
/// -xi/2 + xi_perp where xi_perp lies in the coordinate plane least aligned
/// with xi, rotated by `azimuth` around xi. Requires magnitude >= |xi|/sqrt(2).
/// For xi = 0 any zeta in V of the requested magnitude is returned.
FrequencyPair make_zeta(const Xi& xi, double magnitude, double azimuth = 0.0);

/// Minimal-magnitude zeta in V_xi: -xi/2 + i*zeta_I with |zeta_I| = |xi|/2,
/// so |zeta|^2 = |xi|^2 / 2. Requires xi != 0.
FrequencyPair make_zeta_min(const Xi& xi, double azimuth = 0.0);

/// Splits zeta into the scaling kappa and the rotation used to reduce the
/// Faddeev Green's function to the reference frequency e1 + i*e2.
ZetaDecomposition decompose_zeta(const ComplexFrequency& zeta);

}  // namespace eit3d

#endif
