#ifndef EIT3D_FADDEEV_HPP
#define EIT3D_FADDEEV_HPP

#include <complex>
#include <vector>

#include "eit3d/cgo.hpp"
#include "eit3d/geometry.hpp"

namespace eit3d {

/// Bessel function of the first kind of order one. Power series below 9,
/// normalized downward recurrence on [9, 14), Hankel asymptotic series
/// beyond; good to ~1e-13 of the local magnitude scale through x = 50.
double bessel_j1(double x);

/// J1(x)/x, continuous at 0 (value 1/2).
double bessel_j1_over_x(double x);

struct GreenEvalConfig {
    /// Base midpoint count for the u-integral (>= 16). The effective count
    /// grows with the scaled radius: n = max(n_quad, ceil(8 r quad_scale)).
    int n_quad = 256;
    /// Scale for the adaptive rule above; 0 pins the count at n_quad.
    double quad_scale = 1.0;
    /// Drop the exponentially dead tail of the integration interval
    /// (beyond ~45/r e-folds); exact to below 1e-19.
    bool truncate_tail = true;
    /// Exponent floor below which the integrand is treated as zero.
    double underflow_cut = -700.0;
    /// Reproduces the variant that zeroes the kernel outside the unit ball
    /// (comparison switch; the default samples the whole period cube).
    bool zero_outside_ball = false;
};

/// Faddeev Green's function at the reference frequency e1 + i e2, by the
/// one-dimensional integral formula. x must be nonzero.
Complex g_reference(Vec3 x, const GreenEvalConfig& cfg = {});

/// g_zeta(x) = kappa * g_reference(kappa R x) via decompose_zeta.
Complex g_zeta(Vec3 x, const ComplexFrequency& zeta, const GreenEvalConfig& cfg = {});

/// Samples g_zeta over the full period cube in wrapped index order, with the
/// origin node set to zero.
std::vector<Complex> sample_g_periodic(const ComplexFrequency& zeta, const Grid3& grid,
                                       const GreenEvalConfig& cfg = {});

}  // namespace eit3d

#endif
