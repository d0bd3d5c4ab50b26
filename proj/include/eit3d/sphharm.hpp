#ifndef EIT3D_SPHHARM_HPP
#define EIT3D_SPHHARM_HPP

#include <complex>
#include <functional>
#include <vector>

#include "eit3d/geometry.hpp"
#include "eit3d/linalg.hpp"

namespace eit3d {

/// Band-limited table of spherical-harmonic coefficients c_{l,m},
/// 0 <= l <= lmax, |m| <= l, stored at index l*l + l + m.
struct HarmonicCoeffs {
    int lmax = 0;
    std::vector<Complex> table;

    static HarmonicCoeffs zero(int lmax) {
        return {lmax, std::vector<Complex>(static_cast<std::size_t>(lmax + 1) * (lmax + 1))};
    }
    std::size_t index(int l, int m) const { return static_cast<std::size_t>(l) * l + l + m; }
    Complex& at(int l, int m) { return table[index(l, m)]; }
    Complex at(int l, int m) const { return table[index(l, m)]; }
};

/// Equiangular 2B x 2B sphere grid, theta_j = pi(2j+1)/(4B), phi_k = pi k/B,
/// with per-row quadrature weights (phi factor included) that integrate
/// band-limited functions of degree < 2B exactly.
struct SphereGrid {
    int bandwidth;
    std::vector<double> theta;   // 2B colatitudes
    std::vector<double> phi;     // 2B azimuths
    std::vector<double> weight;  // 2B row weights; sum over all nodes = 4*pi

    static SphereGrid make(int bandwidth);
    int rows() const { return 2 * bandwidth; }
    std::size_t size() const { return static_cast<std::size_t>(rows()) * rows(); }
    std::size_t index(int j, int k) const { return static_cast<std::size_t>(j) * rows() + k; }
};

/// Orthonormal spherical harmonic (Condon-Shortley phase), |m| <= l.
Complex ylm(int l, int m, double theta, double phi);

/// Fully normalized associated Legendre values including the e^{im phi}-free
/// part of Y_l^m for m >= 0, written to out[l(l+1)/2 + m] for l <= lmax.
void legendre_row(int lmax, double cos_theta, double sin_theta, std::vector<double>& out);

/// c_{l,m} = sum_nodes weight * f * conj(Y_l^m). Exact for band-limited
/// input of degree < bandwidth; requires lmax < bandwidth.
HarmonicCoeffs sht_forward(const std::vector<Complex>& samples, const SphereGrid& grid, int lmax);

/// Evaluates the truncated series on the grid.
std::vector<Complex> sht_inverse(const HarmonicCoeffs& coeffs, const SphereGrid& grid);

struct PlanewaveCoeffs {
    HarmonicCoeffs coeffs;
    bool overflow = false;  // some coefficient became non-finite
};

/// Expansion coefficients b_{l,m} of e^{i x.zeta} on the unit sphere, for an
/// arbitrary complex vector zeta = zr + i zi, obtained by sampling on a grid
/// of bandwidth >= 2*lmax (enlarged with |zi| to control aliasing) and
/// applying sht_forward. Magnitudes grow like e^{|zi|}; overflow to infinity
/// is propagated and flagged, not thrown.
PlanewaveCoeffs planewave_coeffs(Vec3 zr, Vec3 zi, int lmax);

/// Coefficients a*_{l,m} with e^{-ix.(xi+zeta)} = sum a*_{l,m} [Y_l^m]^*,
/// i.e. a*_{l,m} = integral of e^{-ix.(xi+zeta)} Y_l^m over the sphere,
/// computed as conj(sht_forward(conj(samples))) at (l, m).
PlanewaveCoeffs conj_pair_coeffs(const Xi& xi, const ComplexFrequency& zeta, int lmax);

/// Grid bandwidth rule used for plane-wave expansions.
int planewave_grid_bandwidth(double kappa, int lmax);

/// Arithmetic used by pair_planewaves. Auto picks Extended for small |Im|
/// and Quad beyond, keeping the pairing's rounding noise below the
/// instability onset observed at large frequencies.
enum class PairingPrecision { Double, Extended, Quad, Auto };

struct PairingResult {
    Complex value;        // sum_{l,m} a*_{l,m} b_{l,m} weight_l
    double abs_sum = 0;   // sum of |a*||b||weight_l|, conditioning measure
    bool overflow = false;
};

/// Evaluates sum_{l,m} a*_{l,m}(xi,zeta) b_{l,m}(zeta) weight[l] with the
/// sphere sampling, transforms and accumulation carried entirely in the
/// selected precision. weight.size() must be lmax+1.
PairingResult pair_planewaves(const Xi& xi, const ComplexFrequency& zeta,
                              const std::vector<double>& weight, int lmax,
                              PairingPrecision prec = PairingPrecision::Auto);

/// Same pairing but with the e^{ix.zeta} side multiplied by a caller factor
/// evaluated at the sphere point (used to pair against psi = e^{ix.zeta} mu).
/// The factor is sampled in double; the exponentials stay in engine precision.
PairingResult pair_planewaves_factored(const Xi& xi, const ComplexFrequency& zeta,
                                       const std::vector<double>& weight, int lmax,
                                       const std::function<Complex(const Vec3&)>& factor,
                                       PairingPrecision prec = PairingPrecision::Auto);

}  // namespace eit3d

#endif
