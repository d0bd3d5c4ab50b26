#ifndef EIT3D_RECON_HPP
#define EIT3D_RECON_HPP

#include <complex>
#include <vector>

#include "eit3d/phantom.hpp"
#include "eit3d/scattering.hpp"

namespace eit3d {

enum class ReconMethod { Nonlinear, Texp, Calderon };

struct ReconResult {
    RadialProfile q_rec;
    RadialProfile gamma_rec;
    double truncation = 0.0;
    ReconMethod method = ReconMethod::Nonlinear;
    int iterations = 0;      // fixed-point iterations of the conductivity solve
    double q_imag_sup = 0.0; // imaginary residue of the recovered potential
};

struct InverseFourierResult {
    RadialProfile profile;
    double imag_sup = 0.0;
};

/// Band-limited radial inverse Fourier transform
///   q(r) = (1/2 pi^2) int_0^B xi^2 t(xi) sinc(xi r) d xi
/// by the midpoint rule over the curve samples. The curve must be sampled at
/// midpoints of a uniform partition of [0, B]; divergence-marked samples
/// below B are an error (choose a smaller B).
InverseFourierResult inverse_radial_fourier(const ScatterCurve& curve, double truncation,
                                            const RadialProfile& r_grid);

/// Fixed-point solve of Laplace(sqrt(gamma)) = q sqrt(gamma), sqrt(gamma)=1
/// on the boundary, through the radial Dirichlet Green's kernel:
///   w_{k+1}(r) = -[(1/r - 1) int_0^r t^2 s_k dt + int_r^1 (t - t^2) s_k dt],
/// s_k = q (w_k + 1). Returns gamma = (1+w)^2 with gamma(1) = 1 exactly.
RadialProfile solve_conductivity_radial(const RadialProfile& q_rec, double tol, int max_iter,
                                        int* iterations_out = nullptr);

/// Second-order finite-difference solve of the same boundary value problem
/// through v = r sqrt(gamma), v'' = q v (tridiagonal); cross-validation oracle.
RadialProfile solve_conductivity_fd(const RadialProfile& q_rec);

/// Calderon's linear formula
///   gamma_app(r) = 1 - (1/pi^2) int_0^B t^exp(xi, zeta_xi) sinc(xi r) d xi;
/// the curve must use the minimal-zeta rule.
RadialProfile calderon_gamma_app(const ScatterCurve& texp_curve, double truncation,
                                 const RadialProfile& r_grid);

struct PipelineConfig {
    double zeta_mag = 50.0;
    double truncation = 50.0;       // B for the nonlinear method
    double texp_truncation = 32.0;  // default B for t^exp-based methods
    double xi_step = 2.0;           // midpoint cell width of the sweep
    int profile_points = 401;
    double fp_tol = 1e-10;
    int fp_max_iter = 200;
    SweepConfig sweep;
};

/// End-to-end reconstruction: sweep the transform, invert the radial Fourier
/// transform, then solve for the conductivity (or apply Calderon's formula).
ReconResult pipeline(ReconMethod method, const SmoothBumpPhantom& phantom,
                     const PipelineConfig& cfg = {});

}  // namespace eit3d

#endif
