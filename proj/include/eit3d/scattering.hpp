#ifndef EIT3D_SCATTERING_HPP
#define EIT3D_SCATTERING_HPP

#include <complex>
#include <functional>
#include <vector>

#include "eit3d/cgo.hpp"
#include "eit3d/dnmap.hpp"
#include "eit3d/faddeev.hpp"
#include "eit3d/geometry.hpp"
#include "eit3d/phantom.hpp"
#include "eit3d/sphharm.hpp"

namespace eit3d {

enum class ScatterKind { Nonlinear, Texp, Qhat };

/// How zeta is chosen along a sweep.
struct ZetaRule {
    enum class Mode { FixedMagnitude, Minimal } mode = Mode::FixedMagnitude;
    double magnitude = 50.0;
    double azimuth = 0.0;
};

struct ScatterCurve {
    ScatterKind kind = ScatterKind::Qhat;
    ZetaRule rule;
    std::vector<double> xi_mags;
    std::vector<Complex> values;
    std::vector<char> diverged;    // per-point divergence / failure marker
    std::vector<int> iterations;   // CGO iterations (nonlinear kind), else 0
};

/// Scattering transform from the solved CGO field:
/// t = h^3 sum_{|jh|<=1} e^{-i (jh).xi} q(jh) mu(jh).
/// The form e^{-ix.xi} q mu is used instead of e^{-ix.(xi+zeta)} psi; the two
/// agree identically and the former has no exponentially large factors.
Complex t_nonlinear(const FrequencyPair& pair, const std::vector<Complex>& q_field,
                    const Grid3& grid, const BallSamples& ball);

struct TexpOptions {
    PairingPrecision precision = PairingPrecision::Auto;
    /// Reference ulp for the rounding-noise estimate behind the divergence
    /// flag (calibrated against the observed instability onset).
    double flag_epsilon = 1.0842021724855044e-19;  // 2^-63
    /// Flag when noise estimate exceeds threshold * |value|.
    double flag_threshold = 1.0;
};

struct TexpValue {
    Complex value;
    bool diverged = false;
    double noise_estimate = 0.0;
};

/// Linearized scattering transform for a radial conductivity:
/// sum_{l,m} a*_{l,m}(xi,zeta) b_{l,m}(zeta) (lambda_l - l), degrees up to
/// lmax <= spectrum.lmax. Values whose estimated rounding noise exceeds the
/// threshold are flagged as diverged (expected at large |zeta| or large |xi|).
TexpValue t_exp_radial(const DnSpectrum& spectrum, const Xi& xi, const FrequencyPair& pair,
                       int lmax, const TexpOptions& opts = {});

/// Cross-check of t through the boundary formula: interpolates
/// psi = e^{ix.zeta} mu onto the unit sphere, expands in harmonics, applies
/// the diagonal lambda_l - l and pairs against the conjugate plane wave.
TexpValue t_boundary_check(const FrequencyPair& pair, const DnSpectrum& spectrum,
                           const CgoSolution& sol, int lmax, const TexpOptions& opts = {});

/// Radial Fourier transform of a potential supported in [0,1]:
/// (4 pi/|xi|) int_0^1 r sin(|xi| r) q(r) dr  (composite Simpson, 2049 pts).
double qhat_radial(const std::function<double(double)>& q, double xi_mag);

struct SweepConfig {
    int grid_n = 64;
    int lmax = 30;
    int staircase_m = 256;
    CgoOptions cgo;
    GreenEvalConfig green;
    TexpOptions texp;
};

/// Evaluates the requested transform along the e1 ray at the given |xi|
/// samples. The nonlinear kind runs one CGO solve per sample; solver
/// failures are recorded per point, not thrown.
ScatterCurve sweep_curve(ScatterKind kind, const SmoothBumpPhantom& phantom,
                         const std::vector<double>& xi_mags, const ZetaRule& rule,
                         const SweepConfig& cfg = {});

/// Trilinear interpolation on the periodic cube.
Complex trilinear(const Grid3& grid, const std::vector<Complex>& field, Vec3 x);

}  // namespace eit3d

#endif
