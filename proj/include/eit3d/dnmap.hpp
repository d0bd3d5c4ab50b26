#ifndef EIT3D_DNMAP_HPP
#define EIT3D_DNMAP_HPP

#include <functional>
#include <vector>

#include "eit3d/phantom.hpp"
#include "eit3d/sphharm.hpp"

namespace eit3d {

/// Dirichlet-to-Neumann eigenvalues lambda_0..lambda_L of a radial
/// conductivity; lambda_l = l when gamma == 1.
struct DnSpectrum {
    int lmax;
    std::vector<double> lambdas;
};

/// num/den with the den == 0 case meaning "infinite"; keeps the shell
/// recursion well-defined when adjacent conductivities coincide.
struct ProjectiveRatio {
    double num = 1.0;
    double den = 0.0;  // defaults to infinity

    bool infinite() const { return den == 0.0; }
    void normalize();
};

/// Eigenvalue of the unit conductivity: lambda_l = l.
double eigen_constant(int l);

/// Closed-form recursion for a piecewise constant radial conductivity.
double eigen_shells(const ShellPhantom& phantom, int l);

/// Independent oracle: assembles the 2N interface-matching linear system for
/// R = A_j r^l + B_j r^-(l+1) per shell and returns l*A_N - (l+1)*B_N.
double eigen_shells_oracle(const ShellPhantom& phantom, int l);

/// Midpoint staircase approximation with m shells fed to eigen_shells.
double eigen_smooth(const std::function<double(double)>& gamma, int l, int m);

/// Envelope staircases built from per-cell infima/suprema; their eigenvalues
/// bracket the one of the smooth profile (DN monotonicity).
struct EigenBounds {
    double lower;
    double upper;
};
EigenBounds eigen_smooth_bounds(const std::function<double(double)>& gamma, int l, int m);

/// Shooting oracle: integrates the radial Euler-type equation
/// gamma r^2 R'' + (2 r gamma + r^2 gamma') R' - l(l+1) gamma R = 0
/// outward and returns gamma(1) R'(1)/R(1).
double eigen_ode(const std::function<double(double)>& gamma,
                 const std::function<double(double)>& gamma_prime, int l);

DnSpectrum spectrum_constant(int lmax);
DnSpectrum spectrum_shells(const ShellPhantom& phantom, int lmax);
DnSpectrum spectrum_smooth(const std::function<double(double)>& gamma, int lmax, int m);

/// c_{l,m} -> (lambda_l - l) c_{l,m}: the matrix of Lambda_q - Lambda_0 in
/// the spherical-harmonic basis, diagonal for radial conductivities.
HarmonicCoeffs apply_dn_minus_free(const DnSpectrum& spectrum, const HarmonicCoeffs& coeffs);

}  // namespace eit3d

#endif
