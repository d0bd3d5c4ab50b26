#ifndef EIT3D_PHANTOM_HPP
#define EIT3D_PHANTOM_HPP

#include <complex>
#include <vector>

#include "eit3d/linalg.hpp"

namespace eit3d {

struct Grid3;  // cgo.hpp

/// Mollifier profile: exp(-r^2/(r^2-d^2)^2) for r < d, else 0.
double psi(double r, double d);
double psi_prime(double r, double d);
double psi_second(double r, double d);

/// gamma(r) = (alpha*psi(r,d) + 1)^2; identically 1 for r >= d.
/// Requires alpha > -1 and 0 < d <= 1.
struct SmoothBumpPhantom {
    double alpha;
    double d;

    SmoothBumpPhantom(double alpha, double d);

    double gamma(double r) const;
    double gamma_prime(double r) const;
    /// Schrodinger potential q = Laplace(sqrt(gamma))/sqrt(gamma); zero for r >= d.
    double q(double r) const;
};

/// Piecewise constant radial conductivity: value values[j] on
/// [radii[j-1], radii[j]), with radii_0 = 0 and the outer shell reaching 1.
/// The outermost value must be 1.
struct ShellPhantom {
    std::vector<double> radii;   // strictly increasing, in (0,1)
    std::vector<double> values;  // size radii.size()+1, all positive, back()==1

    ShellPhantom(std::vector<double> radii, std::vector<double> values);

    double gamma(double r) const;
    int shell_count() const { return static_cast<int>(values.size()); }
};

/// Uniform samples of a scalar function of r in [0,1].
struct RadialProfile {
    std::vector<double> r;
    std::vector<double> values;

    static RadialProfile uniform(int m);  // m points, r_i = i/(m-1)
    double spacing() const { return r.size() > 1 ? r[1] - r[0] : 0.0; }
};

/// Samples the potential q on the periodic cube (wrapped index layout,
/// see Grid3); zero outside the unit ball. Real-valued.
std::vector<Complex> sample_q_on_cube(const SmoothBumpPhantom& phantom, const Grid3& grid);

}  // namespace eit3d

#endif
