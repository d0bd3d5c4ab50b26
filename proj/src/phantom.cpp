#include "eit3d/phantom.hpp"

#include <cmath>
#include <stdexcept>

#include "eit3d/cgo.hpp"

namespace eit3d {

namespace {

// Exponent of the mollifier and its first two derivatives:
//   phi    = -r^2/(r^2-d^2)^2
//   phi'   = 2r(r^2+d^2)/(r^2-d^2)^3
//   phi''  = -2(3r^4 + 8r^2 d^2 + d^4)/(r^2-d^2)^4
constexpr double kUnderflowCut = -700.0;

double phi_exponent(double r, double d) {
    const double w = r * r - d * d;
    return -r * r / (w * w);
}

}  // namespace

double psi(double r, double d) {
    r = std::abs(r);
    if (r >= d) return 0.0;
    const double e = phi_exponent(r, d);
    return e < kUnderflowCut ? 0.0 : std::exp(e);
}

double psi_prime(double r, double d) {
    if (std::abs(r) >= d) return 0.0;
    const double p = psi(r, d);
    if (p == 0.0) return 0.0;
    const double w = r * r - d * d;
    return 2.0 * r * (r * r + d * d) / (w * w * w) * p;
}

double psi_second(double r, double d) {
    if (std::abs(r) >= d) return 0.0;
    const double p = psi(r, d);
    if (p == 0.0) return 0.0;
    const double w = r * r - d * d;
    const double w3 = w * w * w;
    const double dphi = 2.0 * r * (r * r + d * d) / w3;
    const double d2phi = -2.0 * (3.0 * r * r * r * r + 8.0 * r * r * d * d + d * d * d * d) / (w3 * w);
    return (d2phi + dphi * dphi) * p;
}

SmoothBumpPhantom::SmoothBumpPhantom(double alpha_, double d_) : alpha(alpha_), d(d_) {
    if (!(alpha > -1.0))
        throw std::invalid_argument("SmoothBumpPhantom: alpha must exceed -1");
    if (!(d > 0.0) || d > 1.0)
        throw std::invalid_argument("SmoothBumpPhantom: d must lie in (0,1]");
}

double SmoothBumpPhantom::gamma(double r) const {
    const double s = alpha * psi(r, d) + 1.0;
    return s * s;
}

double SmoothBumpPhantom::gamma_prime(double r) const {
    return 2.0 * (alpha * psi(r, d) + 1.0) * alpha * psi_prime(r, d);
}

double SmoothBumpPhantom::q(double r) const {
    r = std::abs(r);
    if (r >= d) return 0.0;
    const double denom = 1.0 + alpha * psi(r, d);
    if (r < 1e-7) {
        // radial limit: Laplace(psi)(0) = 3 psi''(0)
        return alpha * 3.0 * psi_second(0.0, d) / (1.0 + alpha * psi(0.0, d));
    }
    return alpha * (psi_second(r, d) + 2.0 / r * psi_prime(r, d)) / denom;
}

ShellPhantom::ShellPhantom(std::vector<double> radii_, std::vector<double> values_)
    : radii(std::move(radii_)), values(std::move(values_)) {
    if (values.size() != radii.size() + 1)
        throw std::invalid_argument("ShellPhantom: need one more value than interface radius");
    double prev = 0.0;
    for (double r : radii) {
        if (!(r > prev) || !(r < 1.0))
            throw std::invalid_argument("ShellPhantom: radii must be ascending in (0,1)");
        prev = r;
    }
    for (double v : values)
        if (!(v > 0.0)) throw std::invalid_argument("ShellPhantom: conductivities must be positive");
    if (values.back() != 1.0)
        throw std::invalid_argument("ShellPhantom: outermost conductivity must equal 1");
}

double ShellPhantom::gamma(double r) const {
    r = std::abs(r);
    for (std::size_t j = 0; j < radii.size(); ++j)
        if (r < radii[j]) return values[j];
    return values.back();
}

RadialProfile RadialProfile::uniform(int m) {
    if (m < 2) throw std::invalid_argument("RadialProfile: need at least 2 points");
    RadialProfile p;
    p.r.resize(m);
    p.values.assign(m, 0.0);
    for (int i = 0; i < m; ++i) p.r[i] = static_cast<double>(i) / (m - 1);
    return p;
}

std::vector<Complex> sample_q_on_cube(const SmoothBumpPhantom& phantom, const Grid3& grid) {
    std::vector<Complex> field(grid.size());
    for (int a = 0; a < grid.n; ++a)
        for (int b = 0; b < grid.n; ++b)
            for (int c = 0; c < grid.n; ++c) {
                const double r = norm(grid.node(a, b, c));
                field[grid.index(a, b, c)] = (r <= 1.0) ? phantom.q(r) : 0.0;
            }
    return field;
}

}  // namespace eit3d
