#include "eit3d/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eit3d {

bool ComplexFrequency::is_null(double rel_tol) const {
    const double nr = norm(re), ni = norm(im);
    const double scale = std::max(nr, ni);
    if (scale == 0.0) return false;
    if (std::abs(nr - ni) > rel_tol * scale) return false;
    return std::abs(dot(re, im)) <= rel_tol * scale * scale;
}

Complex FrequencyPair::shifted_dot() const {
    const Vec3 s = xi.v + zeta.re;
    return {norm2(s) - norm2(zeta.im), 2.0 * dot(s, zeta.im)};
}

bool FrequencyPair::is_valid(double tol) const {
    const double scale = 1.0 + norm2(xi.v);
    return zeta.is_null() && std::abs(shifted_dot()) <= tol * scale;
}

namespace {

// Orthonormal pair (u1, u2) spanning the plane perpendicular to xi, with u1
// chosen deterministically in the coordinate plane least aligned with xi.
void perp_frame(Vec3 xi_hat, Vec3& u1, Vec3& u2) {
    int a = 0;
    double best = std::abs(xi_hat.x);
    if (std::abs(xi_hat.y) > best) { a = 1; best = std::abs(xi_hat.y); }
    if (std::abs(xi_hat.z) > best) { a = 2; }
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    Vec3 w{};
    w[b] = xi_hat[c];
    w[c] = -xi_hat[b];
    if (norm(w) < 1e-300) {
        w = Vec3{};
        w[b] = 1.0;  // xi exactly along axis a
    }
    u1 = normalized(w);
    u2 = cross(xi_hat, u1);
}

}  // namespace

FrequencyPair make_zeta(const Xi& xi, double magnitude, double azimuth) {
    if (!(magnitude > 0.0) || !std::isfinite(magnitude))
        throw std::invalid_argument("make_zeta: magnitude must be positive and finite");
    const double xi_mag = xi.magnitude();
    const double kappa = magnitude / std::sqrt(2.0);

    if (xi_mag == 0.0) {
        const double c = std::cos(azimuth), s = std::sin(azimuth);
        return {xi, ComplexFrequency{Vec3{kappa * c, kappa * s, 0.0},
                                     Vec3{-kappa * s, kappa * c, 0.0}}};
    }

    const double floor_mag = xi_mag / std::sqrt(2.0);
    if (magnitude < floor_mag * (1.0 - 1e-12))
        throw std::invalid_argument("make_zeta: magnitude " + std::to_string(magnitude) +
                                    " below the floor |xi|/sqrt(2) = " + std::to_string(floor_mag));

    const Vec3 xi_hat = xi.v / xi_mag;
    Vec3 u1, u2;
    perp_frame(xi_hat, u1, u2);

    // |zeta_R|^2 = |xi|^2/4 + p^2 must equal kappa^2.
    const double p2 = std::max(0.0, kappa * kappa - 0.25 * xi_mag * xi_mag);
    const double p = std::sqrt(p2);

    ComplexFrequency zeta;
    if (p > 1e-14 * kappa) {
        const Vec3 xi_perp_hat = std::cos(azimuth) * u1 + std::sin(azimuth) * u2;
        zeta.re = -0.5 * xi.v + p * xi_perp_hat;
        zeta.im = kappa * cross(xi_hat, xi_perp_hat);
    } else {
        // Minimal case: xi_perp = 0 and zeta_I free in the plane normal to xi.
        zeta.re = -0.5 * xi.v;
        zeta.im = kappa * (std::cos(azimuth) * u2 + std::sin(azimuth) * (-1.0) * u1);
    }
    return {xi, zeta};
}

FrequencyPair make_zeta_min(const Xi& xi, double azimuth) {
    if (xi.magnitude() == 0.0)
        throw std::invalid_argument("make_zeta_min: xi must be nonzero");
    return make_zeta(xi, xi.magnitude() / std::sqrt(2.0), azimuth);
}

ZetaDecomposition decompose_zeta(const ComplexFrequency& zeta) {
    const double kappa = norm(zeta.im);
    if (kappa == 0.0 || norm(zeta.re) == 0.0)
        throw std::invalid_argument("decompose_zeta: zero real or imaginary part");
    ZetaDecomposition d;
    d.kappa = kappa;
    d.k = zeta.im / kappa;
    d.k_perp = zeta.re / kappa;
    d.rotation = Mat3::from_rows(d.k_perp, d.k, cross(d.k_perp, d.k));
    return d;
}

}  // namespace eit3d
