#include "eit3d/faddeev.hpp"

#include <cmath>
#include <stdexcept>

#include "eit3d/parallel.hpp"

namespace eit3d {

namespace {

double j1_series(double x) {
    // sum (-1)^k (x/2)^{2k+1} / (k! (k+1)!)
    const double q = 0.25 * x * x;
    double term = 0.5 * x;
    double sum = term;
    for (int k = 1; k <= 40; ++k) {
        term *= -q / (k * (k + 1.0));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double j1_miller(double x) {
    // Downward recurrence normalized by J0 + 2 sum_k J_{2k} = 1.
    const int start = static_cast<int>(x) + 42;
    double jp = 0.0;     // J_{n+1}
    double jc = 1e-300;  // J_n
    double j1v = 0.0, norm_sum = 0.0;
    for (int n = start; n >= 1; --n) {
        const double jm = 2.0 * n / x * jc - jp;  // J_{n-1}
        jp = jc;
        jc = jm;
        if (n - 1 == 1) j1v = jc;
        if ((n - 1) % 2 == 0) norm_sum += (n - 1 == 0) ? jc : 2.0 * jc;
        if (std::abs(jc) > 1e250) {
            jp /= 1e250;
            jc /= 1e250;
            j1v /= 1e250;
            norm_sum /= 1e250;
        }
    }
    return j1v / norm_sum;
}

double j1_hankel(double x) {
    // J1 = Re[ sqrt(2/(pi x)) e^{i(x - 3 pi/4)} sum_k i^k a_k / x^k ],
    // a_k = prod_j (mu - (2j-1)^2)/(8j), mu = 4.
    const double mu = 4.0;
    Complex term(1.0, 0.0), sum(1.0, 0.0);
    double prev = 1.0;
    for (int k = 1; k <= 30; ++k) {
        const double fac = (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
        term *= Complex(0.0, 1.0) * fac;
        const double mag = std::abs(term);
        if (mag > prev) break;  // asymptotic series: stop at the smallest term
        sum += term;
        prev = mag;
        if (mag < 1e-18) break;
    }
    const double chi = x - 2.356194490192344929;  // 3 pi / 4
    const Complex phase(std::cos(chi), std::sin(chi));
    return std::sqrt(2.0 / (M_PI * x)) * (phase * sum).real();
}

}  // namespace

double bessel_j1(double x) {
    const double w = std::abs(x);
    double v;
    if (w <= 9.0)
        v = j1_series(w);
    else if (w < 14.0)
        v = j1_miller(w);
    else
        v = j1_hankel(w);
    return x < 0 ? -v : v;  // odd function
}

double bessel_j1_over_x(double x) {
    const double w = std::abs(x);
    if (w < 1e-4) {
        const double q = 0.25 * x * x;
        return 0.5 - q / 4.0 + q * q / 24.0;
    }
    return bessel_j1(w) / w;
}

Complex g_reference(Vec3 x, const GreenEvalConfig& cfg) {
    if (cfg.n_quad < 16) throw std::invalid_argument("g_reference: n_quad must be >= 16");
    const double r = norm(x);
    if (r == 0.0) throw std::invalid_argument("g_reference: singular at x = 0");
    const double s = x.y / r;

    // g = e^{-i x1} [ e^{r(s-1)}/(4 pi r) - (r/4pi) I ],
    // I = int_s^1 e^{r(s-u)} J1(r sqrt(1-u^2))/(r sqrt(1-u^2)) r du.
    const double inv4pi = 1.0 / (4.0 * M_PI);
    double direct = 0.0;
    {
        const double e = r * (s - 1.0);
        if (e > cfg.underflow_cut) direct = std::exp(e) * inv4pi / r;
    }

    double span = 1.0 - s;
    if (cfg.truncate_tail && r * span > 45.0) span = 45.0 / r;

    int n = cfg.n_quad;
    if (cfg.quad_scale > 0.0) {
        // The integrand oscillates through J1(r sqrt(1-u^2)); near s = -1 the
        // phase crowds against the lower endpoint, so the count grows with
        // 1/sqrt(1-s^2) there (capped).
        double boost = 1.0;
        if (s < 0.0) boost = std::min(16.0, 0.8 / std::sqrt(std::max(1.0 - s * s, 4e-4)));
        if (boost < 1.0) boost = 1.0;
        n = std::max(n, static_cast<int>(std::ceil(8.0 * r * cfg.quad_scale * boost)));
    }

    double integral = 0.0;
    const double h = span / n;
    for (int j = 0; j < n; ++j) {
        const double u = s + (j + 0.5) * h;
        const double e = r * (s - u);
        if (e < cfg.underflow_cut) break;  // u ascending: all later terms smaller
        const double onemu2 = std::max(0.0, 1.0 - u * u);
        integral += std::exp(e) * bessel_j1_over_x(r * std::sqrt(onemu2));
    }
    integral *= h * r;

    const double re_part = direct - r * inv4pi * integral;
    return re_part * Complex(std::cos(x.x), -std::sin(x.x));
}

Complex g_zeta(Vec3 x, const ComplexFrequency& zeta, const GreenEvalConfig& cfg) {
    const ZetaDecomposition d = decompose_zeta(zeta);
    return d.kappa * g_reference(d.kappa * (d.rotation * x), cfg);
}

std::vector<Complex> sample_g_periodic(const ComplexFrequency& zeta, const Grid3& grid,
                                       const GreenEvalConfig& cfg) {
    const ZetaDecomposition d = decompose_zeta(zeta);
    std::vector<Complex> field(grid.size());
    const int n = grid.n;
    parallel_for(0, grid.size(), [&](std::size_t idx) {
        const int a = static_cast<int>(idx / (static_cast<std::size_t>(n) * n));
        const int b = static_cast<int>((idx / n) % n);
        const int c = static_cast<int>(idx % n);
        if (a == 0 && b == 0 && c == 0) {
            field[idx] = 0.0;
            return;
        }
        const Vec3 x = grid.node(a, b, c);
        if (cfg.zero_outside_ball && norm(x) > 1.0) {
            field[idx] = 0.0;
            return;
        }
        field[idx] = d.kappa * g_reference(d.kappa * (d.rotation * x), cfg);
    });
    return field;
}

}  // namespace eit3d
