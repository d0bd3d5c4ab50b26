#include "eit3d/dnmap.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace eit3d {

void ProjectiveRatio::normalize() {
    const double s = std::max(std::abs(num), std::abs(den));
    if (s > 0.0 && std::isfinite(s)) {
        num /= s;
        den /= s;
    }
}

double eigen_constant(int l) {
    if (l < 0) throw std::invalid_argument("eigen_constant: l must be nonnegative");
    return static_cast<double>(l);
}

double eigen_shells(const ShellPhantom& phantom, int l) {
    if (l < 0) throw std::invalid_argument("eigen_shells: l must be nonnegative");
    if (l == 0) return 0.0;

    const auto& radii = phantom.radii;
    const auto& values = phantom.values;
    const int n_shells = phantom.shell_count();
    const double beta = static_cast<double>(l + 1) / l;

    // C_0 = infinity encodes B_1 = 0 (regular solution in the core shell).
    ProjectiveRatio c{1.0, 0.0};
    for (int j = 1; j <= n_shells - 1; ++j) {
        const double w = std::pow(radii[j - 1], -(2.0 * l + 1.0));
        if (!std::isfinite(w))
            throw std::invalid_argument("eigen_shells: interface radius too small for this degree");
        // rho_j = (C_{j-1} + w)/(C_{j-1} - beta w), with rho_1 = 1 forced by C_0.
        ProjectiveRatio rho{c.num + w * c.den, c.num - beta * w * c.den};
        const double gj = values[j - 1], gj1 = values[j];
        c = ProjectiveRatio{w * (beta * gj1 * rho.num + gj * rho.den), gj1 * rho.num - gj * rho.den};
        c.normalize();
    }
    // lambda = l - (2l+1)/(1 + C) = l - (2l+1) den/(den + num)
    const double denom = c.den + c.num;
    if (denom == 0.0) throw std::runtime_error("eigen_shells: degenerate recursion (C = -1)");
    return l - (2.0 * l + 1.0) * c.den / denom;
}

double eigen_shells_oracle(const ShellPhantom& phantom, int l) {
    if (l < 1) throw std::invalid_argument("eigen_shells_oracle: l must be positive");

    // Shell j hosts R = A_j r^l + B_j r^{-(l+1)}. The solve uses the scaled
    // unknowns at_j = A_j r_j^l and bt_j = B_j r_{j-1}^{-(l+1)} so that every
    // matrix entry is a power of a radius ratio <= 1; this keeps the system
    // well-conditioned for large l.
    const int n = phantom.shell_count();
    std::vector<double> rb(n + 1);  // shell boundaries r_0..r_N
    rb[0] = 0.0;
    for (int j = 1; j < n; ++j) rb[j] = phantom.radii[j - 1];
    rb[n] = 1.0;

    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * n);
    auto ia = [](int j) { return 2 * (j - 1); };      // column of at_j
    auto ib = [](int j) { return 2 * (j - 1) + 1; };  // column of bt_j

    int row = 0;
    mat(row, ib(1)) = 1.0;  // B_1 = 0
    ++row;

    for (int j = 1; j <= n - 1; ++j) {
        const double r = rb[j];
        const double down = std::pow(rb[j - 1] / r, l + 1.0);  // shell j B-basis at r_j
        const double up = std::pow(r / rb[j + 1], static_cast<double>(l));

        mat(row, ia(j)) = 1.0;
        mat(row, ib(j)) = down;
        mat(row, ia(j + 1)) = -up;
        mat(row, ib(j + 1)) = -1.0;
        ++row;

        const double gj = phantom.values[j - 1], gj1 = phantom.values[j];
        mat(row, ia(j)) = gj * l;
        mat(row, ib(j)) = -gj * (l + 1.0) * down;
        mat(row, ia(j + 1)) = -gj1 * l * up;
        mat(row, ib(j + 1)) = gj1 * (l + 1.0);
        ++row;
    }

    const double outer_down = std::pow(rb[n - 1], l + 1.0);
    mat(row, ia(n)) = 1.0;
    mat(row, ib(n)) = outer_down;
    rhs(row) = 1.0;

    Eigen::FullPivLU<Eigen::MatrixXd> lu(mat);
    if (!lu.isInvertible())
        throw std::runtime_error("eigen_shells_oracle: singular interface system");
    Eigen::VectorXd sol = lu.solve(rhs);

    const double a_n = sol(ia(n));
    const double b_n = sol(ib(n)) * outer_down;
    return l * a_n - (l + 1.0) * b_n;
}

namespace {

ShellPhantom midpoint_staircase(const std::function<double(double)>& gamma, int m) {
    std::vector<double> radii(m - 1), values(m);
    const double h = 1.0 / m;
    for (int j = 1; j < m; ++j) radii[j - 1] = j * h;
    for (int j = 1; j <= m; ++j) values[j - 1] = gamma((j - 0.5) * h);
    if (std::abs(values.back() - 1.0) > 1e-12)
        throw std::invalid_argument("eigen_smooth: conductivity must equal 1 on the outer cell");
    values.back() = 1.0;
    return {std::move(radii), std::move(values)};
}

}  // namespace

double eigen_smooth(const std::function<double(double)>& gamma, int l, int m) {
    if (m < 2) throw std::invalid_argument("eigen_smooth: need at least 2 shells");
    if (l == 0) return 0.0;
    return eigen_shells(midpoint_staircase(gamma, m), l);
}

EigenBounds eigen_smooth_bounds(const std::function<double(double)>& gamma, int l, int m) {
    if (m < 2) throw std::invalid_argument("eigen_smooth_bounds: need at least 2 shells");
    std::vector<double> radii(m - 1), lo(m), hi(m);
    const double h = 1.0 / m;
    for (int j = 1; j < m; ++j) radii[j - 1] = j * h;
    constexpr int kSamples = 17;  // odd: includes the cell midpoint
    for (int j = 0; j < m; ++j) {
        double vmin = INFINITY, vmax = -INFINITY;
        for (int s = 0; s < kSamples; ++s) {
            const double r = (j + static_cast<double>(s) / (kSamples - 1)) * h;
            const double v = gamma(std::min(r, 1.0));
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
        lo[j] = vmin;
        hi[j] = vmax;
    }
    if (std::abs(lo.back() - 1.0) > 1e-12 || std::abs(hi.back() - 1.0) > 1e-12)
        throw std::invalid_argument("eigen_smooth_bounds: conductivity must equal 1 on the outer cell");
    lo.back() = hi.back() = 1.0;
    if (l == 0) return {0.0, 0.0};
    return {eigen_shells({radii, lo}, l), eigen_shells({radii, hi}, l)};
}

double eigen_ode(const std::function<double(double)>& gamma,
                 const std::function<double(double)>& gamma_prime, int l) {
    if (l < 1) throw std::invalid_argument("eigen_ode: l must be positive");

    // R'' = l(l+1) R / r^2 - (2/r + gamma'/gamma) R'. Start on the regular
    // branch R ~ r^l (normalization drops out of the returned ratio).
    const double r0 = 1e-4;
    double r = r0;
    double R = 1.0;
    double Rp = l / r0;

    auto deriv = [&](double rr, double y0, double y1, double& d0, double& d1) {
        const double g = gamma(rr);
        d0 = y1;
        d1 = l * (l + 1.0) * y0 / (rr * rr) - (2.0 / rr + gamma_prime(rr) / g) * y1;
    };

    const double h_base = 1e-4;
    while (r < 1.0) {
        // Refine the step while the growth rate l/r would outrun the base step.
        double h = std::min(h_base, 0.5 * r / (l + 1.0));
        if (r + h > 1.0) h = 1.0 - r;
        double k10, k11, k20, k21, k30, k31, k40, k41;
        deriv(r, R, Rp, k10, k11);
        deriv(r + 0.5 * h, R + 0.5 * h * k10, Rp + 0.5 * h * k11, k20, k21);
        deriv(r + 0.5 * h, R + 0.5 * h * k20, Rp + 0.5 * h * k21, k30, k31);
        deriv(r + h, R + h * k30, Rp + h * k31, k40, k41);
        R += h / 6.0 * (k10 + 2.0 * k20 + 2.0 * k30 + k40);
        Rp += h / 6.0 * (k11 + 2.0 * k21 + 2.0 * k31 + k41);
        r += h;
        if (std::abs(R) > 1e200) {  // rescale; the eigenvalue is a ratio
            Rp /= std::abs(R);
            R /= std::abs(R);
        }
    }
    return gamma(1.0) * Rp / R;
}

DnSpectrum spectrum_constant(int lmax) {
    DnSpectrum s{lmax, std::vector<double>(lmax + 1)};
    for (int l = 0; l <= lmax; ++l) s.lambdas[l] = l;
    return s;
}

DnSpectrum spectrum_shells(const ShellPhantom& phantom, int lmax) {
    DnSpectrum s{lmax, std::vector<double>(lmax + 1)};
    for (int l = 0; l <= lmax; ++l) s.lambdas[l] = eigen_shells(phantom, l);
    return s;
}

DnSpectrum spectrum_smooth(const std::function<double(double)>& gamma, int lmax, int m) {
    DnSpectrum s{lmax, std::vector<double>(lmax + 1)};
    for (int l = 0; l <= lmax; ++l) s.lambdas[l] = eigen_smooth(gamma, l, m);
    return s;
}

HarmonicCoeffs apply_dn_minus_free(const DnSpectrum& spectrum, const HarmonicCoeffs& coeffs) {
    if (coeffs.lmax > spectrum.lmax)
        throw std::invalid_argument("apply_dn_minus_free: coefficient band exceeds the spectrum");
    HarmonicCoeffs out = coeffs;
    for (int l = 0; l <= coeffs.lmax; ++l) {
        const double factor = spectrum.lambdas[l] - l;
        for (int m = -l; m <= l; ++m) out.at(l, m) *= factor;
    }
    return out;
}

}  // namespace eit3d
