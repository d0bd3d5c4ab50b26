#include "eit3d/recon.hpp"

#include <cmath>
#include <stdexcept>

namespace eit3d {

namespace {

double sinc(double z) { return std::abs(z) < 1e-8 ? 1.0 - z * z / 6.0 : std::sin(z) / z; }

// Validates that the curve is sampled at midpoints of a uniform partition
// and returns the cell width.
double midpoint_spacing(const ScatterCurve& curve) {
    if (curve.xi_mags.size() < 2)
        throw std::invalid_argument("inverse transform: need at least 2 curve samples");
    const double step = curve.xi_mags[1] - curve.xi_mags[0];
    if (!(step > 0.0))
        throw std::invalid_argument("inverse transform: curve samples must be increasing");
    for (std::size_t i = 0; i + 1 < curve.xi_mags.size(); ++i)
        if (std::abs(curve.xi_mags[i + 1] - curve.xi_mags[i] - step) > 1e-9 * step)
            throw std::invalid_argument("inverse transform: curve samples must be uniform");
    if (std::abs(curve.xi_mags[0] - 0.5 * step) > 1e-9 * step)
        throw std::invalid_argument("inverse transform: curve must be sampled at cell midpoints");
    return step;
}

}  // namespace

InverseFourierResult inverse_radial_fourier(const ScatterCurve& curve, double truncation,
                                            const RadialProfile& r_grid) {
    const double step = midpoint_spacing(curve);
    std::size_t count = 0;
    while (count < curve.xi_mags.size() && curve.xi_mags[count] < truncation) ++count;
    if (count < 16)
        throw std::invalid_argument("inverse_radial_fourier: fewer than 16 samples below B");
    for (std::size_t i = 0; i < count; ++i)
        if (curve.diverged[i])
            throw std::invalid_argument(
                "inverse_radial_fourier: divergence-marked sample inside [0,B]; reduce B");

    InverseFourierResult out;
    out.profile = r_grid;
    const double prefactor = step / (2.0 * M_PI * M_PI);
    for (std::size_t k = 0; k < r_grid.r.size(); ++k) {
        Complex acc = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            const double xi = curve.xi_mags[i];
            acc += xi * xi * curve.values[i] * sinc(xi * r_grid.r[k]);
        }
        acc *= prefactor;
        out.profile.values[k] = acc.real();
        out.imag_sup = std::max(out.imag_sup, std::abs(acc.imag()));
    }
    return out;
}

RadialProfile solve_conductivity_radial(const RadialProfile& q_rec, double tol, int max_iter,
                                        int* iterations_out) {
    const std::size_t m = q_rec.r.size();
    const double h = q_rec.spacing();
    std::vector<double> w(m, 0.0), wn(m), s(m);
    std::vector<double> inner(m), outer(m);  // cumulative trapezoids

    double prev_sup = 0.0;
    int growth_streak = 0;
    int iter = 0;
    for (; iter < max_iter; ++iter) {
        for (std::size_t i = 0; i < m; ++i) s[i] = q_rec.values[i] * (w[i] + 1.0);

        inner[0] = 0.0;  // int_0^r t^2 s dt
        for (std::size_t i = 1; i < m; ++i) {
            const double t0 = q_rec.r[i - 1], t1 = q_rec.r[i];
            inner[i] = inner[i - 1] + 0.5 * h * (t0 * t0 * s[i - 1] + t1 * t1 * s[i]);
        }
        outer[m - 1] = 0.0;  // int_r^1 (t - t^2) s dt
        for (std::size_t i = m - 1; i > 0; --i) {
            const double t0 = q_rec.r[i - 1], t1 = q_rec.r[i];
            outer[i - 1] = outer[i] + 0.5 * h * ((t0 - t0 * t0) * s[i - 1] + (t1 - t1 * t1) * s[i]);
        }

        double delta = 0.0, sup = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double r = q_rec.r[i];
            const double lead = (i == 0) ? 0.0 : (1.0 / r - 1.0) * inner[i];
            wn[i] = -(lead + outer[i]);
            delta = std::max(delta, std::abs(wn[i] - w[i]));
            sup = std::max(sup, std::abs(wn[i]));
        }
        w.swap(wn);
        if (delta < tol) break;
        growth_streak = sup > prev_sup ? growth_streak + 1 : 0;
        prev_sup = sup;
        if (growth_streak >= 5 && sup > 1e3)
            throw std::runtime_error("solve_conductivity_radial: diverging iteration (q too large)");
    }
    if (iterations_out) *iterations_out = iter + 1;

    RadialProfile gamma = q_rec;
    for (std::size_t i = 0; i < m; ++i) {
        const double sq = 1.0 + w[i];
        gamma.values[i] = sq * sq;
    }
    gamma.values[m - 1] = 1.0;
    return gamma;
}

RadialProfile solve_conductivity_fd(const RadialProfile& q_rec) {
    // v = r sqrt(gamma) turns the radial problem into v'' = q v, v(0) = 0,
    // v(1) = 1: a tridiagonal solve.
    const std::size_t m = q_rec.r.size();
    const double h = q_rec.spacing();
    const std::size_t inner = m - 2;
    std::vector<double> diag(inner), sub(inner), sup(inner), rhs(inner, 0.0);
    for (std::size_t i = 0; i < inner; ++i) {
        diag[i] = -2.0 - h * h * q_rec.values[i + 1];
        sub[i] = 1.0;
        sup[i] = 1.0;
    }
    rhs[inner - 1] = -1.0;  // v(1) = 1 moved to the right-hand side

    for (std::size_t i = 1; i < inner; ++i) {  // Thomas algorithm
        const double f = sub[i] / diag[i - 1];
        diag[i] -= f * sup[i - 1];
        rhs[i] -= f * rhs[i - 1];
    }
    std::vector<double> v(m);
    v[0] = 0.0;
    v[m - 1] = 1.0;
    v[m - 2] = rhs[inner - 1] / diag[inner - 1];
    for (std::size_t i = inner - 1; i > 0; --i)
        v[i] = (rhs[i - 1] - sup[i - 1] * v[i + 1]) / diag[i - 1];

    RadialProfile gamma = q_rec;
    for (std::size_t i = 1; i < m; ++i) {
        const double sq = v[i] / q_rec.r[i];
        gamma.values[i] = sq * sq;
    }
    // r = 0: sqrt(gamma)(0) = v'(0), one-sided second order
    const double vp0 = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    gamma.values[0] = vp0 * vp0;
    gamma.values[m - 1] = 1.0;
    return gamma;
}

RadialProfile calderon_gamma_app(const ScatterCurve& texp_curve, double truncation,
                                 const RadialProfile& r_grid) {
    if (texp_curve.rule.mode != ZetaRule::Mode::Minimal)
        throw std::invalid_argument("calderon_gamma_app: curve must use the minimal-zeta rule");
    const double step = midpoint_spacing(texp_curve);
    std::size_t count = 0;
    while (count < texp_curve.xi_mags.size() && texp_curve.xi_mags[count] < truncation) ++count;
    for (std::size_t i = 0; i < count; ++i)
        if (texp_curve.diverged[i])
            throw std::invalid_argument("calderon_gamma_app: divergence inside [0,B]; reduce B");

    RadialProfile gamma = r_grid;
    const double prefactor = step / (M_PI * M_PI);
    for (std::size_t k = 0; k < r_grid.r.size(); ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < count; ++i)
            acc += texp_curve.values[i].real() * sinc(texp_curve.xi_mags[i] * r_grid.r[k]);
        gamma.values[k] = 1.0 - prefactor * acc;
    }
    return gamma;
}

namespace {

std::vector<double> midpoint_samples(double upper, double step) {
    std::vector<double> xs;
    const int cells = static_cast<int>(std::round(upper / step));
    for (int i = 0; i < cells; ++i) xs.push_back((i + 0.5) * step);
    return xs;
}

}  // namespace

ReconResult pipeline(ReconMethod method, const SmoothBumpPhantom& phantom,
                     const PipelineConfig& cfg) {
    ReconResult res;
    res.method = method;
    const RadialProfile r_grid = RadialProfile::uniform(cfg.profile_points);

    if (method == ReconMethod::Calderon) {
        const double upper = cfg.texp_truncation;
        const auto xs = midpoint_samples(upper, cfg.xi_step);
        ZetaRule rule;
        rule.mode = ZetaRule::Mode::Minimal;
        const ScatterCurve curve = sweep_curve(ScatterKind::Texp, phantom, xs, rule, cfg.sweep);
        res.truncation = upper;
        res.gamma_rec = calderon_gamma_app(curve, upper, r_grid);
        res.q_rec = r_grid;  // Calderon's method reconstructs gamma directly
        return res;
    }

    ZetaRule rule;
    rule.mode = ZetaRule::Mode::FixedMagnitude;
    rule.magnitude = cfg.zeta_mag;

    double upper = method == ReconMethod::Nonlinear ? cfg.truncation : cfg.texp_truncation;
    const auto xs = midpoint_samples(std::max(upper, cfg.truncation), cfg.xi_step);
    const ScatterKind kind =
        method == ReconMethod::Nonlinear ? ScatterKind::Nonlinear : ScatterKind::Texp;
    const ScatterCurve curve = sweep_curve(kind, phantom, xs, rule, cfg.sweep);

    if (method == ReconMethod::Texp) {
        // B falls back to the last sample before any divergence marker.
        for (std::size_t i = 0; i < curve.xi_mags.size(); ++i)
            if (curve.diverged[i]) {
                upper = std::min(upper, curve.xi_mags[i] - 0.5 * cfg.xi_step);
                break;
            }
    }
    res.truncation = upper;

    const InverseFourierResult inv = inverse_radial_fourier(curve, upper, r_grid);
    res.q_rec = inv.profile;
    res.q_imag_sup = inv.imag_sup;
    res.gamma_rec =
        solve_conductivity_radial(res.q_rec, cfg.fp_tol, cfg.fp_max_iter, &res.iterations);
    return res;
}

}  // namespace eit3d
