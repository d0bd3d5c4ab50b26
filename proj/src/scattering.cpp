#include "eit3d/scattering.hpp"

#include <cmath>
#include <stdexcept>

namespace eit3d {

Complex t_nonlinear(const FrequencyPair& pair, const std::vector<Complex>& q_field,
                    const Grid3& grid, const BallSamples& ball) {
    if (!pair.is_valid())
        throw std::invalid_argument("t_nonlinear: zeta does not belong to V_xi");
    if (q_field.size() != grid.size())
        throw std::invalid_argument("t_nonlinear: field size mismatch");
    const double h3 = grid.h() * grid.h() * grid.h();
    Complex acc = 0.0;
    for (std::size_t i = 0; i < ball.x.size(); ++i) {
        const double phase = -dot(ball.x[i], pair.xi.v);
        acc += Complex(std::cos(phase), std::sin(phase)) * q_field[ball.idx[i]] * ball.mu[i];
    }
    return h3 * acc;
}

TexpValue t_exp_radial(const DnSpectrum& spectrum, const Xi& xi, const FrequencyPair& pair,
                       int lmax, const TexpOptions& opts) {
    if (lmax > spectrum.lmax)
        throw std::invalid_argument("t_exp_radial: lmax exceeds the available spectrum");
    if (!pair.is_valid())
        throw std::invalid_argument("t_exp_radial: zeta does not belong to V_xi");
    if (norm(xi.v - pair.xi.v) > 1e-12 * (1.0 + norm(xi.v)))
        throw std::invalid_argument("t_exp_radial: xi does not match the pair");

    std::vector<double> weight(lmax + 1);
    for (int l = 0; l <= lmax; ++l) weight[l] = spectrum.lambdas[l] - l;

    const PairingResult pr = pair_planewaves(xi, pair.zeta, weight, lmax, opts.precision);
    TexpValue out;
    out.value = pr.value;
    out.noise_estimate = opts.flag_epsilon * pr.abs_sum;
    out.diverged = pr.overflow || out.noise_estimate > opts.flag_threshold * std::abs(pr.value);
    return out;
}

Complex trilinear(const Grid3& grid, const std::vector<Complex>& field, Vec3 x) {
    const double h = grid.h();
    const int n = grid.n;
    double fx = x.x / h, fy = x.y / h, fz = x.z / h;
    const int a0 = static_cast<int>(std::floor(fx));
    const int b0 = static_cast<int>(std::floor(fy));
    const int c0 = static_cast<int>(std::floor(fz));
    const double tx = fx - a0, ty = fy - b0, tz = fz - c0;
    auto wrapn = [n](int j) { return ((j % n) + n) % n; };
    Complex acc = 0.0;
    for (int da = 0; da <= 1; ++da)
        for (int db = 0; db <= 1; ++db)
            for (int dc = 0; dc <= 1; ++dc) {
                const double w = (da ? tx : 1.0 - tx) * (db ? ty : 1.0 - ty) * (dc ? tz : 1.0 - tz);
                acc += w * field[grid.index(wrapn(a0 + da), wrapn(b0 + db), wrapn(c0 + dc))];
            }
    return acc;
}

TexpValue t_boundary_check(const FrequencyPair& pair, const DnSpectrum& spectrum,
                           const CgoSolution& sol, int lmax, const TexpOptions& opts) {
    if (lmax > spectrum.lmax)
        throw std::invalid_argument("t_boundary_check: lmax exceeds the available spectrum");
    if (!pair.is_valid())
        throw std::invalid_argument("t_boundary_check: zeta does not belong to V_xi");

    std::vector<double> weight(lmax + 1);
    for (int l = 0; l <= lmax; ++l) weight[l] = spectrum.lambdas[l] - l;

    const auto mu_on_sphere = [&](const Vec3& x) { return trilinear(sol.grid, sol.mu, x); };
    const PairingResult pr =
        pair_planewaves_factored(pair.xi, pair.zeta, weight, lmax, mu_on_sphere, opts.precision);
    TexpValue out;
    out.value = pr.value;
    out.noise_estimate = opts.flag_epsilon * pr.abs_sum;
    out.diverged = pr.overflow || out.noise_estimate > opts.flag_threshold * std::abs(pr.value);
    return out;
}

double qhat_radial(const std::function<double(double)>& q, double xi_mag) {
    constexpr int kPoints = 2049;  // even interval count for Simpson
    const double h = 1.0 / (kPoints - 1);
    auto integrand = [&](double r) {
        if (xi_mag == 0.0) return r * r * q(r);
        return r * std::sin(xi_mag * r) * q(r);
    };
    double acc = integrand(0.0) + integrand(1.0);
    for (int i = 1; i < kPoints - 1; ++i) acc += integrand(i * h) * (i % 2 ? 4.0 : 2.0);
    const double integral = acc * h / 3.0;
    return xi_mag == 0.0 ? 4.0 * M_PI * integral : 4.0 * M_PI / xi_mag * integral;
}

ScatterCurve sweep_curve(ScatterKind kind, const SmoothBumpPhantom& phantom,
                         const std::vector<double>& xi_mags, const ZetaRule& rule,
                         const SweepConfig& cfg) {
    ScatterCurve curve;
    curve.kind = kind;
    curve.rule = rule;
    curve.xi_mags = xi_mags;
    curve.values.assign(xi_mags.size(), Complex(0));
    curve.diverged.assign(xi_mags.size(), 0);
    curve.iterations.assign(xi_mags.size(), 0);

    auto zeta_for = [&](const Xi& xi) {
        if (rule.mode == ZetaRule::Mode::Minimal) return make_zeta_min(xi, rule.azimuth);
        return make_zeta(xi, rule.magnitude, rule.azimuth);
    };

    if (kind == ScatterKind::Qhat) {
        for (std::size_t i = 0; i < xi_mags.size(); ++i)
            curve.values[i] = qhat_radial([&](double r) { return phantom.q(r); }, xi_mags[i]);
        return curve;
    }

    if (kind == ScatterKind::Texp) {
        const DnSpectrum spectrum =
            spectrum_smooth([&](double r) { return phantom.gamma(r); }, cfg.lmax, cfg.staircase_m);
        for (std::size_t i = 0; i < xi_mags.size(); ++i) {
            const Xi xi{Vec3{xi_mags[i], 0.0, 0.0}};
            if (xi_mags[i] == 0.0 && rule.mode == ZetaRule::Mode::Minimal) {
                curve.values[i] = 0.0;  // Lambda_gamma kills constants; t^exp(0) = 0
                continue;
            }
            const FrequencyPair pair = zeta_for(xi);
            const TexpValue tv = t_exp_radial(spectrum, xi, pair, cfg.lmax, cfg.texp);
            curve.values[i] = tv.value;
            curve.diverged[i] = tv.diverged ? 1 : 0;
        }
        return curve;
    }

    // Nonlinear: one CGO solve per xi sample.
    const Grid3 grid(cfg.grid_n);
    const Fft3 fft(cfg.grid_n);
    const std::vector<Complex> q_field = sample_q_on_cube(phantom, grid);
    for (std::size_t i = 0; i < xi_mags.size(); ++i) {
        const Xi xi{Vec3{xi_mags[i], 0.0, 0.0}};
        try {
            const FrequencyPair pair = zeta_for(xi);
            std::vector<Complex> g_hat = sample_g_periodic(pair.zeta, grid, cfg.green);
            fft.forward(g_hat);
            const CgoSolution sol = solve_mu(q_field, g_hat, pair.zeta, grid, fft, cfg.cgo);
            const BallSamples ball = restrict_to_ball(sol);
            curve.values[i] = t_nonlinear(pair, q_field, grid, ball);
            curve.iterations[i] = sol.iterations;
        } catch (const SolveFailure& e) {
            curve.diverged[i] = 1;
            curve.iterations[i] = static_cast<int>(e.residual_history.size()) - 1;
        }
    }
    return curve;
}

}  // namespace eit3d
