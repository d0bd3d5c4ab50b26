#include "eit3d/cgo.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace eit3d {

namespace {
std::mutex g_fftw_plan_mutex;  // FFTW planning is not thread-safe
}

struct Fft3::Impl {
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
    fftw_complex* buf = nullptr;
    std::size_t count = 0;
};

Fft3::Fft3(int n) : n_(n), impl_(std::make_unique<Impl>()) {
    impl_->count = static_cast<std::size_t>(n) * n * n;
    impl_->buf = fftw_alloc_complex(impl_->count);
    std::lock_guard<std::mutex> lock(g_fftw_plan_mutex);
    // FFTW_ESTIMATE keeps planning deterministic run to run.
    impl_->fwd = fftw_plan_dft_3d(n, n, n, impl_->buf, impl_->buf, FFTW_FORWARD, FFTW_ESTIMATE);
    impl_->inv = fftw_plan_dft_3d(n, n, n, impl_->buf, impl_->buf, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft3::~Fft3() {
    std::lock_guard<std::mutex> lock(g_fftw_plan_mutex);
    if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
    if (impl_->inv) fftw_destroy_plan(impl_->inv);
    if (impl_->buf) fftw_free(impl_->buf);
}

void Fft3::forward(std::vector<Complex>& field) const {
    if (field.size() != impl_->count) throw std::invalid_argument("Fft3: size mismatch");
    auto* b = reinterpret_cast<Complex*>(impl_->buf);
    std::copy(field.begin(), field.end(), b);
    fftw_execute(impl_->fwd);
    std::copy(b, b + impl_->count, field.begin());
}

void Fft3::inverse(std::vector<Complex>& field) const {
    if (field.size() != impl_->count) throw std::invalid_argument("Fft3: size mismatch");
    auto* b = reinterpret_cast<Complex*>(impl_->buf);
    std::copy(field.begin(), field.end(), b);
    fftw_execute(impl_->inv);
    const double scale = 1.0 / static_cast<double>(impl_->count);
    for (std::size_t i = 0; i < impl_->count; ++i) field[i] = b[i] * scale;
}

std::vector<Complex> periodic_convolve(const std::vector<Complex>& g_hat,
                                       const std::vector<Complex>& phi,
                                       const Grid3& grid, const Fft3& fft) {
    if (g_hat.size() != grid.size() || phi.size() != grid.size() || fft.size() != grid.n)
        throw std::invalid_argument("periodic_convolve: size mismatch");
    std::vector<Complex> out = phi;
    fft.forward(out);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= g_hat[i];
    fft.inverse(out);
    const double h3 = grid.h() * grid.h() * grid.h();
    for (auto& v : out) v *= h3;
    return out;
}

namespace {

double norm2_vec(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const auto& c : v) s += std::norm(c);
    return std::sqrt(s);
}

}  // namespace

std::vector<double> gmres(const std::vector<Complex>& rhs, std::vector<Complex>& x,
                          const std::function<void(const std::vector<Complex>&, std::vector<Complex>&)>& apply,
                          double tol, int max_iter) {
    const std::size_t n = rhs.size();
    std::vector<double> history;

    std::vector<Complex> r(n), tmp(n);
    apply(x, tmp);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - tmp[i];

    const double bnorm = norm2_vec(rhs);
    const double scale = bnorm > 0.0 ? bnorm : 1.0;
    double beta = norm2_vec(r);
    history.push_back(beta / scale);
    if (beta / scale <= tol) return history;

    // Arnoldi basis and Hessenberg factorization updated by Givens rotations.
    std::vector<std::vector<Complex>> basis;
    basis.push_back(r);
    for (auto& c : basis[0]) c /= beta;

    std::vector<std::vector<Complex>> hcols;
    std::vector<Complex> cs, g;
    std::vector<double> sn;
    g.push_back(beta);

    for (int k = 0; k < max_iter; ++k) {
        apply(basis[k], tmp);
        std::vector<Complex> h(k + 2);
        for (int j = 0; j <= k; ++j) {
            Complex dotv = 0.0;
            const auto& vj = basis[j];
            for (std::size_t i = 0; i < n; ++i) dotv += std::conj(vj[i]) * tmp[i];
            h[j] = dotv;
            for (std::size_t i = 0; i < n; ++i) tmp[i] -= dotv * vj[i];
        }
        const double hk = norm2_vec(tmp);
        h[k + 1] = hk;

        for (int j = 0; j < k; ++j) {
            const Complex t = std::conj(cs[j]) * h[j] + sn[j] * h[j + 1];
            h[j + 1] = -sn[j] * h[j] + cs[j] * h[j + 1];
            h[j] = t;
        }
        const double denom = std::sqrt(std::norm(h[k]) + std::norm(h[k + 1]));
        Complex c_new = 1.0;
        double s_new = 0.0;
        if (denom > 0.0) {
            c_new = h[k] / denom;
            s_new = std::abs(h[k + 1]) / denom;  // h[k+1] is real >= 0 here
        }
        cs.push_back(c_new);
        sn.push_back(s_new);
        h[k] = std::conj(c_new) * h[k] + s_new * h[k + 1];
        h[k + 1] = 0.0;

        g.push_back(-sn[k] * g[k]);
        g[k] = std::conj(cs[k]) * g[k];

        hcols.push_back(std::move(h));
        const double res = std::abs(g[k + 1]) / scale;
        history.push_back(res);

        if (res <= tol || hk == 0.0 || k + 1 == max_iter) {
            // back substitution for the least-squares coefficients
            const int m = k + 1;
            std::vector<Complex> y(m);
            for (int i = m - 1; i >= 0; --i) {
                Complex s = g[i];
                for (int j = i + 1; j < m; ++j) s -= hcols[j][i] * y[j];
                y[i] = s / hcols[i][i];
            }
            for (int j = 0; j < m; ++j)
                for (std::size_t i = 0; i < n; ++i) x[i] += y[j] * basis[j][i];
            return history;
        }

        basis.push_back(tmp);
        for (auto& c : basis.back()) c /= hk;
    }
    return history;
}

CgoSolution solve_mu(const std::vector<Complex>& q_field, const std::vector<Complex>& g_hat,
                     const ComplexFrequency& zeta, const Grid3& grid, const Fft3& fft,
                     const CgoOptions& opts) {
    if (q_field.size() != grid.size() || g_hat.size() != grid.size())
        throw std::invalid_argument("solve_mu: field size mismatch");

    const auto apply = [&](const std::vector<Complex>& phi, std::vector<Complex>& out) {
        std::vector<Complex> qphi(phi.size());
        for (std::size_t i = 0; i < phi.size(); ++i) qphi[i] = q_field[i] * phi[i];
        out = periodic_convolve(g_hat, qphi, grid, fft);
        for (std::size_t i = 0; i < phi.size(); ++i) out[i] += phi[i];
    };

    CgoSolution sol{grid, zeta, std::vector<Complex>(grid.size(), Complex(1.0, 0.0)), 0.0, 0};
    const std::vector<Complex> rhs(grid.size(), Complex(1.0, 0.0));
    // Start from mu = 1; for q = 0 the initial residual already vanishes.
    auto history = gmres(rhs, sol.mu, apply, opts.tol, opts.max_iter);
    sol.residual = history.back();
    sol.iterations = static_cast<int>(history.size()) - 1;
    if (sol.residual > opts.tol)
        throw SolveFailure("solve_mu: GMRES did not reach tol (|zeta| may be too small or q too large)",
                           std::move(history));
    return sol;
}

BallSamples restrict_to_ball(const CgoSolution& sol) {
    BallSamples out;
    const Grid3& g = sol.grid;
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            for (int c = 0; c < g.n; ++c) {
                const Vec3 x = g.node(a, b, c);
                if (norm(x) <= 1.0) {
                    out.x.push_back(x);
                    out.idx.push_back(g.index(a, b, c));
                    out.mu.push_back(sol.mu[g.index(a, b, c)]);
                }
            }
    return out;
}

}  // namespace eit3d
