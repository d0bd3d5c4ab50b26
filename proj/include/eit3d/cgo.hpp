#ifndef EIT3D_CGO_HPP
#define EIT3D_CGO_HPP

#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "eit3d/geometry.hpp"
#include "eit3d/linalg.hpp"

namespace eit3d {

/// Periodic computational cube [-2,2)^3 with n^3 nodes, spacing h = 4/n.
/// Fields are stored in wrapped (DFT) index order: storage index m in [0,n)
/// corresponds to the signed node j = m for m < n/2 and j = m - n otherwise,
/// with physical position x = j*h.
struct Grid3 {
    int n;

    explicit Grid3(int n_) : n(n_) {
        if (n < 4 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid3: n must be a power of two >= 4");
    }
    double h() const { return 4.0 / n; }
    std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }

    int wrap(int m) const { return m < n / 2 ? m : m - n; }
    std::size_t index(int a, int b, int c) const {
        return (static_cast<std::size_t>(a) * n + b) * n + c;
    }
    Vec3 node(int a, int b, int c) const {
        const double hh = h();
        return {wrap(a) * hh, wrap(b) * hh, wrap(c) * hh};
    }
};

/// In-place 3-D complex DFT plans of a fixed size (FFTW backend).
/// forward() is unnormalized, inverse() carries the 1/n^3 factor, so
/// inverse(forward(x)) == x.
class Fft3 {
  public:
    explicit Fft3(int n);
    ~Fft3();
    Fft3(const Fft3&) = delete;
    Fft3& operator=(const Fft3&) = delete;

    void forward(std::vector<Complex>& field) const;
    void inverse(std::vector<Complex>& field) const;
    int size() const { return n_; }

  private:
    struct Impl;
    int n_;
    std::unique_ptr<Impl> impl_;
};

/// h^3-weighted cyclic convolution: inverse(g_hat .* forward(phi)).
/// g_hat must be the unnormalized forward transform of the kernel samples.
std::vector<Complex> periodic_convolve(const std::vector<Complex>& g_hat,
                                       const std::vector<Complex>& phi,
                                       const Grid3& grid, const Fft3& fft);

struct CgoSolution {
    Grid3 grid;
    ComplexFrequency zeta;
    std::vector<Complex> mu;
    double residual = 0.0;
    int iterations = 0;
};

/// Thrown when the Krylov iteration fails to reach the tolerance.
class SolveFailure : public std::runtime_error {
  public:
    SolveFailure(std::string what, std::vector<double> residuals)
        : std::runtime_error(std::move(what)), residual_history(std::move(residuals)) {}
    std::vector<double> residual_history;
};

struct CgoOptions {
    double tol = 1e-6;
    int max_iter = 200;
};

/// Solves mu + K(q mu) = 1 on the grid by matrix-free GMRES with full
/// orthogonalization (no restarts). g_hat is the forward transform of the
/// periodized Green's function samples for the same zeta.
CgoSolution solve_mu(const std::vector<Complex>& q_field, const std::vector<Complex>& g_hat,
                     const ComplexFrequency& zeta, const Grid3& grid, const Fft3& fft,
                     const CgoOptions& opts = {});

/// Nodes of the grid inside the closed unit ball, with positions and the
/// solution values there (where the periodized solution agrees with mu).
struct BallSamples {
    std::vector<Vec3> x;
    std::vector<std::size_t> idx;  // storage index of each node
    std::vector<Complex> mu;
};

BallSamples restrict_to_ball(const CgoSolution& sol);

/// Matrix-free GMRES on a user operator; exposed for reuse and testing.
/// Returns the residual history (including the initial residual).
std::vector<double> gmres(const std::vector<Complex>& rhs, std::vector<Complex>& x,
                          const std::function<void(const std::vector<Complex>&, std::vector<Complex>&)>& apply,
                          double tol, int max_iter);

}  // namespace eit3d

#endif
