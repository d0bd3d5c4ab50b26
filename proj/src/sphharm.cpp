#include "eit3d/sphharm.hpp"

#include <quadmath.h>

#include <cmath>
#include <stdexcept>

namespace eit3d {

namespace {

// ---------------------------------------------------------------------------
// Scalar shims so the plane-wave pairing can run in double, 80-bit extended
// or binary128 arithmetic from one code path.
// ---------------------------------------------------------------------------

template <class Real>
struct Ops;

template <>
struct Ops<double> {
    static double pi() { return M_PI; }
    static double sin(double x) { return std::sin(x); }
    static double cos(double x) { return std::cos(x); }
    static double exp(double x) { return std::exp(x); }
    static double sqrt(double x) { return std::sqrt(x); }
};

template <>
struct Ops<long double> {
    static long double pi() { return M_PIl; }
    static long double sin(long double x) { return sinl(x); }
    static long double cos(long double x) { return cosl(x); }
    static long double exp(long double x) { return expl(x); }
    static long double sqrt(long double x) { return sqrtl(x); }
};

template <>
struct Ops<__float128> {
    static __float128 pi() { return M_PIq; }
    static __float128 sin(__float128 x) { return sinq(x); }
    static __float128 cos(__float128 x) { return cosq(x); }
    static __float128 exp(__float128 x) { return expq(x); }
    static __float128 sqrt(__float128 x) { return sqrtq(x); }
};

template <class Real>
struct RC {
    Real re{}, im{};
};

template <class Real>
RC<Real> operator+(RC<Real> a, RC<Real> b) { return {a.re + b.re, a.im + b.im}; }
template <class Real>
RC<Real> operator*(RC<Real> a, RC<Real> b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class Real>
RC<Real> operator*(Real s, RC<Real> a) { return {s * a.re, s * a.im}; }
template <class Real>
RC<Real> conj(RC<Real> a) { return {a.re, -a.im}; }

// Normalized associated Legendre sweep for one colatitude. out is indexed by
// l(l+1)/2 + m, m >= 0, and carries the Condon-Shortley phase.
template <class Real>
void legendre_row_t(int lmax, Real ct, Real st, std::vector<Real>& out) {
    const std::size_t count = static_cast<std::size_t>(lmax + 1) * (lmax + 2) / 2;
    out.resize(count);
    auto idx = [](int l, int m) { return static_cast<std::size_t>(l) * (l + 1) / 2 + m; };
    out[0] = Ops<Real>::sqrt(Real(1) / (Real(4) * Ops<Real>::pi()));
    for (int m = 1; m <= lmax; ++m)
        out[idx(m, m)] = -Ops<Real>::sqrt(Real(2 * m + 1) / Real(2 * m)) * st * out[idx(m - 1, m - 1)];
    for (int m = 0; m < lmax; ++m)
        out[idx(m + 1, m)] = Ops<Real>::sqrt(Real(2 * m + 3)) * ct * out[idx(m, m)];
    for (int m = 0; m <= lmax; ++m)
        for (int l = m + 2; l <= lmax; ++l) {
            const Real a = Ops<Real>::sqrt(Real(4ll * l * l - 1) / Real(static_cast<long long>(l) * l - static_cast<long long>(m) * m));
            const Real b = Ops<Real>::sqrt(Real(static_cast<long long>(l - 1) * (l - 1) - static_cast<long long>(m) * m) /
                                           Real(4ll * (l - 1) * (l - 1) - 1));
            out[idx(l, m)] = a * (ct * out[idx(l - 1, m)] - b * out[idx(l - 2, m)]);
        }
}

// Row weights of the equiangular rule: w_j = (2/B) sin(theta_j) *
// sum_{k<B} sin((2k+1) theta_j)/(2k+1), exact on Legendre polynomials of
// degree < 2B. The returned value folds in the phi factor pi/B.
template <class Real>
Real row_weight_t(int bandwidth, Real theta) {
    const Real s1 = Ops<Real>::sin(theta), c1 = Ops<Real>::cos(theta);
    const Real s2 = Real(2) * s1 * c1, c2 = c1 * c1 - s1 * s1;
    Real sk = s1, ck = c1, acc = s1;  // k = 0 term
    for (int k = 1; k < bandwidth; ++k) {
        const Real sn = sk * c2 + ck * s2;
        const Real cn = ck * c2 - sk * s2;
        sk = sn;
        ck = cn;
        acc = acc + sk / Real(2 * k + 1);
    }
    const Real w = (Real(2) / Real(bandwidth)) * s1 * acc;
    return w * Ops<Real>::pi() / Real(bandwidth);
}

}  // namespace

SphereGrid SphereGrid::make(int bandwidth) {
    if (bandwidth < 1) throw std::invalid_argument("SphereGrid: bandwidth must be positive");
    SphereGrid g;
    g.bandwidth = bandwidth;
    const int n = 2 * bandwidth;
    g.theta.resize(n);
    g.phi.resize(n);
    g.weight.resize(n);
    for (int j = 0; j < n; ++j) {
        g.theta[j] = M_PI * (2 * j + 1) / (4.0 * bandwidth);
        g.weight[j] = row_weight_t<double>(bandwidth, g.theta[j]);
    }
    for (int k = 0; k < n; ++k) g.phi[k] = M_PI * k / bandwidth;
    return g;
}

void legendre_row(int lmax, double cos_theta, double sin_theta, std::vector<double>& out) {
    legendre_row_t<double>(lmax, cos_theta, sin_theta, out);
}

Complex ylm(int l, int m, double theta, double phi) {
    if (l < 0 || std::abs(m) > l) throw std::invalid_argument("ylm: need |m| <= l");
    std::vector<double> p;
    legendre_row(l, std::cos(theta), std::sin(theta), p);
    const int ma = std::abs(m);
    double v = p[static_cast<std::size_t>(l) * (l + 1) / 2 + ma];
    if (m < 0 && (ma & 1)) v = -v;
    return v * Complex(std::cos(m * phi), std::sin(m * phi));
}

HarmonicCoeffs sht_forward(const std::vector<Complex>& samples, const SphereGrid& grid, int lmax) {
    if (lmax >= grid.bandwidth)
        throw std::invalid_argument("sht_forward: lmax must be below the grid bandwidth");
    if (samples.size() != grid.size())
        throw std::invalid_argument("sht_forward: sample count does not match grid");

    HarmonicCoeffs c = HarmonicCoeffs::zero(lmax);
    const int n = grid.rows();
    std::vector<double> p;
    std::vector<Complex> fm(2 * lmax + 1);

    for (int j = 0; j < n; ++j) {
        // phase-reduced samples F_m(j) = sum_k f e^{-im phi_k}
        std::fill(fm.begin(), fm.end(), Complex(0));
        for (int k = 0; k < n; ++k) {
            const Complex f = samples[grid.index(j, k)];
            const Complex u(std::cos(grid.phi[k]), -std::sin(grid.phi[k]));
            Complex pp = f, pn = f;
            fm[lmax] += f;
            for (int m = 1; m <= lmax; ++m) {
                pp *= u;
                pn *= std::conj(u);
                fm[lmax + m] += pp;
                fm[lmax - m] += pn;
            }
        }
        legendre_row(lmax, std::cos(grid.theta[j]), std::sin(grid.theta[j]), p);
        const double w = grid.weight[j];
        for (int l = 0; l <= lmax; ++l)
            for (int m = -l; m <= l; ++m) {
                double plm = p[static_cast<std::size_t>(l) * (l + 1) / 2 + std::abs(m)];
                if (m < 0 && (m & 1)) plm = -plm;
                c.at(l, m) += w * plm * fm[lmax + m];
            }
    }
    return c;
}

std::vector<Complex> sht_inverse(const HarmonicCoeffs& coeffs, const SphereGrid& grid) {
    if (coeffs.lmax >= grid.bandwidth)
        throw std::invalid_argument("sht_inverse: coefficient band exceeds the grid bandwidth");
    const int n = grid.rows();
    const int lmax = coeffs.lmax;
    std::vector<Complex> f(grid.size());
    std::vector<double> p;
    std::vector<Complex> sm(2 * lmax + 1);

    for (int j = 0; j < n; ++j) {
        legendre_row(lmax, std::cos(grid.theta[j]), std::sin(grid.theta[j]), p);
        std::fill(sm.begin(), sm.end(), Complex(0));
        for (int l = 0; l <= lmax; ++l)
            for (int m = -l; m <= l; ++m) {
                double plm = p[static_cast<std::size_t>(l) * (l + 1) / 2 + std::abs(m)];
                if (m < 0 && (m & 1)) plm = -plm;
                sm[lmax + m] += coeffs.at(l, m) * plm;
            }
        for (int k = 0; k < n; ++k) {
            const Complex u(std::cos(grid.phi[k]), std::sin(grid.phi[k]));
            Complex acc = sm[lmax];
            Complex pp(1.0), pn(1.0);
            for (int m = 1; m <= lmax; ++m) {
                pp *= u;
                pn *= std::conj(u);
                acc += sm[lmax + m] * pp + sm[lmax - m] * pn;
            }
            f[grid.index(j, k)] = acc;
        }
    }
    return f;
}

int planewave_grid_bandwidth(double kappa, int lmax) {
    const int from_kappa = static_cast<int>(std::ceil(2.718281828459045 * kappa)) + lmax + 12;
    return std::max(2 * (lmax + 1), from_kappa);
}

namespace {

// e^{|zi|} overflows IEEE double past this point; the samples would all be
// infinite, so skip the quadrature and hand back the flagged result directly.
constexpr double kDoubleExpLimit = 700.0;

PlanewaveCoeffs overflowed(int lmax) {
    PlanewaveCoeffs out{HarmonicCoeffs::zero(lmax), true};
    for (auto& v : out.coeffs.table) v = Complex(INFINITY, INFINITY);
    return out;
}

}  // namespace

PlanewaveCoeffs planewave_coeffs(Vec3 zr, Vec3 zi, int lmax) {
    if (norm(zi) > kDoubleExpLimit) return overflowed(lmax);
    const SphereGrid grid = SphereGrid::make(planewave_grid_bandwidth(norm(zi), lmax));
    const int n = grid.rows();
    std::vector<Complex> f(grid.size());
    for (int j = 0; j < n; ++j) {
        const double st = std::sin(grid.theta[j]), ct = std::cos(grid.theta[j]);
        for (int k = 0; k < n; ++k) {
            const Vec3 x{st * std::cos(grid.phi[k]), st * std::sin(grid.phi[k]), ct};
            // e^{i x.zeta} = e^{-x.zi} (cos(x.zr) + i sin(x.zr))
            const double amp = std::exp(-dot(x, zi));
            f[grid.index(j, k)] = amp * Complex(std::cos(dot(x, zr)), std::sin(dot(x, zr)));
        }
    }
    PlanewaveCoeffs out{sht_forward(f, grid, lmax), false};
    for (const auto& v : out.coeffs.table)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) out.overflow = true;
    return out;
}

PlanewaveCoeffs conj_pair_coeffs(const Xi& xi, const ComplexFrequency& zeta, int lmax) {
    if (norm(zeta.im) > kDoubleExpLimit) return overflowed(lmax);
    // a*_{l,m} = integral e^{-ix.(xi+zeta)} Y_l^m = conj(forward(conj(samples)))
    const Vec3 wr = xi.v + zeta.re;  // e^{-ix.(xi+zeta)} = e^{x.zi} e^{-i x.wr}
    const SphereGrid grid = SphereGrid::make(planewave_grid_bandwidth(norm(zeta.im), lmax));
    const int n = grid.rows();
    std::vector<Complex> fc(grid.size());  // conj of the samples
    for (int j = 0; j < n; ++j) {
        const double st = std::sin(grid.theta[j]), ct = std::cos(grid.theta[j]);
        for (int k = 0; k < n; ++k) {
            const Vec3 x{st * std::cos(grid.phi[k]), st * std::sin(grid.phi[k]), ct};
            const double amp = std::exp(dot(x, zeta.im));
            fc[grid.index(j, k)] = amp * Complex(std::cos(dot(x, wr)), std::sin(dot(x, wr)));
        }
    }
    PlanewaveCoeffs out{sht_forward(fc, grid, lmax), false};
    for (auto& v : out.coeffs.table) {
        v = std::conj(v);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) out.overflow = true;
    }
    return out;
}

namespace {

template <class Real>
PairingResult pair_engine(const Xi& xi, const ComplexFrequency& zeta,
                          const std::vector<double>& weight, int lmax,
                          const std::function<Complex(const Vec3&)>* factor) {
    const double kappa = norm(zeta.im);
    const double exp_limit = sizeof(Real) > sizeof(double) ? 11000.0 : 700.0;
    if (kappa > exp_limit) {
        PairingResult res;
        res.value = Complex(INFINITY, INFINITY);
        res.abs_sum = INFINITY;
        res.overflow = true;
        return res;
    }
    const int bandwidth = planewave_grid_bandwidth(kappa, lmax);
    const int n = 2 * bandwidth;
    const Real pi = Ops<Real>::pi();

    // b samples e^{ix.zeta}; a* samples e^{-ix.(xi+zeta)}
    const Vec3 zr = zeta.re, zi = zeta.im, wr = xi.v + zeta.re;

    const std::size_t ncoef = static_cast<std::size_t>(lmax + 1) * (lmax + 1);
    std::vector<RC<Real>> bc(ncoef), ac(ncoef);

    std::vector<RC<Real>> uphi(n);  // e^{-i phi_k}
    for (int k = 0; k < n; ++k) {
        const Real phi = pi * Real(k) / Real(bandwidth);
        uphi[k] = {Ops<Real>::cos(phi), -Ops<Real>::sin(phi)};
    }

    std::vector<Real> plm;
    std::vector<RC<Real>> fb(2 * lmax + 1), fa(2 * lmax + 1);

    for (int j = 0; j < n; ++j) {
        const Real theta = pi * Real(2 * j + 1) / Real(4 * bandwidth);
        const Real st = Ops<Real>::sin(theta), ct = Ops<Real>::cos(theta);
        const Real w = row_weight_t<Real>(bandwidth, theta);

        for (auto& v : fb) v = {};
        for (auto& v : fa) v = {};
        for (int k = 0; k < n; ++k) {
            const Real cphi = uphi[k].re, sphi = -uphi[k].im;
            const Real x0 = st * cphi, x1 = st * sphi, x2 = ct;
            const Real xdotzi = x0 * Real(zi.x) + x1 * Real(zi.y) + x2 * Real(zi.z);
            const Real xdotzr = x0 * Real(zr.x) + x1 * Real(zr.y) + x2 * Real(zr.z);
            const Real xdotwr = x0 * Real(wr.x) + x1 * Real(wr.y) + x2 * Real(wr.z);

            const Real eb = Ops<Real>::exp(-xdotzi);
            RC<Real> vb{eb * Ops<Real>::cos(xdotzr), eb * Ops<Real>::sin(xdotzr)};
            if (factor) {
                const Complex fv = (*factor)(Vec3{static_cast<double>(x0), static_cast<double>(x1),
                                                  static_cast<double>(x2)});
                vb = vb * RC<Real>{Real(fv.real()), Real(fv.imag())};
            }
            const Real ea = Ops<Real>::exp(xdotzi);
            const RC<Real> va{ea * Ops<Real>::cos(xdotwr), -ea * Ops<Real>::sin(xdotwr)};

            // F_m accumulation: b pairs with conj(Y) (phase e^{-im phi}),
            // a* pairs with Y (phase e^{+im phi}).
            fb[lmax] = fb[lmax] + vb;
            fa[lmax] = fa[lmax] + va;
            RC<Real> bp = vb, bn = vb, ap = va, an = va;
            const RC<Real> u = uphi[k], uc = conj(uphi[k]);
            for (int m = 1; m <= lmax; ++m) {
                bp = bp * u;
                bn = bn * uc;
                ap = ap * uc;  // note: Y carries e^{+im phi}
                an = an * u;
                fb[lmax + m] = fb[lmax + m] + bp;
                fb[lmax - m] = fb[lmax - m] + bn;
                fa[lmax + m] = fa[lmax + m] + ap;
                fa[lmax - m] = fa[lmax - m] + an;
            }
        }

        legendre_row_t<Real>(lmax, ct, st, plm);
        for (int l = 0; l <= lmax; ++l)
            for (int m = -l; m <= l; ++m) {
                Real p = plm[static_cast<std::size_t>(l) * (l + 1) / 2 + std::abs(m)];
                if (m < 0 && (m & 1)) p = -p;
                const Real wp = w * p;
                const std::size_t id = static_cast<std::size_t>(l) * l + l + m;
                bc[id] = bc[id] + wp * fb[lmax + m];
                ac[id] = ac[id] + wp * fa[lmax + m];
            }
    }

    PairingResult res;
    RC<Real> value{};
    double abs_sum = 0.0;
    for (int l = 0; l <= lmax; ++l) {
        const Real wl = Real(weight[l]);
        for (int m = -l; m <= l; ++m) {
            const std::size_t id = static_cast<std::size_t>(l) * l + l + m;
            value = value + wl * (ac[id] * bc[id]);
            const double am = std::sqrt(static_cast<double>(ac[id].re * ac[id].re + ac[id].im * ac[id].im));
            const double bm = std::sqrt(static_cast<double>(bc[id].re * bc[id].re + bc[id].im * bc[id].im));
            abs_sum += std::abs(weight[l]) * am * bm;
        }
    }
    res.value = Complex(static_cast<double>(value.re), static_cast<double>(value.im));
    res.abs_sum = abs_sum;
    res.overflow = !std::isfinite(res.value.real()) || !std::isfinite(res.value.imag()) ||
                   !std::isfinite(abs_sum);
    return res;
}

}  // namespace

namespace {

PairingResult pair_dispatch(const Xi& xi, const ComplexFrequency& zeta,
                            const std::vector<double>& weight, int lmax,
                            const std::function<Complex(const Vec3&)>* factor,
                            PairingPrecision prec) {
    if (static_cast<int>(weight.size()) != lmax + 1)
        throw std::invalid_argument("pair_planewaves: need one weight per degree");
    if (prec == PairingPrecision::Auto)
        prec = norm(zeta.im) > 26.0 ? PairingPrecision::Quad : PairingPrecision::Extended;
    switch (prec) {
        case PairingPrecision::Double:
            return pair_engine<double>(xi, zeta, weight, lmax, factor);
        case PairingPrecision::Extended:
            return pair_engine<long double>(xi, zeta, weight, lmax, factor);
        default:
            return pair_engine<__float128>(xi, zeta, weight, lmax, factor);
    }
}

}  // namespace

PairingResult pair_planewaves(const Xi& xi, const ComplexFrequency& zeta,
                              const std::vector<double>& weight, int lmax,
                              PairingPrecision prec) {
    return pair_dispatch(xi, zeta, weight, lmax, nullptr, prec);
}

PairingResult pair_planewaves_factored(const Xi& xi, const ComplexFrequency& zeta,
                                       const std::vector<double>& weight, int lmax,
                                       const std::function<Complex(const Vec3&)>& factor,
                                       PairingPrecision prec) {
    return pair_dispatch(xi, zeta, weight, lmax, &factor, prec);
}

}  // namespace eit3d
