#include "doctest.h"

#include <cmath>
#include <random>

#include "eit3d/sphharm.hpp"
#include "test_support.hpp"

using namespace eit3d;

TEST_CASE("low-order harmonics match textbook values") {
    const double sqrt4pi_inv = 1.0 / std::sqrt(4.0 * M_PI);
    for (double theta : {0.2, 1.1, 2.8})
        for (double phi : {0.0, 0.7, 4.0}) {
            CHECK(ylm(0, 0, theta, phi).real() == doctest::Approx(sqrt4pi_inv).epsilon(1e-14));
            CHECK(ylm(0, 0, theta, phi).real() == doctest::Approx(0.282095).epsilon(1e-6));
            CHECK(ylm(1, 0, theta, phi).real() ==
                  doctest::Approx(std::sqrt(3.0 / (4.0 * M_PI)) * std::cos(theta)).epsilon(1e-14));
            CHECK(ylm(1, 0, theta, phi).imag() == 0.0);
        }
    // conjugation symmetry Y_{l,-m} = (-1)^m conj(Y_{l,m})
    for (int l : {3, 7})
        for (int m = 1; m <= l; ++m) {
            const Complex a = ylm(l, -m, 0.9, 1.3);
            const Complex b = std::conj(ylm(l, m, 0.9, 1.3)) * ((m % 2) ? -1.0 : 1.0);
            CHECK(std::abs(a - b) < 1e-14);
        }
    CHECK_THROWS_AS(ylm(2, 3, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("full Gram identity at B = 16, spot checks at B = 32") {
    {
        const SphereGrid g = SphereGrid::make(16);
        const int L = 15;
        for (int l = 0; l <= L; ++l)
            for (int m = -l; m <= l; ++m) {
                std::vector<Complex> samples(g.size());
                for (int j = 0; j < g.rows(); ++j)
                    for (int k = 0; k < g.rows(); ++k)
                        samples[g.index(j, k)] = ylm(l, m, g.theta[j], g.phi[k]);
                const HarmonicCoeffs c = sht_forward(samples, g, L);
                for (int lp = 0; lp <= L; ++lp)
                    for (int mp = -lp; mp <= lp; ++mp) {
                        const double expect = (l == lp && m == mp) ? 1.0 : 0.0;
                        CHECK(std::abs(c.at(lp, mp) - expect) < 1e-10);
                    }
            }
    }
    {
        const SphereGrid g = SphereGrid::make(32);
        std::mt19937 rng(5);
        std::uniform_int_distribution<int> pick_l(0, 31);
        for (int trial = 0; trial < 12; ++trial) {
            const int l = pick_l(rng);
            std::uniform_int_distribution<int> pick_m(-l, l);
            const int m = pick_m(rng);
            std::vector<Complex> samples(g.size());
            for (int j = 0; j < g.rows(); ++j)
                for (int k = 0; k < g.rows(); ++k)
                    samples[g.index(j, k)] = ylm(l, m, g.theta[j], g.phi[k]);
            const HarmonicCoeffs c = sht_forward(samples, g, 31);
            for (int lp = 0; lp <= 31; ++lp)
                for (int mp = -lp; mp <= lp; ++mp) {
                    const double expect = (l == lp && m == mp) ? 1.0 : 0.0;
                    CHECK(std::abs(c.at(lp, mp) - expect) < 1e-10);
                }
        }
    }
}

TEST_CASE("round trip is the identity on band-limited input") {
    for (int B : {8, 32, 64}) {
        const SphereGrid g = SphereGrid::make(B);
        const int L = B - 1;
        std::mt19937 rng(41 + B);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        HarmonicCoeffs c = HarmonicCoeffs::zero(L);
        for (auto& v : c.table) v = Complex(u(rng), u(rng));
        const auto samples = sht_inverse(c, g);
        const HarmonicCoeffs back = sht_forward(samples, g, L);
        double worst = 0.0;
        for (std::size_t i = 0; i < c.table.size(); ++i)
            worst = std::max(worst, std::abs(back.table[i] - c.table[i]));
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("forward transform of simple functions") {
    const SphereGrid g = SphereGrid::make(12);
    std::vector<Complex> ones(g.size(), Complex(1.0));
    const HarmonicCoeffs c = sht_forward(ones, g, 11);
    CHECK(c.at(0, 0).real() == doctest::Approx(std::sqrt(4.0 * M_PI)).epsilon(1e-13));
    for (int l = 1; l <= 11; ++l)
        for (int m = -l; m <= l; ++m) CHECK(std::abs(c.at(l, m)) < 1e-12);

    std::vector<Complex> y32(g.size());
    for (int j = 0; j < g.rows(); ++j)
        for (int k = 0; k < g.rows(); ++k) y32[g.index(j, k)] = ylm(3, 2, g.theta[j], g.phi[k]);
    const HarmonicCoeffs c2 = sht_forward(y32, g, 11);
    for (int l = 0; l <= 11; ++l)
        for (int m = -l; m <= l; ++m) {
            const double expect = (l == 3 && m == 2) ? 1.0 : 0.0;
            CHECK(std::abs(c2.at(l, m) - expect) < 1e-12);
        }
}

TEST_CASE("Parseval on band-limited input") {
    const SphereGrid g = SphereGrid::make(32);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    HarmonicCoeffs c = HarmonicCoeffs::zero(31);
    for (auto& v : c.table) v = Complex(u(rng), u(rng));
    const auto f = sht_inverse(c, g);
    double coeff_sum = 0.0;
    for (const auto& v : c.table) coeff_sum += std::norm(v);
    double quad_sum = 0.0;
    for (int j = 0; j < g.rows(); ++j)
        for (int k = 0; k < g.rows(); ++k) quad_sum += g.weight[j] * std::norm(f[g.index(j, k)]);
    CHECK(coeff_sum == doctest::Approx(quad_sum).epsilon(1e-9));
}

TEST_CASE("plane wave at zeta = 0 and real zeta (spherical Bessel oracle)") {
    {
        const PlanewaveCoeffs pw = planewave_coeffs(Vec3{}, Vec3{}, 6);
        CHECK(!pw.overflow);
        CHECK(pw.coeffs.at(0, 0).real() == doctest::Approx(std::sqrt(4.0 * M_PI)).epsilon(1e-12));
        for (int l = 1; l <= 6; ++l)
            for (int m = -l; m <= l; ++m) CHECK(std::abs(pw.coeffs.at(l, m)) < 1e-12);
    }
    const Vec3 k{1.3, -0.4, 2.2};
    const double kmag = norm(k);
    const int L = 10;
    const PlanewaveCoeffs pw = planewave_coeffs(k, Vec3{}, L);
    CHECK(!pw.overflow);
    const double kt = std::acos(k.z / kmag);
    const double kp = std::atan2(k.y, k.x);
    for (int l = 0; l <= L; ++l) {
        const Complex il = std::pow(Complex(0.0, 1.0), l);
        const double jl = oracle::spherical_bessel_j(l, kmag);
        for (int m = -l; m <= l; ++m) {
            const Complex expect = 4.0 * M_PI * il * jl * std::conj(ylm(l, m, kt, kp));
            CHECK(std::abs(pw.coeffs.at(l, m) - expect) < 1e-10);
        }
    }
}

TEST_CASE("degree projection of a null-frequency plane wave") {
    // For zeta.zeta = 0 the degree-l part of e^{ix.zeta} on the sphere is
    // exactly (i^l / l!) (x.zeta)^l; checked at scattered points.
    const Vec3 zr{3.0, 1.0, 0.5};
    Vec3 zi = normalized(cross(zr, Vec3{0.0, 0.0, 1.0})) * norm(zr);
    const int L = 14;
    const PlanewaveCoeffs pw = planewave_coeffs(zr, zi, L);
    REQUIRE(!pw.overflow);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const Vec3 x = normalized(Vec3{u(rng), u(rng), u(rng) + 1.2});
        const double theta = std::acos(x.z);
        const double phi = std::atan2(x.y, x.x);
        const Complex xz(dot(x, zr), dot(x, zi));
        Complex power(1.0);
        double factorial = 1.0;
        for (int l = 0; l <= L; ++l) {
            Complex series = 0.0;
            for (int m = -l; m <= l; ++m) series += pw.coeffs.at(l, m) * ylm(l, m, theta, phi);
            const Complex expect = std::pow(Complex(0.0, 1.0), l) * power / factorial;
            if (std::abs(expect) > 1e-6)  // well-conditioned degrees only
                CHECK(std::abs(series - expect) < 1e-8 * std::abs(expect) + 1e-12);
            power *= xz;
            factorial *= l + 1.0;
        }
    }
}

TEST_CASE("conjugate-pair coefficients") {
    {
        const PlanewaveCoeffs a = conj_pair_coeffs(Xi{{0, 0, 0}}, ComplexFrequency{}, 4);
        CHECK(a.coeffs.at(0, 0).real() == doctest::Approx(std::sqrt(4.0 * M_PI)).epsilon(1e-12));
        for (int l = 1; l <= 4; ++l)
            for (int m = -l; m <= l; ++m) CHECK(std::abs(a.coeffs.at(l, m)) < 1e-12);
    }
    // real xi + zeta reduces to the conjugated spherical Bessel expansion
    const Xi xi{{2.0, 0.5, -1.0}};
    const ComplexFrequency zeta{{-1.0, 0.25, 0.5}, {0.0, 0.0, 0.0}};
    const Vec3 w = xi.v + zeta.re;
    const double wmag = norm(w);
    const int L = 8;
    const PlanewaveCoeffs a = conj_pair_coeffs(xi, zeta, L);
    const double wt = std::acos(w.z / wmag);
    const double wp = std::atan2(w.y, w.x);
    for (int l = 0; l <= L; ++l) {
        const Complex mil = std::pow(Complex(0.0, -1.0), l);
        const double jl = oracle::spherical_bessel_j(l, wmag);
        for (int m = -l; m <= l; ++m) {
            // expansion of e^{-ix.w} against Y_l^m: 4 pi (-i)^l j_l Y_l^m(w_hat)
            const Complex expect = 4.0 * M_PI * mil * jl * ylm(l, m, wt, wp);
            CHECK(std::abs(a.coeffs.at(l, m) - expect) < 1e-10);
        }
    }
}

TEST_CASE("pairing reproduces the direct sphere quadrature for moderate bands") {
    // sum_{l,m} a*_{l,m} b_{l,m} should equal the quadrature of
    // e^{-ix.(xi+zeta)} e^{ix.zeta} once the band captures both factors.
    const Xi xi{{3.0, 0.0, 0.0}};
    const FrequencyPair pair = make_zeta(xi, 6.0, 0.3);
    const int L = 26;
    const PlanewaveCoeffs b = planewave_coeffs(pair.zeta.re, pair.zeta.im, L);
    const PlanewaveCoeffs a = conj_pair_coeffs(xi, pair.zeta, L);
    Complex coeff_sum = 0.0;
    for (std::size_t i = 0; i < a.coeffs.table.size(); ++i)
        coeff_sum += a.coeffs.table[i] * b.coeffs.table[i];

    const SphereGrid g = SphereGrid::make(40);
    Complex quad = 0.0;
    for (int j = 0; j < g.rows(); ++j)
        for (int k = 0; k < g.rows(); ++k) {
            const double st = std::sin(g.theta[j]), ct = std::cos(g.theta[j]);
            const Vec3 x{st * std::cos(g.phi[k]), st * std::sin(g.phi[k]), ct};
            // product e^{-ix.(xi+zeta)} e^{ix.zeta} = e^{-ix.xi}
            quad += g.weight[j] * Complex(std::cos(dot(x, xi.v)), -std::sin(dot(x, xi.v)));
        }
    CHECK(std::abs(coeff_sum - quad) < 1e-8 * std::abs(quad));

    // the engine path agrees with the explicit coefficient pairing
    std::vector<double> unit_weights(L + 1, 1.0);
    for (auto p : {PairingPrecision::Double, PairingPrecision::Extended, PairingPrecision::Quad}) {
        const PairingResult pr = pair_planewaves(xi, pair.zeta, unit_weights, L, p);
        CHECK(!pr.overflow);
        CHECK(std::abs(pr.value - coeff_sum) < 1e-9 * (1.0 + std::abs(coeff_sum)));
    }
}

TEST_CASE("plane-wave overflow is flagged, not thrown") {
    const PlanewaveCoeffs pw = planewave_coeffs(Vec3{1, 0, 0}, Vec3{0, 0, 800.0}, 2);
    CHECK(pw.overflow);
}
