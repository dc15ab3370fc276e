#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "minklab/linalg.hpp"

using namespace mink;

TEST_CASE("solve_dense identity and diagonal") {
    Precision p = 128;
    auto I = DenseMatrix::identity(3, p);
    std::vector<BigReal> b{BigReal(1L, p), BigReal(-2L, p), BigReal(7L, p)};
    auto x = solve_dense(I, b, p);
    for (int i = 0; i < 3; i++) CHECK(abs(x[i] - b[i]).to_double() < 1e-30);

    DenseMatrix d(2, 2, p);
    d.at(0, 0) = BigReal(2L, p);
    d.at(1, 1) = BigReal(4L, p);
    std::vector<BigReal> ones{BigReal(1L, p), BigReal(1L, p)};
    auto y = solve_dense(d, ones, p);
    CHECK(abs(y[0] - BigReal(0.5, p)).to_double() < 1e-30);
    CHECK(abs(y[1] - BigReal(0.25, p)).to_double() < 1e-30);
}

TEST_CASE("solve_dense 3x3 Hilbert with known solution") {
    Precision p = 192;
    DenseMatrix h(3, 3, p);
    std::vector<BigReal> b(3, BigReal(p));
    for (int i = 0; i < 3; i++) {
        BigReal rowsum(0L, p);
        for (int j = 0; j < 3; j++) {
            h.at(i, j) = BigReal(1L, p) / BigReal(i + j + 1, p);
            rowsum += h.at(i, j);
        }
        b[i] = rowsum;  // solution is all-ones by construction
    }
    auto x = solve_dense(h, b, p);
    for (int i = 0; i < 3; i++) CHECK(abs(x[i] - BigReal(1L, p)).to_double() < 1e-45);
}

TEST_CASE("solve_dense residual bound on random well-conditioned systems") {
    Precision p = 160;
    std::mt19937_64 rng(20240517);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {8, 24, 64}) {
        DenseMatrix a(n, n, p);
        std::vector<BigReal> b(n, BigReal(p));
        for (int i = 0; i < n; i++) {
            for (int j = 0; j < n; j++) a.at(i, j) = BigReal(u(rng) + (i == j ? 4.0 : 0.0), p);
            b[i] = BigReal(u(rng), p);
        }
        auto x = solve_dense(a, b, p);
        auto ax = a.apply(x);
        BigReal res(0L, p), bn(0L, p);
        for (int i = 0; i < n; i++) {
            res = max(res, abs(ax[i] - b[i]));
            bn = max(bn, abs(b[i]));
        }
        CHECK(res <= BigReal::pow2(-(p / 2), p) * bn);
    }
}

TEST_CASE("solve_dense singular pivot error") {
    Precision p = 96;
    DenseMatrix a(2, 2, p);
    a.at(0, 0) = BigReal(1L, p);
    a.at(0, 1) = BigReal(2L, p);
    a.at(1, 0) = BigReal(2L, p);
    a.at(1, 1) = BigReal(4L, p);
    std::vector<BigReal> b{BigReal(1L, p), BigReal(1L, p)};
    CHECK_THROWS_AS(solve_dense(a, b, p), SingularMatrixError);
}

TEST_CASE("eigen_refine on small exact cases") {
    Precision p = 128;
    DenseMatrix d(2, 2, p);
    d.at(0, 0) = BigReal(2L, p);
    d.at(1, 1) = BigReal(3L, p);
    auto r = eigen_refine(d, BigReal(2.9, p), p);
    CHECK(abs(r.lambda - BigReal(3L, p)).to_double() < 1e-30);
    // eigenvector (0,1): first entry vanishes, convention falls back to max
    // entry; components are pinned only to the 2^{-prec/2} residual contract
    CHECK(abs(r.vec[1] - BigReal(1L, p)).to_double() < 1e-18);
    CHECK(abs(r.vec[0]).to_double() < 1e-18);

    DenseMatrix s(2, 2, p);
    s.at(0, 1) = BigReal(1L, p);
    s.at(1, 0) = BigReal(1L, p);
    auto r2 = eigen_refine(s, BigReal(0.9, p), p);
    CHECK(abs(r2.lambda - BigReal(1L, p)).to_double() < 1e-30);
    CHECK(abs(r2.vec[0] - BigReal(1L, p)).to_double() < 1e-18);
    CHECK(abs(r2.vec[1] - BigReal(1L, p)).to_double() < 1e-18);
    CHECK(r2.residual <= BigReal::pow2(-(p / 2), p));
}

TEST_CASE("dense_eigenvalues_double recovers known spectra") {
    // diag(1..5) under a similarity
    int n = 5;
    std::vector<double> a(n * n, 0.0);
    for (int i = 0; i < n; i++) a[i * n + i] = i + 1;
    // similarity with a shear: A <- S A S^-1, S = I + 0.7 E_{0,3}
    // (row op then inverse column op)
    for (int j = 0; j < n; j++) a[0 * n + j] += 0.7 * a[3 * n + j];
    for (int i = 0; i < n; i++) a[i * n + 3] -= 0.7 * a[i * n + 0];
    auto eig = dense_eigenvalues_double(a, n);
    REQUIRE(eig.size() == 5);
    std::vector<double> re;
    for (auto& e : eig) {
        CHECK(std::fabs(e.imag()) < 1e-9);
        re.push_back(e.real());
    }
    std::sort(re.begin(), re.end());
    for (int i = 0; i < n; i++) CHECK(re[i] == doctest::Approx(i + 1.0).epsilon(1e-9));
}

TEST_CASE("dense_eigenvalues_double complex pair") {
    // companion matrix of x^2 - 2x + 5 (roots 1 +- 2i) padded with a real row
    std::vector<double> a{2, -5, 0,
                          1, 0, 0,
                          0, 0, 7};
    auto eig = dense_eigenvalues_double(a, 3);
    REQUIRE(eig.size() == 3);
    int complex_count = 0;
    for (auto& e : eig) {
        if (std::fabs(e.imag()) > 1e-9) {
            complex_count++;
            CHECK(e.real() == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(std::fabs(e.imag()) == doctest::Approx(2.0).epsilon(1e-9));
        } else {
            CHECK(e.real() == doctest::Approx(7.0).epsilon(1e-9));
        }
    }
    CHECK(complex_count == 2);
}

TEST_CASE("dense_eigenvalues_double random matrix satisfies char poly traces") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int n = 24;
    std::vector<double> a(n * n);
    for (auto& x : a) x = u(rng);
    auto eig = dense_eigenvalues_double(a, n);
    REQUIRE(static_cast<int>(eig.size()) == n);
    // trace and Frobenius-based second trace invariants
    std::complex<double> s1 = 0, s2 = 0;
    for (auto& e : eig) {
        s1 += e;
        s2 += e * e;
    }
    double tr = 0, tr2 = 0;
    for (int i = 0; i < n; i++) {
        tr += a[i * n + i];
        for (int j = 0; j < n; j++) tr2 += a[i * n + j] * a[j * n + i];
    }
    CHECK(s1.real() == doctest::Approx(tr).epsilon(1e-8));
    CHECK(std::fabs(s1.imag()) < 1e-8);
    CHECK(s2.real() == doctest::Approx(tr2).epsilon(1e-8));
}
