#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "minklab/moments.hpp"
#include "minklab/numerics.hpp"
#include "minklab/spectral.hpp"

using namespace mink;
using namespace mink::spectral;

TEST_CASE("operator matrix entries") {
    Precision p = 192;
    auto E = build_operator(8, p);
    // e_11 = c_2, e_12 = -c_3, e_22 = -3 c_4
    CHECK(abs(E.at(1, 1) - polylog_half(2, p)).to_double() < 1e-55);
    CHECK(abs(E.at(1, 2) + polylog_half(3, p)).to_double() < 1e-55);
    CHECK(abs(E.at(2, 2) + BigReal(3, p) * polylog_half(4, p)).to_double() < 1e-55);
    CHECK(E.at(1, 1).to_double() == doctest::Approx(0.5822405264).epsilon(1e-9));

    // column signs alternate as (-1)^{L-1}; |entry| <= c_2 C(L+s-1, s-1)
    BigReal c2 = polylog_half(2, p);
    for (int s = 1; s <= 8; s++)
        for (int L = 1; L <= 8; L++) {
            CHECK(E.at(s, L).sign() == (L % 2 ? 1 : -1));
            CHECK(abs(E.at(s, L)) <= c2 * BigReal(BigInt::binomial(L + s - 1, s - 1), p));
        }
}

TEST_CASE("four eigenvalues match the published digits, stable in the order") {
    auto eigs = eigenvalues(96, 192, 4);
    REQUIRE(eigs.size() == 4);
    // all printed digits of the table (printed values truncate toward zero,
    // so compare within one unit of the last printed digit)
    CHECK(std::fabs(eigs[0].lambda.to_double() - 0.25553210) < 1e-8);
    CHECK(std::fabs(eigs[1].lambda.to_double() + 0.08892666) < 1e-8);
    CHECK(std::fabs(eigs[2].lambda.to_double() - 0.03261586) < 1e-8);
    CHECK(std::fabs(eigs[3].lambda.to_double() + 0.01217621) < 1e-8);
    // deeper digits frozen from the refinement itself (stable under N and prec)
    CHECK(eigs[0].lambda.to_double() == doctest::Approx(0.2555321057192290).epsilon(1e-15));
    for (auto& e : eigs) {
        CHECK(e.digits_stable >= 9);
        CHECK(!e.collision);
        CHECK(e.residual.to_double() < std::pow(2.0, -96.0));
        CHECK(abs(e.coeffs[0] - BigReal(1, 192)).to_double() < 1e-40);  // m_1 = 1
    }
    // signs alternate and the spectral bound pi^2/12 - log^2 2 holds
    double bound = M_PI * M_PI / 12 - std::log(2.0) * std::log(2.0);
    CHECK(bound == doctest::Approx(0.342014).epsilon(1e-6));
    for (size_t i = 0; i < eigs.size(); i++) {
        CHECK(eigs[i].lambda.sign() == (i % 2 ? -1 : 1));
        CHECK(std::fabs(eigs[i].lambda.to_double()) < bound);
    }
}

TEST_CASE("eight eigenvalues: decay trend and artifact rejection") {
    auto eigs = eigenvalues(96, 192, 8);
    REQUIRE(eigs.size() == 8);
    double bound = M_PI * M_PI / 12 - std::log(2.0) * std::log(2.0);
    for (size_t i = 0; i < 8; i++) {
        CHECK(std::fabs(eigs[i].lambda.to_double()) < bound);
        CHECK(eigs[i].digits_stable >= 8);
        if (i) CHECK(abs(eigs[i].lambda) < abs(eigs[i - 1].lambda));
        CHECK(eigs[i].lambda.sign() == (i % 2 ? -1 : 1));
    }
    // lambda_n -> 0 as a trend over the computed eight
    CHECK(std::fabs(eigs[7].lambda.to_double()) < 0.01 * std::fabs(eigs[0].lambda.to_double()));
    // the deep tail frozen from the refinement (regression guard)
    CHECK(eigs[4].lambda.to_double() == doctest::Approx(0.0045815465687429).epsilon(1e-10));
    CHECK(eigs[7].lambda.to_double() == doctest::Approx(-0.0002488261895745).epsilon(1e-9));
}

TEST_CASE("moment vector solves the operator identity m + Em = c") {
    auto t = moments::solve_moments(64, 192);
    auto E = build_operator(64, 192);
    BigReal r = moment_vector_consistency(t, E);
    CHECK(r.to_double() < 1e-40);

    // sensitivity: a 1e-10 bump on m_2 must push the residual above 1e-11
    auto bumped = t;
    bumped.m[2] += BigReal(1e-10, 192);
    CHECK(moment_vector_consistency(bumped, E).to_double() > 1e-11);

    // truncation-order interplay: at order 16 the residual is bounded by the
    // solver's own truncation-error report
    auto t16 = moments::solve_moments(16, 192);
    auto E16 = build_operator(16, 192);
    double rep = 0;
    for (int s = 1; s <= 16; s++) rep = std::max(rep, t16.err[s].to_double());
    CHECK(moment_vector_consistency(t16, E16).to_double() < rep);
}

TEST_CASE("dyadic eigenfunctions satisfy their three-term equation") {
    Precision p = 192;
    auto eigs = eigenvalues(96, p, 4);
    BigComplex one(BigReal(1, p), BigReal(0, p));
    auto eq15_residual = [&](const EigenPair& pair, const BigComplex& z) {
        BigComplex lhs = G_lambda_eval(pair, z + one, p);
        lhs += lhs;
        BigComplex lam(pair.lambda.round_to(p), BigReal(0, p));
        BigComplex rhs = G_lambda_eval(pair, z, p) +
                         inverse(lam * z * z) * G_lambda_eval(pair, inverse(z), p);
        return abs(lhs - rhs).to_double();
    };
    // normalization m_1 = 1 at z = 0
    for (auto& pair : eigs)
        CHECK(abs(G_lambda_eval(pair, BigComplex(0.0, 0.0, p), p).re - BigReal(1, p)).to_double() < 1e-40);
    // spec example point
    CHECK(eq15_residual(eigs[0], BigComplex(-2.0, 0.0, p)) < 1e-12);
    // ten-point set in Re z <= -1, where every argument evaluates through
    // the strongly convergent routes
    const double pts[10][2] = {{-2, 0},   {-1.5, 0.4}, {-3, 1},    {-1, -0.7}, {-5, 0.3},
                               {-2.5, -2}, {-1.75, 0.2}, {-6, 0}, {-4, 4},    {-1.25, 0.1}};
    for (auto& pair : eigs)
        for (auto& q : pts)
            CHECK(eq15_residual(pair, BigComplex(q[0], q[1], p)) < 1e-10);
    // power series and telescoped continuation agree on the overlap
    for (auto& pair : eigs) {
        BigComplex a = G_lambda_eval(pair, BigComplex(-0.5, 0.0, p), p);
        // telescoped route via the functional equation: G(z) = 2G(z+1) - G(1/z)/(lam z^2)
        BigComplex z(-0.5, 0.0, p);
        BigComplex lam(pair.lambda.round_to(p), BigReal(0, p));
        BigComplex b = G_lambda_eval(pair, z + one, p);
        b += b;
        b -= inverse(lam * z * z) * G_lambda_eval(pair, inverse(z), p);
        CHECK(abs(a - b).to_double() < 1e-10);
    }
}

TEST_CASE("kernel samples") {
    Precision p = 256;
    auto k1 = kernel_K(BigReal(2.0, p), BigReal(3.0, p), p);
    auto k2 = kernel_K(BigReal(3.0, p), BigReal(2.0, p), p);
    CHECK(k1.K == k2.K);  // symmetric bit-exactly
    CHECK(kernel_K(BigReal(0, p), BigReal(5.0, p), p).K.is_zero());  // J1(0) = 0
    CHECK(k1.psi_s.to_double() == doctest::Approx(std::sqrt(2 * std::exp(2.0) - 1)).epsilon(1e-14));
    CHECK_THROWS_AS(kernel_K(BigReal(-1.0, p), BigReal(1.0, p), p), std::domain_error);
}

TEST_CASE("Hilbert-Schmidt norm of the kernel is finite") {
    // int over [0,T]^2 of K^2, via s = u^2, t = v^2; increasing in T and
    // already converged at T = 40 (values ~0.07444)
    Precision kp = 256;
    std::vector<BigReal> xs, ws;
    gauss_legendre(12, kp, xs, ws);
    auto hs2 = [&](double T) {
        int panels = (int)(std::sqrt(T) * 2.5) + 4;
        BigReal U = sqrt(BigReal(T, kp));
        BigReal w = U / BigReal(panels, kp);
        BigReal half(0.5, kp);
        BigReal total(0, kp);
        for (int pu = 0; pu < panels; pu++)
            for (int pv = 0; pv < panels; pv++) {
                BigReal mu = w * (BigReal(pu, kp) + half), mv = w * (BigReal(pv, kp) + half);
                BigReal acc(0, kp);
                for (int i = 0; i < 12; i++)
                    for (int j = 0; j < 12; j++) {
                        BigReal u = mu + w * half * xs[i], v = mv + w * half * xs[j];
                        auto K = kernel_K(u * u, v * v, kp);
                        acc += ws[i] * ws[j] * K.K * K.K * u * v;
                    }
                total += acc * w * half * w * half;
            }
        return total.mul_2si(2).to_double();
    };
    double a = hs2(10), b = hs2(20), c = hs2(40);
    CHECK(a < b);
    CHECK(b < c);
    CHECK(std::fabs(c - b) / c < 0.01);
    // ||K||_HS bounds every eigenvalue; lambda_1 = 0.2555 < 0.273
    CHECK(std::sqrt(c) == doctest::Approx(0.2728).epsilon(1e-3));
}

TEST_CASE("Bessel integral equation residuals") {
    // moments out to ~3 T_cut and precision beyond the grading of the solve
    moments::MomentTable t = moments::solve_moments(256, 448);
    Precision p = 192;
    for (double s : {0.5, 1.0, 2.0}) {
        auto r = bessel_equation_residual(BigReal(s, p), t, 80.0, p);
        CHECK(r.relative_residual.to_double() < 1e-3);
        CHECK(r.tail_bound.to_double() < 2.0);
    }
    // s -> 0+: both sides approach m(0) = 1, so the residual stays small
    auto r0 = bessel_equation_residual(BigReal(1.0 / 64, p), t, 80.0, p);
    CHECK(r0.relative_residual.to_double() < 1e-3);
    CHECK_THROWS_AS(bessel_equation_residual(BigReal(1.0, p), t, 4.0, p), std::domain_error);

    for (double s : {1.0, 4.0}) {
        auto h = hankel_identity_residual(BigReal(s, p), t, p);
        CHECK(h.integral_identity.to_double() < 1e-3);
        CHECK(h.ell_consistency.to_double() < 1e-3);
    }
    // ell(s) < 0: the series sum_n e^{-s/n} 2^{-n} stays below 1
    for (double s : {0.5, 1.0, 4.0, 9.0})
        CHECK(ell_series(BigReal(s, p), p).sign() < 0);
}
