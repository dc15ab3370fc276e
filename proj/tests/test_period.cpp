#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "minklab/numerics.hpp"
#include "minklab/period.hpp"

using namespace mink;
using namespace mink::period;

namespace {

const moments::MomentTable& table64() {
    static moments::MomentTable t = moments::solve_moments(64, 192);
    return t;
}

BigComplex C(double re, double im, Precision p = 192) { return BigComplex(re, im, p); }

}  // namespace

TEST_CASE("power series values at the center and boundary") {
    const auto& t = table64();
    auto zero = G_power_series(C(0, 0), t);
    CHECK(abs(zero.value.re - BigReal(0.5, 192)).to_double() < 1e-20);  // m_1

    auto one = G_power_series(C(1, 0), t);
    // G(1) = sum m_s = M_1 = 1.5, reachable only up to the true tail beyond
    // the table order; the reported err must cover the distance
    CHECK(std::fabs(one.value.re.to_double() - 1.5) < 3e-3);
    CHECK(abs(one.value.re - BigReal(1.5, 192)) <= one.err);

    // alternating boundary sum, cross-checked against the rational series
    // (both routes agree to 1e-19 and are stable in the table order)
    auto alt = G_power_series(C(-1, 0), t);
    CHECK(alt.value.re.to_double() == doctest::Approx(0.3207799321822138).epsilon(1e-13));
    auto alt_rat = G_rational_series(C(-1, 0), t);
    CHECK(abs(alt.value - alt_rat.value).to_double() < 1e-19);

    CHECK_THROWS_AS(G_power_series(C(1.001, 0), t), std::domain_error);
}

TEST_CASE("rational series domain, overlap, and decay") {
    const auto& t = table64();
    auto a = G_rational_series(C(0, 0), t);
    auto b = G_power_series(C(0, 0), t);
    CHECK(abs(a.value - b.value).to_double() < 1e-30);

    CHECK_THROWS_AS(G_rational_series(C(0.1, 0.5), t), std::domain_error);

    // far-field decay G(z) = o(1): |G(-1e6)| ~ 1e-6
    auto far = G_rational_series(C(-1e6, 0), t);
    CHECK(abs(far.value).to_double() < 1e-3);
    auto far2 = G_rational_series(C(-40, 25), t);
    CHECK(abs(far2.value).to_double() < 0.05);
}

TEST_CASE("quadrature route: cut plane and error reporting") {
    const auto& t = table64();
    auto q0 = G_quadrature(C(0, 0), 16, 192);
    CHECK(std::fabs(q0.value.re.to_double() - 0.5) <= q0.err.to_double() + 1e-9);

    CHECK_THROWS_AS(G_quadrature(C(2, 0), 12, 96), std::domain_error);
    CHECK(G_quadrature(C(1.2, 1e-4), 10, 96).near_cut_warning);
    CHECK_FALSE(G_quadrature(C(-3, 0.5), 10, 96).near_cut_warning);

    // overlap against the power series at z = i
    auto qi = G_quadrature(C(0, 1), 14, 192);
    auto pi_ = G_power_series(C(0, 1), t);
    CHECK(abs(qi.value - pi_.value) <= qi.err + pi_.err);
}

TEST_CASE("triple-method agreement within reported errors") {
    const auto& t = table64();
    std::mt19937_64 rng(40);
    std::uniform_real_distribution<double> ur(-3.0, 0.0), ui(-3.0, 3.0);
    int quad_checked = 0;
    for (int i = 0; i < 50; i++) {
        double zr = ur(rng), zi = ui(rng);
        BigComplex z = C(zr, zi);
        auto rat = G_rational_series(z, t);
        if (zr * zr + zi * zi <= 1.0) {
            auto pow = G_power_series(z, t);
            CHECK(abs(rat.value - pow.value) <= rat.err + pow.err);
        }
        if (i % 5 == 0) {  // quadrature is the slow route; sample it
            auto quad = G_quadrature(z, 13, 192);
            CHECK(abs(rat.value - quad.value) <= rat.err + quad.err);
            quad_checked++;
        }
    }
    CHECK(quad_checked == 10);
}

TEST_CASE("three-term residuals: merged identity at the arithmetic floor") {
    const auto& t = table64();
    for (auto zv : {C(-1.5, 0), C(-1, 1), C(-2.5, 0.5), C(-1.25, -0.75)}) {
        auto r = check_three_term(zv, t);
        CHECK(r.merged.to_double() < 1e-50);
        CHECK(r.contraction_constant.to_double() == doctest::Approx(0.5822405264).epsilon(1e-9));
    }
    CHECK_THROWS_AS(check_three_term(C(-0.5, 0), t), std::domain_error);
}

TEST_CASE("three-term residuals: law-specific grids reach 1e-20") {
    const auto& t = table64();
    // symmetry law near z = -1 (both its arguments stay near 0)
    for (int k = 0; k < 5; k++) {
        auto r = check_three_term(C(-1.0 - 0.004 * (k + 1), 0.005 * k), t);
        CHECK(r.symmetry.to_double() < 1e-20);
    }
    // the three-term equation at large negative z (its embedded symmetry argument
    // approaches -1)
    for (double zr : {-12.0, -20.0, -33.0}) {
        auto r = check_three_term(C(zr, 0.5), t);
        CHECK(r.three_term.to_double() < 1e-20);
    }
    // at generic points both laws sit on the truncated-moment error instead
    auto g = check_three_term(C(-1.5, 0), t);
    CHECK(g.three_term.to_double() < 1e-13);
    CHECK(g.symmetry.to_double() < 1e-14);
    auto g2 = check_three_term(C(-1, 1), t);
    CHECK(g2.three_term.to_double() < 1e-12);
    CHECK(g2.symmetry.to_double() < 1e-10);
}

TEST_CASE("one-sided derivatives of G at z=1 stabilize") {
    const auto& t = table64();
    // finite differences of the power series from the left stabilize
    Precision p = 192;
    BigReal h(1.0 / 4096, p);
    auto g = [&](const BigReal& x) { return G_power_series(BigComplex(x, BigReal(0, p)), t).value.re; };
    BigReal one(1, p);
    BigReal d1 = (g(one) - g(one - h)) / h;
    BigReal d2 = (g(one) - g(one - h.mul_2si(-1))) / h.mul_2si(-1);
    BigReal d3 = (g(one) - g(one - h.mul_2si(-2))) / h.mul_2si(-2);
    CHECK(abs(d2 - d1).to_double() > abs(d3 - d2).to_double());  // differences shrink
    CHECK(abs(d3 - d2).to_double() < 0.01);
}

TEST_CASE("uniqueness contraction bound") {
    Precision p = 128;
    BigReal bound = contraction_map_bound(p);
    BigReal c2 = polylog_half(2, p);
    CHECK(bound <= c2 + BigReal(1e-20, p));
    CHECK(bound < BigReal(1, p));
    CHECK(bound.to_double() == doctest::Approx(c2.to_double()).epsilon(1e-12));
}

TEST_CASE("Eisenstein series: value at i, periodicity, quasi-modularity") {
    Precision p = 192;
    int terms = 64;
    // G_1(i) = pi (fixed point of the quasi-modular law)
    BigComplex gi = eisenstein_G1(BigComplex(0.0, 1.0, p), terms);
    CHECK(abs(gi.re - BigReal::pi(p)).to_double() < 1e-40);
    CHECK(abs(gi.im).to_double() < 1e-40);

    // periodicity
    BigComplex z(0.3, 1.2, p);
    BigComplex lhs = eisenstein_G1(z + BigComplex(1.0, 0.0, p), terms);
    BigComplex rhs = eisenstein_G1(z, terms);
    CHECK(abs(lhs - rhs).to_double() < 1e-45);

    // G_1(-1/z) = z^2 G_1(z) - 2 pi i z at z = i and a generic point
    auto quasi = [&](const BigComplex& w) {
        BigComplex minus_inv = -inverse(w);
        BigComplex l = eisenstein_G1(minus_inv, 3 * terms);
        BigComplex two_pi_i(BigReal(0, p), BigReal::pi(p).mul_2si(1));
        BigComplex r = w * w * eisenstein_G1(w, terms) - two_pi_i * w;
        return abs(l - r).to_double();
    };
    CHECK(quasi(BigComplex(0.0, 1.0, p)) < 1e-10);
    CHECK(quasi(BigComplex(0.35, 1.05, p)) < 1e-10);

    // conjugate reflection for the lower half-plane
    BigComplex low = eisenstein_G1(conj(z), terms);
    CHECK(abs(low - conj(eisenstein_G1(z, terms))).to_double() < 1e-45);

    CHECK_THROWS_AS(eisenstein_G1(BigComplex(0.1, 0.0, p), terms), std::domain_error);
    CHECK_THROWS_AS(eisenstein_G1(BigComplex(0.1, 0.01, p), terms), ConvergenceError);
}

TEST_CASE("(i/2pi) G_1 satisfies the three-term equation in the upper half-plane") {
    Precision p = 192;
    int terms = 96;
    BigComplex i2pi(BigReal(0, p), BigReal(1, p) / BigReal::pi(p).mul_2si(1));
    auto H = [&](const BigComplex& w) { return i2pi * eisenstein_G1(w, terms); };
    auto residual = [&](const BigComplex& z) {
        BigComplex one(BigReal(1, p), BigReal(0, p));
        BigComplex two(BigReal(2, p), BigReal(0, p));
        BigComplex w = one / (one - z);
        return abs(-w - w * w * H(w) + two * H(z + one) - H(z)).to_double();
    };
    CHECK(residual(BigComplex(-1.0, 2.0, p)) < 1e-10);
    for (double re : {-2.0, -0.4, 0.7}) {
        CHECK(residual(BigComplex(re, 1.0, p)) < 1e-10);
        CHECK(residual(BigComplex(re, 1.7, p)) < 1e-10);
    }
}
