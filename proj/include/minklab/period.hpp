#pragma once

#include "minklab/bigreal.hpp"
#include "minklab/moments.hpp"

namespace mink::period {

enum class Method { PowerSeries, RationalSeries, Quadrature };

struct PeriodEvaluation {
    BigComplex z, value;
    Method method = Method::PowerSeries;
    BigReal err;
    bool near_cut_warning = false;
};

// G(z) = sum_{L>=1} m_L z^{L-1} on |z| <= 1.
PeriodEvaluation G_power_series(const BigComplex& z, const moments::MomentTable& t);
// -sum_n 2^-n [(z-n)^-1 + (z-n)^-2 G(1/(z-n))] on Re z <= 0.
PeriodEvaluation G_rational_series(const BigComplex& z, const moments::MomentTable& t);
// Dyadic-midpoint quadrature of 2 int_0^1 x/(1-xz) dF in the cut plane C \ (1,inf).
PeriodEvaluation G_quadrature(const BigComplex& z, int n, Precision prec);
// Route chosen by argument location.
PeriodEvaluation G_eval(const BigComplex& z, const moments::MomentTable& t);

// Residuals of the merged equation, the three-term equation, and the
// symmetry law, plus the uniqueness contraction constant pi^2/12 - log^2(2)/2.
struct ThreeTermResiduals {
    BigReal merged;      // 1/z + z^-2 G(1/z) + 2G(z+1) - G(z)
    BigReal three_term;  // -1/(1-z) - (1-z)^-2 G(1/(1-z)) + 2G(z+1) - G(z)
    BigReal symmetry;    // G(z+1) + z^-2 G(1/z + 1) + 1/z
    BigReal contraction_constant;
};
ThreeTermResiduals check_three_term(const BigComplex& z, const moments::MomentTable& t);

// Weight-2 Eisenstein q-series pi^2/3 - 8 pi^2 sum sigma_1(n) q^n; the lower
// half-plane uses the conjugate reflection.
BigComplex eisenstein_G1(const BigComplex& z, int terms);

// Sup-norm bound of the homogeneous map applied to 1 on [-1,0]; must come out
// below the contraction constant.
BigReal contraction_map_bound(Precision prec);

}  // namespace mink::period
