#pragma once

#include <vector>

#include "minklab/bigreal.hpp"
#include "minklab/rational.hpp"

namespace mink::moments {

// Solved moment data: m_L = int x^L d?(x) on [0,1], M_L = int x^L dF on [0,inf),
// c_L = Li_L(1/2), B_L the ordered Bell numbers.
struct MomentTable {
    int order = 0;
    Precision prec = kDefaultPrec;
    std::vector<BigReal> m;    // m[0]=1 .. m[order]
    std::vector<BigReal> M;    // M[0]=1 .. M[order]
    std::vector<BigReal> c;    // c[1] .. c[2*order] (c[0] unused)
    std::vector<BigInt> B;     // B[0] .. B[order]
    std::vector<BigReal> err;  // err[s] = |m_s^(N) - m_s^(N+8)|, s = 1..order
};

// Truncated moment system; solves (I + E) m = c with the
// L = 0 column moved to the right-hand side, then fills M, B and the
// order-(N+8) comparison errors.
MomentTable solve_moments(int order, Precision prec);

// M_L = sum_i m_i C(L,i) B_{L-i}.
BigReal M_from_m(const MomentTable& t, int L);
// m_L = M_L - sum_{s<L} M_s C(L,s): exact inverse of the above.
BigReal m_from_M(const std::vector<BigReal>& Mlist, int L);
// M_L = sum_{s>=L} C(s-1,L-1) m_s, with a geometric tail estimate.
struct TailedValue {
    BigReal value, tail_bound;
};
TailedValue M_via_rys(const MomentTable& t, int L);

// Residuals of m_L = sum_s C(L,s)(-1)^s m_s for L = 0..order.
std::vector<BigReal> symmetry_residuals(const MomentTable& t);
// 2 m_3 + 1/2 - 3 m_2.
BigReal special_relation_residual(const MomentTable& t);

// Exponential generating functions. mgf boosts its working precision by
// ~|t| log2(e) bits for negative t to absorb the alternating cancellation.
BigReal mgf(const BigReal& t, const MomentTable& table);
BigReal mgf_derivative(const BigReal& t, const MomentTable& table);
// M(t) = mgf(t)/(2 - e^t); pole at t = log 2.
BigReal Mgf(const BigReal& t, const MomentTable& table);

// kappa = mgf(log 2)/(2 log 2) plus the normalized ratios r_L = M_L (log2)^L / L!.
struct AsymptoticReport {
    BigReal kappa;
    std::vector<BigReal> r;  // r[L] for L = 0..order
};
AsymptoticReport asymptotic_constant(const MomentTable& t);

// alpha = 1/2 / int_0^1 log2(1+x) d?(x), the integral evaluated two ways.
struct KinneyReport {
    BigReal alpha;
    BigReal series_integral;
    BigReal quadrature_integral;
    BigReal agreement;
};
KinneyReport kinney_constant(Precision prec);

}  // namespace mink::moments
