#pragma once

#include <vector>

#include "minklab/bigreal.hpp"
#include "minklab/linalg.hpp"
#include "minklab/moments.hpp"

namespace mink::spectral {

// Truncation of the infinite matrix e_{s,L} = (-1)^{L-1} c_{L+s} C(L+s-1, s-1).
struct OperatorMatrix {
    int order = 0;
    Precision prec = kDefaultPrec;
    DenseMatrix e;  // 0-based storage of the 1-based entries

    const BigReal& at(int s, int L) const { return e.at(s - 1, L - 1); }
};

OperatorMatrix build_operator(int order, Precision prec);

struct EigenPair {
    BigReal lambda;
    std::vector<BigReal> coeffs;  // m^(lambda), normalized m_1 = 1
    BigReal residual;
    int digits_stable = 0;  // agreement of lambda between orders N and N+16
    bool collision = false; // another seed converged to the same eigenvalue
};

// k largest-|lambda| eigenpairs of the order-N truncation. Seeds come from a
// double-precision QR pass on a small truncation (the full-order matrix has
// entries ~ c C(2N-1,N-1), far beyond double significance), then inverse
// iteration at full precision; every lambda is re-derived at order N+16 to
// count stable digits.
std::vector<EigenPair> eigenvalues(int order, Precision prec, int count);

// || m + E m - c ||_inf: the solved moments against the operator route.
BigReal moment_vector_consistency(const moments::MomentTable& t, const OperatorMatrix& E);

// G_lambda(z): power series on |z| <= 1, telescoped rational series on Re z <= 0.
BigComplex G_lambda_eval(const EigenPair& pair, const BigComplex& z, Precision prec);

// Kernel K(s,t) = J_1(2 sqrt(st)) / (psi(s) psi(t)), psi = sqrt(2 e^s - 1).
struct KernelSample {
    BigReal s, t, K, psi_s, psi_t;
};
KernelSample kernel_K(const BigReal& s, const BigReal& t, Precision prec);

// Relative residual of m(-s) = (2e^s - 1) int_0^inf m'(-t) J_0(2 sqrt(st)) dt,
// integrated to T_cut with the tail bounded by the C^sqrt(t) envelope.
struct BesselResidual {
    BigReal relative_residual, tail_bound;
};
BesselResidual bessel_equation_residual(const BigReal& s, const moments::MomentTable& t,
                                        double T_cut, Precision prec);

// Residuals of the integrated-by-parts identity and of the two expressions
// for ell(s).
struct HankelResiduals {
    BigReal integral_identity, ell_consistency;
};
HankelResiduals hankel_identity_residual(const BigReal& s, const moments::MomentTable& t, Precision prec);

// ell(s) = (sum_n e^{-s/n} 2^{-n} - 1) / (sqrt(s) psi(s)).
BigReal ell_series(const BigReal& s, Precision prec);

}  // namespace mink::spectral
