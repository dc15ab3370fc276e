#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "minklab/bigreal.hpp"
#include "minklab/rational.hpp"

namespace mink {

struct PrecisionLossError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// c_L = sum_{n>=1} 2^-n n^-L = Li_L(1/2), absolute error <= 2^-prec.
BigReal polylog_half(long order, Precision prec);
// c_1..c_jmax in one pass.
std::vector<BigReal> polylog_half_table(long jmax, Precision prec);

// Ordered Bell numbers via B_L = sum_{s<L} C(L,s) B_s, B_0 = 1.
BigInt fubini_number(long n);
std::vector<BigInt> fubini_numbers(long n);

// J_0 / J_1 by the ascending series, x >= 0. Internally boosts the working
// precision to absorb the ~x*log2(e) bits of alternating cancellation, but
// refuses arguments whose cancellation exceeds prec/2 bits.
BigReal bessel_j(int order, const BigReal& x, Precision prec);

// zeta and Gamma at double accuracy (Euler-Maclaurin / Stirling+reflection).
// Throws PoleError near s = 1 (zeta pole); at nonpositive-integer s the
// gamma slot is flagged instead so that zeta alone stays usable there.
struct ZetaGamma {
    BigComplex zeta, gamma;
    bool gamma_finite = true;
};
ZetaGamma zeta_and_gamma(const BigComplex& s);

// Composite Gauss-Legendre with panel doubling; err is the last halving
// difference. Throws ConvergenceError after max_doublings.
struct PanelIntegral {
    BigReal value, err;
    int doublings = 0;
};
PanelIntegral integrate_panel(const std::function<BigReal(const BigReal&)>& f,
                              const BigReal& a, const BigReal& b, int nodes,
                              Precision prec, const BigReal& tol, int max_doublings = 14);

// Gauss-Legendre nodes/weights on [-1,1] at the given precision.
void gauss_legendre(int n, Precision prec, std::vector<BigReal>& nodes, std::vector<BigReal>& weights);

}  // namespace mink
