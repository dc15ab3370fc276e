#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "minklab/bigreal.hpp"
#include "minklab/rational.hpp"

namespace mink::qmark {

struct CfExtractionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Regular continued fraction [a0; a1, ..., ar]. Canonical form has a_r >= 2
// when r >= 1 (the trailing-1 ambiguity is folded away).
struct ContinuedFraction {
    std::vector<BigInt> quotients;

    bool is_canonical() const;
    void canonicalize();
    BigInt digit_sum() const;
};

ContinuedFraction cf_of_rational(const Rational& x);
Rational cf_value(const ContinuedFraction& cf);

// Dyadic rational num / 2^exp2 in [0,1]; num odd unless the value is 0 or 1.
struct DyadicValue {
    BigInt num;
    long exp2 = 0;

    Rational to_rational() const { return Rational(num, BigInt::pow2(exp2)); }
    void normalize();
};

// F as the alternating dyadic series over the CF digits (exact).
DyadicValue F_exact(const Rational& x);
BigReal F_eval(const Rational& x, Precision prec);
BigReal F_eval(const BigReal& x, Precision prec);
// Variant for inputs that only approximate a real to source_bits: throws
// CfExtractionError once the digits stop being trustworthy before the
// requested precision is reached.
BigReal F_eval_approx(const BigReal& x, Precision prec, Precision source_bits);

// ?(x) = 2 F(x) on [0,1].
DyadicValue qmark_exact(const Rational& x);
BigReal qmark_eval(const BigReal& x, Precision prec);

// Inverse by run-length decoding of the binary expansion.
Rational qmark_inverse_dyadic(const DyadicValue& y);
BigReal qmark_inverse(const BigReal& y, Precision prec);

// The two nontrivial solutions of ?(x) = x in (0,1)\{1/2}, by bisection.
std::pair<BigReal, BigReal> fixed_points(Precision prec);

// Residuals of the functional equation and the shift law F(x+n) = 1 - 2^-n + 2^-n F(x).
struct DistributionResiduals {
    BigReal main, shift;
};
DistributionResiduals check_distribution_eq(const Rational& x, int shift_n, Precision prec);

// 2^-n sum_k w(?^{-1}((2k+1)/2^{n+1})): pushforward of ? to Lebesgue measure.
BigReal dyadic_midpoint_quadrature(const std::function<BigReal(const BigReal&)>& w,
                                   int n, Precision prec);

// Enumerates ?^{-1}((2k+1)/2^{n+1}) for k = 0..2^n-1 as exact small fractions.
void for_each_dyadic_midpoint_preimage(int n, const std::function<void(long num, long den)>& fn);

// log 2 / (2 log golden_ratio): the Lipschitz exponent of ?.
BigReal salem_exponent(Precision prec);

}  // namespace mink::qmark
