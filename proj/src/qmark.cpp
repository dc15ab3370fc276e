#include "minklab/qmark.hpp"

#include <algorithm>

namespace mink::qmark {

bool ContinuedFraction::is_canonical() const {
    if (quotients.empty()) return false;
    if (quotients[0].sign() < 0) return false;
    for (size_t i = 1; i < quotients.size(); i++)
        if (quotients[i] < BigInt(1)) return false;
    if (quotients.size() > 1 && quotients.back() == BigInt(1)) return false;
    return true;
}

void ContinuedFraction::canonicalize() {
    if (quotients.size() > 1 && quotients.back() == BigInt(1)) {
        quotients.pop_back();
        quotients.back() += BigInt(1);
    }
}

BigInt ContinuedFraction::digit_sum() const {
    BigInt s(0);
    for (const auto& a : quotients) s += a;
    return s;
}

ContinuedFraction cf_of_rational(const Rational& x) {
    if (x.sign() < 0) throw std::domain_error("cf_of_rational: negative input");
    ContinuedFraction cf;
    BigInt p = x.num(), q = x.den();
    while (true) {
        BigInt a;
        mpz_fdiv_q(a.raw(), p.raw(), q.raw());
        BigInt r = p - a * q;
        cf.quotients.push_back(std::move(a));
        if (r.is_zero()) break;
        p = std::move(q);
        q = std::move(r);
    }
    cf.canonicalize();
    return cf;
}

Rational cf_value(const ContinuedFraction& cf) {
    if (cf.quotients.empty()) throw std::domain_error("cf_value: empty quotient list");
    // forward convergent recurrence h_k = a_k h_{k-1} + h_{k-2}
    BigInt h0(1), h1 = cf.quotients[0];
    BigInt k0(0), k1(1);
    for (size_t i = 1; i < cf.quotients.size(); i++) {
        BigInt h2 = cf.quotients[i] * h1 + h0;
        BigInt k2 = cf.quotients[i] * k1 + k0;
        h0 = std::move(h1);
        h1 = std::move(h2);
        k0 = std::move(k1);
        k1 = std::move(k2);
    }
    return Rational(h1, k1);
}

void DyadicValue::normalize() {
    if (num.is_zero()) {
        exp2 = 0;
        return;
    }
    while (!num.odd() && exp2 > 0) {
        num = num / BigInt(2);
        exp2--;
    }
}

DyadicValue F_exact(const Rational& x) {
    if (x.sign() < 0) throw std::domain_error("F_exact: negative input");
    ContinuedFraction cf = cf_of_rational(x);
    BigInt S = cf.digit_sum();
    if (S.bit_length() > 24) throw std::length_error("F_exact: continued-fraction digit sum too large for an exact dyadic");
    long E = S.to_long();
    // F = 1 - 2^-S_0 + 2^-S_1 - ... over the cumulative sums S_k, put over 2^E
    BigInt numerator = BigInt::pow2(E);
    long Sk = 0;
    int sign = -1;
    for (const auto& a : cf.quotients) {
        Sk += a.to_long();
        BigInt term = BigInt::pow2(E - Sk);
        if (sign < 0)
            numerator -= term;
        else
            numerator += term;
        sign = -sign;
    }
    DyadicValue v{std::move(numerator), E};
    v.normalize();
    return v;
}

namespace {

// Truncated alternating series straight off the CF digits; tail bound 2^-S.
BigReal F_from_cf_prefix(const ContinuedFraction& cf, Precision prec) {
    Precision wp = prec + 16;
    BigReal F(1, wp);
    long S = 0;
    int sign = -1;
    for (const auto& a : cf.quotients) {
        if (a.bit_length() > 24)
            S = prec + 64;  // the term alone is far below resolution
        else
            S += a.to_long();
        if (S > prec + 64) {
            if (sign < 0) F -= BigReal::pow2(-(prec + 64), wp);
            break;
        }
        if (sign < 0)
            F -= BigReal::pow2(-S, wp);
        else
            F += BigReal::pow2(-S, wp);
        sign = -sign;
        if (S >= prec + 8) break;
    }
    return F.round_to(prec);
}

}  // namespace

BigReal F_eval(const Rational& x, Precision prec) {
    if (x.sign() < 0) throw std::domain_error("F_eval: negative input");
    return F_from_cf_prefix(cf_of_rational(x), prec);
}

BigReal F_eval(const BigReal& x, Precision prec) {
    if (x.sign() < 0) throw std::domain_error("F_eval: negative input");
    // A BigReal holds an exact binary rational, so extraction terminates and
    // every digit is exact. Inputs meant as approximations of reals carry
    // fewer reliable digits; see F_eval_approx for the guarded variant.
    Precision wq = std::max<Precision>(prec + 16, x.prec());
    BigReal f = x.round_to(wq);
    ContinuedFraction cf;
    while (true) {
        BigInt a = f.floor_int();
        cf.quotients.push_back(a);
        f -= BigReal(a, wq);
        if (f.is_zero()) break;
        BigInt s = cf.digit_sum();
        if (s.bit_length() > 24 || s.to_long() >= prec + 8) break;
        f = BigReal(1, wq) / f;
    }
    return F_from_cf_prefix(cf, prec);
}

BigReal F_eval_approx(const BigReal& x, Precision prec, Precision source_bits) {
    if (x.sign() < 0) throw std::domain_error("F_eval: negative input");
    Precision wq = std::max<Precision>(prec + 16, x.prec());
    BigReal f = x.round_to(wq);
    ContinuedFraction cf;
    size_t qbits = 0;  // running log2 bound of the convergent denominator
    while (true) {
        BigInt a = f.floor_int();
        qbits += a.bit_length() + 1;
        // the k-th digit of an approximation is only trustworthy while
        // q_k^2 stays below the input's resolution 2^source_bits
        if (2 * qbits + 8 > static_cast<size_t>(source_bits)) {
            BigInt have = cf.digit_sum();
            if (have.bit_length() > 24 || have.to_long() < prec)
                throw CfExtractionError("F_eval: input known to fewer bits than prec demands");
            break;
        }
        cf.quotients.push_back(a);
        f -= BigReal(a, wq);
        if (f.is_zero()) break;
        BigInt s = cf.digit_sum();
        if (s.bit_length() > 24 || s.to_long() >= prec + 8) break;
        f = BigReal(1, wq) / f;
    }
    return F_from_cf_prefix(cf, prec);
}

DyadicValue qmark_exact(const Rational& x) {
    if (x.sign() < 0 || x > Rational(1)) throw std::domain_error("qmark_exact: x outside [0,1]");
    DyadicValue v = F_exact(x);
    if (v.num.is_zero()) return v;
    if (v.exp2 == 0) {  // only x = 1, F = 1/2 normalizes to... never: F <= 1/2 on [0,1]
        v.num = v.num + v.num;
        return v;
    }
    v.exp2 -= 1;
    v.normalize();
    return v;
}

BigReal qmark_eval(const BigReal& x, Precision prec) {
    if (x.sign() < 0 || x > BigReal(1, x.prec())) throw std::domain_error("qmark_eval: x outside [0,1]");
    return F_eval(x, prec).mul_2si(1);
}

namespace {

// Run-length decoding of the binary digits (msb first) into CF quotients
// [0; R1+1, R2, R3, ...]. The caller arranges the trailing-ones form.
std::vector<long> runs_to_quotients(const BigInt& bits, long e) {
    std::vector<long> q;
    q.push_back(0);
    long i = e - 1;
    long r1 = 0;
    while (i >= 0 && mpz_tstbit(bits.raw(), i) == 0) {
        r1++;
        i--;
    }
    q.push_back(r1 + 1);
    int cur = 1;
    while (i >= 0) {
        long r = 0;
        while (i >= 0 && mpz_tstbit(bits.raw(), i) == cur) {
            r++;
            i--;
        }
        q.push_back(r);
        cur = 1 - cur;
    }
    return q;
}

Rational cf_from_longs(const std::vector<long>& q) {
    ContinuedFraction cf;
    for (long a : q) cf.quotients.push_back(BigInt(a));
    cf.canonicalize();
    return cf_value(cf);
}

}  // namespace

Rational qmark_inverse_dyadic(const DyadicValue& y) {
    if (y.num.sign() < 0 || y.num > BigInt::pow2(y.exp2))
        throw std::domain_error("qmark_inverse_dyadic: y outside [0,1]");
    if (y.num.is_zero()) return Rational(0);
    if (y.num == BigInt::pow2(y.exp2)) return Rational(1);
    DyadicValue v = y;
    v.normalize();
    // trailing-ones form: flip the lowest set bit (v.num is odd here)
    BigInt s = v.num - BigInt(1);
    return cf_from_longs(runs_to_quotients(s, v.exp2));
}

BigReal qmark_inverse(const BigReal& y, Precision prec) {
    BigReal one(1, y.prec());
    if (y.sign() < 0 || y > one) throw std::domain_error("qmark_inverse: y outside [0,1]");
    // ? is Holder of exponent log2/(2 log gamma) = 0.7202..., so resolving the
    // image to 2^-prec needs the preimage carried at ~prec/0.72 bits.
    Precision wp = (prec * 7) / 5 + 16;
    if (y.is_zero()) return BigReal(0, wp);
    if (y == one) return BigReal(1, wp);

    BigReal scaled = y.round_to(std::max<Precision>(wp, y.prec())).mul_2si(wp);
    BigInt z = scaled.floor_int();
    BigReal back = BigReal(z, wp).mul_2si(-wp);
    if (back == y) {
        // exactly dyadic at wp bits: exact decode
        DyadicValue d{z, wp};
        d.normalize();
        return BigReal(qmark_inverse_dyadic(d), wp);
    }
    return BigReal(cf_from_longs(runs_to_quotients(z, wp)), wp);
}

std::pair<BigReal, BigReal> fixed_points(Precision prec) {
    Precision wp = prec + 16;
    auto sign_of = [&](const BigReal& x) {
        // sign of ?(x) - x at an exact dyadic bisection point
        return (qmark_eval(x, wp) - x).sign();
    };
    auto bisect = [&](BigReal lo, BigReal hi) {
        int slo = sign_of(lo);
        long iters = prec + 12;
        for (long i = 0; i < iters; i++) {
            BigReal mid = (lo + hi).mul_2si(-1);
            if (sign_of(mid) == slo)
                lo = mid;
            else
                hi = mid;
        }
        return (lo + hi).mul_2si(-1).round_to(prec);
    };
    BigReal a = bisect(BigReal(0.25, wp), BigReal(0.5, wp) - BigReal::pow2(-10, wp));
    BigReal b = bisect(BigReal(0.5, wp) + BigReal::pow2(-10, wp), BigReal(0.75, wp));
    return {a, b};
}

DistributionResiduals check_distribution_eq(const Rational& x, int shift_n, Precision prec) {
    if (x.sign() <= 0) throw std::domain_error("check_distribution_eq: x must be positive");
    if (shift_n < 0) throw std::domain_error("check_distribution_eq: shift must be nonnegative");
    BigReal Fx = F_eval(x, prec);
    BigReal main(prec);
    if (x >= Rational(1)) {
        main = Fx.mul_2si(1) - F_eval(x - Rational(1), prec) - BigReal(1, prec);
    } else {
        main = Fx.mul_2si(1) - F_eval(x / (Rational(1) - x), prec);
    }
    BigReal shifted = F_eval(x + Rational(shift_n), prec);
    BigReal expect = BigReal(1, prec) - BigReal::pow2(-shift_n, prec) + Fx.mul_2si(-shift_n);
    return {main, shifted - expect};
}

void for_each_dyadic_midpoint_preimage(int n, const std::function<void(long, long)>& fn) {
    if (n < 0 || n > 40) throw std::domain_error("dyadic midpoint depth out of range");
    const int e = n + 1;
    for (std::uint64_t k = 0; k < (1ull << n); k++) {
        std::uint64_t s = 2 * k;  // (2k+1) with the lowest bit flipped
        // run-length decode, msb first over e bits
        int i = e - 1;
        long quo[64];
        int nq = 0;
        long r1 = 0;
        while (i >= 0 && !((s >> i) & 1)) {
            r1++;
            i--;
        }
        quo[nq++] = r1 + 1;
        int cur = 1;
        while (i >= 0) {
            long r = 0;
            while (i >= 0 && (int)((s >> i) & 1) == cur) {
                r++;
                i--;
            }
            quo[nq++] = r;
            cur = 1 - cur;
        }
        if (nq > 1 && quo[nq - 1] == 1) {  // canonical tail
            nq--;
            quo[nq - 1]++;
        }
        // [0; quo...] by the convergent recurrence in machine words
        long h0 = 1, h1 = 0, k0 = 0, k1 = 1;
        for (int j = 0; j < nq; j++) {
            long h2 = quo[j] * h1 + h0;
            long k2 = quo[j] * k1 + k0;
            h0 = h1;
            h1 = h2;
            k0 = k1;
            k1 = k2;
        }
        fn(h1, k1);
    }
}

BigReal dyadic_midpoint_quadrature(const std::function<BigReal(const BigReal&)>& w,
                                   int n, Precision prec) {
    BigReal sum(0, prec);
    for_each_dyadic_midpoint_preimage(n, [&](long p, long q) {
        sum += w(BigReal(p, prec) / BigReal(q, prec));
    });
    return sum.mul_2si(-n);
}

BigReal salem_exponent(Precision prec) {
    Precision wp = prec + 8;
    BigReal golden = (BigReal(1, wp) + sqrt(BigReal(5, wp))).mul_2si(-1);
    return (BigReal::ln2(wp) / (log(golden).mul_2si(1))).round_to(prec);
}

}  // namespace mink::qmark
