#pragma once

#include <mpfr.h>

#include <concepts>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "minklab/rational.hpp"

namespace mink {

using Precision = mpfr_prec_t;
inline constexpr Precision kDefaultPrec = 192;

// Precision-carrying real. Every operation rounds to nearest at the result's
// precision, which for binary operators is the larger of the operand
// precisions, so the per-operation relative error is at most 2^(1-P).
class BigReal {
public:
    explicit BigReal(Precision prec = kDefaultPrec) {
        mpfr_init2(x_, prec);
        mpfr_set_zero(x_, 1);
    }
    BigReal(double v, Precision prec) {
        mpfr_init2(x_, prec);
        mpfr_set_d(x_, v, MPFR_RNDN);
    }
    template <std::integral T>
    BigReal(T v, Precision prec) {
        mpfr_init2(x_, prec);
        mpfr_set_si(x_, static_cast<long>(v), MPFR_RNDN);
    }
    BigReal(const BigInt& v, Precision prec) {
        mpfr_init2(x_, prec);
        mpfr_set_z(x_, v.raw(), MPFR_RNDN);
    }
    BigReal(const Rational& v, Precision prec) {
        mpfr_init2(x_, prec);
        mpfr_set_q(x_, v.raw(), MPFR_RNDN);
    }
    BigReal(const BigReal& o) {
        mpfr_init2(x_, o.prec());
        mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    BigReal(BigReal&& o) noexcept {
        mpfr_init2(x_, o.prec());
        mpfr_swap(x_, o.x_);
    }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(x_, o.prec());
            mpfr_set(x_, o.x_, MPFR_RNDN);
        }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept {
        mpfr_swap(x_, o.x_);
        return *this;
    }
    ~BigReal() { mpfr_clear(x_); }

    static BigReal parse(std::string_view s, Precision prec) {
        BigReal r(prec);
        if (mpfr_set_str(r.x_, std::string(s).c_str(), 10, MPFR_RNDN) != 0)
            throw std::invalid_argument("BigReal: bad numeric literal: " + std::string(s));
        return r;
    }

    Precision prec() const { return mpfr_get_prec(x_); }
    BigReal round_to(Precision prec) const {
        BigReal r(prec);
        mpfr_set(r.x_, x_, MPFR_RNDN);
        return r;
    }

    friend BigReal operator+(const BigReal& a, const BigReal& b) {
        BigReal r(std::max(a.prec(), b.prec()));
        mpfr_add(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator-(const BigReal& a, const BigReal& b) {
        BigReal r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator*(const BigReal& a, const BigReal& b) {
        BigReal r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    friend BigReal operator/(const BigReal& a, const BigReal& b) {
        BigReal r(std::max(a.prec(), b.prec()));
        mpfr_div(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    BigReal operator-() const {
        BigReal r(prec());
        mpfr_neg(r.x_, x_, MPFR_RNDN);
        return r;
    }
    BigReal& operator+=(const BigReal& o) { mpfr_add(x_, x_, o.x_, MPFR_RNDN); return *this; }
    BigReal& operator-=(const BigReal& o) { mpfr_sub(x_, x_, o.x_, MPFR_RNDN); return *this; }
    BigReal& operator*=(const BigReal& o) { mpfr_mul(x_, x_, o.x_, MPFR_RNDN); return *this; }
    BigReal& operator/=(const BigReal& o) { mpfr_div(x_, x_, o.x_, MPFR_RNDN); return *this; }

    BigReal& operator+=(long v) { mpfr_add_si(x_, x_, v, MPFR_RNDN); return *this; }
    BigReal& operator-=(long v) { mpfr_sub_si(x_, x_, v, MPFR_RNDN); return *this; }
    BigReal& operator*=(long v) { mpfr_mul_si(x_, x_, v, MPFR_RNDN); return *this; }
    BigReal& operator/=(long v) { mpfr_div_si(x_, x_, v, MPFR_RNDN); return *this; }

    // Exact scaling by powers of two.
    BigReal mul_2si(long e) const {
        BigReal r(prec());
        mpfr_mul_2si(r.x_, x_, e, MPFR_RNDN);
        return r;
    }

    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.x_, b.x_) == 0; }
    friend bool operator!=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.x_, b.x_) != 0; }
    friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.x_, b.x_) <= 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.x_, b.x_) > 0; }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.x_, b.x_) >= 0; }
    static int cmpabs(const BigReal& a, const BigReal& b) { return mpfr_cmpabs(a.x_, b.x_); }
    int cmp(const Rational& r) const { return mpfr_cmp_q(x_, r.raw()); }

    int sign() const { return mpfr_sgn(x_); }
    bool is_zero() const { return mpfr_zero_p(x_) != 0; }
    bool is_finite() const { return mpfr_number_p(x_) != 0; }

    BigInt floor_int() const {
        BigInt r;
        mpfr_get_z(r.raw(), x_, MPFR_RNDD);
        return r;
    }

    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
    long exponent() const { return is_zero() ? 0 : static_cast<long>(mpfr_get_exp(x_)); }
    std::string str(size_t digits = 0) const;

    static BigReal pi(Precision prec) {
        BigReal r(prec);
        mpfr_const_pi(r.x_, MPFR_RNDN);
        return r;
    }
    static BigReal ln2(Precision prec) {
        BigReal r(prec);
        mpfr_const_log2(r.x_, MPFR_RNDN);
        return r;
    }
    // 2^e at the given precision.
    static BigReal pow2(long e, Precision prec) {
        BigReal r(1.0, prec);
        return r.mul_2si(e);
    }

    mpfr_srcptr raw() const { return x_; }
    mpfr_ptr raw() { return x_; }

private:
    mpfr_t x_;
};

inline BigReal abs(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
inline BigReal sqrt(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
inline BigReal exp(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_exp(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
inline BigReal log(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_log(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
inline BigReal log1p(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_log1p(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
inline BigReal log2(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_log2(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
inline BigReal sin(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_sin(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
inline BigReal cos(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_cos(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
inline BigReal atan2(const BigReal& y, const BigReal& x) {
    BigReal r(std::max(y.prec(), x.prec()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline BigReal pow_si(const BigReal& a, long e) {
    BigReal r(a.prec());
    mpfr_pow_si(r.raw(), a.raw(), e, MPFR_RNDN);
    return r;
}
inline BigReal hypot(const BigReal& a, const BigReal& b) {
    BigReal r(std::max(a.prec(), b.prec()));
    mpfr_hypot(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
inline BigReal max(const BigReal& a, const BigReal& b) { return a >= b ? a : b; }
inline BigReal min(const BigReal& a, const BigReal& b) { return a <= b ? a : b; }

std::ostream& operator<<(std::ostream& os, const BigReal& v);

// Rectangular complex value; modulus and argument are always derived.
struct BigComplex {
    BigReal re, im;

    explicit BigComplex(Precision prec = kDefaultPrec) : re(prec), im(prec) {}
    BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
    BigComplex(double r, double i, Precision prec) : re(r, prec), im(i, prec) {}

    Precision prec() const { return std::max(re.prec(), im.prec()); }
    bool is_real() const { return im.is_zero(); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigReal d = b.re * b.re + b.im * b.im;
        if (d.is_zero()) throw std::domain_error("BigComplex: division by zero");
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    BigComplex operator-() const { return {-re, -im}; }
    BigComplex& operator+=(const BigComplex& o) { re += o.re; im += o.im; return *this; }
    BigComplex& operator-=(const BigComplex& o) { re -= o.re; im -= o.im; return *this; }
    BigComplex& operator*=(const BigComplex& o) { *this = *this * o; return *this; }

    friend bool operator==(const BigComplex& a, const BigComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
};

inline BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }
inline BigReal abs(const BigComplex& z) { return hypot(z.re, z.im); }
inline BigComplex exp(const BigComplex& z) {
    BigReal m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}
inline BigComplex log(const BigComplex& z) {
    return {log(abs(z)), atan2(z.im, z.re)};
}
inline BigComplex pow(const BigComplex& base, const BigComplex& e) {
    return exp(e * log(base));
}
inline BigComplex inverse(const BigComplex& z) {
    BigComplex one(BigReal(1L, z.prec()), BigReal(0L, z.prec()));
    return one / z;
}

std::ostream& operator<<(std::ostream& os, const BigComplex& v);

// Parses "a", "bi", "a+bi", "a-bi" (also accepts 'j' and '*i').
BigComplex parse_complex(std::string_view s, Precision prec);

}  // namespace mink
