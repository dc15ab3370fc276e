#pragma once

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace mink {

// Arbitrary-size integer, value semantics over mpz_t.
class BigInt {
public:
    BigInt() { mpz_init(z_); }
    BigInt(long v) { mpz_init_set_si(z_, v); }  // NOLINT: implicit by design
    explicit BigInt(std::string_view s, int base = 10) {
        if (mpz_init_set_str(z_, std::string(s).c_str(), base) != 0) {
            mpz_clear(z_);
            throw std::invalid_argument("BigInt: bad integer literal: " + std::string(s));
        }
    }
    BigInt(const BigInt& o) { mpz_init_set(z_, o.z_); }
    BigInt(BigInt&& o) noexcept { mpz_init(z_); mpz_swap(z_, o.z_); }
    BigInt& operator=(const BigInt& o) {
        if (this != &o) mpz_set(z_, o.z_);
        return *this;
    }
    BigInt& operator=(BigInt&& o) noexcept {
        mpz_swap(z_, o.z_);
        return *this;
    }
    ~BigInt() { mpz_clear(z_); }

    friend BigInt operator+(const BigInt& a, const BigInt& b) { BigInt r; mpz_add(r.z_, a.z_, b.z_); return r; }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { BigInt r; mpz_sub(r.z_, a.z_, b.z_); return r; }
    friend BigInt operator*(const BigInt& a, const BigInt& b) { BigInt r; mpz_mul(r.z_, a.z_, b.z_); return r; }
    BigInt operator-() const { BigInt r; mpz_neg(r.z_, z_); return r; }
    BigInt& operator+=(const BigInt& o) { mpz_add(z_, z_, o.z_); return *this; }
    BigInt& operator-=(const BigInt& o) { mpz_sub(z_, z_, o.z_); return *this; }
    BigInt& operator*=(const BigInt& o) { mpz_mul(z_, z_, o.z_); return *this; }

    // Truncated quotient; exact use sites only.
    friend BigInt operator/(const BigInt& a, const BigInt& b) { BigInt r; mpz_tdiv_q(r.z_, a.z_, b.z_); return r; }
    friend BigInt operator%(const BigInt& a, const BigInt& b) { BigInt r; mpz_tdiv_r(r.z_, a.z_, b.z_); return r; }
    // Nonnegative remainder mod positive modulus.
    BigInt mod(const BigInt& modulus) const { BigInt r; mpz_mod(r.z_, z_, modulus.z_); return r; }

    friend bool operator==(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) >= 0; }

    int sign() const { return mpz_sgn(z_); }
    bool is_zero() const { return mpz_sgn(z_) == 0; }
    bool odd() const { return mpz_odd_p(z_) != 0; }
    bool fits_long() const { return mpz_fits_slong_p(z_) != 0; }
    long to_long() const { return mpz_get_si(z_); }
    double to_double() const { return mpz_get_d(z_); }
    size_t bit_length() const { return mpz_sizeinbase(z_, 2); }

    static BigInt binomial(unsigned long n, unsigned long k) {
        BigInt r;
        mpz_bin_uiui(r.z_, n, k);
        return r;
    }
    static BigInt pow2(unsigned long e) {
        BigInt r(1);
        mpz_mul_2exp(r.z_, r.z_, e);
        return r;
    }
    static BigInt pow(const BigInt& base, unsigned long e) {
        BigInt r;
        mpz_pow_ui(r.z_, base.z_, e);
        return r;
    }

    // Divides out the largest power of f; returns the multiplicity. *this must be nonzero.
    unsigned long remove_factor(const BigInt& f) {
        if (is_zero()) throw std::domain_error("BigInt::remove_factor on zero");
        return mpz_remove(z_, z_, f.z_);
    }

    std::string str() const {
        char* s = mpz_get_str(nullptr, 10, z_);
        std::string r(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, r.size() + 1);
        return r;
    }

    mpz_srcptr raw() const { return z_; }
    mpz_ptr raw() { return z_; }

private:
    mpz_t z_;
};

std::ostream& operator<<(std::ostream& os, const BigInt& v);

// Exact rational, always canonical (gcd 1, positive denominator).
class Rational {
public:
    Rational() { mpq_init(q_); }
    Rational(long num, long den = 1) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        mpq_init(q_);
        mpq_set_si(q_, num, 1);
        mpq_t d;
        mpq_init(d);
        mpq_set_si(d, den, 1);
        mpq_div(q_, q_, d);
        mpq_clear(d);
    }
    Rational(const BigInt& num, const BigInt& den) {
        if (den.is_zero()) throw std::domain_error("Rational: zero denominator");
        mpq_init(q_);
        mpz_set(mpq_numref(q_), num.raw());
        mpz_set(mpq_denref(q_), den.raw());
        mpq_canonicalize(q_);
    }
    explicit Rational(const BigInt& num) {
        mpq_init(q_);
        mpz_set(mpq_numref(q_), num.raw());
    }
    Rational(const Rational& o) { mpq_init(q_); mpq_set(q_, o.q_); }
    Rational(Rational&& o) noexcept { mpq_init(q_); mpq_swap(q_, o.q_); }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    // Accepts "p/q", "p", and plain decimal strings like "0.25".
    static Rational parse(std::string_view s);

    friend Rational operator+(const Rational& a, const Rational& b) { Rational r; mpq_add(r.q_, a.q_, b.q_); return r; }
    friend Rational operator-(const Rational& a, const Rational& b) { Rational r; mpq_sub(r.q_, a.q_, b.q_); return r; }
    friend Rational operator*(const Rational& a, const Rational& b) { Rational r; mpq_mul(r.q_, a.q_, b.q_); return r; }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        Rational r;
        mpq_div(r.q_, a.q_, b.q_);
        return r;
    }
    Rational operator-() const { Rational r; mpq_neg(r.q_, q_); return r; }
    Rational& operator+=(const Rational& o) { mpq_add(q_, q_, o.q_); return *this; }
    Rational& operator-=(const Rational& o) { mpq_sub(q_, q_, o.q_); return *this; }
    Rational& operator*=(const Rational& o) { mpq_mul(q_, q_, o.q_); return *this; }

    Rational reciprocal() const {
        if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
        Rational r;
        mpq_inv(r.q_, q_);
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) == 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

    int sign() const { return mpq_sgn(q_); }
    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

    BigInt num() const { BigInt r; mpz_set(r.raw(), mpq_numref(q_)); return r; }
    BigInt den() const { BigInt r; mpz_set(r.raw(), mpq_denref(q_)); return r; }

    BigInt floor() const {
        BigInt r;
        mpz_fdiv_q(r.raw(), mpq_numref(q_), mpq_denref(q_));
        return r;
    }

    double to_double() const { return mpq_get_d(q_); }
    std::string str() const { return num().str() + (is_integer() ? std::string() : "/" + den().str()); }

    mpq_srcptr raw() const { return q_; }
    mpq_ptr raw() { return q_; }

private:
    mpq_t q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& v);

// ord_p(x) for rational x; infinite iff x = 0.
struct PadicOrd {
    bool finite;
    long v;
};
PadicOrd padic_ord(const Rational& x, unsigned long p);

}  // namespace mink
