#include "minklab/period.hpp"

#include <cmath>

#include "minklab/numerics.hpp"
#include "minklab/qmark.hpp"

namespace mink::period {

namespace {

BigComplex cplx_from(double re, double im, Precision prec) {
    return {BigReal(re, prec), BigReal(im, prec)};
}

// truncated power series with the per-entry table errors folded into err
BigComplex power_sum(const BigComplex& z, const moments::MomentTable& t, Precision prec, BigReal* err) {
    BigComplex sum(BigReal(0, prec), BigReal(0, prec));
    BigComplex pw(BigReal(1, prec), BigReal(0, prec));
    BigReal r = abs(z);
    BigReal rpow(1, prec);
    BigReal errs(0, prec);
    for (int L = 1; L <= t.order; L++) {
        BigReal cf = t.m[L].round_to(prec);
        sum += BigComplex(cf * pw.re, cf * pw.im);
        errs += t.err[L] * rpow;
        pw = pw * z;
        rpow *= r;
    }
    if (err) {
        // true-tail estimate: the solved trailing entries collapse under
        // truncation, so model m_N from the last reliably-solved entry with
        // the saddle-point shape s^{-3/4} exp(-2 sqrt(s log 2))
        int cut = 1;
        for (int s = 1; s <= t.order; s++) {
            if (t.m[s].sign() <= 0) break;
            if (t.err[s] > abs(t.m[s]) * BigReal(0.01, prec)) break;
            cut = s;
        }
        double a2 = 2.0 * std::sqrt(std::log(2.0));
        double model = t.m[cut].to_double() *
                       std::exp(a2 * (std::sqrt((double)cut) - std::sqrt((double)t.order))) *
                       std::pow((double)cut / t.order, 0.75);
        BigReal denom = BigReal(1, prec) - r;
        BigReal floorv(1.0 / t.order, prec);
        if (denom < floorv) denom = floorv;
        *err = errs + BigReal(3 * model, prec) * rpow / denom;
    }
    return sum;
}

}  // namespace

PeriodEvaluation G_power_series(const BigComplex& z, const moments::MomentTable& t) {
    Precision prec = t.prec;
    if (abs(z) > BigReal(1, prec))
        throw std::domain_error("G_power_series: series diverges for |z| > 1");
    PeriodEvaluation ev{z, BigComplex(prec), Method::PowerSeries, BigReal(0, prec), false};
    ev.value = power_sum(z, t, prec, &ev.err);
    return ev;
}

PeriodEvaluation G_rational_series(const BigComplex& z, const moments::MomentTable& t) {
    Precision prec = t.prec;
    if (z.re.sign() > 0)
        throw std::domain_error("G_rational_series: requires Re z <= 0");
    PeriodEvaluation ev{z, BigComplex(prec), Method::RationalSeries, BigReal(0, prec), false};
    BigComplex acc(BigReal(0, prec), BigReal(0, prec));
    BigReal errs(0, prec);
    BigComplex one(BigReal(1, prec), BigReal(0, prec));
    long nmax = prec + 24;
    for (long n = 1; n <= nmax; n++) {
        BigComplex zn = z - cplx_from(double(n), 0.0, prec);
        BigComplex inv = one / zn;
        BigReal inner_err(0, prec);
        BigComplex g = power_sum(inv, t, prec, &inner_err);
        BigComplex term = inv + inv * inv * g;
        acc += BigComplex(term.re.mul_2si(-n), term.im.mul_2si(-n));
        BigReal iv = abs(inv);
        errs += (inner_err * iv * iv).mul_2si(-n);
    }
    ev.value = -acc;
    // dropped tail of the outer sum: |term| <= 1/n + G-scale/n^2
    ev.err = errs + BigReal(2, prec).mul_2si(-nmax);
    return ev;
}

PeriodEvaluation G_quadrature(const BigComplex& z, int n, Precision prec) {
    if (z.im.is_zero() && z.re > BigReal(1, prec))
        throw std::domain_error("G_quadrature: z on the cut (1, inf)");
    PeriodEvaluation ev{z, BigComplex(prec), Method::Quadrature, BigReal(0, prec), false};
    // distance to the cut
    BigReal dist(prec);
    if (z.re <= BigReal(1, prec))
        dist = abs(z - cplx_from(1.0, 0.0, prec));
    else
        dist = abs(z.im);
    if (dist < BigReal(1e-3, prec)) ev.near_cut_warning = true;

    auto sweep = [&](int depth) {
        BigComplex sum(BigReal(0, prec), BigReal(0, prec));
        qmark::for_each_dyadic_midpoint_preimage(depth, [&](long p, long q) {
            BigReal x = BigReal(p, prec) / BigReal(q, prec);
            BigComplex den(BigReal(1, prec) - x * z.re, -(x * z.im));
            BigComplex term = BigComplex(x, BigReal(0, prec)) / den;
            sum += term;
        });
        return BigComplex(sum.re.mul_2si(-depth), sum.im.mul_2si(-depth));
    };
    BigComplex fine = sweep(n);
    BigComplex coarse = sweep(n - 1);
    ev.value = fine;
    ev.err = abs(fine - coarse) * BigReal(3, prec);
    return ev;
}

PeriodEvaluation G_eval(const BigComplex& z, const moments::MomentTable& t) {
    BigReal r = abs(z);
    if (r <= BigReal(0.75, t.prec)) return G_power_series(z, t);
    if (z.re.sign() <= 0) return G_rational_series(z, t);
    if (r <= BigReal(1, t.prec)) return G_power_series(z, t);
    return G_quadrature(z, 16, t.prec);
}

ThreeTermResiduals check_three_term(const BigComplex& z, const moments::MomentTable& t) {
    Precision prec = t.prec;
    if (z.re > BigReal(-1, prec))
        throw std::domain_error("check_three_term: requires Re z <= -1");
    BigComplex one(BigReal(1, prec), BigReal(0, prec));
    BigComplex two(BigReal(2, prec), BigReal(0, prec));

    BigComplex Gz = G_rational_series(z, t).value;
    BigComplex Gz1 = G_rational_series(z + one, t).value;
    BigComplex invz = one / z;
    BigComplex Ginv = G_power_series(invz, t).value;

    // (9): 1/z + z^-2 G(1/z) + 2 G(z+1) - G(z)
    BigComplex r9 = invz + invz * invz * Ginv + two * Gz1 - Gz;

    // (7): -1/(1-z) - (1-z)^-2 G(1/(1-z)) + 2 G(z+1) - G(z)
    BigComplex w = one / (one - z);
    BigComplex G7 = G_power_series(w, t).value;
    BigComplex r7 = -w - w * w * G7 + two * Gz1 - Gz;

    // symmetry: G(z+1) + z^-2 G(1/z + 1) + 1/z
    BigComplex ws = invz + one;
    BigComplex Gs = G_power_series(ws, t).value;
    BigComplex rs = Gz1 + invz * invz * Gs + invz;

    return {abs(r9), abs(r7), abs(rs), polylog_half(2, prec)};
}

BigComplex eisenstein_G1(const BigComplex& z, int terms) {
    Precision prec = z.prec();
    if (z.im.is_zero()) throw std::domain_error("eisenstein_G1: real axis not in the domain");
    if (z.im.sign() < 0) return conj(eisenstein_G1(conj(z), terms));
    if (z.im < BigReal(0.05, prec))
        throw ConvergenceError("eisenstein_G1: q-series converges too slowly for Im z < 0.05");
    if (terms < 1) throw std::domain_error("eisenstein_G1: need at least one term");

    std::vector<long> sigma1(terms + 1, 0);
    for (long d = 1; d <= terms; d++)
        for (long m = d; m <= terms; m += d) sigma1[m] += d;

    BigReal two_pi = BigReal::pi(prec).mul_2si(1);
    BigComplex q = exp(BigComplex(-two_pi * z.im, two_pi * z.re));  // e^{2 pi i z}
    BigComplex acc(BigReal(0, prec), BigReal(0, prec));
    BigComplex qn(BigReal(1, prec), BigReal(0, prec));
    for (long n = 1; n <= terms; n++) {
        qn = qn * q;
        BigReal s1(sigma1[n], prec);
        acc += BigComplex(s1 * qn.re, s1 * qn.im);
    }
    BigReal pi2 = BigReal::pi(prec) * BigReal::pi(prec);
    BigComplex res(pi2 / BigReal(3, prec), BigReal(0, prec));
    res -= BigComplex(pi2.mul_2si(3) * acc.re, pi2.mul_2si(3) * acc.im);
    return res;
}

BigReal contraction_map_bound(Precision prec) {
    // sup over [-1,0] of sum_n 2^-n (z-n)^-2, scanned on a fine grid; each
    // term is maximized at z = 0, so the sup is c_2 and the scan confirms it.
    BigReal sup(0, prec);
    const int grid = 256;
    for (int i = 0; i <= grid; i++) {
        BigReal zv = -BigReal(i, prec) / BigReal(grid, prec);
        BigReal acc(0, prec);
        for (long n = 1; n <= prec + 16; n++) {
            BigReal d = zv - BigReal(n, prec);
            acc += (BigReal(1, prec) / (d * d)).mul_2si(-n);
        }
        sup = max(sup, acc);
    }
    return sup;
}

}  // namespace mink::period
