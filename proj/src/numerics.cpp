#include "minklab/numerics.hpp"

#include <cmath>
#include <complex>

namespace mink {

BigReal polylog_half(long order, Precision prec) {
    if (order < 1) throw std::domain_error("polylog_half: order must be >= 1");
    Precision wp = prec + 32;
    BigReal sum(wp), term(wp), cutoff = BigReal::pow2(-(prec + 8), wp);
    for (long n = 1;; n++) {
        BigReal nf(n, wp);
        term = pow_si(nf, -order).mul_2si(-n);
        sum += term;
        if (term < cutoff) break;
    }
    return sum.round_to(prec);
}

std::vector<BigReal> polylog_half_table(long jmax, Precision prec) {
    std::vector<BigReal> c;
    c.reserve(jmax + 1);
    c.emplace_back(0L, prec);  // index 0 unused
    for (long j = 1; j <= jmax; j++) c.push_back(polylog_half(j, prec));
    return c;
}

std::vector<BigInt> fubini_numbers(long n) {
    if (n < 0) throw std::domain_error("fubini_numbers: negative index");
    std::vector<BigInt> b;
    b.reserve(n + 1);
    b.emplace_back(1);
    for (long L = 1; L <= n; L++) {
        BigInt s(0);
        for (long k = 0; k < L; k++)
            s += BigInt::binomial(L, k) * b[k];
        b.push_back(std::move(s));
    }
    return b;
}

BigInt fubini_number(long n) { return fubini_numbers(n).back(); }

BigReal bessel_j(int order, const BigReal& x, Precision prec) {
    if (order != 0 && order != 1) throw std::domain_error("bessel_j: order must be 0 or 1");
    if (x.sign() < 0) throw std::domain_error("bessel_j: negative argument");
    // Largest term of the series is ~e^x/sqrt(2 pi x) against a result of
    // order <= 1: roughly x*log2(e) bits cancel.
    double xd = x.to_double();
    long cancel_bits = static_cast<long>(std::ceil(xd * 1.4426950408889634)) + 4;
    if (cancel_bits > prec / 2)
        throw PrecisionLossError("bessel_j: series cancellation exceeds prec/2 bits; raise prec");
    Precision wp = prec + cancel_bits + 32;

    BigReal h = x.round_to(wp).mul_2si(-1);  // x/2
    BigReal h2 = h * h;
    BigReal term(1.0, wp);
    if (order == 1) term = h;
    BigReal sum = term;
    BigReal cutoff = BigReal::pow2(-(prec + 8), wp);
    for (long k = 1;; k++) {
        term *= h2;
        term /= -k;
        term /= k + order;
        sum += term;
        if (BigReal::cmpabs(term, cutoff) < 0) break;
    }
    return sum.round_to(prec);
}

// ---------------------------------------------------------------------------
// zeta / Gamma at double accuracy.

namespace {

using cplx = std::complex<double>;

// B_2k / (2k)! premultiplied forms are easier to get wrong; keep raw B_2k.
constexpr double kBernoulli2k[] = {
    1.0 / 6,       -1.0 / 30,       1.0 / 42,          -1.0 / 30,
    5.0 / 66,      -691.0 / 2730,   7.0 / 6,           -3617.0 / 510,
    43867.0 / 798, -174611.0 / 330, 854513.0 / 138,    -236364091.0 / 2730};

cplx zeta_em(cplx s) {
    // Euler-Maclaurin with N summed terms and K correction terms.
    const int N = 32, K = 12;
    cplx sum = 0;
    for (int n = 1; n < N; n++) sum += std::pow(cplx(n), -s);
    cplx Ns = std::pow(cplx(N), -s);
    sum += Ns * (double)N / (s - 1.0);
    sum += Ns * 0.5;
    // sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{1-s-2k}
    cplx rising = s;  // s(s+1)...(s+2k-2), updated per k
    double fact = 2;  // (2k)!
    for (int k = 1; k <= K; k++) {
        sum += kBernoulli2k[k - 1] / fact * rising * Ns / std::pow(cplx(N), 2.0 * k - 1.0);
        rising *= (s + (2.0 * k - 1.0)) * (s + 2.0 * k);
        fact *= (2.0 * k + 1) * (2.0 * k + 2);
    }
    return sum;
}

cplx log_gamma_stirling(cplx z) {
    // shift until Re z >= 16, then the Stirling series
    cplx shift = 0;
    while (z.real() < 16) {
        shift -= std::log(z);
        z += 1.0;
    }
    cplx lg = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * M_PI);
    cplx zpow = z;
    for (int k = 1; k <= 10; k++) {
        lg += kBernoulli2k[k - 1] / ((2.0 * k) * (2.0 * k - 1.0)) / zpow;
        zpow *= z * z;
    }
    return lg + shift;
}

cplx gamma_c(cplx s) {
    if (s.real() >= 0.5) return std::exp(log_gamma_stirling(s));
    // reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s)
    return M_PI / (std::sin(M_PI * s) * std::exp(log_gamma_stirling(1.0 - s)));
}

}  // namespace

ZetaGamma zeta_and_gamma(const BigComplex& s) {
    cplx sd(s.re.to_double(), s.im.to_double());
    if (std::abs(sd - 1.0) < 1e-8) throw PoleError("zeta pole at s=1");
    bool gamma_pole = false;
    for (int k = 0; k >= -40 && !gamma_pole; k--)
        if (std::abs(sd - cplx(k)) < 1e-8) gamma_pole = true;
    cplx z = zeta_em(sd);
    cplx g = gamma_pole ? cplx(0, 0) : gamma_c(sd);
    ZetaGamma r{BigComplex(z.real(), z.imag(), 64), BigComplex(g.real(), g.imag(), 64), !gamma_pole};
    return r;
}

// ---------------------------------------------------------------------------
// Gauss-Legendre quadrature.

void gauss_legendre(int n, Precision prec, std::vector<BigReal>& nodes, std::vector<BigReal>& weights) {
    if (n < 2) throw std::domain_error("gauss_legendre: need at least 2 nodes");
    Precision wp = prec + 32;
    nodes.assign(n, BigReal(wp));
    weights.assign(n, BigReal(wp));
    BigReal pi = BigReal::pi(wp);
    BigReal tol = BigReal::pow2(-(wp - 8), wp);
    for (int i = 0; i < (n + 1) / 2; i++) {
        // Chebyshev-like initial guess, then Newton on P_n.
        BigReal x = cos(pi * BigReal(4 * i + 3, wp) / BigReal(4 * n + 2, wp));
        BigReal dp(wp);
        for (int it = 0; it < 200; it++) {
            // evaluate P_n(x), P_{n-1}(x) by recurrence
            BigReal p0(1.0, wp), p1 = x;
            for (int k = 2; k <= n; k++) {
                BigReal p2 = (BigReal(2 * k - 1, wp) * x * p1 - BigReal(k - 1, wp) * p0) / BigReal(k, wp);
                p0 = p1;
                p1 = p2;
            }
            // P'_n = n (x P_n - P_{n-1}) / (x^2 - 1)
            dp = BigReal(n, wp) * (x * p1 - p0) / (x * x - BigReal(1.0, wp));
            BigReal dx = p1 / dp;
            x -= dx;
            if (BigReal::cmpabs(dx, tol) < 0) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        BigReal w = BigReal(2.0, wp) / ((BigReal(1.0, wp) - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

PanelIntegral integrate_panel(const std::function<BigReal(const BigReal&)>& f,
                              const BigReal& a, const BigReal& b, int nodes,
                              Precision prec, const BigReal& tol, int max_doublings) {
    std::vector<BigReal> xs, ws;
    gauss_legendre(nodes, prec, xs, ws);
    BigReal half(0.5, prec);
    auto sweep = [&](long panels) {
        BigReal total(0L, prec);
        BigReal width = (b - a) / BigReal(panels, prec);
        for (long p = 0; p < panels; p++) {
            BigReal lo = a + width * BigReal(p, prec);
            BigReal mid = lo + width * half;
            BigReal scale = width * half;
            BigReal acc(0L, prec);
            for (int i = 0; i < nodes; i++) acc += ws[i] * f(mid + scale * xs[i]);
            total += acc * scale;
        }
        return total;
    };
    BigReal prev = sweep(1);
    for (int d = 1; d <= max_doublings; d++) {
        BigReal cur = sweep(1L << d);
        BigReal diff = abs(cur - prev);
        if (diff < tol) return {cur, diff, d};
        prev = cur;
    }
    throw ConvergenceError("integrate_panel: no convergence after max doublings (singular or oscillatory integrand?)");
}

}  // namespace mink
