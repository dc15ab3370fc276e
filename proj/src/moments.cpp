#include "minklab/moments.hpp"

#include <cmath>

#include "minklab/linalg.hpp"
#include "minklab/numerics.hpp"
#include "minklab/qmark.hpp"
#include "minklab/spectral.hpp"

namespace mink::moments {

namespace {

// One truncated solve of (I + E) m = c; returns m[0..order] with m[0] = 1.
// The solve runs with 64 guard bits and the solution keeps them: the row
// scale of E (up to C(2N-1,N-1)) times the representation error of m sets
// the floor of the residual ||m + Em - c||, so a prec-rounded vector could
// not satisfy the identity below ~2^{-prec+rowbits}.
std::vector<BigReal> solve_order(int order, Precision prec) {
    Precision wp = prec + 64;
    spectral::OperatorMatrix E = spectral::build_operator(order, wp);
    DenseMatrix A(order, order, wp);
    for (int s = 1; s <= order; s++)
        for (int L = 1; L <= order; L++) {
            A.at(s - 1, L - 1) = E.at(s, L);
            if (s == L) A.at(s - 1, L - 1) += BigReal(1, wp);
        }
    std::vector<BigReal> rhs;
    rhs.reserve(order);
    for (int s = 1; s <= order; s++) rhs.push_back(polylog_half(s, wp));
    std::vector<BigReal> sol = solve_dense(A, rhs, wp);
    std::vector<BigReal> m;
    m.reserve(order + 1);
    m.emplace_back(1, wp);
    for (auto& x : sol) m.push_back(std::move(x));
    return m;
}

}  // namespace

MomentTable solve_moments(int order, Precision prec) {
    if (order < 8) throw std::domain_error("solve_moments: order must be >= 8");
    MomentTable t;
    t.order = order;
    t.prec = prec;
    t.m = solve_order(order, prec);
    std::vector<BigReal> wide = solve_order(order + 8, prec);
    t.err.assign(order + 1, BigReal(0, prec));
    for (int s = 1; s <= order; s++) t.err[s] = abs(t.m[s] - wide[s]);
    t.c = polylog_half_table(2 * order, prec);
    t.B = fubini_numbers(order);
    t.M.clear();
    t.M.reserve(order + 1);
    for (int L = 0; L <= order; L++) t.M.push_back(M_from_m(t, L));
    return t;
}

BigReal M_from_m(const MomentTable& t, int L) {
    if (L < 0 || L > t.order) throw std::domain_error("M_from_m: L out of range");
    BigReal acc(0, t.prec);
    for (int i = 0; i <= L; i++)
        acc += t.m[i] * BigReal(BigInt::binomial(L, i) * t.B[L - i], t.prec);
    return acc;
}

BigReal m_from_M(const std::vector<BigReal>& Mlist, int L) {
    if (L < 0 || L >= static_cast<int>(Mlist.size())) throw std::domain_error("m_from_M: L out of range");
    BigReal acc = Mlist[L];
    Precision prec = acc.prec();
    for (int s = 0; s < L; s++) acc -= BigReal(BigInt::binomial(L, s), prec) * Mlist[s];
    return acc;
}

TailedValue M_via_rys(const MomentTable& t, int L) {
    if (L < 1 || L > t.order) throw std::domain_error("M_via_rys: L out of range");
    Precision prec = t.prec;
    // The solved tail moments collapse under truncation, so the sum runs
    // only over the prefix whose N-vs-N+8 error stays below 1% of the value;
    // beyond it the decay model A exp(-2 sqrt(s log 2)) fitted at the cut
    // supplies the tail estimate.
    int cut = 0;
    for (int s = 1; s <= t.order; s++) {
        if (t.m[s].sign() <= 0) break;
        if (t.err[s] > abs(t.m[s]) * BigReal(0.01, prec)) break;
        cut = s;
    }
    if (cut <= L + 2)
        throw std::domain_error("M_via_rys: tail dominates; truncation order too small for this L");
    BigReal acc(0, prec), errs(0, prec);
    for (int s = L; s <= cut; s++) {
        BigReal w(BigInt::binomial(s - 1, L - 1), prec);
        acc += w * t.m[s];
        errs += w * t.err[s];
    }
    double a2 = 2.0 * std::sqrt(std::log(2.0));
    // saddle-point shape m_s ~ A s^(-3/4) exp(-2 sqrt(s log 2))
    double A = t.m[cut].to_double() * std::exp(a2 * std::sqrt(static_cast<double>(cut))) *
               std::pow(static_cast<double>(cut), 0.75);
    double tail = 0;
    for (int s = cut + 1; s <= cut + 4000; s++) {
        double w = 1.0;
        for (int j = 1; j < L; j++) w *= static_cast<double>(s - j) / j;
        double term = w * A * std::pow(static_cast<double>(s), -0.75) *
                      std::exp(-a2 * std::sqrt(static_cast<double>(s)));
        tail += term;
        if (term < 1e-30 * (1.0 + tail)) break;
    }
    return {acc + BigReal(tail, prec), BigReal(3 * tail, prec) + errs};
}

std::vector<BigReal> symmetry_residuals(const MomentTable& t) {
    std::vector<BigReal> r;
    r.reserve(t.order + 1);
    for (int L = 0; L <= t.order; L++) {
        BigReal acc(0, t.prec);
        for (int s = 0; s <= L; s++) {
            BigReal term = BigReal(BigInt::binomial(L, s), t.prec) * t.m[s];
            if (s % 2)
                acc -= term;
            else
                acc += term;
        }
        r.push_back(t.m[L] - acc);
    }
    return r;
}

BigReal special_relation_residual(const MomentTable& t) {
    return t.m[3].mul_2si(1) + BigReal(0.5, t.prec) - BigReal(3, t.prec) * t.m[2];
}

namespace {

BigReal mgf_series(const BigReal& targ, const MomentTable& t, bool derivative) {
    double td = targ.to_double();
    Precision prec = t.prec;
    long cancel = td < 0 ? static_cast<long>(std::ceil(-td * 1.4426950408889634)) : 0;
    Precision wp = prec + cancel + 48;
    const int N = t.order;
    if (std::fabs(td) >= N + 1)
        throw std::domain_error("mgf: |t| exceeds the table order; raise the truncation order");

    BigReal x = targ.round_to(wp);
    BigReal sum(0, wp), pw(1, wp);
    if (derivative) {
        // sum_{L>=1} m_L t^{L-1}/(L-1)!
        for (int L = 1; L <= N; L++) {
            sum += t.m[L].round_to(wp) * pw;
            pw *= x;
            pw /= L;
        }
    } else {
        for (int L = 0; L <= N; L++) {
            sum += t.m[L].round_to(wp) * pw;
            pw *= x;
            pw /= (L + 1);
        }
    }
    // tail bound: first omitted term times the geometric envelope of the
    // remaining ratios |t|/(L+1), against the recent coefficient scale
    BigReal mtail(0, wp);
    for (int L = std::max(1, N - 4); L <= N; L++) mtail = max(mtail, abs(t.m[L]).round_to(wp));
    mtail = max(mtail, BigReal::pow2(-prec, wp));
    BigReal ratio = abs(x) / BigReal(N + 2, wp);
    BigReal tail = mtail * abs(pw) / (BigReal(1, wp) - ratio);
    if (tail > abs(sum).mul_2si(-8) + BigReal::pow2(-prec - 8, wp))
        throw std::domain_error("mgf: truncation tail dominates at this argument; raise the table order");
    return sum.round_to(prec);
}

}  // namespace

BigReal mgf(const BigReal& targ, const MomentTable& t) { return mgf_series(targ, t, false); }

BigReal mgf_derivative(const BigReal& targ, const MomentTable& t) { return mgf_series(targ, t, true); }

BigReal Mgf(const BigReal& targ, const MomentTable& t) {
    Precision prec = t.prec;
    BigReal ln2 = BigReal::ln2(prec);
    if (abs(targ.round_to(prec) - ln2) < BigReal(1e-6, prec))
        throw PoleError("Mgf: pole at t = log 2");
    return mgf(targ, t) / (BigReal(2, prec) - exp(targ.round_to(prec)));
}

AsymptoticReport asymptotic_constant(const MomentTable& t) {
    Precision prec = t.prec;
    BigReal ln2 = BigReal::ln2(prec);
    AsymptoticReport rep{mgf(ln2, t) / ln2.mul_2si(1), {}};
    rep.r.reserve(t.order + 1);
    BigReal scale(1, prec);  // (log 2)^L / L!
    for (int L = 0; L <= t.order; L++) {
        if (L > 0) {
            scale *= ln2;
            scale /= L;
        }
        rep.r.push_back(t.M[L] * scale);
    }
    return rep;
}

KinneyReport kinney_constant(Precision prec) {
    // The alternating moment series needs the deeper table; the quadrature
    // error (~2^-n per the midpoint rule's measured constant) dominates far
    // above 2^-128, so that route runs at a capped precision.
    const int order = 128;
    const int qn = 20;
    MomentTable t = solve_moments(order, prec);
    BigReal ser(0, prec);
    for (int L = 1; L <= order; L++) {
        BigReal term = t.m[L] / BigReal(L, prec);
        if (L % 2)
            ser += term;
        else
            ser -= term;
    }
    ser /= BigReal::ln2(prec);

    Precision qp = std::min<Precision>(prec, 128);
    BigReal quad = qmark::dyadic_midpoint_quadrature(
        [&](const BigReal& x) { return log2(BigReal(1, qp) + x); }, qn, qp);

    KinneyReport rep{BigReal(0.5, prec) / ser, ser, quad.round_to(prec),
                     abs(ser - quad.round_to(prec))};
    return rep;
}

}  // namespace mink::moments
