#include "minklab/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace mink {

std::vector<BigReal> DenseMatrix::apply(const std::vector<BigReal>& x) const {
    if (static_cast<long>(x.size()) != cols_) throw std::domain_error("DenseMatrix::apply: size mismatch");
    std::vector<BigReal> y(rows_, BigReal(prec_));
    for (long i = 0; i < rows_; i++) {
        BigReal acc(0L, prec_);
        for (long j = 0; j < cols_; j++) acc += at(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

LuFactorization::LuFactorization(const DenseMatrix& a, Precision prec) : n_(a.rows()), prec_(prec) {
    if (a.rows() != a.cols()) throw std::domain_error("LuFactorization: matrix not square");
    lu_.reserve(static_cast<size_t>(n_) * n_);
    for (long i = 0; i < n_; i++)
        for (long j = 0; j < n_; j++) lu_.push_back(a.at(i, j).round_to(prec));
    piv_.resize(n_);
    auto e = [&](long i, long j) -> BigReal& { return lu_[static_cast<size_t>(i) * n_ + j]; };

    // All pivot candidates below this are treated as a singular column.
    BigReal pivot_floor = BigReal::pow2(-(prec - 8), prec);
    for (long k = 0; k < n_; k++) {
        long p = k;
        for (long i = k + 1; i < n_; i++)
            if (BigReal::cmpabs(e(i, k), e(p, k)) > 0) p = i;
        if (BigReal::cmpabs(e(p, k), pivot_floor) < 0)
            throw SingularMatrixError("solve_dense: all pivot candidates below 2^(8-prec)");
        piv_[k] = p;
        if (p != k)
            for (long j = 0; j < n_; j++) std::swap(e(k, j), e(p, j));
        for (long i = k + 1; i < n_; i++) {
            e(i, k) /= e(k, k);
            const BigReal& f = e(i, k);
            for (long j = k + 1; j < n_; j++) e(i, j) -= f * e(k, j);
        }
    }
}

std::vector<BigReal> LuFactorization::solve(std::vector<BigReal> b) const {
    if (static_cast<long>(b.size()) != n_) throw std::domain_error("LuFactorization::solve: size mismatch");
    for (auto& x : b) x = x.round_to(prec_);
    auto e = [&](long i, long j) -> const BigReal& { return lu_[static_cast<size_t>(i) * n_ + j]; };
    for (long k = 0; k < n_; k++)
        if (piv_[k] != k) std::swap(b[k], b[piv_[k]]);
    for (long i = 1; i < n_; i++)
        for (long j = 0; j < i; j++) b[i] -= e(i, j) * b[j];
    for (long i = n_ - 1; i >= 0; i--) {
        for (long j = i + 1; j < n_; j++) b[i] -= e(i, j) * b[j];
        b[i] /= e(i, i);
    }
    return b;
}

std::vector<BigReal> solve_dense(const DenseMatrix& a, const std::vector<BigReal>& b, Precision prec) {
    LuFactorization lu(a, prec);
    std::vector<BigReal> x = lu.solve(b);
    // Iterative refinement with residuals accumulated at twice the working
    // precision: the stored entries are exact values, so this drives the
    // forward error down to ~2^-prec even when the matrix is badly scaled
    // (the operator truncations grow like C(2N,N)).
    const long n = a.rows();
    Precision rp = 2 * prec + 16;
    for (int pass = 0; pass < 12; pass++) {
        std::vector<BigReal> r(b.size(), BigReal(rp));
        for (long i = 0; i < n; i++) {
            BigReal acc = b[i].round_to(rp);
            for (long j = 0; j < n; j++) acc -= a.at(i, j).round_to(rp) * x[j].round_to(rp);
            r[i] = acc;
        }
        std::vector<BigReal> rr(b.size(), BigReal(prec));
        for (size_t i = 0; i < b.size(); i++) rr[i] = r[i].round_to(prec);
        std::vector<BigReal> dx = lu.solve(rr);
        BigReal worst(0, prec), xn(0, prec);
        for (size_t i = 0; i < b.size(); i++) {
            x[i] += dx[i];
            worst = max(worst, abs(dx[i]));
            xn = max(xn, abs(x[i]));
        }
        if (worst <= xn.mul_2si(-(prec - 8))) break;
    }
    return x;
}

EigenRefinement eigen_refine(const DenseMatrix& a, const BigReal& seed, Precision prec_target) {
    const long n = a.rows();
    if (a.rows() != a.cols()) throw std::domain_error("eigen_refine: matrix not square");
    // Rows as large as the operator truncations (up to C(2N,N)) put a
    // representation floor of ||row|| 2^-p under the residual of any p-bit
    // vector, so the iteration carries the row scale in guard bits.
    long row_bits = 0;
    for (long i = 0; i < n; i++)
        for (long j = 0; j < n; j++) row_bits = std::max(row_bits, a.at(i, j).exponent());
    const Precision prec = prec_target + std::max<long>(0, row_bits) + 32;
    BigReal sigma = seed.round_to(prec);

    auto shifted_lu = [&](const BigReal& sh) {
        DenseMatrix m(n, n, prec);
        for (long i = 0; i < n; i++)
            for (long j = 0; j < n; j++) {
                m.at(i, j) = a.at(i, j).round_to(prec);
                if (i == j) m.at(i, j) -= sh;
            }
        return LuFactorization(m, prec);
    };

    std::vector<BigReal> v(n, BigReal(prec));
    for (long i = 0; i < n; i++) v[i] = BigReal(1L, prec) / BigReal(i + 1, prec);

    BigReal lambda = sigma;
    BigReal residual(prec);
    BigReal target = BigReal::pow2(-(prec_target / 2), prec);
    const int max_iters = 64;
    int it = 0;
    LuFactorization lu = shifted_lu(sigma);
    BigReal last_residual(0L, prec);
    for (; it < max_iters; it++) {
        std::vector<BigReal> w = lu.solve(v);
        // lambda estimate: sigma + (v.v)/(v.w)
        BigReal vw(0L, prec), vv(0L, prec);
        for (long i = 0; i < n; i++) {
            vw += v[i] * w[i];
            vv += v[i] * v[i];
        }
        if (vw.is_zero()) throw ConvergenceError("eigen_refine: degenerate iterate");
        lambda = sigma + vv / vw;
        long imax = 0;
        for (long i = 1; i < n; i++)
            if (BigReal::cmpabs(w[i], w[imax]) > 0) imax = i;
        for (long i = 0; i < n; i++) v[i] = w[i] / w[imax];

        residual = BigReal(0L, prec);
        for (long i = 0; i < n; i++) {
            BigReal ri = -lambda * v[i];
            for (long j = 0; j < n; j++) ri += a.at(i, j).round_to(prec) * v[j];
            if (BigReal::cmpabs(ri, residual) > 0) residual = abs(ri);
        }
        if (residual < target) break;
        // Re-shift once if the fixed shift stops making progress.
        if (it > 0 && !last_residual.is_zero() && residual > last_residual.mul_2si(-2)) {
            sigma = lambda;
            lu = shifted_lu(sigma);
        }
        last_residual = residual;
    }
    if (residual >= target)
        throw ConvergenceError("eigen_refine: no convergence (bad seed or eigenvalue multiplicity)");

    // First-entry-1 convention, falling back to the largest entry when the
    // first one vanishes (e.g. eigenvectors supported away from index 0).
    BigReal norm(0L, prec);
    for (const auto& x : v) norm = max(norm, abs(x));
    BigReal scale = v[0];
    if (abs(scale) < norm.mul_2si(-(prec / 4))) {
        long imax = 0;
        for (long i = 1; i < n; i++)
            if (BigReal::cmpabs(v[i], v[imax]) > 0) imax = i;
        scale = v[imax];
    }
    for (auto& x : v) x /= scale;
    return {lambda, std::move(v), residual, it + 1};
}

// ---------------------------------------------------------------------------
// Double-precision eigenvalues: balance + Hessenberg + Francis QR.

namespace {

void balance(std::vector<double>& a, int n) {
    // Parlett-Reinsch with radix-2 scaling.
    auto e = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    bool again = true;
    while (again) {
        again = false;
        for (int i = 0; i < n; i++) {
            double r = 0, c = 0;
            for (int j = 0; j < n; j++)
                if (j != i) {
                    c += std::fabs(e(j, i));
                    r += std::fabs(e(i, j));
                }
            if (c == 0 || r == 0) continue;
            double g = r / 2, f = 1, s = c + r;
            while (c < g) {
                f *= 2;
                c *= 4;
            }
            g = r * 2;
            while (c > g) {
                f /= 2;
                c /= 4;
            }
            if ((c + r) / f < 0.95 * s) {
                again = true;
                double ginv = 1 / f;
                for (int j = 0; j < n; j++) e(i, j) *= ginv;
                for (int j = 0; j < n; j++) e(j, i) *= f;
            }
        }
    }
}

void hessenberg(std::vector<double>& a, int n) {
    auto e = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    for (int k = 0; k < n - 2; k++) {
        // Householder vector annihilating column k below row k+1.
        double alpha = 0;
        for (int i = k + 1; i < n; i++) alpha = std::max(alpha, std::fabs(e(i, k)));
        if (alpha == 0) continue;
        std::vector<double> v(n, 0.0);
        double norm2 = 0;
        for (int i = k + 1; i < n; i++) {
            v[i] = e(i, k) / alpha;
            norm2 += v[i] * v[i];
        }
        double beta = std::sqrt(norm2);
        if (v[k + 1] < 0) beta = -beta;
        v[k + 1] += beta;
        double denom = beta * v[k + 1];
        if (denom == 0) continue;
        // A <- (I - v v^T/denom) A (I - v v^T/denom)
        for (int j = 0; j < n; j++) {
            double s = 0;
            for (int i = k + 1; i < n; i++) s += v[i] * e(i, j);
            s /= denom;
            for (int i = k + 1; i < n; i++) e(i, j) -= s * v[i];
        }
        for (int i = 0; i < n; i++) {
            double s = 0;
            for (int j = k + 1; j < n; j++) s += e(i, j) * v[j];
            s /= denom;
            for (int j = k + 1; j < n; j++) e(i, j) -= s * v[j];
        }
        for (int i = k + 2; i < n; i++) e(i, k) = 0;
    }
}

// Francis double-shift QR on an upper Hessenberg matrix.
std::vector<std::complex<double>> hessenberg_qr(std::vector<double>& a, int n) {
    auto e = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    std::vector<std::complex<double>> eig;
    eig.reserve(n);
    int hi = n - 1;
    int stall = 0;
    const double eps = 1e-15;
    auto solve2x2 = [&](int p) {
        // eigenvalues of the trailing 2x2 block at rows p, p+1
        double tr = e(p, p) + e(p + 1, p + 1);
        double det = e(p, p) * e(p + 1, p + 1) - e(p, p + 1) * e(p + 1, p);
        double disc = tr * tr / 4 - det;
        if (disc >= 0) {
            double rt = std::sqrt(disc);
            double l1 = tr / 2 + (tr >= 0 ? rt : -rt);
            double l2 = (l1 != 0) ? det / l1 : tr / 2 - rt;
            eig.emplace_back(l1, 0.0);
            eig.emplace_back(l2, 0.0);
        } else {
            double im = std::sqrt(-disc);
            eig.emplace_back(tr / 2, im);
            eig.emplace_back(tr / 2, -im);
        }
    };
    while (hi >= 0) {
        if (hi == 0) {
            eig.emplace_back(e(0, 0), 0.0);
            break;
        }
        // deflate tiny subdiagonals
        int lo = hi;
        while (lo > 0) {
            double s = std::fabs(e(lo - 1, lo - 1)) + std::fabs(e(lo, lo));
            if (s == 0) s = 1;
            if (std::fabs(e(lo, lo - 1)) < eps * s) {
                e(lo, lo - 1) = 0;
                break;
            }
            lo--;
        }
        if (lo == hi) {
            eig.emplace_back(e(hi, hi), 0.0);
            hi--;
            stall = 0;
            continue;
        }
        if (lo == hi - 1) {
            solve2x2(lo);
            hi -= 2;
            stall = 0;
            continue;
        }
        if (++stall > 220) throw ConvergenceError("hessenberg_qr: QR iteration failed to deflate");
        // implicit double shift from trailing 2x2 (or an exceptional shift)
        double s, t;
        if (stall % 33 == 0) {
            double w = std::fabs(e(hi, hi - 1)) + std::fabs(e(hi - 1, hi - 2));
            s = 1.5 * w;
            t = w * w;
        } else {
            s = e(hi - 1, hi - 1) + e(hi, hi);
            t = e(hi - 1, hi - 1) * e(hi, hi) - e(hi - 1, hi) * e(hi, hi - 1);
        }
        // first column of (H - l1)(H - l2)
        double x = e(lo, lo) * e(lo, lo) + e(lo, lo + 1) * e(lo + 1, lo) - s * e(lo, lo) + t;
        double y = e(lo + 1, lo) * (e(lo, lo) + e(lo + 1, lo + 1) - s);
        double z = e(lo + 2, lo + 1) * e(lo + 1, lo);
        for (int k = lo; k <= hi - 2; k++) {
            // Householder on (x,y,z)
            double scale = std::fabs(x) + std::fabs(y) + std::fabs(z);
            if (scale == 0) { x = 1; y = z = 0; scale = 1; }
            double xs = x / scale, ys = y / scale, zs = z / scale;
            double alpha = std::sqrt(xs * xs + ys * ys + zs * zs);
            if (xs < 0) alpha = -alpha;
            double v0 = xs + alpha, v1 = ys, v2 = zs;
            double denom = alpha * v0;
            if (denom == 0) { x = e(k + 1, k); y = e(k + 2, k); z = (k + 3 <= hi) ? e(k + 3, k) : 0; continue; }
            int rlo = std::max(lo, k - 1);
            for (int j = rlo; j < n; j++) {
                double sum = v0 * e(k, j) + v1 * e(k + 1, j) + (k + 2 <= hi ? v2 * e(k + 2, j) : 0.0);
                sum /= denom;
                e(k, j) -= sum * v0;
                e(k + 1, j) -= sum * v1;
                if (k + 2 <= hi) e(k + 2, j) -= sum * v2;
            }
            int rhi = std::min(hi, k + 3);
            for (int i = 0; i <= rhi; i++) {
                double sum = v0 * e(i, k) + v1 * e(i, k + 1) + (k + 2 <= hi ? v2 * e(i, k + 2) : 0.0);
                sum /= denom;
                e(i, k) -= sum * v0;
                e(i, k + 1) -= sum * v1;
                if (k + 2 <= hi) e(i, k + 2) -= sum * v2;
            }
            x = e(k + 1, k);
            y = e(k + 2, k);
            z = (k + 3 <= hi) ? e(k + 3, k) : 0;
        }
        // final 2x2 rotation sweep (Givens on (x, y))
        {
            int k = hi - 1;
            double r = std::hypot(x, y);
            if (r != 0) {
                double cth = x / r, sth = y / r;
                for (int j = k - 1 >= lo ? k - 1 : lo; j < n; j++) {
                    double t0 = e(k, j), t1 = e(k + 1, j);
                    e(k, j) = cth * t0 + sth * t1;
                    e(k + 1, j) = -sth * t0 + cth * t1;
                }
                for (int i = 0; i <= hi; i++) {
                    double t0 = e(i, k), t1 = e(i, k + 1);
                    e(i, k) = cth * t0 + sth * t1;
                    e(i, k + 1) = -sth * t0 + cth * t1;
                }
            }
        }
    }
    return eig;
}

}  // namespace

std::vector<std::complex<double>> dense_eigenvalues_double(std::vector<double> a, int n) {
    if (static_cast<size_t>(n) * n != a.size()) throw std::domain_error("dense_eigenvalues_double: bad size");
    balance(a, n);
    hessenberg(a, n);
    return hessenberg_qr(a, n);
}

}  // namespace mink
