#pragma once

#include <complex>
#include <vector>

#include "minklab/bigreal.hpp"
#include "minklab/numerics.hpp"

namespace mink {

// Rectangular matrix of BigReal; dimensions fixed at construction.
class DenseMatrix {
public:
    DenseMatrix(long rows, long cols, Precision prec)
        : rows_(rows), cols_(cols), prec_(prec), a_(static_cast<size_t>(rows) * cols, BigReal(prec)) {
        if (rows <= 0 || cols <= 0) throw std::domain_error("DenseMatrix: nonpositive dimension");
    }
    long rows() const { return rows_; }
    long cols() const { return cols_; }
    Precision prec() const { return prec_; }
    BigReal& at(long i, long j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const BigReal& at(long i, long j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    static DenseMatrix identity(long n, Precision prec) {
        DenseMatrix m(n, n, prec);
        for (long i = 0; i < n; i++) m.at(i, i) = BigReal(1L, prec);
        return m;
    }
    std::vector<BigReal> apply(const std::vector<BigReal>& x) const;

private:
    long rows_, cols_;
    Precision prec_;
    std::vector<BigReal> a_;
};

// LU with partial pivoting, reusable for repeated right-hand sides.
class LuFactorization {
public:
    LuFactorization(const DenseMatrix& a, Precision prec);
    std::vector<BigReal> solve(std::vector<BigReal> b) const;
    Precision prec() const { return prec_; }

private:
    long n_;
    Precision prec_;
    std::vector<BigReal> lu_;
    std::vector<long> piv_;
};

// Gaussian elimination with partial pivoting; one step of iterative
// refinement keeps the residual below 2^{-prec/2}*||b||_inf.
std::vector<BigReal> solve_dense(const DenseMatrix& a, const std::vector<BigReal>& b, Precision prec);

struct EigenRefinement {
    BigReal lambda;
    std::vector<BigReal> vec;  // scaled per the first-entry-1 convention
    BigReal residual;          // ||A v - lambda v||_inf / ||v||_inf
    int iterations = 0;
};

// Shifted inverse iteration from an approximate eigenvalue.
EigenRefinement eigen_refine(const DenseMatrix& a, const BigReal& seed, Precision prec);

// Machine-precision dense nonsymmetric eigenvalues: balancing, Householder
// Hessenberg reduction, Francis double-shift QR. Row-major n*n input.
std::vector<std::complex<double>> dense_eigenvalues_double(std::vector<double> a, int n);

}  // namespace mink
