#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "minklab/bigreal.hpp"
#include "minklab/rational.hpp"

namespace mink::padic {

// State of the p-adic Markov chain: either the outside state G(0,-kappa), or
// an admissible pair (i, kappa') with i = unit / p^lambda reduced mod p^kappa'.
// Admissibility means ord_p(i) < kappa' (or i = 0 with kappa' > 0).
struct AdmissiblePair {
    bool outside = false;
    long lambda = 0;   // ord_p(i) = -lambda (0 for integer states)
    BigInt unit;       // residue numerator, coprime to p unless zero
    long kappa = 0;    // circle radius exponent (the orbit's top level for outside)

    Rational value(unsigned long p) const;  // i itself
    bool operator==(const AdmissiblePair& o) const {
        return outside == o.outside && lambda == o.lambda && kappa == o.kappa && unit == o.unit;
    }
};

// Finite orbit of the chain with its doubly stochastic transition matrix.
// Rows are sparse: row i is (1/2, 1/2) on columns (a,b), or a single 1 when
// a == b (the tau/sigma coincidence).
struct MarkovOrbit {
    unsigned long p = 0;
    long kappa = 0;
    std::vector<AdmissiblePair> states;
    struct Row {
        int a = 0, b = 0;
    };
    std::vector<Row> rows;

    std::size_t size() const { return states.size(); }
    Rational entry(int i, int j) const;
    int index_of(const AdmissiblePair& s) const;  // -1 when absent
};

// kappa = 1 residue chain over F_p U {infinity}, states ordered
// (infinity, 0, 1, ..., p-1). For p = 2 the general orbit construction is
// used (the (2i-1)^2 = -3 coincidence rule assumes odd p).
MarkovOrbit markov_matrix(unsigned long p);

// Full orbit of G(0,-kappa) under the tau/sigma transition system;
// p^kappa + p^{kappa-1} states.
MarkovOrbit orbit(unsigned long p, long kappa);

// Uniform stationary vector, verified exactly as a left fixed point; also
// checks that power iteration from the root state converges to it.
std::vector<Rational> stationary(const MarkovOrbit& chain);

// Closed forms of mu(z,nu): integer z, non-integer z, and the z=0 complement.
Rational mu_closed_form(unsigned long p, const Rational& z, long nu);

// F_n(z,nu) = 2^{1-n} #{a/b in generation n : ord_p(a/b - z) >= nu}, exact.
Rational empirical_mu(unsigned long p, const Rational& z, long nu, int n);

// E(n) = (2^n + 2(-1)^n)/3 and O(n) = (2^{n-1} + 2(-1)^{n-1})/3.
struct EvenOdd {
    BigInt even, odd;
};
EvenOdd even_odd_counts(int n);
EvenOdd even_odd_counts_enumerated(int n);

// Z_p(s) = (p-1)^2 / ((p - p^-s)(p - p^s)) on the strip |Re s| < 1.
BigComplex Z_p(unsigned long p, const BigComplex& s);
// Shell-sum route sum_k w_k p^{-ks} with w_k = mu(0,k) - mu(0,k+1).
BigComplex Z_p_shell_sum(unsigned long p, const BigComplex& s);

// zeta_T(s) = (12/pi^2) (2pi)^-s cos(pi s/2) Gamma(s) zeta(s) zeta(s+1),
// double accuracy.
BigComplex zeta_T(const BigComplex& s);

// Coefficients of det(xI - P), exact, constant term first.
std::vector<Rational> char_poly(const MarkovOrbit& chain);

// CSV schemas from the module interface.
void dump_orbit_csv(const MarkovOrbit& chain, std::ostream& os);   // state_id,i,kappa,is_outside
void dump_matrix_csv(const MarkovOrbit& chain, std::ostream& os);  // row,col,num,den

}  // namespace mink::padic
