#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "minklab/bigreal.hpp"
#include "minklab/rational.hpp"

namespace mink::tree {

// One generation of the Calkin-Wilf tree in breadth-first (diagram) order.
struct TreeGeneration {
    int n = 0;
    std::vector<Rational> members;
};

inline constexpr int kMaxMaterializedGeneration = 26;

// Generation n (2^{n-1} members); throws std::length_error above the guard.
TreeGeneration generation(int n);

// Streams generation n in the same order without materializing it.
void for_each_member(int n, const std::function<void(const Rational&)>& fn);

// Newman's iteration x -> 1/(2[x]+1-x); enumerates the whole tree from 1.
Rational newman_next(const Rational& x);

// Stern diatomic sequence; s(2n)=s(n), s(2n+1)=s(n)+s(n+1).
std::uint64_t stern(std::uint64_t n);

// F_n(x) = 2^{1-n} #{members <= x}, exact.
Rational empirical_cdf(int n, const BigReal& x);
Rational empirical_cdf(int n, const Rational& x);

// Pointwise gap delta_n(x) = F(x) - F_n(x); |delta| <= 2^-n everywhere.
struct Deviation {
    int n = 0;
    BigReal x, delta;
};

// F - F_n sampled over a grid (F from the question-mark series, F_n exact).
std::vector<Deviation> deviation_scan(int n, const std::vector<BigReal>& grid, Precision prec);

enum class Domain { ZeroOne, ZeroInf };

// Generation average of w against dF. folded sums
// w(x)+w(1/x) over the members below 1, using the x -> 1/x closure.
BigReal quadrature_dF(const std::function<BigReal(const BigReal&)>& w, int n,
                      Domain domain, Precision prec, bool folded = false);

// CSV columns: index,numerator,denominator.
void dump_csv(const TreeGeneration& gen, std::ostream& os);

}  // namespace mink::tree
