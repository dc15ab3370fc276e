#include "minklab/tree.hpp"

#include "minklab/qmark.hpp"

#include <ostream>
#include <stdexcept>

namespace mink::tree {

namespace {

// Children of a/b are a/(a+b) (left) and (a+b)/b (right), diagram order.
void walk(const Rational& x, int depth, const std::function<void(const Rational&)>& fn) {
    if (depth == 0) {
        fn(x);
        return;
    }
    BigInt a = x.num(), b = x.den();
    BigInt ab = a + b;
    walk(Rational(a, ab), depth - 1, fn);
    walk(Rational(ab, b), depth - 1, fn);
}

}  // namespace

void for_each_member(int n, const std::function<void(const Rational&)>& fn) {
    if (n < 1) throw std::domain_error("tree generation index must be >= 1");
    // Left-to-right depth-first at fixed depth equals the diagram's row order.
    walk(Rational(1, 1), n - 1, fn);
}

TreeGeneration generation(int n) {
    if (n < 1) throw std::domain_error("tree generation index must be >= 1");
    if (n > kMaxMaterializedGeneration)
        throw std::length_error("tree generation too large to materialize; use for_each_member");
    TreeGeneration g;
    g.n = n;
    g.members.reserve(1u << (n - 1));
    for_each_member(n, [&](const Rational& x) { g.members.push_back(x); });
    return g;
}

Rational newman_next(const Rational& x) {
    if (x.sign() <= 0) throw std::domain_error("newman_next: input must be positive");
    // x -> 1/(2[x] + 1 - x)
    Rational d = Rational(x.floor() * BigInt(2) + BigInt(1)) - x;
    return d.reciprocal();
}

std::uint64_t stern(std::uint64_t n) {
    // Pair (s(k), s(k+1)) built from the bits of n, most significant first:
    // (a,b) -> (a, a+b) on bit 0, (a+b, b) on bit 1.
    if (n == 0) return 0;
    std::uint64_t a = 0, b = 1;
    int bits = 64 - __builtin_clzll(n);
    for (int i = bits - 1; i >= 0; i--) {
        if ((n >> i) & 1)
            a += b;
        else
            b += a;
    }
    return a;
}

namespace {

template <typename Cmp>
Rational counting_cdf(int n, const Cmp& le) {
    if (n < 1) throw std::domain_error("empirical_cdf: generation index must be >= 1");
    long count = 0;
    for_each_member(n, [&](const Rational& m) {
        if (le(m)) count++;
    });
    return Rational(BigInt(count), BigInt::pow2(n - 1));
}

}  // namespace

Rational empirical_cdf(int n, const BigReal& x) {
    if (x.sign() < 0) return Rational(0);
    return counting_cdf(n, [&](const Rational& m) { return x.cmp(m) >= 0; });
}

Rational empirical_cdf(int n, const Rational& x) {
    if (x.sign() < 0) return Rational(0);
    return counting_cdf(n, [&](const Rational& m) { return m <= x; });
}

std::vector<Deviation> deviation_scan(int n, const std::vector<BigReal>& grid, Precision prec) {
    TreeGeneration g = generation(n);
    std::vector<Rational> sorted = g.members;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Deviation> out;
    out.reserve(grid.size());
    Rational denom(BigInt(1), BigInt::pow2(n - 1));
    for (const BigReal& x : grid) {
        long count = std::upper_bound(sorted.begin(), sorted.end(), x,
                                      [](const BigReal& v, const Rational& m) { return v.cmp(m) < 0; }) -
                     sorted.begin();
        BigReal fn(Rational(count) * denom, prec);
        out.push_back({n, x.round_to(prec), qmark::F_eval(x, prec) - fn});
    }
    return out;
}

BigReal quadrature_dF(const std::function<BigReal(const BigReal&)>& w, int n,
                      Domain domain, Precision prec, bool folded) {
    if (n < 1) throw std::domain_error("quadrature_dF: generation index must be >= 1");
    BigReal sum(0L, prec);
    Rational one(1);
    if (domain == Domain::ZeroOne) {
        // 2^{2-n} sum over members < 1 (the [0,1] half carries half the mass,
        // and d? = 2 dF there)
        for_each_member(n, [&](const Rational& m) {
            if (m < one) sum += w(BigReal(m, prec));
        });
        return sum.mul_2si(2 - n);
    }
    if (folded) {
        // int_0^inf w dF = int_0^1 (w(x) + w(1/x)) dF via F(x) + F(1/x) = 1;
        // each generation is closed under x -> 1/x, with x = 1 self-paired.
        for_each_member(n, [&](const Rational& m) {
            if (m < one)
                sum += w(BigReal(m, prec)) + w(BigReal(m.reciprocal(), prec));
            else if (m == one)
                sum += w(BigReal(m, prec));
        });
        return sum.mul_2si(1 - n);
    }
    for_each_member(n, [&](const Rational& m) { sum += w(BigReal(m, prec)); });
    return sum.mul_2si(1 - n);
}

void dump_csv(const TreeGeneration& gen, std::ostream& os) {
    os << "index,numerator,denominator\n";
    for (size_t i = 0; i < gen.members.size(); i++)
        os << i << "," << gen.members[i].num() << "," << gen.members[i].den() << "\n";
}

}  // namespace mink::tree
