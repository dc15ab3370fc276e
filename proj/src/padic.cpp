#include "minklab/padic.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <tuple>

#include "minklab/numerics.hpp"

namespace mink::padic {

namespace {

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; d++)
        if (p % d == 0) return false;
    return true;
}

BigInt pow_big(unsigned long p, long e) {
    return BigInt::pow(BigInt(static_cast<long>(p)), static_cast<unsigned long>(e));
}

// p^e as a rational for possibly negative e
Rational pow_rat(unsigned long p, long e) {
    if (e >= 0) return Rational(pow_big(p, e));
    return Rational(BigInt(1), pow_big(p, -e));
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
    BigInt r;
    if (mpz_invert(r.raw(), a.raw(), m.raw()) == 0)
        throw std::domain_error("padic: residue not invertible");
    return r;
}

}  // namespace

Rational AdmissiblePair::value(unsigned long p) const {
    if (outside) return Rational(0);
    return Rational(unit, pow_big(p, lambda));
}

Rational MarkovOrbit::entry(int i, int j) const {
    const Row& r = rows[i];
    if (r.a == r.b) return r.a == j ? Rational(1) : Rational(0);
    int hits = (r.a == j ? 1 : 0) + (r.b == j ? 1 : 0);
    return Rational(hits, 2);
}

int MarkovOrbit::index_of(const AdmissiblePair& s) const {
    for (size_t i = 0; i < states.size(); i++)
        if (states[i] == s) return static_cast<int>(i);
    return -1;
}

namespace {

// Transition maps of the chain acting on admissible pairs.
// Integer states live at the orbit's top level kappa; non-integer states
// u/p^lambda at level kappa-2lambda.
struct OrbitBuilder {
    unsigned long p;
    long kappa;
    std::map<std::tuple<bool, long, std::string>, int> index;
    std::vector<AdmissiblePair> states;
    std::vector<MarkovOrbit::Row> rows;

    int intern(const AdmissiblePair& s) {
        auto key = std::make_tuple(s.outside, s.lambda, s.unit.str() + "@" + std::to_string(s.kappa));
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(states.size());
        index.emplace(key, id);
        states.push_back(s);
        rows.emplace_back();
        return id;
    }

    AdmissiblePair tau(const AdmissiblePair& s) const {
        if (s.lambda == 0) {
            BigInt m = pow_big(p, s.kappa);
            return {false, 0, (s.unit - BigInt(1)).mod(m), s.kappa};
        }
        // (u - p^lambda)/p^lambda, reduced mod p^{kappa'+lambda}
        BigInt m = pow_big(p, s.kappa + s.lambda);
        return {false, s.lambda, (s.unit - pow_big(p, s.lambda)).mod(m), s.kappa};
    }

    AdmissiblePair sigma(const AdmissiblePair& s) const {
        if (s.lambda > 0) {
            // u/(p^lambda - u): integer again, back at the top level
            BigInt m = pow_big(p, kappa);
            BigInt den = (pow_big(p, s.lambda) - s.unit).mod(m);
            return {false, 0, (s.unit * mod_inverse(den, m)).mod(m), kappa};
        }
        // integer i; i = 1 never reaches here (separate chain rule)
        BigInt one(1);
        BigInt diff = (one - s.unit).mod(pow_big(p, s.kappa));
        if (diff.is_zero()) throw std::logic_error("sigma: i = 1 must use the outside rule");
        BigInt d = diff;
        long v = static_cast<long>(d.remove_factor(BigInt(static_cast<long>(p))));
        if (v == 0) {
            BigInt m = pow_big(p, s.kappa);
            return {false, 0, (s.unit * mod_inverse(diff, m)).mod(m), s.kappa};
        }
        // i = 1 mod p: with 1 - i = p^v w (w a unit), i/(1-i) = (i w^-1)/p^v,
        // a non-integer state at level kappa - 2v
        long k0 = s.kappa - 2 * v;
        BigInt m = pow_big(p, k0 + v);  // modulus for the unit of a lambda=v state
        BigInt u0 = (s.unit * mod_inverse(d.mod(m), m)).mod(m);
        return {false, v, u0, k0};
    }

    void build() {
        AdmissiblePair outside{true, 0, BigInt(0), kappa};
        intern(outside);
        for (size_t head = 0; head < states.size(); head++) {
            AdmissiblePair s = states[head];
            int a, b;
            if (s.outside) {
                // G(0,-k) -> 1/2 G(0,-k) + 1/2 F(-1, k)
                BigInt m = pow_big(p, kappa);
                a = intern(outside);
                b = intern({false, 0, (BigInt(-1)).mod(m), kappa});
            } else if (s.lambda == 0 && s.unit == BigInt(1)) {
                // F(1,k) -> 1/2 F(0,k) + 1/2 G(0,-k)
                a = intern({false, 0, BigInt(0), kappa});
                b = intern(outside);
            } else {
                a = intern(tau(s));
                b = intern(sigma(s));
            }
            rows[head] = {a, b};
        }
    }
};

}  // namespace

MarkovOrbit orbit(unsigned long p, long kappa) {
    if (!is_prime(p)) throw std::domain_error("orbit: p must be prime");
    if (kappa < 1) throw std::domain_error("orbit: kappa must be >= 1");
    BigInt size = pow_big(p, kappa) + pow_big(p, kappa - 1);
    if (size > BigInt(1000000L)) throw std::length_error("orbit: state count exceeds 10^6");

    OrbitBuilder b{p, kappa, {}, {}, {}};
    b.build();
    MarkovOrbit chain;
    chain.p = p;
    chain.kappa = kappa;
    chain.states = std::move(b.states);
    chain.rows = std::move(b.rows);
    if (BigInt(static_cast<long>(chain.states.size())) != size)
        throw std::logic_error("orbit: reachable set does not match p^k + p^{k-1}");
    return chain;
}

MarkovOrbit markov_matrix(unsigned long p) {
    if (!is_prime(p)) throw std::domain_error("markov_matrix: p must be prime");
    if (p == 2) {
        // the (2i-1)^2 = -3 coincidence rule presumes odd p; the orbit construction
        // covers p = 2, reordered to the (inf, 0, 1) convention.
        MarkovOrbit raw = orbit(2, 1);
        std::vector<int> order(3);
        order[0] = raw.index_of({true, 0, BigInt(0), 1});
        order[1] = raw.index_of({false, 0, BigInt(0), 1});
        order[2] = raw.index_of({false, 0, BigInt(1), 1});
        std::vector<int> inv(3);
        for (int i = 0; i < 3; i++) inv[order[i]] = i;
        MarkovOrbit out;
        out.p = 2;
        out.kappa = 1;
        for (int i = 0; i < 3; i++) {
            out.states.push_back(raw.states[order[i]]);
            out.rows.push_back({inv[raw.rows[order[i]].a], inv[raw.rows[order[i]].b]});
        }
        return out;
    }
    // states (inf, 0, 1, ..., p-1); inf plays G(0,-1)
    MarkovOrbit chain;
    chain.p = p;
    chain.kappa = 1;
    const long pl = static_cast<long>(p);
    chain.states.push_back({true, 0, BigInt(0), 1});
    for (long i = 0; i < pl; i++) chain.states.push_back({false, 0, BigInt(i), 1});
    auto idx = [&](long i) { return static_cast<int>(1 + ((i % pl + pl) % pl)); };
    const int inf = 0;
    // L_inf -> 1/2 L_inf + 1/2 L_{-1}
    chain.rows.push_back({inf, idx(-1)});
    for (long i = 0; i < pl; i++) {
        if (i == 1) {
            chain.rows.push_back({idx(0), inf});  // sigma(1) = inf
            continue;
        }
        long t = i - 1;
        // sigma(i) = i/(1-i) mod p
        BigInt m(pl);
        BigInt s0 = (BigInt(i) * mod_inverse(BigInt(1 - i).mod(m), m)).mod(m);
        long s = s0.to_long();
        chain.rows.push_back({idx(t), idx(s)});
    }
    return chain;
}

std::vector<Rational> stationary(const MarkovOrbit& chain) {
    const size_t n = chain.size();
    // exact column sums certify double stochasticity, hence the uniform
    // left fixed point
    std::vector<Rational> colsum(n, Rational(0));
    for (auto& r : chain.rows) {
        if (r.a == r.b) {
            colsum[r.a] += Rational(1);
        } else {
            colsum[r.a] += Rational(1, 2);
            colsum[r.b] += Rational(1, 2);
        }
    }
    for (auto& cs : colsum)
        if (cs != Rational(1)) throw std::logic_error("stationary: chain is not doubly stochastic");

    Rational unif(1, static_cast<long>(n));
    // power iteration from the root state (generation 1 = {1/1}
    // sits in the circle of i = 1 at the top level)
    int start = -1;
    for (size_t i = 0; i < n; i++) {
        const auto& s = chain.states[i];
        if (!s.outside && s.lambda == 0 && s.unit == BigInt(1)) start = static_cast<int>(i);
    }
    if (start < 0) throw std::logic_error("stationary: start state missing");
    std::vector<Rational> v(n, Rational(0));
    v[start] = Rational(1);
    Rational tol(BigInt(1), BigInt::pow2(40));
    const int max_iters = 4000;
    for (int it = 0; it < max_iters; it++) {
        Rational worst(0);
        for (size_t i = 0; i < n; i++) {
            Rational d = v[i] - unif;
            if (d.sign() < 0) d = -d;
            if (d > worst) worst = d;
        }
        if (worst < tol) break;
        if (it + 1 == max_iters)
            throw std::logic_error("stationary: power iteration did not converge");
        std::vector<Rational> w(n, Rational(0));
        for (size_t i = 0; i < n; i++) {
            const auto& r = chain.rows[i];
            if (r.a == r.b)
                w[i] = v[r.a];
            else
                w[i] = (v[r.a] + v[r.b]) * Rational(1, 2);
        }
        v = std::move(w);
    }
    return std::vector<Rational>(n, unif);
}

Rational mu_closed_form(unsigned long p, const Rational& z, long nu) {
    if (!is_prime(p)) throw std::domain_error("mu_closed_form: p must be prime");
    if (z.is_zero()) {
        if (nu >= 1) return Rational(1) / (pow_rat(p, nu) + pow_rat(p, nu - 1));
        return Rational(1) - Rational(1) / (pow_rat(p, 1 - nu) + pow_rat(p, -nu));
    }
    PadicOrd ord = padic_ord(z, p);
    if (ord.v >= nu)
        throw std::domain_error("mu_closed_form: need ord_p(z) < nu (or z = 0)");
    if (ord.v >= 0) return Rational(1) / (pow_rat(p, nu) + pow_rat(p, nu - 1));
    long lambda = -ord.v;
    return Rational(1) / (pow_rat(p, nu + 2 * lambda) + pow_rat(p, nu + 2 * lambda - 1));
}

Rational empirical_mu(unsigned long p, const Rational& z, long nu, int n) {
    if (!is_prime(p)) throw std::domain_error("empirical_mu: p must be prime");
    if (n < 1 || n > 24) throw std::length_error("empirical_mu: generation index out of range [1,24]");
    long zn = z.num().to_long(), zd = z.den().to_long();
    long pl = static_cast<long>(p);
    long count = 0;
    // ord_p(a/b - z) >= nu, exact over the generation, walked as int64 pairs
    auto visit = [&](long a, long b) {
        long num = a * zd - zn * b;
        long den = b * zd;
        long v;
        if (num == 0) {
            v = nu;  // infinite order; certainly >= nu
        } else {
            v = 0;
            while (num % pl == 0) {
                num /= pl;
                v++;
            }
            while (den % pl == 0) {
                den /= pl;
                v--;
            }
        }
        if (v >= nu) count++;
    };
    std::function<void(long, long, int)> walk = [&](long a, long b, int depth) {
        if (depth == 0) {
            visit(a, b);
            return;
        }
        walk(a, a + b, depth - 1);
        walk(a + b, b, depth - 1);
    };
    walk(1, 1, n - 1);
    return Rational(BigInt(count), BigInt::pow2(n - 1));
}

EvenOdd even_odd_counts(int n) {
    if (n < 1) throw std::domain_error("even_odd_counts: n must be >= 1");
    BigInt two_n = BigInt::pow2(n);
    long sn = (n % 2 == 0) ? 1 : -1;
    BigInt E = (two_n + BigInt(2 * sn)) / BigInt(3);
    BigInt O = (BigInt::pow2(n - 1) - BigInt(2 * sn)) / BigInt(3);
    return {E, O};
}

EvenOdd even_odd_counts_enumerated(int n) {
    if (n < 1 || n > 24) throw std::length_error("even_odd_counts_enumerated: n out of range [1,24]");
    long even = 0, odd = 0;
    std::function<void(long, long, int)> walk = [&](long a, long b, int depth) {
        if (depth == 0) {
            if ((a % 2 == 0) || (b % 2 == 0))
                even++;
            else
                odd++;
            return;
        }
        walk(a, a + b, depth - 1);
        walk(a + b, b, depth - 1);
    };
    walk(1, 1, n - 1);
    return {BigInt(even), BigInt(odd)};
}

namespace {

BigComplex complex_pow(double base, const BigComplex& e) {
    Precision p = e.prec();
    BigReal lnb = log(BigReal(base, p));
    return exp(BigComplex(e.re * lnb, e.im * lnb));
}

}  // namespace

BigComplex Z_p(unsigned long p, const BigComplex& s) {
    if (!is_prime(p)) throw std::domain_error("Z_p: p must be prime");
    if (abs(s.re) >= BigReal(1, s.prec()))
        throw std::domain_error("Z_p: s outside the strip |Re s| < 1");
    Precision pr = s.prec();
    BigComplex ps = complex_pow(static_cast<double>(p), s);
    BigComplex pms = complex_pow(static_cast<double>(p), -s);
    BigComplex pc(BigReal(static_cast<long>(p), pr), BigReal(0, pr));
    BigReal pm1(static_cast<long>(p) - 1, pr);
    BigComplex num(pm1 * pm1, BigReal(0, pr));
    return num / ((pc - pms) * (pc - ps));
}

BigComplex Z_p_shell_sum(unsigned long p, const BigComplex& s) {
    if (!is_prime(p)) throw std::domain_error("Z_p_shell_sum: p must be prime");
    Precision pr = s.prec();
    double res = s.re.to_double();
    if (std::fabs(res) >= 1.0) throw std::domain_error("Z_p_shell_sum: s outside the strip");
    long K = static_cast<long>((pr * 0.6931) / (std::log((double)p) * (1.0 - std::fabs(res)))) + 8;
    BigComplex acc(BigReal(0, pr), BigReal(0, pr));
    for (long k = -K; k <= K; k++) {
        Rational w = mu_closed_form(p, Rational(0), k) - mu_closed_form(p, Rational(0), k + 1);
        BigComplex term = complex_pow(static_cast<double>(p), BigComplex(s.re * BigReal(-k, pr), s.im * BigReal(-k, pr)));
        acc += BigComplex(BigReal(w, pr) * term.re, BigReal(w, pr) * term.im);
    }
    return acc;
}

BigComplex zeta_T(const BigComplex& s) {
    double sd = std::hypot(s.re.to_double(), s.im.to_double());
    if (sd < 1e-8) throw PoleError("zeta_T: pole at s = 0 (zeta(s+1) diverges)");
    BigComplex one(1.0, 0.0, 64);
    ZetaGamma zg = zeta_and_gamma(s);
    ZetaGamma zg1 = zeta_and_gamma(s + one);
    if (!zg.gamma_finite) throw PoleError("zeta_T: Gamma pole at nonpositive integer s");
    Precision pr = 64;
    BigReal pi = BigReal::pi(pr);
    BigComplex half_pi_s(s.re.round_to(pr) * pi.mul_2si(-1), s.im.round_to(pr) * pi.mul_2si(-1));
    // cos(x+iy) = cos x cosh y - i sin x sinh y, via exp for the hyperbolics
    BigReal ey = exp(half_pi_s.im), emy = exp(-half_pi_s.im);
    BigComplex cosv(cos(half_pi_s.re) * (ey + emy).mul_2si(-1), -(sin(half_pi_s.re) * (ey - emy).mul_2si(-1)));
    BigComplex two_pi_pow = complex_pow(2 * M_PI, -s);
    BigComplex factor(BigReal(12, pr) / (pi * pi), BigReal(0, pr));
    return factor * two_pi_pow * cosv * zg.gamma * zg.zeta * zg1.zeta;
}

std::vector<Rational> char_poly(const MarkovOrbit& chain) {
    const int n = static_cast<int>(chain.size());
    if (n > 128) throw std::length_error("char_poly: chain too large for the exact computation");
    // Faddeev-LeVerrier, using the 2-sparse rows of A for the products
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> coeff(n + 1, Rational(0));
    coeff[n] = Rational(1);
    // M_1 = A
    auto applyA = [&](const std::vector<std::vector<Rational>>& X) {
        std::vector<std::vector<Rational>> Y(n, std::vector<Rational>(n, Rational(0)));
        for (int i = 0; i < n; i++) {
            const auto& r = chain.rows[i];
            for (int j = 0; j < n; j++) {
                if (r.a == r.b)
                    Y[i][j] = X[r.a][j];
                else
                    Y[i][j] = (X[r.a][j] + X[r.b][j]) * Rational(1, 2);
            }
        }
        return Y;
    };
    std::vector<std::vector<Rational>> I(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; i++) I[i][i] = Rational(1);
    auto Mk = applyA(I);
    for (int k = 1; k <= n; k++) {
        Rational tr(0);
        for (int i = 0; i < n; i++) tr += Mk[i][i];
        coeff[n - k] = -(tr / Rational(k));
        if (k == n) break;
        for (int i = 0; i < n; i++) Mk[i][i] += coeff[n - k];
        Mk = applyA(Mk);
    }
    return coeff;
}

void dump_orbit_csv(const MarkovOrbit& chain, std::ostream& os) {
    os << "state_id,i,kappa,is_outside\n";
    for (size_t i = 0; i < chain.size(); i++) {
        const auto& s = chain.states[i];
        os << i << "," << (s.outside ? Rational(0) : s.value(chain.p)).str() << ","
           << (s.outside ? -chain.kappa : s.kappa) << "," << (s.outside ? 1 : 0) << "\n";
    }
}

void dump_matrix_csv(const MarkovOrbit& chain, std::ostream& os) {
    os << "row,col,num,den\n";
    for (size_t i = 0; i < chain.size(); i++) {
        const auto& r = chain.rows[i];
        if (r.a == r.b) {
            os << i << "," << r.a << ",1,1\n";
        } else {
            int lo = std::min(r.a, r.b), hi = std::max(r.a, r.b);
            os << i << "," << lo << ",1,2\n";
            os << i << "," << hi << ",1,2\n";
        }
    }
}

}  // namespace mink::padic
