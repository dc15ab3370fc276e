// minklab: CLI for the question-mark-function laboratory.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <functional>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "minklab/moments.hpp"
#include "minklab/numerics.hpp"
#include "minklab/padic.hpp"
#include "minklab/period.hpp"
#include "minklab/qmark.hpp"
#include "minklab/spectral.hpp"
#include "minklab/tree.hpp"

using mink::BigComplex;
using mink::BigReal;
using mink::Precision;
using mink::Rational;
using json = nlohmann::ordered_json;

namespace {

enum class Format { Text, Json, Csv };

struct RunConfig {
    long prec = 192;
    int order = 64;
    int gen = 20;
    Format format = Format::Text;
};

struct ResultRow {
    std::string name, value, err;
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<ResultRow> rows;
    double wall_ms = 0;
};

void emit(const Report& r, Format f) {
    if (f == Format::Json) {
        json j;
        j["command"] = r.command;
        json cfg = json::object();
        for (auto& [k, v] : r.config) cfg[k] = v;
        j["config"] = cfg;
        json rows = json::array();
        for (auto& row : r.rows) {
            json x;
            x["name"] = row.name;
            x["value"] = row.value;
            if (!row.err.empty()) x["err"] = row.err;
            rows.push_back(x);
        }
        j["results"] = rows;
        // wall time goes to stderr so the document stays bit-identical
        std::cout << j.dump(2) << "\n";
        std::cerr << "wall_ms " << r.wall_ms << "\n";
        return;
    }
    if (f == Format::Csv) {
        std::cout << "name,value,err\n";
        for (auto& row : r.rows) std::cout << row.name << "," << row.value << "," << row.err << "\n";
        std::cerr << "wall_ms " << r.wall_ms << "\n";
        return;
    }
    std::cout << "# " << r.command << "\n";
    for (auto& [k, v] : r.config) std::cout << "#   " << k << " = " << v << "\n";
    size_t w = 8;
    for (auto& row : r.rows) w = std::max(w, row.name.size());
    for (auto& row : r.rows) {
        std::cout << row.name << std::string(w - row.name.size() + 2, ' ') << row.value;
        if (!row.err.empty()) std::cout << "   (err " << row.err << ")";
        std::cout << "\n";
    }
    std::cout << "# wall time: " << r.wall_ms << " ms\n";
}

std::string fmt(const BigReal& x, size_t digits = 0) { return x.str(digits); }
std::string fmt(const BigComplex& z) {
    std::ostringstream os;
    os << z;
    return os.str();
}

// numeric literal, "p/q", or a named constant
BigReal parse_real_arg(const std::string& s, Precision prec) {
    if (s == "golden") {
        BigReal g = (BigReal(1, prec) + sqrt(BigReal(5, prec))).mul_2si(-1);
        return g;
    }
    if (s == "golden-conjugate") {
        return (sqrt(BigReal(5, prec)) - BigReal(1, prec)).mul_2si(-1);
    }
    if (s.find('/') != std::string::npos) return BigReal(Rational::parse(s), prec);
    return BigReal::parse(s, prec);
}

struct CheckOutcome {
    int failures = 0;
    std::vector<ResultRow> rows;
    void add(const std::string& name, bool pass, const std::string& detail) {
        rows.push_back({name, pass ? "pass" : "FAIL", detail});
        if (!pass) failures++;
    }
};

json load_golden(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open golden file: " + path);
    json j;
    in >> j;
    return j;
}

void verify_fast(CheckOutcome& out, const json& golden) {
    Precision p = 160;
    auto tol_of = [&](const json& e) { return e["abs_tol"].get<double>(); };
    std::map<std::string, json> gc;
    for (auto& e : golden["constants"]) gc[e["name"].get<std::string>()] = e;
    auto check_const = [&](const std::string& name, const BigReal& got) {
        auto it = gc.find(name);
        if (it == gc.end()) {
            out.add("golden:" + name, false, "missing from golden file");
            return;
        }
        BigReal ref = BigReal::parse(it->second["value"].get<std::string>(), 256);
        double d = std::fabs((got - ref).to_double());
        char buf[32];
        std::snprintf(buf, sizeof buf, "diff %.2e", d);
        out.add("golden:" + name, d <= tol_of(it->second), buf);
    };

    auto t = mink::moments::solve_moments(64, 192);
    check_const("m1", t.m[1]);
    check_const("m2", t.m[2]);
    check_const("m3", t.m[3]);
    check_const("M1", t.M[1]);
    check_const("M2", t.M[2]);

    auto [f1, f2] = mink::qmark::fixed_points(p);
    check_const("fixed_point", f1);
    out.add("fixed_point:symmetric_pair", std::fabs((f1 + f2 - BigReal(1, p)).to_double()) < 1e-30, "pair sums to 1");
    check_const("salem_exponent", mink::qmark::salem_exponent(p));
    check_const("contraction_c2", mink::polylog_half(2, p));
    {
        BigReal bound = BigReal::pi(p) * BigReal::pi(p) / BigReal(12, p) - BigReal::ln2(p) * BigReal::ln2(p);
        check_const("eigen_bound", bound);
    }

    // question-mark round trips
    {
        std::string want;
        for (auto& e : golden["rationals"])
            if (e["name"] == "qmark_3_11") want = e["value"].get<std::string>();
        auto y = mink::qmark::qmark_exact(Rational(3, 11));
        bool ok = !want.empty() && y.to_rational() == Rational::parse(want);
        out.add("qmark:3/11", ok, "?(3/11) = 5/32");
        BigReal x = mink::qmark::qmark_inverse(BigReal(Rational(2, 3), 2 * p), p);
        BigReal g = (sqrt(BigReal(5, 2 * p)) - BigReal(1, 2 * p)).mul_2si(-1);
        out.add("qmark:inverse_2/3", std::fabs((x - g).to_double()) < 1e-30, "golden conjugate");
    }

    // F_n convergence bound at n = 8 on a coarse grid
    {
        auto g8 = mink::tree::generation(8);
        std::vector<double> mem;
        for (auto& m : g8.members) mem.push_back(m.to_double());
        std::sort(mem.begin(), mem.end());
        bool ok = true;
        for (int i = 0; i <= 400 && ok; i++) {
            double x = 0.05 * i;
            double fn = (std::upper_bound(mem.begin(), mem.end(), x) - mem.begin()) / 128.0;
            double F = mink::qmark::F_eval(BigReal(x, 96), 96).to_double();
            if (std::fabs(F - fn) > 1.0 / 256 + 1e-12) ok = false;
        }
        out.add("tree:cdf_bound_n8", ok, "sup|F - F_8| <= 2^-8");
    }

    // p-adic exact values
    out.add("padic:mu_2_0_0", mink::padic::mu_closed_form(2, Rational(0), 0) == Rational(2, 3), "2/3");
    out.add("padic:mu_3_0_1", mink::padic::mu_closed_form(3, Rational(0), 1) == Rational(1, 4), "1/4");
    out.add("padic:mu_5_z_0", mink::padic::mu_closed_form(5, Rational(1, 5), 0) == Rational(1, 30), "1/30");
    {
        auto eo = mink::padic::even_odd_counts(4);
        out.add("padic:E4_O4", eo.even == mink::BigInt(6) && eo.odd == mink::BigInt(2), "6, 2");
        auto st = mink::padic::stationary(mink::padic::orbit(5, 1));
        out.add("padic:stationary_5", st[0] == Rational(1, 6), "uniform 1/6");
        auto cp = mink::padic::char_poly(mink::padic::markov_matrix(7));
        bool ok = true;
        auto& want = golden["charpoly_p7_times16"]["coeffs"];
        for (size_t i = 0; i < cp.size(); i++)
            if (cp[i] * Rational(16) != Rational::parse(want[i].get<std::string>())) ok = false;
        out.add("padic:charpoly_p7", ok, "tree-certified coefficients");
    }
    {
        BigComplex s(0.3, 0.0, 128);
        double d = abs(mink::padic::Z_p(3, s) - mink::padic::Z_p_shell_sum(3, s)).to_double();
        out.add("padic:Zp_shells", d < 1e-12, "closed form vs shells");
    }

    // three-term identity at the floor
    {
        const auto& t64 = t;
        auto r = mink::period::check_three_term(BigComplex(-1.5, 0.0, 192), t64);
        out.add("period:merged_identity", r.merged.to_double() < 1e-45, "residual at z=-3/2");
        auto E = mink::spectral::build_operator(t64.order, t64.prec);
        out.add("spectral:consistency",
                mink::spectral::moment_vector_consistency(t64, E).to_double() < 1e-40, "m + Em = c");
        check_const("G_at_minus1", mink::period::G_rational_series(BigComplex(-1.0, 0.0, 192), t64).value.re);
    }
}

void verify_all(CheckOutcome& out, const json& golden) {
    verify_fast(out, golden);
    std::map<std::string, json> gc;
    for (auto& e : golden["constants"]) gc[e["name"].get<std::string>()] = e;

    // eigenvalues to the full golden digits
    auto eigs = mink::spectral::eigenvalues(128, 192, 4);
    const char* names[4] = {"lambda1", "lambda2", "lambda3", "lambda4"};
    for (int i = 0; i < 4; i++) {
        auto& e = gc[names[i]];
        BigReal ref = BigReal::parse(e["value"].get<std::string>(), 256);
        double d = std::fabs((eigs[i].lambda - ref).to_double());
        out.add(std::string("golden:") + names[i], d <= e["abs_tol"].get<double>(),
                "digits_stable " + std::to_string(eigs[i].digits_stable));
    }

    // kinney two-route agreement
    auto kin = mink::moments::kinney_constant(192);
    out.add("moments:kinney_agreement", kin.agreement.to_double() < 1e-8, "series vs quadrature");
    {
        auto& e = gc["kinney_alpha"];
        BigReal ref = BigReal::parse(e["value"].get<std::string>(), 256);
        out.add("golden:kinney_alpha",
                std::fabs((kin.alpha - ref).to_double()) <= e["abs_tol"].get<double>(), fmt(kin.alpha, 16));
    }

    // Bessel integral equation at s = 1
    auto tb = mink::moments::solve_moments(256, 448);
    auto br = mink::spectral::bessel_equation_residual(BigReal(1.0, 192), tb, 80.0, 192);
    out.add("spectral:bessel_equation", br.relative_residual.to_double() < 1e-3,
            "rel residual " + std::to_string(br.relative_residual.to_double()));
    auto hr = mink::spectral::hankel_identity_residual(BigReal(1.0, 192), tb, 192);
    out.add("spectral:hankel_identity", hr.integral_identity.to_double() < 1e-3, "");
    out.add("spectral:ell_consistency", hr.ell_consistency.to_double() < 1e-3, "");

    // Eisenstein three-term residual
    {
        Precision p = 192;
        int terms = 96;
        BigComplex i2pi(BigReal(0, p), BigReal(1, p) / BigReal::pi(p).mul_2si(1));
        auto H = [&](const BigComplex& w) { return i2pi * mink::period::eisenstein_G1(w, terms); };
        BigComplex z(-1.0, 2.0, p);
        BigComplex one(BigReal(1, p), BigReal(0, p));
        BigComplex two(BigReal(2, p), BigReal(0, p));
        BigComplex w = one / (one - z);
        double res = abs(-w - w * w * H(w) + two * H(z + one) - H(z)).to_double();
        out.add("period:eisenstein_three_term", res < 1e-10, "at z=-1+2i");
    }

    // empirical p-adic convergence at n = 16
    for (auto& [pp, z, nu] : std::vector<std::tuple<unsigned long, Rational, long>>{
             {2, Rational(0), 0}, {3, Rational(0), 1}, {5, Rational(1, 5), 0}}) {
        Rational target = mink::padic::mu_closed_form(pp, z, nu);
        Rational emp = mink::padic::empirical_mu(pp, z, nu, 16);
        double d = std::fabs((emp - target).to_double());
        out.add("padic:empirical_p" + std::to_string(pp), d < 0.01, "gap " + std::to_string(d));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"question-mark function laboratory"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("MINKLAB_PREC")) cfg.prec = std::strtol(env, nullptr, 10);
    std::string config_path;
    bool flag_json = false, flag_csv = false;
    long flag_prec = -1;
    int flag_order = -1, flag_gen = -1;
    app.add_option("--config", config_path, "key=value config file");
    app.add_option("--prec", flag_prec, "working precision in bits");
    app.add_option("--order", flag_order, "truncation order of the moment system");
    app.add_option("--gen", flag_gen, "tree generation depth");
    app.add_flag("--json", flag_json, "JSON report");
    app.add_flag("--csv", flag_csv, "CSV report");

    // qmark
    auto* q = app.add_subcommand("qmark", "question-mark function evaluations");
    std::string q_x = "1/2", q_y = "1/2";
    int q_shift = 3;
    auto* q_eval = q->add_subcommand("eval", "?(x)");
    q_eval->add_option("--x", q_x, "argument in [0,1]: rational p/q, decimal, or golden-conjugate");
    auto* q_inv = q->add_subcommand("inverse", "x with ?(x) = y");
    q_inv->add_option("--y", q_y, "value in [0,1]");
    auto* q_fp = q->add_subcommand("fixed-points", "solutions of ?(x) = x besides 0, 1/2, 1");
    auto* q_chk = q->add_subcommand("check", "functional-equation residuals of F at x");
    q_chk->add_option("--x", q_x, "positive rational");
    q_chk->add_option("--shift-n", q_shift, "shift-law offset");

    // tree
    auto* tr = app.add_subcommand("tree", "Calkin-Wilf tree");
    int tr_n = -1;  // defaults to the --gen setting
    std::uint64_t tr_k = 5;
    std::string tr_start = "1/1";
    int tr_steps = 6;
    auto* tr_gen = tr->add_subcommand("gen", "one generation");
    tr_gen->add_option("--n", tr_n, "generation index");
    auto* tr_st = tr->add_subcommand("stern", "Stern diatomic value");
    tr_st->add_option("--k", tr_k, "index");
    auto* tr_nm = tr->add_subcommand("newman", "iterate x -> 1/(2[x]+1-x)");
    tr_nm->add_option("--start", tr_start, "starting rational");
    tr_nm->add_option("--steps", tr_steps, "number of steps");
    auto* tr_cdf = tr->add_subcommand("cdf", "empirical distribution F_n(x)");
    tr_cdf->add_option("--n", tr_n, "generation index");
    tr_cdf->add_option("--x", q_x, "threshold");

    // moments
    auto* mo = app.add_subcommand("moments", "solve the moment system");

    // gfun
    auto* gf = app.add_subcommand("gfun", "dyadic period function G(z)");
    std::string gf_z = "-1+0i", gf_method = "auto";
    int gf_depth = 16;
    auto* gf_eval = gf->add_subcommand("eval", "evaluate G");
    gf_eval->add_option("--z", gf_z, "complex argument a+bi");
    gf_eval->add_option("--method", gf_method, "auto|power|rational|quadrature");
    gf_eval->add_option("--quad-depth", gf_depth, "dyadic depth for the quadrature route");
    auto* gf_chk = gf->add_subcommand("check", "three-term residual grid (CSV)");
    std::string gf_grid = "default";
    gf_chk->add_option("--grid", gf_grid, "grid name (default)");

    // eigen
    auto* ei = app.add_subcommand("eigen", "spectrum of the operator truncation");
    int ei_count = 4;
    bool ei_vectors = false;
    ei->add_option("--count", ei_count, "number of eigenvalues (<= 8)");
    ei->add_flag("--vectors", ei_vectors, "include coefficient vectors");

    // padic
    auto* pa = app.add_subcommand("padic", "p-adic distribution of the tree");
    unsigned long pa_p = 3;
    std::string pa_z = "0", pa_s = "0.5";
    long pa_nu = 1, pa_kappa = 1;
    int pa_emp = 0;
    std::string pa_dump = "";
    auto* pa_mu = pa->add_subcommand("mu", "limit measure mu_p(z, nu)");
    pa_mu->add_option("--p", pa_p, "prime");
    pa_mu->add_option("--z", pa_z, "center (rational)");
    pa_mu->add_option("--nu", pa_nu, "radius exponent");
    pa_mu->add_option("--empirical", pa_emp, "also count generation n exactly");
    auto* pa_orb = pa->add_subcommand("orbit", "Markov orbit of G(0,-kappa)");
    pa_orb->add_option("--p", pa_p, "prime");
    pa_orb->add_option("--kappa", pa_kappa, "radius exponent");
    pa_orb->add_option("--dump", pa_dump, "csv (states) or matrix (transitions)");
    auto* pa_z_ = pa->add_subcommand("zeta", "Z_p(s) in the strip |Re s| < 1");
    pa_z_->add_option("--p", pa_p, "prime");
    pa_z_->add_option("--s", pa_s, "complex s");
    auto* pa_zt = pa->add_subcommand("zeta-tree", "zeta_T(s) over all primes");
    pa_zt->add_option("--s", pa_s, "complex s");

    // verify
    auto* ve = app.add_subcommand("verify", "named verification checks");
    std::string ve_suite = "fast";
    std::string ve_golden = "data/golden.json";
    ve->add_option("--suite", ve_suite, "fast or all");
    ve->add_option("--golden", ve_golden, "golden data file");

    // let --prec/--order/--json and friends appear after the subcommand too
    std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* a) {
        for (auto* sub : a->get_subcommands({})) {
            sub->fallthrough(true);
            allow_fallthrough(sub);
        }
    };
    allow_fallthrough(&app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors
    }

    // config file < env (already applied) < flags
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config file " << config_path << "\n";
            return 1;
        }
        std::string line;
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto key = line.substr(0, eq), val = line.substr(eq + 1);
            auto trim = [](std::string& s) {
                while (!s.empty() && std::isspace((unsigned char)s.front())) s.erase(s.begin());
                while (!s.empty() && std::isspace((unsigned char)s.back())) s.pop_back();
            };
            trim(key);
            trim(val);
            if (key == "prec") cfg.prec = std::stol(val);
            else if (key == "order") cfg.order = std::stoi(val);
            else if (key == "gen") cfg.gen = std::stoi(val);
            else if (key == "format") cfg.format = val == "json" ? Format::Json : val == "csv" ? Format::Csv : Format::Text;
        }
    }
    if (flag_prec > 0) cfg.prec = flag_prec;
    if (flag_order > 0) cfg.order = flag_order;
    if (flag_gen > 0) cfg.gen = flag_gen;
    if (flag_json) cfg.format = Format::Json;
    if (flag_csv) cfg.format = Format::Csv;

    Report rep;
    for (int i = 0; i < argc; i++) rep.command += std::string(i ? " " : "") + argv[i];
    rep.config = {{"prec_bits", std::to_string(cfg.prec)},
                  {"order", std::to_string(cfg.order)},
                  {"gen", std::to_string(cfg.gen)}};
    auto t0 = std::chrono::steady_clock::now();
    int exit_code = 0;

    try {
        Precision prec = cfg.prec;
        if (q_eval->parsed()) {
            bool named = q_x == "golden" || q_x == "golden-conjugate";
            if (!named && (q_x.find('/') != std::string::npos || q_x.find('.') == std::string::npos)) {
                Rational x = Rational::parse(q_x);
                auto y = mink::qmark::qmark_exact(x);
                rep.rows.push_back({"qmark", y.to_rational().str(), "exact"});
                rep.rows.push_back({"qmark_decimal", fmt(BigReal(y.to_rational(), prec)), ""});
            } else {
                BigReal x = parse_real_arg(q_x, prec + prec / 2);
                rep.rows.push_back({"qmark", fmt(mink::qmark::qmark_eval(x, prec)), "2^-prec"});
            }
        } else if (q_inv->parsed()) {
            if (q_y.find('/') != std::string::npos) {
                Rational y = Rational::parse(q_y);
                mink::BigInt den = y.den();
                if (mpz_popcount(den.raw()) == 1) {
                    long e = static_cast<long>(den.bit_length()) - 1;
                    mink::qmark::DyadicValue dv{y.num(), e};
                    rep.rows.push_back({"preimage", mink::qmark::qmark_inverse_dyadic(dv).str(), "exact"});
                } else {
                    BigReal yr(y, 2 * prec);
                    rep.rows.push_back({"preimage", fmt(mink::qmark::qmark_inverse(yr, prec)), "2^-prec in the image"});
                }
            } else {
                BigReal y = BigReal::parse(q_y, 2 * prec);
                rep.rows.push_back({"preimage", fmt(mink::qmark::qmark_inverse(y, prec)), "2^-prec in the image"});
            }
        } else if (q_fp->parsed()) {
            auto [a, b] = mink::qmark::fixed_points(prec);
            rep.rows.push_back({"fixed_point_1", fmt(a), "2^-prec"});
            rep.rows.push_back({"fixed_point_2", fmt(b), "2^-prec"});
        } else if (q_chk->parsed()) {
            auto r = mink::qmark::check_distribution_eq(Rational::parse(q_x), q_shift, prec);
            rep.rows.push_back({"functional_eq_residual", fmt(r.main, 6), ""});
            rep.rows.push_back({"shift_law_residual", fmt(r.shift, 6), ""});
        } else if (tr_gen->parsed()) {
            if (tr_n < 0) tr_n = std::min(cfg.gen, 12);
            auto g = mink::tree::generation(tr_n);
            if (cfg.format == Format::Csv) {
                mink::tree::dump_csv(g, std::cout);
                return 0;
            }
            for (size_t i = 0; i < g.members.size(); i++)
                rep.rows.push_back({"member_" + std::to_string(i), g.members[i].str(), ""});
        } else if (tr_st->parsed()) {
            rep.rows.push_back({"stern", std::to_string(mink::tree::stern(tr_k)), "exact"});
        } else if (tr_nm->parsed()) {
            Rational x = Rational::parse(tr_start);
            for (int i = 0; i < tr_steps; i++) {
                x = mink::tree::newman_next(x);
                rep.rows.push_back({"step_" + std::to_string(i + 1), x.str(), ""});
            }
        } else if (tr_cdf->parsed()) {
            if (tr_n < 0) tr_n = cfg.gen;
            Rational f = mink::tree::empirical_cdf(tr_n, Rational::parse(q_x));
            rep.rows.push_back({"F_n", f.str(), "exact"});
            rep.rows.push_back({"F_n_decimal", fmt(BigReal(f, prec)), ""});
        } else if (mo->parsed()) {
            auto t = mink::moments::solve_moments(cfg.order, prec);
            if (cfg.format == Format::Json) {
                json j;
                j["command"] = rep.command;
                j["order"] = t.order;
                j["prec_bits"] = static_cast<long>(t.prec);
                json m = json::array(), M = json::array(), c = json::array(), B = json::array(), err = json::array();
                for (int L = 0; L <= t.order; L++) {
                    m.push_back(fmt(t.m[L]));
                    M.push_back(fmt(t.M[L]));
                    B.push_back(t.B[L].str());
                    err.push_back(L ? fmt(t.err[L], 3) : "0");
                }
                for (int L = 1; L <= 2 * t.order; L++) c.push_back(fmt(t.c[L]));
                j["m"] = m;
                j["M"] = M;
                j["c"] = c;
                j["B"] = B;
                j["err"] = err;
                std::cout << j.dump(2) << "\n";
                auto t1 = std::chrono::steady_clock::now();
                std::cerr << "wall_ms " << std::chrono::duration<double, std::milli>(t1 - t0).count() << "\n";
                return 0;
            }
            int mshow = cfg.format == Format::Csv ? t.order : std::min(t.order, 16);
            for (int L = 0; L <= mshow; L++)
                rep.rows.push_back({"m_" + std::to_string(L), fmt(t.m[L]), L ? fmt(t.err[L], 3) : "0"});
            int Mshow = cfg.format == Format::Csv ? t.order : std::min(t.order, 8);
            for (int L = 0; L <= Mshow; L++)
                rep.rows.push_back({"M_" + std::to_string(L), fmt(t.M[L]), ""});
        } else if (gf_eval->parsed()) {
            BigComplex z = mink::parse_complex(gf_z, prec);
            auto t = mink::moments::solve_moments(cfg.order, prec);
            mink::period::PeriodEvaluation ev{z, BigComplex(prec), mink::period::Method::PowerSeries, BigReal(prec), false};
            if (gf_method == "auto") ev = mink::period::G_eval(z, t);
            else if (gf_method == "power") ev = mink::period::G_power_series(z, t);
            else if (gf_method == "rational") ev = mink::period::G_rational_series(z, t);
            else if (gf_method == "quadrature") ev = mink::period::G_quadrature(z, gf_depth, prec);
            else throw CLI::ValidationError("--method", "unknown method " + gf_method);
            rep.rows.push_back({"G", fmt(ev.value), fmt(ev.err, 3)});
            rep.rows.push_back({"method", ev.method == mink::period::Method::PowerSeries ? "power"
                                          : ev.method == mink::period::Method::RationalSeries ? "rational" : "quadrature",
                                ev.near_cut_warning ? "near-cut warning" : ""});
        } else if (gf_chk->parsed()) {
            if (gf_grid != "default") throw CLI::ValidationError("--grid", "unknown grid " + gf_grid);
            auto t = mink::moments::solve_moments(cfg.order, prec);
            std::cout << "z_re,z_im,law,residual\n";
            auto put = [&](double re, double im) {
                auto r = mink::period::check_three_term(BigComplex(re, im, prec), t);
                std::cout << re << "," << im << ",merged," << r.merged.str(4) << "\n";
                std::cout << re << "," << im << ",three_term," << r.three_term.str(4) << "\n";
                std::cout << re << "," << im << ",symmetry," << r.symmetry.str(4) << "\n";
            };
            for (int k = 0; k < 5; k++) put(-1.0 - 0.01 * (k + 1), 0.01 * k);
            for (int k = 0; k < 5; k++) put(-10.0 - 8.0 * k, 0.5);
            for (int k = 0; k < 5; k++) put(-1.5 - 0.7 * k, -0.4 * k);
            return 0;
        } else if (ei->parsed()) {
            auto eigs = mink::spectral::eigenvalues(cfg.order, prec, ei_count);
            if (cfg.format == Format::Json) {
                json j;
                j["command"] = rep.command;
                j["order"] = cfg.order;
                json arr = json::array();
                for (auto& e : eigs) {
                    json x;
                    x["value"] = fmt(e.lambda);
                    x["residual"] = fmt(e.residual, 3);
                    x["digits_stable"] = e.digits_stable;
                    if (e.collision) x["collision"] = true;
                    if (ei_vectors) {
                        json v = json::array();
                        for (auto& cfv : e.coeffs) v.push_back(fmt(cfv, 20));
                        x["coefficients"] = v;
                    }
                    arr.push_back(x);
                }
                j["eigenvalues"] = arr;
                std::cout << j.dump(2) << "\n";
                auto t1 = std::chrono::steady_clock::now();
                std::cerr << "wall_ms " << std::chrono::duration<double, std::milli>(t1 - t0).count() << "\n";
                return 0;
            }
            for (size_t i = 0; i < eigs.size(); i++) {
                rep.rows.push_back({"lambda_" + std::to_string(i + 1), fmt(eigs[i].lambda),
                                    "stable digits " + std::to_string(eigs[i].digits_stable) +
                                        (eigs[i].collision ? ", collision" : "")});
            }
        } else if (pa_mu->parsed()) {
            Rational z = Rational::parse(pa_z);
            Rational mu = mink::padic::mu_closed_form(pa_p, z, pa_nu);
            rep.rows.push_back({"mu", mu.str(), "exact"});
            rep.rows.push_back({"mu_decimal", fmt(BigReal(mu, 96), 15), ""});
            if (pa_emp > 0) {
                Rational emp = mink::padic::empirical_mu(pa_p, z, pa_nu, pa_emp);
                rep.rows.push_back({"empirical_n" + std::to_string(pa_emp), emp.str(),
                                    "gap " + fmt(abs(BigReal(emp - mu, 96)), 3)});
            }
        } else if (pa_orb->parsed()) {
            auto chain = mink::padic::orbit(pa_p, pa_kappa);
            if (pa_dump == "csv") {
                mink::padic::dump_orbit_csv(chain, std::cout);
                return 0;
            }
            if (pa_dump == "matrix") {
                mink::padic::dump_matrix_csv(chain, std::cout);
                return 0;
            }
            rep.rows.push_back({"states", std::to_string(chain.size()), "p^k + p^{k-1}"});
            auto st = mink::padic::stationary(chain);
            rep.rows.push_back({"stationary", st[0].str(), "uniform, verified exactly"});
        } else if (pa_z_->parsed()) {
            BigComplex s = mink::parse_complex(pa_s, prec);
            rep.rows.push_back({"Z_p", fmt(mink::padic::Z_p(pa_p, s)), ""});
            rep.rows.push_back({"shell_sum", fmt(mink::padic::Z_p_shell_sum(pa_p, s)), ""});
        } else if (pa_zt->parsed()) {
            BigComplex s = mink::parse_complex(pa_s, 64);
            rep.rows.push_back({"zeta_T", fmt(mink::padic::zeta_T(s)), "double accuracy"});
        } else if (ve->parsed()) {
            CheckOutcome out;
            json golden = load_golden(ve_golden);
            if (ve_suite == "fast")
                verify_fast(out, golden);
            else if (ve_suite == "all")
                verify_all(out, golden);
            else
                throw CLI::ValidationError("--suite", "unknown suite " + ve_suite);
            rep.rows = out.rows;
            rep.rows.push_back({"total", out.failures == 0 ? "all checks passed"
                                                           : std::to_string(out.failures) + " check(s) failed", ""});
            if (out.failures) exit_code = 2;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    auto t1 = std::chrono::steady_clock::now();
    rep.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    emit(rep, cfg.format);
    return exit_code;
}
