#include "minklab/bigreal.hpp"
#include "minklab/rational.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace mink {

std::ostream& operator<<(std::ostream& os, const BigInt& v) { return os << v.str(); }
std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.str(); }

Rational Rational::parse(std::string_view s) {
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        return Rational(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string_view::npos) return Rational(BigInt(s));
    // decimal literal: p.q -> (p*10^k + q) / 10^k
    std::string digits(s.substr(0, dot));
    std::string frac(s.substr(dot + 1));
    bool neg = !digits.empty() && digits[0] == '-';
    if (neg) digits.erase(0, 1);
    for (char ch : frac) {
        if (!std::isdigit(static_cast<unsigned char>(ch)))
            throw std::invalid_argument("Rational: bad decimal literal: " + std::string(s));
        digits.push_back(ch);
    }
    BigInt num(digits.empty() ? std::string_view("0") : std::string_view(digits));
    BigInt den = BigInt::pow(BigInt(10), frac.size());
    if (neg) num = -num;
    return Rational(num, den);
}

PadicOrd padic_ord(const Rational& x, unsigned long p) {
    if (x.is_zero()) return {false, 0};
    BigInt pp(static_cast<long>(p));
    BigInt n = x.num();
    BigInt d = x.den();
    long vn = static_cast<long>(n.remove_factor(pp));
    long vd = static_cast<long>(d.remove_factor(pp));
    return {true, vn - vd};
}

std::string BigReal::str(size_t digits) const {
    if (digits == 0) digits = static_cast<size_t>(prec() * 0.30103) + 2;
    std::ostringstream fmt;
    fmt << "%." << digits << "Rg";
    char buf[512];
    mpfr_snprintf(buf, sizeof buf, fmt.str().c_str(), x_);
    return buf;
}

std::ostream& operator<<(std::ostream& os, const BigReal& v) { return os << v.str(); }

std::ostream& operator<<(std::ostream& os, const BigComplex& v) {
    os << v.re.str();
    if (!v.im.is_zero()) os << (v.im.sign() < 0 ? "-" : "+") << abs(v.im).str() << "i";
    return os;
}

BigComplex parse_complex(std::string_view s, Precision prec) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch)) && ch != '*') t.push_back(ch);
    if (t.empty()) throw std::invalid_argument("empty complex literal");
    bool has_i = t.back() == 'i' || t.back() == 'j';
    if (!has_i) return {BigReal::parse(t, prec), BigReal(0L, prec)};
    t.pop_back();
    // split at the last +/- that is not an exponent sign and not leading
    size_t split = std::string::npos;
    for (size_t k = t.size(); k-- > 1;) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {
        if (t.empty() || t == "+") return {BigReal(0L, prec), BigReal(1L, prec)};
        if (t == "-") return {BigReal(0L, prec), BigReal(-1L, prec)};
        return {BigReal(0L, prec), BigReal::parse(t, prec)};
    }
    std::string ims = t.substr(split);
    if (ims == "+") ims = "1";
    if (ims == "-") ims = "-1";
    return {BigReal::parse(t.substr(0, split), prec), BigReal::parse(ims, prec)};
}

}  // namespace mink
