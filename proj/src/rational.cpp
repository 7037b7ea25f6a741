#include "gerbecalc/rational.hpp"

#include <cctype>

namespace gerbecalc {

namespace {

// Accepts an optional sign followed by one or more digits; returns the value.
Int parse_int_strict(const std::string& s, const std::string& whole) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = (s[i] == '-');
        ++i;
    }
    if (i == s.size()) throw MalformedRational("not a rational number: '" + whole + "'");
    Int v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw MalformedRational("not a rational number: '" + whole + "'");
        v = v * 10 + (s[i] - '0');
    }
    return neg ? Int(-v) : v;
}

}  // namespace

Rat parse_rat(const std::string& s) {
    std::string num = s, den;
    bool has_den = false;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        if (s.find('/', slash + 1) != std::string::npos)
            throw MalformedRational("not a rational number: '" + s + "'");
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
        has_den = true;
    }
    Int n = parse_int_strict(num, s);
    Int d = has_den ? parse_int_strict(den, s) : Int(1);
    if (d == 0) throw MalformedRational("zero denominator: '" + s + "'");
    Rat q(n, d);
    q.canonicalize();
    return q;
}

Rat mod1(const Rat& q) {
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return q - Rat(fl);
}

std::string qvec_str(const QVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += rat_str(v[i]);
    }
    s += ")";
    return s;
}

}  // namespace gerbecalc
