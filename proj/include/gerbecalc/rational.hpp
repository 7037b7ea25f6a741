#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "gerbecalc/errors.hpp"

namespace gerbecalc {

using Int = mpz_class;
using Rat = mpq_class;
using ZVec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

/// Canonical textual form: "p" for integers, "p/q" otherwise (q > 0, gcd(p,q)=1).
inline std::string rat_str(const Rat& q) { return q.get_str(); }

/// Parses "p" or "p/q". Rejects empty input, zero denominators and garbage.
Rat parse_rat(const std::string& s);

/// Representative of q modulo 1 in [0, 1).
Rat mod1(const Rat& q);

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Floor division: a = q*b + r with 0 <= r < |b|.
inline Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline QVec to_qvec(const ZVec& v) {
    QVec r;
    r.reserve(v.size());
    for (const auto& x : v) r.emplace_back(x);
    return r;
}

std::string qvec_str(const QVec& v);

}  // namespace gerbecalc
