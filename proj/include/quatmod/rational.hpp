#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>

namespace quatmod {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "a", "a/b", and optional leading sign.
inline Rational parseRational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline std::string toString(const Rational& r) { return r.get_str(); }

inline bool isInteger(const Rational& r) { return r.get_den() == 1; }

// v_p of a nonzero rational; throws on zero.
inline long padicValuation(const Rational& x, const Integer& p) {
    if (x == 0) throw std::domain_error("p-adic valuation of zero");
    long v = 0;
    Integer n = x.get_num(), d = x.get_den(), q, rem;
    if (n < 0) n = -n;
    for (;;) {
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
        if (rem != 0) break;
        n = q;
        ++v;
    }
    for (;;) {
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
        if (rem != 0) break;
        d = q;
        --v;
    }
    return v;
}

// x is a p^e-integral multiple of p^e, i.e. v_p(x) >= e (vacuously true for x = 0).
inline bool divisibleAt(const Rational& x, const Integer& p, long e) {
    if (x == 0) return true;
    return padicValuation(x, p) >= e;
}

inline std::optional<Rational> sqrtExact(const Rational& x) {
    if (x < 0) return std::nullopt;
    Integer sn, sd;
    if (mpz_perfect_square_p(x.get_num().get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(x.get_den().get_mpz_t()) == 0) return std::nullopt;
    mpz_sqrt(sn.get_mpz_t(), x.get_num().get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), x.get_den().get_mpz_t());
    Rational r(sn, sd);
    r.canonicalize();
    return r;
}

inline bool isSquarefree(long n) {
    if (n == 0) return false;
    if (n < 0) n = -n;
    for (long d = 2; d * d <= n; ++d) {
        if (n % (d * d) == 0) return false;
    }
    return true;
}

}  // namespace quatmod
