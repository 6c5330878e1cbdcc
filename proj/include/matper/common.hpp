#ifndef MATPER_COMMON_HPP
#define MATPER_COMMON_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace matper {

using Int = mpz_class;
using Rat = mpq_class;

// mpq_class(a,b) does not canonicalize; route all construction through here.
inline Rat make_rat(const Int& num, const Int& den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

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

inline Int abs(const Int& a) {
    Int r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

// floor division exact-quotient helper; asserts divisibility in debug builds
inline Int divexact(const Int& a, const Int& b) {
    Int r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline bool fits_slong(const Int& a) { return mpz_fits_slong_p(a.get_mpz_t()) != 0; }

}  // namespace matper

#endif
