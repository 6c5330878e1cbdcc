#ifndef MATPER_MODORDER_HPP
#define MATPER_MODORDER_HPP

#include <optional>
#include <utility>
#include <vector>

#include "matper/int_matrix.hpp"

namespace matper {

// Certified prime factorization: primes strictly increasing, product = n.
struct FactoredInteger {
    Int n = 1;
    std::vector<std::pair<Int, unsigned>> factors;

    Int reconstruct() const;
};

// Deterministic Miller-Rabin below 2^64; 40 deterministic strong
// probable-prime rounds (bases derived from n) above.
bool is_probable_prime(const Int& n);

// Trial division to 10^6, then Brent-cycling Pollard rho. The randomized
// stage is seeded from (n, seed) so results are reproducible.
FactoredInteger factor_integer(const Int& n, uint64_t seed = 0);

// A^n mod N by binary exponentiation with per-multiplication reduction.
IntMatrix mat_pow_mod(const IntMatrix& a, const Int& n, const Int& modulus);

// One minimality witness: A^(order/prime) has entry (row,col) = value, which
// differs from the identity there.
struct OrderWitness {
    Int prime;
    size_t row = 0, col = 0;
    Int value;
};

struct OrderResult {
    Int modulus;
    Int order;
    std::vector<OrderWitness> certificate;  // one witness per prime dividing order
};

// ord(A,N): least k >= 1 with A^k = I mod N. Throws DomainError when
// gcd(det A, N) > 1 (the ord = infinity case). N >= 2 required.
OrderResult order_mod(const IntMatrix& a, const Int& n, uint64_t seed = 0);
// same, with a caller-supplied factorization of N (validated)
OrderResult order_mod(const IntMatrix& a, const FactoredInteger& n_fact, uint64_t seed = 0);

// smallest k <= cap with A^k = I mod N by direct iteration, or nullopt
std::optional<Int> order_mod_bruteforce(const IntMatrix& a, const Int& n, unsigned long cap);

// replay an OrderResult certificate: A^order = I and every listed witness
// entry is reproduced; returns false on any mismatch
bool verify_order_certificate(const IntMatrix& a, const OrderResult& r);

}  // namespace matper

#endif
