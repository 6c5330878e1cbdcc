#ifndef MATPER_POLY_FACTOR_HPP
#define MATPER_POLY_FACTOR_HPP

#include <utility>
#include <vector>

#include "matper/int_poly.hpp"

namespace matper {

// Complete factorization over Z: input = unit * content * prod(factor^mult),
// factors primitive irreducible with positive leading coefficient, pairwise
// distinct, sorted deterministically.
struct Factorization {
    int unit = 1;
    Int content = 1;
    std::vector<std::pair<IntPoly, unsigned>> factors;

    IntPoly expand() const;
};

// Zassenhaus: squarefree decomposition, factorization modulo a good prime,
// Hensel lifting, subset recombination. Throws DomainError on the zero
// polynomial.
Factorization factor_int_poly(const IntPoly& f);

// Yun's algorithm on a primitive nonconstant polynomial: f = prod(s_i^i) with
// the s_i squarefree, pairwise coprime, positive leading coefficients.
std::vector<std::pair<IntPoly, unsigned>> squarefree_decomposition(const IntPoly& primitive_f);

// product of the distinct irreducible factors, primitive, positive lc
IntPoly squarefree_part(const IntPoly& f);

bool is_squarefree(const IntPoly& f);
bool is_irreducible(const IntPoly& f);

}  // namespace matper

#endif
