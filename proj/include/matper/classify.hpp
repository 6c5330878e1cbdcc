#ifndef MATPER_CLASSIFY_HPP
#define MATPER_CLASSIFY_HPP

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "matper/algnum.hpp"
#include "matper/int_matrix.hpp"

namespace matper {

enum class Verdict { exceptional, not_exceptional };

enum class Branch {
    finite_order,
    integer_power,
    quadratic_unit,
    not_diagonalizable,
    rank_ge_2,
    rank1_nonqualifying,
};

const char* to_string(Verdict v);
const char* to_string(Branch b);

struct FiniteOrderWitness {
    unsigned long order = 1;  // A^order = I, minimal
};

struct IntegerPowerWitness {
    unsigned long r = 1;          // char_poly(A^r) = prod (x - base^m_i)^mult_i
    Int base;                     // a > 1, canonical (not a proper power)
    std::vector<long> exponents;  // m_i, aligned with the distinct eigenvalues
};

struct QuadraticUnitWitness {
    unsigned long r = 1;  // torsion order; lambda_i^r = lambda^(r a_i)
    Int discriminant;     // field discriminant of Q(lambda^r), positive
    AlgebraicNumber generator;               // lambda, free generator of Gamma
    std::vector<long> exponents;             // a_i per distinct eigenvalue
    std::vector<unsigned long> zeta_orders;  // order of zeta_i = lambda_i lambda^{-a_i}
};

struct IndependentPair {
    size_t i = 0, j = 0;  // indices into the verdict's eigenvalue list
};

struct SearchBounds {
    long exp_bound = 64;
    unsigned long r_bound = 0;
};

struct EigenInfo {
    AlgebraicNumber value;
    unsigned multiplicity = 1;
};

struct ExceptionalityVerdict {
    Verdict verdict = Verdict::not_exceptional;
    Branch branch = Branch::rank_ge_2;
    std::variant<std::monostate, FiniteOrderWitness, IntegerPowerWitness, QuadraticUnitWitness,
                 IndependentPair>
        witness;
    SearchBounds bounds;
    std::vector<EigenInfo> eigenvalues;  // distinct eigenvalues, deterministic order
};

// true iff min_poly(A) is squarefree
bool is_diagonalizable(const IntMatrix& a);

// the global order of A when finite (all char_poly factors cyclotomic and A
// diagonalizable); verified by mat_pow before returning
std::optional<unsigned long> finite_order(const IntMatrix& a);

struct EigenGroupRank {
    enum class Rank { rank0, rank1, rank_ge2 } rank = Rank::rank0;
    std::optional<AlgebraicNumber> generator;       // rank 1 only: |lambda| > 1
    std::vector<long> exponents;                    // a_i per input (0 for torsion)
    std::vector<unsigned long> zeta_orders;         // per input eigenvalue
    unsigned long torsion_order = 1;                // lcm of zeta orders
    std::optional<std::pair<size_t, size_t>> independent_pair;  // rank >= 2 only
};

// free rank of the multiplicative group generated by the eigenvalues, with a
// generator and exponents in the rank-1 case (all relations verified exactly)
EigenGroupRank eigen_group_rank(const std::vector<AlgebraicNumber>& eigs, long exp_bound);

// default torsion-order safety rail: lcm of m with phi(m) <= 2 d^2, capped at 10^6
unsigned long default_r_bound(size_t dim);

// the full decision procedure; exp_bound/r_bound of 0 select the defaults
ExceptionalityVerdict classify(const IntMatrix& a, long exp_bound = 64, unsigned long r_bound = 0);

}  // namespace matper

#endif
