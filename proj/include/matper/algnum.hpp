#ifndef MATPER_ALGNUM_HPP
#define MATPER_ALGNUM_HPP

#include <optional>
#include <vector>

#include "matper/interval.hpp"
#include "matper/int_poly.hpp"

namespace matper {

// An algebraic number: irreducible primitive minimal polynomial plus a
// certified isolating rectangle (exactly one root of the polynomial lies in
// the closed box). Immutable; refinement returns new values.
class AlgebraicNumber {
public:
    AlgebraicNumber(IntPoly minpoly, QRect box, long prec_bits);

    static AlgebraicNumber from_rational(const Rat& q);
    static AlgebraicNumber from_integer(const Int& n);

    const IntPoly& minpoly() const { return minpoly_; }
    const QRect& box() const { return box_; }
    long prec_bits() const { return prec_bits_; }
    size_t degree() const { return minpoly_.degree(); }

    bool is_rational() const { return degree() == 1; }
    Rat rational_value() const;  // requires degree 1
    bool is_zero() const;

    // new value with box width <= 2^-prec (same root)
    AlgebraicNumber refined(long prec_bits) const;

    // approximate complex value (midpoint of the box)
    double approx_re() const { return box_.re.mid().get_d(); }
    double approx_im() const { return box_.im.mid().get_d(); }

private:
    IntPoly minpoly_;
    QRect box_;
    long prec_bits_;
};

// certified isolating boxes for all roots of a squarefree polynomial, each
// tagged with its irreducible factor; boxes pairwise disjoint
std::vector<AlgebraicNumber> isolate_roots(const IntPoly& f, long prec_bits = 64);

// roots of one irreducible polynomial (internal building block)
std::vector<AlgebraicNumber> isolate_irreducible(const IntPoly& f, long prec_bits = 64);

struct HeightResult {
    double value;
    double error_bound;
};

// absolute logarithmic Weil height h(alpha) = log M(minpoly)/deg, certified
// error bound <= 2^-20
HeightResult height(const AlgebraicNumber& alpha);

// certified enclosure of log M(f) for a nonzero integer polynomial
// (unit-circle roots contribute exactly zero; decided algebraically)
struct MahlerLog {
    double lo, hi;
};
MahlerLog log_mahler(const IntPoly& f, double tol);

// log M(f) together with the roots outside the unit circle and their
// certified log-moduli (repeated per multiplicity)
struct ExpandingRootInfo {
    AlgebraicNumber root;
    double log_modulus_lo;
    double log_modulus_hi;
};
struct MahlerAnalysis {
    double lo, hi;
    std::vector<ExpandingRootInfo> expanding;
};
MahlerAnalysis mahler_analysis(const IntPoly& f, double tol);

// number of roots of f on the unit circle, counted exactly (f irreducible)
size_t unit_circle_root_count(const IntPoly& f);

// minimal polynomial of alpha^n (n != 0, alpha != 0)
IntPoly power_minpoly(const AlgebraicNumber& alpha, long n);

// alpha^n as a certified algebraic number
AlgebraicNumber alg_pow(const AlgebraicNumber& alpha, long n);
// alpha * beta as a certified algebraic number
AlgebraicNumber alg_mul(const AlgebraicNumber& alpha, const AlgebraicNumber& beta);
// exact equality of two algebraic numbers
bool alg_equal(const AlgebraicNumber& alpha, const AlgebraicNumber& beta);

// m such that f = Phi_m, if f is cyclotomic (f irreducible)
std::optional<unsigned long> is_cyclotomic(const IntPoly& f);
// same without the (costly) irreducibility validation; callers guarantee it
std::optional<unsigned long> cyclotomic_index_of_irreducible(const IntPoly& f);
// the m-th cyclotomic polynomial
IntPoly cyclotomic_poly(unsigned long m);
// torsion order of alpha if it is a root of unity
std::optional<unsigned long> root_of_unity_order(const AlgebraicNumber& alpha);

struct DependenceRelation {
    long a = 0, b = 0;
    enum class Kind { exact_unit_relation, torsion_relation } kind = Kind::exact_unit_relation;
    unsigned long torsion_order = 1;  // order of the root of unity alpha^a beta^b
};

// decide multiplicative dependence: a relation alpha^a beta^b = root of unity
// with 0 < max(|a|,|b|) <= exp_bound, minimal max(|a|,|b|), or nullopt.
// Preconditions: alpha, beta nonzero and not roots of unity.
std::optional<DependenceRelation> mult_dependent(const AlgebraicNumber& alpha,
                                                 const AlgebraicNumber& beta, long exp_bound);

struct QuadraticUnitInfo {
    Int field_discriminant;
    Rat norm;
    bool real = false;
    bool unit = false;  // algebraic integer of norm +-1
};

// field data for a degree-2 algebraic number; nullopt when degree != 2
std::optional<QuadraticUnitInfo> quadratic_unit_info(const AlgebraicNumber& alpha);

// certified enclosure of log|alpha| with width <= tol (alpha != 0)
struct LogAbs {
    double lo, hi;
};
LogAbs log_abs(const AlgebraicNumber& alpha, double tol);

// directed-rounding log of exact rational bounds (lo <= hi, lo > 0)
LogAbs certified_log_interval(const Rat& lo, const Rat& hi);

}  // namespace matper

#endif
