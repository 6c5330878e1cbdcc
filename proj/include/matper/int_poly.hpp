#ifndef MATPER_INT_POLY_HPP
#define MATPER_INT_POLY_HPP

#include <optional>
#include <string>
#include <vector>

#include "matper/common.hpp"

namespace matper {

// Univariate polynomial with arbitrary-precision integer coefficients,
// stored lowest degree first. The zero polynomial is a distinct state:
// degree() refuses it, so no caller can confuse deg(0) with deg(constant).
class IntPoly {
public:
    IntPoly() = default;  // zero polynomial

    // Trailing zero coefficients are stripped; an all-zero list gives the
    // zero polynomial.
    explicit IntPoly(std::vector<Int> coeffs);

    static IntPoly zero() { return IntPoly(); }
    static IntPoly constant(Int c);
    static IntPoly x();                         // the monomial x
    static IntPoly monomial(Int c, size_t deg); // c * x^deg

    bool is_zero() const { return coeffs_.empty(); }
    // degree of a nonzero polynomial; throws DomainError on the zero polynomial
    size_t degree() const;
    bool is_constant() const { return coeffs_.size() <= 1; }

    const std::vector<Int>& coeffs() const { return coeffs_; }
    // coefficient of x^i (0 beyond the degree)
    const Int& coeff(size_t i) const;
    const Int& leading() const;
    const Int& constant_term() const;

    bool is_monic() const { return !is_zero() && leading() == 1; }

    // gcd of all coefficients, nonnegative; 0 for the zero polynomial
    Int content() const;
    // f / content, sign-normalized to positive leading coefficient
    IntPoly primitive_part() const;
    bool is_primitive() const;

    IntPoly derivative() const;
    // coefficient-reversal x^deg * f(1/x); requires nonzero constant term
    IntPoly reversed() const;

    Int eval(const Int& x) const;
    Rat eval(const Rat& x) const;

    IntPoly operator-() const;
    IntPoly operator+(const IntPoly& g) const;
    IntPoly operator-(const IntPoly& g) const;
    IntPoly operator*(const IntPoly& g) const;
    IntPoly operator*(const Int& c) const;
    bool operator==(const IntPoly& g) const { return coeffs_ == g.coeffs_; }
    bool operator!=(const IntPoly& g) const { return coeffs_ != g.coeffs_; }

    IntPoly pow(unsigned long n) const;

    // Exact division; throws DomainError if g does not divide *this over Z.
    IntPoly divexact(const IntPoly& g) const;
    // quotient/remainder over Q scaled: lc(g)^(deg f - deg g + 1) * f = q*g + r
    // (standard pseudo-division; r has degree < deg g or is zero)
    void pseudo_divrem(const IntPoly& g, IntPoly& q, IntPoly& r) const;
    bool divides(const IntPoly& g) const;  // *this | g

    // human-readable form, highest degree first, e.g. "x^2 - 3*x + 1"
    std::string to_string(const std::string& var = "x") const;

    // deterministic total order (degree, then coefficients high to low)
    static int compare(const IntPoly& a, const IntPoly& b);

private:
    void normalize();
    std::vector<Int> coeffs_;
};

// gcd over Z[x]: primitive, positive leading coefficient; gcd(0,0) = 0
IntPoly poly_gcd(const IntPoly& f, const IntPoly& g);

// f with all coefficients reduced into the symmetric range (-m/2, m/2]
IntPoly symmetric_mod(const IntPoly& f, const Int& m);

}  // namespace matper

#endif
