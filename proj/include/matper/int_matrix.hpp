#ifndef MATPER_INT_MATRIX_HPP
#define MATPER_INT_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "matper/common.hpp"
#include "matper/int_poly.hpp"

namespace matper {

// Square matrix of arbitrary-precision integers.
class IntMatrix {
public:
    explicit IntMatrix(size_t dim);  // zero matrix
    static IntMatrix identity(size_t dim);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);
    // companion matrix of a monic polynomial (degree >= 1)
    static IntMatrix companion(const IntPoly& monic);

    size_t dim() const { return dim_; }
    Int& at(size_t i, size_t j) { return e_[i * dim_ + j]; }
    const Int& at(size_t i, size_t j) const { return e_[i * dim_ + j]; }

    bool operator==(const IntMatrix& b) const { return dim_ == b.dim_ && e_ == b.e_; }
    bool operator!=(const IntMatrix& b) const { return !(*this == b); }

    IntMatrix operator+(const IntMatrix& b) const;
    IntMatrix operator-(const IntMatrix& b) const;
    IntMatrix operator*(const IntMatrix& b) const;  // throws on dimension mismatch

    bool is_identity() const;
    bool is_zero() const;

    Int trace() const;
    Int det() const;  // fraction-free (Bareiss)

    IntMatrix reduced_mod(const Int& n) const;  // entries in [0, n)

private:
    size_t dim_;
    std::vector<Int> e_;
};

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
IntMatrix mat_pow(const IntMatrix& a, unsigned long n);

// det(xI - A), monic of degree dim, by the Faddeev-LeVerrier recurrence
// (all divisions exact over Z)
IntPoly char_poly(const IntMatrix& a);

// monic-over-Q minimal polynomial in primitive integer form; divides char_poly
IntPoly min_poly(const IntMatrix& a);

// evaluate f at the matrix a (Horner)
IntMatrix poly_eval_matrix(const IntPoly& f, const IntMatrix& a);

}  // namespace matper

#endif
