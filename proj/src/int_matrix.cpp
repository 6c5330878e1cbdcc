#include "matper/int_matrix.hpp"

#include <algorithm>

#include "matper/errors.hpp"
#include "matper/poly_factor.hpp"

namespace matper {

IntMatrix::IntMatrix(size_t dim) : dim_(dim), e_(dim * dim, Int(0)) {
    if (dim == 0) throw DomainError("matrix dimension must be positive");
}

IntMatrix IntMatrix::identity(size_t dim) {
    IntMatrix m(dim);
    for (size_t i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    if (rows.empty()) throw DomainError("matrix dimension must be positive");
    IntMatrix m(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw DomainError("matrix is not square");
        for (size_t j = 0; j < rows.size(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::companion(const IntPoly& monic) {
    if (monic.is_zero() || monic.degree() < 1 || monic.leading() != 1)
        throw DomainError("companion matrix requires a monic polynomial of degree >= 1");
    size_t d = monic.degree();
    IntMatrix m(d);
    for (size_t i = 0; i + 1 < d; ++i) m.at(i + 1, i) = 1;
    for (size_t i = 0; i < d; ++i) m.at(i, d - 1) = -monic.coeff(i);
    return m;
}

IntMatrix IntMatrix::operator+(const IntMatrix& b) const {
    if (dim_ != b.dim_) throw DomainError("matrix dimension mismatch");
    IntMatrix r(dim_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + b.e_[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& b) const {
    if (dim_ != b.dim_) throw DomainError("matrix dimension mismatch");
    IntMatrix r(dim_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - b.e_[i];
    return r;
}

IntMatrix IntMatrix::operator*(const IntMatrix& b) const {
    if (dim_ != b.dim_) throw DomainError("matrix dimension mismatch");
    IntMatrix r(dim_);
    Int t;
    for (size_t i = 0; i < dim_; ++i)
        for (size_t k = 0; k < dim_; ++k) {
            const Int& aik = at(i, k);
            if (aik == 0) continue;
            for (size_t j = 0; j < dim_; ++j) {
                t = aik * b.at(k, j);
                r.at(i, j) += t;
            }
        }
    return r;
}

bool IntMatrix::is_identity() const {
    for (size_t i = 0; i < dim_; ++i)
        for (size_t j = 0; j < dim_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool IntMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Int& c) { return c == 0; });
}

Int IntMatrix::trace() const {
    Int t = 0;
    for (size_t i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

Int IntMatrix::det() const {
    // Bareiss fraction-free elimination
    IntMatrix w = *this;
    Int denom = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < dim_; ++k) {
        if (w.at(k, k) == 0) {
            size_t p = k + 1;
            while (p < dim_ && w.at(p, k) == 0) ++p;
            if (p == dim_) return 0;
            for (size_t j = 0; j < dim_; ++j) std::swap(w.at(k, j), w.at(p, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < dim_; ++i) {
            for (size_t j = k + 1; j < dim_; ++j) {
                Int v = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                w.at(i, j) = divexact(v, denom);
            }
            w.at(i, k) = 0;
        }
        denom = w.at(k, k);
    }
    Int d = w.at(dim_ - 1, dim_ - 1);
    return sign > 0 ? d : Int(-d);
}

IntMatrix IntMatrix::reduced_mod(const Int& n) const {
    if (n < 1) throw DomainError("modulus must be positive");
    IntMatrix r(dim_);
    for (size_t i = 0; i < e_.size(); ++i)
        mpz_mod(r.e_[i].get_mpz_t(), e_[i].get_mpz_t(), n.get_mpz_t());
    return r;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) { return a * b; }

IntMatrix mat_pow(const IntMatrix& a, unsigned long n) {
    IntMatrix acc = IntMatrix::identity(a.dim());
    IntMatrix base = a;
    while (n) {
        if (n & 1) acc = acc * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return acc;
}

IntPoly char_poly(const IntMatrix& a) {
    // Faddeev-LeVerrier: M_0 = I, c_d = 1;
    // M_k = A M_{k-1} + c_{d-k+1} I, c_{d-k} = -tr(A M_k)/k ... using the
    // standard form where every division by k is exact over Z.
    size_t d = a.dim();
    std::vector<Int> c(d + 1, Int(0));
    c[d] = 1;
    IntMatrix m = IntMatrix::identity(d);  // M_0
    IntMatrix am = a;                      // A * M_{k-1}
    for (size_t k = 1; k <= d; ++k) {
        am = a * m;
        Int t = am.trace();
        c[d - k] = divexact(-t, Int(static_cast<long>(k)));
        if (k < d) {
            m = am;
            for (size_t i = 0; i < d; ++i) m.at(i, i) += c[d - k];
        }
    }
    return IntPoly(std::move(c));
}

IntMatrix poly_eval_matrix(const IntPoly& f, const IntMatrix& a) {
    IntMatrix acc(a.dim());
    if (f.is_zero()) return acc;
    for (size_t k = f.coeffs().size(); k-- > 0;) {
        acc = acc * a;
        const Int& c = f.coeffs()[k];
        if (c != 0)
            for (size_t i = 0; i < a.dim(); ++i) acc.at(i, i) += c;
    }
    return acc;
}

IntPoly min_poly(const IntMatrix& a) {
    IntPoly cp = char_poly(a);
    Factorization fact = factor_int_poly(cp);
    // the minimal polynomial contains every distinct irreducible factor of the
    // characteristic polynomial; search products by increasing total degree
    struct Candidate {
        std::vector<unsigned> mult;
        size_t total_degree;
    };
    const auto& factors = fact.factors;
    size_t nf = factors.size();
    std::vector<unsigned> mult(nf, 1);
    // enumerate exponent vectors 1 <= e_i <= multiplicity_i ordered by total degree
    std::vector<Candidate> cands;
    std::vector<unsigned> cur(nf, 1);
    while (true) {
        size_t deg = 0;
        for (size_t i = 0; i < nf; ++i) deg += cur[i] * factors[i].first.degree();
        cands.push_back({cur, deg});
        size_t i = 0;
        for (; i < nf; ++i) {
            if (cur[i] < factors[i].second) {
                ++cur[i];
                break;
            }
            cur[i] = 1;
        }
        if (i == nf) break;
    }
    std::sort(cands.begin(), cands.end(),
              [](const Candidate& x, const Candidate& y) { return x.total_degree < y.total_degree; });
    for (const Candidate& cand : cands) {
        IntPoly f = IntPoly::constant(1);
        for (size_t i = 0; i < nf; ++i) f = f * factors[i].first.pow(cand.mult[i]);
        if (poly_eval_matrix(f, a).is_zero()) return f.primitive_part();
    }
    return cp;  // unreachable: the characteristic polynomial annihilates A
}

}  // namespace matper
