#ifndef MATPER_GROWTH_HPP
#define MATPER_GROWTH_HPP

#include <vector>

#include "matper/algnum.hpp"
#include "matper/int_matrix.hpp"
#include "matper/modorder.hpp"

namespace matper {

// gcd of all d^2 entries (nonnegative; 0 iff the matrix is zero)
Int gcd_entries(const IntMatrix& m);

struct GcdRecord {
    unsigned long n = 0;
    Int g;           // gcd(A^n - I); 0 encodes A^n = I
    double log_g = 0;  // natural log, 0 when g <= 1
    double ratio = 0;  // log_g / n
};

struct GcdStream {
    std::vector<GcdRecord> records;
    unsigned long tail_window = 0;   // window the summary refers to
    double tail_max_ratio = 0;       // max of ratio over the tail window
    unsigned long tail_argmax = 0;   // n attaining it (0 when no records)
};

// records for n = 1..n_max, one matrix multiplication per step; the summary
// covers the last `tail_window` exponents (0 = whole range). Requires A
// nonsingular.
GcdStream gcd_power_stream(const IntMatrix& a, unsigned long n_max, unsigned long tail_window = 0);

struct EntropyResult {
    double eta = 0;
    double error_bound = 0;
    std::vector<ExpandingRootInfo> expanding_roots;
};

// eta_A = sum of log|lambda| over eigenvalues outside the unit circle
// = log Mahler measure of char_poly(A); certified error <= 2^-20
EntropyResult entropy(const IntMatrix& a);

struct PeriodRow {
    unsigned long k = 0;
    Int modulus;   // N_k = gcd(A^{rk} - I) > 1
    Int ord;       // ord(A, N_k), always <= r*k
    double ratio = 0;  // ord / log N_k
};

struct PeriodSequence {
    bool finite_order = false;
    unsigned long finite_order_at = 0;  // rk with A^{rk} = I when degenerate
    std::vector<PeriodRow> rows;
};

// the small-period moduli sequence N_k = gcd(A^{rk} - I); rows for N_k > 1;
// degenerates with an explicit signal when A has finite order
PeriodSequence small_period_sequence(const IntMatrix& a, unsigned long r, unsigned long k_max);

// Kronecker (tensor) product, (dim a * dim b) square
IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);

struct ScanRecord {
    Int modulus;
    Int ord;
    double ratio = 0;  // ord / log N
};

struct ScanResult {
    std::vector<ScanRecord> records;   // ascending N, only N coprime to det A
    unsigned long skipped = 0;         // count of N with gcd(N, det A) > 1
    size_t min_index = 0;              // argmin of ratio (first attained)
};

// ord(A,N) for every N in [n_min, n_max] coprime to det A; deterministic
// ascending output regardless of the number of worker threads
ScanResult ord_scan(const IntMatrix& a, const Int& n_min, const Int& n_max, unsigned jobs = 1);

}  // namespace matper

#endif
