#include "matper/modorder.hpp"

#include <algorithm>
#include <random>

#include "matper/errors.hpp"

namespace matper {

namespace {

// ---------------------------------------------------------------------
// primality
// ---------------------------------------------------------------------

const unsigned kTrialLimit = 1000000;

const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> primes = [] {
        std::vector<bool> sieve(kTrialLimit + 1, true);
        std::vector<uint32_t> out;
        for (uint32_t i = 2; i <= kTrialLimit; ++i) {
            if (!sieve[i]) continue;
            out.push_back(i);
            for (uint64_t j = static_cast<uint64_t>(i) * i; j <= kTrialLimit; j += i) sieve[j] = false;
        }
        return out;
    }();
    return primes;
}

bool miller_rabin_round(const Int& n, const Int& base, const Int& d, unsigned long s) {
    Int x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return true;
        if (x == 1) return false;
    }
    return false;
}

}  // namespace

bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    static const unsigned long kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (unsigned long p : kSmall) {
        if (n == p) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        // deterministic for n < 2^64 with the 12 smallest prime bases
        for (unsigned long p : kSmall)
            if (!miller_rabin_round(n, Int(p), d, s)) return false;
        return true;
    }
    // 40 deterministic strong probable-prime rounds with bases derived from n
    std::mt19937_64 rng(mpz_fdiv_ui(n.get_mpz_t(), 0xffffffffffffffc5ULL) ^ 0x5851f42d4c957f2dULL);
    for (int round = 0; round < 40; ++round) {
        Int base = 2 + Int(static_cast<unsigned long>(rng() % 0xffffffffffffULL)) % (n - 3);
        if (!miller_rabin_round(n, base, d, s)) return false;
    }
    return true;
}

namespace {

Int brent_rho(const Int& n, std::mt19937_64& rng) {
    // Brent's cycle variant with batched gcd
    if (mpz_even_p(n.get_mpz_t())) return 2;
    while (true) {
        Int y = Int(static_cast<unsigned long>(rng() % 0xffffffffULL)) % n;
        Int c = 1 + Int(static_cast<unsigned long>(rng() % 0xffffffffULL)) % (n - 1);
        Int m = 128, g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            x = y;
            for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
            Int k = 0;
            while (k < r && g == 1) {
                ys = y;
                Int lim = m < r - k ? m : r - k;
                for (Int i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * matper::abs(x - y) % n;
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                g = gcd(matper::abs(x - ys), n);
            }
        }
        if (g != n) return g;
        // cycle failure: retry with new parameters
    }
}

void factor_rec(const Int& n, std::mt19937_64& rng, std::vector<Int>& primes) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        primes.push_back(n);
        return;
    }
    Int d = brent_rho(n, rng);
    factor_rec(d, rng, primes);
    factor_rec(n / d, rng, primes);
}

}  // namespace

Int FactoredInteger::reconstruct() const {
    Int r = 1;
    for (const auto& [p, e] : factors) r *= pow_int(p, e);
    return r;
}

FactoredInteger factor_integer(const Int& n, uint64_t seed) {
    if (n < 1) throw DomainError("factor_integer requires a positive integer");
    FactoredInteger out;
    out.n = n;
    Int m = n;
    // trial division; drops to a machine-word loop as soon as m fits
    for (uint32_t p : small_primes()) {
        if (mpz_fits_ulong_p(m.get_mpz_t())) break;
        if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        out.factors.emplace_back(Int(p), e);
    }
    if (mpz_fits_ulong_p(m.get_mpz_t())) {
        uint64_t w = mpz_get_ui(m.get_mpz_t());
        uint32_t resume = out.factors.empty()
                              ? 0
                              : static_cast<uint32_t>(out.factors.back().first.get_ui());
        for (uint32_t p : small_primes()) {
            if (p <= resume) continue;
            if (static_cast<uint64_t>(p) * p > w) break;
            if (w % p != 0) continue;
            unsigned e = 0;
            while (w % p == 0) {
                w /= p;
                ++e;
            }
            out.factors.emplace_back(Int(p), e);
        }
        m = static_cast<unsigned long>(w);
    }
    if (m > 1) {
        if (is_probable_prime(m)) {
            out.factors.emplace_back(m, 1);
        } else {
            std::mt19937_64 rng(mpz_fdiv_ui(m.get_mpz_t(), 0xffffffffffffffc5ULL) ^ seed ^
                                0x9e3779b97f4a7c15ULL);
            std::vector<Int> primes;
            factor_rec(m, rng, primes);
            std::sort(primes.begin(), primes.end());
            for (size_t i = 0; i < primes.size();) {
                size_t j = i;
                while (j < primes.size() && primes[j] == primes[i]) ++j;
                out.factors.emplace_back(primes[i], static_cast<unsigned>(j - i));
                i = j;
            }
        }
    }
    std::sort(out.factors.begin(), out.factors.end());
    return out;
}

IntMatrix mat_pow_mod(const IntMatrix& a, const Int& n, const Int& modulus) {
    if (modulus < 1) throw DomainError("modulus must be positive");
    if (n < 0) throw DomainError("negative exponent");
    size_t d = a.dim();
    IntMatrix acc = IntMatrix::identity(d).reduced_mod(modulus);
    IntMatrix base = a.reduced_mod(modulus);
    size_t nbits = mpz_sizeinbase(n.get_mpz_t(), 2);
    if (n == 0) return acc;
    for (size_t i = nbits; i-- > 0;) {
        acc = (acc * acc).reduced_mod(modulus);
        if (mpz_tstbit(n.get_mpz_t(), i)) acc = (acc * base).reduced_mod(modulus);
    }
    return acc;
}

// ---------------------------------------------------------------------
// fast fixed-width path for moduli below 2^28 (d * m^2 < 2^63)
// ---------------------------------------------------------------------

namespace {

constexpr unsigned long kSmallModulusLimit = 1ul << 28;

struct SmallMat {
    size_t d;
    std::vector<uint64_t> e;

    static SmallMat identity(size_t d) {
        SmallMat m{d, std::vector<uint64_t>(d * d, 0)};
        for (size_t i = 0; i < d; ++i) m.e[i * d + i] = 1;
        return m;
    }
    static SmallMat from(const IntMatrix& a, uint64_t mod) {
        SmallMat m{a.dim(), std::vector<uint64_t>(a.dim() * a.dim())};
        Int mz = static_cast<unsigned long>(mod);
        for (size_t i = 0; i < a.dim(); ++i)
            for (size_t j = 0; j < a.dim(); ++j) {
                Int t;
                mpz_mod(t.get_mpz_t(), a.at(i, j).get_mpz_t(), mz.get_mpz_t());
                m.e[i * a.dim() + j] = t.get_ui();
            }
        return m;
    }
    bool is_identity() const {
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j)
                if (e[i * d + j] != (i == j ? 1u : 0u)) return false;
        return true;
    }
};

// Barrett-style reduction for fixed modulus
struct Reducer {
    uint64_t n;
    uint64_t magic;  // floor(2^64 / n)

    explicit Reducer(uint64_t mod) : n(mod) {
        magic = static_cast<uint64_t>((static_cast<unsigned __int128>(1) << 64) / mod);
    }
    uint64_t reduce(uint64_t x) const {
        uint64_t q = static_cast<uint64_t>((static_cast<unsigned __int128>(x) * magic) >> 64);
        uint64_t r = x - q * n;
        while (r >= n) r -= n;
        return r;
    }
};

void small_mul(const SmallMat& a, const SmallMat& b, SmallMat& out, const Reducer& red) {
    size_t d = a.d;
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            uint64_t acc = 0;
            const uint64_t* arow = &a.e[i * d];
            for (size_t k = 0; k < d; ++k) acc += arow[k] * b.e[k * d + j];
            out.e[i * d + j] = red.reduce(acc);
        }
}

SmallMat small_pow(const SmallMat& a, const Int& n, const Reducer& red) {
    SmallMat acc = SmallMat::identity(a.d);
    if (n == 0) return acc;
    SmallMat base = a;
    SmallMat tmp{a.d, std::vector<uint64_t>(a.d * a.d)};
    size_t nbits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (size_t i = nbits; i-- > 0;) {
        small_mul(acc, acc, tmp, red);
        std::swap(acc.e, tmp.e);
        if (mpz_tstbit(n.get_mpz_t(), i)) {
            small_mul(acc, base, tmp, red);
            std::swap(acc.e, tmp.e);
        }
    }
    return acc;
}

// abstract "A^n mod m == I" probe used by the order search; dispatches to the
// fixed-width kernel when the modulus is small
struct PowProbe {
    const IntMatrix& a;
    Int modulus;
    bool small = false;
    SmallMat sm{1, {0}};
    Reducer red{1};

    PowProbe(const IntMatrix& a_, const Int& m) : a(a_), modulus(m) {
        if (m < kSmallModulusLimit && m > 1) {
            small = true;
            red = Reducer(m.get_ui());
            sm = SmallMat::from(a, m.get_ui());
        }
    }
    bool power_is_identity(const Int& n) const {
        if (small) return small_pow(sm, n, red).is_identity();
        return mat_pow_mod(a, n, modulus).is_identity();
    }
};

// smallest k dividing `multiple` with A^k = I (mod modulus); `multiple` must
// itself satisfy A^multiple = I
Int order_from_multiple(const PowProbe& probe, const Int& multiple, uint64_t seed) {
    if (!probe.power_is_identity(multiple))
        throw Error("internal: order multiple is not annihilating");
    Int k = multiple;
    FactoredInteger fk = factor_integer(multiple, seed);
    for (const auto& [q, e] : fk.factors) {
        for (unsigned i = 0; i < e; ++i) {
            Int cand = k / q;
            if (probe.power_is_identity(cand))
                k = cand;
            else
                break;
        }
    }
    return k;
}

// exponent multiple for GL_d over F_p: p^ceil(log_p d) * lcm(p^i - 1, i=1..d)
Int glp_exponent_multiple(const Int& p, size_t d) {
    Int e = 1;
    Int ppow = 1;
    while (ppow < static_cast<long>(d)) ppow *= p;  // p^ceil(log_p d)
    e = ppow;
    Int pi = 1;
    for (size_t i = 1; i <= d; ++i) {
        pi *= p;
        e = lcm(e, pi - 1);
    }
    return e;
}

}  // namespace

OrderResult order_mod(const IntMatrix& a, const Int& n, uint64_t seed) {
    if (n < 2) throw DomainError("order_mod requires modulus >= 2");
    return order_mod(a, factor_integer(n, seed), seed);
}

OrderResult order_mod(const IntMatrix& a, const FactoredInteger& nf, uint64_t seed) {
    const Int& n = nf.n;
    if (n < 2) throw DomainError("order_mod requires modulus >= 2");
    if (nf.reconstruct() != n) throw DomainError("supplied factorization does not multiply back to N");
    for (const auto& [p, e] : nf.factors) {
        if (e == 0 || !is_probable_prime(p))
            throw DomainError("supplied factorization contains a non-prime");
    }
    Int det = a.det();
    if (gcd(det, n) != 1)
        throw DomainError("matrix is not invertible modulo N (ord(A,N) = infinity)");

    Int order = 1;
    for (const auto& [p, e] : nf.factors) {
        // local order modulo p via order-from-multiple
        uint64_t pseed = seed ^ mpz_fdiv_ui(p.get_mpz_t(), 0xffffffffffffffc5ULL);
        PowProbe probe_p(a, p);
        Int local = order_from_multiple(probe_p, glp_exponent_multiple(p, a.dim()), pseed);
        // lift to p^e: order can only grow by factors of p, one per level
        Int pj = p;
        for (unsigned j = 2; j <= e; ++j) {
            pj *= p;
            PowProbe probe_pj(a, pj);
            if (!probe_pj.power_is_identity(local)) {
                local *= p;
                if (!probe_pj.power_is_identity(local))
                    throw Error("internal: order lift failed");
            }
        }
        order = lcm(order, local);
    }

    OrderResult res;
    res.modulus = n;
    res.order = order;
    // certificate: one non-identity witness entry per prime divisor of the order
    FactoredInteger of = factor_integer(order, seed);
    for (const auto& [q, e] : of.factors) {
        IntMatrix w = mat_pow_mod(a, order / q, n);
        bool found = false;
        for (size_t i = 0; i < w.dim() && !found; ++i)
            for (size_t j = 0; j < w.dim() && !found; ++j) {
                Int expect = i == j ? 1 : 0;
                if (w.at(i, j) != expect) {
                    res.certificate.push_back({q, i, j, w.at(i, j)});
                    found = true;
                }
            }
        if (!found) throw Error("internal: order is not minimal");
    }
    return res;
}

namespace {

void load_reduced(const IntMatrix& a, uint64_t n, uint64_t* out) {
    Int nz = static_cast<unsigned long>(n);
    size_t d = a.dim();
    for (size_t i = 0; i < d * d; ++i) {
        Int t;
        mpz_mod(t.get_mpz_t(), a.at(i / d, i % d).get_mpz_t(), nz.get_mpz_t());
        out[i] = t.get_ui();
    }
}

// Iteration kernels for tiny moduli (n < 1024). Entries are held in named
// scalars (registers) and stay unreduced for up to four multiplications: the
// fourth unreduced product is below 3 * 2^44.8 * 2^10 < 2^57. One probe entry
// is reduced each step; full reduction settles the rare probe hits exactly.

std::optional<Int> brute_force_1(const IntMatrix& a, uint64_t n, unsigned long cap) {
    Reducer red(n);
    uint64_t b[1];
    load_reduced(a, n, b);
    uint64_t c = b[0];
    for (unsigned long k = 1; k <= cap; ++k) {
        if (k > 1) c = red.reduce(c * b[0]);
        if (c == 1) return Int(k);
    }
    return std::nullopt;
}

std::optional<Int> brute_force_2(const IntMatrix& a, uint64_t n, unsigned long cap) {
    Reducer red(n);
    uint64_t b[4];
    load_reduced(a, n, b);
    const uint64_t a00 = b[0], a01 = b[1], a10 = b[2], a11 = b[3];
    uint64_t c00 = a00, c01 = a01, c10 = a10, c11 = a11;
    int until = 4;
    for (unsigned long k = 1; k <= cap; ++k) {
        if (k > 1) {
            uint64_t n00 = c00 * a00 + c01 * a10;
            uint64_t n01 = c00 * a01 + c01 * a11;
            uint64_t n10 = c10 * a00 + c11 * a10;
            uint64_t n11 = c10 * a01 + c11 * a11;
            if (--until == 0) {
                c00 = red.reduce(n00);
                c01 = red.reduce(n01);
                c10 = red.reduce(n10);
                c11 = red.reduce(n11);
                until = 4;
            } else {
                c00 = n00;
                c01 = n01;
                c10 = n10;
                c11 = n11;
            }
        }
        if (red.reduce(c01) == 0) {
            if (red.reduce(c00) == 1 && red.reduce(c10) == 0 && red.reduce(c11) == 1)
                return Int(k);
        }
    }
    return std::nullopt;
}

std::optional<Int> brute_force_3(const IntMatrix& a, uint64_t n, unsigned long cap) {
    Reducer red(n);
    uint64_t b[9];
    load_reduced(a, n, b);
    const uint64_t a00 = b[0], a01 = b[1], a02 = b[2];
    const uint64_t a10 = b[3], a11 = b[4], a12 = b[5];
    const uint64_t a20 = b[6], a21 = b[7], a22 = b[8];
    uint64_t c00 = a00, c01 = a01, c02 = a02;
    uint64_t c10 = a10, c11 = a11, c12 = a12;
    uint64_t c20 = a20, c21 = a21, c22 = a22;
    int until = 4;
    for (unsigned long k = 1; k <= cap; ++k) {
        if (k > 1) {
            uint64_t n00 = c00 * a00 + c01 * a10 + c02 * a20;
            uint64_t n01 = c00 * a01 + c01 * a11 + c02 * a21;
            uint64_t n02 = c00 * a02 + c01 * a12 + c02 * a22;
            uint64_t n10 = c10 * a00 + c11 * a10 + c12 * a20;
            uint64_t n11 = c10 * a01 + c11 * a11 + c12 * a21;
            uint64_t n12 = c10 * a02 + c11 * a12 + c12 * a22;
            uint64_t n20 = c20 * a00 + c21 * a10 + c22 * a20;
            uint64_t n21 = c20 * a01 + c21 * a11 + c22 * a21;
            uint64_t n22 = c20 * a02 + c21 * a12 + c22 * a22;
            if (--until == 0) {
                c00 = red.reduce(n00);
                c01 = red.reduce(n01);
                c02 = red.reduce(n02);
                c10 = red.reduce(n10);
                c11 = red.reduce(n11);
                c12 = red.reduce(n12);
                c20 = red.reduce(n20);
                c21 = red.reduce(n21);
                c22 = red.reduce(n22);
                until = 4;
            } else {
                c00 = n00;
                c01 = n01;
                c02 = n02;
                c10 = n10;
                c11 = n11;
                c12 = n12;
                c20 = n20;
                c21 = n21;
                c22 = n22;
            }
        }
        if (red.reduce(c01) == 0) {
            if (red.reduce(c00) == 1 && red.reduce(c02) == 0 && red.reduce(c10) == 0 &&
                red.reduce(c11) == 1 && red.reduce(c12) == 0 && red.reduce(c20) == 0 &&
                red.reduce(c21) == 0 && red.reduce(c22) == 1)
                return Int(k);
        }
    }
    return std::nullopt;
}

}  // namespace

namespace {

// Direct iteration of A^k held in coordinates of the power basis
// {I, A, ..., A^{d-1}}: one multiplication by A per step is a shift-and-fold
// through the characteristic polynomial (Cayley-Hamilton). Valid only when
// the representation is unique mod n, i.e. the gcd of the maximal minors of
// the (d^2) x d power-basis matrix is coprime to n. A degenerate minimal
// polynomial makes every maximal minor vanish, so those matrices (and moduli
// sharing a factor with the minor gcd) fall back to the entry-wise kernels.
bool power_basis_unique(const IntMatrix& a, uint64_t n) {
    size_t d = a.dim();
    std::vector<std::vector<Int>> cols;
    IntMatrix p = IntMatrix::identity(d);
    for (size_t i = 0; i < d; ++i) {
        std::vector<Int> c(d * d);
        for (size_t r = 0; r < d * d; ++r) c[r] = p.at(r / d, r % d);
        cols.push_back(std::move(c));
        if (i + 1 < d) p = p * a;
    }
    std::vector<size_t> idx(d);
    for (size_t i = 0; i < d; ++i) idx[i] = i;
    Int g = 0;
    Int nz = static_cast<unsigned long>(n);
    while (true) {
        IntMatrix minor(d);
        for (size_t r = 0; r < d; ++r)
            for (size_t c = 0; c < d; ++c) minor.at(r, c) = cols[c][idx[r]];
        g = gcd(g, minor.det());
        if (g != 0 && gcd(g, nz) == 1) return true;
        size_t i = d;
        bool more = false;
        while (i-- > 0) {
            if (idx[i] != i + d * d - d) {
                ++idx[i];
                for (size_t j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
                more = true;
                break;
            }
        }
        if (!more) break;
    }
    return g != 0 && gcd(g, nz) == 1;
}

std::optional<Int> brute_force_power_basis(const IntMatrix& a, uint64_t n, unsigned long cap) {
    size_t d = a.dim();
    IntPoly cp = char_poly(a);
    Reducer red(n);
    Int nz = static_cast<unsigned long>(n);
    // A^d = sum fold[i] A^i mod n
    std::vector<uint64_t> fold(d);
    for (size_t i = 0; i < d; ++i) {
        Int t;
        mpz_mod(t.get_mpz_t(), Int(-cp.coeff(i)).get_mpz_t(), nz.get_mpz_t());
        fold[i] = t.get_ui();
    }
    // Coordinates of A^k, starting at A^1; identity is (1, 0, ..., 0).
    // Coordinates grow additively by < n^2 per step; reduce on a schedule
    // that keeps everything below 2^62. Dimensions are specialized so the
    // state lives in registers.
    unsigned __int128 n2 = static_cast<unsigned __int128>(n) * n + 1;
    uint64_t period_big = static_cast<uint64_t>(((static_cast<unsigned __int128>(1) << 62)) / n2);
    int period = static_cast<int>(std::min<uint64_t>(std::max<uint64_t>(period_big, 1), 1u << 20));
    const uint64_t one = 1 % n;

    if (d == 1) {
        uint64_t v = fold[0];
        for (unsigned long k = 1; k <= cap; ++k) {
            if (k > 1) v = red.reduce(v * fold[0]);
            if (v == one) return Int(k);
        }
        return std::nullopt;
    }
    if (d == 2) {
        const uint64_t f0 = fold[0], f1 = fold[1];
        uint64_t v0 = 0, v1 = 1;
        int until = period;
        uint64_t topr = red.reduce(v1);
        for (unsigned long k = 1; k <= cap; ++k) {
            if (topr == 0) {
                if (red.reduce(v0) == one) return Int(k);
            }
            if (k == cap) break;
            uint64_t w0 = topr * f0;
            uint64_t w1 = v0 + topr * f1;
            if (--until == 0) {
                v0 = red.reduce(w0);
                v1 = red.reduce(w1);
                until = period;
            } else {
                v0 = w0;
                v1 = w1;
            }
            topr = red.reduce(v1);
        }
        return std::nullopt;
    }
    if (d == 3) {
        const uint64_t f0 = fold[0], f1 = fold[1], f2 = fold[2];
        uint64_t v0 = 0, v1 = 1, v2 = 0;
        int until = period;
        uint64_t topr = red.reduce(v2);
        for (unsigned long k = 1; k <= cap; ++k) {
            if (topr == 0) {
                if (red.reduce(v1) == 0 && red.reduce(v0) == one) return Int(k);
            }
            if (k == cap) break;
            uint64_t w0 = topr * f0;
            uint64_t w1 = v0 + topr * f1;
            uint64_t w2 = v1 + topr * f2;
            if (--until == 0) {
                v0 = red.reduce(w0);
                v1 = red.reduce(w1);
                v2 = red.reduce(w2);
                until = period;
            } else {
                v0 = w0;
                v1 = w1;
                v2 = w2;
            }
            topr = red.reduce(v2);
        }
        return std::nullopt;
    }
    return std::nullopt;  // larger dimensions use the entry-wise kernels
}

}  // namespace

std::optional<Int> order_mod_bruteforce(const IntMatrix& a, const Int& n, unsigned long cap) {
    if (n < 2) throw DomainError("order_mod_bruteforce requires modulus >= 2");
    if (gcd(a.det(), n) != 1)
        throw DomainError("matrix is not invertible modulo N (ord(A,N) = infinity)");
    if (n < kSmallModulusLimit && a.dim() <= 3 && power_basis_unique(a, n.get_ui()))
        return brute_force_power_basis(a, n.get_ui(), cap);
    if (n < 1024 && a.dim() <= 3) {
        uint64_t mod = n.get_ui();
        switch (a.dim()) {
            case 1: return brute_force_1(a, mod, cap);
            case 2: return brute_force_2(a, mod, cap);
            case 3: return brute_force_3(a, mod, cap);
        }
    }
    if (n < kSmallModulusLimit) {
        uint64_t mod = n.get_ui();
        Reducer red(mod);
        SmallMat base = SmallMat::from(a, mod);
        SmallMat cur = base;
        SmallMat tmp{base.d, std::vector<uint64_t>(base.d * base.d)};
        for (unsigned long k = 1; k <= cap; ++k) {
            if (k > 1) {
                small_mul(cur, base, tmp, red);
                std::swap(cur.e, tmp.e);
            }
            if (cur.is_identity()) return Int(k);
        }
        return std::nullopt;
    }
    IntMatrix base = a.reduced_mod(n);
    IntMatrix cur = base;
    for (unsigned long k = 1; k <= cap; ++k) {
        if (k > 1) cur = (cur * base).reduced_mod(n);
        if (cur.is_identity()) return Int(k);
    }
    return std::nullopt;
}

bool verify_order_certificate(const IntMatrix& a, const OrderResult& r) {
    if (!mat_pow_mod(a, r.order, r.modulus).is_identity()) return false;
    FactoredInteger of = factor_integer(r.order);
    if (of.factors.size() != r.certificate.size()) return false;
    for (const OrderWitness& w : r.certificate) {
        if (!mpz_divisible_p(r.order.get_mpz_t(), w.prime.get_mpz_t())) return false;
        IntMatrix m = mat_pow_mod(a, r.order / w.prime, r.modulus);
        if (m.at(w.row, w.col) != w.value) return false;
        Int expect = w.row == w.col ? 1 : 0;
        if (w.value == expect) return false;
    }
    return true;
}

}  // namespace matper
