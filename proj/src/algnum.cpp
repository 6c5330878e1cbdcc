#include "matper/algnum.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

#include "internal.hpp"
#include "matper/errors.hpp"
#include "matper/modorder.hpp"
#include "matper/poly_factor.hpp"

namespace matper {

namespace {

constexpr long kMaxPrec = 1L << 22;

IntPoly normalize_primitive(const IntPoly& f) { return f.primitive_part(); }

}  // namespace

// ---------------------------------------------------------------------
// AlgebraicNumber
// ---------------------------------------------------------------------

AlgebraicNumber::AlgebraicNumber(IntPoly minpoly, QRect box, long prec_bits)
    : minpoly_(std::move(minpoly)), box_(std::move(box)), prec_bits_(prec_bits) {
    if (minpoly_.is_zero() || minpoly_.is_constant())
        throw DomainError("minimal polynomial must be nonconstant");
}

AlgebraicNumber AlgebraicNumber::from_rational(const Rat& q) {
    std::vector<Int> c = {-q.get_num(), q.get_den()};
    return AlgebraicNumber(IntPoly(std::move(c)).primitive_part(),
                           QRect::point(q, Rat(0)), 64);
}

AlgebraicNumber AlgebraicNumber::from_integer(const Int& n) { return from_rational(Rat(n)); }

Rat AlgebraicNumber::rational_value() const {
    if (!is_rational()) throw DomainError("algebraic number is not rational");
    return make_rat(-minpoly_.coeff(0), minpoly_.coeff(1));
}

bool AlgebraicNumber::is_zero() const {
    return is_rational() && minpoly_.coeff(0) == 0;
}

AlgebraicNumber AlgebraicNumber::refined(long prec_bits) const {
    if (prec_bits <= prec_bits_ && !box_.re.is_point()) {
        Rat target = make_rat(Int(1), Int(1) << std::max(4L, prec_bits));
        if (box_.width() <= target) return *this;
    }
    QRect nb = detail::refine_box(minpoly_, box_, prec_bits);
    return AlgebraicNumber(minpoly_, nb, std::max(prec_bits, prec_bits_));
}

// ---------------------------------------------------------------------
// isolation
// ---------------------------------------------------------------------

std::vector<AlgebraicNumber> isolate_irreducible(const IntPoly& f, long prec_bits) {
    IntPoly g = normalize_primitive(f);
    std::vector<AlgebraicNumber> out;
    for (QRect& b : detail::isolate_boxes(g, prec_bits))
        out.push_back(AlgebraicNumber(g, std::move(b), prec_bits));
    return out;
}

std::vector<AlgebraicNumber> isolate_roots(const IntPoly& f, long prec_bits) {
    if (f.is_zero() || f.is_constant()) return {};
    if (!is_squarefree(f)) throw DomainError("isolate_roots requires a squarefree polynomial");
    Factorization fact = factor_int_poly(f);
    for (long prec = prec_bits; prec <= kMaxPrec; prec *= 2) {
        std::vector<AlgebraicNumber> all;
        for (const auto& [fi, mult] : fact.factors)
            for (AlgebraicNumber& a : isolate_irreducible(fi, prec)) all.push_back(std::move(a));
        bool disjoint = true;
        for (size_t i = 0; i < all.size() && disjoint; ++i)
            for (size_t j = i + 1; j < all.size() && disjoint; ++j)
                if (!all[i].box().disjoint(all[j].box())) disjoint = false;
        if (disjoint) return all;
    }
    throw Error("cross-factor isolation did not converge");
}

// ---------------------------------------------------------------------
// cyclotomic polynomials and detection
// ---------------------------------------------------------------------

IntPoly cyclotomic_poly(unsigned long m) {
    static std::map<unsigned long, IntPoly> cache;
    static std::mutex mtx;
    if (m == 0) throw DomainError("cyclotomic index must be positive");
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
    }
    IntPoly result;
    if (m == 1) {
        result = IntPoly(std::vector<Int>{-1, 1});
    } else {
        // (x^m - 1) / prod_{d | m, d < m} Phi_d
        std::vector<Int> xm(m + 1, Int(0));
        xm[0] = -1;
        xm[m] = 1;
        result = IntPoly(std::move(xm));
        for (unsigned long d = 1; d < m; ++d)
            if (m % d == 0) result = result.divexact(cyclotomic_poly(d));
    }
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(m, result);
    return result;
}

namespace {

unsigned long euler_phi(unsigned long m) {
    unsigned long r = m;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        r -= r / p;
        while (m % p == 0) m /= p;
    }
    if (m > 1) r -= r / m;
    return r;
}

std::optional<unsigned long> is_cyclotomic_unchecked(const IntPoly& f) {
    if (f.is_zero() || f.is_constant()) return std::nullopt;
    IntPoly g = f.primitive_part();
    if (!g.is_monic()) return std::nullopt;
    unsigned long n = g.degree();
    // phi(m) = n forces m <= 2n^2 + 1 (phi(m) >= sqrt(m/2))
    unsigned long limit = 2 * n * n + 4;
    for (unsigned long m = 1; m <= limit; ++m) {
        if (euler_phi(m) != n) continue;
        if (g == cyclotomic_poly(m)) return m;
    }
    return std::nullopt;
}

}  // namespace

std::optional<unsigned long> is_cyclotomic(const IntPoly& f) {
    if (f.is_zero() || f.is_constant()) throw DomainError("is_cyclotomic requires a nonconstant polynomial");
    if (!is_irreducible(f)) throw DomainError("is_cyclotomic requires an irreducible polynomial");
    return is_cyclotomic_unchecked(f);
}

std::optional<unsigned long> cyclotomic_index_of_irreducible(const IntPoly& f) {
    return is_cyclotomic_unchecked(f);
}

std::optional<unsigned long> root_of_unity_order(const AlgebraicNumber& alpha) {
    return is_cyclotomic_unchecked(alpha.minpoly());
}

// ---------------------------------------------------------------------
// unit-circle root counting (exact): self-reciprocal test + Sturm on the
// Chebyshev-style trace polynomial
// ---------------------------------------------------------------------

namespace {

using QPoly = std::vector<Rat>;  // lowest first, trimmed

void qp_trim(QPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

QPoly qp_from(const IntPoly& f) {
    QPoly r(f.coeffs().size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = Rat(f.coeffs()[i]);
    return r;
}

QPoly qp_derivative(const QPoly& f) {
    if (f.size() <= 1) return {};
    QPoly r(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) r[i - 1] = f[i] * Rat(static_cast<long>(i));
    return r;
}

QPoly qp_rem(QPoly a, const QPoly& b) {
    while (!a.empty() && a.size() >= b.size()) {
        Rat c = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
        qp_trim(a);
    }
    return a;
}

Rat qp_eval(const QPoly& f, const Rat& x) {
    Rat acc = 0;
    for (size_t k = f.size(); k-- > 0;) acc = acc * x + f[k];
    return acc;
}

int sturm_variations(const std::vector<QPoly>& chain, const Rat& x) {
    int var = 0, last = 0;
    for (const QPoly& p : chain) {
        Rat v = qp_eval(p, x);
        int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++var;
        last = s;
    }
    return var;
}

// distinct real roots of g in the open interval (a, b); g(a), g(b) != 0
size_t sturm_count(const IntPoly& g, const Rat& a, const Rat& b) {
    std::vector<QPoly> chain;
    chain.push_back(qp_from(g));
    QPoly d = qp_derivative(chain[0]);
    if (!d.empty()) chain.push_back(d);
    while (chain.back().size() > 1) {
        QPoly r = qp_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (Rat& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    int va = sturm_variations(chain, a);
    int vb = sturm_variations(chain, b);
    return static_cast<size_t>(va - vb);
}

// f palindromic of even degree 2m: f(x) = x^m g(x + 1/x); returns g
IntPoly trace_poly(const IntPoly& f) {
    size_t m = f.degree() / 2;
    IntPoly v_prev = IntPoly::constant(2);  // x^0 + x^0
    IntPoly v_cur = IntPoly::x();           // x + 1/x
    IntPoly g = IntPoly::constant(f.coeff(m));
    for (size_t k = 1; k <= m; ++k) {
        g = g + v_cur * f.coeff(m + k);
        if (k < m) {
            IntPoly v_next = IntPoly::x() * v_cur - v_prev;
            v_prev = std::move(v_cur);
            v_cur = std::move(v_next);
        }
    }
    return g;
}

}  // namespace

size_t unit_circle_root_count(const IntPoly& f_in) {
    IntPoly f = normalize_primitive(f_in);
    if (f.is_zero() || f.is_constant()) throw DomainError("unit_circle_root_count: nonconstant required");
    if (f.degree() == 1) return abs(f.coeff(0)) == abs(f.coeff(1)) ? 1 : 0;
    if (f.constant_term() == 0) return 0;  // root at zero: not irreducible anyway
    IntPoly rev = f.reversed().primitive_part();
    if (f != rev) return 0;  // an irreducible non-self-reciprocal poly has no circle roots
    if (f.degree() % 2 != 0) return 0;  // odd-degree palindromic is reducible (root -1)
    IntPoly g = trace_poly(f);
    return 2 * sturm_count(g, Rat(-2), Rat(2));
}

// ---------------------------------------------------------------------
// certified logs (the only transcendental step, done in MPFR with
// directed rounding)
// ---------------------------------------------------------------------

LogAbs certified_log_interval(const Rat& lo, const Rat& hi) {
    if (lo <= 0 || hi < lo) throw DomainError("log interval requires 0 < lo <= hi");
    mpfr_t x;
    mpfr_init2(x, 128);
    mpfr_set_q(x, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_log(x, x, MPFR_RNDD);
    double dlo = mpfr_get_d(x, MPFR_RNDD);
    mpfr_set_q(x, hi.get_mpq_t(), MPFR_RNDU);
    mpfr_log(x, x, MPFR_RNDU);
    double dhi = mpfr_get_d(x, MPFR_RNDU);
    mpfr_clear(x);
    return {dlo, dhi};
}

LogAbs log_abs(const AlgebraicNumber& alpha, double tol) {
    if (alpha.is_zero()) throw DomainError("log of zero");
    AlgebraicNumber a = alpha;
    for (long prec = std::max(64L, a.prec_bits()); prec <= kMaxPrec; prec *= 2) {
        a = a.refined(prec);
        QInterval ns = a.box().norm_sq();
        if (ns.lo <= 0) continue;
        LogAbs l = certified_log_interval(ns.lo, ns.hi);
        l.lo /= 2;
        l.hi /= 2;
        if (l.hi - l.lo <= tol) return l;
    }
    throw Error("log_abs did not converge");
}

// ---------------------------------------------------------------------
// Mahler measure / heights / entropy core
// ---------------------------------------------------------------------

MahlerLog log_mahler(const IntPoly& f, double tol) {
    MahlerAnalysis a = mahler_analysis(f, tol);
    return {a.lo, a.hi};
}

MahlerAnalysis mahler_analysis(const IntPoly& f, double tol) {
    if (f.is_zero()) throw DomainError("Mahler measure of the zero polynomial");
    MahlerAnalysis out;
    out.lo = out.hi = 0.0;
    // |lc(f)| = content * prod |lc(f_i)|^mult; the factor leading coefficients
    // are accounted for per factor below, only the content goes here
    Int cont = f.content();
    if (cont > 1) {
        LogAbs l = certified_log_interval(Rat(cont), Rat(cont));
        out.lo += l.lo;
        out.hi += l.hi;
    }
    if (f.is_constant()) return out;

    Factorization fact = factor_int_poly(f);
    double tol_i = tol / static_cast<double>(std::max<size_t>(1, fact.factors.size()));

    for (const auto& [fi, mult] : fact.factors) {
        double flo = 0.0, fhi = 0.0;
        std::vector<AlgebraicNumber> expanding;
        if (fi.degree() == 1) {
            // root -c0/c1; contributes log|c0| from |lc|*max(1,|c0/c1|) = max(|c1|,|c0|)
            // with the |lc| part of this factor folded in here
            Int c0 = abs(fi.coeff(0)), c1 = abs(fi.coeff(1));
            Int big = c0 > c1 ? c0 : c1;
            if (big > 1) {
                LogAbs l = certified_log_interval(Rat(big), Rat(big));
                flo = l.lo;
                fhi = l.hi;
            }
            if (c0 > c1) expanding.push_back(AlgebraicNumber(fi, QRect::point(make_rat(-fi.coeff(0), fi.coeff(1)), Rat(0)), 64));
        } else {
            if (abs(fi.leading()) > 1) {
                LogAbs l = certified_log_interval(Rat(abs(fi.leading())), Rat(abs(fi.leading())));
                flo += l.lo;
                fhi += l.hi;
            }
            size_t circle = unit_circle_root_count(fi);
            if (circle != fi.degree()) {
                std::vector<AlgebraicNumber> roots = isolate_irreducible(fi, 32);
                for (long prec = 32; prec <= kMaxPrec; prec *= 2) {
                    std::vector<const AlgebraicNumber*> big;
                    size_t small_count = 0, cand = 0;
                    for (AlgebraicNumber& r : roots) {
                        QInterval ns = r.box().norm_sq();
                        if (ns.lo > 1)
                            big.push_back(&r);
                        else if (ns.hi < 1)
                            ++small_count;
                        else
                            ++cand;
                    }
                    if (cand == circle) {
                        double s_lo = 0, s_hi = 0;
                        for (const AlgebraicNumber* r : big) {
                            QInterval ns = r->box().norm_sq();
                            LogAbs l = certified_log_interval(ns.lo, ns.hi);
                            s_lo += l.lo / 2;
                            s_hi += l.hi / 2;
                        }
                        if (s_hi - s_lo <= tol_i) {
                            flo += s_lo;
                            fhi += s_hi;
                            for (const AlgebraicNumber* r : big) expanding.push_back(*r);
                            break;
                        }
                    }
                    if (prec * 2 > kMaxPrec) throw Error("Mahler refinement did not converge");
                    for (AlgebraicNumber& r : roots) r = r.refined(prec * 2);
                }
            }
        }
        out.lo += flo * static_cast<double>(mult);
        out.hi += fhi * static_cast<double>(mult);
        for (AlgebraicNumber& r : expanding) {
            QInterval ns = r.box().norm_sq();
            LogAbs l = ns.lo > 0 ? certified_log_interval(ns.lo, ns.hi) : LogAbs{0, 0};
            for (unsigned copy = 0; copy < mult; ++copy)
                out.expanding.push_back({r, l.lo / 2, l.hi / 2});
        }
    }
    return out;
}

HeightResult height(const AlgebraicNumber& alpha) {
    const IntPoly& f = alpha.minpoly();
    MahlerLog ml = log_mahler(f, 0x1p-22);
    double deg = static_cast<double>(f.degree());
    double lo = ml.lo / deg, hi = ml.hi / deg;
    double mid = (lo + hi) / 2;
    double err = (hi - lo) / 2 + 0x1p-40;
    // heights are nonnegative; clamp the tiny negative drift of the enclosure
    if (mid < 0) mid = 0;
    return {mid, err};
}

// ---------------------------------------------------------------------
// power sums machinery: minimal polynomials of powers and products
// ---------------------------------------------------------------------

namespace {

// power sums p_1..p_K of the roots of f (exact rationals)
std::vector<Rat> power_sums(const IntPoly& f, size_t K) {
    size_t m = f.degree();
    Rat lc(f.leading());
    std::vector<Rat> a(m);  // monic coefficients a_i = c_i / lc, i = 0..m-1
    for (size_t i = 0; i < m; ++i) a[i] = Rat(f.coeff(i)) / lc;
    std::vector<Rat> p(K + 1);
    p[0] = Rat(static_cast<long>(m));
    for (size_t k = 1; k <= K; ++k) {
        Rat s = 0;
        size_t lim = std::min(k - 1, m);
        for (size_t i = 1; i <= lim; ++i) s += a[m - i] * p[k - i];
        if (k <= m) s += Rat(static_cast<long>(k)) * a[m - k];
        p[k] = -s;
    }
    p.erase(p.begin());
    return p;  // p[j-1] = sum of roots^j
}

// primitive integer polynomial of degree m whose roots have the given power
// sums q[0..m-1] (q[j-1] = sum of roots^j)
IntPoly poly_from_power_sums(const std::vector<Rat>& q, size_t m) {
    std::vector<Rat> e(m + 1);
    e[0] = 1;
    for (size_t j = 1; j <= m; ++j) {
        Rat s = 0;
        for (size_t i = 1; i <= j; ++i) {
            Rat term = e[j - i] * q[i - 1];
            if (i % 2 == 0) term = -term;
            s += term;
        }
        e[j] = s / Rat(static_cast<long>(j));
    }
    // poly = sum_j (-1)^j e_j x^(m-j)
    Int den = 1;
    for (size_t j = 0; j <= m; ++j) den = lcm(den, Int(e[j].get_den()));
    std::vector<Int> c(m + 1);
    for (size_t j = 0; j <= m; ++j) {
        Rat v = e[j] * Rat(den);
        if (j % 2 == 1) v = -v;
        c[m - j] = v.get_num();
    }
    return IntPoly(std::move(c)).primitive_part();
}

// pick the unique candidate factor vanishing on the enclosed value
IntPoly select_vanishing_factor(const std::vector<IntPoly>& cands,
                                const std::function<QRect(long)>& enclosure) {
    if (cands.empty()) throw Error("no candidate factors");
    if (cands.size() == 1) return cands[0];
    for (long prec = 64; prec <= kMaxPrec; prec *= 2) {
        QRect r = enclosure(prec);
        std::vector<const IntPoly*> alive;
        for (const IntPoly& h : cands)
            if (poly_eval_rect(h, r).contains_zero()) alive.push_back(&h);
        if (alive.size() == 1) return *alive[0];
        if (alive.empty()) throw Error("enclosure excludes every candidate factor");
    }
    throw Error("factor selection did not converge");
}

// wrap an irreducible minpoly and an enclosure of one specific root into a
// certified AlgebraicNumber (match against the isolated roots of g)
AlgebraicNumber make_algebraic(const IntPoly& g, const std::function<QRect(long)>& enclosure) {
    if (g.degree() == 1)
        return AlgebraicNumber::from_rational(make_rat(-g.coeff(0), g.coeff(1)));
    std::vector<AlgebraicNumber> roots = isolate_irreducible(g, 32);
    for (long prec = 64; prec <= kMaxPrec; prec *= 2) {
        QRect r = enclosure(prec);
        std::vector<AlgebraicNumber*> hits;
        for (AlgebraicNumber& b : roots)
            if (b.box().intersects(r)) hits.push_back(&b);
        if (hits.size() == 1) return *hits[0];
    }
    throw Error("enclosure matching did not converge");
}

AlgebraicNumber alg_recip(const AlgebraicNumber& alpha) {
    if (alpha.is_zero()) throw DomainError("inverse of zero");
    if (alpha.is_rational()) return AlgebraicNumber::from_rational(Rat(1) / alpha.rational_value());
    IntPoly inv_poly = alpha.minpoly().reversed().primitive_part();
    auto enclosure = [&alpha](long prec) {
        AlgebraicNumber a = alpha.refined(prec);
        long p = prec;
        while (a.box().norm_sq().lo <= 0 && p <= kMaxPrec) {
            p *= 2;
            a = a.refined(p);
        }
        return a.box().recip();
    };
    return make_algebraic(inv_poly, enclosure);
}

}  // namespace

IntPoly power_minpoly(const AlgebraicNumber& alpha, long n) {
    if (n == 0) throw DomainError("power_minpoly requires a nonzero exponent");
    if (alpha.is_zero()) throw DomainError("power_minpoly requires a nonzero algebraic number");
    if (alpha.is_rational()) {
        Rat v = alpha.rational_value();
        Rat r(1);
        Rat base = n > 0 ? v : Rat(1) / v;
        for (long i = 0; i < (n > 0 ? n : -n); ++i) r *= base;
        std::vector<Int> c = {-r.get_num(), r.get_den()};
        return IntPoly(std::move(c)).primitive_part();
    }
    if (n < 0) return power_minpoly(alg_recip(alpha), -n);
    if (n == 1) return alpha.minpoly();

    const IntPoly& f = alpha.minpoly();
    size_t m = f.degree();
    std::vector<Rat> p = power_sums(f, static_cast<size_t>(n) * m);
    std::vector<Rat> q(m);
    for (size_t j = 1; j <= m; ++j) q[j - 1] = p[static_cast<size_t>(n) * j - 1];
    IntPoly pw = poly_from_power_sums(q, m);
    IntPoly sf = squarefree_part(pw);
    Factorization fact = factor_int_poly(sf);
    std::vector<IntPoly> cands;
    for (const auto& [h, mult] : fact.factors)
        if (h.degree() >= 1) cands.push_back(h);
    auto enclosure = [&](long prec) {
        return alpha.refined(prec).box().pow(static_cast<unsigned long>(n));
    };
    return select_vanishing_factor(cands, enclosure);
}

AlgebraicNumber alg_pow(const AlgebraicNumber& alpha, long n) {
    if (n == 0) return AlgebraicNumber::from_integer(1);
    if (alpha.is_zero()) throw DomainError("alg_pow of zero");
    if (alpha.is_rational()) {
        Rat v = alpha.rational_value();
        Rat r(1);
        Rat base = n > 0 ? v : Rat(1) / v;
        for (long i = 0; i < (n > 0 ? n : -n); ++i) r *= base;
        return AlgebraicNumber::from_rational(r);
    }
    if (n == 1) return alpha;
    if (n < 0) return alg_pow(alg_recip(alpha), -n);
    IntPoly g = power_minpoly(alpha, n);
    auto enclosure = [&](long prec) {
        return alpha.refined(prec).box().pow(static_cast<unsigned long>(n));
    };
    return make_algebraic(g, enclosure);
}

AlgebraicNumber alg_mul(const AlgebraicNumber& alpha, const AlgebraicNumber& beta) {
    if (alpha.is_zero() || beta.is_zero()) return AlgebraicNumber::from_integer(0);
    if (alpha.is_rational() && beta.is_rational())
        return AlgebraicNumber::from_rational(alpha.rational_value() * beta.rational_value());
    if (alpha.is_rational() || beta.is_rational()) {
        const AlgebraicNumber& irr = alpha.is_rational() ? beta : alpha;
        Rat r = (alpha.is_rational() ? alpha : beta).rational_value();
        // minpoly of r*x from minpoly of x: c_i -> c_i * u^(m-i) * v^i, r = u/v
        const IntPoly& h = irr.minpoly();
        size_t m = h.degree();
        Int u = r.get_num(), v = r.get_den();
        std::vector<Int> c(m + 1);
        Int upow = 1;
        for (size_t i = m + 1; i-- > 0;) {
            // exponent of u is m-i
            c[i] = h.coeff(i) * upow * pow_int(v, i);
            upow *= u;
        }
        IntPoly g = IntPoly(std::move(c)).primitive_part();
        QRect rbox = QRect::point(r, Rat(0));
        return AlgebraicNumber(g, irr.box() * rbox, irr.prec_bits());
    }
    const IntPoly& f = alpha.minpoly();
    const IntPoly& h = beta.minpoly();
    size_t ma = f.degree(), mb = h.degree();
    size_t M = ma * mb;
    std::vector<Rat> pa = power_sums(f, M);
    std::vector<Rat> pb = power_sums(h, M);
    std::vector<Rat> q(M);
    for (size_t j = 0; j < M; ++j) q[j] = pa[j] * pb[j];
    IntPoly prod = poly_from_power_sums(q, M);
    IntPoly sf = squarefree_part(prod);
    Factorization fact = factor_int_poly(sf);
    std::vector<IntPoly> cands;
    for (const auto& [g, mult] : fact.factors)
        if (g.degree() >= 1) cands.push_back(g);
    auto enclosure = [&](long prec) {
        return alpha.refined(prec).box() * beta.refined(prec).box();
    };
    IntPoly g = select_vanishing_factor(cands, enclosure);
    return make_algebraic(g, enclosure);
}

bool alg_equal(const AlgebraicNumber& alpha, const AlgebraicNumber& beta) {
    if (alpha.minpoly() != beta.minpoly()) {
        // minpolys are canonical (primitive, positive lc, irreducible)
        if (alpha.minpoly().primitive_part() != beta.minpoly().primitive_part()) return false;
    }
    if (alpha.is_rational()) return true;  // same degree-1 minpoly pins the value
    const IntPoly& f = alpha.minpoly();
    // separation bound from an isolation pass
    std::vector<AlgebraicNumber> roots = isolate_irreducible(f, 64);
    Rat sep;
    bool first = true;
    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j) {
            const QRect& a = roots[i].box();
            const QRect& b = roots[j].box();
            Rat dx = a.re.hi < b.re.lo ? b.re.lo - a.re.hi : (b.re.hi < a.re.lo ? a.re.lo - b.re.hi : Rat(0));
            Rat dy = a.im.hi < b.im.lo ? b.im.lo - a.im.hi : (b.im.hi < a.im.lo ? a.im.lo - b.im.hi : Rat(0));
            Rat gap = dx > dy ? dx : dy;  // lower bound on root distance
            if (first || gap < sep) {
                sep = gap;
                first = false;
            }
        }
    if (roots.size() <= 1) return true;
    // refine both below sep/4 and test intersection
    long prec = 64;
    Rat quarter = sep / 4;
    AlgebraicNumber a = alpha, b = beta;
    while (a.box().width() > quarter || b.box().width() > quarter) {
        prec *= 2;
        a = a.refined(prec);
        b = b.refined(prec);
        if (prec > kMaxPrec) throw Error("alg_equal refinement did not converge");
    }
    return a.box().intersects(b.box());
}

// ---------------------------------------------------------------------
// multiplicative dependence
// ---------------------------------------------------------------------

namespace {

struct PrimeVec {
    std::vector<Int> primes;       // shared support
    std::vector<long> va, vb;      // valuations of alpha and beta
};

// exponent vectors of two rationals over their joint prime support
PrimeVec rational_valuations(const Rat& x, const Rat& y) {
    PrimeVec out;
    auto add = [&](const Int& v) {
        FactoredInteger f = factor_integer(abs(v), 0);
        for (const auto& [p, e] : f.factors) {
            if (std::find(out.primes.begin(), out.primes.end(), p) == out.primes.end())
                out.primes.push_back(p);
        }
    };
    add(x.get_num());
    add(x.get_den());
    add(y.get_num());
    add(y.get_den());
    std::sort(out.primes.begin(), out.primes.end());
    auto val = [](const Int& n, const Int& p) {
        long e = 0;
        Int m = abs(n);
        while (m != 0 && mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            m = divexact(m, p);
            ++e;
        }
        return e;
    };
    for (const Int& p : out.primes) {
        out.va.push_back(val(x.get_num(), p) - val(x.get_den(), p));
        out.vb.push_back(val(y.get_num(), p) - val(y.get_den(), p));
    }
    return out;
}

Rat rat_pow_signed(const Rat& v, long e) {
    Rat r(1);
    Rat base = e >= 0 ? v : Rat(1) / v;
    for (long i = 0; i < (e >= 0 ? e : -e); ++i) r *= base;
    return r;
}

std::optional<DependenceRelation> mult_dependent_rational(const Rat& x, const Rat& y,
                                                          long exp_bound) {
    PrimeVec pv = rational_valuations(x, y);
    // relation needs a*va + b*vb = 0 componentwise; va != 0 (x not +-1)
    // parallel test via cross products
    size_t n = pv.primes.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (static_cast<long long>(pv.va[i]) * pv.vb[j] !=
                static_cast<long long>(pv.va[j]) * pv.vb[i])
                return std::nullopt;
    size_t ref = 0;
    while (ref < n && pv.va[ref] == 0 && pv.vb[ref] == 0) ++ref;
    if (ref == n) return std::nullopt;  // both +-1: excluded by preconditions
    long u = pv.va[ref], w = pv.vb[ref];
    if (u == 0 || w == 0) {
        // one of them is +-1 at every prime => a root of unity; preconditions
        // exclude this, but stay defensive
        return std::nullopt;
    }
    long g = std::abs(std::gcd(u, w));
    long a = w / g, b = -u / g;
    if (a < 0 || (a == 0 && b < 0)) {
        a = -a;
        b = -b;
    }
    if (std::max(std::abs(a), std::abs(b)) > exp_bound) return std::nullopt;
    Rat value = rat_pow_signed(x, a) * rat_pow_signed(y, b);
    if (value == 1) return DependenceRelation{a, b, DependenceRelation::Kind::exact_unit_relation, 1};
    if (value == -1) return DependenceRelation{a, b, DependenceRelation::Kind::torsion_relation, 2};
    return std::nullopt;  // unreachable when valuations matched
}

// exact verification of a candidate relation
std::optional<unsigned long> verify_relation(const AlgebraicNumber& alpha,
                                             const AlgebraicNumber& beta, long a, long b) {
    AlgebraicNumber pa = alg_pow(alpha, a);
    AlgebraicNumber pb = alg_pow(beta, b);
    AlgebraicNumber prod = alg_mul(pa, pb);
    return is_cyclotomic_unchecked(prod.minpoly());
}

}  // namespace

std::optional<DependenceRelation> mult_dependent(const AlgebraicNumber& alpha,
                                                 const AlgebraicNumber& beta, long exp_bound) {
    if (exp_bound < 1) throw DomainError("exp_bound must be >= 1");
    if (alpha.is_zero() || beta.is_zero()) throw DomainError("mult_dependent requires nonzero inputs");
    if (root_of_unity_order(alpha) || root_of_unity_order(beta))
        throw DomainError("mult_dependent requires non-torsion inputs (filter roots of unity first)");

    if (alpha.is_rational() && beta.is_rational())
        return mult_dependent_rational(alpha.rational_value(), beta.rational_value(), exp_bound);

    // certified log-moduli for the cheap necessary-condition filter
    LogAbs la = log_abs(alpha, 1e-12);
    LogAbs lb = log_abs(beta, 1e-12);
    const double margin = 1e-9;
    auto passes_filter = [&](long a, long b) {
        double lo = std::min(a * la.lo, a * la.hi) + std::min(b * lb.lo, b * lb.hi) - margin;
        double hi = std::max(a * la.lo, a * la.hi) + std::max(b * lb.lo, b * lb.hi) + margin;
        return lo <= 0 && 0 <= hi;
    };
    auto normalized = [](long a, long b) {
        if (a < 0 || (a == 0 && b < 0)) return std::pair<long, long>(-a, -b);
        return std::pair<long, long>(a, b);
    };
    auto attempt = [&](long a, long b) -> std::optional<DependenceRelation> {
        auto [na, nb] = normalized(a, b);
        if (na == 0 && nb == 0) return std::nullopt;
        if (std::max(std::abs(na), std::abs(nb)) > exp_bound) return std::nullopt;
        if (na == 0 || nb == 0) return std::nullopt;  // single factor torsion: excluded
        if (!passes_filter(na, nb)) return std::nullopt;
        if (auto ord = verify_relation(alpha, beta, na, nb)) {
            return DependenceRelation{na, nb,
                                      *ord == 1 ? DependenceRelation::Kind::exact_unit_relation
                                                : DependenceRelation::Kind::torsion_relation,
                                      *ord};
        }
        return std::nullopt;
    };

    // continued-fraction convergents of the height ratio come first: a
    // verified convergent is the primitive relation, hence minimal
    HeightResult ha = height(alpha);
    HeightResult hb = height(beta);
    if (hb.value > 0) {
        double ratio = ha.value / hb.value;
        long p0 = 1, q0 = 0, p1 = static_cast<long>(ratio), q1 = 1;
        double x = ratio;
        for (int step = 0; step < 24; ++step) {
            if (std::max(std::abs(p1), std::abs(q1)) > exp_bound) break;
            for (auto [ca, cb] : {std::pair<long, long>(q1, -p1), std::pair<long, long>(q1, p1)}) {
                if (auto rel = attempt(ca, cb)) return rel;
            }
            double frac = x - std::floor(x);
            if (frac < 1e-12) break;
            x = 1.0 / frac;
            long digit = static_cast<long>(std::floor(x));
            long p2 = digit * p1 + p0, q2 = digit * q1 + q0;
            p0 = p1;
            q0 = q1;
            p1 = p2;
            q1 = q2;
        }
    }

    // full sweep in increasing max(|a|,|b|) guarantees minimality
    for (long m = 1; m <= exp_bound; ++m) {
        for (long b = -m; b <= m; ++b) {
            if (auto rel = attempt(m, b)) return rel;
        }
        for (long a = 1; a < m; ++a) {
            if (auto rel = attempt(a, m)) return rel;
            if (auto rel = attempt(a, -m)) return rel;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------
// quadratic field data
// ---------------------------------------------------------------------

std::optional<QuadraticUnitInfo> quadratic_unit_info(const AlgebraicNumber& alpha) {
    if (alpha.degree() != 2) return std::nullopt;
    const IntPoly& f = alpha.minpoly();
    Int c = f.coeff(2), b = f.coeff(1), a = f.coeff(0);
    Int dpoly = b * b - 4 * a * c;
    // squarefree kernel of the polynomial discriminant
    FactoredInteger fd = factor_integer(abs(dpoly), 0);
    Int d0 = dpoly < 0 ? -1 : 1;
    for (const auto& [p, e] : fd.factors)
        if (e % 2 == 1) d0 *= p;
    Int mod4 = ((d0 % 4) + 4) % 4;
    QuadraticUnitInfo info;
    info.field_discriminant = (mod4 == 1) ? d0 : 4 * d0;
    info.norm = make_rat(a, c);
    info.real = dpoly > 0;
    info.unit = (c == 1 && abs(a) == 1);
    return info;
}

}  // namespace matper
