#include "matper/poly_factor.hpp"

#include <algorithm>
#include <random>

#include "matper/errors.hpp"

namespace matper {

namespace {

// ---------------------------------------------------------------------
// arithmetic in F_p[x] for a machine-word prime p (odd, p^2 < 2^63)
// ---------------------------------------------------------------------

using ZpPoly = std::vector<uint64_t>;  // lowest degree first, no trailing zeros

uint64_t subm(uint64_t a, uint64_t b, uint64_t p) { return a >= b ? a - b : a + p - b; }
uint64_t mulm(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
uint64_t powm(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    while (e) {
        if (e & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}
uint64_t invm(uint64_t a, uint64_t p) { return powm(a % p, p - 2, p); }

void zp_trim(ZpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
bool zp_is_zero(const ZpPoly& f) { return f.empty(); }
size_t zp_deg(const ZpPoly& f) { return f.size() - 1; }  // nonzero input only

ZpPoly zp_from(const IntPoly& f, uint64_t p) {
    ZpPoly r(f.coeffs().size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = mpz_fdiv_ui(f.coeffs()[i].get_mpz_t(), p);
    zp_trim(r);
    return r;
}

ZpPoly zp_sub(const ZpPoly& a, const ZpPoly& b, uint64_t p) {
    ZpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = subm(r[i], b[i], p);
    zp_trim(r);
    return r;
}

ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, uint64_t p) {
    if (zp_is_zero(a) || zp_is_zero(b)) return {};
    std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
    }
    ZpPoly r(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<uint64_t>(acc[i] % p);
    zp_trim(r);
    return r;
}

ZpPoly zp_make_monic(const ZpPoly& f, uint64_t p) {
    if (zp_is_zero(f) || f.back() == 1) return f;
    uint64_t inv = invm(f.back(), p);
    ZpPoly r(f.size());
    for (size_t i = 0; i < f.size(); ++i) r[i] = mulm(f[i], inv, p);
    return r;
}

ZpPoly zp_rem(ZpPoly a, const ZpPoly& b, uint64_t p) {
    uint64_t inv = invm(b.back(), p);
    while (!zp_is_zero(a) && a.size() >= b.size()) {
        uint64_t c = mulm(a.back(), inv, p);
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] = subm(a[off + i], mulm(c, b[i], p), p);
        zp_trim(a);
    }
    return a;
}

void zp_divrem(const ZpPoly& a, const ZpPoly& b, uint64_t p, ZpPoly& q, ZpPoly& r) {
    r = a;
    if (a.size() < b.size()) {
        q.clear();
        return;
    }
    q.assign(a.size() - b.size() + 1, 0);
    uint64_t inv = invm(b.back(), p);
    while (!zp_is_zero(r) && r.size() >= b.size()) {
        uint64_t c = mulm(r.back(), inv, p);
        size_t off = r.size() - b.size();
        q[off] = c;
        for (size_t i = 0; i < b.size(); ++i) r[off + i] = subm(r[off + i], mulm(c, b[i], p), p);
        zp_trim(r);
    }
    zp_trim(q);
}

ZpPoly zp_divexact(const ZpPoly& a, const ZpPoly& b, uint64_t p) {
    ZpPoly q, r;
    zp_divrem(a, b, p, q, r);
    if (!zp_is_zero(r)) throw DomainError("inexact division in F_p[x]");
    return q;
}

ZpPoly zp_gcd(ZpPoly a, ZpPoly b, uint64_t p) {
    while (!zp_is_zero(b)) {
        ZpPoly r = zp_rem(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return zp_make_monic(a, p);
}

ZpPoly zp_mulrem(const ZpPoly& a, const ZpPoly& b, const ZpPoly& mod, uint64_t p) {
    return zp_rem(zp_mul(a, b, p), mod, p);
}

ZpPoly zp_powmod(ZpPoly base, const Int& e, const ZpPoly& mod, uint64_t p) {
    ZpPoly r = {1};
    base = zp_rem(std::move(base), mod, p);
    size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = nbits; i-- > 0;) {
        r = zp_mulrem(r, r, mod, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = zp_mulrem(r, base, mod, p);
    }
    return r;
}

// s*a + t*b = 1 for coprime a, b
void zp_bezout(const ZpPoly& a, const ZpPoly& b, uint64_t p, ZpPoly& s, ZpPoly& t) {
    ZpPoly r0 = a, r1 = b;
    ZpPoly s0 = {1}, s1 = {};
    ZpPoly t0 = {}, t1 = {1};
    while (!zp_is_zero(r1)) {
        ZpPoly q, r;
        zp_divrem(r0, r1, p, q, r);
        ZpPoly snew = zp_sub(s0, zp_mul(q, s1, p), p);
        ZpPoly tnew = zp_sub(t0, zp_mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(snew);
        t0 = std::move(t1);
        t1 = std::move(tnew);
    }
    if (zp_is_zero(r0) || zp_deg(r0) != 0)
        throw DomainError("modular factors are not coprime (bad prime)");
    uint64_t inv = invm(r0[0], p);
    for (uint64_t& c : s0) c = mulm(c, inv, p);
    for (uint64_t& c : t0) c = mulm(c, inv, p);
    s = std::move(s0);
    t = std::move(t0);
}

// ---------------------------------------------------------------------
// Cantor-Zassenhaus for a monic squarefree polynomial mod an odd prime
// ---------------------------------------------------------------------

ZpPoly zp_random_poly(size_t deg_below, uint64_t p, std::mt19937_64& rng) {
    ZpPoly r(deg_below);
    for (auto& c : r) c = rng() % p;
    zp_trim(r);
    return r;
}

void zp_equal_degree(const ZpPoly& f, size_t d, uint64_t p, std::mt19937_64& rng,
                     std::vector<ZpPoly>& out) {
    if (zp_deg(f) == d) {
        out.push_back(f);
        return;
    }
    Int exp = (pow_int(Int(static_cast<unsigned long>(p)), static_cast<unsigned long>(d)) - 1) / 2;
    while (true) {
        ZpPoly a = zp_random_poly(zp_deg(f), p, rng);
        if (a.size() <= 1) continue;
        ZpPoly b = zp_powmod(a, exp, f, p);
        if (zp_is_zero(b)) continue;
        b[0] = subm(b[0], 1, p);
        zp_trim(b);
        if (zp_is_zero(b)) continue;
        ZpPoly g = zp_gcd(b, f, p);
        if (!zp_is_zero(g) && zp_deg(g) > 0 && zp_deg(g) < zp_deg(f)) {
            zp_equal_degree(g, d, p, rng, out);
            zp_equal_degree(zp_divexact(f, g, p), d, p, rng, out);
            return;
        }
    }
}

std::vector<ZpPoly> zp_factor_squarefree(const ZpPoly& f_in, uint64_t p, std::mt19937_64& rng) {
    std::vector<ZpPoly> out;
    ZpPoly f = f_in;
    ZpPoly h = zp_rem({0, 1}, f, p);  // x mod f
    size_t i = 0;
    while (!zp_is_zero(f) && zp_deg(f) > 0) {
        ++i;
        if (2 * i > zp_deg(f)) {
            out.push_back(f);
            break;
        }
        h = zp_powmod(std::move(h), Int(static_cast<unsigned long>(p)), f, p);
        ZpPoly hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = subm(hx[1], 1, p);
        zp_trim(hx);
        ZpPoly g = zp_is_zero(hx) ? f : zp_gcd(hx, f, p);
        if (!zp_is_zero(g) && zp_deg(g) > 0) {
            zp_equal_degree(g, i, p, rng, out);
            f = zp_divexact(f, g, p);
            if (!zp_is_zero(f) && zp_deg(f) > 0) h = zp_rem(std::move(h), f, p);
        }
    }
    return out;
}

// ---------------------------------------------------------------------
// linear Hensel lifting of a coprime pair
// ---------------------------------------------------------------------

Int mod_reduce(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

IntPoly poly_mod(const IntPoly& f, const Int& m) {
    std::vector<Int> v(f.coeffs().size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = mod_reduce(f.coeffs()[i], m);
    return IntPoly(std::move(v));
}

IntPoly from_zp(const ZpPoly& f) {
    std::vector<Int> v(f.size());
    for (size_t i = 0; i < f.size(); ++i) v[i] = static_cast<unsigned long>(f[i]);
    return IntPoly(std::move(v));
}

// Lift f = g0*h0 (mod p) to g, h with f = g*h (mod p^k), h monic,
// lc(g) = lc(f) mod p^k. Requires gcd(g0, h0) = 1 mod p, p coprime to lc(f),
// deg g0 + deg h0 = deg f, h0 monic, lc(g0) = lc(f) mod p.
void hensel_lift_pair(const IntPoly& f, const ZpPoly& g0, const ZpPoly& h0, uint64_t p,
                      unsigned k, IntPoly& g_out, IntPoly& h_out) {
    ZpPoly s, t;
    zp_bezout(g0, h0, p, s, t);
    size_t dg = zp_deg(g0), dh = zp_deg(h0);

    std::vector<Int> g(from_zp(g0).coeffs());
    std::vector<Int> h(from_zp(h0).coeffs());
    g.resize(dg + 1, Int(0));
    h.resize(dh + 1, Int(0));

    Int m = static_cast<unsigned long>(p);
    Int pz = m;
    for (unsigned level = 1; level < k; ++level) {
        Int m_next = m * pz;
        // pin lc(g) to lc(f) mod m_next; h stays monic
        g[dg] = mod_reduce(f.leading(), m_next);
        // delta = (f - g*h)/m mod p
        IntPoly gp{std::vector<Int>(g)};
        IntPoly hp{std::vector<Int>(h)};
        IntPoly diff = f - gp * hp;
        ZpPoly delta;
        {
            std::vector<Int> dv(diff.coeffs().size());
            for (size_t i = 0; i < dv.size(); ++i) dv[i] = divexact(diff.coeffs()[i], m);
            delta = zp_from(IntPoly(std::move(dv)), p);
        }
        if (!zp_is_zero(delta)) {
            // solve u*h + w*g = delta (mod p) with deg u < deg g, deg w < deg h
            ZpPoly u = zp_rem(zp_mul(t, delta, p), g0, p);
            ZpPoly w = zp_divexact(zp_sub(delta, zp_mul(u, h0, p), p), g0, p);
            for (size_t i = 0; i < u.size(); ++i)
                g[i] = mod_reduce(g[i] + m * static_cast<unsigned long>(u[i]), m_next);
            for (size_t i = 0; i < w.size(); ++i)
                h[i] = mod_reduce(h[i] + m * static_cast<unsigned long>(w[i]), m_next);
        }
        m = m_next;
    }
    g[dg] = mod_reduce(f.leading(), m);
    g_out = IntPoly(std::move(g));
    h_out = IntPoly(std::move(h));
}

// lift all monic modular factors of f to monic factors mod p^k with
// f = lc(f) * prod(out) (mod p^k)
void hensel_lift_list(const IntPoly& f, const std::vector<ZpPoly>& gs, uint64_t p, unsigned k,
                      const Int& pk, std::vector<IntPoly>& out) {
    if (gs.size() == 1) {
        Int lc_mod = mod_reduce(f.leading(), pk);
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), lc_mod.get_mpz_t(), pk.get_mpz_t()) == 0)
            throw DomainError("leading coefficient not invertible in Hensel lift");
        IntPoly fm = poly_mod(f, pk);
        std::vector<Int> v(fm.coeffs());
        v.resize(f.degree() + 1, Int(0));
        for (Int& c : v) c = mod_reduce(c * inv, pk);
        out.push_back(IntPoly(std::move(v)));
        return;
    }
    size_t half = gs.size() / 2;
    std::vector<ZpPoly> left(gs.begin(), gs.begin() + half);
    std::vector<ZpPoly> right(gs.begin() + half, gs.end());

    ZpPoly g0 = {mpz_fdiv_ui(f.leading().get_mpz_t(), p)};
    for (const ZpPoly& gi : left) g0 = zp_mul(g0, gi, p);
    ZpPoly h0 = {1};
    for (const ZpPoly& gi : right) h0 = zp_mul(h0, gi, p);

    IntPoly g, h;
    hensel_lift_pair(f, g0, h0, p, k, g, h);
    hensel_lift_list(g, left, p, k, pk, out);
    hensel_lift_list(h, right, p, k, pk, out);
}

// ---------------------------------------------------------------------
// Zassenhaus driver
// ---------------------------------------------------------------------

Int mignotte_bound(const IntPoly& f) {
    // |h|_inf <= 2^deg(f) * ||f||_2 for any divisor h of f; times |lc(f)|
    // to cover the leading-coefficient-corrected candidates
    Int norm2sq = 0;
    for (const Int& c : f.coeffs()) norm2sq += c * c;
    Int root = sqrt(norm2sq) + 1;
    Int b = root << f.degree();
    return b * abs(f.leading());
}

const uint64_t kCandidatePrimes[] = {3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,
                                     41,  43,  47,  53,  59,  61,  67,  71,  73,  79,  83,
                                     89,  97,  101, 103, 107, 109, 113, 127, 131, 137, 139,
                                     149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197};

uint64_t poly_hash(const IntPoly& f) {
    uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (const Int& c : f.coeffs()) h ^= mpz_fdiv_ui(c.get_mpz_t(), 0x1fffffffffffffffULL) + (h << 6) + (h >> 2);
    return h;
}

bool next_combination(std::vector<size_t>& idx, size_t n) {
    size_t s = idx.size();
    for (size_t i = s; i-- > 0;) {
        if (idx[i] != i + n - s) {
            ++idx[i];
            for (size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// factor a primitive squarefree nonconstant polynomial, nonzero constant term
std::vector<IntPoly> factor_squarefree_primitive(const IntPoly& f) {
    if (f.degree() == 1) return {f};

    std::mt19937_64 rng(poly_hash(f));
    uint64_t best_p = 0;
    std::vector<ZpPoly> best_factors;
    int good_found = 0;
    for (uint64_t p : kCandidatePrimes) {
        if (mpz_fdiv_ui(f.leading().get_mpz_t(), p) == 0) continue;
        ZpPoly fp = zp_from(f, p);
        ZpPoly d(fp.size() - 1);
        for (size_t i = 1; i < fp.size(); ++i) d[i - 1] = mulm(fp[i], i % p, p);
        zp_trim(d);
        if (zp_is_zero(d)) continue;
        ZpPoly g = zp_gcd(fp, d, p);
        if (zp_is_zero(g) || zp_deg(g) != 0) continue;
        std::vector<ZpPoly> fs = zp_factor_squarefree(zp_make_monic(fp, p), p, rng);
        if (best_p == 0 || fs.size() < best_factors.size()) {
            best_p = p;
            best_factors = std::move(fs);
        }
        if (++good_found >= 4 || best_factors.size() == 1) break;
    }
    if (best_p == 0) throw DomainError("no good prime found for factorization");
    if (best_factors.size() == 1) return {f};

    uint64_t p = best_p;
    std::sort(best_factors.begin(), best_factors.end());

    Int bound = mignotte_bound(f) * 2 + 1;
    unsigned k = 1;
    Int pk = static_cast<unsigned long>(p);
    while (pk <= bound) {
        pk *= static_cast<unsigned long>(p);
        ++k;
    }
    std::vector<IntPoly> lifted;
    hensel_lift_list(f, best_factors, p, k, pk, lifted);

    // subset recombination; constant-term pruning before full products
    std::vector<IntPoly> result;
    IntPoly rem_poly = f;
    std::vector<size_t> live(lifted.size());
    for (size_t i = 0; i < live.size(); ++i) live[i] = i;

    auto try_subset = [&](const std::vector<size_t>& subset) -> bool {
        const Int& lc = rem_poly.leading();
        Int c0 = mod_reduce(lc, pk);
        for (size_t idx : subset) c0 = mod_reduce(c0 * lifted[idx].constant_term(), pk);
        Int half = pk / 2;
        if (c0 > half) c0 -= pk;
        if (c0 == 0) return false;
        Int target = lc * rem_poly.constant_term();
        if (!mpz_divisible_p(target.get_mpz_t(), c0.get_mpz_t())) return false;

        IntPoly prod = IntPoly::constant(lc);
        for (size_t idx : subset) prod = poly_mod(prod * lifted[idx], pk);
        IntPoly cand = symmetric_mod(prod, pk).primitive_part();
        if (cand.is_zero() || cand.is_constant()) return false;
        if (!cand.divides(rem_poly)) return false;
        result.push_back(cand);
        rem_poly = rem_poly.divexact(cand);
        return true;
    };

    size_t s = 1;
    while (!live.empty() && 2 * s <= live.size()) {
        std::vector<size_t> idx(s);
        for (size_t i = 0; i < s; ++i) idx[i] = i;
        bool found = false;
        while (true) {
            std::vector<size_t> subset(s);
            for (size_t i = 0; i < s; ++i) subset[i] = live[idx[i]];
            if (try_subset(subset)) {
                std::vector<size_t> nlive;
                for (size_t v : live)
                    if (std::find(subset.begin(), subset.end(), v) == subset.end()) nlive.push_back(v);
                live = std::move(nlive);
                found = true;
                break;
            }
            if (!next_combination(idx, live.size())) break;
        }
        if (!found) ++s;
    }
    if (!rem_poly.is_constant()) result.push_back(rem_poly);
    return result;
}

}  // namespace

IntPoly Factorization::expand() const {
    IntPoly r = IntPoly::constant(content * unit);
    for (const auto& [f, m] : factors) r = r * f.pow(m);
    return r;
}

std::vector<std::pair<IntPoly, unsigned>> squarefree_decomposition(const IntPoly& f) {
    if (f.is_zero() || f.is_constant() || !f.is_primitive() || f.leading() < 0)
        throw DomainError("squarefree decomposition requires a primitive nonconstant polynomial");
    std::vector<std::pair<IntPoly, unsigned>> out;
    IntPoly g = poly_gcd(f, f.derivative());
    if (g.is_constant()) {
        out.emplace_back(f, 1);
        return out;
    }
    // Yun
    IntPoly b = f.divexact(g);
    IntPoly c = f.derivative().divexact(g);
    IntPoly d = c - b.derivative();
    unsigned i = 1;
    while (!b.is_constant()) {
        IntPoly a = poly_gcd(b, d);
        if (!a.is_constant()) out.emplace_back(a, i);
        b = b.divexact(a);
        c = d.divexact(a);
        d = c - b.derivative();
        ++i;
    }
    return out;
}

IntPoly squarefree_part(const IntPoly& f) {
    if (f.is_zero()) throw DomainError("squarefree part of the zero polynomial");
    IntPoly fp = f.primitive_part();
    if (fp.is_constant()) return IntPoly::constant(1);
    IntPoly g = poly_gcd(fp, fp.derivative());
    return fp.divexact(g).primitive_part();
}

bool is_squarefree(const IntPoly& f) {
    if (f.is_zero()) return false;
    if (f.is_constant()) return true;
    return poly_gcd(f, f.derivative()).is_constant();
}

Factorization factor_int_poly(const IntPoly& f) {
    if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
    Factorization out;
    out.unit = f.leading() < 0 ? -1 : 1;
    out.content = f.content();
    IntPoly w = f.primitive_part();
    if (w.is_constant()) return out;

    size_t v = 0;
    while (w.coeff(v) == 0) ++v;
    if (v > 0) {
        std::vector<Int> shifted(w.coeffs().begin() + v, w.coeffs().end());
        w = IntPoly(std::move(shifted));
        out.factors.emplace_back(IntPoly::x(), static_cast<unsigned>(v));
    }
    if (!w.is_constant()) {
        for (const auto& [sf, mult] : squarefree_decomposition(w)) {
            for (const IntPoly& irr : factor_squarefree_primitive(sf))
                out.factors.emplace_back(irr, mult);
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return IntPoly::compare(a.first, b.first) < 0; });
    return out;
}

bool is_irreducible(const IntPoly& f) {
    if (f.is_zero() || f.is_constant()) return false;
    IntPoly fp = f.primitive_part();
    Factorization fact = factor_int_poly(fp);
    return fact.factors.size() == 1 && fact.factors[0].second == 1;
}

}  // namespace matper
