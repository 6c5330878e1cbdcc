// Certified complex root isolation: floating-point Durand-Kerner iteration
// produces approximations, then exact rational arithmetic certifies one root
// per box via the classical bound  min_j |z - r_j| <= deg * |f(z)/f'(z)|.
// Disjoint certified boxes, one per root, isolate every root.

#include <vector>

#include "matper/algnum.hpp"
#include "matper/errors.hpp"
#include "matper/interval.hpp"

namespace matper {
namespace detail {

// rational upper bound for sqrt(q), q >= 0
Rat sqrt_upper(const Rat& q, long prec_bits) {
    if (q < 0) throw DomainError("sqrt of negative rational");
    if (q == 0) return Rat(0);
    Int num = q.get_num(), den = q.get_den();
    long t = prec_bits / 2 + 16;
    Int scaled = (num << (2 * t)) / den;  // floor(num*4^t/den)
    Int r;
    mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
    r += 1;  // r^2 > scaled >= num*4^t/den - 1, so (r/2^t)^2 > q - eps; verify below
    Rat u = make_rat(r, Int(1) << t);
    while (u * u < q) u += make_rat(Int(1), Int(1) << t);
    return u;
}

// floor(x * 2^prec) / 2^prec
Rat round_to_dyadic(const Rat& x, long prec_bits) {
    Int num = x.get_num() << prec_bits;
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), x.get_den().get_mpz_t());
    return make_rat(q, Int(1) << prec_bits);
}

struct RatC {
    Rat re, im;
};

RatC eval_poly(const IntPoly& f, const RatC& z) {
    RatC acc{Rat(0), Rat(0)};
    for (size_t k = f.coeffs().size(); k-- > 0;) {
        Rat nre = acc.re * z.re - acc.im * z.im + Rat(f.coeffs()[k]);
        Rat nim = acc.re * z.im + acc.im * z.re;
        acc.re = std::move(nre);
        acc.im = std::move(nim);
    }
    return acc;
}

Rat norm_sq(const RatC& z) { return z.re * z.re + z.im * z.im; }

// exact certification radius^2 = deg^2 * |f(z)|^2 / |f'(z)|^2, or nullopt if f'(z) = 0
bool cert_radius(const IntPoly& f, const IntPoly& fd, const RatC& z, long prec_bits, Rat& u_out) {
    RatC fv = eval_poly(f, z);
    if (fv.re == 0 && fv.im == 0) {
        u_out = 0;
        return true;
    }
    RatC dv = eval_poly(fd, z);
    Rat dn = norm_sq(dv);
    if (dn == 0) return false;
    Rat rho_sq = Rat(static_cast<unsigned long>(f.degree() * f.degree())) * norm_sq(fv) / dn;
    u_out = sqrt_upper(rho_sq, prec_bits);
    return true;
}

QRect box_around(const RatC& c, const Rat& u) {
    return QRect{QInterval{c.re - u, c.re + u}, QInterval{c.im - u, c.im + u}};
}

// ------------------------------------------------------------------
// Durand-Kerner in GMP floating point (heuristic stage)
// ------------------------------------------------------------------

struct MpfC {
    mpf_class re, im;
};

MpfC mul(const MpfC& a, const MpfC& b, unsigned long prec) {
    MpfC r{mpf_class(0, prec), mpf_class(0, prec)};
    r.re = a.re * b.re - a.im * b.im;
    r.im = a.re * b.im + a.im * b.re;
    return r;
}
MpfC sub(const MpfC& a, const MpfC& b, unsigned long prec) {
    return {mpf_class(a.re - b.re, prec), mpf_class(a.im - b.im, prec)};
}
MpfC div(const MpfC& a, const MpfC& b, unsigned long prec) {
    mpf_class d(b.re * b.re + b.im * b.im, prec);
    MpfC r{mpf_class(0, prec), mpf_class(0, prec)};
    r.re = (a.re * b.re + a.im * b.im) / d;
    r.im = (a.im * b.re - a.re * b.im) / d;
    return r;
}

std::vector<RatC> durand_kerner(const IntPoly& f, unsigned long prec, int max_iter) {
    size_t n = f.degree();
    std::vector<MpfC> coeff(n + 1);
    mpf_class lead(0, prec);
    mpf_set_z(lead.get_mpf_t(), f.leading().get_mpz_t());
    for (size_t i = 0; i <= n; ++i) {
        mpf_class c(0, prec);
        mpf_set_z(c.get_mpf_t(), f.coeffs()[i].get_mpz_t());
        coeff[i] = {mpf_class(c / lead, prec), mpf_class(0, prec)};
    }
    // Cauchy bound for the start radius
    mpf_class radius(1, prec);
    for (size_t i = 0; i < n; ++i) {
        mpf_class a(abs(coeff[i].re), prec);
        if (a > radius) radius = a;
    }
    radius += 1;

    std::vector<MpfC> z(n);
    // spiral start: radius * (0.4 + 0.9i)^k scaled to the circle
    MpfC seed{mpf_class(0.4, prec), mpf_class(0.9, prec)};
    MpfC cur{mpf_class(1, prec), mpf_class(0, prec)};
    for (size_t k = 0; k < n; ++k) {
        cur = mul(cur, seed, prec);
        mpf_class mag(cur.re * cur.re + cur.im * cur.im, prec);
        mpf_sqrt(mag.get_mpf_t(), mag.get_mpf_t());
        z[k] = {mpf_class(radius * cur.re / mag, prec), mpf_class(radius * cur.im / mag, prec)};
        // nudge off symmetric configurations
        z[k].im += mpf_class(0.1, prec) * static_cast<long>(k + 1) / static_cast<long>(n);
    }

    mpf_class tol(0, prec);
    mpf_class one(1, prec);
    mpf_div_2exp(tol.get_mpf_t(), one.get_mpf_t(), prec - 4);

    auto eval = [&](const MpfC& w) {
        MpfC acc{mpf_class(0, prec), mpf_class(0, prec)};
        for (size_t k = n + 1; k-- > 0;) {
            acc = mul(acc, w, prec);
            acc.re += coeff[k].re;
        }
        return acc;
    };

    for (int it = 0; it < max_iter; ++it) {
        bool converged = true;
        for (size_t k = 0; k < n; ++k) {
            MpfC num = eval(z[k]);
            MpfC den{mpf_class(1, prec), mpf_class(0, prec)};
            for (size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                den = mul(den, sub(z[k], z[j], prec), prec);
            }
            if (den.re == 0 && den.im == 0) {
                // collided points: nudge and keep iterating
                z[k].re += mpf_class(0.5, prec) / static_cast<long>(k + 2);
                converged = false;
                continue;
            }
            MpfC step = div(num, den, prec);
            z[k].re -= step.re;
            z[k].im -= step.im;
            mpf_class s(abs(step.re) + abs(step.im), prec);
            mpf_class scale(abs(z[k].re) + abs(z[k].im) + 1, prec);
            if (s > tol * scale) converged = false;
        }
        if (converged) break;
    }

    std::vector<RatC> out(n);
    for (size_t k = 0; k < n; ++k) {
        Rat re(z[k].re), im(z[k].im);  // exact mpf -> mpq
        // round to limit rational size in the exact stage
        out[k] = {round_to_dyadic(re, static_cast<long>(prec)),
                  round_to_dyadic(im, static_cast<long>(prec))};
    }
    return out;
}

// ------------------------------------------------------------------
// isolation driver
// ------------------------------------------------------------------

std::vector<QRect> isolate_boxes(const IntPoly& f, long target_prec) {
    size_t n = f.degree();
    std::vector<QRect> boxes;
    if (n == 0) return boxes;
    if (n == 1) {
        Rat root = make_rat(-f.coeff(0), f.coeff(1));
        boxes.push_back(QRect::point(root, Rat(0)));
        return boxes;
    }
    IntPoly fd = f.derivative();
    unsigned long prec = 128;
    Rat target_width = make_rat(Int(1), Int(1) << std::max(4L, target_prec));
    for (int attempt = 0; attempt < 14; ++attempt, prec *= 2) {
        std::vector<RatC> centers = durand_kerner(f, prec, 200 + 30 * static_cast<int>(n));
        std::vector<QRect> cand(n);
        bool ok = true;
        for (size_t k = 0; k < n && ok; ++k) {
            Rat u;
            if (!cert_radius(f, fd, centers[k], static_cast<long>(prec), u)) {
                ok = false;
                break;
            }
            cand[k] = box_around(centers[k], u);
            if (cand[k].width() > target_width) ok = false;
        }
        if (!ok) continue;
        for (size_t i = 0; i < n && ok; ++i)
            for (size_t j = i + 1; j < n && ok; ++j)
                if (!cand[i].disjoint(cand[j])) ok = false;
        if (!ok) continue;
        return cand;
    }
    throw Error("root isolation did not converge");
}

// refine an isolating box of f below 2^-target (same root)
QRect refine_box(const IntPoly& f, const QRect& box, long target_prec) {
    Rat target_width = make_rat(Int(1), Int(1) << std::max(4L, target_prec));
    if (box.width() <= target_width) return box;
    if (box.re.is_point() && box.im.is_point()) return box;  // exact root

    IntPoly fd = f.derivative();
    QRect cur = box;
    long prec = std::max<long>(64, target_prec + 32);
    for (int attempt = 0; attempt < 40; ++attempt) {
        // Newton step from the center, then certify and check containment
        RatC c{cur.re.mid(), cur.im.mid()};
        bool newton_ok = false;
        for (int step = 0; step < 4; ++step) {
            RatC fv = eval_poly(f, c);
            RatC dv = eval_poly(fd, c);
            Rat dn = norm_sq(dv);
            if (dn == 0) break;
            // c -= f(c)/f'(c)
            Rat nre = c.re - (fv.re * dv.re + fv.im * dv.im) / dn;
            Rat nim = c.im - (fv.im * dv.re - fv.re * dv.im) / dn;
            c = {round_to_dyadic(nre, prec), round_to_dyadic(nim, prec)};
            Rat u;
            if (!cert_radius(f, fd, c, prec, u)) break;
            QRect nb = box_around(c, u);
            bool inside = nb.re.lo >= cur.re.lo && nb.re.hi <= cur.re.hi && nb.im.lo >= cur.im.lo &&
                          nb.im.hi <= cur.im.hi;
            if (inside) {
                cur = nb;
                newton_ok = true;
                if (cur.width() <= target_width) return cur;
            }
        }
        if (!newton_ok) {
            // fall back to global re-isolation and match by intersection
            std::vector<QRect> all = isolate_boxes(f, prec);
            const QRect* match = nullptr;
            size_t count = 0;
            for (const QRect& b : all) {
                if (b.intersects(cur)) {
                    ++count;
                    match = &b;
                }
            }
            if (count == 1) {
                cur = *match;
                if (cur.width() <= target_width) return cur;
            }
        }
        prec *= 2;
    }
    throw Error("root refinement did not converge");
}

}  // namespace detail
}  // namespace matper
