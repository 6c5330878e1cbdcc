#ifndef MATPER_INTERVAL_HPP
#define MATPER_INTERVAL_HPP

#include <string>

#include "matper/common.hpp"
#include "matper/errors.hpp"
#include "matper/int_poly.hpp"

namespace matper {

// Closed interval with exact rational endpoints. All operations return exact
// enclosures; nothing here rounds.
struct QInterval {
    Rat lo, hi;

    QInterval() : lo(0), hi(0) {}
    QInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw DomainError("interval endpoints out of order");
    }
    static QInterval point(const Rat& v) { return {v, v}; }

    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool is_point() const { return lo == hi; }
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }

    bool disjoint(const QInterval& o) const { return hi < o.lo || o.hi < lo; }
    bool strictly_positive() const { return lo > 0; }
    bool strictly_negative() const { return hi < 0; }

    QInterval operator+(const QInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    QInterval operator-(const QInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    QInterval operator-() const { return {-hi, -lo}; }

    QInterval operator*(const QInterval& o) const {
        Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        Rat mn = a, mx = a;
        for (const Rat* v : {&b, &c, &d}) {
            if (*v < mn) mn = *v;
            if (*v > mx) mx = *v;
        }
        return {mn, mx};
    }

    QInterval operator*(const Rat& c) const {
        return c >= 0 ? QInterval{lo * c, hi * c} : QInterval{hi * c, lo * c};
    }

    QInterval square() const {
        if (lo >= 0) return {lo * lo, hi * hi};
        if (hi <= 0) return {hi * hi, lo * lo};
        Rat m = -lo > hi ? lo * lo : hi * hi;
        return {Rat(0), m};
    }

    // enclosure of 1/x; requires the interval to exclude zero
    QInterval recip() const {
        if (contains_zero()) throw DomainError("interval inverse through zero");
        return {Rat(1) / hi, Rat(1) / lo};
    }

    QInterval hull(const QInterval& o) const {
        return {lo < o.lo ? lo : o.lo, hi > o.hi ? hi : o.hi};
    }
};

// Axis-aligned complex rectangle with exact rational corners.
struct QRect {
    QInterval re, im;

    QRect() = default;
    QRect(QInterval r, QInterval i) : re(std::move(r)), im(std::move(i)) {}
    static QRect point(const Rat& x, const Rat& y) {
        return {QInterval::point(x), QInterval::point(y)};
    }

    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool disjoint(const QRect& o) const { return re.disjoint(o.re) || im.disjoint(o.im); }
    bool intersects(const QRect& o) const { return !disjoint(o); }
    Rat width() const {
        Rat w = re.width(), h = im.width();
        return w > h ? w : h;
    }

    QRect operator+(const QRect& o) const { return {re + o.re, im + o.im}; }
    QRect operator-(const QRect& o) const { return {re - o.re, im - o.im}; }
    QRect operator*(const QRect& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }

    QInterval norm_sq() const { return re.square() + im.square(); }

    // enclosure of 1/z = conj(z)/|z|^2; rectangle must exclude zero
    QRect recip() const {
        QInterval ns = norm_sq();
        if (ns.contains_zero()) throw DomainError("rectangle inverse through zero");
        QInterval inv_ns = ns.recip();
        return {re * inv_ns, (-im) * inv_ns};
    }

    QRect pow(unsigned long n) const {
        QRect acc = point(1, 0);
        QRect base = *this;
        while (n) {
            if (n & 1) acc = acc * base;
            n >>= 1;
            if (n) base = base * base;
        }
        return acc;
    }
};

// interval Horner evaluation of an integer polynomial on a rectangle
inline QRect poly_eval_rect(const IntPoly& f, const QRect& z) {
    QRect acc = QRect::point(0, 0);
    if (f.is_zero()) return acc;
    for (size_t k = f.coeffs().size(); k-- > 0;) {
        acc = acc * z;
        acc.re = acc.re + QInterval::point(Rat(f.coeffs()[k]));
    }
    return acc;
}

}  // namespace matper

#endif
