#include "matper/growth.hpp"

#include <mpfr.h>

#include <thread>

#include "matper/errors.hpp"

namespace matper {

namespace {

double log_of_int(const Int& n) {
    if (n <= 1) return 0.0;
    mpfr_t x;
    mpfr_init2(x, 96);
    mpfr_set_z(x, n.get_mpz_t(), MPFR_RNDN);
    mpfr_log(x, x, MPFR_RNDN);
    double r = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    return r;
}

}  // namespace

Int gcd_entries(const IntMatrix& m) {
    Int g = 0;
    for (size_t i = 0; i < m.dim(); ++i)
        for (size_t j = 0; j < m.dim(); ++j) {
            g = gcd(g, m.at(i, j));
            if (g == 1) return g;
        }
    return g;
}

GcdStream gcd_power_stream(const IntMatrix& a, unsigned long n_max, unsigned long tail_window) {
    if (a.det() == 0) throw DomainError("gcd_power_stream requires a nonsingular matrix");
    if (n_max < 1) throw DomainError("gcd_power_stream requires n_max >= 1");
    GcdStream out;
    out.records.reserve(n_max);
    IntMatrix id = IntMatrix::identity(a.dim());
    IntMatrix power = id;
    for (unsigned long n = 1; n <= n_max; ++n) {
        power = power * a;  // one multiplication per step
        GcdRecord rec;
        rec.n = n;
        rec.g = gcd_entries(power - id);
        rec.log_g = rec.g <= 1 ? 0.0 : log_of_int(rec.g);
        rec.ratio = rec.log_g / static_cast<double>(n);
        out.records.push_back(std::move(rec));
    }
    unsigned long window = tail_window == 0 || tail_window > n_max ? n_max : tail_window;
    out.tail_window = window;
    for (unsigned long n = n_max - window + 1; n <= n_max; ++n) {
        const GcdRecord& rec = out.records[n - 1];
        if (out.tail_argmax == 0 || rec.ratio > out.tail_max_ratio) {
            out.tail_max_ratio = rec.ratio;
            out.tail_argmax = n;
        }
    }
    return out;
}

EntropyResult entropy(const IntMatrix& a) {
    if (a.det() == 0) throw DomainError("entropy requires a nonsingular matrix");
    MahlerAnalysis m = mahler_analysis(char_poly(a), 0x1p-21);
    EntropyResult out;
    out.eta = (m.lo + m.hi) / 2;
    if (out.eta < 0) out.eta = 0;
    out.error_bound = (m.hi - m.lo) / 2 + 0x1p-40;
    out.expanding_roots = std::move(m.expanding);
    return out;
}

PeriodSequence small_period_sequence(const IntMatrix& a, unsigned long r, unsigned long k_max) {
    if (a.det() == 0) throw DomainError("small_period_sequence requires a nonsingular matrix");
    if (r < 1) throw DomainError("small_period_sequence requires r >= 1");
    PeriodSequence out;
    IntMatrix ar = mat_pow(a, r);
    IntMatrix id = IntMatrix::identity(a.dim());
    IntMatrix power = id;
    for (unsigned long k = 1; k <= k_max; ++k) {
        power = power * ar;
        Int nk = gcd_entries(power - id);
        if (nk == 0) {
            out.finite_order = true;
            out.finite_order_at = r * k;
            return out;
        }
        if (nk <= 1) continue;
        PeriodRow row;
        row.k = k;
        row.modulus = nk;
        OrderResult ord = order_mod(a, nk);
        row.ord = ord.order;
        if (row.ord > Int(static_cast<unsigned long>(r * k)))
            throw Error("internal: ord(A, N_k) exceeds rk");
        row.ratio = mpz_get_d(row.ord.get_mpz_t()) / log_of_int(nk);
        out.rows.push_back(std::move(row));
    }
    return out;
}

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
    size_t da = a.dim(), db = b.dim();
    IntMatrix out(da * db);
    for (size_t i1 = 0; i1 < da; ++i1)
        for (size_t j1 = 0; j1 < da; ++j1) {
            const Int& v = a.at(i1, j1);
            if (v == 0) continue;
            for (size_t i2 = 0; i2 < db; ++i2)
                for (size_t j2 = 0; j2 < db; ++j2)
                    out.at(i1 * db + i2, j1 * db + j2) = v * b.at(i2, j2);
        }
    return out;
}

ScanResult ord_scan(const IntMatrix& a, const Int& n_min, const Int& n_max, unsigned jobs) {
    if (n_min < 2 || n_max < n_min) throw DomainError("ord_scan requires 2 <= n_min <= n_max");
    Int det = a.det();
    if (det == 0) throw DomainError("ord_scan requires a nonsingular matrix");

    struct Partial {
        std::vector<ScanRecord> records;
        unsigned long skipped = 0;
    };
    Int total_span = n_max - n_min + 1;
    unsigned njobs = jobs == 0 ? 1 : jobs;
    if (total_span < static_cast<long>(njobs) * 4) njobs = 1;

    auto run_range = [&](const Int& lo, const Int& hi, Partial& out) {
        for (Int n = lo; n <= hi; ++n) {
            if (gcd(det, n) != 1) {
                ++out.skipped;
                continue;
            }
            ScanRecord rec;
            rec.modulus = n;
            rec.ord = order_mod(a, n).order;
            rec.ratio = mpz_get_d(rec.ord.get_mpz_t()) / log_of_int(n);
            out.records.push_back(std::move(rec));
        }
    };

    std::vector<Partial> parts(njobs);
    if (njobs == 1) {
        run_range(n_min, n_max, parts[0]);
    } else {
        std::vector<std::thread> workers;
        Int chunk = total_span / static_cast<long>(njobs);
        for (unsigned t = 0; t < njobs; ++t) {
            Int lo = n_min + chunk * static_cast<long>(t);
            Int hi = t + 1 == njobs ? n_max : lo + chunk - 1;
            workers.emplace_back([&, lo, hi, t] { run_range(lo, hi, parts[t]); });
        }
        for (std::thread& w : workers) w.join();
    }

    ScanResult out;
    for (Partial& p : parts) {
        out.skipped += p.skipped;
        for (ScanRecord& r : p.records) out.records.push_back(std::move(r));
    }
    for (size_t i = 1; i < out.records.size(); ++i)
        if (out.records[i].ratio < out.records[out.min_index].ratio) out.min_index = i;
    return out;
}

}  // namespace matper
