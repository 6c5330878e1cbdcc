#include "matper/classify.hpp"

#include <algorithm>
#include <numeric>

#include "matper/errors.hpp"
#include "matper/growth.hpp"
#include "matper/modorder.hpp"
#include "matper/poly_factor.hpp"

namespace matper {

const char* to_string(Verdict v) {
    return v == Verdict::exceptional ? "exceptional" : "not_exceptional";
}

const char* to_string(Branch b) {
    switch (b) {
        case Branch::finite_order: return "finite_order";
        case Branch::integer_power: return "integer_power";
        case Branch::quadratic_unit: return "quadratic_unit";
        case Branch::not_diagonalizable: return "not_diagonalizable";
        case Branch::rank_ge_2: return "rank_ge_2";
        case Branch::rank1_nonqualifying: return "rank1_nonqualifying";
    }
    return "?";
}

bool is_diagonalizable(const IntMatrix& a) { return is_squarefree(min_poly(a)); }

std::optional<unsigned long> finite_order(const IntMatrix& a) {
    IntPoly cp = char_poly(a);
    Factorization fact = factor_int_poly(cp);
    unsigned long order = 1;
    for (const auto& [fi, mult] : fact.factors) {
        auto m = cyclotomic_index_of_irreducible(fi);
        if (!m) return std::nullopt;
        order = std::lcm(order, *m);
    }
    if (!is_diagonalizable(a)) return std::nullopt;
    if (!mat_pow(a, order).is_identity()) throw Error("internal: finite order verification failed");
    // the lcm of the cyclotomic indices is already minimal: any annihilating
    // exponent must kill every primitive m-th root of unity eigenvalue
    return order;
}

namespace {

unsigned long phi_ul(unsigned long m) {
    unsigned long r = m;
    for (unsigned long p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        r -= r / p;
        while (m % p == 0) m /= p;
    }
    if (m > 1) r -= r / m;
    return r;
}

void xgcd_long(long a, long b, long& g, long& x, long& y) {
    long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    long r0 = a, r1 = b;
    while (r1 != 0) {
        long q = r0 / r1;
        long r2 = r0 - q * r1;
        long x2 = x0 - q * x1;
        long y2 = y0 - q * y1;
        r0 = r1; r1 = r2;
        x0 = x1; x1 = x2;
        y0 = y1; y1 = y2;
    }
    if (r0 < 0) {
        r0 = -r0;
        x0 = -x0;
        y0 = -y0;
    }
    g = r0;
    x = x0;
    y = y0;
}

constexpr long kExponentLatticeLimit = 1L << 40;

}  // namespace

EigenGroupRank eigen_group_rank(const std::vector<AlgebraicNumber>& eigs, long exp_bound) {
    if (eigs.empty()) throw DomainError("eigen_group_rank requires a nonempty eigenvalue list");
    EigenGroupRank out;
    out.exponents.assign(eigs.size(), 0);
    out.zeta_orders.assign(eigs.size(), 1);

    std::vector<size_t> free_idx;
    for (size_t i = 0; i < eigs.size(); ++i) {
        if (eigs[i].is_zero()) throw DomainError("eigen_group_rank requires nonzero eigenvalues");
        if (auto t = root_of_unity_order(eigs[i])) {
            out.zeta_orders[i] = *t;
        } else {
            free_idx.push_back(i);
        }
    }
    if (free_idx.empty()) {
        out.rank = EigenGroupRank::Rank::rank0;
        unsigned long r = 1;
        for (unsigned long t : out.zeta_orders) r = std::lcm(r, t);
        out.torsion_order = r;
        return out;
    }

    // pairwise relations against the first non-torsion eigenvalue; pairwise
    // dependence with a common reference forces global rank <= 1
    size_t ref = free_idx[0];
    std::vector<Rat> rel(eigs.size(), Rat(0));  // [lambda_i] = rel_i * [lambda_ref]
    rel[ref] = 1;
    for (size_t t = 1; t < free_idx.size(); ++t) {
        size_t i = free_idx[t];
        auto dep = mult_dependent(eigs[ref], eigs[i], exp_bound);
        if (!dep) {
            out.rank = EigenGroupRank::Rank::rank_ge2;
            out.independent_pair = {ref, i};
            return out;
        }
        // dep: lambda_ref^a * lambda_i^b = torsion, so [lambda_i] = (-a/b)[ref]
        rel[i] = make_rat(Int(-dep->a), Int(dep->b));
    }

    // lattice of exponents relative to lambda_ref^(1/D)
    Int dd = 1;
    for (size_t i : free_idx) dd = lcm(dd, Int(rel[i].get_den()));
    if (dd > kExponentLatticeLimit) throw BoundExceededError("exponent lattice denominator too large");
    std::vector<long> lattice(eigs.size(), 0);
    for (size_t i : free_idx) {
        Rat v = rel[i] * Rat(dd);
        if (v.get_den() != 1) throw Error("internal: lattice exponent not integral");
        if (abs(Int(v.get_num())) > kExponentLatticeLimit)
            throw BoundExceededError("exponent lattice entry too large");
        lattice[i] = static_cast<long>(Int(v.get_num()).get_si());
    }

    // generator: running extended gcd over the lattice exponents; lambda keeps
    // lattice coordinate g > 0 throughout
    long g = lattice[ref];  // = D > 0
    AlgebraicNumber lambda = eigs[ref];
    for (size_t t = 1; t < free_idx.size(); ++t) {
        size_t i = free_idx[t];
        long gn, u, v;
        xgcd_long(g, lattice[i], gn, u, v);
        if (gn == g) continue;  // current generator already covers lambda_i
        AlgebraicNumber part1 = alg_pow(lambda, u);
        AlgebraicNumber part2 = alg_pow(eigs[i], v);
        lambda = alg_mul(part1, part2);
        g = gn;
    }
    for (size_t i : free_idx) out.exponents[i] = lattice[i] / g;

    // orient so |lambda| > 1 (a rank-1 free generator is never on the unit
    // circle); inverting the generator flips every exponent
    bool oriented = false;
    for (double tol = 1e-8; !oriented; tol /= 1024) {
        LogAbs l = log_abs(lambda, tol);
        if (l.lo > 0) {
            oriented = true;
        } else if (l.hi < 0) {
            lambda = alg_pow(lambda, -1);
            for (size_t i : free_idx) out.exponents[i] = -out.exponents[i];
            oriented = true;
        }
        if (tol < 1e-300) throw Error("internal: generator modulus straddles 1");
    }

    // torsion parts zeta_i = lambda_i * lambda^{-a_i}, certified roots of unity
    for (size_t i : free_idx) {
        AlgebraicNumber zeta = alg_mul(eigs[i], alg_pow(lambda, -out.exponents[i]));
        auto t = root_of_unity_order(zeta);
        if (!t) throw Error("internal: residual torsion part is not a root of unity");
        out.zeta_orders[i] = *t;
    }
    unsigned long r = 1;
    for (unsigned long t : out.zeta_orders) r = std::lcm(r, t);

    out.rank = EigenGroupRank::Rank::rank1;
    out.generator = lambda;
    out.torsion_order = r;
    return out;
}

unsigned long default_r_bound(size_t dim) {
    const unsigned long cap = 1000000;
    unsigned long k = 2 * static_cast<unsigned long>(dim) * static_cast<unsigned long>(dim);
    Int l = 1;
    // phi(m) <= k forces m <= 2k^2 + small
    for (unsigned long m = 1; m <= 2 * k * k + 4; ++m) {
        if (phi_ul(m) > k) continue;
        l = lcm(l, Int(m));
        if (l > cap) return cap;
    }
    return static_cast<unsigned long>(l.get_ui());
}

namespace {

// minimal integer base: base0 = a^s with s maximal; returns (a, s)
std::pair<Int, unsigned long> minimal_base(const Int& base0) {
    FactoredInteger f = factor_integer(base0);
    unsigned long s = 0;
    for (const auto& [p, e] : f.factors) s = s == 0 ? e : std::gcd(s, static_cast<unsigned long>(e));
    Int a = 1;
    for (const auto& [p, e] : f.factors) a *= pow_int(p, e / s);
    return {a, s};
}

}  // namespace

ExceptionalityVerdict classify(const IntMatrix& a, long exp_bound, unsigned long r_bound) {
    if (a.det() == 0) throw DomainError("classify requires a nonsingular matrix");
    if (exp_bound < 1) exp_bound = 64;
    if (r_bound == 0) r_bound = default_r_bound(a.dim());

    ExceptionalityVerdict out;
    out.bounds = {exp_bound, r_bound};

    // finite order first: it is the strongest property and implies the rest
    if (auto fo = finite_order(a)) {
        out.verdict = Verdict::exceptional;
        out.branch = Branch::finite_order;
        out.witness = FiniteOrderWitness{*fo};
        return out;
    }
    if (!is_diagonalizable(a)) {
        out.verdict = Verdict::not_exceptional;
        out.branch = Branch::not_diagonalizable;
        return out;
    }

    IntPoly cp = char_poly(a);
    Factorization fact = factor_int_poly(cp);
    std::vector<AlgebraicNumber> roots = isolate_roots(squarefree_part(cp), 64);
    // deterministic order: sort by (factor, box midpoint)
    std::sort(roots.begin(), roots.end(), [](const AlgebraicNumber& x, const AlgebraicNumber& y) {
        int c = IntPoly::compare(x.minpoly(), y.minpoly());
        if (c != 0) return c < 0;
        Rat xr = x.box().re.mid(), yr = y.box().re.mid();
        if (xr != yr) return xr < yr;
        return x.box().im.mid() < y.box().im.mid();
    });
    for (const AlgebraicNumber& r : roots) {
        unsigned mult = 1;
        for (const auto& [fi, m] : fact.factors)
            if (fi == r.minpoly()) mult = m;
        out.eigenvalues.push_back({r, mult});
    }
    std::vector<AlgebraicNumber> eigs;
    for (const EigenInfo& e : out.eigenvalues) eigs.push_back(e.value);

    EigenGroupRank rank = eigen_group_rank(eigs, exp_bound);
    if (rank.rank == EigenGroupRank::Rank::rank0)
        throw Error("internal: rank-0 group should have been caught by finite_order");
    if (rank.rank == EigenGroupRank::Rank::rank_ge2) {
        out.verdict = Verdict::not_exceptional;
        out.branch = Branch::rank_ge_2;
        out.witness = IndependentPair{rank.independent_pair->first, rank.independent_pair->second};
        return out;
    }

    unsigned long r = rank.torsion_order;
    if (r > r_bound)
        throw BoundExceededError("torsion order " + std::to_string(r) +
                                 " exceeds r_bound " + std::to_string(r_bound));
    const AlgebraicNumber& lambda = *rank.generator;
    AlgebraicNumber mu = alg_pow(lambda, static_cast<long>(r));

    if (mu.is_rational()) {
        // lambda^r rational: the eigenvalues of A^{2r} are positive integer
        // powers of a single integer; report the smallest power r' in {r, 2r}
        Rat v = mu.rational_value();
        if (v.get_den() != 1 || abs(Int(v.get_num())) <= 1)
            throw Error("internal: rational generator power is not an integer > 1 in modulus");
        unsigned long r_rep = v > 0 ? r : 2 * r;
        Int base0 = v > 0 ? Int(v.get_num()) : Int(v.get_num() * v.get_num());
        auto [base, s] = minimal_base(base0);
        // eigenvalue_i of A^{r'} = mu^{(r'/r) a_i} = base0^{a_i} when r' = 2r
        // (mu < 0 case) and = base0^{a_i} when r' = r (mu > 0): m_i = s*a_i
        IntegerPowerWitness w;
        w.r = r_rep;
        w.base = base;
        for (size_t i = 0; i < eigs.size(); ++i)
            w.exponents.push_back(static_cast<long>(s) * rank.exponents[i]);
        // exact verification: char_poly(A^r') = prod (x - base^m_i)^mult_i
        IntPoly expect = IntPoly::constant(1);
        for (size_t i = 0; i < out.eigenvalues.size(); ++i) {
            if (w.exponents[i] < 0) throw Error("internal: negative integer-power exponent");
            IntPoly lin(std::vector<Int>{-pow_int(w.base, static_cast<unsigned long>(w.exponents[i])), 1});
            expect = expect * lin.pow(out.eigenvalues[i].multiplicity);
        }
        if (char_poly(mat_pow(a, r_rep)) != expect)
            throw Error("internal: integer-power witness failed verification");
        out.verdict = Verdict::exceptional;
        out.branch = Branch::integer_power;
        out.witness = std::move(w);
        return out;
    }

    if (mu.degree() == 2) {
        auto qi = quadratic_unit_info(mu);
        if (qi && qi->unit && qi->real) {
            QuadraticUnitWitness w{r, qi->field_discriminant, lambda, rank.exponents,
                                   rank.zeta_orders};
            // exact verification: lambda_i^r = lambda^(r a_i), i.e. the
            // product lambda_i^r * lambda^(-r a_i) is exactly 1
            for (size_t i = 0; i < eigs.size(); ++i) {
                AlgebraicNumber lhs = alg_pow(eigs[i], static_cast<long>(r));
                AlgebraicNumber rhs = alg_pow(lambda, -static_cast<long>(r) * rank.exponents[i]);
                AlgebraicNumber prod = alg_mul(lhs, rhs);
                if (!(prod.is_rational() && prod.rational_value() == 1))
                    throw Error("internal: quadratic-unit witness failed verification");
            }
            out.verdict = Verdict::exceptional;
            out.branch = Branch::quadratic_unit;
            out.witness = std::move(w);
            return out;
        }
    }

    out.verdict = Verdict::not_exceptional;
    out.branch = Branch::rank1_nonqualifying;
    return out;
}

}  // namespace matper
