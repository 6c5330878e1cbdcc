#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "matper/errors.hpp"
#include "matper/poly_factor.hpp"
#include "support/modp_check.hpp"

using namespace matper;

namespace {

IntPoly poly(std::vector<long> coeffs) {
    std::vector<Int> v(coeffs.begin(), coeffs.end());
    return IntPoly(std::move(v));
}

// rational-root sieve: divisors of the constant term over divisors of the
// leading coefficient
bool has_rational_root(const IntPoly& f) {
    Int c0 = abs(f.constant_term()), lc = abs(f.leading());
    if (c0 == 0) return true;
    for (Int p = 1; p <= c0; ++p) {
        if (!mpz_divisible_p(c0.get_mpz_t(), p.get_mpz_t())) continue;
        for (Int q = 1; q <= lc; ++q) {
            if (!mpz_divisible_p(lc.get_mpz_t(), q.get_mpz_t())) continue;
            Rat r1 = make_rat(p, q), r2 = make_rat(-p, q);
            if (f.eval(r1) == 0 || f.eval(r2) == 0) return true;
        }
    }
    return false;
}

void check_irreducible_crosscheck(const IntPoly& f) {
    // per the module invariants: no rational root unless degree 1, and
    // irreducible modulo one of the first 25 primes OR no degree <= d/2
    // divisor found by the root-subset search
    if (f.degree() > 1) CHECK_FALSE(has_rational_root(f));
    static const uint64_t first25[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                       43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    bool mod_p_witness = false;
    for (uint64_t p : first25)
        if (modp_check::irreducible_mod_p(f, p)) {
            mod_p_witness = true;
            break;
        }
    if (!mod_p_witness) CHECK(modp_check::irreducible_by_root_subsets(f));
}

}  // namespace

TEST_CASE("factor examples") {
    Factorization f = factor_int_poly(poly({-1, 0, 1}));  // x^2 - 1
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == poly({-1, 1}));  // deterministic order: x-1, x+1
    CHECK(f.factors[1].first == poly({1, 1}));
    CHECK(f.unit == 1);
    CHECK(f.content == 1);

    Factorization c5 = factor_int_poly(poly({1, 1, 1, 1, 1}));  // Phi_5
    REQUIRE(c5.factors.size() == 1);
    CHECK(c5.factors[0].first == poly({1, 1, 1, 1, 1}));
    CHECK(c5.factors[0].second == 1);

    // (x^2 - x - 1)(x^2 - 3x + 1) expanded, then factored back
    IntPoly prod = poly({-1, -1, 1}) * poly({1, -3, 1});
    Factorization f2 = factor_int_poly(prod);
    REQUIRE(f2.factors.size() == 2);
    CHECK(f2.expand() == prod);
    for (auto& [fi, m] : f2.factors) {
        CHECK(m == 1);
        CHECK((fi == poly({-1, -1, 1}) || fi == poly({1, -3, 1})));
    }
}

TEST_CASE("factor guards and degenerate inputs") {
    CHECK_THROWS_AS(factor_int_poly(IntPoly()), DomainError);
    Factorization c = factor_int_poly(poly({-6}));
    CHECK(c.unit == -1);
    CHECK(c.content == 6);
    CHECK(c.factors.empty());
    Factorization xs = factor_int_poly(poly({0, 0, 12}));  // 12 x^2
    CHECK(xs.content == 12);
    REQUIRE(xs.factors.size() == 1);
    CHECK(xs.factors[0].first == IntPoly::x());
    CHECK(xs.factors[0].second == 2);
}

TEST_CASE("x^4 + 1: reducible mod every prime, still irreducible over Z") {
    IntPoly f = poly({1, 0, 0, 0, 1});
    Factorization fact = factor_int_poly(f);
    REQUIRE(fact.factors.size() == 1);
    CHECK(fact.factors[0].first == f);
    check_irreducible_crosscheck(f);
}

TEST_CASE("squarefree decomposition") {
    IntPoly f = poly({-1, 1}).pow(2) * poly({2, 1}).pow(3);  // (x-1)^2 (x+2)^3
    auto parts = squarefree_decomposition(f);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].first == poly({-1, 1}));
    CHECK(parts[0].second == 2);
    CHECK(parts[1].first == poly({2, 1}));
    CHECK(parts[1].second == 3);
    CHECK(squarefree_part(f) == poly({-1, 1}) * poly({2, 1}));
    CHECK(is_squarefree(poly({-1, 0, 1})));
    CHECK_FALSE(is_squarefree(f));
}

TEST_CASE("random factorization round trips") {
    std::mt19937_64 rng(2001);
    std::uniform_int_distribution<long> c(-4, 4);
    std::uniform_int_distribution<int> deg(1, 3), mult(1, 2), nf(1, 3), content(1, 3);
    for (int t = 0; t < 60; ++t) {
        IntPoly f = IntPoly::constant(content(rng) * (t % 2 ? 1 : -1));
        int k = nf(rng);
        for (int i = 0; i < k; ++i) {
            int d = deg(rng);
            std::vector<Int> v;
            for (int j = 0; j < d; ++j) v.push_back(c(rng));
            v.push_back(1 + std::abs(c(rng)));
            IntPoly g(std::move(v));
            if (g.is_constant()) continue;
            f = f * g.pow(mult(rng));
        }
        if (f.is_constant()) continue;
        Factorization fact = factor_int_poly(f);
        CHECK(fact.expand() == f);  // coefficient-for-coefficient
        for (size_t i = 0; i < fact.factors.size(); ++i) {
            CHECK(fact.factors[i].first.is_primitive());
            CHECK(fact.factors[i].first.leading() > 0);
            for (size_t j = i + 1; j < fact.factors.size(); ++j)
                CHECK(fact.factors[i].first != fact.factors[j].first);
        }
    }
}

TEST_CASE("returned factors pass the irreducibility cross-checks") {
    std::mt19937_64 rng(2002);
    std::uniform_int_distribution<long> c(-5, 5);
    int checked = 0;
    for (int t = 0; t < 12; ++t) {
        std::vector<Int> v = {Int(c(rng)), Int(c(rng)), Int(c(rng)), Int(c(rng)),
                              Int(1 + std::abs(c(rng)))};
        IntPoly f(std::move(v));
        if (f.is_zero() || f.is_constant() || f.constant_term() == 0) continue;
        for (auto& [fi, m] : factor_int_poly(f).factors) {
            if (fi == IntPoly::x()) continue;
            check_irreducible_crosscheck(fi);
            ++checked;
        }
    }
    CHECK(checked > 5);
}

TEST_CASE("cyclotomic-style stress: x^n - 1") {
    for (unsigned long n : {1ul, 2ul, 6ul, 12ul, 15ul}) {
        std::vector<Int> v(n + 1, Int(0));
        v[0] = -1;
        v[n] = 1;
        IntPoly f(std::move(v));
        Factorization fact = factor_int_poly(f);
        CHECK(fact.expand() == f);
        size_t divisors = 0;
        for (unsigned long d = 1; d <= n; ++d)
            if (n % d == 0) ++divisors;
        CHECK(fact.factors.size() == divisors);  // one cyclotomic factor per divisor
    }
}
