#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "matper/errors.hpp"
#include "matper/modorder.hpp"
#include "support/oracles.hpp"

using namespace matper;

namespace {

IntMatrix from(const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Int>> v;
    for (const auto& r : rows) v.emplace_back(r.begin(), r.end());
    return IntMatrix::from_rows(v);
}

const IntMatrix kFib = from({{1, 1}, {1, 0}});

// trial-division oracle for complete factorizations of machine-size inputs
std::vector<std::pair<Int, unsigned>> trial_factor(unsigned long n) {
    std::vector<std::pair<Int, unsigned>> out;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(Int(p), e);
    }
    if (n > 1) out.emplace_back(Int(n), 1);
    return out;
}

}  // namespace

TEST_CASE("factor_integer examples") {
    FactoredInteger f = factor_integer(91);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == std::pair<Int, unsigned>{7, 1});
    CHECK(f.factors[1] == std::pair<Int, unsigned>{13, 1});

    // 2^20 - 1 = 1048575; expected value confirmed by the trial-division oracle
    FactoredInteger g = factor_integer(1048575);
    CHECK(g.factors == trial_factor(1048575));
    REQUIRE(g.factors.size() == 5);
    CHECK(g.factors[0] == std::pair<Int, unsigned>{3, 1});
    CHECK(g.factors[1] == std::pair<Int, unsigned>{5, 2});
    CHECK(g.factors[2] == std::pair<Int, unsigned>{11, 1});
    CHECK(g.factors[3] == std::pair<Int, unsigned>{31, 1});
    CHECK(g.factors[4] == std::pair<Int, unsigned>{41, 1});

    CHECK(factor_integer(1).factors.empty());
    CHECK_THROWS_AS(factor_integer(0), DomainError);
}

TEST_CASE("factor_integer randomized against trial division") {
    std::mt19937_64 rng(3001);
    std::uniform_int_distribution<unsigned long> d(2, 5000000);
    for (int t = 0; t < 60; ++t) {
        unsigned long n = d(rng);
        FactoredInteger f = factor_integer(Int(static_cast<unsigned long>(n)));
        CHECK(f.factors == trial_factor(n));
        CHECK(f.reconstruct() == Int(static_cast<unsigned long>(n)));
    }
    // a larger semiprime exercising the rho stage: 1000003 * 1000033
    Int big = Int(1000003) * Int(1000033);
    FactoredInteger f = factor_integer(big);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == 1000003);
    CHECK(f.factors[1].first == 1000033);
    CHECK(f.reconstruct() == big);
}

TEST_CASE("primality") {
    CHECK(is_probable_prime(2));
    CHECK(is_probable_prime(1000003));
    CHECK_FALSE(is_probable_prime(1));
    CHECK_FALSE(is_probable_prime(1048575));
    CHECK(is_probable_prime(Int("170141183460469231731687303715884105727")));  // 2^127 - 1
    CHECK_FALSE(is_probable_prime(Int("170141183460469231731687303715884105725")));
}

TEST_CASE("mat_pow_mod") {
    CHECK(mat_pow_mod(kFib, 0, 10) == IntMatrix::identity(2));
    CHECK(mat_pow_mod(kFib, 10, 10) == from({{9, 5}, {5, 4}}));
    CHECK(mat_pow_mod(from({{2}}), 100, 101) == from({{1}}));
}

TEST_CASE("order_mod examples") {
    CHECK(order_mod(from({{2}}), 7).order == 3);
    CHECK(order_mod(kFib, 10).order == 60);  // Pisano period of 10
    CHECK(order_mod(from({{2}}), 1023).order == 10);
    CHECK_THROWS_AS(order_mod(from({{2, 0}, {0, 3}}), 4), DomainError);
    CHECK_THROWS_AS(order_mod(kFib, 1), DomainError);
}

TEST_CASE("order_mod_bruteforce examples") {
    CHECK(order_mod_bruteforce(from({{2}}), 7, 100) == Int(3));
    CHECK(order_mod_bruteforce(from({{0, -1}, {1, 0}}), 5, 10) == Int(4));
    CHECK_FALSE(order_mod_bruteforce(from({{2}}), 7, 2).has_value());
    CHECK_THROWS_AS(order_mod_bruteforce(from({{2}}), 4, 10), DomainError);
}

TEST_CASE("order_mod equals brute force on a randomized suite") {
    std::mt19937_64 rng(3002);
    std::uniform_int_distribution<size_t> dims(1, 3);
    std::uniform_int_distribution<long> mods(2, 500);
    for (int t = 0; t < 40; ++t) {
        IntMatrix a = oracles::random_matrix(rng, dims(rng), -5, 5);
        Int det = a.det();
        for (int s = 0; s < 6; ++s) {
            Int n = mods(rng);
            if (gcd(det, n) != 1) continue;
            OrderResult r = order_mod(a, n);
            // cap at the computed order: the brute force must hit it exactly
            // (an overestimate would return a smaller k, an underestimate none)
            auto brute = order_mod_bruteforce(a, n, r.order.get_ui());
            REQUIRE(brute.has_value());
            CHECK(r.order == *brute);
        }
    }
}

TEST_CASE("divisibility: M | N implies ord(A,M) | ord(A,N)") {
    std::mt19937_64 rng(3003);
    std::uniform_int_distribution<long> mods(2, 40);
    for (int t = 0; t < 25; ++t) {
        IntMatrix a = oracles::random_matrix(rng, 2, -5, 5);
        Int det = a.det();
        Int m = mods(rng), k = mods(rng);
        Int n = m * k;
        if (gcd(det, n) != 1) continue;
        Int om = order_mod(a, m).order;
        Int on = order_mod(a, n).order;
        CHECK(mpz_divisible_p(on.get_mpz_t(), om.get_mpz_t()));
    }
}

TEST_CASE("lcm law for coprime moduli") {
    std::mt19937_64 rng(3004);
    std::uniform_int_distribution<long> mods(2, 60);
    int done = 0;
    for (int t = 0; t < 200 && done < 20; ++t) {
        IntMatrix a = oracles::random_matrix(rng, 2, -4, 4);
        Int det = a.det();
        Int m = mods(rng), n = mods(rng);
        if (gcd(m, n) != 1 || gcd(det, m * n) != 1) continue;
        CHECK(order_mod(a, m * n).order == lcm(order_mod(a, m).order, order_mod(a, n).order));
        ++done;
    }
    CHECK(done == 20);
}

TEST_CASE("certificate soundness") {
    std::mt19937_64 rng(3005);
    std::uniform_int_distribution<long> mods(2, 200);
    for (int t = 0; t < 15; ++t) {
        IntMatrix a = oracles::random_matrix(rng, 2, -5, 5);
        Int n = mods(rng);
        if (gcd(a.det(), n) != 1) continue;
        OrderResult r = order_mod(a, n);
        CHECK(verify_order_certificate(a, r));
    }
    OrderResult pisano = order_mod(kFib, 10);
    CHECK(verify_order_certificate(kFib, pisano));
    // a tampered order must fail replay
    pisano.order *= 2;
    CHECK_FALSE(verify_order_certificate(kFib, pisano));
}

TEST_CASE("ord(A^m, N) = ord(A,N)/gcd(m, ord(A,N))") {
    std::mt19937_64 rng(3006);
    std::uniform_int_distribution<long> mods(2, 80);
    std::uniform_int_distribution<unsigned long> ms(1, 6);
    int done = 0;
    for (int t = 0; t < 200 && done < 20; ++t) {
        IntMatrix a = oracles::random_matrix(rng, 2, -4, 4);
        Int n = mods(rng);
        if (gcd(a.det(), n) != 1) continue;
        unsigned long m = ms(rng);
        Int ord = order_mod(a, n).order;
        Int expect = ord / gcd(Int(static_cast<unsigned long>(m)), ord);
        CHECK(order_mod(mat_pow(a, m), n).order == expect);
        ++done;
    }
    CHECK(done == 20);
}

TEST_CASE("order_mod_bruteforce agrees with naive matrix iteration") {
    // completely independent reference: multiply the matrix step by step
    auto naive = [](const IntMatrix& a, long n, unsigned long cap) -> std::optional<Int> {
        IntMatrix base = a.reduced_mod(n);
        IntMatrix cur = base;
        for (unsigned long k = 1; k <= cap; ++k) {
            if (k > 1) cur = (cur * base).reduced_mod(n);
            if (cur.is_identity()) return Int(k);
        }
        return std::nullopt;
    };
    std::mt19937_64 rng(3007);
    std::uniform_int_distribution<size_t> dims(1, 3);
    std::uniform_int_distribution<long> mods(2, 60);
    int done = 0;
    for (int t = 0; t < 400 && done < 120; ++t) {
        IntMatrix a = oracles::random_matrix(rng, dims(rng), -5, 5);
        long n = mods(rng);
        if (gcd(a.det(), Int(n)) != 1) continue;
        auto fast = order_mod_bruteforce(a, Int(n), 5000);
        auto ref = naive(a, n, 5000);
        CHECK(fast == ref);
        ++done;
    }
    CHECK(done == 120);
    // degenerate minimal polynomials take the entry-wise fallback: repeated
    // eigenvalues make every maximal power-basis minor vanish
    IntMatrix rep = from({{2, 0, 0}, {0, 2, 0}, {0, 0, 3}});
    for (long n : {5L, 7L, 11L, 35L}) {
        CHECK(order_mod_bruteforce(rep, Int(n), 100000) == naive(rep, n, 100000));
    }
    IntMatrix scaled = from({{3, 0}, {0, 3}});
    CHECK(order_mod_bruteforce(scaled, Int(11), 100) == naive(scaled, 11, 100));
    // unipotent: identity only at multiples of n
    IntMatrix uni = from({{1, 1}, {0, 1}});
    CHECK(order_mod_bruteforce(uni, Int(12), 100) == Int(12));
    // a modulus sharing a factor with the minor gcd also falls back
    IntMatrix tri = from({{2, 4}, {0, 2}});  // minors vanish mod 2
    CHECK(order_mod_bruteforce(tri, Int(9), 100000) == naive(tri, 9, 100000));
}

TEST_CASE("user-supplied factorization") {
    FactoredInteger f;
    f.n = 1023;
    f.factors = {{3, 1}, {11, 1}, {31, 1}};
    CHECK(order_mod(from({{2}}), f).order == 10);
    FactoredInteger wrong;
    wrong.n = 1023;
    wrong.factors = {{3, 1}, {341, 1}};  // 341 = 11*31 is not prime
    CHECK_THROWS_AS(order_mod(from({{2}}), wrong), DomainError);
    FactoredInteger bad_product;
    bad_product.n = 1023;
    bad_product.factors = {{3, 1}, {11, 1}};
    CHECK_THROWS_AS(order_mod(from({{2}}), bad_product), DomainError);
}
