#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "matper/errors.hpp"
#include "matper/growth.hpp"
#include "support/oracles.hpp"

using namespace matper;

namespace {

IntMatrix from(const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Int>> v;
    for (const auto& r : rows) v.emplace_back(r.begin(), r.end());
    return IntMatrix::from_rows(v);
}

const IntMatrix kCat = from({{2, 1}, {1, 1}});
const IntMatrix kDiag23 = from({{2, 0}, {0, 3}});
const double kLogLambda = std::log((3 + std::sqrt(5.0)) / 2);

Int pow_minus_one(long base, unsigned long n) { return pow_int(Int(base), n) - 1; }

}  // namespace

TEST_CASE("gcd_entries") {
    CHECK(gcd_entries(IntMatrix(2)) == 0);
    CHECK(gcd_entries(from({{4, 3}, {3, 1}})) == 1);  // cat^2 - I
    CHECK(mat_pow(kCat, 2) - IntMatrix::identity(2) == from({{4, 3}, {3, 1}}));
    CHECK(gcd_entries(from({{15, 0}, {0, 80}})) == 5);
    std::mt19937_64 rng(5001);
    for (int t = 0; t < 10; ++t) {
        IntMatrix a = oracles::random_matrix(rng, 3, -9, 9, false);
        CHECK(gcd_entries(a) == oracles::gcd_entries_naive(a));
    }
}

TEST_CASE("gcd_power_stream examples") {
    GcdStream s = gcd_power_stream(kDiag23, 4);
    REQUIRE(s.records.size() == 4);
    for (unsigned long n = 1; n <= 4; ++n) {
        CHECK(s.records[n - 1].g == gcd(pow_minus_one(2, n), pow_minus_one(3, n)));
    }
    CHECK(s.records[3].g == 5);

    GcdStream ident = gcd_power_stream(IntMatrix::identity(2), 5);
    for (auto& r : ident.records) {
        CHECK(r.g == 0);
        CHECK(r.log_g == 0.0);
    }

    GcdStream two = gcd_power_stream(from({{2}}), 3);
    CHECK(two.records[0].g == 1);
    CHECK(two.records[1].g == 3);
    CHECK(two.records[2].g == 7);

    CHECK_THROWS_AS(gcd_power_stream(from({{1, 1}, {2, 2}}), 3), DomainError);  // singular
}

TEST_CASE("divisibility ladder: m | n implies g(m) | g(n)") {
    std::mt19937_64 rng(5002);
    for (int t = 0; t < 8; ++t) {
        IntMatrix a = oracles::random_matrix(rng, 2, -3, 3);
        GcdStream s = gcd_power_stream(a, 20);
        for (unsigned long m = 1; m <= 20; ++m)
            for (unsigned long n = 2 * m; n <= 20; n += m) {
                const Int& gm = s.records[m - 1].g;
                const Int& gn = s.records[n - 1].g;
                if (gn == 0) continue;  // A^n = I: every modulus divides
                if (gm == 0) {
                    CHECK(gn == 0);
                    continue;
                }
                CHECK(mpz_divisible_p(gn.get_mpz_t(), gm.get_mpz_t()));
            }
    }
}

TEST_CASE("lemma consistency: g(n) > 1 implies ord(A, g(n)) divides n") {
    for (const IntMatrix& a : {kCat, kDiag23, from({{1, 1}, {1, 0}}), from({{2}})}) {
        GcdStream s = gcd_power_stream(a, 25);
        for (auto& rec : s.records) {
            if (rec.g <= 1) continue;
            Int ord = order_mod(a, rec.g).order;
            Int n(static_cast<unsigned long>(rec.n));
            CHECK(mpz_divisible_p(n.get_mpz_t(), ord.get_mpz_t()));
        }
    }
}

TEST_CASE("entropy examples") {
    EntropyResult d23 = entropy(kDiag23);
    CHECK(d23.eta == doctest::Approx(std::log(6.0)).epsilon(1e-9));
    CHECK(d23.error_bound <= 0x1p-20);
    CHECK(d23.expanding_roots.size() == 2);

    EntropyResult cat = entropy(kCat);
    CHECK(cat.eta == doctest::Approx(kLogLambda).epsilon(1e-9));
    CHECK(std::abs(cat.eta - 0.96242) < 1e-5);
    CHECK(cat.expanding_roots.size() == 1);

    EntropyResult rot = entropy(from({{0, -1}, {1, 0}}));
    CHECK(rot.eta == 0.0);
    CHECK(rot.expanding_roots.empty());

    CHECK_THROWS_AS(entropy(from({{0, 0}, {0, 0}})), DomainError);
}

TEST_CASE("entropy laws") {
    std::mt19937_64 rng(5003);
    // entropy(A^m) = m * entropy(A)
    for (unsigned long m : {2ul, 3ul}) {
        EntropyResult base = entropy(kCat);
        EntropyResult powm = entropy(mat_pow(kCat, m));
        CHECK(powm.eta ==
              doctest::Approx(static_cast<double>(m) * base.eta).epsilon(1e-8));
    }
    // block-diagonal additivity
    IntMatrix block(4);
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) {
            block.at(i, j) = kCat.at(i, j);
            block.at(2 + i, 2 + j) = kDiag23.at(i, j);
        }
    CHECK(entropy(block).eta ==
          doctest::Approx(entropy(kCat).eta + entropy(kDiag23).eta).epsilon(1e-8));
    // conjugation invariance
    for (int t = 0; t < 6; ++t) {
        IntMatrix p = oracles::random_unimodular(rng, 2);
        CHECK(entropy(oracles::conjugate(kCat, p)).eta ==
              doctest::Approx(entropy(kCat).eta).epsilon(1e-8));
    }
}

TEST_CASE("small_period_sequence for A = (2)") {
    PeriodSequence s = small_period_sequence(from({{2}}), 1, 12);
    CHECK_FALSE(s.finite_order);
    REQUIRE(s.rows.size() == 11);  // k = 1 gives N = 1, skipped
    for (const PeriodRow& row : s.rows) {
        CHECK(row.modulus == pow_minus_one(2, row.k));
        CHECK(row.ord == Int(static_cast<unsigned long>(row.k)));  // ord(2, 2^k - 1) = k
    }
    // ratio tends to 1/log 2 = 1.4427
    CHECK(s.rows.back().ratio == doctest::Approx(12.0 / std::log(4095.0)).epsilon(1e-6));
    CHECK(std::abs(s.rows.back().ratio - 1.4427) < 0.01);
}

TEST_CASE("small_period_sequence for the cat map approaches 2/log lambda") {
    PeriodSequence s = small_period_sequence(kCat, 1, 25);
    CHECK_FALSE(s.finite_order);
    REQUIRE(!s.rows.empty());
    double target = 2.0 / kLogLambda;  // ~2.0781
    double best = 1e9;
    for (const PeriodRow& row : s.rows) {
        CHECK(row.ord <= Int(static_cast<unsigned long>(row.k)));  // ord <= rk row-by-row
        best = std::min(best, std::abs(row.ratio - target));
    }
    CHECK(best < 0.15);
}

TEST_CASE("small_period_sequence finite-order signal") {
    PeriodSequence s = small_period_sequence(from({{0, -1}, {1, 0}}), 1, 10);
    CHECK(s.finite_order);
    CHECK(s.finite_order_at == 4);
}

TEST_CASE("kronecker") {
    CHECK(kronecker(kCat, IntMatrix::identity(1)) == kCat);
    CHECK(kronecker(IntMatrix::identity(2), IntMatrix::identity(2)) == IntMatrix::identity(4));
    IntMatrix swap = from({{0, 1}, {1, 0}});
    IntMatrix k = kronecker(kCat, swap);
    CHECK(k.dim() == 4);
    CHECK(k.at(0, 1) == 2);
    CHECK(k.at(0, 3) == 1);
    CHECK(k.at(2, 1) == 1);
    // mixed-product sanity: (A x B)(C x D) = AC x BD
    std::mt19937_64 rng(5004);
    IntMatrix a = oracles::random_matrix(rng, 2, -3, 3, false);
    IntMatrix b = oracles::random_matrix(rng, 2, -3, 3, false);
    IntMatrix c = oracles::random_matrix(rng, 2, -3, 3, false);
    IntMatrix d = oracles::random_matrix(rng, 2, -3, 3, false);
    CHECK(kronecker(a, b) * kronecker(c, d) == kronecker(a * c, b * d));
}

TEST_CASE("ord_scan for A = (2), N <= 100") {
    ScanResult s = ord_scan(from({{2}}), 2, 100);
    CHECK(s.skipped == 50);  // even moduli
    const ScanRecord& m = s.records[s.min_index];
    CHECK(m.modulus == 63);
    CHECK(m.ord == 6);
    CHECK(m.ratio == doctest::Approx(6.0 / std::log(63.0)).epsilon(1e-9));
    CHECK(std::abs(m.ratio - 1.448) < 1e-3);
    // records ascend and each one replays through order_mod
    for (size_t i = 0; i < s.records.size(); ++i) {
        if (i > 0) CHECK(s.records[i - 1].modulus < s.records[i].modulus);
        CHECK(order_mod(from({{2}}), s.records[i].modulus).order == s.records[i].ord);
    }
}

TEST_CASE("ord_scan for the identity") {
    ScanResult s = ord_scan(IntMatrix::identity(2), 2, 30);
    for (const ScanRecord& r : s.records) {
        CHECK(r.ord == 1);
        CHECK(r.ratio == doctest::Approx(1.0 / std::log(mpz_get_d(r.modulus.get_mpz_t()))));
    }
}

TEST_CASE("ord_scan parallel output is identical") {
    ScanResult s1 = ord_scan(kDiag23, 2, 120, 1);
    ScanResult s2 = ord_scan(kDiag23, 2, 120, 2);
    REQUIRE(s1.records.size() == s2.records.size());
    CHECK(s1.skipped == s2.skipped);
    CHECK(s1.min_index == s2.min_index);
    for (size_t i = 0; i < s1.records.size(); ++i) {
        CHECK(s1.records[i].modulus == s2.records[i].modulus);
        CHECK(s1.records[i].ord == s2.records[i].ord);
        CHECK(s1.records[i].ratio == s2.records[i].ratio);
    }
}

TEST_CASE("diag(2,3) scan minimum exceeds the (2) scan minimum beyond small N") {
    ScanResult s23 = ord_scan(kDiag23, 2, 300);
    ScanResult s2 = ord_scan(from({{2}}), 2, 300);
    CHECK(s23.records[s23.min_index].ratio > s2.records[s2.min_index].ratio);
}
