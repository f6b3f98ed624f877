#include "dynlab/error.hpp"
#include "dynlab/zeta.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace dynlab;
using namespace dynlab::zeta;

namespace {

std::vector<Rational> rationals(std::initializer_list<long long> xs) {
    std::vector<Rational> out;
    for (long long x : xs) out.emplace_back(x);
    return out;
}

IntPoly ip(std::initializer_list<long long> xs) {
    IntPoly out;
    for (long long x : xs) out.emplace_back(x);
    return out;
}

counting::CountSequence sequence(const BigInt& q, const std::vector<BigInt>& counts) { return {q, counts}; }

// N_n of a smooth genus-1 curve with trace a: q^n + 1 - (alpha^n + beta^n).
counting::CountSequence elliptic_counts(long long q, long long a, int n_max) {
    const auto ps = power_sums(ip({q, -a, 1}), n_max);
    std::vector<BigInt> counts;
    BigInt qn = 1;
    for (int n = 1; n <= n_max; ++n) {
        qn *= q;
        counts.push_back(qn + 1 - numerator(ps[n - 1]));
    }
    return {q, counts};
}

counting::CountSequence projective_counts(long long q, int k, int n_max) {
    std::vector<BigInt> counts;
    for (int n = 1; n <= n_max; ++n) {
        BigInt total = 0, power = 1, qn = boost::multiprecision::pow(BigInt(q), n);
        for (int i = 0; i <= k; ++i, power *= qn) total += power;
        counts.push_back(total);
    }
    return {q, counts};
}

const ZetaFactor* find(const ZetaData& z, const IntPoly& poly, Side side) {
    for (const auto& f : z.factors)
        if (f.poly == poly && f.side == side) return &f;
    return nullptr;
}

ZetaData single(long long q, const IntPoly& poly, Side side, std::optional<int> weight) {
    ZetaData z;
    z.q = q;
    z.factors.push_back({poly, side, weight, 1});
    return z;
}

} // namespace

TEST_CASE("min_recurrence examples") {
    CHECK(min_recurrence(rationals({3, 5, 9, 17})) == ip({2, -3, 1}));
    CHECK(min_recurrence(rationals({7, 7, 7, 7})) == ip({-1, 1}));
    const auto ec = elliptic_counts(5, -3, 8);
    std::vector<Rational> seq(ec.counts.begin(), ec.counts.end());
    CHECK(seq[0] == 9);
    CHECK(seq[1] == 27);
    // (T - 1)(T - 5)(T^2 + 3T + 5)
    CHECK(min_recurrence(seq) == ip({25, -15, -8, -3, 1}));
}

TEST_CASE("min_recurrence needs twice the order") {
    try {
        (void)min_recurrence(rationals({3, 5, 9}));
        FAIL("expected OrderNotConfirmed");
    } catch (const OrderNotConfirmed& e) {
        CHECK(e.tentative_order() == 2);
        CHECK(e.kind() == "order_not_confirmed");
    }
}

TEST_CASE("minimal recurrence divides the recurrence of any padding") {
    oracle::Rng rng;
    for (int t = 0; t < 20; ++t) {
        // Sum of three geometric sequences with small integer ratios.
        std::vector<Rational> seq;
        const int r1 = rng.uniform(-4, 4), r2 = rng.uniform(-4, 4), r3 = rng.uniform(-4, 4);
        for (int n = 1; n <= 14; ++n)
            seq.emplace_back(boost::multiprecision::pow(BigInt(r1), n) + 2 * boost::multiprecision::pow(BigInt(r2), n) +
                             3 * boost::multiprecision::pow(BigInt(r3), n));
        const IntPoly shorter = min_recurrence(std::vector<Rational>(seq.begin(), seq.begin() + 8));
        const IntPoly longer = min_recurrence(seq);
        const auto [quot, rem] = poly::divmod(poly::to_rational(longer), poly::to_rational(shorter));
        CHECK(rem.empty());
    }
}

TEST_CASE("power sums") {
    CHECK(power_sums(ip({2, -3, 1}), 4) == rationals({3, 5, 9, 17}));
    const auto p = power_sums(ip({5, 3, 1}), 2);
    CHECK(p[0] == -3);
    CHECK(p[1] == -1);
    CHECK(power_sums(ip({-1, 1}), 5) == rationals({1, 1, 1, 1, 1}));
}

TEST_CASE("zeta of P^1, P^2 and an elliptic curve") {
    const ZetaData p1 = zeta_from_counts(projective_counts(5, 1, 6));
    CHECK(p1.factors.size() == 2);
    REQUIRE(find(p1, ip({1, -1}), Side::denominator));
    REQUIRE(find(p1, ip({1, -5}), Side::denominator));
    CHECK(find(p1, ip({1, -1}), Side::denominator)->weight == 0);
    CHECK(find(p1, ip({1, -5}), Side::denominator)->weight == 2);

    const ZetaData p2 = zeta_from_counts(projective_counts(3, 2, 8));
    CHECK(p2.factors.size() == 3);
    CHECK(find(p2, ip({1, -9}), Side::denominator)->weight == 4);

    const ZetaData ec = zeta_from_counts(elliptic_counts(5, -3, 8));
    REQUIRE(find(ec, ip({1, 3, 5}), Side::numerator));
    CHECK(find(ec, ip({1, 3, 5}), Side::numerator)->weight == 1);
    CHECK(find(ec, ip({1, -1}), Side::denominator));
    CHECK(find(ec, ip({1, -5}), Side::denominator));
    CHECK(ec.genus_hint == 1);
    CHECK(weil_check(ec).overall == Verdict::pass);
}

TEST_CASE("repeated eigenvalues become multiplicities") {
    // Smooth quadric surface over F_2: N_n = (2^n + 1)^2.
    std::vector<BigInt> counts;
    for (int n = 1; n <= 8; ++n) counts.push_back((BigInt(1) << n) * (BigInt(1) << n) + 2 * (BigInt(1) << n) + 1);
    const ZetaData z = zeta_from_counts(sequence(2, counts));
    const ZetaFactor* mid = find(z, ip({1, -2}), Side::denominator);
    REQUIRE(mid);
    CHECK(mid->multiplicity == 2);
    CHECK(mid->weight == 2);
    for (int n = 1; n <= 10; ++n) CHECK(lefschetz_reconstruct(z, n) == (BigInt(1) << n) * (BigInt(1) << n) + 2 * (BigInt(1) << n) + 1);
}

TEST_CASE("elliptic_zeta") {
    const ZetaData a = elliptic_zeta(9, 5);
    CHECK(find(a, ip({1, 3, 5}), Side::numerator));
    CHECK_FALSE(a.weil_violating);
    CHECK(find(elliptic_zeta(8, 7), ip({1, 0, 7}), Side::numerator));
    const ZetaData c = elliptic_zeta(1, 2);
    REQUIRE(find(c, ip({1, -2, 2}), Side::numerator));
    for (const auto& e : eigenvalues(c))
        if (e.source_factor == static_cast<std::size_t>(find(c, ip({1, -2, 2}), Side::numerator) - c.factors.data()))
            CHECK(std::abs(e.modulus - std::sqrt(2.0)) < 1e-12);
    CHECK(elliptic_zeta(20, 5).weil_violating); // a = -14, a^2 > 4q
}

TEST_CASE("weil_check examples") {
    CHECK(weil_check(single(5, ip({1, 3, 5}), Side::numerator, 1)).overall == Verdict::pass);
    CHECK(weil_check(single(7, ip({1, -1}), Side::denominator, 0)).overall == Verdict::pass);
    const WeilReport bad = weil_check(single(5, ip({1, -3}), Side::numerator, 1));
    CHECK(bad.overall == Verdict::fail);
    REQUIRE(bad.factors.at(0).offending_root);
    CHECK(std::abs(*bad.factors.at(0).offending_root - Complex(3, 0)) < 1e-9);
    CHECK(weil_check(single(5, ip({1, -5, 5}), Side::numerator, 1)).overall == Verdict::fail);
    CHECK(weil_check(single(5, ip({1, -5, 5}), Side::numerator, std::nullopt)).overall == Verdict::indeterminate);
    CHECK(weil_check(single(5, ip({1, 3, 5}), Side::numerator, 1)).smoothness_not_verified);
}

TEST_CASE("functional equation") {
    CHECK(functional_equation_check(ip({1, 3, 5}), 5, 1) == Verdict::pass);
    CHECK(functional_equation_check(ip({1, 0, 7}), 7, 1) == Verdict::pass);
    CHECK(functional_equation_check(ip({1, 1, 1}), 5, 1) == Verdict::fail);
    CHECK(functional_equation_check(ip({1, 3, 7, 9, 9}), 3, 2) == Verdict::pass);
    CHECK_THROWS_AS(functional_equation_check(ip({1, 3, 5}), 5, 2), DomainError);
}

TEST_CASE("functional equation holds whenever weil passes") {
    for (long long q : {2, 3, 5, 7, 11})
        for (long long a = -2 * q; a <= 2 * q; ++a) {
            const ZetaData z = single(q, ip({1, -a, q}), Side::numerator, 1);
            if (weil_check(z).overall == Verdict::pass) CHECK(functional_equation_check(ip({1, -a, q}), q, 1) == Verdict::pass);
            CHECK((weil_check(z).overall == Verdict::pass) == (a * a <= 4 * q));
        }
}

TEST_CASE("lefschetz reconstruction") {
    const ZetaData p1 = zeta_from_counts(projective_counts(5, 1, 4));
    CHECK(lefschetz_reconstruct(p1, 3) == 126);
    const ZetaData ec = zeta_from_counts(elliptic_counts(5, -3, 8));
    CHECK(lefschetz_reconstruct(ec, 2) == 27);
    const ZetaData p2 = zeta_from_counts(projective_counts(3, 2, 8));
    CHECK(lefschetz_reconstruct(p2, 2) == 91);
    // Round trip on the input range and two predicted terms.
    const auto longer = elliptic_counts(7, 2, 10);
    const ZetaData z = zeta_from_counts({7, std::vector<BigInt>(longer.counts.begin(), longer.counts.begin() + 8)});
    for (int n = 1; n <= 10; ++n) CHECK(lefschetz_reconstruct(z, n) == longer.counts[n - 1]);
}

TEST_CASE("mixed factors are surfaced, not crashed on") {
    // Eigenvalues 1, 2 and 3 over q = 4: 3 has no weight with |alpha| = 4^{w/2}.
    std::vector<BigInt> counts;
    for (int n = 1; n <= 8; ++n) counts.push_back(1 + boost::multiprecision::pow(BigInt(2), n) + boost::multiprecision::pow(BigInt(3), n));
    const ZetaData z = zeta_from_counts(sequence(4, counts));
    CHECK_FALSE(z.fully_weighted());
    CHECK(weil_check(z).overall == Verdict::indeterminate);
    CHECK_THROWS_AS(lefschetz_reconstruct(z, 2), Error);
}

TEST_CASE("factor_squarefree recovers irreducible factors") {
    const IntPoly p = poly::mul(poly::mul(ip({-1, 1}), ip({5, 3, 1})), ip({-2, 0, 1}));
    auto factors = factor_squarefree(p);
    std::sort(factors.begin(), factors.end(), [](const IntPoly& a, const IntPoly& b) { return a.size() < b.size(); });
    REQUIRE(factors.size() == 3);
    CHECK(factors[0] == ip({-1, 1}));
}
