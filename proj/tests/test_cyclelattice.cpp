#include "dynlab/cyclelattice.hpp"
#include "dynlab/error.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace dynlab;
using namespace dynlab::cyclelattice;

namespace {

RatVector rv(std::initializer_list<Rational> xs) { return RatVector(xs); }

std::vector<RatVector> standard_basis(std::size_t n) {
    std::vector<RatVector> out;
    for (std::size_t i = 0; i < n; ++i) {
        RatVector e(n);
        e[i] = 1;
        out.push_back(e);
    }
    return out;
}

MiddlePairing pairing(const RatMatrix& gram, std::vector<RatVector> span) {
    MiddlePairing mp;
    mp.dim = 2;
    mp.gram = gram;
    mp.alg_span = std::move(span);
    return mp;
}

} // namespace

TEST_CASE("nondegeneracy examples") {
    CHECK(nondegeneracy_check(RatMatrix::identity(3), {rv({1, 2, 0})}) == Verdict::pass);
    CHECK(nondegeneracy_check(RatMatrix{{2, 1}, {1, 1}}, standard_basis(2)) == Verdict::pass);
    CHECK(nondegeneracy_check(RatMatrix{{1, 1}, {1, 1}}, standard_basis(2)) == Verdict::fail);
    CHECK_THROWS_AS(nondegeneracy_check(RatMatrix{{1, 2}, {0, 1}}, standard_basis(2)), DomainError);
}

TEST_CASE("dual basis examples") {
    const auto hyp = dual_basis(RatMatrix{{0, 1}, {1, 0}}, standard_basis(2));
    CHECK(hyp[0] == rv({0, 1}));
    CHECK(hyp[1] == rv({1, 0}));
    const auto g = dual_basis(RatMatrix{{2, 1}, {1, 1}}, standard_basis(2));
    CHECK(g[0] == rv({1, -1}));
    CHECK(g[1] == rv({-1, 2}));
    const auto s = dual_basis(RatMatrix{{3}}, standard_basis(1));
    CHECK(s[0] == rv({Rational(1, 3)}));
}

TEST_CASE("degenerate dual basis names the null combination") {
    try {
        (void)dual_basis(RatMatrix{{1, 1}, {1, 1}}, standard_basis(2));
        FAIL("expected DegenerateForm");
    } catch (const DegenerateForm& e) {
        CHECK(std::string(e.what()).find("x1") != std::string::npos);
        CHECK(std::string(e.what()).find("x2") != std::string::npos);
    }
}

TEST_CASE("orthogonalize examples") {
    CHECK(orthogonalize(standard_basis(3), RatMatrix::identity(3)) == standard_basis(3));
    const RatMatrix g{{2, 1}, {1, 1}};
    const auto a = orthogonalize(standard_basis(2), g);
    CHECK(a[0] == rv({1, 0}));
    CHECK(a[1] == rv({Rational(-1, 2), 1}));
    CHECK(bilinear(a[0], g, a[0]) == 2);
    CHECK(bilinear(a[1], g, a[1]) == Rational(1, 2));
    const RatMatrix h{{0, 1}, {1, 0}};
    const auto b = orthogonalize(standard_basis(2), h);
    CHECK(b[0] == rv({1, 1}));
    CHECK(bilinear(b[0], h, b[0]) == 2);
    CHECK(bilinear(b[1], h, b[1]) == Rational(-1, 2));
    CHECK(bilinear(b[0], h, b[1]) == 0);
}

TEST_CASE("decompose examples") {
    const auto d1 = decompose(rv({1, 1}), pairing(RatMatrix::identity(2), {rv({1, 0})}));
    CHECK(d1.x_alg == rv({1, 0}));
    CHECK(d1.x_tr == rv({0, 1}));
    RatMatrix diag = RatMatrix::identity(3);
    diag(2, 2) = -1;
    const auto d2 = decompose(rv({1, 0, 1}), pairing(diag, {rv({0, 0, 1})}));
    CHECK(d2.x_alg == rv({0, 0, 1}));
    CHECK(d2.x_tr == rv({1, 0, 0}));
    const auto d3 = decompose(rv({3, Rational(1, 2)}), pairing(RatMatrix{{2, 1}, {1, 1}}, standard_basis(2)));
    CHECK(d3.x_tr == rv({0, 0}));
}

TEST_CASE("graded lattice validation") {
    GradedLattice ok{2, {1, 2, 1}, {RatMatrix{{1}}, RatMatrix{{0, 1}, {1, 0}}, RatMatrix{{1}}}};
    CHECK_NOTHROW(ok.validate());
    GradedLattice degenerate{2, {1, 2, 1}, {RatMatrix{{1}}, RatMatrix{{1, 1}, {1, 1}}, RatMatrix{{1}}}};
    CHECK_THROWS_AS(degenerate.validate(), DegenerateForm);
    GradedLattice shape{1, {1, 2}, {RatMatrix{{1}}, RatMatrix{{1}}}};
    CHECK_THROWS_AS(shape.validate(), DomainError);
}

TEST_CASE("dual basis is exact on random Gram matrices") {
    oracle::Rng rng;
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = static_cast<std::size_t>(1 + t % 8);
        const RatMatrix g = rng.nondegenerate_symmetric(n);
        const auto xs = standard_basis(n);
        const auto ys = dual_basis(g, xs);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) CHECK(bilinear(xs[i], g, ys[j]) == Rational(i == j ? 1 : 0));
    }
}

TEST_CASE("Gram inverse and inductive dual bases agree") {
    oracle::Rng rng;
    int compared = 0;
    for (int t = 0; t < 200 && compared < 60; ++t) {
        const std::size_t n = static_cast<std::size_t>(2 + t % 4);
        const std::size_t m = static_cast<std::size_t>(rng.uniform(1, static_cast<int>(n)));
        const RatMatrix g = rng.nondegenerate_symmetric(n);
        std::vector<RatVector> xs;
        for (std::size_t i = 0; i < m; ++i) xs.push_back(rng.vector(n));
        const auto inductive = oracle::inductive_dual_basis(g, xs);
        if (inductive.empty()) continue; // some leading minor vanished
        ++compared;
        CHECK(dual_basis(g, xs) == inductive);
    }
    CHECK(compared >= 60);
}

TEST_CASE("tau is idempotent and its complement is orthogonal") {
    oracle::Rng rng;
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform(2, 6));
        const RatMatrix g = rng.nondegenerate_symmetric(n);
        std::vector<RatVector> span;
        for (int i = 0; i < rng.uniform(1, static_cast<int>(n) - 1); ++i) span.push_back(rng.vector(n));
        if (nondegeneracy_check(g, span) != Verdict::pass) continue;
        const MiddlePairing mp = pairing(g, span);
        const RatVector x = rng.vector(n);
        const RatVector tx = tau(x, mp);
        CHECK(tau(tx, mp) == tx);
        for (const auto& a : span) CHECK(bilinear(x - tx, g, a) == 0);
    }
}

TEST_CASE("decompose is linear and unique") {
    oracle::Rng rng;
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform(2, 6));
        const RatMatrix g = rng.nondegenerate_symmetric(n);
        std::vector<RatVector> span;
        const std::size_t m = static_cast<std::size_t>(rng.uniform(1, static_cast<int>(n) - 1));
        for (std::size_t i = 0; i < m; ++i) span.push_back(rng.vector(n));
        if (nondegeneracy_check(g, span) != Verdict::pass) continue;
        const MiddlePairing mp = pairing(g, span);
        const RatVector x = rng.vector(n), y = rng.vector(n);
        const Rational a = rng.rational(), b = rng.rational();
        const auto dx = decompose(x, mp), dy = decompose(y, mp), dxy = decompose(a * x + b * y, mp);
        CHECK(dxy.x_alg == a * dx.x_alg + b * dy.x_alg);
        CHECK(dxy.x_tr == a * dx.x_tr + b * dy.x_tr);

        // Independent solve: u = sum c_i a_i with <x - u, a_j> = 0, i.e. R c = (<x, a_j>)_j.
        const RatMatrix r = restricted_gram(g, span);
        RatVector rhs(m);
        for (std::size_t j = 0; j < m; ++j) rhs[j] = bilinear(x, g, span[j]);
        const auto c = solve(r, rhs);
        REQUIRE(c);
        RatVector u(n);
        for (std::size_t i = 0; i < m; ++i) u = u + (*c)[i] * span[i];
        CHECK(u == dx.x_alg);
        CHECK(dx.x_alg + dx.x_tr == x);
    }
}
