#pragma once

// Independent reference computations used only by the tests. Nothing here
// shares code paths with the library beyond the basic value types.

#include "dynlab/ffield.hpp"
#include "dynlab/linalg.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using dynlab::RatMatrix;
using dynlab::RatVector;
using dynlab::Rational;
using dynlab::ffield::u64;
using dynlab::operator*;
using dynlab::operator+;
using dynlab::operator-;

inline constexpr std::uint64_t kSeed = 20261016;

// Polynomials over F_p, ascending, trimmed.
inline std::vector<u64> trim(std::vector<u64> f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

inline std::vector<u64> rem(std::vector<u64> a, const std::vector<u64>& b, u64 p) {
    a = trim(a);
    const std::size_t db = b.size() - 1;
    u64 inv_lead = 1;
    for (u64 e = p - 2, base = b.back(); e; e >>= 1, base = base * base % p)
        if (e & 1) inv_lead = inv_lead * base % p;
    while (a.size() >= b.size()) {
        const u64 c = a.back() * inv_lead % p;
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] = (a[shift + i] + p - c * b[i] % p) % p;
        a = trim(a);
    }
    return a;
}

// Trial division by every monic polynomial of degree 1..n/2.
inline bool irreducible_by_trial_division(const std::vector<u64>& f, u64 p) {
    const int n = static_cast<int>(f.size()) - 1;
    for (int d = 1; d <= n / 2; ++d) {
        u64 total = 1;
        for (int i = 0; i < d; ++i) total *= p;
        for (u64 code = 0; code < total; ++code) {
            std::vector<u64> g(d + 1);
            u64 c = code;
            for (int i = 0; i < d; ++i, c /= p) g[i] = c % p;
            g[d] = 1;
            if (rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

// Points on y^2 = f(x) over F_{p^n}: affine pairs by double enumeration, plus
// the smooth-model points at infinity.
inline u64 hyperelliptic_by_enumeration(const dynlab::ffield::ExtField& field, const std::vector<u64>& f) {
    const u64 q = field.order();
    std::vector<u64> squares(q, 0); // squares[c] = #{y : y^2 = c}
    for (u64 y = 0; y < q; ++y) {
        const auto e = field.from_code(y);
        ++squares[field.code(field.mul(e, e))];
    }
    u64 affine = 0;
    for (u64 x = 0; x < q; ++x) {
        const auto xe = field.from_code(x);
        auto value = field.zero();
        auto power = field.one();
        for (u64 c : f) {
            value = field.add(value, field.mul(field.from_prime(c), power));
            power = field.mul(power, xe);
        }
        affine += squares[field.code(value)];
    }
    const int d = static_cast<int>(f.size()) - 1;
    if (d % 2 == 1) return affine + 1;
    const u64 lead = field.code(field.from_prime(f.back()));
    return affine + squares[lead];
}

// Inductive construction: given y_1..y_m dual to x_1..x_m, extend to x_{m+1}.
inline std::vector<RatVector> inductive_dual_basis(const RatMatrix& gram, const std::vector<RatVector>& xs) {
    std::vector<RatVector> ys;
    for (std::size_t m = 0; m < xs.size(); ++m) {
        const RatVector& x = xs[m];
        RatVector z = x;
        for (std::size_t i = 0; i < m; ++i) z = z - dynlab::bilinear(xs[i], gram, x) * ys[i];
        const Rational norm = dynlab::bilinear(x, gram, z);
        if (norm == 0) return {};
        const RatVector y_new = (Rational(1) / norm) * z;
        for (std::size_t i = 0; i < m; ++i) ys[i] = ys[i] - dynlab::bilinear(x, gram, ys[i]) * y_new;
        ys.push_back(y_new);
    }
    return ys;
}

inline RatMatrix power(const RatMatrix& m, int n) {
    RatMatrix out = RatMatrix::identity(m.rows());
    for (int i = 0; i < n; ++i) out = out * m;
    return out;
}

// Largest root modulus of T^2 - t T + d.
inline double quadratic_spectral_radius(double t, double d) {
    const std::complex<double> disc = std::sqrt(std::complex<double>(t * t - 4 * d));
    return std::max(std::abs((t + disc) / 2.0), std::abs((t - disc) / 2.0));
}

struct Rng {
    std::mt19937_64 engine{kSeed};
    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine); }
    Rational rational(int num = 9, int den = 5) { return Rational(uniform(-num, num), uniform(1, den)); }
    RatVector vector(std::size_t n) {
        RatVector v(n);
        for (auto& x : v) x = rational();
        return v;
    }
    RatMatrix matrix(std::size_t r, std::size_t c, int lo = -9, int hi = 9) {
        RatMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(lo, hi);
        return m;
    }
    // Symmetric, integer entries in [-9, 9], det != 0.
    RatMatrix nondegenerate_symmetric(std::size_t n) {
        while (true) {
            RatMatrix g(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) g(i, j) = g(j, i) = uniform(-9, 9);
            if (dynlab::determinant(g) != 0) return g;
        }
    }
};

} // namespace oracle
