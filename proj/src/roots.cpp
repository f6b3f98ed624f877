#include "dynlab/roots.hpp"

#include "dynlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dynlab::zeta {

namespace {

using LComplex = std::complex<long double>;

long double to_long_double(const Rational& x) { return static_cast<long double>(to_double(x)); }

struct Eval {
    LComplex value;
    LComplex slope;
    long double scale; // sum |a_i| |z|^i
};

Eval horner(const std::vector<long double>& a, LComplex z) {
    LComplex v = 0, d = 0;
    long double s = 0;
    const long double r = std::abs(z);
    for (std::size_t i = a.size(); i-- > 0;) {
        d = d * z + v;
        v = v * z + a[i];
        s = s * r + std::fabs(a[i]);
    }
    return {v, d, s};
}

RootResult solve(std::vector<long double> a, int zero_roots) {
    RootResult out;
    out.roots.assign(static_cast<std::size_t>(zero_roots), Complex(0.0, 0.0));
    const int d = static_cast<int>(a.size()) - 1;
    if (d <= 0) return out;
    if (d == 1) {
        out.roots.emplace_back(static_cast<double>(-a[0] / a[1]), 0.0);
        return out;
    }
    // Initial points on the circle of the geometric-mean root modulus.
    const long double radius = std::pow(std::fabs(a[0] / a[d]), 1.0L / d);
    std::vector<LComplex> z(d);
    for (int k = 0; k < d; ++k) {
        const long double angle = 2.0L * std::numbers::pi_v<long double> * k / d + 0.4L;
        z[k] = std::polar(radius, angle);
    }
    int iter = 0;
    for (; iter < 500; ++iter) {
        long double largest_step = 0;
        for (int k = 0; k < d; ++k) {
            const Eval e = horner(a, z[k]);
            if (std::abs(e.value) == 0) continue;
            const LComplex ratio = e.value / e.slope;
            LComplex repulsion = 0;
            for (int j = 0; j < d; ++j)
                if (j != k) repulsion += 1.0L / (z[k] - z[j]);
            const LComplex step = ratio / (1.0L - ratio * repulsion);
            z[k] -= step;
            largest_step = std::max(largest_step, std::abs(step) / std::max(1.0L, std::abs(z[k])));
        }
        if (largest_step < 1e-18L) break;
    }
    for (auto& root : z) {
        for (int polish = 0; polish < 3; ++polish) {
            const Eval e = horner(a, root);
            if (std::abs(e.slope) == 0) break;
            root -= e.value / e.slope;
        }
        const Eval e = horner(a, root);
        const double residual = e.scale > 0 ? static_cast<double>(std::abs(e.value) / e.scale) : 0.0;
        out.max_residual = std::max(out.max_residual, residual);
        out.roots.emplace_back(static_cast<double>(root.real()), static_cast<double>(root.imag()));
    }
    out.iterations = iter;
    return out;
}

} // namespace

RootResult find_roots(const poly::RatPoly& p_in) {
    poly::RatPoly p = p_in;
    poly::trim(p);
    if (p.empty()) throw DomainError("zeta", "roots of the zero polynomial");
    int zero_roots = 0;
    while (p.front() == 0) {
        p.erase(p.begin());
        ++zero_roots;
    }
    std::vector<long double> a;
    a.reserve(p.size());
    for (const auto& c : p) a.push_back(to_long_double(c));
    return solve(std::move(a), zero_roots);
}

RootResult find_roots(const poly::IntPoly& p) { return find_roots(poly::to_rational(p)); }

} // namespace dynlab::zeta
