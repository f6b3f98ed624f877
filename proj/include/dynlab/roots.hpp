#pragma once

#include "dynlab/poly.hpp"

#include <complex>
#include <vector>

namespace dynlab::zeta {

using Complex = std::complex<double>;

struct RootResult {
    std::vector<Complex> roots;
    // max over roots of |P(z)| / sum_i |a_i| |z|^i
    double max_residual = 0.0;
    int iterations = 0;
};

inline constexpr double kRootResidualTol = 1e-12;

// All complex roots of a nonzero integer polynomial (ascending coefficients),
// with multiplicity, by simultaneous Aberth-Ehrlich refinement followed by a
// Newton polish in extended precision. Roots at zero are split off exactly.
RootResult find_roots(const poly::IntPoly& p);
RootResult find_roots(const poly::RatPoly& p);

} // namespace dynlab::zeta
