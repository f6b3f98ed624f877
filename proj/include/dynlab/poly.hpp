#pragma once

#include "dynlab/numeric.hpp"

#include <utility>
#include <vector>

// Univariate polynomials over Z and Q, coefficients in ascending degree.
// The zero polynomial is the empty vector.
namespace dynlab::poly {

using IntPoly = std::vector<BigInt>;
using RatPoly = std::vector<Rational>;

void trim(RatPoly& p);
void trim(IntPoly& p);
int degree(const RatPoly& p);
int degree(const IntPoly& p);

RatPoly to_rational(const IntPoly& p);
// Scales by the lcm of denominators and divides out the content; leading
// coefficient made positive.
IntPoly to_primitive(const RatPoly& p);

RatPoly mul(const RatPoly& a, const RatPoly& b);
IntPoly mul(const IntPoly& a, const IntPoly& b);
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
RatPoly derivative(const RatPoly& p);
RatPoly monic(const RatPoly& p);
RatPoly gcd(RatPoly a, RatPoly b);

// Yun's algorithm: p = c * prod_i s_i^i with every s_i monic and squarefree.
// Entry i-1 holds s_i (possibly the constant 1).
std::vector<RatPoly> squarefree_decomposition(const RatPoly& p);

// x^deg * p(1/x); maps prod (T - a) to prod (1 - a T).
IntPoly reverse(const IntPoly& p, int deg);

} // namespace dynlab::poly
