#pragma once

#include "dynlab/counting.hpp"
#include "dynlab/poly.hpp"
#include "dynlab/roots.hpp"
#include "dynlab/verdict.hpp"

#include <optional>
#include <string>
#include <vector>

// Zeta functions of count sequences: rational reconstruction, Frobenius
// eigenvalues with weights, and the Weil / functional-equation / trace checks.
namespace dynlab::zeta {

using poly::IntPoly;

inline constexpr double kWeilTol = 1e-9;
inline constexpr double kClusterTol = 1e-6;
inline constexpr int kMaxFactorDegree = 24;

enum class Side { numerator, denominator };

struct ZetaFactor {
    IntPoly poly;               // constant term 1: prod (1 - alpha T) over its eigenvalues alpha
    Side side = Side::denominator;
    std::optional<int> weight;  // empty when root moduli do not cluster ("mixed")
    int multiplicity = 1;
};

struct ZetaData {
    BigInt q;
    std::vector<ZetaFactor> factors;
    std::optional<int> genus_hint;
    bool weil_violating = false;
    bool smoothness_verified = false;
    std::vector<std::string> diagnostics;

    bool fully_weighted() const;
};

struct EigenvalueData {
    Complex value;
    double modulus = 0.0;
    std::optional<int> weight;
    std::size_t source_factor = 0;
};

struct FactorVerdict {
    std::size_t factor = 0;
    Verdict verdict = Verdict::indeterminate;
    double worst_relative_error = 0.0;
    std::optional<Complex> offending_root;
};

struct WeilReport {
    Verdict overall = Verdict::indeterminate;
    std::vector<FactorVerdict> factors;
    bool smoothness_not_verified = true;
};

// Minimal monic recurrence polynomial (Berlekamp-Massey over Q), returned as a
// primitive integer polynomial in T. Throws OrderNotConfirmed when the
// sequence is shorter than twice the order found.
IntPoly min_recurrence(const std::vector<Rational>& seq);

// Newton's identities: p_n = sum of n-th powers of the roots of charpoly.
std::vector<Rational> power_sums(const IntPoly& charpoly, int n_max);
std::vector<Rational> power_sums(const poly::RatPoly& charpoly, int n_max);

// Factorization of a squarefree integer polynomial into irreducibles over Z,
// found by grouping numerically computed roots and confirmed by exact division.
std::vector<IntPoly> factor_squarefree(const IntPoly& p);

// Polynomial whose roots are the eigenvalues of a factor (reverse of its poly).
IntPoly eigen_polynomial(const ZetaFactor& factor);

// betti_hint[w] = expected total degree of weight-w factors.
ZetaData zeta_from_counts(const counting::CountSequence& counts,
                          const std::optional<std::vector<int>>& betti_hint = std::nullopt);
ZetaData elliptic_zeta(const BigInt& n1, const BigInt& q);

std::vector<EigenvalueData> eigenvalues(const ZetaData& z);
WeilReport weil_check(const ZetaData& z);

// q^g T^{2g} P(1/(qT)) = +-P(T). Throws DomainError when deg P != 2g.
Verdict functional_equation_check(const IntPoly& numerator, const BigInt& q, int genus);

// N_n = sum_den mult * p_n - sum_num mult * p_n, exact.
BigInt lefschetz_reconstruct(const ZetaData& z, int n);

} // namespace dynlab::zeta
