#pragma once

#include "dynlab/corr.hpp"
#include "dynlab/roots.hpp"
#include "dynlab/verdict.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

// Dynamical degrees, cohomological degrees and the property checks relating
// them.
namespace dynlab::dyndeg {

using zeta::Complex;

inline constexpr double kRelTol = 1e-6;
inline constexpr double kLimsupTol = 0.05;
inline constexpr int kTraceMaxN = 500;

struct ConvergenceTrace {
    std::vector<double> ratios; // d_{n+1} / d_n
    std::vector<double> roots;  // d_n^{1/n}
    double final = 0.0;
    int window_begin = 0; // 1-based n-range the estimator used
    int window_end = 0;
    std::string estimator;
    std::optional<int> period;
    // Non-functorial chi: |estimate over the last window - previous window|.
    std::optional<double> window_sensitivity;
};

struct Estimate {
    double value = 0.0;
    ConvergenceTrace trace;
};

// Max modulus of the roots of the squarefree part of the exact characteristic
// polynomial.
double spectral_radius(const RatMatrix& m);

// Geometric mean of the last 4 ratios, i.e. (d_n / d_{n-4})^{1/4}. If the
// ratio sequence is eventually periodic with period P (the last max(4, 2P)
// ratios repeat), returns the exact cycle mean (d_n / d_{n-P})^{1/P}.
Estimate lambda_estimate(const std::vector<BigInt>& degs);
Estimate lambda_estimate(const std::vector<Rational>& degs);

// Spectral radius of the p-th exterior power of A: product of the p largest
// eigenvalue moduli. p = 0 gives 1 and p = k gives |det A|.
double lambda_monomial(const RatMatrix& a, int p);

// chi on N^i (cohomological degree 2i). Functorial: spectral radius of
// action(i). Otherwise ||M_n||_inf^{1/n} over the supplied iterates, taking
// the max over the trailing 4 and reporting the shift against the previous 4.
Estimate chi(const corr::GradedMatrixCorr& c, int i);

// lambda_i of a graded model. Functorial models: spectral radius of action(i).
// Otherwise lambda_estimate of d_n = |<(f^n)^* e_0, e_0>|, where basis
// vector 0 of each N^i stands for the polarization class H^i.
Estimate lambda_model(const corr::GradedMatrixCorr& c, int i);

struct DyndegReport {
    std::vector<double> lambdas;              // lambda_0..lambda_k
    std::vector<std::optional<double>> chis;  // indexed by cohomological degree 0..2k
    double entropy = 0.0;
    std::map<std::string, ConvergenceTrace> diagnostics;
};

DyndegReport model_report(const corr::GradedMatrixCorr& c);

// log of the max modeled chi.
double algebraic_entropy(const DyndegReport& report);

struct MonomialReport {
    std::vector<BigInt> degs;
    std::optional<int> failed_at;
    std::optional<Estimate> lambda1; // needs at least 6 dominant iterates
    std::vector<double> lambdas_closed_form; // lambda_monomial(torus, p), p = 0..k
    bool algebraically_unstable = false;     // deg(f^2) < deg(f)^2
};

MonomialReport monomial_report(const corr::MonomialMap& f, int iters);

struct CheckResult {
    std::string name;
    Verdict verdict = Verdict::pass;
    std::vector<std::string> witnesses;
    // Worst relative excess: (lhs - rhs) / rhs for inequalities lhs <= rhs,
    // |a - b| / max(a, b) for equalities. PASS iff excess <= tolerance.
    double excess = 0.0;
    double tolerance = 0.0;
};

// Vacuous PASS (with a note) below three degrees.
CheckResult check_log_concavity(const std::vector<double>& lambdas);
CheckResult check_product_formula(const std::vector<double>& g, const std::vector<double>& h, const std::vector<double>& f);
CheckResult check_dinh(const std::vector<std::optional<double>>& chis, const std::vector<double>& lambdas);
CheckResult check_q4prime(const std::vector<std::optional<double>>& chis, const std::vector<double>& lambdas);
// chi_{2i} >= lambda_i wherever both are modeled.
CheckResult check_chi_dominates(const std::vector<std::optional<double>>& chis, const std::vector<double>& lambdas);
// <f^* a, b> = <a, f_* b> exactly on basis vectors of every degree.
CheckResult check_adjointness(const corr::GradedMatrixCorr& c);

struct TraceLimsup {
    double estimate = 0.0;
    int best_n = 0;
    double spectral_radius = 0.0;
    Verdict verdict = Verdict::fail;
    std::vector<double> roots; // |Tr M^n|^{1/n}, n = 1..n_max (0 where the trace vanishes)
};

// Supremum of |Tr M^n|^{1/n} over the tail window n in [ceil(n_max/2), n_max],
// with exact traces. PASS when within tol (default 5%) of the spectral radius.
TraceLimsup trace_limsup(const RatMatrix& m, int n_max, double tol = kLimsupTol);

struct NearIdentity {
    std::vector<std::uint64_t> ks;
    bool bound_reached = false; // k_max >= ceil((8/eps)^m)
};

NearIdentity near_identity_powers(const std::vector<Complex>& mus, double eps, std::uint64_t k_max);

// G = A^T P B with the bases as columns of A and B. For f^* given by M in
// alpha-coordinates:
//   sum_{p,q} |f^*(a_p).b_q| = entrywise |.|-sum of G^T M,
//   ||f^*|| = max column |.|-sum of G^T M G^{-T},
// C1 = 1 / sum_p ||a_p|| and C2 bounds the coordinates of a unit vector.
struct Eq3Constants {
    RatMatrix g;
    RatMatrix g_inv_t;
    Rational c1;
    Rational c2;
};

Eq3Constants eq3_norm_constants(const std::vector<RatVector>& alpha_basis, const std::vector<RatVector>& beta_basis,
                                const RatMatrix& pairing);
Rational pairing_sum(const Eq3Constants& c, const RatMatrix& m);
Rational pairing_sup_norm(const Eq3Constants& c, const RatMatrix& m);
bool sandwich_holds(const Eq3Constants& c, const RatMatrix& m);

struct Eq3Validation {
    int trials = 0;
    int violations = 0;
};

// Random rational matrices with entries a/b, |a| <= 9, 1 <= b <= 5.
Eq3Validation eq3_validate(const Eq3Constants& c, int trials, std::uint64_t seed);

struct WeilFromDyndeg {
    Verdict verdict = Verdict::fail;
    std::vector<double> lambdas;
    std::vector<double> chis; // chi_{2i}
    std::vector<std::string> witnesses;
};

// Frobenius model on P^k over F_q: lambda_i = chi_{2i} = q^i, cross-checked
// against the zeta weights of P^k.
WeilFromDyndeg weil_from_dyndeg(const BigInt& q, int k);

} // namespace dynlab::dyndeg
