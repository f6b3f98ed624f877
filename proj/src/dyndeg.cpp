#include "dynlab/dyndeg.hpp"

#include "dynlab/error.hpp"
#include "dynlab/poly.hpp"
#include "dynlab/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

namespace dynlab::dyndeg {

namespace {

constexpr const char* kModule = "dyndeg";

[[noreturn]] void fail(const std::string& message) { throw DomainError(kModule, message); }

std::string fmt(double x) { return format_double(x); }

std::optional<BigInt> integer_root(const BigInt& a, int p) {
    if (a < 0) return std::nullopt;
    if (a < 2) return a;
    const double guess = std::exp(log_abs(a) / p);
    if (!std::isfinite(guess) || guess > 9e15) return std::nullopt;
    const auto center = static_cast<long long>(std::llround(guess));
    for (long long r = std::max(0LL, center - 2); r <= center + 2; ++r) {
        if (pow(BigInt(r), static_cast<unsigned>(p)) == a) return BigInt(r);
    }
    return std::nullopt;
}

// c^{1/p} for c > 0, exact when c is a p-th power in Q.
double rational_root(const Rational& c, int p) {
    if (p == 1) return to_double(c);
    const auto num = integer_root(numerator(c), p);
    const auto den = integer_root(denominator(c), p);
    if (num && den) return to_double(Rational(*num, *den));
    return std::exp((log_abs(numerator(c)) - log_abs(denominator(c))) / p);
}

double abs_log(const Rational& x) { return log_abs(numerator(x)) - log_abs(denominator(x)); }

poly::IntPoly squarefree_part(const RatMatrix& m) {
    const poly::RatPoly cp = charpoly(m);
    const poly::RatPoly g = poly::gcd(cp, poly::derivative(cp));
    return poly::to_primitive(poly::divmod(cp, g).first);
}

Rational inf_norm(const RatMatrix& m) {
    Rational best = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Rational row = 0;
        for (std::size_t c = 0; c < m.cols(); ++c) row += abs(m(r, c));
        best = std::max(best, row);
    }
    return best;
}

double max_chi(const std::vector<std::optional<double>>& chis) {
    double best = 0.0;
    bool any = false;
    for (const auto& c : chis)
        if (c) {
            best = any ? std::max(best, *c) : *c;
            any = true;
        }
    if (!any) fail("no modeled chi values");
    return best;
}

CheckResult make_check(std::string name, double tolerance) {
    CheckResult out;
    out.name = std::move(name);
    out.tolerance = tolerance;
    return out;
}

void record(CheckResult& out, double excess, const std::string& witness) {
    out.excess = std::max(out.excess, excess);
    if (excess > out.tolerance) {
        out.verdict = Verdict::fail;
        out.witnesses.push_back(witness);
    }
}

// Relative excess of lhs over rhs (0 when lhs <= rhs).
double excess_le(double lhs, double rhs) {
    if (lhs <= rhs) return 0.0;
    return rhs > 0 ? (lhs - rhs) / rhs : std::numeric_limits<double>::infinity();
}

double excess_eq(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}

} // namespace

double spectral_radius(const RatMatrix& m) {
    if (!m.square()) fail("spectral radius of a non-square matrix");
    if (m.rows() == 0) return 0.0;
    const poly::IntPoly sf = squarefree_part(m);
    double best = 0.0;
    for (const auto& r : zeta::find_roots(sf).roots) best = std::max(best, std::abs(r));
    return best;
}

Estimate lambda_estimate(const std::vector<Rational>& degs) {
    if (degs.size() < 6) fail("degree sequence needs at least 6 terms");
    for (const auto& d : degs)
        if (d <= 0) fail("degree sequence must be positive");
    Estimate e;
    auto& t = e.trace;
    const int len = static_cast<int>(degs.size());
    std::vector<Rational> ratios;
    for (int n = 0; n + 1 < len; ++n) ratios.push_back(degs[n + 1] / degs[n]);
    for (const auto& r : ratios) t.ratios.push_back(to_double(r));
    for (int n = 0; n < len; ++n) t.roots.push_back(std::exp(abs_log(degs[n]) / (n + 1)));

    const int count = static_cast<int>(ratios.size());
    for (int period = 1; period <= count / 2; ++period) {
        const int span = std::max(4, 2 * period);
        if (span > count) break;
        bool periodic = true;
        for (int i = count - span; i + period < count && periodic; ++i) periodic = ratios[i] == ratios[i + period];
        if (periodic) {
            t.period = period;
            t.estimator = "cycle_mean";
            t.window_begin = len - period;
            t.window_end = len;
            e.value = rational_root(degs[len - 1] / degs[len - 1 - period], period);
            t.final = e.value;
            return e;
        }
    }
    t.estimator = "trailing_ratio_mean";
    t.window_begin = len - 4;
    t.window_end = len;
    e.value = rational_root(degs[len - 1] / degs[len - 5], 4);
    t.final = e.value;
    return e;
}

Estimate lambda_estimate(const std::vector<BigInt>& degs) {
    return lambda_estimate(std::vector<Rational>(degs.begin(), degs.end()));
}

double lambda_monomial(const RatMatrix& a, int p) {
    if (!a.square()) fail("lambda_monomial needs a square matrix");
    const int k = static_cast<int>(a.rows());
    if (p < 0 || p > k) fail("exterior degree out of range");
    if (p == 0) return 1.0;
    const Rational det = determinant(a);
    if (det == 0) fail("lambda_monomial needs an invertible matrix");
    if (p == k) return to_double(abs(det));
    const auto parts = poly::squarefree_decomposition(charpoly(a));
    std::vector<double> moduli;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (poly::degree(parts[i]) < 1) continue;
        for (const auto& r : zeta::find_roots(parts[i]).roots)
            for (std::size_t m = 0; m <= i; ++m) moduli.push_back(std::abs(r));
    }
    std::sort(moduli.begin(), moduli.end(), std::greater<>());
    double product = 1.0;
    for (int j = 0; j < p; ++j) product *= moduli[j];
    return product;
}

Estimate chi(const corr::GradedMatrixCorr& c, int i) {
    if (i < 0 || i > c.lattice.k) fail("degree out of range");
    Estimate e;
    if (c.functorial) {
        e.value = spectral_radius(c.action[i]);
        e.trace.estimator = "spectral_radius";
        e.trace.final = e.value;
        return e;
    }
    const int len = static_cast<int>(c.per_n.size());
    if (len < 4) fail("non-functorial chi needs at least 4 iterates");
    for (int n = 1; n <= len; ++n) {
        const Rational norm = inf_norm(c.per_n[n - 1][i]);
        e.trace.roots.push_back(norm == 0 ? 0.0 : std::exp(abs_log(norm) / n));
    }
    const auto window_max = [&](int end) {
        return *std::max_element(e.trace.roots.begin() + (end - 4), e.trace.roots.begin() + end);
    };
    e.value = window_max(len);
    e.trace.estimator = "trailing_norm_root_max";
    e.trace.window_begin = len - 3;
    e.trace.window_end = len;
    if (len >= 8) e.trace.window_sensitivity = std::abs(e.value - window_max(len - 4));
    e.trace.final = e.value;
    return e;
}

Estimate lambda_model(const corr::GradedMatrixCorr& c, int i) {
    if (i < 0 || i > c.lattice.k) fail("degree out of range");
    if (c.functorial) {
        Estimate e;
        e.value = spectral_radius(c.action[i]);
        e.trace.estimator = "spectral_radius";
        e.trace.final = e.value;
        return e;
    }
    const RatMatrix& pairing = c.lattice.pairings[i];
    std::vector<Rational> degs;
    for (const auto& actions : c.per_n) {
        const RatMatrix& m = actions[i];
        Rational d = 0;
        for (std::size_t r = 0; r < m.rows(); ++r) d += m(r, 0) * pairing(r, 0);
        degs.push_back(abs(d));
    }
    return lambda_estimate(degs);
}

double algebraic_entropy(const DyndegReport& report) { return std::log(max_chi(report.chis)); }

DyndegReport model_report(const corr::GradedMatrixCorr& c) {
    c.validate();
    DyndegReport r;
    const int k = c.lattice.k;
    r.chis.assign(2 * static_cast<std::size_t>(k) + 1, std::nullopt);
    for (int i = 0; i <= k; ++i) {
        const Estimate lam = lambda_model(c, i);
        const Estimate ch = chi(c, i);
        r.lambdas.push_back(lam.value);
        r.chis[2 * i] = ch.value;
        r.diagnostics["lambda_" + std::to_string(i)] = lam.trace;
        r.diagnostics["chi_" + std::to_string(2 * i)] = ch.trace;
    }
    r.entropy = algebraic_entropy(r);
    return r;
}

MonomialReport monomial_report(const corr::MonomialMap& f, int iters) {
    MonomialReport r;
    const auto seq = corr::iterate_degrees(f, iters);
    r.degs = seq.degs;
    r.failed_at = seq.failed_at;
    if (r.degs.size() >= 6) r.lambda1 = lambda_estimate(r.degs);
    if (f.dominant) {
        const RatMatrix a = corr::torus_matrix(f);
        for (int p = 0; p <= f.k; ++p) r.lambdas_closed_form.push_back(lambda_monomial(a, p));
    }
    r.algebraically_unstable = r.degs.size() >= 2 && r.degs[1] < r.degs[0] * r.degs[0];
    return r;
}

CheckResult check_log_concavity(const std::vector<double>& lambdas) {
    if (lambdas.empty()) fail("log-concavity: empty lambda vector");
    CheckResult out = make_check("log_concavity", 1e-9);
    if (lambdas.size() < 3) out.witnesses.push_back("vacuous: fewer than 3 degrees");
    for (std::size_t i = 0; i + 2 < lambdas.size(); ++i) {
        const double lhs = lambdas[i] * lambdas[i + 2];
        const double rhs = lambdas[i + 1] * lambdas[i + 1];
        record(out, excess_le(lhs, rhs),
               "i=" + std::to_string(i) + ": lambda_i*lambda_{i+2}=" + fmt(lhs) + " > lambda_{i+1}^2=" + fmt(rhs));
    }
    return out;
}

CheckResult check_product_formula(const std::vector<double>& g, const std::vector<double>& h, const std::vector<double>& f) {
    if (g.empty() || h.empty() || f.size() != g.size() + h.size() - 1) fail("product formula: inconsistent dimensions");
    CheckResult out = make_check("product_formula", kRelTol);
    for (std::size_t p = 0; p < f.size(); ++p) {
        double expected = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (p >= i && p - i < h.size()) expected = std::max(expected, g[i] * h[p - i]);
        record(out, excess_eq(f[p], expected),
               "p=" + std::to_string(p) + ": lambda_p(f)=" + fmt(f[p]) + " != " + fmt(expected));
    }
    return out;
}

CheckResult check_dinh(const std::vector<std::optional<double>>& chis, const std::vector<double>& lambdas) {
    if (lambdas.empty()) fail("dinh: empty lambda vector");
    const std::size_t k = lambdas.size() - 1;
    if (chis.size() > 2 * k + 1) fail("dinh: chi indexed beyond 2k");
    CheckResult out = make_check("dinh", kRelTol);
    for (std::size_t i = 0; i < chis.size(); ++i) {
        if (!chis[i]) continue;
        double bound = 0.0;
        for (std::size_t p = 0; p <= k; ++p)
            if (i >= p && i - p <= k) bound = std::max(bound, lambdas[p] * lambdas[i - p]);
        const double lhs = *chis[i] * *chis[i];
        record(out, excess_le(lhs, bound), "i=" + std::to_string(i) + ": chi_i^2=" + fmt(lhs) + " > " + fmt(bound));
    }
    return out;
}

CheckResult check_q4prime(const std::vector<std::optional<double>>& chis, const std::vector<double>& lambdas) {
    if (lambdas.empty()) fail("q4prime: empty lambda vector");
    CheckResult out = make_check("q4prime", kRelTol);
    const double a = max_chi(chis);
    const double b = *std::max_element(lambdas.begin(), lambdas.end());
    record(out, excess_eq(a, b), "max chi=" + fmt(a) + " != max lambda=" + fmt(b));
    return out;
}

CheckResult check_chi_dominates(const std::vector<std::optional<double>>& chis, const std::vector<double>& lambdas) {
    CheckResult out = make_check("chi_dominates_lambda", kRelTol);
    for (std::size_t i = 0; i < lambdas.size() && 2 * i < chis.size(); ++i) {
        if (!chis[2 * i]) continue;
        record(out, excess_le(lambdas[i], *chis[2 * i]),
               "i=" + std::to_string(i) + ": chi_2i=" + fmt(*chis[2 * i]) + " < lambda_i=" + fmt(lambdas[i]));
    }
    return out;
}

CheckResult check_adjointness(const corr::GradedMatrixCorr& c) {
    CheckResult out = make_check("adjointness", 0.0);
    const int k = c.lattice.k;
    for (int i = 0; i <= k; ++i) {
        const int j = k - i;
        const RatMatrix& p = c.lattice.pairings[j];
        // <A_j a, b> = a^T A_j^T P_j b and <a, F_i b> = a^T P_j F_i b.
        const bool equal = c.action[j].transpose() * p == p * corr::pushforward_matrix(c, i);
        record(out, equal ? 0.0 : 1.0, "degree " + std::to_string(i));
    }
    return out;
}

TraceLimsup trace_limsup(const RatMatrix& m, int n_max, double tol) {
    if (!m.square() || m.rows() == 0) fail("trace_limsup needs a nonempty square matrix");
    if (n_max < 1 || n_max > kTraceMaxN) fail("n_max must lie in [1, " + std::to_string(kTraceMaxN) + "]");
    TraceLimsup out;
    out.spectral_radius = spectral_radius(m);
    if (out.spectral_radius < 1.05) fail("trace_limsup needs spectral radius >= 1.05");
    const auto traces = zeta::power_sums(charpoly(m), n_max);
    for (int n = 1; n <= n_max; ++n) {
        const Rational& t = traces[n - 1];
        out.roots.push_back(t == 0 ? 0.0 : std::exp(abs_log(t) / n));
    }
    for (int n = (n_max + 1) / 2; n <= n_max; ++n) {
        if (n < 1) continue;
        if (out.best_n == 0 || out.roots[n - 1] > out.estimate) {
            out.estimate = out.roots[n - 1];
            out.best_n = n;
        }
    }
    out.verdict = verdict_of(std::abs(out.estimate - out.spectral_radius) <= tol * out.spectral_radius);
    return out;
}

NearIdentity near_identity_powers(const std::vector<Complex>& mus, double eps, std::uint64_t k_max) {
    if (!(eps > 0.0 && eps < 1.0)) fail("eps must lie in (0, 1)");
    std::vector<long double> turns;
    for (const auto& mu : mus) {
        if (std::abs(std::abs(mu) - 1.0) > 1e-12) fail("near_identity_powers needs unit-modulus inputs");
        turns.push_back(static_cast<long double>(std::arg(mu)) / (2.0L * std::numbers::pi_v<long double>));
    }
    NearIdentity out;
    for (std::uint64_t k = 1; k <= k_max; ++k) {
        bool close = true;
        for (long double t : turns) {
            long double frac = std::fmod(static_cast<long double>(k) * t, 1.0L);
            if (frac < 0) frac += 1.0L;
            const long double dist = 2.0L * std::fabs(std::sin(std::numbers::pi_v<long double> * frac));
            if (dist >= eps) {
                close = false;
                break;
            }
        }
        if (close) out.ks.push_back(k);
    }
    const double bound = std::ceil(std::pow(8.0 / eps, static_cast<double>(mus.size())));
    out.bound_reached = static_cast<double>(k_max) >= bound;
    return out;
}

Eq3Constants eq3_norm_constants(const std::vector<RatVector>& alpha_basis, const std::vector<RatVector>& beta_basis,
                                const RatMatrix& pairing) {
    if (alpha_basis.empty() || alpha_basis.size() != beta_basis.size()) fail("bases must be nonempty and of equal size");
    for (const auto& a : alpha_basis)
        if (a.size() != pairing.rows()) fail("alpha vector does not match the pairing");
    for (const auto& b : beta_basis)
        if (b.size() != pairing.cols()) fail("beta vector does not match the pairing");
    const RatMatrix a = RatMatrix::from_columns(alpha_basis, pairing.rows());
    const RatMatrix b = RatMatrix::from_columns(beta_basis, pairing.cols());
    Eq3Constants c;
    c.g = a.transpose() * pairing * b;
    const auto inv = inverse(c.g);
    if (!inv) throw DegenerateForm(kModule, "pairing between the two bases is degenerate");
    c.g_inv_t = inv->transpose();
    Rational total = 0;
    c.c2 = 0;
    for (std::size_t r = 0; r < c.g.rows(); ++r)
        for (std::size_t s = 0; s < c.g.cols(); ++s) {
            total += abs(c.g(r, s));
            c.c2 = std::max(c.c2, Rational(abs((*inv)(r, s))));
        }
    c.c1 = 1 / total;
    return c;
}

Rational pairing_sum(const Eq3Constants& c, const RatMatrix& m) {
    const RatMatrix x = c.g.transpose() * m;
    Rational total = 0;
    for (std::size_t r = 0; r < x.rows(); ++r)
        for (std::size_t s = 0; s < x.cols(); ++s) total += abs(x(r, s));
    return total;
}

Rational pairing_sup_norm(const Eq3Constants& c, const RatMatrix& m) {
    const RatMatrix x = c.g.transpose() * m * c.g_inv_t;
    Rational best = 0;
    for (std::size_t s = 0; s < x.cols(); ++s) {
        Rational col = 0;
        for (std::size_t r = 0; r < x.rows(); ++r) col += abs(x(r, s));
        best = std::max(best, col);
    }
    return best;
}

bool sandwich_holds(const Eq3Constants& c, const RatMatrix& m) {
    if (m.rows() != c.g.rows() || m.cols() != c.g.rows()) fail("f^* matrix has the wrong size");
    const Rational s = pairing_sum(c, m);
    const Rational norm = pairing_sup_norm(c, m);
    return c.c1 * s <= norm && norm <= c.c2 * s;
}

Eq3Validation eq3_validate(const Eq3Constants& c, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    const std::size_t m = c.g.rows();
    Eq3Validation out;
    for (int t = 0; t < trials; ++t) {
        RatMatrix f(m, m);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t s = 0; s < m; ++s) f(r, s) = Rational(num(rng), den(rng));
        ++out.trials;
        if (!sandwich_holds(c, f)) ++out.violations;
    }
    return out;
}

WeilFromDyndeg weil_from_dyndeg(const BigInt& q, int k) {
    const auto model = corr::frobenius_model(q, k);
    WeilFromDyndeg out;
    out.verdict = Verdict::pass;
    const auto miss = [&](const std::string& w) {
        out.verdict = Verdict::fail;
        out.witnesses.push_back(w);
    };
    BigInt qi = 1;
    for (int i = 0; i <= k; ++i, qi *= q) {
        // Intersection growth d_n = <(Fr^n)^* h^i, h^{k-i}> along functorial iterates.
        std::vector<Rational> degs;
        RatMatrix power = RatMatrix::identity(1);
        for (int n = 1; n <= 8; ++n) {
            power = model.action[i] * power;
            degs.push_back(abs(power(0, 0) * model.lattice.pairings[i](0, 0)));
        }
        const double lambda = lambda_estimate(degs).value;
        const double chi2i = chi(model, i).value;
        out.lambdas.push_back(lambda);
        out.chis.push_back(chi2i);
        const double expected = to_double(qi);
        if (lambda != expected) miss("lambda_" + std::to_string(i) + "=" + fmt(lambda) + " != q^i=" + fmt(expected));
        if (chi2i != expected) miss("chi_" + std::to_string(2 * i) + "=" + fmt(chi2i) + " != q^i=" + fmt(expected));
        if (chi2i > expected) miss("reduction inequality chi_2i <= q^i fails at i=" + std::to_string(i));
    }

    // Zeta of P^k from the closed-form counts sum_i q^{in}.
    counting::CountSequence counts;
    counts.q = q;
    for (int n = 1; n <= 2 * (k + 1); ++n) {
        BigInt total = 0;
        const BigInt qn = pow(q, static_cast<unsigned>(n));
        BigInt term = 1;
        for (int i = 0; i <= k; ++i, term *= qn) total += term;
        counts.counts.push_back(total);
    }
    const auto z = zeta::zeta_from_counts(counts);
    std::vector<bool> seen(static_cast<std::size_t>(k) + 1, false);
    for (const auto& f : z.factors) {
        const bool ok = f.side == zeta::Side::denominator && f.multiplicity == 1 && f.poly.size() == 2 && f.weight &&
                        *f.weight % 2 == 0 && *f.weight / 2 <= k && f.poly[1] == -pow(q, static_cast<unsigned>(*f.weight / 2));
        if (!ok) {
            miss("unexpected zeta factor for P^k");
            continue;
        }
        seen[*f.weight / 2] = true;
    }
    for (int i = 0; i <= k; ++i)
        if (!seen[i]) miss("zeta of P^k is missing the weight " + std::to_string(2 * i) + " factor");
    return out;
}

} // namespace dynlab::dyndeg
