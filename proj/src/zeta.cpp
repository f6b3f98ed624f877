#include "dynlab/zeta.hpp"

#include "dynlab/error.hpp"
#include "dynlab/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace dynlab::zeta {

namespace {

[[noreturn]] void fail(const std::string& message) { throw DomainError("zeta", message); }

using CPoly = std::vector<Complex>;

CPoly from_roots(const std::vector<Complex>& roots) {
    CPoly out{Complex(1.0, 0.0)};
    for (const auto& r : roots) {
        CPoly next(out.size() + 1, Complex(0.0, 0.0));
        for (std::size_t i = 0; i < out.size(); ++i) {
            next[i + 1] += out[i];
            next[i] -= r * out[i];
        }
        out = std::move(next);
    }
    return out;
}

// Rounds a numerically formed monic factor to Z[T] if every coefficient is
// within tolerance of an integer.
std::optional<IntPoly> round_to_integer(const CPoly& c) {
    IntPoly out;
    for (const auto& v : c) {
        const double tol = 1e-6 * (1.0 + std::abs(v));
        const double nearest = std::round(v.real());
        if (std::abs(v.imag()) > tol || std::abs(v.real() - nearest) > tol) return std::nullopt;
        out.emplace_back(static_cast<long long>(nearest));
    }
    return out;
}

bool divides(const IntPoly& f, const IntPoly& g) {
    return poly::divmod(poly::to_rational(g), poly::to_rational(f)).second.empty();
}

// Weight w with |m - q^{w/2}| <= tol * q^{w/2} for every modulus, if any.
std::optional<int> cluster_weight(const std::vector<double>& moduli, double log_q) {
    if (moduli.empty()) return std::nullopt;
    std::optional<int> weight;
    for (double m : moduli) {
        if (m <= 0) return std::nullopt;
        const int w = static_cast<int>(std::lround(2.0 * std::log(m) / log_q));
        if (weight && *weight != w) return std::nullopt;
        weight = w;
        const double target = std::exp(0.5 * w * log_q);
        if (std::abs(m - target) > kClusterTol * target) return std::nullopt;
    }
    return weight;
}

std::vector<double> moduli_of(const IntPoly& eigen_poly) {
    std::vector<double> out;
    for (const auto& r : find_roots(eigen_poly).roots) out.push_back(std::abs(r));
    return out;
}

bool factor_less(const ZetaFactor& a, const ZetaFactor& b) {
    const auto key = [](const ZetaFactor& f) {
        return std::make_tuple(f.side == Side::denominator ? 0 : 1, f.weight.value_or(1 << 20), f.poly.size());
    };
    if (key(a) != key(b)) return key(a) < key(b);
    return std::lexicographical_compare(a.poly.begin(), a.poly.end(), b.poly.begin(), b.poly.end());
}

} // namespace

bool ZetaData::fully_weighted() const {
    return std::all_of(factors.begin(), factors.end(), [](const ZetaFactor& f) { return f.weight.has_value(); });
}

IntPoly min_recurrence(const std::vector<Rational>& seq) {
    // Berlekamp-Massey; C(x) = 1 + c_1 x + ... + c_L x^L is the connection polynomial.
    poly::RatPoly c{1}, b{1};
    int order = 0;
    int shift = 1;
    Rational last_discrepancy = 1;
    for (std::size_t n = 0; n < seq.size(); ++n) {
        Rational d = seq[n];
        for (int i = 1; i <= order && i < static_cast<int>(c.size()); ++i) d += c[i] * seq[n - i];
        if (d == 0) {
            ++shift;
            continue;
        }
        poly::RatPoly updated = c;
        if (updated.size() < b.size() + shift) updated.resize(b.size() + shift);
        const Rational factor = d / last_discrepancy;
        for (std::size_t i = 0; i < b.size(); ++i) updated[i + shift] -= factor * b[i];
        if (2 * order <= static_cast<int>(n)) {
            b = c;
            order = static_cast<int>(n) + 1 - order;
            last_discrepancy = d;
            shift = 1;
        } else {
            ++shift;
        }
        c = std::move(updated);
    }
    if (2 * order > static_cast<int>(seq.size()))
        throw OrderNotConfirmed("recurrence order " + std::to_string(order) + " not confirmed by " +
                                    std::to_string(seq.size()) + " terms (need " + std::to_string(2 * order) + ")",
                                order);
    // Characteristic polynomial x^L C(1/x).
    poly::RatPoly charpoly(static_cast<std::size_t>(order) + 1);
    for (int i = 0; i <= order; ++i) charpoly[order - i] = i < static_cast<int>(c.size()) ? c[i] : Rational(0);
    return poly::to_primitive(charpoly);
}

std::vector<Rational> power_sums(const poly::RatPoly& charpoly, int n_max) {
    poly::RatPoly f = charpoly;
    poly::trim(f);
    const int d = static_cast<int>(f.size()) - 1;
    if (d < 1) fail("power sums of a constant polynomial");
    // a[k] = coefficient of T^{d-k} / leading coefficient
    std::vector<Rational> a(d + 1);
    for (int k = 0; k <= d; ++k) a[k] = f[d - k] / f[d];
    std::vector<Rational> p(static_cast<std::size_t>(std::max(n_max, 0)) + 1);
    for (int n = 1; n <= n_max; ++n) {
        Rational s = 0;
        for (int k = 1; k < n && k <= d; ++k) s -= a[k] * p[n - k];
        if (n <= d) s -= Rational(n) * a[n];
        p[n] = s;
    }
    return {p.begin() + 1, p.end()};
}

std::vector<Rational> power_sums(const IntPoly& charpoly, int n_max) {
    return power_sums(poly::to_rational(charpoly), n_max);
}

std::vector<IntPoly> factor_squarefree(const IntPoly& p_in) {
    IntPoly current = p_in;
    poly::trim(current);
    if (current.size() <= 1) return {};
    if (static_cast<int>(current.size()) - 1 > kMaxFactorDegree)
        fail("polynomial degree " + std::to_string(current.size() - 1) + " exceeds factoring guard");
    if (current.back() < 0)
        for (auto& c : current) c = -c;
    if (abs(current.back()) != 1) fail("factoring expects a monic polynomial");

    std::vector<Complex> remaining = find_roots(current).roots;
    std::vector<IntPoly> factors;
    while (!remaining.empty()) {
        const std::size_t r = remaining.size();
        bool found = false;
        // Smallest root subset containing remaining[0] whose product is in Z[T]
        // and divides what is left.
        for (std::size_t size = 1; size < r && !found; ++size) {
            std::vector<std::size_t> pick(size - 1);
            for (std::size_t i = 0; i + 1 < size; ++i) pick[i] = i + 1;
            while (true) {
                std::vector<Complex> subset{remaining[0]};
                for (auto i : pick) subset.push_back(remaining[i]);
                if (auto cand = round_to_integer(from_roots(subset)); cand && divides(*cand, current)) {
                    factors.push_back(*cand);
                    current = poly::to_primitive(poly::divmod(poly::to_rational(current), poly::to_rational(*cand)).first);
                    std::vector<Complex> rest;
                    for (std::size_t i = 1; i < r; ++i)
                        if (std::find(pick.begin(), pick.end(), i) == pick.end()) rest.push_back(remaining[i]);
                    remaining = std::move(rest);
                    found = true;
                    break;
                }
                // next combination of `size - 1` indices from [1, r)
                std::size_t k = pick.size();
                while (k > 0 && pick[k - 1] == r - (pick.size() - k) - 1) --k;
                if (k == 0) break;
                ++pick[k - 1];
                for (std::size_t j = k; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
            }
        }
        if (!found) {
            factors.push_back(current);
            remaining.clear();
        }
    }
    std::sort(factors.begin(), factors.end(), [](const IntPoly& a, const IntPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    return factors;
}

IntPoly eigen_polynomial(const ZetaFactor& factor) {
    return poly::reverse(factor.poly, static_cast<int>(factor.poly.size()) - 1);
}

ZetaData zeta_from_counts(const counting::CountSequence& counts, const std::optional<std::vector<int>>& betti_hint) {
    if (counts.q < 2) fail("q must be a prime power >= 2");
    ZetaData z;
    z.q = counts.q;
    std::vector<Rational> seq(counts.counts.begin(), counts.counts.end());
    const IntPoly recurrence = min_recurrence(seq);
    if (recurrence.size() <= 1) return z;

    const auto parts = poly::squarefree_decomposition(poly::to_rational(recurrence));
    if (parts.size() > 1) fail("count sequence has a repeated characteristic root; not a zeta sequence");

    const auto irreducible = factor_squarefree(recurrence);
    const int m = static_cast<int>(irreducible.size());
    const int len = static_cast<int>(seq.size());

    // N_n = sum_F c_F * p_n(F); solve exactly over all supplied terms.
    RatMatrix system(static_cast<std::size_t>(len), static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        const auto p = power_sums(irreducible[j], len);
        for (int n = 0; n < len; ++n) system(n, j) = p[n];
    }
    const auto coeffs = solve(system, seq);
    if (!coeffs) fail("count sequence is not a signed sum of Frobenius power sums");

    const double log_q = std::log(to_double(z.q));
    for (int j = 0; j < m; ++j) {
        const Rational c = (*coeffs)[j];
        if (c == 0) {
            z.diagnostics.push_back("factor with zero trace contribution dropped");
            continue;
        }
        if (denominator(c) != 1) fail("non-integral multiplicity " + to_string(c) + " for a recurrence factor");
        ZetaFactor f;
        f.side = c > 0 ? Side::denominator : Side::numerator;
        f.multiplicity = abs(numerator(c)).convert_to<int>();
        f.poly = poly::reverse(irreducible[j], static_cast<int>(irreducible[j].size()) - 1);
        f.weight = cluster_weight(moduli_of(irreducible[j]), log_q);
        z.factors.push_back(std::move(f));
    }

    if (betti_hint) {
        std::vector<int> budget = *betti_hint;
        for (const auto& f : z.factors)
            if (f.weight && *f.weight >= 0 && *f.weight < static_cast<int>(budget.size()))
                budget[*f.weight] -= (static_cast<int>(f.poly.size()) - 1) * f.multiplicity;
        for (auto& f : z.factors) {
            if (f.weight) continue;
            const auto moduli = moduli_of(eigen_polynomial(f));
            double mean = 0;
            for (double mod : moduli) mean += std::log(mod);
            mean = 2.0 * mean / (static_cast<double>(moduli.size()) * log_q);
            const int deg = (static_cast<int>(f.poly.size()) - 1) * f.multiplicity;
            std::optional<int> best;
            for (int w = 0; w < static_cast<int>(budget.size()); ++w) {
                if (budget[w] < deg) continue;
                if (!best || std::abs(w - mean) < std::abs(*best - mean)) best = w;
            }
            if (best) {
                f.weight = best;
                budget[*best] -= deg;
                z.diagnostics.push_back("weight " + std::to_string(*best) + " forced by betti hint on a mixed factor");
            }
        }
        for (std::size_t w = 0; w < budget.size(); ++w)
            if (budget[w] != 0) z.diagnostics.push_back("betti hint mismatch in weight " + std::to_string(w));
    }

    std::sort(z.factors.begin(), z.factors.end(), factor_less);
    for (const auto& f : z.factors)
        if (!f.weight) z.diagnostics.push_back("mixed factor: root moduli do not cluster at a single q^{w/2}");

    int weight_one_degree = 0;
    bool any_weight_one = false;
    for (const auto& f : z.factors) {
        if (f.side == Side::numerator && f.weight == 1) {
            weight_one_degree += (static_cast<int>(f.poly.size()) - 1) * f.multiplicity;
            any_weight_one = true;
        }
    }
    if (any_weight_one) z.genus_hint = weight_one_degree / 2;
    return z;
}

ZetaData elliptic_zeta(const BigInt& n1, const BigInt& q) {
    if (q < 2) fail("q must be a prime power >= 2");
    if (n1 < 1) fail("N_1 must be >= 1");
    ZetaData z;
    z.q = q;
    const BigInt a = q + 1 - n1;
    z.factors.push_back({IntPoly{1, -1}, Side::denominator, 0, 1});
    z.factors.push_back({IntPoly{1, -q}, Side::denominator, 2, 1});
    IntPoly numerator{1, -a, q};
    poly::trim(numerator);
    z.factors.push_back({numerator, Side::numerator, 1, 1});
    z.genus_hint = 1;
    if (a * a > 4 * q) {
        z.weil_violating = true;
        z.diagnostics.push_back("Weil-violating input: |a| > 2 sqrt(q) with a = " + a.str());
    }
    return z;
}

std::vector<EigenvalueData> eigenvalues(const ZetaData& z) {
    std::vector<EigenvalueData> out;
    for (std::size_t i = 0; i < z.factors.size(); ++i) {
        for (const auto& r : find_roots(eigen_polynomial(z.factors[i])).roots) {
            out.push_back({r, std::abs(r), z.factors[i].weight, i});
        }
    }
    return out;
}

WeilReport weil_check(const ZetaData& z) {
    WeilReport report;
    report.smoothness_not_verified = !z.smoothness_verified;
    const double log_q = std::log(to_double(z.q));
    bool any_fail = false;
    bool any_mixed = false;
    for (std::size_t i = 0; i < z.factors.size(); ++i) {
        const auto& f = z.factors[i];
        FactorVerdict fv;
        fv.factor = i;
        if (!f.weight) {
            fv.verdict = Verdict::indeterminate;
            any_mixed = true;
            report.factors.push_back(fv);
            continue;
        }
        const double target = std::exp(0.5 * *f.weight * log_q);
        fv.verdict = Verdict::pass;
        for (const auto& r : find_roots(eigen_polynomial(f)).roots) {
            const double err = std::abs(std::abs(r) - target) / target;
            if (err > fv.worst_relative_error) {
                fv.worst_relative_error = err;
                if (err > kWeilTol) fv.offending_root = r;
            }
        }
        if (fv.worst_relative_error > kWeilTol) {
            fv.verdict = Verdict::fail;
            any_fail = true;
        }
        report.factors.push_back(fv);
    }
    report.overall = any_mixed ? Verdict::indeterminate : (any_fail ? Verdict::fail : Verdict::pass);
    return report;
}

Verdict functional_equation_check(const IntPoly& numerator, const BigInt& q, int genus) {
    IntPoly p = numerator;
    poly::trim(p);
    if (genus < 0 || static_cast<int>(p.size()) - 1 != 2 * genus)
        throw DomainError("zeta", "functional equation: degree " + std::to_string(static_cast<int>(p.size()) - 1) +
                                      " does not match 2g = " + std::to_string(2 * genus));
    // Coefficient of T^{2g-i} after the transform is c_i q^{g-i}.
    for (int sign : {1, -1}) {
        bool ok = true;
        for (int i = 0; i <= 2 * genus && ok; ++i) {
            const int e = genus - i;
            const Rational scale = e >= 0 ? Rational(pow(q, static_cast<unsigned>(e)))
                                          : Rational(BigInt(1), pow(q, static_cast<unsigned>(-e)));
            ok = Rational(p[i]) * scale == Rational(sign) * Rational(p[2 * genus - i]);
        }
        if (ok) return Verdict::pass;
    }
    return Verdict::fail;
}

BigInt lefschetz_reconstruct(const ZetaData& z, int n) {
    if (n < 1) fail("lefschetz_reconstruct needs n >= 1");
    if (!z.fully_weighted()) throw Error("zeta", "indeterminate", "zeta data has mixed factors");
    Rational total = 0;
    for (const auto& f : z.factors) {
        if (f.poly.size() <= 1) continue;
        const Rational pn = power_sums(eigen_polynomial(f), n).back();
        const Rational signed_mult = Rational(f.side == Side::denominator ? f.multiplicity : -f.multiplicity);
        total += signed_mult * pn;
    }
    if (denominator(total) != 1) fail("reconstructed count is not an integer");
    return numerator(total);
}

} // namespace dynlab::zeta
