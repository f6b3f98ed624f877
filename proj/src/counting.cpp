#include "dynlab/counting.hpp"

#include "dynlab/error.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>

namespace dynlab::counting {

using ffield::ExtField;
using ffield::FieldElem;
using ffield::ZechTables;

namespace {

[[noreturn]] void fail(const std::string& message) { throw DomainError("counting", message); }

// Log-domain arithmetic backed by Zech tables.
struct ZechArith {
    using Value = ZechTables::Log;
    const ZechTables& t;

    Value zero() const { return t.zero(); }
    Value one() const { return t.one(); }
    Value from_digit(u64 d) const { return d == 0 ? t.zero() : static_cast<Value>(d - 1); }
    Value constant(u64 c) const { return t.log_of(c); }
    Value add(Value a, Value b) const { return t.add(a, b); }
    Value mul(Value a, Value b) const { return t.mul(a, b); }
    Value pow(Value a, u64 e) const { return t.pow(a, e); }
    bool is_zero(Value a) const { return a == t.zero(); }
    int chi(Value a) const { return t.chi(a); }
};

// Polynomial-basis arithmetic for fields too large for tables.
struct DirectArith {
    using Value = FieldElem;
    const ExtField& f;

    Value zero() const { return f.zero(); }
    Value one() const { return f.one(); }
    Value from_digit(u64 d) const { return f.from_code(d); }
    Value constant(u64 c) const { return f.from_prime(c); }
    Value add(const Value& a, const Value& b) const { return f.add(a, b); }
    Value mul(const Value& a, const Value& b) const { return f.mul(a, b); }
    Value pow(const Value& a, u64 e) const { return f.pow(a, e); }
    bool is_zero(const Value& a) const { return f.is_zero(a); }
    int chi(const Value& a) const {
        if (f.is_zero(a)) return 0;
        return f.pow(a, (f.order() - 1) / 2) == f.one() ? 1 : -1;
    }
};

template <class Arith>
struct CompiledTerm {
    typename Arith::Value coeff;
    std::vector<std::pair<int, std::uint32_t>> factors; // (coordinate, exponent)
};

template <class Arith>
using CompiledSystem = std::vector<std::vector<CompiledTerm<Arith>>>;

template <class Arith>
CompiledSystem<Arith> compile(const Arith& ar, const PolySystem& sys) {
    CompiledSystem<Arith> out;
    for (const auto& poly : sys.polys()) {
        std::vector<CompiledTerm<Arith>> terms;
        for (const auto& term : poly) {
            CompiledTerm<Arith> ct{ar.constant(term.coeff), {}};
            for (std::size_t i = 0; i < term.exps.size(); ++i)
                if (term.exps[i] > 0) ct.factors.emplace_back(static_cast<int>(i), term.exps[i]);
            terms.push_back(std::move(ct));
        }
        out.push_back(std::move(terms));
    }
    return out;
}

template <class Arith>
bool vanishes(const Arith& ar, const CompiledSystem<Arith>& sys, const std::vector<typename Arith::Value>& x) {
    for (const auto& poly : sys) {
        auto acc = ar.zero();
        for (const auto& term : poly) {
            auto v = term.coeff;
            for (const auto& [coord, e] : term.factors) {
                v = ar.mul(v, ar.pow(x[coord], e));
                if (ar.is_zero(v)) break;
            }
            acc = ar.add(acc, v);
        }
        if (!ar.is_zero(acc)) return false;
    }
    return true;
}

u64 ipow(u64 base, int e) {
    u64 r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

int resolve_threads(const CountOptions& options) {
    return options.threads > 0 ? options.threads : omp_get_max_threads();
}

// Counts zeros among tuples whose first `fixed` coordinates are given and whose
// remaining coordinates range over all of F_Q, in chunks of options.chunk.
template <class Arith>
u64 count_box(const Arith& ar, const CompiledSystem<Arith>& sys, std::vector<typename Arith::Value> prefix, int coords,
              u64 q, const CountOptions& options) {
    const int fixed = static_cast<int>(prefix.size());
    const int free = coords - fixed;
    const u64 total = ipow(q, free);
    const u64 chunk = std::max<std::uint64_t>(1, options.chunk);
    const long long chunks = static_cast<long long>((total + chunk - 1) / chunk);
    u64 count = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : count) num_threads(resolve_threads(options))
    for (long long c = 0; c < chunks; ++c) {
        const u64 start = static_cast<u64>(c) * chunk;
        const u64 stop = std::min(total, start + chunk);
        std::vector<typename Arith::Value> x = prefix;
        x.resize(coords, ar.zero());
        std::vector<u64> digits(free, 0);
        u64 rest = start;
        for (int i = free; i-- > 0;) {
            digits[i] = rest % q;
            rest /= q;
            x[fixed + i] = ar.from_digit(digits[i]);
        }
        u64 local = 0;
        for (u64 idx = start; idx < stop; ++idx) {
            if (vanishes(ar, sys, x)) ++local;
            for (int i = free; i-- > 0;) {
                if (++digits[i] < q) {
                    x[fixed + i] = ar.from_digit(digits[i]);
                    break;
                }
                digits[i] = 0;
                x[fixed + i] = ar.from_digit(0);
            }
        }
        count += local;
    }
    return count;
}

template <class Arith>
u64 count_with(const Arith& ar, const PolySystem& sys, u64 q, const CountOptions& options) {
    const auto compiled = compile(ar, sys);
    const int coords = sys.ambient().coords();
    if (sys.ambient().kind == AmbientKind::affine) return count_box(ar, compiled, {}, coords, q, options);
    u64 total = 0;
    for (int lead = 0; lead < coords; ++lead) {
        std::vector<typename Arith::Value> prefix(lead, ar.zero());
        prefix.push_back(ar.one());
        total += count_box(ar, compiled, std::move(prefix), coords, q, options);
    }
    return total;
}

void check_guard(const PolySystem& sys, int n) {
    const BigInt candidates = candidate_count(sys, n);
    if (candidates > kCandidateGuard) {
        const u64 shown = candidates > BigInt(~u64{0}) ? ~u64{0} : candidates.convert_to<u64>();
        throw GuardExceeded("counting",
                            "too large for brute force: " + candidates.str() + " candidates for '" + sys.name() +
                                "' over F_" + std::to_string(sys.p()) + "^" + std::to_string(n),
                            shown, n);
    }
}

template <class Arith>
u64 hyperelliptic_affine_with(const Arith& ar, const std::vector<u64>& f, u64 q, const CountOptions& options) {
    std::vector<typename Arith::Value> coeffs;
    for (u64 c : f) coeffs.push_back(ar.constant(c));
    const u64 chunk = std::max<std::uint64_t>(1, options.chunk);
    const long long chunks = static_cast<long long>((q + chunk - 1) / chunk);
    long long sum = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : sum) num_threads(resolve_threads(options))
    for (long long c = 0; c < chunks; ++c) {
        const u64 start = static_cast<u64>(c) * chunk;
        const u64 stop = std::min(q, start + chunk);
        long long local = 0;
        for (u64 d = start; d < stop; ++d) {
            const auto x = ar.from_digit(d);
            auto acc = ar.zero();
            for (std::size_t i = coeffs.size(); i-- > 0;) acc = ar.add(ar.mul(acc, x), coeffs[i]);
            local += 1 + ar.chi(acc);
        }
        sum += local;
    }
    return static_cast<u64>(sum);
}

} // namespace

PolySystem::PolySystem(std::string name, u64 p, Ambient ambient,
                       const std::vector<std::vector<std::pair<long long, std::vector<long long>>>>& polys)
    : name_(std::move(name)), p_(p), ambient_(ambient) {
    if (!ffield::is_prime(p)) fail("characteristic " + std::to_string(p) + " is not prime");
    if (ambient.dim < 0) fail("negative ambient dimension");
    const auto width = static_cast<std::size_t>(ambient.coords());
    for (const auto& raw : polys) {
        Polynomial poly;
        std::optional<long long> degree;
        for (const auto& [coeff, exps] : raw) {
            if (exps.size() != width)
                fail("exponent vector of length " + std::to_string(exps.size()) + ", expected " + std::to_string(width));
            long long total = 0;
            Term term;
            for (long long e : exps) {
                if (e < 0) fail("negative exponent");
                total += e;
                term.exps.push_back(static_cast<std::uint32_t>(e));
            }
            if (ambient.kind == AmbientKind::projective) {
                if (degree && *degree != total) fail("polynomial is not homogeneous");
                degree = total;
            }
            const long long m = static_cast<long long>(p);
            term.coeff = static_cast<u64>(((coeff % m) + m) % m);
            if (term.coeff != 0) poly.push_back(std::move(term));
        }
        polys_.push_back(std::move(poly));
    }
}

BigInt candidate_count(const PolySystem& sys, int n) {
    const BigInt q = pow(BigInt(sys.p()), static_cast<unsigned>(n));
    if (sys.ambient().kind == AmbientKind::affine) return pow(q, static_cast<unsigned>(sys.ambient().dim));
    BigInt total = 0;
    for (int j = 0; j <= sys.ambient().dim; ++j) total += pow(q, static_cast<unsigned>(j));
    return total;
}

u64 count_points(const PolySystem& sys, int n, const CountOptions& options) {
    if (n < 1) fail("extension degree must be >= 1");
    check_guard(sys, n);
    const ExtField field = ffield::build_extension(sys.p(), n);
    if (field.order() <= ZechTables::kMaxOrder) {
        const ZechTables tables(field);
        return count_with(ZechArith{tables}, sys, field.order(), options);
    }
    return count_with(DirectArith{field}, sys, field.order(), options);
}

u64 count_points_reference(const PolySystem& sys, int n) {
    if (n < 1) fail("extension degree must be >= 1");
    const ExtField field = ffield::build_extension(sys.p(), n);
    const u64 q = field.order();
    const int m = sys.ambient().coords();
    const BigInt tuples = pow(BigInt(q), static_cast<unsigned>(m));
    if (tuples > kCandidateGuard)
        throw GuardExceeded("counting", "too large for brute force: " + tuples.str() + " tuples (reference path)",
                            tuples.convert_to<u64>(), n);
    const bool projective = sys.ambient().kind == AmbientKind::projective;
    const u64 total = tuples.convert_to<u64>();
    u64 count = 0;
    std::vector<FieldElem> x(m);
    for (u64 idx = 0; idx < total; ++idx) {
        u64 rest = idx;
        for (int i = 0; i < m; ++i) {
            x[i] = field.from_code(rest % q);
            rest /= q;
        }
        if (projective) {
            // Canonical representative: first nonzero coordinate equals 1.
            auto first = std::find_if(x.begin(), x.end(), [&](const FieldElem& v) { return !field.is_zero(v); });
            if (first == x.end() || !(*first == field.one())) continue;
        }
        bool zero_everywhere = true;
        for (const auto& poly : sys.polys()) {
            FieldElem acc = field.zero();
            for (const auto& term : poly) {
                FieldElem v = field.from_prime(term.coeff);
                for (int i = 0; i < m; ++i) v = field.mul(v, field.pow(x[i], term.exps[i]));
                acc = field.add(acc, v);
            }
            if (!field.is_zero(acc)) {
                zero_everywhere = false;
                break;
            }
        }
        if (zero_everywhere) ++count;
    }
    return count;
}

CountSequence count_sequence(const PolySystem& sys, int n_max, const CountOptions& options) {
    CountSequence seq{BigInt(sys.p()), {}};
    for (int n = 1; n <= n_max; ++n) seq.counts.emplace_back(count_points(sys, n, options));
    return seq;
}

HyperellipticCurve::HyperellipticCurve(u64 p, std::vector<u64> f) : p_(p), f_(std::move(f)) {
    if (!ffield::is_prime(p)) fail(std::to_string(p) + " is not prime");
    if (p == 2) fail("hyperelliptic models in characteristic 2 are not supported");
    for (auto& c : f_) c %= p;
    ffield::trim(f_);
    if (f_.size() < 2) fail("f must have degree >= 1");
    const auto g = ffield::poly_gcd(f_, ffield::poly_derivative(f_, p), p);
    if (ffield::degree(g) > 0) fail("f is not squarefree over F_" + std::to_string(p));
}

u64 hyperelliptic_affine_count(const HyperellipticCurve& curve, int n, const CountOptions& options) {
    if (n < 1) fail("extension degree must be >= 1");
    const ExtField field = ffield::build_extension(curve.p(), n);
    if (field.order() <= ZechTables::kMaxOrder) {
        const ZechTables tables(field);
        return hyperelliptic_affine_with(ZechArith{tables}, curve.f(), field.order(), options);
    }
    return hyperelliptic_affine_with(DirectArith{field}, curve.f(), field.order(), options);
}

u64 hyperelliptic_count(const HyperellipticCurve& curve, int n, const CountOptions& options) {
    const u64 affine = hyperelliptic_affine_count(curve, n, options);
    if (curve.degree() % 2 == 1) return affine + 1;
    // chi over F_{p^n} of a prime-field constant is chi_p(lead)^n.
    const u64 p = curve.p();
    const bool square_mod_p = ffield::pow_mod(curve.f().back(), (p - 1) / 2, p) == 1;
    const int chi = (square_mod_p || n % 2 == 0) ? 1 : -1;
    return affine + static_cast<u64>(1 + chi);
}

CountSequence hyperelliptic_sequence(const HyperellipticCurve& curve, int n_max, const CountOptions& options) {
    CountSequence seq{BigInt(curve.p()), {}};
    for (int n = 1; n <= n_max; ++n) seq.counts.emplace_back(hyperelliptic_count(curve, n, options));
    return seq;
}

} // namespace dynlab::counting
