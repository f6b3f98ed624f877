#include "dynlab/ffield.hpp"

#include "dynlab/error.hpp"

#include <algorithm>
#include <string>

namespace dynlab::ffield {

namespace {

[[noreturn]] void fail(const std::string& message) { throw DomainError("ffield", message); }

std::vector<u64> distinct_prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

ModPoly poly_sub(ModPoly a, const ModPoly& b, u64 p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

// x^(p^d) mod f, by d successive p-th powers.
ModPoly frobenius_power_of_x(const ModPoly& f, u64 p, int d) {
    ModPoly acc = poly_mod(ModPoly{0, 1}, f, p);
    for (int i = 0; i < d; ++i) acc = poly_powmod(acc, p, f, p);
    return acc;
}

} // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

u64 mul_mod(u64 a, u64 b, u64 p) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p);
}

u64 pow_mod(u64 a, u64 e, u64 p) {
    u64 result = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) result = mul_mod(result, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return result;
}

u64 inv_mod(u64 a, u64 p) {
    if (a % p == 0) fail("inverse of zero in F_" + std::to_string(p));
    return pow_mod(a, p - 2, p);
}

PrimeField::PrimeField(u64 p) : p_(p) {
    if (!is_prime(p)) fail(std::to_string(p) + " is not prime");
}

void trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const ModPoly& f) {
    ModPoly t = f;
    trim(t);
    return static_cast<int>(t.size()) - 1;
}

ModPoly poly_mod(const ModPoly& a, const ModPoly& m, u64 p) {
    ModPoly r = a;
    trim(r);
    ModPoly mod = m;
    trim(mod);
    if (mod.empty()) fail("reduction modulo the zero polynomial");
    const u64 lead_inv = inv_mod(mod.back(), p);
    while (r.size() >= mod.size()) {
        const u64 c = mul_mod(r.back(), lead_inv, p);
        const std::size_t shift = r.size() - mod.size();
        for (std::size_t i = 0; i < mod.size(); ++i) r[shift + i] = (r[shift + i] + p - mul_mod(c, mod[i], p)) % p;
        trim(r);
    }
    return r;
}

ModPoly poly_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, u64 p) {
    if (a.empty() || b.empty()) return {};
    ModPoly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + mul_mod(a[i], b[j], p)) % p;
    }
    return poly_mod(prod, m, p);
}

ModPoly poly_powmod(const ModPoly& a, u64 e, const ModPoly& m, u64 p) {
    ModPoly result = poly_mod(ModPoly{1}, m, p);
    ModPoly base = poly_mod(a, m, p);
    while (e) {
        if (e & 1) result = poly_mulmod(result, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

ModPoly poly_gcd(ModPoly a, ModPoly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        ModPoly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        const u64 inv = inv_mod(a.back(), p);
        for (auto& c : a) c = mul_mod(c, inv, p);
    }
    return a;
}

ModPoly poly_derivative(const ModPoly& f, u64 p) {
    if (f.size() <= 1) return {};
    ModPoly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = mul_mod(f[i], i % p, p);
    trim(d);
    return d;
}

bool is_irreducible(const ModPoly& f_in, u64 p) {
    ModPoly f = f_in;
    trim(f);
    const int n = degree(f);
    if (n < 1) return false;
    if (n == 1) return true;
    const ModPoly x{0, 1};
    // No roots in F_p: gcd(x^p - x, f) = 1.
    const ModPoly xp = frobenius_power_of_x(f, p, 1);
    if (degree(poly_gcd(poly_sub(xp, x, p), f, p)) > 0) return false;
    // Rabin: x^(p^n) = x mod f and gcd(x^(p^(n/r)) - x, f) = 1 for primes r | n.
    if (poly_sub(frobenius_power_of_x(f, p, n), poly_mod(x, f, p), p).size() != 0) return false;
    for (u64 r : distinct_prime_factors(static_cast<u64>(n))) {
        const ModPoly h = frobenius_power_of_x(f, p, n / static_cast<int>(r));
        if (degree(poly_gcd(poly_sub(h, x, p), f, p)) > 0) return false;
    }
    return true;
}

ExtField::ExtField(u64 p, ModPoly modulus) : p_(p), modulus_(std::move(modulus)) {
    if (!is_prime(p)) fail(std::to_string(p) + " is not prime");
    trim(modulus_);
    n_ = degree(modulus_);
    if (n_ < 1 || n_ > kMaxDegree) fail("extension degree " + std::to_string(n_) + " outside [1, 16]");
    if (modulus_.back() != 1) fail("modulus must be monic");
    for (auto c : modulus_)
        if (c >= p) fail("modulus coefficient not reduced mod p");
    order_ = 1;
    for (int i = 0; i < n_; ++i) {
        if (order_ > kMaxOrder / p) fail("field order p^n exceeds 2^40");
        order_ *= p;
    }
    if (!is_irreducible(modulus_, p)) fail("modulus is reducible over F_" + std::to_string(p));
}

FieldElem ExtField::zero() const { return FieldElem{std::vector<u64>(n_, 0)}; }

FieldElem ExtField::one() const { return from_prime(1); }

FieldElem ExtField::from_prime(u64 c) const {
    FieldElem e = zero();
    e.coeffs[0] = c % p_;
    return e;
}

FieldElem ExtField::generator_x() const {
    if (n_ == 1) return from_prime((p_ - modulus_[0]) % p_);
    FieldElem e = zero();
    e.coeffs[1] = 1;
    return e;
}

FieldElem ExtField::from_code(u64 code) const {
    FieldElem e = zero();
    for (int i = 0; i < n_; ++i) {
        e.coeffs[i] = code % p_;
        code /= p_;
    }
    return e;
}

u64 ExtField::code(const FieldElem& a) const {
    u64 c = 0;
    for (int i = n_; i-- > 0;) c = c * p_ + a.coeffs[i];
    return c;
}

bool ExtField::valid(const FieldElem& a) const {
    return static_cast<int>(a.coeffs.size()) == n_ &&
           std::all_of(a.coeffs.begin(), a.coeffs.end(), [&](u64 c) { return c < p_; });
}

bool ExtField::is_zero(const FieldElem& a) const {
    return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](u64 c) { return c == 0; });
}

FieldElem ExtField::add(const FieldElem& a, const FieldElem& b) const {
    FieldElem out = a;
    for (int i = 0; i < n_; ++i) {
        const u64 s = a.coeffs[i] + b.coeffs[i];
        out.coeffs[i] = s >= p_ ? s - p_ : s;
    }
    return out;
}

FieldElem ExtField::neg(const FieldElem& a) const {
    FieldElem out = a;
    for (auto& c : out.coeffs) c = c ? p_ - c : 0;
    return out;
}

FieldElem ExtField::sub(const FieldElem& a, const FieldElem& b) const { return add(a, neg(b)); }

FieldElem ExtField::mul(const FieldElem& a, const FieldElem& b) const {
    // Schoolbook product, then reduce top-down with the monic modulus.
    std::vector<u64> prod(2 * n_ - 1, 0);
    for (int i = 0; i < n_; ++i) {
        if (a.coeffs[i] == 0) continue;
        for (int j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + mul_mod(a.coeffs[i], b.coeffs[j], p_)) % p_;
    }
    for (int top = 2 * n_ - 2; top >= n_; --top) {
        const u64 c = prod[top];
        if (c == 0) continue;
        prod[top] = 0;
        for (int i = 0; i < n_; ++i) {
            const int at = top - n_ + i;
            prod[at] = (prod[at] + p_ - mul_mod(c, modulus_[i], p_)) % p_;
        }
    }
    prod.resize(n_);
    return FieldElem{std::move(prod)};
}

FieldElem ExtField::pow(const FieldElem& a, u64 e) const {
    FieldElem result = one();
    FieldElem base = a;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

FieldElem ExtField::inv(const FieldElem& a) const {
    if (is_zero(a)) fail("inverse of zero in F_" + std::to_string(p_) + "^" + std::to_string(n_));
    return pow(a, order_ - 2);
}

FieldElem ExtField::frobenius(const FieldElem& a) const { return pow(a, p_); }

ExtField build_extension(u64 p, int n) {
    if (!is_prime(p)) fail(std::to_string(p) + " is not prime");
    if (n < 1 || n > kMaxDegree) fail("extension degree " + std::to_string(n) + " outside [1, 16]");
    u64 candidates = 1;
    for (int i = 0; i < n; ++i) {
        if (candidates > kMaxOrder / p) fail("field order p^n exceeds 2^40");
        candidates *= p;
    }
    if (n == 1) return ExtField(p, ModPoly{0, 1});
    for (u64 code = 0; code < candidates; ++code) {
        if (code % p == 0) continue; // x divides it
        ModPoly f(n + 1);
        u64 c = code;
        for (int i = 0; i < n; ++i) {
            f[i] = c % p;
            c /= p;
        }
        f[n] = 1;
        if (is_irreducible(f, p)) return ExtField(p, f);
    }
    fail("no irreducible polynomial found"); // unreachable for prime p
}

FieldElem field_arith(const ExtField& field, const FieldElem& a, const FieldElem& b, Op op, u64 exponent) {
    if (!field.valid(a) || (op != Op::inv && op != Op::pow && !field.valid(b)))
        fail("operand is not an element of F_" + std::to_string(field.p()) + "^" + std::to_string(field.n()));
    switch (op) {
    case Op::add: return field.add(a, b);
    case Op::mul: return field.mul(a, b);
    case Op::inv: return field.inv(a);
    case Op::pow: return field.pow(a, exponent);
    }
    fail("unknown field operation");
}

FieldElem frobenius_elem(const ExtField& field, const FieldElem& a) { return field.frobenius(a); }

ZechTables::ZechTables(const ExtField& field) : order_(field.order()) {
    if (order_ > kMaxOrder) fail("field too large for log tables");
    const u64 q = order_;
    const auto factors = distinct_prime_factors(q - 1);
    generator_ = 0;
    for (u64 code = 1; code < q && generator_ == 0; ++code) {
        const FieldElem g = field.from_code(code);
        bool primitive = true;
        for (u64 r : factors) {
            if (field.pow(g, (q - 1) / r) == field.one()) {
                primitive = false;
                break;
            }
        }
        if (primitive) generator_ = code;
    }
    if (q == 2) generator_ = 1;
    exp_.resize(q - 1);
    log_.assign(q, zero());
    const FieldElem g = field.from_code(generator_);
    FieldElem acc = field.one();
    for (u64 i = 0; i + 1 < q; ++i) {
        const u64 c = field.code(acc);
        exp_[i] = c;
        log_[c] = static_cast<Log>(i);
        acc = field.mul(acc, g);
    }
    const u64 p = field.p();
    zech_.resize(q - 1);
    for (u64 i = 0; i + 1 < q; ++i) {
        const u64 c = exp_[i];
        const u64 plus_one = (c % p == p - 1) ? c - (p - 1) : c + 1;
        zech_[i] = log_[plus_one];
    }
}

} // namespace dynlab::ffield
