#pragma once

#include <cstdint>
#include <vector>

// Exact arithmetic in F_p and F_{p^n} = F_p[x]/(m(x)).
namespace dynlab::ffield {

using u64 = std::uint64_t;

// Polynomials over F_p with ascending coefficients in [0, p); zero is empty.
using ModPoly = std::vector<u64>;

inline constexpr int kMaxDegree = 16;
inline constexpr u64 kMaxOrder = u64{1} << 40;

bool is_prime(u64 n);

u64 mul_mod(u64 a, u64 b, u64 p);
u64 pow_mod(u64 a, u64 e, u64 p);
u64 inv_mod(u64 a, u64 p);

class PrimeField {
public:
    explicit PrimeField(u64 p);
    u64 p() const noexcept { return p_; }

private:
    u64 p_;
};

// A field element in the power basis 1, x, ..., x^{n-1}.
struct FieldElem {
    std::vector<u64> coeffs;
    friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

enum class Op { add, mul, inv, pow };

class ExtField {
public:
    // Takes the modulus as given after checking irreducibility.
    ExtField(u64 p, ModPoly modulus);

    u64 p() const noexcept { return p_; }
    int n() const noexcept { return n_; }
    u64 order() const noexcept { return order_; }
    const ModPoly& modulus() const noexcept { return modulus_; }

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem from_prime(u64 c) const;
    // Element x (the class of the indeterminate); equals the constant for n = 1.
    FieldElem generator_x() const;
    // Digits base p, coefficient 0 least significant.
    FieldElem from_code(u64 code) const;
    u64 code(const FieldElem& a) const;

    bool is_zero(const FieldElem& a) const;
    FieldElem add(const FieldElem& a, const FieldElem& b) const;
    FieldElem sub(const FieldElem& a, const FieldElem& b) const;
    FieldElem neg(const FieldElem& a) const;
    FieldElem mul(const FieldElem& a, const FieldElem& b) const;
    FieldElem pow(const FieldElem& a, u64 e) const;
    // Throws DomainError for a = 0.
    FieldElem inv(const FieldElem& a) const;
    // a -> a^p
    FieldElem frobenius(const FieldElem& a) const;

    bool valid(const FieldElem& a) const;

private:
    u64 p_;
    int n_;
    u64 order_;
    ModPoly modulus_;
};

// Lexicographically smallest monic irreducible of degree n, comparing
// coefficients from x^{n-1} down to x^0.
ExtField build_extension(u64 p, int n);

FieldElem field_arith(const ExtField& field, const FieldElem& a, const FieldElem& b, Op op, u64 exponent = 0);
FieldElem frobenius_elem(const ExtField& field, const FieldElem& a);

// Polynomial helpers over F_p.
void trim(ModPoly& f);
int degree(const ModPoly& f);
ModPoly poly_mod(const ModPoly& a, const ModPoly& m, u64 p);
ModPoly poly_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, u64 p);
ModPoly poly_powmod(const ModPoly& a, u64 e, const ModPoly& m, u64 p);
ModPoly poly_gcd(ModPoly a, ModPoly b, u64 p);
ModPoly poly_derivative(const ModPoly& f, u64 p);
bool is_irreducible(const ModPoly& f, u64 p);

// Discrete-log tables for small fields: nonzero elements are stored as
// exponents of a primitive element g, zero as the sentinel order() - 1.
// Addition uses the Zech logarithm Z(k) = log(1 + g^k).
class ZechTables {
public:
    static constexpr u64 kMaxOrder = u64{1} << 23;
    using Log = std::uint32_t;

    explicit ZechTables(const ExtField& field);

    u64 order() const noexcept { return order_; }
    Log zero() const noexcept { return static_cast<Log>(order_ - 1); }
    Log one() const noexcept { return 0; }
    u64 generator_code() const noexcept { return generator_; }

    Log log_of(u64 code) const { return log_[code]; }
    u64 code_of(Log a) const { return a == zero() ? 0 : exp_[a]; }

    Log mul(Log a, Log b) const {
        if (a == zero() || b == zero()) return zero();
        const u64 s = u64{a} + b;
        return static_cast<Log>(s >= order_ - 1 ? s - (order_ - 1) : s);
    }
    Log add(Log a, Log b) const {
        if (a == zero()) return b;
        if (b == zero()) return a;
        const u64 d = b >= a ? b - a : b + (order_ - 1) - a;
        const Log z = zech_[d];
        if (z == zero()) return zero();
        const u64 s = u64{a} + z;
        return static_cast<Log>(s >= order_ - 1 ? s - (order_ - 1) : s);
    }
    Log pow(Log a, u64 e) const {
        if (e == 0) return one();
        if (a == zero()) return zero();
        return static_cast<Log>((static_cast<unsigned __int128>(a) * e) % (order_ - 1));
    }
    // Quadratic character in odd characteristic: +1, -1, or 0.
    int chi(Log a) const {
        if (a == zero()) return 0;
        return (a % 2 == 0) ? 1 : -1;
    }

private:
    u64 order_;
    u64 generator_;
    std::vector<u64> exp_;
    std::vector<Log> log_;
    std::vector<Log> zech_;
};

} // namespace dynlab::ffield
