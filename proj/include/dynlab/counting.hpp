#pragma once

#include "dynlab/ffield.hpp"
#include "dynlab/numeric.hpp"

#include <cstdint>
#include <string>
#include <vector>

// Point counts of varieties over F_{p^n} by exhaustive enumeration.
namespace dynlab::counting {

using ffield::u64;

enum class AmbientKind { projective, affine };

struct Ambient {
    AmbientKind kind = AmbientKind::projective;
    int dim = 0;
    // Number of coordinates: dim + 1 for projective, dim for affine.
    int coords() const { return kind == AmbientKind::projective ? dim + 1 : dim; }
};

struct Term {
    u64 coeff = 0;
    std::vector<std::uint32_t> exps;
};

using Polynomial = std::vector<Term>;

class PolySystem {
public:
    // Reduces coefficients mod p (negative inputs allowed), drops zero terms,
    // and checks exponent lengths and homogeneity in projective ambient.
    PolySystem(std::string name, u64 p, Ambient ambient, const std::vector<std::vector<std::pair<long long, std::vector<long long>>>>& polys);

    const std::string& name() const noexcept { return name_; }
    u64 p() const noexcept { return p_; }
    const Ambient& ambient() const noexcept { return ambient_; }
    const std::vector<Polynomial>& polys() const noexcept { return polys_; }

private:
    std::string name_;
    u64 p_;
    Ambient ambient_;
    std::vector<Polynomial> polys_;
};

struct CountSequence {
    BigInt q;
    std::vector<BigInt> counts; // counts[n-1] = N_n
};

struct CountOptions {
    int threads = 0;              // 0: OpenMP default
    std::uint64_t chunk = 1 << 14; // candidates per scheduling unit
};

inline constexpr std::uint64_t kCandidateGuard = 100'000'000;

// Candidate tuples visited when counting over F_{p^n}; projective spaces
// enumerate canonical representatives only.
BigInt candidate_count(const PolySystem& sys, int n);

// Parallel kernel. Throws GuardExceeded above kCandidateGuard candidates.
u64 count_points(const PolySystem& sys, int n, const CountOptions& options = {});

// Serial reference using direct polynomial-basis arithmetic; kept for testing.
u64 count_points_reference(const PolySystem& sys, int n);

CountSequence count_sequence(const PolySystem& sys, int n_max, const CountOptions& options = {});

// y^2 = f(x) over F_p, p odd, f squarefree. f ascending, coefficients in [0, p).
class HyperellipticCurve {
public:
    HyperellipticCurve(u64 p, std::vector<u64> f);

    u64 p() const noexcept { return p_; }
    const std::vector<u64>& f() const noexcept { return f_; }
    int degree() const noexcept { return static_cast<int>(f_.size()) - 1; }
    int genus() const noexcept { return (degree() - 1) / 2; }

private:
    u64 p_;
    std::vector<u64> f_;
};

// Points of the smooth model: sum_x (1 + chi(f(x))) plus 1 point at infinity
// for odd degree, 1 + chi(lead) for even degree.
u64 hyperelliptic_count(const HyperellipticCurve& curve, int n, const CountOptions& options = {});
u64 hyperelliptic_affine_count(const HyperellipticCurve& curve, int n, const CountOptions& options = {});
CountSequence hyperelliptic_sequence(const HyperellipticCurve& curve, int n_max, const CountOptions& options = {});

} // namespace dynlab::counting
