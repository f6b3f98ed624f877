#pragma once

#include "dynlab/cyclelattice.hpp"
#include "dynlab/linalg.hpp"

#include <optional>
#include <vector>

// Concrete correspondences: monomial self-maps of P^k and graded matrix
// actions on lattice models.
namespace dynlab::corr {

// f = [x^{e_0} : ... : x^{e_k}] on P^k. exps[i] is the exponent vector of the
// i-th component.
struct MonomialMap {
    int k = 0;
    std::vector<std::vector<BigInt>> exps;
    BigInt degree;
    bool dominant = true;

    // Validates non-negativity and homogeneity, divides out the common
    // monomial factor and records dominance.
    static MonomialMap make(int k, std::vector<std::vector<BigInt>> exps);
    static MonomialMap identity(int k);
    // Homogeneous map realizing the torus action u -> u^A.
    static MonomialMap from_torus_matrix(const RatMatrix& a);

    friend bool operator==(const MonomialMap& a, const MonomialMap& b) { return a.k == b.k && a.exps == b.exps; }
};

// (f o g)(x) = f(g(x)): exponent matrices multiply as F * G, then the common
// factor is removed. A non-dominant result comes back with dominant = false.
MonomialMap compose_monomial(const MonomialMap& f, const MonomialMap& g);

struct DegreeSequence {
    std::vector<BigInt> degs;     // degs[n-1] = deg(f^n)
    std::optional<int> failed_at; // first n whose iterate was not dominant
};

inline constexpr int kMaxIterations = 64;

DegreeSequence iterate_degrees(const MonomialMap& f, int n_max);

// Dehomogenize by the last coordinate, u_j = x_j / x_k. Then f acts on the
// torus by u -> u^A with A[i][j] = e_i[j] - e_k[j] for i, j < k, and
// torus_matrix(f o g) = torus_matrix(f) * torus_matrix(g).
RatMatrix torus_matrix(const MonomialMap& f);

struct GradedMatrixCorr {
    cyclelattice::GradedLattice lattice;
    std::vector<RatMatrix> action; // action[i] on N^i (pullback)
    bool functorial = true;
    // Non-functorial models: per_n[n-1][i] is (f^n)^* on N^i.
    std::vector<std::vector<RatMatrix>> per_n;

    void validate() const;
};

RatVector pullback_class(const GradedMatrixCorr& c, int i, const RatVector& v);
// Adjoint of the pullback under the pairing: <f^* a, b> = <a, f_* b> for
// a in N^{k-i}, b in N^i.
RatVector pushforward_class(const GradedMatrixCorr& c, int i, const RatVector& v);
RatMatrix pushforward_matrix(const GradedMatrixCorr& c, int i);

GradedMatrixCorr identity_model(const cyclelattice::GradedLattice& lattice);
GradedMatrixCorr frobenius_model(const BigInt& q, int k);
// Kunneth model of g x h. Summands of N^p are ordered by increasing i in
// N^i(Y) (x) N^{p-i}(Z), Kronecker order inside each summand.
GradedMatrixCorr product_model(const GradedMatrixCorr& g, const GradedMatrixCorr& h);

} // namespace dynlab::corr
