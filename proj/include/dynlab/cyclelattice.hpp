#pragma once

#include "dynlab/linalg.hpp"
#include "dynlab/verdict.hpp"

#include <vector>

// Exact rational models of numerical cycle groups N^i and of middle-degree
// cohomology with its intersection pairing.
namespace dynlab::cyclelattice {

struct GradedLattice {
    int k = 0;                       // dimension of the modeled variety
    std::vector<int> ranks;          // rank of N^i, i = 0..k
    std::vector<RatMatrix> pairings; // pairings[i]: N^i x N^{k-i} -> Q

    // Throws DomainError / DegenerateForm if the invariants fail.
    void validate() const;
};

struct MiddlePairing {
    int dim = 0;  // even ambient dimension
    RatMatrix gram;
    std::vector<RatVector> alg_span;

    void validate() const;
};

struct Decomposition {
    RatVector x_alg;
    RatVector x_tr;
};

// Gram matrix of the pairing restricted to span(xs): R_ij = <x_i, x_j>.
RatMatrix restricted_gram(const RatMatrix& gram, const std::vector<RatVector>& xs);

// PASS iff det(restricted Gram) != 0. Non-symmetric gram throws DomainError.
Verdict nondegeneracy_check(const RatMatrix& gram, const std::vector<RatVector>& span);

// y_j in span(xs) with <x_i, y_j> = delta_ij, via the inverse of the
// restricted Gram matrix. Throws DegenerateForm naming a null combination.
std::vector<RatVector> dual_basis(const RatMatrix& gram, const std::vector<RatVector>& xs);

// Gram-Schmidt without normalization. An isotropic candidate is skipped in
// favor of the next non-isotropic vector; if all remaining vectors are
// isotropic, the first pair (a < b) with <v_a, v_b> != 0 is merged as
// v_a + v_b. Output order is therefore deterministic.
std::vector<RatVector> orthogonalize(const std::vector<RatVector>& basis, const RatMatrix& gram);

// x_alg = sum <x, a_i> / <a_i, a_i> * a_i over an orthogonal basis of alg_span.
Decomposition decompose(const RatVector& x, const MiddlePairing& mp);
RatVector tau(const RatVector& x, const MiddlePairing& mp);

} // namespace dynlab::cyclelattice
