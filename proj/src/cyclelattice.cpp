#include "dynlab/cyclelattice.hpp"

#include "dynlab/error.hpp"

#include <string>

namespace dynlab::cyclelattice {

namespace {

constexpr const char* kModule = "cyclelattice";

void require_symmetric(const RatMatrix& gram) {
    if (!gram.square()) throw DomainError(kModule, "gram matrix is not square");
    if (!gram.symmetric()) throw DomainError(kModule, "gram matrix is not symmetric");
}

void require_dims(const RatMatrix& gram, const std::vector<RatVector>& xs) {
    for (const auto& x : xs)
        if (x.size() != gram.rows())
            throw DomainError(kModule, "vector of length " + std::to_string(x.size()) + " against gram of size " +
                                           std::to_string(gram.rows()));
}

std::string describe_combination(const RatVector& c) {
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += " + ";
        out += "(" + to_string(c[i]) + ")*x" + std::to_string(i + 1);
    }
    return out;
}

Rational pair(const RatMatrix& gram, const RatVector& a, const RatVector& b) { return bilinear(a, gram, b); }

} // namespace

void GradedLattice::validate() const {
    if (k < 0) throw DomainError(kModule, "negative dimension");
    if (static_cast<int>(ranks.size()) != k + 1) throw DomainError(kModule, "ranks must have k+1 entries");
    if (static_cast<int>(pairings.size()) != k + 1) throw DomainError(kModule, "pairings must have k+1 entries");
    for (int i = 0; i <= k; ++i) {
        const auto& p = pairings[i];
        if (ranks[i] != ranks[k - i])
            throw DomainError(kModule, "rank of N^" + std::to_string(i) + " differs from rank of N^" + std::to_string(k - i));
        if (static_cast<int>(p.rows()) != ranks[i] || static_cast<int>(p.cols()) != ranks[k - i])
            throw DomainError(kModule, "pairing " + std::to_string(i) + " has the wrong shape");
        if (!(p == pairings[k - i].transpose()))
            throw DomainError(kModule, "pairing " + std::to_string(i) + " is not the transpose of pairing " +
                                           std::to_string(k - i));
        if (determinant(p) == 0) throw DegenerateForm(kModule, "pairing " + std::to_string(i) + " is degenerate");
    }
}

void MiddlePairing::validate() const {
    if (dim < 0 || dim % 2 != 0) throw DomainError(kModule, "middle pairing dimension must be even");
    require_symmetric(gram);
    require_dims(gram, alg_span);
    if (determinant(gram) == 0) throw DegenerateForm(kModule, "gram matrix is degenerate");
    if (!alg_span.empty() && rank(RatMatrix::from_columns(alg_span, gram.rows())) != alg_span.size())
        throw DomainError(kModule, "alg_span vectors are linearly dependent");
}

RatMatrix restricted_gram(const RatMatrix& gram, const std::vector<RatVector>& xs) {
    require_dims(gram, xs);
    RatMatrix r(xs.size(), xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) r(i, j) = pair(gram, xs[i], xs[j]);
    return r;
}

Verdict nondegeneracy_check(const RatMatrix& gram, const std::vector<RatVector>& span) {
    require_symmetric(gram);
    return verdict_of(determinant(restricted_gram(gram, span)) != 0);
}

std::vector<RatVector> dual_basis(const RatMatrix& gram, const std::vector<RatVector>& xs) {
    require_symmetric(gram);
    const RatMatrix r = restricted_gram(gram, xs);
    const auto inv = inverse(r);
    if (!inv) {
        const auto null = nullspace(r);
        throw DegenerateForm(kModule, "restricted pairing is degenerate: " + describe_combination(null.front()) +
                                          " pairs to zero with the span");
    }
    // y_j = sum_l (R^{-1})_{lj} x_l, so <x_i, y_j> = (R R^{-1})_{ij}.
    std::vector<RatVector> ys;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        RatVector y(gram.rows());
        for (std::size_t l = 0; l < xs.size(); ++l) {
            if ((*inv)(l, j) == 0) continue;
            y = y + (*inv)(l, j) * xs[l];
        }
        ys.push_back(std::move(y));
    }
    return ys;
}

std::vector<RatVector> orthogonalize(const std::vector<RatVector>& basis, const RatMatrix& gram) {
    require_symmetric(gram);
    require_dims(gram, basis);
    std::vector<RatVector> rest = basis;
    std::vector<RatVector> out;
    while (!rest.empty()) {
        std::size_t pivot = rest.size();
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (pair(gram, rest[i], rest[i]) != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot == rest.size()) {
            // Every remaining vector is isotropic: merge the first pairing couple.
            for (std::size_t a = 0; a < rest.size() && pivot == rest.size(); ++a)
                for (std::size_t b = a + 1; b < rest.size(); ++b)
                    if (pair(gram, rest[a], rest[b]) != 0) {
                        rest[a] = rest[a] + rest[b];
                        pivot = a;
                        break;
                    }
            if (pivot == rest.size())
                throw DegenerateForm(kModule, "remaining span is totally isotropic; restricted pairing is degenerate");
        }
        const RatVector a = rest[pivot];
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pivot));
        const Rational self = pair(gram, a, a);
        for (auto& v : rest) {
            const Rational c = pair(gram, v, a) / self;
            if (c != 0) v = v - c * a;
        }
        out.push_back(a);
    }
    return out;
}

Decomposition decompose(const RatVector& x, const MiddlePairing& mp) {
    require_dims(mp.gram, {x});
    const auto alphas = orthogonalize(mp.alg_span, mp.gram);
    Decomposition d;
    d.x_alg.assign(x.size(), Rational(0));
    for (const auto& a : alphas) {
        const Rational c = pair(mp.gram, x, a) / pair(mp.gram, a, a);
        if (c != 0) d.x_alg = d.x_alg + c * a;
    }
    d.x_tr = x - d.x_alg;
    return d;
}

RatVector tau(const RatVector& x, const MiddlePairing& mp) { return decompose(x, mp).x_alg; }

} // namespace dynlab::cyclelattice
