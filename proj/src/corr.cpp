#include "dynlab/corr.hpp"

#include "dynlab/error.hpp"

#include <algorithm>
#include <string>

namespace dynlab::corr {

namespace {

constexpr const char* kModule = "corr";

struct Summand {
    int i = 0; // degree in the first factor
    std::size_t offset = 0;
    std::size_t size = 0;
};

std::vector<Summand> summands(const std::vector<int>& rg, const std::vector<int>& rh, int p) {
    const int k1 = static_cast<int>(rg.size()) - 1;
    const int k2 = static_cast<int>(rh.size()) - 1;
    std::vector<Summand> out;
    std::size_t offset = 0;
    for (int i = std::max(0, p - k2); i <= std::min(p, k1); ++i) {
        const std::size_t size = static_cast<std::size_t>(rg[i]) * static_cast<std::size_t>(rh[p - i]);
        out.push_back({i, offset, size});
        offset += size;
    }
    return out;
}

void place(RatMatrix& target, const RatMatrix& block, std::size_t r0, std::size_t c0) {
    for (std::size_t r = 0; r < block.rows(); ++r)
        for (std::size_t c = 0; c < block.cols(); ++c) target(r0 + r, c0 + c) = block(r, c);
}

void check_degree(const GradedMatrixCorr& c, int i, const RatVector& v) {
    if (i < 0 || i > c.lattice.k) throw DomainError(kModule, "degree " + std::to_string(i) + " out of range");
    if (static_cast<int>(v.size()) != c.lattice.ranks[i])
        throw DomainError(kModule, "vector of length " + std::to_string(v.size()) + " is not in N^" + std::to_string(i));
}

void check_actions(const cyclelattice::GradedLattice& lattice, const std::vector<RatMatrix>& action, const std::string& what) {
    if (static_cast<int>(action.size()) != lattice.k + 1)
        throw DomainError(kModule, what + " must have k+1 matrices");
    for (int i = 0; i <= lattice.k; ++i) {
        const auto r = static_cast<std::size_t>(lattice.ranks[i]);
        if (action[i].rows() != r || action[i].cols() != r)
            throw DomainError(kModule, what + " on N^" + std::to_string(i) + " has the wrong shape");
    }
}

} // namespace

MonomialMap MonomialMap::make(int k, std::vector<std::vector<BigInt>> exps) {
    if (k < 0) throw DomainError(kModule, "negative dimension");
    const auto n = static_cast<std::size_t>(k) + 1;
    if (exps.size() != n) throw DomainError(kModule, "monomial map on P^k needs k+1 components");
    for (const auto& e : exps) {
        if (e.size() != n) throw DomainError(kModule, "exponent vector length must be k+1");
        for (const auto& x : e)
            if (x < 0) throw DomainError(kModule, "negative exponent");
    }
    for (std::size_t j = 0; j < n; ++j) {
        BigInt low = exps[0][j];
        for (const auto& e : exps) low = std::min(low, e[j]);
        if (low != 0)
            for (auto& e : exps) e[j] -= low;
    }
    MonomialMap f;
    f.k = k;
    f.degree = 0;
    for (const auto& x : exps[0]) f.degree += x;
    for (const auto& e : exps) {
        BigInt sum = 0;
        for (const auto& x : e) sum += x;
        if (sum != f.degree) throw DomainError(kModule, "components have different degrees");
    }
    f.exps = std::move(exps);
    f.dominant = k == 0 || determinant(torus_matrix(f)) != 0;
    return f;
}

MonomialMap MonomialMap::identity(int k) {
    std::vector<std::vector<BigInt>> exps(k + 1, std::vector<BigInt>(k + 1, 0));
    for (int i = 0; i <= k; ++i) exps[i][i] = 1;
    return make(k, std::move(exps));
}

MonomialMap MonomialMap::from_torus_matrix(const RatMatrix& a) {
    if (!a.square()) throw DomainError(kModule, "torus matrix must be square");
    const std::size_t k = a.rows();
    std::vector<std::vector<BigInt>> rows(k + 1, std::vector<BigInt>(k + 1, 0));
    for (std::size_t i = 0; i < k; ++i) {
        BigInt sum = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (denominator(a(i, j)) != 1) throw DomainError(kModule, "torus matrix must be integral");
            rows[i][j] = numerator(a(i, j));
            sum += rows[i][j];
        }
        rows[i][k] = -sum;
    }
    for (std::size_t j = 0; j <= k; ++j) {
        BigInt low = 0;
        for (const auto& r : rows) low = std::min(low, r[j]);
        for (auto& r : rows) r[j] -= low;
    }
    return make(static_cast<int>(k), std::move(rows));
}

MonomialMap compose_monomial(const MonomialMap& f, const MonomialMap& g) {
    if (f.k != g.k) throw DomainError(kModule, "cannot compose maps on P^" + std::to_string(f.k) + " and P^" + std::to_string(g.k));
    const auto n = static_cast<std::size_t>(f.k) + 1;
    std::vector<std::vector<BigInt>> product(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (f.exps[i][j] == 0) continue;
            for (std::size_t l = 0; l < n; ++l) product[i][l] += f.exps[i][j] * g.exps[j][l];
        }
    return MonomialMap::make(f.k, std::move(product));
}

DegreeSequence iterate_degrees(const MonomialMap& f, int n_max) {
    if (n_max < 1 || n_max > kMaxIterations)
        throw DomainError(kModule, "n_max must lie in [1, " + std::to_string(kMaxIterations) + "]");
    DegreeSequence seq;
    if (!f.dominant) {
        seq.failed_at = 1;
        return seq;
    }
    MonomialMap iterate = f;
    seq.degs.push_back(iterate.degree);
    for (int n = 2; n <= n_max; ++n) {
        iterate = compose_monomial(f, iterate);
        if (!iterate.dominant) {
            seq.failed_at = n;
            break;
        }
        seq.degs.push_back(iterate.degree);
    }
    return seq;
}

RatMatrix torus_matrix(const MonomialMap& f) {
    const auto k = static_cast<std::size_t>(f.k);
    RatMatrix a(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) a(i, j) = Rational(f.exps[i][j] - f.exps[k][j]);
    return a;
}

void GradedMatrixCorr::validate() const {
    lattice.validate();
    check_actions(lattice, action, "action");
    for (std::size_t n = 0; n < per_n.size(); ++n) check_actions(lattice, per_n[n], "action of iterate " + std::to_string(n + 1));
    if (!functorial && per_n.empty()) throw DomainError(kModule, "non-functorial model needs per-iterate actions");
}

RatVector pullback_class(const GradedMatrixCorr& c, int i, const RatVector& v) {
    check_degree(c, i, v);
    return c.action[i] * v;
}

RatMatrix pushforward_matrix(const GradedMatrixCorr& c, int i) {
    if (i < 0 || i > c.lattice.k) throw DomainError(kModule, "degree " + std::to_string(i) + " out of range");
    const int j = c.lattice.k - i;
    const RatMatrix& p = c.lattice.pairings[j];
    const auto p_inv = inverse(p);
    if (!p_inv) throw DegenerateForm(kModule, "pairing " + std::to_string(j) + " is degenerate");
    return *p_inv * (c.action[j].transpose() * p);
}

RatVector pushforward_class(const GradedMatrixCorr& c, int i, const RatVector& v) {
    check_degree(c, i, v);
    return pushforward_matrix(c, i) * v;
}

GradedMatrixCorr identity_model(const cyclelattice::GradedLattice& lattice) {
    lattice.validate();
    GradedMatrixCorr c;
    c.lattice = lattice;
    for (int r : lattice.ranks) c.action.push_back(RatMatrix::identity(static_cast<std::size_t>(r)));
    return c;
}

GradedMatrixCorr frobenius_model(const BigInt& q, int k) {
    if (q < 2) throw DomainError(kModule, "frobenius model needs q >= 2");
    if (k < 1) throw DomainError(kModule, "frobenius model needs k >= 1");
    GradedMatrixCorr c;
    c.lattice.k = k;
    c.lattice.ranks.assign(k + 1, 1);
    c.lattice.pairings.assign(k + 1, RatMatrix{{1}});
    BigInt power = 1;
    for (int i = 0; i <= k; ++i) {
        c.action.push_back(RatMatrix{{Rational(power)}});
        power *= q;
    }
    return c;
}

GradedMatrixCorr product_model(const GradedMatrixCorr& g, const GradedMatrixCorr& h) {
    if (!g.functorial || !h.functorial) throw DomainError(kModule, "product model needs functorial factors");
    const int k1 = g.lattice.k;
    const int k2 = h.lattice.k;
    const int k = k1 + k2;
    GradedMatrixCorr f;
    f.lattice.k = k;
    std::vector<std::vector<Summand>> parts(k + 1);
    for (int p = 0; p <= k; ++p) {
        parts[p] = summands(g.lattice.ranks, h.lattice.ranks, p);
        std::size_t total = 0;
        for (const auto& s : parts[p]) total += s.size;
        f.lattice.ranks.push_back(static_cast<int>(total));
    }
    for (int p = 0; p <= k; ++p) {
        const auto rows = static_cast<std::size_t>(f.lattice.ranks[p]);
        const auto cols = static_cast<std::size_t>(f.lattice.ranks[k - p]);
        RatMatrix pairing(rows, cols);
        RatMatrix action(rows, rows);
        for (const auto& s : parts[p]) {
            const int j = p - s.i;
            place(action, kronecker(g.action[s.i], h.action[j]), s.offset, s.offset);
            const auto partner = std::find_if(parts[k - p].begin(), parts[k - p].end(),
                                              [&](const Summand& t) { return t.i == k1 - s.i; });
            place(pairing, kronecker(g.lattice.pairings[s.i], h.lattice.pairings[j]), s.offset, partner->offset);
        }
        f.lattice.pairings.push_back(std::move(pairing));
        f.action.push_back(std::move(action));
    }
    return f;
}

} // namespace dynlab::corr
