#include "dynlab/linalg.hpp"

#include "dynlab/error.hpp"

#include <utility>

namespace dynlab {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw DomainError("linalg", what);
}

// Reduced row echelon form in place; returns the pivot column of each pivot row.
std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pick = row;
        while (pick < m.rows() && m(pick, col) == 0) ++pick;
        if (pick == m.rows()) continue;
        if (pick != row) {
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pick, c), m(row, c));
        }
        const Rational inv = 1 / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col) == 0) continue;
            const Rational factor = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= factor * m(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

RatMatrix::RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        require(r.size() == cols_, "ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_columns(const std::vector<RatVector>& columns, std::size_t dim) {
    RatMatrix m(dim, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        require(columns[c].size() == dim, "column length mismatch");
        for (std::size_t r = 0; r < dim; ++r) m(r, c) = columns[c][r];
    }
    return m;
}

RatVector RatMatrix::column(std::size_t c) const {
    RatVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

bool RatMatrix::symmetric() const {
    if (!square()) return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r + 1; c < cols_; ++c)
            if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    require(a.cols() == b.rows(), "matrix product shape mismatch");
    RatMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(r, k) == 0) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += a(r, k) * b(k, c);
        }
    return out;
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix sum shape mismatch");
    RatMatrix out = a;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) += b(r, c);
    return out;
}

RatMatrix operator*(const Rational& s, const RatMatrix& m) {
    RatMatrix out = m;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) *= s;
    return out;
}

RatVector operator*(const RatMatrix& m, const RatVector& v) {
    require(m.cols() == v.size(), "matrix-vector shape mismatch");
    RatVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * v[c];
    return out;
}

RatVector operator+(const RatVector& a, const RatVector& b) {
    require(a.size() == b.size(), "vector length mismatch");
    RatVector out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
    return out;
}

RatVector operator-(const RatVector& a, const RatVector& b) {
    require(a.size() == b.size(), "vector length mismatch");
    RatVector out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
    return out;
}

RatVector operator*(const Rational& s, const RatVector& v) {
    RatVector out = v;
    for (auto& x : out) x *= s;
    return out;
}

Rational bilinear(const RatVector& x, const RatMatrix& gram, const RatVector& y) {
    require(gram.rows() == x.size() && gram.cols() == y.size(), "bilinear form shape mismatch");
    Rational sum = 0;
    for (std::size_t r = 0; r < x.size(); ++r) {
        if (x[r] == 0) continue;
        Rational row = 0;
        for (std::size_t c = 0; c < y.size(); ++c) row += gram(r, c) * y[c];
        sum += x[r] * row;
    }
    return sum;
}

Rational determinant(RatMatrix m) {
    require(m.square(), "determinant of non-square matrix");
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pick = col;
        while (pick < n && m(pick, col) == 0) ++pick;
        if (pick == n) return 0;
        if (pick != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(pick, c), m(col, c));
            det = -det;
        }
        det *= m(col, col);
        const Rational inv = 1 / m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m(r, col) == 0) continue;
            const Rational factor = m(r, col) * inv;
            for (std::size_t c = col; c < n; ++c) m(r, c) -= factor * m(col, c);
        }
    }
    return det;
}

std::size_t rank(RatMatrix m) { return rref(m).size(); }

std::optional<RatMatrix> inverse(const RatMatrix& m) {
    require(m.square(), "inverse of non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = 1;
    }
    const auto pivots = rref(aug);
    if (pivots.size() < n || pivots.back() >= n) return std::nullopt;
    RatMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out(r, c) = aug(r, n + c);
    return out;
}

std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b) {
    require(m.rows() == b.size(), "solve: rhs length mismatch");
    RatMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
        aug(r, m.cols()) = b[r];
    }
    const auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    RatVector x(m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols());
    return x;
}

std::vector<RatVector> nullspace(const RatMatrix& m) {
    RatMatrix r = m;
    const auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RatVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RatVector v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

RatMatrix kronecker(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac)
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc)
                    out(ar * b.rows() + br, ac * b.cols() + bc) = a(ar, ac) * b(br, bc);
    return out;
}

Rational trace(const RatMatrix& m) {
    require(m.square(), "trace of non-square matrix");
    Rational t = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

std::vector<Rational> charpoly(const RatMatrix& m) {
    // Faddeev-LeVerrier, exact over Q.
    require(m.square(), "charpoly of non-square matrix");
    const std::size_t n = m.rows();
    std::vector<Rational> coeffs(n + 1);
    coeffs[n] = 1;
    RatMatrix acc(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        RatMatrix next = m * acc;
        for (std::size_t i = 0; i < n; ++i) next(i, i) += coeffs[n - k + 1];
        acc = std::move(next);
        coeffs[n - k] = -trace(m * acc) / Rational(static_cast<long long>(k));
    }
    return coeffs;
}

} // namespace dynlab
