#pragma once

#include "dynlab/numeric.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace dynlab {

using RatVector = std::vector<Rational>;

// Dense row-major matrix over exact rationals.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RatMatrix identity(std::size_t n);
    static RatMatrix from_columns(const std::vector<RatVector>& columns, std::size_t dim);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RatVector column(std::size_t c) const;
    RatMatrix transpose() const;
    bool symmetric() const;

    friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const Rational& s, const RatMatrix& m);
RatVector operator*(const RatMatrix& m, const RatVector& v);

RatVector operator+(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a, const RatVector& b);
RatVector operator*(const Rational& s, const RatVector& v);

// x^T G y
Rational bilinear(const RatVector& x, const RatMatrix& gram, const RatVector& y);

Rational determinant(RatMatrix m);
std::size_t rank(RatMatrix m);
std::optional<RatMatrix> inverse(const RatMatrix& m);
std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b);
std::vector<RatVector> nullspace(const RatMatrix& m);
RatMatrix kronecker(const RatMatrix& a, const RatMatrix& b);
Rational trace(const RatMatrix& m);

// Characteristic polynomial det(T*I - M), ascending coefficients, monic.
std::vector<Rational> charpoly(const RatMatrix& m);

} // namespace dynlab
