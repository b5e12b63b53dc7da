#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtoric/scalar.hpp"

namespace qtoric {

using Vector = std::vector<Scalar>;

class Matrix {
  public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    static Matrix identity(size_t n);
    static Matrix from_rows(const std::vector<Vector>& rows, size_t cols = 0);
    static Matrix from_columns(const std::vector<Vector>& cols, size_t rows = 0);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Scalar& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Scalar& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    Vector row(size_t i) const;
    Vector col(size_t j) const;
    Matrix transpose() const;
    bool is_square() const { return rows_ == cols_; }
    bool is_integral() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Vector operator*(const Matrix& a, const Vector& v);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    std::string str() const;

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> a_;
};

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Scalar& c, const Vector& v);
Scalar dot(const Vector& a, const Vector& b);
bool is_zero(const Vector& v);
Vector unit_vector(size_t n, size_t i);

struct Echelon {
    Matrix reduced;              // reduced row echelon form
    std::vector<size_t> pivots;  // pivot column of each nonzero row
};

// Gaussian elimination with leftmost pivots and symbolic zero tests.
Echelon rref(const Matrix& m);
size_t rank(const Matrix& m);
size_t rank(const std::vector<Vector>& vectors);
Scalar determinant(const Matrix& m);
Matrix inverse(const Matrix& m); // throws Singular

// Right kernel basis: pivots are the leftmost independent columns and the
// free columns carry an identity block.
std::vector<Vector> kernel_basis(const Matrix& m);

// Some solution of m x = b (the one with free variables zero), if any.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

} // namespace qtoric
