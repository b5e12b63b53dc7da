#include "qtoric/matrix.hpp"

namespace qtoric {

Matrix Matrix::identity(size_t n)
{
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, size_t cols)
{
    if (!rows.empty())
        cols = rows[0].size();
    Matrix m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw Error(Errc::InvalidInput, "ragged matrix rows");
        for (size_t j = 0; j < cols; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, size_t rows)
{
    return from_rows(cols, rows).transpose();
}

Vector Matrix::row(size_t i) const
{
    return Vector(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

Vector Matrix::col(size_t j) const
{
    Vector v(rows_);
    for (size_t i = 0; i < rows_; ++i)
        v[i] = (*this)(i, j);
    return v;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::is_integral() const
{
    for (const auto& x : a_)
        if (!x.is_integer())
            return false;
    return true;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols_ != b.rows_)
        throw Error(Errc::DomainMismatch, "matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero())
                continue;
            for (size_t j = 0; j < b.cols_; ++j)
                if (!b(k, j).is_zero())
                    r(i, j) += x * b(k, j);
        }
    return r;
}

Vector operator*(const Matrix& a, const Vector& v)
{
    if (a.cols_ != v.size())
        throw Error(Errc::DomainMismatch, "matrix-vector shape mismatch");
    Vector r(a.rows_);
    for (size_t i = 0; i < a.rows_; ++i)
        for (size_t k = 0; k < a.cols_; ++k)
            if (!a(i, k).is_zero() && !v[k].is_zero())
                r[i] += a(i, k) * v[k];
    return r;
}

Matrix operator+(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw Error(Errc::DomainMismatch, "matrix sum shape mismatch");
    Matrix r = a;
    for (size_t k = 0; k < r.a_.size(); ++k)
        r.a_[k] += b.a_[k];
    return r;
}

Matrix operator-(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw Error(Errc::DomainMismatch, "matrix difference shape mismatch");
    Matrix r = a;
    for (size_t k = 0; k < r.a_.size(); ++k)
        r.a_[k] -= b.a_[k];
    return r;
}

bool operator==(const Matrix& a, const Matrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

std::string Matrix::str() const
{
    std::string s = "[";
    for (size_t i = 0; i < rows_; ++i) {
        s += i ? ", [" : "[";
        for (size_t j = 0; j < cols_; ++j)
            s += (j ? ", " : "") + (*this)(i, j).str();
        s += "]";
    }
    return s + "]";
}

Vector operator+(const Vector& a, const Vector& b)
{
    Vector r = a;
    for (size_t i = 0; i < r.size(); ++i)
        r[i] += b.at(i);
    return r;
}

Vector operator-(const Vector& a, const Vector& b)
{
    Vector r = a;
    for (size_t i = 0; i < r.size(); ++i)
        r[i] -= b.at(i);
    return r;
}

Vector operator*(const Scalar& c, const Vector& v)
{
    Vector r = v;
    for (auto& x : r)
        x = c * x;
    return r;
}

Scalar dot(const Vector& a, const Vector& b)
{
    Scalar s;
    for (size_t i = 0; i < a.size(); ++i)
        s += a[i] * b.at(i);
    return s;
}

bool is_zero(const Vector& v)
{
    for (const auto& x : v)
        if (!x.is_zero())
            return false;
    return true;
}

Vector unit_vector(size_t n, size_t i)
{
    Vector v(n);
    v.at(i) = 1;
    return v;
}

Echelon rref(const Matrix& m)
{
    Echelon e{m, {}};
    Matrix& a = e.reduced;
    size_t r = 0;
    for (size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        size_t p = r;
        while (p < a.rows() && a(p, c).is_zero())
            ++p;
        if (p == a.rows())
            continue;
        if (p != r)
            for (size_t j = 0; j < a.cols(); ++j)
                std::swap(a(p, j), a(r, j));
        Scalar inv = Scalar(1) / a(r, c);
        for (size_t j = c; j < a.cols(); ++j)
            if (!a(r, j).is_zero())
                a(r, j) = a(r, j) * inv;
        for (size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c).is_zero())
                continue;
            Scalar f = a(i, c);
            for (size_t j = c; j < a.cols(); ++j)
                if (!a(r, j).is_zero())
                    a(i, j) -= f * a(r, j);
        }
        e.pivots.push_back(c);
        ++r;
    }
    return e;
}

size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

size_t rank(const std::vector<Vector>& vectors)
{
    if (vectors.empty())
        return 0;
    return rank(Matrix::from_rows(vectors));
}

Scalar determinant(const Matrix& m)
{
    if (!m.is_square())
        throw Error(Errc::DomainMismatch, "determinant of a non-square matrix");
    Matrix a = m;
    Scalar det(1);
    size_t n = a.rows();
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a(p, c).is_zero())
            ++p;
        if (p == n)
            return Scalar();
        if (p != c) {
            for (size_t j = 0; j < n; ++j)
                std::swap(a(p, j), a(c, j));
            det = -det;
        }
        det *= a(c, c);
        Scalar inv = Scalar(1) / a(c, c);
        for (size_t i = c + 1; i < n; ++i) {
            if (a(i, c).is_zero())
                continue;
            Scalar f = a(i, c) * inv;
            for (size_t j = c; j < n; ++j)
                if (!a(c, j).is_zero())
                    a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

Matrix inverse(const Matrix& m)
{
    if (!m.is_square())
        throw Error(Errc::Singular, "inverse of a non-square matrix");
    size_t n = m.rows();
    Matrix aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    Echelon e = rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
        throw Error(Errc::Singular, "matrix has zero determinant");
    Matrix inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            inv(i, j) = e.reduced(i, n + j);
    return inv;
}

std::vector<Vector> kernel_basis(const Matrix& m)
{
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : e.pivots)
        is_pivot[p] = true;
    std::vector<Vector> basis;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Vector k(m.cols());
        k[f] = 1;
        for (size_t i = 0; i < e.pivots.size(); ++i)
            k[e.pivots[i]] = -e.reduced(i, f);
        basis.push_back(std::move(k));
    }
    return basis;
}

std::optional<Vector> solve(const Matrix& m, const Vector& b)
{
    if (b.size() != m.rows())
        throw Error(Errc::DomainMismatch, "solve: right-hand side length mismatch");
    Matrix aug(m.rows(), m.cols() + 1);
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j)
            aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    Echelon e = rref(aug);
    if (!e.pivots.empty() && e.pivots.back() == m.cols())
        return std::nullopt;
    Vector x(m.cols());
    for (size_t i = 0; i < e.pivots.size(); ++i)
        x[e.pivots[i]] = e.reduced(i, m.cols());
    return x;
}

} // namespace qtoric
