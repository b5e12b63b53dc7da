#include "qtoric/integer.hpp"

#include <map>

namespace qtoric {

namespace {

void row_combine(IntMatrix& a, size_t r, size_t i, const mpz_class& x, const mpz_class& y,
                 const mpz_class& u, const mpz_class& v)
{
    // (row r, row i) <- (x*r + y*i, u*r + v*i)
    for (size_t j = 0; j < a[r].size(); ++j) {
        mpz_class nr = x * a[r][j] + y * a[i][j];
        mpz_class ni = u * a[r][j] + v * a[i][j];
        a[r][j] = nr;
        a[i][j] = ni;
    }
}

void row_axpy(IntMatrix& a, size_t target, size_t source, const mpz_class& q)
{
    for (size_t j = 0; j < a[target].size(); ++j)
        a[target][j] -= q * a[source][j];
}

} // namespace

IntMatrix int_identity(size_t n)
{
    IntMatrix m(n, IntVector(n, 0));
    for (size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

Hnf hnf(const IntMatrix& m, size_t cols)
{
    Hnf out;
    out.H = m;
    out.U = int_identity(m.size());
    IntMatrix& H = out.H;
    IntMatrix& U = out.U;
    size_t rows = m.size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        for (size_t i = r + 1; i < rows; ++i) {
            if (H[i][c] == 0)
                continue;
            mpz_class a = H[r][c], b = H[i][c], g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            mpz_class u = -b / g, v = a / g;
            row_combine(H, r, i, x, y, u, v);
            row_combine(U, r, i, x, y, u, v);
        }
        if (H[r][c] == 0)
            continue;
        if (H[r][c] < 0) {
            for (auto& e : H[r])
                e = -e;
            for (auto& e : U[r])
                e = -e;
        }
        for (size_t i = 0; i < r; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), H[i][c].get_mpz_t(), H[r][c].get_mpz_t());
            if (q != 0) {
                row_axpy(H, i, r, q);
                row_axpy(U, i, r, q);
            }
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    return out;
}

IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b)
{
    size_t n = b.empty() ? 0 : b[0].size();
    IntMatrix r(a.size(), IntVector(n, 0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k)
            if (a[i][k] != 0)
                for (size_t j = 0; j < n; ++j)
                    r[i][j] += a[i][k] * b[k][j];
    return r;
}

mpz_class int_det(const IntMatrix& m)
{
    Matrix q = to_matrix(m, m.size());
    return determinant(q).rational().get_num();
}

Matrix to_matrix(const IntMatrix& m, size_t cols)
{
    Matrix r(m.size(), cols);
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < cols; ++j)
            r(i, j) = Scalar(m[i][j]);
    return r;
}

IntMatrix to_int_matrix(const Matrix& m)
{
    IntMatrix r(m.rows(), IntVector(m.cols()));
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            if (!m(i, j).is_integer())
                throw Error(Errc::NotRational, "matrix entry " + m(i, j).str() + " is not an integer");
            r[i][j] = m(i, j).rational().get_num();
        }
    return r;
}

ZSpan::ZSpan(const std::vector<std::vector<mpq_class>>& generators, size_t dim)
    : count_(generators.size()), dim_(dim), scale_(1)
{
    for (const auto& g : generators)
        scale_ = lcm(scale_, lcm_of_denominators(g));
    IntMatrix m;
    for (const auto& g : generators) {
        IntVector row(dim_);
        for (size_t j = 0; j < dim_; ++j) {
            mpq_class s = g.at(j) * scale_;
            row[j] = s.get_num();
        }
        m.push_back(row);
    }
    hnf_ = hnf(m, dim_);
}

std::optional<IntVector> ZSpan::express(const std::vector<mpq_class>& x) const
{
    IntVector v(dim_);
    for (size_t j = 0; j < dim_; ++j) {
        mpq_class s = x.at(j) * scale_;
        if (s.get_den() != 1)
            return std::nullopt;
        v[j] = s.get_num();
    }
    // Solve y * H = v by forward substitution on the pivots.
    IntVector y(hnf_.rank);
    IntVector rest = v;
    for (size_t k = 0; k < hnf_.rank; ++k) {
        size_t c = hnf_.pivots[k];
        if (rest[c] % hnf_.H[k][c] != 0)
            return std::nullopt;
        y[k] = rest[c] / hnf_.H[k][c];
        for (size_t j = 0; j < dim_; ++j)
            rest[j] -= y[k] * hnf_.H[k][j];
    }
    for (const auto& e : rest)
        if (e != 0)
            return std::nullopt;
    IntVector coeffs(count_, 0);
    for (size_t k = 0; k < hnf_.rank; ++k)
        for (size_t i = 0; i < count_; ++i)
            coeffs[i] += y[k] * hnf_.U[k][i];
    return coeffs;
}

IntMatrix ZSpan::relations() const
{
    IntMatrix rel;
    for (size_t k = hnf_.rank; k < count_; ++k)
        rel.push_back(hnf_.U[k]);
    return lattice_basis(rel, count_);
}

IntMatrix lattice_basis(const IntMatrix& rows, size_t cols)
{
    Hnf h = hnf(rows, cols);
    return IntMatrix(h.H.begin(), h.H.begin() + h.rank);
}

std::vector<std::vector<mpq_class>> rational_coordinates(const std::vector<Vector>& vectors)
{
    std::map<Monomial, size_t, MonoLess> index;
    size_t d = vectors.empty() ? 0 : vectors[0].size();
    for (const auto& v : vectors)
        for (const auto& x : v) {
            if (!x.denominator().is_constant())
                throw Error(Errc::UnsupportedEntries, "entry " + x.str() + " has a parametric denominator");
            for (const auto& term : x.numerator().terms()) {
                const Monomial& m = term.first;
                bool has_quadratic = false, has_transcendental = false;
                for (const auto& ve : m)
                    (ve.first->quadratic() ? has_quadratic : has_transcendental) = true;
                if (has_transcendental && (has_quadratic || degree(m) > 1))
                    throw Error(Errc::UnsupportedEntries, "entry " + x.str() + " is not affine-linear in the parameters");
                index.emplace(m, 0);
            }
        }
    index.emplace(Monomial{}, 0);
    size_t k = 0;
    for (auto& kv : index)
        kv.second = k++;
    std::vector<std::vector<mpq_class>> out;
    for (const auto& v : vectors) {
        if (v.size() != d)
            throw Error(Errc::DomainMismatch, "vectors of different dimensions");
        std::vector<mpq_class> row(d * index.size(), 0);
        for (size_t i = 0; i < d; ++i)
            for (const auto& [m, c] : v[i].numerator().terms())
                row[i * index.size() + index.at(m)] = c / v[i].denominator().constant();
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace qtoric
