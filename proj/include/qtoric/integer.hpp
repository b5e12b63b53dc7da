#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "qtoric/matrix.hpp"

namespace qtoric {

using IntVector = std::vector<mpz_class>;
using IntMatrix = std::vector<IntVector>; // row-major

struct Hnf {
    IntMatrix H;                 // row Hermite normal form, zero rows last
    IntMatrix U;                 // unimodular, U * M = H
    size_t rank = 0;
    std::vector<size_t> pivots;  // pivot column of each nonzero row
};

// Row HNF: pivots positive, entries above a pivot reduced into [0, pivot).
Hnf hnf(const IntMatrix& m, size_t cols);

IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b);
mpz_class int_det(const IntMatrix& m);
IntMatrix int_identity(size_t n);
Matrix to_matrix(const IntMatrix& m, size_t cols);
IntMatrix to_int_matrix(const Matrix& m); // throws NotRational on non-integers

// Z-span of finitely many rational vectors.
class ZSpan {
  public:
    ZSpan(const std::vector<std::vector<mpq_class>>& generators, size_t dim);
    size_t rank() const { return hnf_.rank; }
    // Integer coefficients c with sum c_i g_i = x, or nothing.
    std::optional<IntVector> express(const std::vector<mpq_class>& x) const;
    // Basis of the integer relations among the generators, as rows.
    IntMatrix relations() const;

  private:
    size_t count_, dim_;
    mpz_class scale_;
    Hnf hnf_;
};

// Coordinates of vectors whose entries are Q-linear combinations of 1, single
// transcendental parameters and products of square roots, in the common basis
// of all monomials that occur. Throws UnsupportedEntries otherwise.
std::vector<std::vector<mpq_class>> rational_coordinates(const std::vector<Vector>& vectors);

// Canonical row basis (HNF) of the lattice spanned by the rows.
IntMatrix lattice_basis(const IntMatrix& rows, size_t cols);

} // namespace qtoric
