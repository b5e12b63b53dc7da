#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qtoric/calibration.hpp"

namespace qtoric {

// A_I: inverse of (v_{i_1} ... v_{i_k}, completion), completed by canonical
// basis vectors in index order when k < d.
Matrix chart_matrix(const QuantumFan& fan, const Cone& I);

// A_{I'} A_I^{-1}: coordinates of chart I expressed in chart I'.
Matrix gluing_exponents(const QuantumFan& fan, const Cone& I, const Cone& Ip);

// Monomial map whose k-th component is prod_j z_j^{M(k, j)}.
std::string render_monomials(const Matrix& M);

struct ChartCalibration {
    Matrix A;               // chart matrix completed by images of h
    std::vector<int> order; // H_I sends e_{order[k]} to e_k
    std::vector<int> completion; // indices whose images complete the cone
    Matrix hbar;            // d x (n - d), columns are hbar_I(e_k)
};

ChartCalibration chart_calibration(const CalibratedFan& cf, const Cone& I);

struct Atlas {
    std::vector<Cone> cones;
    std::map<Cone, Matrix> charts;
    std::map<std::pair<Cone, Cone>, Matrix> gluings;
};

Atlas build_atlas(const QuantumFan& fan);

// Stored gluings agree with the charts and compose: G(I,K) = G(J,K) G(I,J).
bool cocycle_check(const Atlas& atlas);

struct IrrelevantDescriptor {
    size_t n = 0;
    std::vector<Cone> forbidden; // minimal index sets that may not vanish together
    std::vector<Cone> cones;     // cones of the fan of S over canonical basis vectors

    // Is a point whose vanishing coordinates are `zeros` in S?
    bool allows(const Cone& zeros) const;
};

IrrelevantDescriptor build_irrelevant(const QuantumFan& fan);
// Rays become the indices I; every other index, virtual or not, is forbidden alone.
IrrelevantDescriptor build_irrelevant(const CalibratedFan& cf);

} // namespace qtoric
