#pragma once

#include <vector>

#include "qtoric/calibration.hpp"

namespace qtoric {

enum class GaleNormalization {
    LeftmostPivots, // free coordinates carry an identity block
    TailIdentity,   // the last n-d vectors are the canonical basis
};

struct GaleData {
    std::vector<Vector> A; // one vector per input vector
    GaleNormalization normalization = GaleNormalization::LeftmostPivots;
};

// Linear Gale transform: sum x_i h(e_i) = 0 iff x = (<A_i, t>)_i.
GaleData gale_linear(const Calibration& h);
// Affine Gale transform of a balanced configuration (sum of vectors zero):
// additionally sum x_i = 0. Throws NotBalanced.
GaleData gale_affine(const std::vector<Vector>& vbar,
                     GaleNormalization norm = GaleNormalization::LeftmostPivots);

// Configuration of points in C^m, each stored as 2m real coordinates
// (x1 + i x2, ..., x_{2m-1} + i x_{2m}), with the family E of (2m+1)-subsets.
struct LVMBDatum {
    size_t m = 0;
    std::vector<Vector> points;
    std::vector<Cone> E;

    std::vector<int> indispensable() const;
};

LVMBDatum build_lvmb(const CalibratedFan& cf); // throws NotEven, NotComplete

ValidationReport check_lvmb(const LVMBDatum& datum, const Witness& w);

struct LvmReport {
    bool siegel = false;
    bool weak_hyperbolic = false;
    std::vector<Cone> E; // (2m+1)-subsets whose hull contains 0, when both hold
};

LvmReport check_lvm(const std::vector<Vector>& points, size_t m, const Witness& w);

struct PolytopeFaces {
    std::vector<Cone> faces;    // index sets J, face of codimension |J|
    std::vector<Cone> vertices;
    std::vector<int> facets;
};

PolytopeFaces polytope_faces(const std::vector<Vector>& points, size_t m, const Witness& w);
PolytopeFaces polytope_faces(const LVMBDatum& datum);

enum class KH { K, H, Neither };
const char* kh_name(KH v);

// Conditions on the integer solutions of sum Lambda_i x_i = 0, sum x_i = 0.
// Entries may be rational or Q-affine in independent parameters.
KH condition_KH(const std::vector<Vector>& points); // throws NonRationalInput

// Balanced datum with last point indispensable -> even calibrated fan.
CalibratedFan lvmb_to_fan(const LVMBDatum& datum); // throws NotBalanced, NoIndispensable

struct Complex {
    Scalar re, im;
};

using ComplexMatrix = std::vector<std::vector<Complex>>;

struct GLattice {
    ComplexMatrix A; // m x m
    ComplexMatrix B; // (N - m - 1) x m
    ComplexMatrix BAinv;
};

// Throws RankDeficient when Lambda_1..Lambda_{m+1} are affinely dependent.
GLattice g_lattice(const std::vector<Vector>& points, size_t m);
// Permutation (new position -> old index) moving an affinely independent
// (m+1)-subset to the front.
std::vector<int> lattice_permutation(const std::vector<Vector>& points, size_t m);

} // namespace qtoric
