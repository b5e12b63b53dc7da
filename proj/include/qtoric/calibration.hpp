#pragma once

#include <map>
#include <vector>

#include "qtoric/fan.hpp"

namespace qtoric {

// Epimorphism h: Z^n -> Gamma given by the images of the canonical basis,
// with virtual indices J and generator indices I (all 0-based).
struct Calibration {
    std::vector<Vector> images;
    std::vector<int> J;
    std::vector<int> I; // I[k] is the index whose image spans ray k

    size_t n() const { return images.size(); }
    size_t dim() const { return images.empty() ? 0 : images[0].size(); }
    bool is_virtual(int i) const;
};

struct CalibratedFan {
    QuantumFan fan;
    Calibration h;
};

// Assembles a calibrated fan whose rays are h(e_i), i in I, and whose lattice
// is the Z-span of all images.
CalibratedFan make_calibrated_fan(const Calibration& h, const std::vector<Cone>& cones);

// Fan validity plus: I and J disjoint, rays equal to the images at I, the
// non-virtual images span R^d and the images generate Gamma.
ValidationReport validate_calibrated_fan(const CalibratedFan& cf, const Witness& w);

Calibration trivial_calibration(const QuantumFan& fan); // throws NotGammaComplete

struct KernelInfo {
    size_t a = 0;     // n - rank_Z(Gamma)
    IntMatrix basis;  // rows spanning ker h
};

KernelInfo kernel_rank(const Calibration& h);

// Classical fan in Z^n over e_{I[k]}, with the same cone index sets.
QuantumFan induced_fan(const CalibratedFan& cf);

// Integer matrix n' x n with H e_i = column i, and s: J -> J'.
struct CalMorphism {
    Matrix L;
    IntMatrix H;
    std::map<int, int> s;
};

struct StandardCalibration {
    CalibratedFan cf;
    CalMorphism iso; // from the input to cf
    std::vector<int> order; // order[new index] = old index
};

StandardCalibration standardize_calibration(const CalibratedFan& cf);

// Permutation matrix sending e_old to e_{perm[old]}.
IntMatrix permutation_matrix(const std::vector<int>& perm);

} // namespace qtoric
