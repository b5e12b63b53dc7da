#pragma once

#include <optional>
#include <string>

#include "qtoric/calibration.hpp"

namespace qtoric {

struct Check {
    bool valid = true;
    std::string reason;

    static Check fail(std::string why) { return {false, std::move(why)}; }
    explicit operator bool() const { return valid; }
};

// Coordinates of x in the generators of a simplicial cone, when x lies in it.
std::optional<Vector> cone_coordinates(const std::vector<Vector>& rays, const Cone& cone, const Vector& x,
                                       const Witness& w);

Check check_fan_morphism(const Matrix& L, const QuantumFan& F, const QuantumFan& Fp, const Witness& w);
Check check_fan_iso(const Matrix& L, const QuantumFan& F, const QuantumFan& Fp, const Witness& w);
Check check_cal_morphism(const CalMorphism& m, const CalibratedFan& src, const CalibratedFan& dst,
                         const Witness& w);

CalMorphism identity_morphism(const CalibratedFan& cf);
// m2 after m1; throws DomainMismatch when the shapes do not chain.
CalMorphism compose(const CalMorphism& m1, const CalMorphism& m2);

// Matrix of the induced map between kernel lattices, in the bases returned
// by kernel_rank; K e_k holds the coordinates of H xi_k.
IntMatrix kernel_map(const CalMorphism& m, const Calibration& h, const Calibration& hp);

// Searches for (H, s) completing L to a calibrated morphism. When L is not
// given it is solved from the virtual generators, trying every s.
std::optional<CalMorphism> find_cal_morphism(const std::optional<Matrix>& L, const CalibratedFan& src,
                                             const CalibratedFan& dst, const Witness& w);

} // namespace qtoric
