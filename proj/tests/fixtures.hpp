#pragma once

// Random fans shared by the unit tests and the acceptance run.

#include <algorithm>
#include <cmath>
#include <random>

#include "qtoric/morphism.hpp"

namespace qtoric::fixtures {

// Complete fan in the plane from rational directions sorted by angle with
// every gap below pi.
inline QuantumFan random_complete_plane_fan(std::mt19937& rng)
{
    std::uniform_int_distribution<int> coord(-6, 6), count(3, 7);
    while (true) {
        int p = count(rng);
        std::vector<std::pair<int, int>> dirs;
        for (int i = 0; i < p; ++i) {
            int x = coord(rng), y = coord(rng);
            if (x == 0 && y == 0)
                continue;
            dirs.push_back({x, y});
        }
        auto angle = [](const std::pair<int, int>& d) { return std::atan2(double(d.second), double(d.first)); };
        std::sort(dirs.begin(), dirs.end(), [&](auto& u, auto& v) { return angle(u) < angle(v); });
        bool ok = dirs.size() >= 3;
        for (size_t i = 0; ok && i < dirs.size(); ++i) {
            auto& u = dirs[i];
            auto& v = dirs[(i + 1) % dirs.size()];
            long cross = long(u.first) * v.second - long(u.second) * v.first;
            if (cross <= 0)
                ok = false; // collinear or a gap of at least pi
        }
        if (!ok)
            continue;
        QuantumFan f;
        f.gamma = QLattice::standard(2);
        for (auto& [x, y] : dirs)
            f.rays.push_back(Vector{Scalar(x), Scalar(y)});
        for (size_t i = 0; i < dirs.size(); ++i)
            f.cones.push_back({int(i), int((i + 1) % dirs.size())});
        return f;
    }
}

// Random complete simplicial fan in R^d: the face fan of a perturbed
// cross-polytope, i.e. one ray per signed coordinate direction.
inline QuantumFan random_cross_fan(std::mt19937& rng, size_t d)
{
    std::uniform_int_distribution<int> jitter(-2, 2);
    QuantumFan f;
    f.gamma = QLattice::standard(d);
    for (size_t k = 0; k < 2 * d; ++k) {
        Vector v(d);
        for (size_t i = 0; i < d; ++i)
            v[i] = Scalar(mpq_class(jitter(rng), 10));
        v[k % d] = Scalar(k < d ? 1 : -1);
        f.rays.push_back(v);
    }
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        Cone c;
        for (size_t i = 0; i < d; ++i)
            c.push_back(int(mask & (1u << i) ? i + d : i));
        f.cones.push_back(c);
    }
    return f;
}

// Random even calibrated fan: a perturbed cross-polytope fan in R^d plus
// virtual generators so that n - d is even.
inline CalibratedFan random_even_fan(std::mt19937& rng, size_t d)
{
    std::uniform_int_distribution<int> jitter(-2, 2), big(-9, 9);
    Calibration h;
    std::vector<Cone> cones;
    for (size_t k = 0; k < 2 * d; ++k) {
        Vector v(d);
        for (size_t i = 0; i < d; ++i)
            v[i] = Scalar(mpq_class(jitter(rng), 10));
        v[k % d] = Scalar(k < d ? 1 : -1);
        h.images.push_back(v);
        h.I.push_back(int(k));
    }
    for (unsigned long mask = 0; mask < (1ul << d); ++mask) {
        Cone c;
        for (size_t i = 0; i < d; ++i)
            c.push_back(int(mask & (1ul << i) ? i + d : i));
        cones.push_back(c);
    }
    size_t virt = d % 2 == 0 ? 2 * (rng() % 2) : 1 + 2 * (rng() % 2);
    for (size_t j = 0; j < virt; ++j) {
        Vector v(d);
        for (size_t i = 0; i < d; ++i)
            v[i] = Scalar(mpq_class(big(rng), 7));
        if (rng() % 2)
            v[0] = v[0] + parse_scalar("sqrt(2)");
        h.J.push_back(int(h.images.size()));
        h.images.push_back(v);
    }
    return make_calibrated_fan(h, cones);
}

// The marked isomorphism with H = Id between two calibrations on the same indices.
inline Check same_up_to_linear(const CalibratedFan& a, const CalibratedFan& b, const Witness& w)
{
    std::vector<Vector> ra, rb;
    for (int i : a.h.I)
        ra.push_back(a.h.images[i]);
    for (int k : first_basis(ra))
        rb.push_back(b.h.images[a.h.I[k]]);
    std::vector<Vector> ca;
    for (int k : first_basis(ra))
        ca.push_back(ra[k]);
    size_t d = a.h.dim();
    Matrix L = Matrix::from_columns(rb, d) * inverse(Matrix::from_columns(ca, d));
    CalMorphism m{L, int_identity(a.h.n()), {}};
    for (int j : a.h.J)
        m.s[j] = j;
    return check_cal_morphism(m, a, b, w);
}

} // namespace qtoric::fixtures
