#include "qtoric/calibration.hpp"

#include <algorithm>

namespace qtoric {

bool Calibration::is_virtual(int i) const
{
    return std::find(J.begin(), J.end(), i) != J.end();
}

CalibratedFan make_calibrated_fan(const Calibration& h, const std::vector<Cone>& cones)
{
    CalibratedFan cf;
    cf.h = h;
    cf.fan.gamma.dim = h.dim();
    cf.fan.gamma.generators = h.images;
    for (int i : h.I)
        cf.fan.rays.push_back(h.images.at(i));
    cf.fan.cones = cones;
    return cf;
}

ValidationReport validate_calibrated_fan(const CalibratedFan& cf, const Witness& w)
{
    ValidationReport rep = validate_fan(cf.fan, w);
    const Calibration& h = cf.h;
    size_t d = cf.fan.dim();
    for (const auto& v : h.images)
        if (v.size() != d) {
            rep.fail("calibration image of wrong dimension");
            return rep;
        }
    std::vector<int> seen(h.n(), 0);
    for (int i : h.I)
        if (i < 0 || size_t(i) >= h.n() || seen[i]++)
            rep.fail("generator index out of range or repeated");
    for (int j : h.J)
        if (j < 0 || size_t(j) >= h.n() || seen[j]++)
            rep.fail("virtual index out of range, repeated or also a generator");
    if (!rep.valid)
        return rep;
    if (h.I.size() != cf.fan.rays.size())
        rep.fail("generator count differs from ray count");
    else
        for (size_t k = 0; k < h.I.size(); ++k)
            if (h.images[h.I[k]] != cf.fan.rays[k])
                rep.fail("ray " + std::to_string(k + 1) + " is not the image of its generator index");
    std::vector<Vector> real;
    for (size_t i = 0; i < h.n(); ++i)
        if (!h.is_virtual(int(i)))
            real.push_back(h.images[i]);
    if (rank(real) != d)
        rep.fail("non-virtual images do not span R^" + std::to_string(d));
    try {
        QLattice img{d, h.images};
        if (!gamma_includes(cf.fan.gamma, h.images) || !gamma_includes(img, cf.fan.gamma.generators))
            rep.fail("calibration is not onto the lattice");
    } catch (const Error& e) {
        if (e.code() != Errc::UnsupportedEntries)
            throw;
    }
    return rep;
}

Calibration trivial_calibration(const QuantumFan& fan)
{
    if (!is_gamma_complete(fan))
        throw Error(Errc::NotGammaComplete, "ray generators do not generate the lattice");
    Calibration h;
    h.images = fan.rays;
    for (size_t i = 0; i < fan.rays.size(); ++i)
        h.I.push_back(int(i));
    return h;
}

KernelInfo kernel_rank(const Calibration& h)
{
    KernelInfo k;
    if (h.images.empty())
        return k;
    auto coords = rational_coordinates(h.images);
    ZSpan span(coords, coords[0].size());
    k.a = h.n() - span.rank();
    k.basis = span.relations();
    return k;
}

QuantumFan induced_fan(const CalibratedFan& cf)
{
    size_t n = cf.h.n();
    QuantumFan f;
    f.gamma = QLattice::standard(n);
    for (int i : cf.h.I)
        f.rays.push_back(unit_vector(n, i));
    f.cones = cf.fan.cones;
    return f;
}

IntMatrix permutation_matrix(const std::vector<int>& perm)
{
    size_t n = perm.size();
    IntMatrix H(n, IntVector(n, 0));
    for (size_t i = 0; i < n; ++i)
        H[perm[i]][i] = 1;
    return H;
}

StandardCalibration standardize_calibration(const CalibratedFan& cf)
{
    const Calibration& h = cf.h;
    size_t n = h.n(), d = h.dim(), p = h.I.size();
    std::vector<bool> placed(n, false);
    std::vector<int> order;
    std::vector<Vector> basis;
    auto try_add = [&](int i) {
        basis.push_back(h.images[i]);
        if (rank(basis) == basis.size()) {
            order.push_back(i);
            placed[i] = true;
        } else {
            basis.pop_back();
        }
    };
    for (size_t k = 0; k < p && basis.size() < d; ++k)
        try_add(h.I[k]);
    for (size_t i = 0; i < n && basis.size() < d; ++i)
        if (!placed[i] && !h.is_virtual(int(i)))
            try_add(int(i));
    if (basis.size() < d)
        throw Error(Errc::InvalidInput, "non-virtual images do not span");
    for (int i : h.I)
        if (!placed[i]) {
            order.push_back(i);
            placed[i] = true;
        }
    std::vector<int> J = h.J;
    std::sort(J.begin(), J.end());
    for (size_t i = 0; i < n; ++i)
        if (!placed[i] && !h.is_virtual(int(i)))
            order.push_back(int(i));
    for (int j : J)
        order.push_back(j);

    std::vector<int> perm(n);
    for (size_t k = 0; k < n; ++k)
        perm[order[k]] = int(k);

    StandardCalibration out;
    out.order = order;
    std::vector<Vector> cols;
    for (size_t k = 0; k < d; ++k)
        cols.push_back(h.images[order[k]]);
    out.iso.L = d ? inverse(Matrix::from_columns(cols, d)) : Matrix();
    out.iso.H = permutation_matrix(perm);
    for (int j : h.J)
        out.iso.s[j] = perm[j];

    Calibration hs;
    for (size_t k = 0; k < n; ++k)
        hs.images.push_back(d ? out.iso.L * h.images[order[k]] : Vector{});
    for (int j : h.J)
        hs.J.push_back(perm[j]);
    std::sort(hs.J.begin(), hs.J.end());
    // ray k of the old fan becomes the ray whose index is perm[I[k]];
    // new rays are listed by increasing index
    std::vector<int> new_idx;
    for (int i : h.I)
        new_idx.push_back(perm[i]);
    hs.I = new_idx;
    std::sort(hs.I.begin(), hs.I.end());
    std::vector<int> ray_map(p);
    for (size_t k = 0; k < p; ++k)
        ray_map[k] = int(std::find(hs.I.begin(), hs.I.end(), new_idx[k]) - hs.I.begin());
    std::vector<Cone> cones;
    for (const auto& c : cf.fan.cones) {
        Cone img;
        for (int r : c)
            img.push_back(ray_map[r]);
        cones.push_back(img);
    }
    out.cf = make_calibrated_fan(hs, cones);
    return out;
}

} // namespace qtoric
