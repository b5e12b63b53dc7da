#include "qtoric/morphism.hpp"

#include <algorithm>
#include <functional>

namespace qtoric {

namespace {

std::string cone_name(const Cone& c)
{
    std::string s;
    for (int i : c)
        s += std::to_string(i + 1);
    return s.empty() ? "0" : s;
}

bool nonnegative(const Scalar& s, const Witness& w)
{
    return s.is_zero() || sign_at(s, w) == Sign::Positive;
}

Matrix images_matrix(const Calibration& h)
{
    return Matrix::from_columns(h.images, h.dim());
}

} // namespace

std::optional<Vector> cone_coordinates(const std::vector<Vector>& rays, const Cone& cone, const Vector& x,
                                       const Witness& w)
{
    if (cone.empty())
        return is_zero(x) ? std::optional<Vector>(Vector{}) : std::nullopt;
    std::vector<Vector> cols;
    for (int i : cone)
        cols.push_back(rays[i]);
    auto c = solve(Matrix::from_columns(cols, x.size()), x);
    if (!c)
        return std::nullopt;
    for (const auto& t : *c)
        if (!nonnegative(t, w))
            return std::nullopt;
    return c;
}

Check check_fan_morphism(const Matrix& L, const QuantumFan& F, const QuantumFan& Fp, const Witness& w)
{
    if (L.cols() != F.dim() || L.rows() != Fp.dim())
        throw Error(Errc::DomainMismatch, "matrix shape does not match the fans");
    std::vector<Vector> moved;
    for (const auto& g : F.gamma.generators)
        moved.push_back(L * g);
    if (!gamma_includes(Fp.gamma, moved))
        return Check::fail("L does not map the lattice into the target lattice");

    auto target = maximal_cones(Fp);
    if (target.empty())
        target.push_back(Cone{});
    for (const auto& sigma : maximal_cones(F)) {
        bool found = false;
        for (const auto& tau : target) {
            bool inside = true;
            for (int i : sigma)
                if (!cone_coordinates(Fp.rays, tau, L * F.rays[i], w)) {
                    inside = false;
                    break;
                }
            if (inside) {
                found = true;
                break;
            }
        }
        if (!found)
            return Check::fail("cone " + cone_name(sigma) + " is not mapped into a cone");
    }
    for (size_t i = 0; i < F.rays.size(); ++i) {
        Vector x = L * F.rays[i];
        for (const auto& tau : target) {
            auto c = cone_coordinates(Fp.rays, tau, x, w);
            if (!c)
                continue;
            for (const auto& t : *c)
                if (!t.is_integer())
                    return Check::fail("image of ray " + std::to_string(i + 1) +
                                       " is not an N-combination of the generators of cone " + cone_name(tau));
        }
    }
    return {};
}

Check check_fan_iso(const Matrix& L, const QuantumFan& F, const QuantumFan& Fp, const Witness& w)
{
    if (L.cols() != F.dim() || L.rows() != Fp.dim())
        throw Error(Errc::DomainMismatch, "matrix shape does not match the fans");
    if (!L.is_square() || determinant(L).is_zero())
        return Check::fail("L is not invertible");
    std::vector<Vector> moved;
    for (const auto& g : F.gamma.generators)
        moved.push_back(L * g);
    if (!gamma_includes(Fp.gamma, moved))
        return Check::fail("L does not map the lattice into the target lattice");
    QLattice image{Fp.dim(), moved};
    if (!gamma_includes(image, Fp.gamma.generators))
        return Check::fail("L does not map the lattice onto the target lattice");
    if (F.rays.size() != Fp.rays.size())
        return Check::fail("ray counts differ");
    std::vector<int> perm(F.rays.size(), -1);
    std::vector<bool> hit(Fp.rays.size(), false);
    for (size_t i = 0; i < F.rays.size(); ++i) {
        Vector x = L * F.rays[i];
        for (size_t j = 0; j < Fp.rays.size(); ++j)
            if (!hit[j] && Fp.rays[j] == x) {
                perm[i] = int(j);
                hit[j] = true;
                break;
            }
        if (perm[i] < 0)
            return Check::fail("image of ray " + std::to_string(i + 1) + " is not a target ray");
    }
    if (!(apply_permutation(comb_type(F), perm) == comb_type(Fp)))
        return Check::fail("cones are not mapped onto cones");
    (void)w;
    return {};
}

Check check_cal_morphism(const CalMorphism& m, const CalibratedFan& src, const CalibratedFan& dst,
                         const Witness& w)
{
    size_t n = src.h.n(), np = dst.h.n();
    if (m.H.size() != np || (np && m.H[0].size() != n))
        throw Error(Errc::DomainMismatch, "H has the wrong shape");
    if (Check c = check_fan_morphism(m.L, src.fan, dst.fan, w); !c)
        return c;
    Matrix H = to_matrix(m.H, n);
    if (Check c = check_fan_morphism(H, induced_fan(src), induced_fan(dst), w); !c)
        return Check::fail("H is not a morphism of the induced fans: " + c.reason);
    if (!(m.L * images_matrix(src.h) == images_matrix(dst.h) * H))
        return Check::fail("L h differs from h' H");
    for (size_t i = 0; i < n; ++i) {
        if (src.h.is_virtual(int(i)))
            continue;
        for (int j : dst.h.J)
            if (m.H[j][i] != 0)
                return Check::fail("H e" + std::to_string(i + 1) + " involves a virtual generator");
    }
    for (int j : src.h.J) {
        auto it = m.s.find(j);
        if (it == m.s.end() || !dst.h.is_virtual(it->second))
            return Check::fail("s is not a map between virtual sets");
        for (size_t r = 0; r < np; ++r)
            if (m.H[r][j] != (int(r) == it->second ? 1 : 0))
                return Check::fail("H e" + std::to_string(j + 1) + " is not e" + std::to_string(it->second + 1));
    }
    return {};
}

CalMorphism identity_morphism(const CalibratedFan& cf)
{
    CalMorphism m;
    m.L = Matrix::identity(cf.h.dim());
    m.H = int_identity(cf.h.n());
    for (int j : cf.h.J)
        m.s[j] = j;
    return m;
}

CalMorphism compose(const CalMorphism& m1, const CalMorphism& m2)
{
    if (m2.L.cols() != m1.L.rows())
        throw Error(Errc::DomainMismatch, "L shapes do not chain");
    size_t n1 = m1.H.empty() ? 0 : m1.H[0].size();
    size_t mid = m2.H.empty() ? 0 : m2.H[0].size();
    if (mid != m1.H.size())
        throw Error(Errc::DomainMismatch, "H shapes do not chain");
    CalMorphism r;
    r.L = m2.L * m1.L;
    r.H = m1.H.empty() ? IntMatrix(m2.H.size(), IntVector(n1, 0)) : int_mul(m2.H, m1.H);
    for (auto [j, k] : m1.s) {
        auto it = m2.s.find(k);
        if (it == m2.s.end())
            throw Error(Errc::DomainMismatch, "virtual maps do not chain");
        r.s[j] = it->second;
    }
    return r;
}

IntMatrix kernel_map(const CalMorphism& m, const Calibration& h, const Calibration& hp)
{
    KernelInfo k = kernel_rank(h), kp = kernel_rank(hp);
    size_t np = hp.n();
    std::vector<std::vector<mpq_class>> gens;
    for (const auto& row : kp.basis)
        gens.emplace_back(row.begin(), row.end());
    ZSpan span(gens, np);
    IntMatrix K(kp.basis.size(), IntVector(k.basis.size(), 0));
    for (size_t c = 0; c < k.basis.size(); ++c) {
        std::vector<mpq_class> img(np);
        for (size_t r = 0; r < np; ++r) {
            mpz_class s = 0;
            for (size_t i = 0; i < h.n(); ++i)
                s += m.H[r][i] * k.basis[c][i];
            img[r] = s;
        }
        auto coef = span.express(img);
        if (!coef)
            throw Error(Errc::InvalidInput, "H does not map the kernel into the target kernel");
        for (size_t r = 0; r < coef->size(); ++r)
            K[r][c] = (*coef)[r];
    }
    return K;
}

namespace {

// Completes (L, s) to H column by column; virtual columns come from s.
std::optional<CalMorphism> complete_with(const Matrix& L, const std::map<int, int>& s, const CalibratedFan& src,
                                         const CalibratedFan& dst, const Witness& w)
{
    size_t n = src.h.n(), np = dst.h.n();
    CalMorphism m{L, IntMatrix(np, IntVector(n, 0)), s};
    for (auto [j, jp] : s)
        m.H[jp][j] = 1;
    auto target = maximal_cones(dst.fan);
    for (size_t k = 0; k < src.h.I.size(); ++k) {
        Vector x = L * src.fan.rays[k];
        std::optional<Vector> c;
        Cone where;
        for (const auto& tau : target)
            if ((c = cone_coordinates(dst.fan.rays, tau, x, w))) {
                where = tau;
                break;
            }
        if (!c)
            return std::nullopt;
        for (size_t t = 0; t < where.size(); ++t) {
            if (!(*c)[t].is_integer())
                return std::nullopt;
            m.H[dst.h.I[where[t]]][src.h.I[k]] = (*c)[t].rational().get_num();
        }
    }
    std::vector<int> real;
    std::vector<Vector> real_images;
    for (size_t i = 0; i < np; ++i)
        if (!dst.h.is_virtual(int(i))) {
            real.push_back(int(i));
            real_images.push_back(dst.h.images[i]);
        }
    for (size_t i = 0; i < n; ++i) {
        if (src.h.is_virtual(int(i)) ||
            std::find(src.h.I.begin(), src.h.I.end(), int(i)) != src.h.I.end())
            continue;
        std::vector<Vector> all = real_images;
        all.push_back(L * src.h.images[i]);
        auto coords = rational_coordinates(all);
        std::vector<std::vector<mpq_class>> gens(coords.begin(), coords.end() - 1);
        auto e = ZSpan(gens, coords.back().size()).express(coords.back());
        if (!e)
            return std::nullopt;
        for (size_t t = 0; t < real.size(); ++t)
            m.H[real[t]][i] = (*e)[t];
    }
    if (!check_cal_morphism(m, src, dst, w))
        return std::nullopt;
    return m;
}

} // namespace

std::optional<CalMorphism> find_cal_morphism(const std::optional<Matrix>& L, const CalibratedFan& src,
                                             const CalibratedFan& dst, const Witness& w)
{
    const auto& J = src.h.J;
    const auto& Jp = dst.h.J;
    if (L) {
        std::map<int, int> s;
        for (int j : J) {
            Vector x = *L * src.h.images[j];
            std::vector<int> options(Jp.begin(), Jp.end());
            std::sort(options.begin(), options.end());
            auto it = std::find_if(options.begin(), options.end(), [&](int k) { return dst.h.images[k] == x; });
            if (it == options.end())
                return std::nullopt;
            s[j] = *it;
        }
        return complete_with(*L, s, src, dst, w);
    }
    size_t d = src.h.dim(), dp = dst.h.dim();
    std::vector<Vector> virt;
    for (int j : J)
        virt.push_back(src.h.images[j]);
    std::vector<int> sel = first_basis(virt);
    if (sel.size() != d)
        throw Error(Errc::InvalidInput, "L is not determined by the virtual generators");
    double combos = 1;
    for (size_t i = 0; i < J.size(); ++i)
        combos *= double(Jp.size());
    if (combos > 1e6)
        throw Error(Errc::SearchBoundExceeded, "too many virtual assignments");
    std::vector<Vector> basis_cols;
    for (int t : sel)
        basis_cols.push_back(virt[t]);
    Matrix A_inv = inverse(Matrix::from_columns(basis_cols, d));
    std::vector<int> choice(J.size(), 0);
    std::optional<CalMorphism> found;
    std::function<void(size_t)> walk = [&](size_t pos) {
        if (found)
            return;
        if (pos == J.size()) {
            std::vector<Vector> b_cols;
            for (int t : sel)
                b_cols.push_back(dst.h.images[Jp[choice[t]]]);
            Matrix Lc = Matrix::from_columns(b_cols, dp) * A_inv;
            std::map<int, int> s;
            for (size_t t = 0; t < J.size(); ++t) {
                if (!(Lc * src.h.images[J[t]] == dst.h.images[Jp[choice[t]]]))
                    return;
                s[J[t]] = Jp[choice[t]];
            }
            found = complete_with(Lc, s, src, dst, w);
            return;
        }
        for (size_t k = 0; k < Jp.size() && !found; ++k) {
            choice[pos] = int(k);
            walk(pos + 1);
        }
    };
    walk(0);
    return found;
}

} // namespace qtoric
