#include "qtoric/atlas.hpp"

#include <algorithm>
#include <set>

namespace qtoric {

Matrix chart_matrix(const QuantumFan& fan, const Cone& I)
{
    size_t d = fan.dim();
    std::vector<Vector> cols;
    for (int i : I)
        cols.push_back(fan.rays.at(i));
    for (size_t k = 0; k < d && cols.size() < d; ++k) {
        cols.push_back(unit_vector(d, k));
        if (rank(cols) != cols.size())
            cols.pop_back();
    }
    return inverse(Matrix::from_columns(cols, d));
}

Matrix gluing_exponents(const QuantumFan& fan, const Cone& I, const Cone& Ip)
{
    return chart_matrix(fan, Ip) * inverse(chart_matrix(fan, I));
}

std::string render_monomials(const Matrix& M)
{
    auto name = [&](size_t j) {
        if (M.cols() == 2)
            return std::string(j == 0 ? "z" : "w");
        if (M.cols() == 1)
            return std::string("z");
        return "z" + std::to_string(j + 1);
    };
    std::string out = "[";
    for (size_t k = 0; k < M.rows(); ++k) {
        if (k)
            out += ", ";
        std::string term;
        for (size_t j = 0; j < M.cols(); ++j) {
            const Scalar& e = M(k, j);
            if (e.is_zero())
                continue;
            if (!term.empty())
                term += "*";
            term += name(j);
            if (e != Scalar(1)) {
                std::string s = e.str();
                bool bare = s.find_first_of("+-*/() ") == std::string::npos;
                term += "^" + (bare ? s : "(" + s + ")");
            }
        }
        out += term.empty() ? "1" : term;
    }
    return out + "]";
}

ChartCalibration chart_calibration(const CalibratedFan& cf, const Cone& I)
{
    const Calibration& h = cf.h;
    size_t d = h.dim(), n = h.n();
    ChartCalibration out;
    std::vector<Vector> cols;
    std::vector<bool> used(n, false);
    for (int k : I) {
        int idx = h.I.at(k);
        cols.push_back(h.images[idx]);
        out.order.push_back(idx);
        used[idx] = true;
    }
    for (size_t i = 0; i < n && cols.size() < d; ++i) {
        if (used[i] || h.is_virtual(int(i)))
            continue;
        cols.push_back(h.images[i]);
        if (rank(cols) == cols.size()) {
            out.order.push_back(int(i));
            out.completion.push_back(int(i));
            used[i] = true;
        } else {
            cols.pop_back();
        }
    }
    if (cols.size() < d)
        throw Error(Errc::Singular, "cannot complete the cone to a basis");
    for (size_t i = 0; i < n; ++i)
        if (!used[i])
            out.order.push_back(int(i));
    out.A = inverse(Matrix::from_columns(cols, d));
    out.hbar = Matrix(d, n - d);
    for (size_t k = d; k < n; ++k) {
        Vector col = out.A * h.images[out.order[k]];
        for (size_t r = 0; r < d; ++r)
            out.hbar(r, k - d) = col[r];
    }
    return out;
}

Atlas build_atlas(const QuantumFan& fan)
{
    Atlas a;
    a.cones = maximal_cones(fan);
    for (const auto& c : a.cones)
        a.charts[c] = chart_matrix(fan, c);
    for (const auto& c : a.cones)
        for (const auto& c2 : a.cones)
            a.gluings[{c, c2}] = a.charts[c2] * inverse(a.charts[c]);
    return a;
}

bool cocycle_check(const Atlas& atlas)
{
    for (const auto& I : atlas.cones)
        for (const auto& J : atlas.cones) {
            auto g = atlas.gluings.find({I, J});
            if (g == atlas.gluings.end())
                return false;
            if (!(g->second * atlas.charts.at(I) == atlas.charts.at(J)))
                return false;
        }
    for (const auto& I : atlas.cones)
        for (const auto& J : atlas.cones)
            for (const auto& K : atlas.cones)
                if (!(atlas.gluings.at({I, K}) == atlas.gluings.at({J, K}) * atlas.gluings.at({I, J})))
                    return false;
    return true;
}

bool IrrelevantDescriptor::allows(const Cone& zeros) const
{
    Cone z = sorted(zeros);
    for (const auto& f : forbidden)
        if (std::includes(z.begin(), z.end(), f.begin(), f.end()))
            return false;
    return true;
}

namespace {

IrrelevantDescriptor from_faces(size_t n, const std::set<Cone>& faces)
{
    IrrelevantDescriptor out;
    out.n = n;
    out.cones.assign(faces.begin(), faces.end());
    std::set<Cone> minimal;
    // a minimal non-face minus its largest element is a face
    for (const auto& f : faces) {
        int start = f.empty() ? 0 : f.back() + 1;
        for (int e = start; e < int(n); ++e) {
            Cone s = f;
            s.push_back(e);
            if (faces.count(s))
                continue;
            bool all_faces = true;
            for (size_t drop = 0; drop + 1 < s.size() && all_faces; ++drop) {
                Cone sub;
                for (size_t t = 0; t < s.size(); ++t)
                    if (t != drop)
                        sub.push_back(s[t]);
                all_faces = faces.count(sub) > 0;
            }
            if (all_faces)
                minimal.insert(s);
        }
    }
    out.forbidden.assign(minimal.begin(), minimal.end());
    std::sort(out.forbidden.begin(), out.forbidden.end(), [](const Cone& a, const Cone& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

} // namespace

IrrelevantDescriptor build_irrelevant(const QuantumFan& fan)
{
    return from_faces(fan.rays.size(), cone_poset(fan));
}

IrrelevantDescriptor build_irrelevant(const CalibratedFan& cf)
{
    std::set<Cone> faces;
    for (const auto& c : cone_poset(cf.fan)) {
        Cone lifted;
        for (int k : c)
            lifted.push_back(cf.h.I.at(k));
        faces.insert(sorted(lifted));
    }
    return from_faces(cf.h.n(), faces);
}

} // namespace qtoric
