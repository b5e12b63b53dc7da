#include "qtoric/gale.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "qtoric/lp.hpp"

namespace qtoric {

namespace {

// Kernel of the matrix whose columns are the given vectors, optionally with a
// row of ones appended; entry k of vector i of the result is basis[k][i].
std::vector<Vector> column_kernel(const std::vector<Vector>& cols, size_t rows, bool ones)
{
    size_t n = cols.size();
    Matrix M(rows + (ones ? 1 : 0), n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t r = 0; r < rows; ++r)
            M(r, i) = cols[i][r];
        if (ones)
            M(rows, i) = 1;
    }
    auto basis = kernel_basis(M);
    std::vector<Vector> out(n, Vector(basis.size()));
    for (size_t k = 0; k < basis.size(); ++k)
        for (size_t i = 0; i < n; ++i)
            out[i][k] = basis[k][i];
    return out;
}

void for_each_subset(size_t n, size_t k, const std::function<bool(const Cone&)>& f)
{
    Cone c(k);
    for (size_t i = 0; i < k; ++i)
        c[i] = int(i);
    if (k > n)
        return;
    while (true) {
        if (!f(c))
            return;
        int i = int(k) - 1;
        while (i >= 0 && c[i] == int(n - k + i))
            --i;
        if (i < 0)
            return;
        ++c[i];
        for (size_t j = i + 1; j < k; ++j)
            c[j] = c[j - 1] + 1;
    }
}

std::vector<Vector> select(const std::vector<Vector>& pts, const Cone& idx)
{
    std::vector<Vector> out;
    for (int i : idx)
        out.push_back(pts[i]);
    return out;
}

size_t affine_rank(const std::vector<Vector>& pts)
{
    std::vector<Vector> diffs;
    for (size_t i = 1; i < pts.size(); ++i)
        diffs.push_back(pts[i] - pts[0]);
    return rank(diffs);
}

// Do the relative interiors of conv(P) and conv(Q) meet?
bool interiors_meet(const std::vector<Vector>& P, const std::vector<Vector>& Q, const Witness& w)
{
    size_t p = P.size(), q = Q.size(), dim = P[0].size();
    size_t nv = p + q + 1;
    std::vector<LinearConstraint> cons;
    for (size_t i = 0; i < p + q; ++i) {
        Vector row(nv);
        row[i] = 1;
        row[p + q] = -1;
        cons.push_back({row, Rel::GE, Scalar()});
    }
    Vector sp(nv), sq(nv);
    for (size_t i = 0; i < p; ++i)
        sp[i] = 1;
    for (size_t j = 0; j < q; ++j)
        sq[p + j] = 1;
    cons.push_back({sp, Rel::EQ, Scalar(1)});
    cons.push_back({sq, Rel::EQ, Scalar(1)});
    for (size_t r = 0; r < dim; ++r) {
        Vector row(nv);
        for (size_t i = 0; i < p; ++i)
            row[i] = P[i][r];
        for (size_t j = 0; j < q; ++j)
            row[p + j] = -Q[j][r];
        cons.push_back({row, Rel::EQ, Scalar()});
    }
    cons.push_back({unit_vector(nv, p + q), Rel::LE, Scalar(1)});
    LpResult res = maximize(unit_vector(nv, p + q), cons, w);
    return res.status == LpStatus::Optimal && sign_at(res.value, w) == Sign::Positive;
}

std::string set_name(const Cone& c)
{
    std::string s = "{";
    for (size_t i = 0; i < c.size(); ++i)
        s += (i ? "," : "") + std::to_string(c[i] + 1);
    return s + "}";
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator*(const Complex& a, const Complex& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Complex operator/(const Complex& a, const Complex& b)
{
    Scalar n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
bool is_zero(const Complex& c) { return c.re.is_zero() && c.im.is_zero(); }

std::vector<Complex> as_complex(const Vector& x, size_t m)
{
    std::vector<Complex> out(m);
    for (size_t k = 0; k < m; ++k)
        out[k] = {x[2 * k], x[2 * k + 1]};
    return out;
}

// Row reduction; returns the rank and replaces m by its reduced form.
size_t complex_reduce(ComplexMatrix& a, ComplexMatrix* companion = nullptr)
{
    size_t rows = a.size(), cols = rows ? a[0].size() : 0, r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && is_zero(a[piv][c]))
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[r], a[piv]);
        if (companion)
            std::swap((*companion)[r], (*companion)[piv]);
        Complex inv = Complex{Scalar(1), Scalar()} / a[r][c];
        for (auto& x : a[r])
            x = x * inv;
        if (companion)
            for (auto& x : (*companion)[r])
                x = x * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(a[i][c]))
                continue;
            Complex f = a[i][c];
            for (size_t j = 0; j < cols; ++j)
                a[i][j] = a[i][j] - f * a[r][j];
            if (companion)
                for (size_t j = 0; j < (*companion)[i].size(); ++j)
                    (*companion)[i][j] = (*companion)[i][j] - f * (*companion)[r][j];
        }
        ++r;
    }
    return r;
}

size_t complex_affine_rank(const std::vector<Vector>& pts, size_t m)
{
    if (pts.empty())
        return 0;
    ComplexMatrix diffs;
    auto base = as_complex(pts[0], m);
    for (size_t i = 1; i < pts.size(); ++i) {
        auto p = as_complex(pts[i], m);
        std::vector<Complex> row(m);
        for (size_t k = 0; k < m; ++k)
            row[k] = p[k] - base[k];
        diffs.push_back(row);
    }
    return complex_reduce(diffs);
}

} // namespace

GaleData gale_linear(const Calibration& h)
{
    return GaleData{column_kernel(h.images, h.dim(), false), GaleNormalization::LeftmostPivots};
}

GaleData gale_affine(const std::vector<Vector>& vbar, GaleNormalization norm)
{
    if (vbar.empty())
        return {};
    size_t d = vbar[0].size();
    Vector sum(d);
    for (const auto& v : vbar)
        sum = sum + v;
    if (!is_zero(sum))
        throw Error(Errc::NotBalanced, "vectors do not sum to zero");
    GaleData g{column_kernel(vbar, d, true), norm};
    if (norm == GaleNormalization::TailIdentity) {
        size_t k = g.A.empty() ? 0 : g.A[0].size();
        size_t n1 = vbar.size();
        std::vector<Vector> tail(g.A.end() - k, g.A.end());
        Matrix T = Matrix::from_rows(tail, k);
        if (determinant(T).is_zero())
            throw Error(Errc::RankDeficient, "the last vectors cannot be normalized to a basis");
        Matrix Tinv = inverse(T);
        for (size_t i = 0; i < n1; ++i)
            g.A[i] = Tinv.transpose() * g.A[i];
    }
    return g;
}

std::vector<int> LVMBDatum::indispensable() const
{
    std::vector<int> out;
    for (size_t i = 0; i < points.size(); ++i) {
        bool everywhere = !E.empty();
        for (const auto& e : E)
            if (std::find(e.begin(), e.end(), int(i)) == e.end()) {
                everywhere = false;
                break;
            }
        if (everywhere)
            out.push_back(int(i));
    }
    return out;
}

LVMBDatum build_lvmb(const CalibratedFan& cf)
{
    const Calibration& h = cf.h;
    size_t n = h.n(), d = h.dim();
    if (!is_complete(cf.fan))
        throw Error(Errc::NotComplete, "the fan is not complete");
    if (h.J.size() + h.I.size() != n)
        throw Error(Errc::InvalidInput, "the calibration is not of maximal length");
    if ((n - d) % 2)
        throw Error(Errc::NotEven, "n - d is odd");
    std::vector<Vector> vbar = h.images;
    Vector last(d);
    for (const auto& v : h.images)
        last = last - v;
    vbar.push_back(last);
    LVMBDatum datum;
    datum.m = (n - d) / 2;
    datum.points = gale_affine(vbar).A;
    for (const auto& c : maximal_cones(cf.fan)) {
        std::set<int> in;
        for (int k : c)
            in.insert(h.I[k]);
        Cone e;
        for (size_t i = 0; i <= n; ++i)
            if (!in.count(int(i)))
                e.push_back(int(i));
        datum.E.push_back(e);
    }
    std::sort(datum.E.begin(), datum.E.end());
    return datum;
}

ValidationReport check_lvmb(const LVMBDatum& datum, const Witness& w)
{
    ValidationReport rep;
    size_t N = datum.points.size(), m = datum.m;
    if (datum.E.empty())
        rep.fail("E is empty");
    if (N < 2 * m + 1)
        rep.fail("fewer than 2m+1 points");
    for (const auto& p : datum.points)
        if (p.size() != 2 * m) {
            rep.fail("point with wrong number of real coordinates");
            return rep;
        }
    std::set<Cone> family;
    for (const auto& e : datum.E) {
        Cone s = sorted(e);
        bool ok = s.size() == 2 * m + 1 && std::adjacent_find(s.begin(), s.end()) == s.end();
        for (int i : s)
            ok = ok && i >= 0 && size_t(i) < N;
        if (!ok) {
            rep.fail("member " + set_name(s) + " of E is not a (2m+1)-subset");
            return rep;
        }
        family.insert(s);
    }
    for (const auto& e : family)
        if (affine_rank(select(datum.points, e)) != 2 * m)
            rep.fail("affine hull of " + set_name(e) + " is not the whole space");
    if (!rep.valid)
        return rep;
    std::vector<Cone> members(family.begin(), family.end());
    for (size_t a = 0; a < members.size(); ++a)
        for (size_t b = a + 1; b < members.size(); ++b)
            if (!interiors_meet(select(datum.points, members[a]), select(datum.points, members[b]), w))
                rep.fail("interiors of the hulls of " + set_name(members[a]) + " and " + set_name(members[b]) +
                         " are disjoint");
    for (const auto& e : members)
        for (size_t k = 0; k < N; ++k) {
            if (std::find(e.begin(), e.end(), int(k)) != e.end())
                continue;
            bool found = false;
            for (size_t drop = 0; drop < e.size() && !found; ++drop) {
                Cone s = e;
                s[drop] = int(k);
                found = family.count(sorted(s)) > 0;
            }
            if (!found)
                rep.fail("no exchange of " + std::to_string(k + 1) + " into " + set_name(e));
        }
    return rep;
}

LvmReport check_lvm(const std::vector<Vector>& points, size_t m, const Witness& w)
{
    size_t n = points.size();
    if (n > 20)
        throw Error(Errc::SearchBoundExceeded, "weak hyperbolicity enumeration is capped at 20 points");
    LvmReport rep;
    rep.siegel = zero_in_convex_hull(points, w);
    // hulls grow with the index set, so testing the largest forbidden size suffices
    size_t k = std::min(2 * m, n);
    rep.weak_hyperbolic = true;
    for_each_subset(n, k, [&](const Cone& c) {
        if (zero_in_convex_hull(select(points, c), w))
            rep.weak_hyperbolic = false;
        return rep.weak_hyperbolic;
    });
    if (rep.siegel && rep.weak_hyperbolic)
        for_each_subset(n, 2 * m + 1, [&](const Cone& c) {
            if (zero_in_convex_hull(select(points, c), w))
                rep.E.push_back(c);
            return true;
        });
    return rep;
}

PolytopeFaces polytope_faces(const LVMBDatum& datum)
{
    size_t N = datum.points.size();
    std::set<Cone> faces;
    for (const auto& e : datum.E) {
        Cone comp;
        for (size_t i = 0; i < N; ++i)
            if (std::find(e.begin(), e.end(), int(i)) == e.end())
                comp.push_back(int(i));
        size_t k = comp.size();
        for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
            Cone f;
            for (size_t i = 0; i < k; ++i)
                if (mask & (1ul << i))
                    f.push_back(comp[i]);
            faces.insert(f);
        }
    }
    PolytopeFaces out;
    out.faces.assign(faces.begin(), faces.end());
    std::sort(out.faces.begin(), out.faces.end(), [](const Cone& a, const Cone& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    size_t top = N - 2 * datum.m - 1;
    for (const auto& f : out.faces) {
        if (f.size() == top)
            out.vertices.push_back(f);
        if (f.size() == 1)
            out.facets.push_back(f[0]);
    }
    return out;
}

PolytopeFaces polytope_faces(const std::vector<Vector>& points, size_t m, const Witness& w)
{
    LvmReport r = check_lvm(points, m, w);
    if (!r.siegel || !r.weak_hyperbolic)
        throw Error(Errc::InvalidInput, "configuration is not admissible");
    return polytope_faces(LVMBDatum{m, points, r.E});
}

const char* kh_name(KH v)
{
    switch (v) {
    case KH::K:
        return "K";
    case KH::H:
        return "H";
    default:
        return "neither";
    }
}

KH condition_KH(const std::vector<Vector>& points)
{
    if (points.empty())
        return KH::K;
    size_t N = points.size(), rows = points[0].size() + 1;
    std::vector<Vector> cols;
    for (const auto& p : points) {
        Vector c = p;
        c.push_back(Scalar(1));
        cols.push_back(c);
    }
    size_t real_dim = N - rank(cols);
    if (real_dim == 0)
        return KH::K;
    std::vector<std::vector<mpq_class>> coords;
    try {
        coords = rational_coordinates(cols);
    } catch (const Error& e) {
        if (e.code() == Errc::UnsupportedEntries)
            throw Error(Errc::NonRationalInput, e.what());
        throw;
    }
    (void)rows;
    size_t int_dim = ZSpan(coords, coords[0].size()).relations().size();
    if (int_dim == real_dim)
        return KH::K;
    if (int_dim == 0)
        return KH::H;
    return KH::Neither;
}

CalibratedFan lvmb_to_fan(const LVMBDatum& datum)
{
    size_t N = datum.points.size();
    if (N == 0)
        throw Error(Errc::InvalidInput, "empty configuration");
    size_t dim = datum.points[0].size();
    Vector sum(dim);
    for (const auto& p : datum.points)
        sum = sum + p;
    if (!is_zero(sum))
        throw Error(Errc::NotBalanced, "points do not sum to zero");
    auto ind = datum.indispensable();
    if (std::find(ind.begin(), ind.end(), int(N - 1)) == ind.end())
        throw Error(Errc::NoIndispensable, "the last point is not indispensable");
    std::vector<Vector> v = column_kernel(datum.points, dim, true);
    size_t n = N - 1, d = v.empty() ? 0 : v[0].size();

    Calibration h;
    h.images.assign(v.begin(), v.begin() + n);
    for (int i : ind)
        if (size_t(i) < n)
            h.J.push_back(i);
    std::vector<int> ray_of(n, -1);
    for (size_t i = 0; i < n; ++i)
        if (!h.is_virtual(int(i))) {
            ray_of[i] = int(h.I.size());
            h.I.push_back(int(i));
        }
    // straighten the first basis among non-virtual images onto e_1..e_d
    std::vector<Vector> real;
    for (int i : h.I)
        real.push_back(h.images[i]);
    std::vector<Vector> cols;
    for (int k : first_basis(real))
        cols.push_back(real[k]);
    if (cols.size() == d && d > 0) {
        Matrix L = inverse(Matrix::from_columns(cols, d));
        for (auto& x : h.images)
            x = L * x;
    }
    std::vector<Cone> cones;
    for (const auto& e : datum.E) {
        Cone c;
        for (size_t i = 0; i < n; ++i)
            if (std::find(e.begin(), e.end(), int(i)) == e.end())
                c.push_back(ray_of[i]);
        if (!c.empty())
            cones.push_back(c);
    }
    CalibratedFan cf = make_calibrated_fan(h, cones);
    cf.fan.gamma.dim = d;
    return cf;
}

GLattice g_lattice(const std::vector<Vector>& points, size_t m)
{
    size_t N = points.size();
    if (N < m + 1)
        throw Error(Errc::InvalidInput, "too few points");
    auto base = as_complex(points[0], m);
    auto diff = [&](size_t i) {
        auto p = as_complex(points[i], m);
        std::vector<Complex> row(m);
        for (size_t k = 0; k < m; ++k)
            row[k] = p[k] - base[k];
        return row;
    };
    GLattice g;
    for (size_t j = 1; j <= m; ++j)
        g.A.push_back(diff(j));
    for (size_t j = m + 1; j < N; ++j)
        g.B.push_back(diff(j));
    ComplexMatrix work = g.A, inv(m, std::vector<Complex>(m));
    for (size_t k = 0; k < m; ++k)
        inv[k][k] = {Scalar(1), Scalar()};
    if (complex_reduce(work, &inv) != m)
        throw Error(Errc::RankDeficient, "the first m+1 points are affinely dependent");
    g.BAinv.assign(g.B.size(), std::vector<Complex>(m));
    for (size_t r = 0; r < g.B.size(); ++r)
        for (size_t c = 0; c < m; ++c) {
            Complex s;
            for (size_t k = 0; k < m; ++k)
                s = s + g.B[r][k] * inv[k][c];
            g.BAinv[r][c] = s;
        }
    return g;
}

std::vector<int> lattice_permutation(const std::vector<Vector>& points, size_t m)
{
    std::vector<int> chosen;
    std::vector<Vector> current;
    for (size_t i = 0; i < points.size() && chosen.size() < m + 1; ++i) {
        current.push_back(points[i]);
        if (complex_affine_rank(current, m) + 1 == current.size())
            chosen.push_back(int(i));
        else
            current.pop_back();
    }
    if (chosen.size() < m + 1)
        throw Error(Errc::RankDeficient, "the points do not span C^m affinely");
    std::vector<int> perm = chosen;
    for (size_t i = 0; i < points.size(); ++i)
        if (std::find(chosen.begin(), chosen.end(), int(i)) == chosen.end())
            perm.push_back(int(i));
    return perm;
}

} // namespace qtoric
