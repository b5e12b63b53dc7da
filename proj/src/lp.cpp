#include "qtoric/lp.hpp"

namespace qtoric {

namespace {

struct Tableau {
    std::vector<Vector> rows; // each of length ncols + 1, rhs last
    std::vector<size_t> basis;
    Vector z;                 // reduced costs, objective value last
    size_t ncols = 0;
    const Witness* w = nullptr;

    int sign(const Scalar& s) const { return static_cast<int>(sign_at(s, *w)); }

    void pivot(size_t r, size_t c)
    {
        Scalar inv = Scalar(1) / rows[r][c];
        for (auto& x : rows[r])
            if (!x.is_zero())
                x = x * inv;
        auto eliminate = [&](Vector& row) {
            if (row[c].is_zero())
                return;
            Scalar f = row[c];
            for (size_t j = 0; j <= ncols; ++j)
                if (!rows[r][j].is_zero())
                    row[j] -= f * rows[r][j];
        };
        for (size_t i = 0; i < rows.size(); ++i)
            if (i != r)
                eliminate(rows[i]);
        eliminate(z);
        basis[r] = c;
    }

    void price(const Vector& cost)
    {
        z.assign(ncols + 1, Scalar());
        for (size_t j = 0; j <= ncols; ++j) {
            Scalar s;
            for (size_t i = 0; i < rows.size(); ++i)
                if (!cost[basis[i]].is_zero() && !rows[i][j].is_zero())
                    s += cost[basis[i]] * rows[i][j];
            if (j < ncols)
                s -= cost[j];
            z[j] = s;
        }
    }

    // Returns false when unbounded.
    bool run(const std::vector<bool>& allowed)
    {
        while (true) {
            size_t enter = ncols;
            for (size_t j = 0; j < ncols; ++j)
                if (allowed[j] && !z[j].is_zero() && sign(z[j]) < 0) {
                    enter = j;
                    break;
                }
            if (enter == ncols)
                return true;
            size_t leave = rows.size();
            Scalar best;
            for (size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][enter].is_zero() || sign(rows[i][enter]) <= 0)
                    continue;
                Scalar ratio = rows[i][ncols] / rows[i][enter];
                if (leave == rows.size()) {
                    leave = i;
                    best = ratio;
                    continue;
                }
                int cmp = sign(ratio - best);
                if (cmp < 0 || (cmp == 0 && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows.size())
                return false;
            pivot(leave, enter);
        }
    }
};

} // namespace

LpResult maximize(const Vector& c, const std::vector<LinearConstraint>& constraints, const Witness& w)
{
    size_t n = c.size();
    size_t m = constraints.size();
    std::vector<Vector> a(m);
    Vector b(m);
    std::vector<Rel> rel(m);
    size_t nslack = 0, nart = 0;
    for (size_t i = 0; i < m; ++i) {
        const auto& con = constraints[i];
        if (con.coeffs.size() != n)
            throw Error(Errc::DomainMismatch, "constraint length differs from objective");
        a[i].reserve(n);
        for (const auto& x : con.coeffs)
            a[i].push_back(substitute(x, w));
        b[i] = substitute(con.rhs, w);
        rel[i] = con.rel;
        if (sign_at(b[i], w) == Sign::Negative) {
            for (auto& x : a[i])
                x = -x;
            b[i] = -b[i];
            if (rel[i] == Rel::LE)
                rel[i] = Rel::GE;
            else if (rel[i] == Rel::GE)
                rel[i] = Rel::LE;
        }
        if (rel[i] != Rel::EQ)
            ++nslack;
        if (rel[i] != Rel::LE)
            ++nart;
    }

    Tableau t;
    t.w = &w;
    t.ncols = n + nslack + nart;
    t.rows.assign(m, Vector(t.ncols + 1));
    t.basis.assign(m, 0);
    size_t s = n, art = n + nslack;
    std::vector<bool> is_art(t.ncols, false);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j)
            t.rows[i][j] = a[i][j];
        t.rows[i][t.ncols] = b[i];
        if (rel[i] == Rel::LE) {
            t.rows[i][s] = 1;
            t.basis[i] = s++;
        } else {
            if (rel[i] == Rel::GE)
                t.rows[i][s++] = -1;
            t.rows[i][art] = 1;
            is_art[art] = true;
            t.basis[i] = art++;
        }
    }

    if (nart) {
        Vector cost(t.ncols);
        for (size_t j = 0; j < t.ncols; ++j)
            if (is_art[j])
                cost[j] = -1;
        t.price(cost);
        t.run(std::vector<bool>(t.ncols, true));
        if (!t.z[t.ncols].is_zero() && sign_at(t.z[t.ncols], w) != Sign::Zero)
            return {LpStatus::Infeasible, Scalar(), {}};
        for (size_t i = 0; i < t.rows.size();) {
            if (!is_art[t.basis[i]]) {
                ++i;
                continue;
            }
            size_t col = t.ncols;
            for (size_t j = 0; j < t.ncols; ++j)
                if (!is_art[j] && !t.rows[i][j].is_zero()) {
                    col = j;
                    break;
                }
            if (col < t.ncols) {
                t.pivot(i, col);
                ++i;
            } else {
                t.rows.erase(t.rows.begin() + i);
                t.basis.erase(t.basis.begin() + i);
            }
        }
    }

    Vector cost(t.ncols);
    for (size_t j = 0; j < n; ++j)
        cost[j] = substitute(c[j], w);
    t.price(cost);
    std::vector<bool> allowed(t.ncols, true);
    for (size_t j = 0; j < t.ncols; ++j)
        if (is_art[j])
            allowed[j] = false;
    if (!t.run(allowed))
        return {LpStatus::Unbounded, Scalar(), {}};
    LpResult r;
    r.status = LpStatus::Optimal;
    r.value = t.z[t.ncols];
    r.x.assign(n, Scalar());
    for (size_t i = 0; i < t.rows.size(); ++i)
        if (t.basis[i] < n)
            r.x[t.basis[i]] = t.rows[i][t.ncols];
    return r;
}

bool zero_in_convex_hull(const std::vector<Vector>& points, const Witness& w)
{
    if (points.empty())
        return false;
    size_t k = points.size(), d = points[0].size();
    std::vector<LinearConstraint> cons;
    for (size_t i = 0; i < d; ++i) {
        Vector row(k);
        for (size_t j = 0; j < k; ++j)
            row[j] = points[j][i];
        cons.push_back({row, Rel::EQ, Scalar()});
    }
    cons.push_back({Vector(k, Scalar(1)), Rel::EQ, Scalar(1)});
    return maximize(Vector(k), cons, w).status == LpStatus::Optimal;
}

} // namespace qtoric
