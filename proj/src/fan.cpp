#include "qtoric/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "qtoric/lp.hpp"

namespace qtoric {

QLattice QLattice::standard(size_t d)
{
    QLattice g;
    g.dim = d;
    for (size_t i = 0; i < d; ++i)
        g.generators.push_back(unit_vector(d, i));
    return g;
}

size_t gamma_rank(const QLattice& gamma)
{
    if (gamma.generators.empty())
        return 0;
    auto coords = rational_coordinates(gamma.generators);
    return ZSpan(coords, coords[0].size()).rank();
}

std::optional<IntVector> gamma_contains(const QLattice& gamma, const Vector& x)
{
    if (x.size() != gamma.dim)
        throw Error(Errc::DomainMismatch, "vector dimension differs from the lattice");
    std::vector<Vector> all = gamma.generators;
    all.push_back(x);
    auto coords = rational_coordinates(all);
    std::vector<std::vector<mpq_class>> gens(coords.begin(), coords.end() - 1);
    return ZSpan(gens, coords.back().size()).express(coords.back());
}

bool gamma_includes(const QLattice& gamma, const std::vector<Vector>& xs)
{
    if (xs.empty())
        return true;
    std::vector<Vector> all = gamma.generators;
    all.insert(all.end(), xs.begin(), xs.end());
    auto coords = rational_coordinates(all);
    size_t m = gamma.generators.size();
    std::vector<std::vector<mpq_class>> gens(coords.begin(), coords.begin() + m);
    ZSpan span(gens, coords[0].size());
    for (size_t k = m; k < coords.size(); ++k)
        if (!span.express(coords[k]))
            return false;
    return true;
}

QLattice transform(const QLattice& gamma, const Matrix& L)
{
    QLattice g;
    g.dim = L.rows();
    for (const auto& v : gamma.generators)
        g.generators.push_back(L * v);
    return g;
}

Cone sorted(Cone c)
{
    std::sort(c.begin(), c.end());
    return c;
}

std::set<Cone> cone_poset(const QuantumFan& fan)
{
    std::set<Cone> out;
    out.insert(Cone{});
    for (const auto& c : fan.cones) {
        Cone s = sorted(c);
        size_t k = s.size();
        if (k > 30)
            throw Error(Errc::InvalidInput, "cone too large");
        for (unsigned long mask = 1; mask < (1ul << k); ++mask) {
            Cone f;
            for (size_t i = 0; i < k; ++i)
                if (mask & (1ul << i))
                    f.push_back(s[i]);
            out.insert(f);
        }
    }
    return out;
}

std::vector<Cone> maximal_cones(const QuantumFan& fan)
{
    std::vector<Cone> out;
    std::set<Cone> seen;
    for (size_t i = 0; i < fan.cones.size(); ++i) {
        Cone si = sorted(fan.cones[i]);
        if (seen.count(si))
            continue;
        bool maximal = true;
        for (size_t j = 0; j < fan.cones.size() && maximal; ++j) {
            Cone sj = sorted(fan.cones[j]);
            if (sj.size() > si.size() && std::includes(sj.begin(), sj.end(), si.begin(), si.end()))
                maximal = false;
        }
        if (maximal) {
            out.push_back(fan.cones[i]);
            seen.insert(si);
        }
    }
    return out;
}

QuantumFan transform(const QuantumFan& fan, const Matrix& L)
{
    QuantumFan f;
    f.gamma = transform(fan.gamma, L);
    for (const auto& v : fan.rays)
        f.rays.push_back(L * v);
    f.cones = fan.cones;
    return f;
}

bool cones_meet_in_common_face(const std::vector<Vector>& rays, const Cone& S, const Cone& T,
                               const Witness& w)
{
    Cone s = sorted(S), t = sorted(T);
    Cone common, only_s, only_t;
    std::set_intersection(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(common));
    std::set_difference(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(only_s));
    std::set_difference(t.begin(), t.end(), s.begin(), s.end(), std::back_inserter(only_t));
    if (only_s.empty() || only_t.empty())
        return true;
    // Variables u+ (d), u- (d), t. Maximize t subject to
    // <u, v_i> = 0 on common rays, >= t on S only, <= -t on T only.
    size_t d = rays[0].size();
    size_t nv = 2 * d + 1;
    auto form = [&](int ray, const Scalar& sign) {
        Vector row(nv);
        for (size_t k = 0; k < d; ++k) {
            row[k] = sign * rays[ray][k];
            row[d + k] = -(sign * rays[ray][k]);
        }
        return row;
    };
    std::vector<LinearConstraint> cons;
    for (int i : common)
        cons.push_back({form(i, 1), Rel::EQ, Scalar()});
    for (int i : only_s) {
        Vector row = form(i, 1);
        row[2 * d] = -1;
        cons.push_back({row, Rel::GE, Scalar()});
    }
    for (int j : only_t) {
        Vector row = form(j, -1);
        row[2 * d] = -1;
        cons.push_back({row, Rel::GE, Scalar()});
    }
    for (size_t k = 0; k < nv; ++k)
        cons.push_back({unit_vector(nv, k), Rel::LE, Scalar(1)});
    Vector obj = unit_vector(nv, 2 * d);
    LpResult r = maximize(obj, cons, w);
    return r.status == LpStatus::Optimal && sign_at(r.value, w) == Sign::Positive;
}

ValidationReport validate_fan(const QuantumFan& fan, const Witness& w)
{
    ValidationReport rep;
    size_t d = fan.dim();
    for (const auto& g : fan.gamma.generators)
        if (g.size() != d) {
            rep.fail("lattice generator of wrong dimension");
            return rep;
        }
    if (rank(fan.gamma.generators) != d)
        rep.fail("lattice generators do not span R^" + std::to_string(d));
    for (size_t i = 0; i < fan.rays.size(); ++i) {
        if (fan.rays[i].size() != d) {
            rep.fail("ray " + std::to_string(i + 1) + " has wrong dimension");
            return rep;
        }
        if (is_zero(fan.rays[i]))
            rep.fail("ray " + std::to_string(i + 1) + " is the zero vector");
    }
    try {
        if (!fan.rays.empty() && !gamma_includes(fan.gamma, fan.rays))
            rep.fail("some ray generator is not in the lattice");
    } catch (const Error& e) {
        if (e.code() != Errc::UnsupportedEntries)
            throw;
    }
    std::vector<bool> used(fan.rays.size(), false);
    for (const auto& c : fan.cones) {
        std::set<int> distinct(c.begin(), c.end());
        bool ok = distinct.size() == c.size();
        for (int i : c)
            if (i < 0 || size_t(i) >= fan.rays.size())
                ok = false;
        if (!ok) {
            rep.fail("cone with repeated or out-of-range indices");
            continue;
        }
        for (int i : c)
            used[i] = true;
        std::vector<Vector> gens;
        for (int i : c)
            gens.push_back(fan.rays[i]);
        if (rank(gens) != gens.size()) {
            std::string name;
            for (int i : c)
                name += std::to_string(i + 1);
            rep.fail("cone " + name + " has linearly dependent generators");
        }
    }
    for (size_t i = 0; i < used.size(); ++i)
        if (!used[i])
            rep.fail("ray " + std::to_string(i + 1) + " spans no cone");
    if (!rep.valid)
        return rep;
    auto maxi = maximal_cones(fan);
    for (size_t i = 0; i < maxi.size(); ++i)
        for (size_t j = i + 1; j < maxi.size(); ++j)
            if (!cones_meet_in_common_face(fan.rays, maxi[i], maxi[j], w)) {
                std::string a, b;
                for (int k : maxi[i])
                    a += std::to_string(k + 1);
                for (int k : maxi[j])
                    b += std::to_string(k + 1);
                rep.fail("cones " + a + " and " + b + " overlap beyond a common face");
            }
    return rep;
}

bool is_complete_type(const CombType& D, size_t d)
{
    if (d == 0)
        return true;
    std::vector<Cone> maxi;
    for (const auto& c : D.cones) {
        bool maximal = true;
        for (const auto& o : D.cones)
            if (o.size() > c.size() && std::includes(o.begin(), o.end(), c.begin(), c.end())) {
                maximal = false;
                break;
            }
        if (maximal)
            maxi.push_back(c);
    }
    if (maxi.empty())
        return false;
    for (const auto& c : maxi)
        if (c.size() != d)
            return false;
    std::map<Cone, std::vector<size_t>> facets;
    for (size_t k = 0; k < maxi.size(); ++k)
        for (size_t drop = 0; drop < d; ++drop) {
            Cone f;
            for (size_t i = 0; i < d; ++i)
                if (i != drop)
                    f.push_back(maxi[k][i]);
            facets[f].push_back(k);
        }
    std::vector<size_t> parent(maxi.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<size_t(size_t)> find = [&](size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& [f, owners] : facets) {
        if (owners.size() != 2)
            return false;
        parent[find(owners[0])] = find(owners[1]);
    }
    for (size_t k = 0; k < maxi.size(); ++k)
        if (find(k) != find(0))
            return false;
    return true;
}

bool is_complete(const QuantumFan& fan) { return is_complete_type(comb_type(fan), fan.dim()); }

bool is_gamma_complete(const QuantumFan& fan)
{
    if (!gamma_includes(fan.gamma, fan.rays))
        return false;
    QLattice span;
    span.dim = fan.dim();
    span.generators = fan.rays;
    if (span.generators.empty())
        return fan.gamma.generators.empty() || gamma_rank(fan.gamma) == 0;
    return gamma_includes(span, fan.gamma.generators);
}

bool is_polytopal(const QuantumFan& fan, const Witness& w)
{
    if (!is_complete(fan))
        return false;
    size_t d = fan.dim(), p = fan.rays.size();
    if (d == 0)
        return true;
    std::vector<Vector> rays;
    for (const auto& v : fan.rays) {
        Vector s;
        for (const auto& x : v)
            s.push_back(substitute(x, w));
        rays.push_back(s);
    }
    // psi+ (p), psi- (p), t
    size_t nv = 2 * p + 1;
    std::vector<LinearConstraint> cons;
    auto maxi = maximal_cones(fan);
    for (size_t a = 0; a < maxi.size(); ++a)
        for (size_t b = a + 1; b < maxi.size(); ++b) {
            Cone sa = sorted(maxi[a]), sb = sorted(maxi[b]), common, only_b;
            std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
            if (common.size() + 1 != d)
                continue;
            std::set_difference(sb.begin(), sb.end(), sa.begin(), sa.end(), std::back_inserter(only_b));
            int j = only_b[0];
            std::vector<Vector> cols;
            for (int k : sa)
                cols.push_back(rays[k]);
            auto c = solve(Matrix::from_columns(cols), rays[j]);
            if (!c)
                throw Error(Errc::Indeterminate, "a maximal cone degenerates at the witness");
            Vector row(nv);
            row[j] = 1;
            row[p + j] = -1;
            for (size_t k = 0; k < sa.size(); ++k) {
                row[sa[k]] -= (*c)[k];
                row[p + sa[k]] += (*c)[k];
            }
            row[2 * p] = -1;
            cons.push_back({row, Rel::GE, Scalar()});
        }
    for (size_t k = 0; k < nv; ++k)
        cons.push_back({unit_vector(nv, k), Rel::LE, Scalar(1)});
    LpResult r = maximize(unit_vector(nv, 2 * p), cons, w);
    return r.status == LpStatus::Optimal && sign_at(r.value, w) == Sign::Positive;
}

FanProperties fan_properties(const QuantumFan& fan, const Witness& w)
{
    FanProperties f;
    f.irrational = gamma_rank(fan.gamma) > fan.dim();
    f.complete = is_complete(fan);
    f.gamma_complete = is_gamma_complete(fan);
    f.polytopal = f.complete && is_polytopal(fan, w);
    return f;
}

CombType comb_type(const QuantumFan& fan)
{
    return CombType{int(fan.rays.size()), cone_poset(fan)};
}

CombType comb_type(int p, const std::vector<Cone>& cones)
{
    QuantumFan f;
    f.rays.resize(p);
    f.cones = cones;
    return CombType{p, cone_poset(f)};
}

CombType apply_permutation(const CombType& D, const std::vector<int>& s)
{
    CombType r{D.p, {}};
    for (const auto& c : D.cones) {
        Cone img;
        for (int i : c)
            img.push_back(s.at(i));
        r.cones.insert(sorted(img));
    }
    return r;
}

std::optional<std::vector<int>> comb_equivalent(const CombType& D, const CombType& Dp)
{
    if (D.p != Dp.p || D.cones.size() != Dp.cones.size())
        return std::nullopt;
    int p = D.p;
    auto signature = [&](const CombType& T) {
        std::vector<std::vector<size_t>> sig(p);
        for (const auto& c : T.cones)
            for (int i : c)
                sig[i].push_back(c.size());
        for (auto& s : sig)
            std::sort(s.begin(), s.end());
        return sig;
    };
    auto sa = signature(D), sb = signature(Dp);
    // cones of D grouped by their largest element, checked once it is assigned
    std::vector<std::vector<Cone>> closing(p);
    for (const auto& c : D.cones)
        if (!c.empty())
            closing[c.back()].push_back(c);
    std::vector<int> s(p, -1);
    std::vector<bool> used(p, false);
    std::function<bool(int)> extend = [&](int i) {
        if (i == p)
            return true;
        for (int t = 0; t < p; ++t) {
            if (used[t] || sa[i] != sb[t])
                continue;
            s[i] = t;
            bool ok = true;
            for (const auto& c : closing[i]) {
                Cone img;
                for (int k : c)
                    img.push_back(s[k]);
                if (!Dp.cones.count(sorted(img))) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                used[t] = true;
                if (extend(i + 1))
                    return true;
                used[t] = false;
            }
        }
        s[i] = -1;
        return false;
    };
    if (extend(0))
        return s;
    return std::nullopt;
}

std::vector<int> first_basis(const std::vector<Vector>& vectors)
{
    std::vector<int> chosen;
    std::vector<Vector> current;
    for (size_t i = 0; i < vectors.size(); ++i) {
        current.push_back(vectors[i]);
        if (rank(current) == current.size())
            chosen.push_back(int(i));
        else
            current.pop_back();
    }
    return chosen;
}

StandardForm standardize_fan(const QuantumFan& fan)
{
    size_t d = fan.dim(), p = fan.rays.size();
    std::vector<int> basis = first_basis(fan.rays);
    std::vector<Vector> cols;
    for (int i : basis)
        cols.push_back(fan.rays[i]);
    for (size_t k = 0; k < d && cols.size() < d; ++k) {
        cols.push_back(unit_vector(d, k));
        if (rank(cols) != cols.size())
            cols.pop_back();
    }
    StandardForm out;
    out.L = d ? inverse(Matrix::from_columns(cols, d)) : Matrix();
    out.ray_perm.assign(p, -1);
    int next = 0;
    for (int i : basis)
        out.ray_perm[i] = next++;
    for (size_t i = 0; i < p; ++i)
        if (out.ray_perm[i] < 0)
            out.ray_perm[i] = next++;
    QuantumFan moved = d ? transform(fan, out.L) : fan;
    out.fan.gamma = moved.gamma;
    out.fan.rays.assign(p, Vector());
    for (size_t i = 0; i < p; ++i)
        out.fan.rays[out.ray_perm[i]] = moved.rays[i];
    for (const auto& c : fan.cones) {
        Cone img;
        for (int i : c)
            img.push_back(out.ray_perm[i]);
        out.fan.cones.push_back(img);
    }
    return out;
}

bool d_realizable(const std::vector<Vector>& v, const CombType& D, const Witness& w)
{
    if (v.empty() || D.p != int(v.size()))
        return false;
    size_t d = v[0].size();
    QuantumFan fan;
    fan.gamma = QLattice::standard(d);
    for (const auto& x : v)
        fan.gamma.generators.push_back(x);
    fan.rays = v;
    fan.cones.assign(D.cones.begin(), D.cones.end());
    fan.cones.erase(std::remove(fan.cones.begin(), fan.cones.end(), Cone{}), fan.cones.end());
    if (!validate_fan(fan, w).valid)
        return false;
    if (is_complete_type(D, d))
        return is_complete(fan);
    return true;
}

} // namespace qtoric
