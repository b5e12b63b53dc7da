#include "qtoric/moduli.hpp"

#include <algorithm>
#include <numeric>

namespace qtoric {

namespace {

IntMatrix int2(long p, long r, long q, long s) { return {{p, r}, {q, s}}; }

IntMatrix int2_inverse(const IntMatrix& m)
{
    mpz_class det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return {{m[1][1] * det, -m[0][1] * det}, {-m[1][0] * det, m[0][0] * det}};
}

// Unimodular H with a . H = 0 for rational a.
IntMatrix bezout(const mpq_class& a)
{
    if (a == 0)
        return int_identity(2);
    mpz_class p = a.get_num(), q = a.get_den(), g, s, r;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    return {{r, -p}, {s, q}};
}

void require_real_quadratic(const Scalar& x)
{
    for (const Var* v : x.variables())
        if (!v->quadratic())
            throw Error(Errc::UnsupportedField, "parameter " + v->name + " is not algebraic");
    std::vector<std::vector<mpq_class>> coords;
    try {
        coords = rational_coordinates({Vector{Scalar(1)}, Vector{x}, Vector{x * x}});
    } catch (const Error&) {
        throw Error(Errc::UnsupportedField, x.str() + " is not a quadratic irrational");
    }
    std::vector<Vector> rows;
    for (const auto& c : coords) {
        Vector r;
        for (const auto& q : c)
            r.push_back(Scalar(q));
        rows.push_back(r);
    }
    if (rank(rows) > 2)
        throw Error(Errc::UnsupportedField, x.str() + " has degree above two");
}

mpz_class certified_floor(const Scalar& x)
{
    Witness none;
    mpq_class approx = approximate(x, none, 256);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), approx.get_num_mpz_t(), approx.get_den_mpz_t());
    while (sign_at(x - Scalar(q), none) == Sign::Negative)
        --q;
    while (sign_at(x - Scalar(mpz_class(q + 1)), none) != Sign::Negative)
        ++q;
    return q;
}

struct Expansion {
    std::vector<mpz_class> quotients;
    std::vector<Scalar> complete;  // x_k
    std::vector<IntMatrix> moves;  // x . moves[k] = x_k
    size_t period_start = 0;
};

Expansion expand(const Scalar& x0)
{
    const size_t cap = 10000;
    Expansion e;
    Scalar x = x0;
    IntMatrix M = int_identity(2);
    while (e.complete.size() < cap) {
        for (size_t j = 0; j < e.complete.size(); ++j)
            if ((e.complete[j] - x).is_zero()) {
                e.period_start = j;
                return e;
            }
        e.complete.push_back(x);
        e.moves.push_back(M);
        mpz_class q = certified_floor(x);
        e.quotients.push_back(q);
        x = Scalar(1) / (x - Scalar(q));
        M = int_mul(int_mul(M, IntMatrix{{1, -q}, {0, 1}}), int2(0, 1, 1, 0));
    }
    throw Error(Errc::SearchBoundExceeded, "continued fraction period not found");
}

std::vector<Scalar> sigma(const std::vector<Scalar>& p) { return {p[1], p[0]}; }
std::vector<Scalar> tau(const std::vector<Scalar>& p) { return {Scalar(1) / p[1], -p[0] / p[1]}; }

bool same(const std::vector<Scalar>& a, const std::vector<Scalar>& b)
{
    for (size_t i = 0; i < a.size(); ++i)
        if (!(a[i] - b[i]).is_zero())
            return false;
    return true;
}

std::vector<std::string> key(const std::vector<Scalar>& v)
{
    std::vector<std::string> k;
    for (const auto& x : v)
        k.push_back(x.str());
    return k;
}

bool is_integer(const Complex& z) { return z.im.is_zero() && z.re.is_integer(); }

Complex sub(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }

Sign zone(const Complex& z, const Witness& w) { return sign_at(z.im - Scalar(1), w); }

std::vector<Scalar> flatten(const Matrix& m)
{
    std::vector<Scalar> out;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            out.push_back(m(i, j));
    return out;
}

Matrix permute_columns(const Matrix& m, const std::vector<int>& s)
{
    Matrix out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            out(i, j) = m(i, s[j]);
    return out;
}

struct LeftCanon {
    Matrix form;
    IntMatrix H1; // form = H1^{-1} m
};

bool all_rational(const Matrix& m)
{
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_rational())
                return false;
    return true;
}

LeftCanon left_canon_rational(const Matrix& m)
{
    mpz_class D = 1;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            D = lcm(D, m(i, j).rational().get_den());
    IntMatrix N(m.rows(), IntVector(m.cols()));
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            mpq_class v = m(i, j).rational() * D;
            N[i][j] = v.get_num();
        }
    Hnf h = hnf(N, m.cols());
    Matrix form = to_matrix(h.H, m.cols());
    Scalar inv(mpq_class(1) / mpq_class(D));
    for (size_t i = 0; i < form.rows(); ++i)
        for (size_t j = 0; j < form.cols(); ++j)
            form(i, j) = form(i, j) * inv;
    IntMatrix H1 = to_int_matrix(inverse(to_matrix(h.U, m.rows())));
    return {form, H1};
}

// Unimodular d x d matrices with entries in [-bound, bound].
std::vector<IntMatrix> bounded_unimodular(size_t d, int bound)
{
    size_t side = 2 * size_t(bound) + 1, cells = d * d;
    double total = 1;
    for (size_t i = 0; i < cells; ++i)
        total *= double(side);
    if (total > 2e6)
        throw Error(Errc::SearchBoundExceeded, "GL_d(Z) search space too large");
    std::vector<IntMatrix> out;
    std::vector<int> digits(cells, -bound);
    while (true) {
        IntMatrix G(d, IntVector(d));
        for (size_t c = 0; c < cells; ++c)
            G[c / d][c % d] = digits[c];
        mpz_class det = int_det(G);
        if (det == 1 || det == -1)
            out.push_back(G);
        size_t c = 0;
        while (c < cells && digits[c] == bound)
            digits[c++] = -bound;
        if (c == cells)
            return out;
        ++digits[c];
    }
}

std::string perm_name(const std::vector<int>& s)
{
    std::string out = "s=[";
    for (size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::to_string(s[i] + 1);
    return out + "]";
}

} // namespace

Matrix torus_act(const Matrix& hbar, const IntMatrix& H)
{
    size_t d = hbar.rows(), k = hbar.cols(), n = d + k;
    if (H.size() != n || (n && H[0].size() != n))
        throw Error(Errc::InvalidInput, "H must be n x n");
    mpz_class det = int_det(H);
    if (det != 1 && det != -1)
        throw Error(Errc::NotUnimodular, "det H is not +-1");
    Matrix Hm = to_matrix(H, n);
    Matrix H1(d, d), H2(d, k), H3(k, d), H4(k, k);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const Scalar& x = Hm(i, j);
            if (i < d && j < d)
                H1(i, j) = x;
            else if (i < d)
                H2(i, j - d) = x;
            else if (j < d)
                H3(i - d, j) = x;
            else
                H4(i - d, j - d) = x;
        }
    Matrix X = k ? H1 + hbar * H3 : H1;
    Matrix Y = k ? H2 + hbar * H4 : H2;
    if (determinant(X).is_zero())
        throw Error(Errc::SingularBlock, "H1 + hbar H3 is singular");
    return inverse(X) * Y;
}

Scalar torus_act(const Scalar& a, const IntMatrix& H)
{
    Matrix m(1, 1);
    m(0, 0) = a;
    return torus_act(m, H)(0, 0);
}

ContinuedFraction continued_fraction(const Scalar& x)
{
    if (x.is_rational())
        throw Error(Errc::UnsupportedField, "rational input has no periodic expansion");
    require_real_quadratic(x);
    Expansion e = expand(x);
    ContinuedFraction cf;
    cf.preperiod.assign(e.quotients.begin(), e.quotients.begin() + e.period_start);
    cf.period.assign(e.quotients.begin() + e.period_start, e.quotients.end());
    return cf;
}

std::optional<IntMatrix> torus_equiv_2d(const Scalar& a, const Scalar& ap)
{
    if (!a.is_rational())
        require_real_quadratic(a);
    if (!ap.is_rational())
        require_real_quadratic(ap);
    if (a.is_rational() != ap.is_rational())
        return std::nullopt;
    IntMatrix H;
    if (a.is_rational()) {
        H = int_mul(bezout(a.rational()), int2_inverse(bezout(ap.rational())));
    } else {
        Expansion ea = expand(a), eb = expand(ap);
        bool found = false;
        for (size_t i = ea.period_start; i < ea.complete.size() && !found; ++i)
            for (size_t j = eb.period_start; j < eb.complete.size() && !found; ++j)
                if ((ea.complete[i] - eb.complete[j]).is_zero()) {
                    H = int_mul(ea.moves[i], int2_inverse(eb.moves[j]));
                    found = true;
                }
        if (!found)
            return std::nullopt;
    }
    if (!(torus_act(a, H) - ap).is_zero())
        throw Error(Errc::InvalidInput, "internal: equivalence witness does not verify");
    return H;
}

OrbitReport p2_orbit(const Scalar& a, const Scalar& b, const Witness& w)
{
    if (sign_at(a, w) != Sign::Negative || sign_at(b, w) != Sign::Negative)
        throw Error(Errc::OutOfDomain, "a and b must be negative");
    std::vector<Scalar> p{a, b};
    std::vector<std::pair<std::string, std::vector<Scalar>>> images = {
        {"id", p},
        {"sigma", sigma(p)},
        {"tau", tau(p)},
        {"tau^2", tau(tau(p))},
        {"sigma.tau", sigma(tau(p))},
        {"tau.sigma", tau(sigma(p))},
    };
    OrbitReport rep;
    size_t best = 0;
    for (size_t i = 0; i < images.size(); ++i) {
        const auto& [name, v] = images[i];
        if (same(v, p))
            rep.isotropy.push_back(name);
        if (key(v) < key(images[best].second))
            best = i;
        bool seen = false;
        for (const auto& o : rep.orbit)
            seen = seen || same(o.value, v);
        if (!seen)
            rep.orbit.push_back({name, v});
    }
    rep.canonical = images[best].second;
    rep.element = images[best].first;
    switch (rep.isotropy.size()) {
    case 6:
        rep.isotropy_group = "S3";
        break;
    case 2:
        rep.isotropy_group = "Z2";
        break;
    case 3:
        rep.isotropy_group = "Z3";
        break;
    default:
        rep.isotropy_group = "trivial";
    }
    return rep;
}

Weights wps_weights(const Scalar& a, const Scalar& b)
{
    if (!a.is_rational() || !b.is_rational())
        throw Error(Errc::NotRational, "weights need rational a and b");
    mpq_class qa = a.rational(), qb = b.rational();
    if (qa >= 0 || qb >= 0)
        throw Error(Errc::OutOfDomain, "a and b must be negative");
    qa = -qa;
    qb = -qb;
    mpz_class p = qa.get_num(), q = qa.get_den(), r = qb.get_num(), s = qb.get_den();
    mpz_class g = gcd(s * p, q * r);
    return {lcm(q, s), lcm(s * p / g, p), lcm(q * r / g, r)};
}

HopfReport hopf_equiv(const Complex& l3, const Complex& l4, const Complex& m3, const Complex& m4,
                      const Witness& w)
{
    for (const auto& [x, y] : {std::pair{l3, l4}, std::pair{m3, m4}}) {
        Sign sx = zone(x, w), sy = zone(y, w);
        if (sx == Sign::Zero || sx != sy)
            throw Error(Errc::OutOfZone, "both points must lie on the same side of Im z = 1");
    }
    HopfReport rep;
    rep.isotropy = is_integer(sub(l4, l3)) ? "Z2" : "trivial";
    Complex d3 = sub(m3, l3), d4 = sub(m4, l4);
    if (is_integer(d3) && is_integer(d4)) {
        rep.equivalent = true;
        rep.lattice_vector = {d3.re.rational().get_num(), d4.re.rational().get_num()};
        return rep;
    }
    Complex s3 = sub(m3, l4), s4 = sub(m4, l3);
    if (is_integer(s3) && is_integer(s4)) {
        rep.equivalent = true;
        rep.switched = true;
        rep.lattice_vector = {s3.re.rational().get_num(), s4.re.rational().get_num()};
    }
    return rep;
}

OrbitReport cal_torus_orbit_maximal(const Matrix& hbar, OrbitMode mode, int bound)
{
    size_t d = hbar.rows(), k = hbar.cols();
    if (mode == OrbitMode::Full && k > 8)
        throw Error(Errc::SearchBoundExceeded, "more than 8 virtual generators");
    bool rational = all_rational(hbar);
    std::vector<IntMatrix> search;
    if (!rational)
        search = bounded_unimodular(d, bound);

    auto canon = [&](const Matrix& m) {
        if (rational)
            return left_canon_rational(m);
        LeftCanon best{Matrix(), {}};
        std::vector<std::string> best_key;
        for (const auto& G : search) {
            Matrix f = to_matrix(G, d) * m;
            auto kf = key(flatten(f));
            if (best_key.empty() || kf < best_key) {
                best_key = kf;
                best = {f, to_int_matrix(inverse(to_matrix(G, d)))};
            }
        }
        return best;
    };

    std::vector<int> s(k);
    std::iota(s.begin(), s.end(), 0);
    std::vector<std::string> self_key;
    OrbitReport rep;
    std::vector<std::string> best_key;
    std::vector<std::vector<std::string>> keys;
    std::vector<std::vector<int>> perms;
    do {
        LeftCanon c = canon(permute_columns(hbar, s));
        auto kc = key(flatten(c.form));
        if (best_key.empty() || kc < best_key) {
            best_key = kc;
            rep.canonical = flatten(c.form);
            rep.matrix = c.H1;
            rep.element = perm_name(s);
        }
        keys.push_back(kc);
        perms.push_back(s);
    } while (mode == OrbitMode::Full && std::next_permutation(s.begin(), s.end()));

    // keys[0] belongs to the identity permutation
    for (size_t i = 0; i < keys.size(); ++i)
        if (keys[i] == keys[0])
            rep.isotropy.push_back(perm_name(perms[i]));
    if (rank(hbar) < d)
        rep.isotropy_group = "infinite";
    else if (mode == OrbitMode::Marked)
        rep.isotropy_group = "trivial";
    else
        rep.isotropy_group = "order " + std::to_string(rep.isotropy.size());
    rep.heuristic = !rational;
    rep.bound = rational ? 0 : bound;
    return rep;
}

} // namespace qtoric
