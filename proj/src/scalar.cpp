#include "qtoric/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace qtoric {

const char* errc_name(Errc code)
{
    switch (code) {
    case Errc::Indeterminate: return "Indeterminate";
    case Errc::Singular: return "Singular";
    case Errc::UnsupportedEntries: return "UnsupportedEntries";
    case Errc::NotGammaComplete: return "NotGammaComplete";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::EmptyIntersection: return "EmptyIntersection";
    case Errc::NotBalanced: return "NotBalanced";
    case Errc::NoIndispensable: return "NoIndispensable";
    case Errc::NotEven: return "NotEven";
    case Errc::NotComplete: return "NotComplete";
    case Errc::NonRationalInput: return "NonRationalInput";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::NotUnimodular: return "NotUnimodular";
    case Errc::SingularBlock: return "SingularBlock";
    case Errc::UnsupportedField: return "UnsupportedField";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::NotRational: return "NotRational";
    case Errc::OutOfZone: return "OutOfZone";
    case Errc::SearchBoundExceeded: return "SearchBoundExceeded";
    case Errc::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

namespace {

std::mutex registry_mutex;

const Var* intern(const std::string& name, const mpq_class& D)
{
    static std::map<std::pair<std::string, std::string>, std::unique_ptr<Var>> registry;
    std::lock_guard<std::mutex> lock(registry_mutex);
    auto key = std::make_pair(name, D.get_str());
    auto it = registry.find(key);
    if (it != registry.end())
        return it->second.get();
    auto v = std::make_unique<Var>(Var{name, D});
    const Var* p = v.get();
    registry.emplace(key, std::move(v));
    return p;
}

// Product of two monomials; quadratic parameters fold t^2 into the returned factor.
Monomial mono_mul(const Monomial& a, const Monomial& b, mpq_class& factor)
{
    Monomial r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    auto push = [&](const Var* v, unsigned e) {
        if (v->quadratic() && e >= 2) {
            mpq_class p;
            mpq_class base = v->square;
            p = 1;
            for (unsigned k = 0; k < e / 2; ++k)
                p *= base;
            factor *= p;
            e %= 2;
        }
        if (e)
            r.emplace_back(v, e);
    };
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && var_less(a[i].first, b[j].first))) {
            push(a[i].first, a[i].second);
            ++i;
        } else if (i == a.size() || var_less(b[j].first, a[i].first)) {
            push(b[j].first, b[j].second);
            ++j;
        } else {
            push(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return r;
}

bool mono_divide(const Monomial& a, const Monomial& b, Monomial& q)
{
    q.clear();
    size_t j = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (j < b.size() && b[j].first == a[i].first) {
            if (b[j].second > a[i].second)
                return false;
            if (a[i].second > b[j].second)
                q.emplace_back(a[i].first, a[i].second - b[j].second);
            ++j;
        } else {
            if (j < b.size() && var_less(b[j].first, a[i].first))
                return false;
            q.push_back(a[i]);
        }
    }
    return j == b.size();
}

std::string mono_str(const Monomial& m)
{
    std::string s;
    for (const auto& [v, e] : m) {
        if (!s.empty())
            s += "*";
        s += v->name;
        if (e > 1)
            s += "^" + std::to_string(e);
    }
    return s;
}

using UPoly = std::vector<Poly>; // coefficients by degree in one variable

UPoly coefficients_in(const Poly& p, const Var* x)
{
    UPoly c(p.degree_in(x) + 1);
    for (const auto& [m, coef] : p.terms()) {
        unsigned e = 0;
        Monomial rest;
        for (const auto& ve : m) {
            if (ve.first == x)
                e = ve.second;
            else
                rest.push_back(ve);
        }
        c[e].add_term(rest, coef);
    }
    return c;
}

Poly from_coefficients(const UPoly& c, const Var* x)
{
    Poly r;
    for (unsigned e = 0; e < c.size(); ++e) {
        if (c[e].is_zero())
            continue;
        Monomial xe;
        if (e)
            xe.emplace_back(x, e);
        Poly xp;
        xp.add_term(xe, 1);
        r = r + c[e] * xp;
    }
    return r;
}

void trim(UPoly& a)
{
    while (!a.empty() && a.back().is_zero())
        a.pop_back();
}

Poly monic(const Poly& p)
{
    if (p.is_zero())
        return p;
    return p.scaled(1 / p.leading_coefficient());
}

Poly content(const UPoly& a)
{
    Poly g;
    for (const auto& c : a) {
        if (c.is_zero())
            continue;
        g = poly_gcd(g, c);
        if (g.is_constant())
            return Poly(1);
    }
    return g;
}

// Scales so that all rational coefficients become coprime integers.
UPoly integer_primitive(UPoly a)
{
    mpz_class l = 1, g = 0;
    for (const auto& p : a)
        for (const auto& t : p.terms())
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.second.get_den().get_mpz_t());
    for (const auto& p : a)
        for (const auto& t : p.terms()) {
            mpz_class v = t.second.get_num() * (l / t.second.get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        }
    if (g == 0)
        return a;
    mpq_class f(l, g);
    f.canonicalize();
    if (f != 1)
        for (auto& p : a)
            p = p.scaled(f);
    return a;
}

UPoly primitive(const UPoly& a)
{
    Poly c = content(a);
    if (c.is_constant())
        return integer_primitive(a);
    UPoly r;
    for (const auto& x : a)
        r.push_back(divide_exact(x, c));
    return integer_primitive(r);
}

UPoly pseudo_remainder(UPoly a, const UPoly& b)
{
    trim(a);
    const Poly& lb = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        Poly la = a.back();
        size_t shift = a.size() - b.size();
        for (size_t k = 0; k < a.size(); ++k) {
            Poly t = lb * a[k];
            if (k >= shift && k - shift < b.size())
                t = t - la * b[k - shift];
            a[k] = t;
        }
        trim(a);
    }
    return a;
}

struct Interval {
    mpq_class lo, hi;
};

Interval imul(const Interval& a, const Interval& b)
{
    mpq_class p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Interval r{p[0], p[0]};
    for (auto& x : p) {
        if (x < r.lo)
            r.lo = x;
        if (x > r.hi)
            r.hi = x;
    }
    return r;
}

const mpq_class& witness_value(const Var* v, const Witness& w)
{
    auto it = w.values.find(v->name);
    if (it == w.values.end())
        throw Error(Errc::InvalidInput, "witness has no value for parameter " + v->name);
    return it->second;
}

Interval sqrt_interval(const mpq_class& D, unsigned bits)
{
    mpz_class N = D.get_num() * D.get_den();
    mpz_class scale = mpz_class(1) << (2 * bits);
    mpz_class s;
    mpz_class t = N * scale;
    mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
    mpz_class denom = D.get_den() * (mpz_class(1) << bits);
    mpq_class lo(s, denom), hi(s + 1, denom);
    lo.canonicalize();
    hi.canonicalize();
    if (s * s == t)
        hi = lo;
    return {lo, hi};
}

Interval eval_interval(const Poly& p, const Witness& w, unsigned bits)
{
    Interval sum{0, 0};
    for (const auto& [m, c] : p.terms()) {
        Interval t{c, c};
        for (const auto& [v, e] : m) {
            Interval x;
            if (v->quadratic()) {
                x = sqrt_interval(v->square, bits);
            } else {
                const mpq_class& val = witness_value(v, w);
                x = {val, val};
            }
            for (unsigned k = 0; k < e; ++k)
                t = imul(t, x);
        }
        sum.lo += t.lo;
        sum.hi += t.hi;
    }
    return sum;
}

int sgn(const mpq_class& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

Poly substitute_poly(const Poly& p, const Witness& w)
{
    Poly r;
    for (const auto& [m, c] : p.terms()) {
        mpq_class coef = c;
        Monomial rest;
        for (const auto& [v, e] : m) {
            if (v->quadratic()) {
                rest.emplace_back(v, e);
            } else {
                const mpq_class& val = witness_value(v, w);
                for (unsigned k = 0; k < e; ++k)
                    coef *= val;
            }
        }
        r.add_term(rest, coef);
    }
    return r;
}

} // namespace

const Var* transcendental(const std::string& name) { return intern(name, 0); }

const Var* quadratic(const std::string& name, const mpq_class& D)
{
    if (D <= 0)
        throw Error(Errc::InvalidInput, "quadratic parameter needs D > 0");
    mpz_class n = D.get_num() * D.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()))
        throw Error(Errc::InvalidInput, "quadratic parameter needs a non-square D");
    return intern(name, D);
}

bool var_less(const Var* a, const Var* b)
{
    if (a == b)
        return false;
    if (a->name != b->name)
        return a->name < b->name;
    return a->square < b->square;
}

unsigned degree(const Monomial& m)
{
    unsigned d = 0;
    for (const auto& ve : m)
        d += ve.second;
    return d;
}

bool MonoLess::operator()(const Monomial& a, const Monomial& b) const
{
    unsigned da = degree(a), db = degree(b);
    if (da != db)
        return da < db;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].first == b[j].first) {
            if (a[i].second != b[j].second)
                return a[i].second < b[j].second;
            ++i;
            ++j;
            continue;
        }
        return !var_less(a[i].first, b[j].first);
    }
    return i == a.size() && j < b.size();
}

Poly::Poly(const mpq_class& c)
{
    if (c != 0) {
        mpq_class v = c;
        v.canonicalize();
        terms_.emplace(Monomial{}, v);
    }
}

Poly Poly::variable(const Var* v)
{
    Poly p;
    p.terms_.emplace(Monomial{{v, 1}}, mpq_class(1));
    return p;
}

bool Poly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

mpq_class Poly::constant() const
{
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? mpq_class(0) : it->second;
}

std::set<const Var*> Poly::variables() const
{
    std::set<const Var*> vs;
    for (const auto& t : terms_)
        for (const auto& ve : t.first)
            vs.insert(ve.first);
    return vs;
}

bool Poly::has_quadratic() const
{
    for (const auto& t : terms_)
        for (const auto& ve : t.first)
            if (ve.first->quadratic())
                return true;
    return false;
}

unsigned Poly::degree_in(const Var* v) const
{
    unsigned d = 0;
    for (const auto& t : terms_)
        for (const auto& ve : t.first)
            if (ve.first == v)
                d = std::max(d, ve.second);
    return d;
}

void Poly::add_term(const Monomial& m, const mpq_class& c)
{
    if (c == 0)
        return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        mpq_class v = c;
        v.canonicalize();
        terms_.emplace(m, v);
        return;
    }
    it->second += c;
    if (it->second == 0)
        terms_.erase(it);
}

Poly operator+(const Poly& a, const Poly& b)
{
    Poly r = a;
    for (const auto& [m, c] : b.terms_)
        r.add_term(m, c);
    return r;
}

Poly operator-(const Poly& a, const Poly& b)
{
    Poly r = a;
    for (const auto& [m, c] : b.terms_)
        r.add_term(m, -c);
    return r;
}

Poly operator*(const Poly& a, const Poly& b)
{
    Poly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            mpq_class f = ca * cb;
            Monomial m = mono_mul(ma, mb, f);
            r.add_term(m, f);
        }
    return r;
}

Poly Poly::operator-() const { return scaled(-1); }

Poly Poly::scaled(const mpq_class& c) const
{
    Poly r;
    if (c == 0)
        return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_)
        t.second *= c;
    return r;
}

bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

std::string Poly::str() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        mpq_class a = abs(c);
        if (first)
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        first = false;
        if (m.empty())
            s += a.get_str();
        else if (a == 1)
            s += mono_str(m);
        else
            s += a.get_str() + "*" + mono_str(m);
    }
    return s;
}

Poly divide_exact(const Poly& a, const Poly& b)
{
    if (b.is_zero())
        throw Error(Errc::Singular, "polynomial division by zero");
    if (b.is_constant())
        return a.scaled(1 / b.constant());
    Poly q, r = a;
    const Monomial& lb = b.leading_monomial();
    const mpq_class& cb = b.leading_coefficient();
    Monomial t;
    while (!r.is_zero()) {
        if (!mono_divide(r.leading_monomial(), lb, t))
            throw std::logic_error("divide_exact: divisor does not divide");
        mpq_class c = r.leading_coefficient() / cb;
        Poly term;
        term.add_term(t, c);
        q.add_term(t, c);
        r = r - term * b;
    }
    return q;
}

Poly poly_gcd(const Poly& a, const Poly& b)
{
    if (a.is_zero())
        return monic(b);
    if (b.is_zero())
        return monic(a);
    if (a.is_constant() || b.is_constant())
        return Poly(1);
    if (a == b)
        return monic(a);
    const Var* x = nullptr;
    for (const Poly* p : {&a, &b})
        for (const Var* v : p->variables())
            if (!x || var_less(v, x))
                x = v;
    UPoly ua = coefficients_in(a, x), ub = coefficients_in(b, x);
    if (ua.size() == 1)
        return poly_gcd(a, content(ub));
    if (ub.size() == 1)
        return poly_gcd(content(ua), b);
    Poly c = poly_gcd(content(ua), content(ub));
    UPoly pa = primitive(ua), pb = primitive(ub);
    if (pa.size() < pb.size())
        std::swap(pa, pb);
    while (true) {
        UPoly r = pseudo_remainder(pa, pb);
        if (r.empty())
            break;
        if (r.size() == 1) {
            pb = UPoly{Poly(1)};
            break;
        }
        pa = pb;
        pb = primitive(r);
    }
    return monic(c * from_coefficients(primitive(pb), x));
}

namespace {

std::pair<Poly, Poly> normalize(Poly num, Poly den)
{
    if (den.is_zero())
        throw Error(Errc::Singular, "division by zero");
    if (num.is_zero())
        return {Poly(), Poly(1)};
    if (num.is_constant() && den.is_constant())
        return {Poly(num.constant() / den.constant()), Poly(1)};
    while (den.has_quadratic()) {
        const Var* t = nullptr;
        for (const Var* v : den.variables())
            if (v->quadratic()) {
                t = v;
                break;
            }
        Poly conj;
        for (const auto& [m, c] : den.terms()) {
            bool has = std::any_of(m.begin(), m.end(), [&](const auto& ve) { return ve.first == t; });
            conj.add_term(m, has ? -c : c);
        }
        num = num * conj;
        den = den * conj;
        if (den.is_zero())
            throw Error(Errc::Singular, "division by zero after reduction");
    }
    if (den.is_constant())
        return {num.scaled(1 / den.constant()), Poly(1)};
    std::map<Monomial, Poly, MonoLess> parts;
    for (const auto& [m, c] : num.terms()) {
        Monomial q, r;
        for (const auto& ve : m)
            (ve.first->quadratic() ? q : r).push_back(ve);
        parts[q].add_term(r, c);
    }
    Poly g = den;
    for (const auto& kv : parts) {
        g = poly_gcd(g, kv.second);
        if (g.is_constant())
            break;
    }
    if (!g.is_constant()) {
        num = divide_exact(num, g);
        den = divide_exact(den, g);
    }
    mpq_class lc = den.leading_coefficient();
    if (lc != 1) {
        num = num.scaled(1 / lc);
        den = den.scaled(1 / lc);
    }
    return {num, den};
}

} // namespace

Scalar Scalar::variable(const Var* v)
{
    Scalar s;
    s.num_ = Poly::variable(v);
    return s;
}

Scalar Scalar::fraction(const Poly& num, const Poly& den)
{
    Scalar s;
    std::tie(s.num_, s.den_) = normalize(num, den);
    return s;
}

Scalar Scalar::sqrt_of(const mpq_class& D)
{
    if (D < 0)
        throw Error(Errc::InvalidInput, "square root of a negative number");
    if (D == 0)
        return Scalar();
    mpz_class N = D.get_num() * D.get_den();
    mpz_class outside = 1;
    std::vector<mpz_class> primes;
    mpz_class r = N;
    for (mpz_class p = 2; p * p <= r && p < 1000000; ++p) {
        unsigned e = 0;
        while (r % p == 0) {
            r /= p;
            ++e;
        }
        for (unsigned k = 0; k < e / 2; ++k)
            outside *= p;
        if (e % 2)
            primes.push_back(p);
    }
    if (r > 1) {
        if (mpz_perfect_square_p(r.get_mpz_t())) {
            mpz_class s;
            mpz_sqrt(s.get_mpz_t(), r.get_mpz_t());
            outside *= s;
        } else {
            primes.push_back(r);
        }
    }
    mpq_class lead(outside, D.get_den());
    lead.canonicalize();
    Scalar result(lead);
    for (const auto& p : primes)
        result = result * Scalar::variable(quadratic("sqrt(" + p.get_str() + ")", mpq_class(p)));
    return result;
}

mpq_class Scalar::rational() const
{
    if (!is_rational())
        throw Error(Errc::NotRational, "scalar " + str() + " is not rational");
    return num_.constant();
}

bool Scalar::is_integer() const
{
    return is_rational() && num_.constant().get_den() == 1;
}

std::set<const Var*> Scalar::variables() const
{
    auto a = num_.variables();
    auto b = den_.variables();
    a.insert(b.begin(), b.end());
    return a;
}

Scalar Scalar::operator-() const
{
    Scalar s = *this;
    s.num_ = -num_;
    return s;
}

Scalar operator+(const Scalar& a, const Scalar& b)
{
    if (a.is_rational() && b.is_rational())
        return Scalar(a.num_.constant() + b.num_.constant());
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    if (a.den_ == b.den_)
        return Scalar::fraction(a.num_ + b.num_, a.den_);
    return Scalar::fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b)
{
    if (a.is_rational() && b.is_rational())
        return Scalar(a.num_.constant() * b.num_.constant());
    if (a.is_zero() || b.is_zero())
        return Scalar();
    if (a.is_rational())
        return Scalar::fraction(b.num_.scaled(a.num_.constant()), b.den_);
    if (b.is_rational())
        return Scalar::fraction(a.num_.scaled(b.num_.constant()), a.den_);
    return Scalar::fraction(a.num_ * b.num_, a.den_ * b.den_);
}

Scalar operator/(const Scalar& a, const Scalar& b)
{
    if (b.is_zero())
        throw Error(Errc::Singular, "division by zero");
    if (a.is_rational() && b.is_rational())
        return Scalar(a.num_.constant() / b.num_.constant());
    return Scalar::fraction(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

std::string Scalar::str() const
{
    if (den_.is_constant())
        return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

Scalar pow(const Scalar& s, int e)
{
    Scalar base = e < 0 ? Scalar(1) / s : s;
    unsigned n = e < 0 ? unsigned(-e) : unsigned(e);
    Scalar r(1);
    while (n) {
        if (n & 1)
            r = r * base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

Sign sign_at(const Scalar& s, const Witness& w)
{
    if (s.is_zero())
        return Sign::Zero;
    if (s.is_rational())
        return s.rational() > 0 ? Sign::Positive : Sign::Negative;
    Interval den = eval_interval(s.denominator(), w, 0);
    int dsign = sgn(den.lo);
    if (dsign == 0)
        throw Error(Errc::Indeterminate, s.str() + " has a pole at the witness");
    if (!s.numerator().has_quadratic()) {
        int ns = sgn(eval_interval(s.numerator(), w, 0).lo);
        if (ns == 0)
            throw Error(Errc::Indeterminate, s.str() + " vanishes at the witness but is nonzero");
        return ns * dsign > 0 ? Sign::Positive : Sign::Negative;
    }
    for (unsigned bits = std::max(8u, w.start_precision); bits <= w.precision_cap; bits *= 2) {
        Interval iv = eval_interval(s.numerator(), w, bits);
        int ns = iv.lo > 0 ? 1 : (iv.hi < 0 ? -1 : 0);
        if (ns)
            return ns * dsign > 0 ? Sign::Positive : Sign::Negative;
    }
    throw Error(Errc::Indeterminate, "sign of " + s.str() + " not certified at precision cap");
}

Scalar substitute(const Scalar& s, const Witness& w)
{
    if (s.is_rational())
        return s;
    Poly den = substitute_poly(s.denominator(), w);
    if (den.is_zero())
        throw Error(Errc::Indeterminate, s.str() + " has a pole at the witness");
    return Scalar::fraction(substitute_poly(s.numerator(), w), den);
}

mpq_class approximate(const Scalar& s, const Witness& w, unsigned bits)
{
    Scalar t = substitute(s, w);
    if (t.is_rational())
        return t.rational();
    Interval iv = eval_interval(t.numerator(), w, bits + 8);
    mpq_class mid = (iv.lo + iv.hi) / 2;
    return mid / t.denominator().constant();
}

double to_double(const Scalar& s, const Witness& w) { return approximate(s, w, 60).get_d(); }

mpz_class lcm_of_denominators(const std::vector<mpq_class>& xs)
{
    mpz_class l = 1;
    for (const auto& x : xs)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    return l;
}

namespace {

class Parser {
  public:
    Parser(const std::string& t, const ParamTable* table) : s_(t), table_(table) {}

    Scalar parse()
    {
        Scalar r = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

  private:
    [[noreturn]] void fail(const std::string& why)
    {
        throw Error(Errc::InvalidInput, "cannot parse scalar \"" + s_ + "\": " + why);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Scalar expr()
    {
        Scalar r = term();
        while (true) {
            if (eat('+'))
                r = r + term();
            else if (eat('-'))
                r = r - term();
            else
                return r;
        }
    }

    Scalar term()
    {
        Scalar r = factor();
        while (true) {
            if (eat('*'))
                r = r * factor();
            else if (eat('/'))
                r = r / factor();
            else
                return r;
        }
    }

    Scalar factor()
    {
        if (eat('-'))
            return -factor();
        if (eat('+'))
            return factor();
        Scalar base = primary();
        if (eat('^')) {
            bool paren = eat('(');
            bool neg = eat('-');
            skip();
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("exponent must be an integer");
            int e = std::stoi(s_.substr(start, pos_ - start));
            if (paren && !eat(')'))
                fail("missing ')'");
            return pow(base, neg ? -e : e);
        }
        return base;
    }

    mpq_class number()
    {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        mpq_class v(mpz_class(s_.substr(start, pos_ - start)));
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            size_t fs = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (pos_ > fs) {
                mpz_class frac(s_.substr(fs, pos_ - fs));
                mpz_class scale;
                mpz_ui_pow_ui(scale.get_mpz_t(), 10, pos_ - fs);
                v += mpq_class(frac, scale);
                v.canonicalize();
            }
        }
        return v;
    }

    Scalar primary()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Scalar r = expr();
            if (!eat(')'))
                fail("missing ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return Scalar(number());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            if (name == "sqrt") {
                Scalar arg;
                if (eat(':')) {
                    arg = Scalar(number());
                    if (eat('/'))
                        arg = arg / Scalar(number());
                } else if (eat('(')) {
                    arg = expr();
                    if (!eat(')'))
                        fail("missing ')'");
                } else {
                    fail("sqrt needs ':' or '('");
                }
                if (!arg.is_rational())
                    fail("sqrt of a non-rational argument");
                return Scalar::sqrt_of(arg.rational());
            }
            if (table_) {
                auto it = table_->find(name);
                if (it == table_->end())
                    fail("undeclared parameter " + name);
                return Scalar::variable(it->second);
            }
            return Scalar::variable(transcendental(name));
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string s_;
    const ParamTable* table_;
    size_t pos_ = 0;
};

} // namespace

Scalar parse_scalar(const std::string& text, const ParamTable* table)
{
    return Parser(text, table).parse();
}

} // namespace qtoric
