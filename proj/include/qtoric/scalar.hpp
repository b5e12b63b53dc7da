#pragma once

// Exact scalars: canonical fractions of polynomials over Q in named real
// parameters. A parameter is either transcendental or quadratic (t^2 = D with
// D a positive non-square rational); quadratic parameters appear with degree
// at most one after reduction and never in a denominator.

#include <gmpxx.h>

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qtoric/error.hpp"

namespace qtoric {

struct Var {
    std::string name;
    mpq_class square; // 0 for a transcendental parameter
    bool quadratic() const { return square != 0; }
};

// Interned parameters. The same (name, D) pair always yields the same pointer.
const Var* transcendental(const std::string& name);
const Var* quadratic(const std::string& name, const mpq_class& D);

bool var_less(const Var* a, const Var* b);

using Monomial = std::vector<std::pair<const Var*, unsigned>>;

struct MonoLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

unsigned degree(const Monomial& m);

// Sparse polynomial over Q with graded-lex term order; quadratic parameters are
// reduced on multiplication.
class Poly {
  public:
    using Terms = std::map<Monomial, mpq_class, MonoLess>;

    Poly() = default;
    explicit Poly(const mpq_class& c);
    static Poly variable(const Var* v);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    mpq_class constant() const; // value of the constant term
    const Terms& terms() const { return terms_; }
    const mpq_class& leading_coefficient() const { return terms_.rbegin()->second; }
    const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
    std::set<const Var*> variables() const;
    bool has_quadratic() const;
    unsigned degree_in(const Var* v) const;

    void add_term(const Monomial& m, const mpq_class& c);

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly scaled(const mpq_class& c) const;
    friend bool operator==(const Poly& a, const Poly& b);

    std::string str() const;

  private:
    Terms terms_;
};

// Exact quotient a / b; throws when b does not divide a.
Poly divide_exact(const Poly& a, const Poly& b);
// Monic gcd of two polynomials free of quadratic parameters.
Poly poly_gcd(const Poly& a, const Poly& b);

class Scalar {
  public:
    Scalar() : num_(), den_(mpq_class(1)) {}
    Scalar(long v) : num_(mpq_class(v)), den_(mpq_class(1)) {}
    Scalar(const mpq_class& v) : num_(v), den_(mpq_class(1)) {}
    Scalar(const mpz_class& v) : num_(mpq_class(v)), den_(mpq_class(1)) {}
    static Scalar variable(const Var* v);
    static Scalar fraction(const Poly& num, const Poly& den);
    // Square root of a positive rational, expressed through square roots of
    // primes so that products like sqrt(2)*sqrt(3) = sqrt(6) are canonical.
    static Scalar sqrt_of(const mpq_class& D);

    bool is_zero() const { return num_.is_zero(); }
    bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
    mpq_class rational() const; // throws NotRational
    bool is_integer() const;
    bool has_parameters() const { return !is_rational(); }
    std::set<const Var*> variables() const;

    const Poly& numerator() const { return num_; }
    const Poly& denominator() const { return den_; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Canonical string, e.g. "(-b)/(a)" or "1 + sqrt(2)".
    std::string str() const;

  private:
    Poly num_, den_;
};

Scalar pow(const Scalar& s, int e);

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

struct Witness {
    std::map<std::string, mpq_class> values; // transcendental parameters
    unsigned start_precision = 64;
    unsigned precision_cap = 4096;
};

// Symbolic zero test, otherwise the certified sign of the value at w.
// Throws Indeterminate when the interval still straddles zero at the cap.
Sign sign_at(const Scalar& s, const Witness& w);
// Replaces transcendental parameters by their witness values.
Scalar substitute(const Scalar& s, const Witness& w);
// Rational approximation of the value at w within 2^-bits.
mpq_class approximate(const Scalar& s, const Witness& w, unsigned bits = 64);
double to_double(const Scalar& s, const Witness& w);

using ParamTable = std::map<std::string, const Var*>;

// Parses "3/4", "-0.5", "sqrt:2", "sqrt(2)", "(a+1)/b^2", ... Unknown names are
// rejected when a table is given, otherwise declared transcendental.
Scalar parse_scalar(const std::string& text, const ParamTable* table = nullptr);

mpz_class lcm_of_denominators(const std::vector<mpq_class>& xs);

} // namespace qtoric
