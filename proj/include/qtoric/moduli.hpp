#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtoric/gale.hpp"
#include "qtoric/integer.hpp"

namespace qtoric {

// hbar as a d x (n-d) matrix whose columns are hbar(e_{d+1}), ..., hbar(e_n).
// Returns (H1 + hbar H3)^{-1} (H2 + hbar H4) for the block decomposition of H
// with H1 of size d x d. Throws NotUnimodular, SingularBlock.
Matrix torus_act(const Matrix& hbar, const IntMatrix& H);

// a . H = (r + s a) / (p + q a) for H = [[p, r], [q, s]].
Scalar torus_act(const Scalar& a, const IntMatrix& H);

// Some H in GL_2(Z) with a . H = a', for rational or real quadratic a, a'.
// Throws UnsupportedField for anything else.
std::optional<IntMatrix> torus_equiv_2d(const Scalar& a, const Scalar& ap);

// Purely periodic part of the continued fraction of a real quadratic
// irrational, with the preperiod. Throws UnsupportedField.
struct ContinuedFraction {
    std::vector<mpz_class> preperiod, period;
};
ContinuedFraction continued_fraction(const Scalar& x);

struct OrbitPoint {
    std::string element; // group element as a word
    std::vector<Scalar> value;
};

struct OrbitReport {
    std::vector<Scalar> canonical;  // flattened representative
    std::string element;            // element mapping the input to it
    IntMatrix matrix;               // same element as a matrix, when there is one
    std::vector<OrbitPoint> orbit;  // distinct images, when enumerated
    std::vector<std::string> isotropy; // elements fixing the input
    std::string isotropy_group;
    bool heuristic = false;
    int bound = 0;
};

// S_3-orbit of a quantum P2 parameter (a, b), a, b < 0 at w. Throws OutOfDomain.
OrbitReport p2_orbit(const Scalar& a, const Scalar& b, const Witness& w);

struct Weights {
    mpz_class alpha, beta, gamma;
};

// Weights of the weighted projective space for negative rational (a, b).
Weights wps_weights(const Scalar& a, const Scalar& b); // throws NotRational, OutOfDomain

struct HopfReport {
    bool equivalent = false;
    bool switched = false;
    std::vector<mpz_class> lattice_vector; // the integer difference, when equivalent
    std::string isotropy;                  // of the first pair: "trivial" or "Z2"
};

// Pairs (lambda3, lambda4) with lambda1 = i, lambda2 = 1 + i. Throws OutOfZone.
HopfReport hopf_equiv(const Complex& l3, const Complex& l4, const Complex& m3, const Complex& m4,
                      const Witness& w);

enum class OrbitMode { Full, Marked };

// Canonical form of hbar under hbar -> H1^{-1} hbar s (Full) or H1^{-1} hbar
// (Marked). Exact for rational hbar; otherwise a bounded search over GL_d(Z)
// with entries in [-bound, bound], flagged heuristic.
OrbitReport cal_torus_orbit_maximal(const Matrix& hbar, OrbitMode mode, int bound = 1);

} // namespace qtoric
