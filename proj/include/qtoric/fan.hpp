#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qtoric/integer.hpp"
#include "qtoric/matrix.hpp"

namespace qtoric {

// Finitely generated additive subgroup of R^d.
struct QLattice {
    size_t dim = 0;
    std::vector<Vector> generators;

    static QLattice standard(size_t d);
};

size_t gamma_rank(const QLattice& gamma);
std::optional<IntVector> gamma_contains(const QLattice& gamma, const Vector& x);
// True when every vector lies in gamma.
bool gamma_includes(const QLattice& gamma, const std::vector<Vector>& xs);
QLattice transform(const QLattice& gamma, const Matrix& L);

// Ray indices, 0-based. The order matters for chart matrices.
using Cone = std::vector<int>;

Cone sorted(Cone c);

struct QuantumFan {
    QLattice gamma;
    std::vector<Vector> rays;
    std::vector<Cone> cones; // as listed; faces of listed cones are implied

    size_t dim() const { return gamma.dim; }
};

// All cones as sorted index sets, closed under faces, including the empty cone.
std::set<Cone> cone_poset(const QuantumFan& fan);
// Inclusion-maximal cones, in listing order and with their listed ordering.
std::vector<Cone> maximal_cones(const QuantumFan& fan);
QuantumFan transform(const QuantumFan& fan, const Matrix& L);

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> violations;

    void fail(const std::string& why)
    {
        valid = false;
        violations.push_back(why);
    }
};

// Checks zero rays, simplicial cones, and that any two maximal cones meet in
// their common face (certified by a separating linear form).
ValidationReport validate_fan(const QuantumFan& fan, const Witness& w);

// Do cone(S) and cone(T) meet exactly in the cone over their common rays?
bool cones_meet_in_common_face(const std::vector<Vector>& rays, const Cone& S, const Cone& T,
                               const Witness& w);

struct FanProperties {
    bool irrational = false;
    bool complete = false;
    bool gamma_complete = false;
    bool polytopal = false;
};

FanProperties fan_properties(const QuantumFan& fan, const Witness& w);
bool is_complete(const QuantumFan& fan);
bool is_gamma_complete(const QuantumFan& fan);
// Existence of a strictly convex piecewise-linear support function.
bool is_polytopal(const QuantumFan& fan, const Witness& w);

struct CombType {
    int p = 0;
    std::set<Cone> cones;

    friend bool operator==(const CombType& a, const CombType& b)
    {
        return a.p == b.p && a.cones == b.cones;
    }
};

CombType comb_type(const QuantumFan& fan);
CombType comb_type(int p, const std::vector<Cone>& cones);
// Pure of dimension d, every (d-1)-face in exactly two maximal faces, connected.
bool is_complete_type(const CombType& D, size_t d);
CombType apply_permutation(const CombType& D, const std::vector<int>& s);
// Lexicographically least s with s.D = D', if any.
std::optional<std::vector<int>> comb_equivalent(const CombType& D, const CombType& Dp);

struct StandardForm {
    QuantumFan fan;
    Matrix L;
    std::vector<int> ray_perm; // old ray index -> new ray index
};

StandardForm standardize_fan(const QuantumFan& fan);

// Lexicographically first maximal independent subset of the vectors.
std::vector<int> first_basis(const std::vector<Vector>& vectors);

bool d_realizable(const std::vector<Vector>& v, const CombType& D, const Witness& w);

} // namespace qtoric
