#include <random>

#include "doctest.h"
#include "qtoric/morphism.hpp"

using namespace qtoric;

namespace {

Scalar S(const char* s) { return parse_scalar(s); }

Vector V(std::initializer_list<const char*> xs)
{
    Vector v;
    for (auto x : xs)
        v.push_back(S(x));
    return v;
}

Matrix M(std::initializer_list<std::initializer_list<const char*>> rows)
{
    std::vector<Vector> rs;
    for (auto r : rows)
        rs.push_back(V(r));
    return Matrix::from_rows(rs);
}

Witness at(const char* name, mpq_class v)
{
    Witness w;
    w.values[name] = v;
    return w;
}

CalibratedFan p1_calibrated(const char* a)
{
    Calibration h;
    h.images = {V({"1"}), V({"-1"}), V({a})};
    h.I = {0, 1};
    h.J = {2};
    return make_calibrated_fan(h, {{0}, {1}});
}

// P2 fan with an extra virtual generator w = (x, y).
CalibratedFan p2_with_virtual(const char* x, const char* y)
{
    Calibration h;
    h.images = {V({"1", "0"}), V({"0", "1"}), V({"-1", "-1"}), V({x, y})};
    h.I = {0, 1, 2};
    h.J = {3};
    return make_calibrated_fan(h, {{0, 1}, {1, 2}, {2, 0}});
}

CalibratedFan sqrt2_torus(bool shifted)
{
    Calibration h;
    h.images = {V({"1"}), V({"sqrt(2)"}), V({shifted ? "1" : "0"})};
    h.J = {2};
    return make_calibrated_fan(h, {});
}

} // namespace

TEST_CASE("check_fan_morphism examples")
{
    Witness w = at("a", mpq_class(5, 3));
    auto p1 = p1_calibrated("a");
    CHECK(check_fan_morphism(Matrix::identity(1), p1.fan, p1.fan, w));

    // P1 into P2 with w = (x, y): valid at fan level only when L is integral
    auto p2 = p2_with_virtual("2*a", "a");
    CHECK(check_fan_morphism(M({{"2"}, {"1"}}), p1.fan, p2.fan, w));
    CHECK_FALSE(check_fan_morphism(M({{"1/2"}, {"1"}}), p1.fan, p2.fan, w));

    QuantumFan line;
    line.gamma = QLattice{1, {V({"1"}), V({"sqrt(2)"})}};
    line.rays = {V({"1"}), V({"-1"})};
    line.cones = {{0}, {1}};
    CHECK_FALSE(check_fan_morphism(M({{"sqrt(2)"}}), line, line, Witness{}));
    // with rays spanning the lattice the image of each ray is a generator multiple
    line.rays = {V({"1"}), V({"-sqrt(2)"})};
    auto r = check_fan_morphism(M({{"sqrt(2)"}}), line, line, Witness{});
    CHECK_FALSE(r); // sqrt2 * 1 = sqrt2 is not an integer multiple of the ray 1
    QuantumFan torus_line = line;
    torus_line.rays.clear();
    torus_line.cones.clear();
    CHECK(check_fan_morphism(M({{"sqrt(2)"}}), torus_line, torus_line, Witness{}));
}

TEST_CASE("check_fan_iso examples")
{
    auto p1_0 = p1_calibrated("0");
    CHECK(check_fan_iso(M({{"-1"}}), p1_0.fan, p1_0.fan, Witness{}));
    auto root = p1_calibrated("sqrt(2)");
    CHECK(check_fan_iso(M({{"-1"}}), root.fan, root.fan, Witness{}));
    QuantumFan classical = p1_0.fan;
    classical.gamma = QLattice::standard(1);
    CHECK_FALSE(check_fan_iso(M({{"2"}}), classical, classical, Witness{}));
}

TEST_CASE("check_cal_morphism examples")
{
    auto src = sqrt2_torus(false);
    CalMorphism m{M({{"sqrt(2)"}}), {{0, 2, 0}, {1, 0, 0}, {0, 0, 1}}, {{2, 2}}};
    CHECK(check_cal_morphism(m, src, src, Witness{}));
    auto found = find_cal_morphism(M({{"sqrt(2)"}}), src, src, Witness{});
    REQUIRE(found);
    CHECK(found->H == m.H);

    auto shifted = sqrt2_torus(true);
    CHECK_FALSE(find_cal_morphism(M({{"sqrt(2)"}}), shifted, shifted, Witness{}));
    CHECK_FALSE(check_cal_morphism(m, shifted, shifted, Witness{}));

    // (-Id, swap) from h_a to h_{-a}, and onto itself only for a = 0
    Witness w = at("a", mpq_class(2, 5));
    CalMorphism flip{M({{"-1"}}), {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, {{2, 2}}};
    CHECK(check_cal_morphism(flip, p1_calibrated("a"), p1_calibrated("-a"), w));
    CHECK_FALSE(check_cal_morphism(flip, p1_calibrated("a"), p1_calibrated("a"), w));
    CHECK(check_cal_morphism(flip, p1_calibrated("0"), p1_calibrated("0"), w));
    CHECK_FALSE(check_cal_morphism(flip, p1_calibrated("sqrt(2)"), p1_calibrated("sqrt(2)"), w));
}

TEST_CASE("morphisms from P1 to P2 with a virtual generator")
{
    Witness w = at("a", mpq_class(5, 3));
    for (int alpha = 0; alpha <= 3; ++alpha)
        for (int beta = 0; beta <= alpha; ++beta) {
            if (alpha == 0)
                continue;
            std::string x = std::to_string(alpha) + "*a", y = std::to_string(beta) + "*a";
            auto dst = p2_with_virtual(x.c_str(), y.c_str());
            auto m = find_cal_morphism(std::nullopt, p1_calibrated("a"), dst, w);
            REQUIRE(m);
            CHECK(m->L == Matrix::from_rows({Vector{Scalar(alpha)}, Vector{Scalar(beta)}}));
            IntMatrix expect{{alpha, 0, 0}, {beta, alpha - beta, 0}, {0, alpha, 0}, {0, 0, 1}};
            CHECK(m->H == expect);
        }
    // x not in Z a
    CHECK_FALSE(find_cal_morphism(std::nullopt, p1_calibrated("a"), p2_with_virtual("a/2", "a"), w));
    CHECK_FALSE(find_cal_morphism(std::nullopt, p1_calibrated("a"), p2_with_virtual("a", "1"), w));
}

TEST_CASE("compose")
{
    auto p1 = p1_calibrated("0");
    CalMorphism flip{M({{"-1"}}), {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, {{2, 2}}};
    auto id = identity_morphism(p1);
    auto c = compose(flip, id);
    CHECK(c.L == flip.L);
    CHECK(c.H == flip.H);
    auto sq = compose(flip, flip);
    CHECK(sq.L == Matrix::identity(1));
    CHECK(sq.H == int_identity(3));
    CHECK(sq.s == id.s);

    Witness w = at("a", mpq_class(5, 3));
    auto dst = p2_with_virtual("2*a", "a");
    auto m = *find_cal_morphism(std::nullopt, p1_calibrated("a"), dst, w);
    CalMorphism g{M({{"-1"}}), {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, {{2, 2}}};
    // h_{-a} -> h_a -> P2
    auto comp = compose(g, m);
    CHECK(check_cal_morphism(comp, p1_calibrated("-a"), dst, w));
    CHECK_THROWS_AS(compose(m, m), Error);
}

TEST_CASE("compositions of random marked automorphisms stay valid")
{
    // classical P2 with one virtual generator at the origin: marked
    // automorphisms are the ray permutations realized by GL2(Z)
    auto cf = p2_with_virtual("0", "0");
    std::vector<CalMorphism> gens;
    std::vector<Matrix> Ls = {M({{"0", "1"}, {"1", "0"}}), M({{"0", "-1"}, {"1", "-1"}})};
    for (const auto& L : Ls) {
        auto m = find_cal_morphism(L, cf, cf, Witness{});
        REQUIRE(m);
        gens.push_back(*m);
    }
    std::mt19937 rng(4);
    CalMorphism acc = identity_morphism(cf);
    for (int t = 0; t < 20; ++t) {
        acc = compose(acc, gens[rng() % 2]);
        CHECK(check_cal_morphism(acc, cf, cf, Witness{}));
        CHECK(check_fan_iso(acc.L, cf.fan, cf.fan, Witness{}));
        CHECK(check_fan_morphism(inverse(acc.L), cf.fan, cf.fan, Witness{}));
        CHECK(acc.L * Matrix::from_columns(cf.h.images) == Matrix::from_columns(cf.h.images) * to_matrix(acc.H, 4));
    }
}

TEST_CASE("kernel_map")
{
    auto p1 = p1_calibrated("0");
    auto id = identity_morphism(p1);
    CHECK(kernel_map(id, p1.h, p1.h) == int_identity(2));
    CalMorphism flip{M({{"-1"}}), {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, {{2, 2}}};
    CHECK(kernel_rank(p1.h).basis == IntMatrix{{1, 1, 0}, {0, 0, 1}});
    CHECK(kernel_map(flip, p1.h, p1.h) == int_identity(2));

    Calibration free;
    free.images = {V({"1"}), V({"sqrt(2)"})};
    auto irr = make_calibrated_fan(free, {});
    CHECK(kernel_rank(free).a == 0);
    CHECK(kernel_map(identity_morphism(irr), irr.h, irr.h).empty());
}
