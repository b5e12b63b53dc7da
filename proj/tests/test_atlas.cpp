#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "qtoric/atlas.hpp"

using namespace qtoric;
using namespace qtoric::fixtures;

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

QuantumFan p2_fan()
{
    QuantumFan f;
    f.gamma = QLattice::standard(2);
    f.rays = {V({"1", "0"}), V({"0", "1"}), V({"a", "b"})};
    f.gamma.generators.push_back(f.rays[2]);
    f.cones = {{0, 1}, {1, 2}, {2, 0}};
    return f;
}

QuantumFan blow_up_fan()
{
    QuantumFan f;
    f.gamma = QLattice::standard(2);
    f.rays = {V({"1", "0"}), V({"0", "1"}), V({"-1", "-1"}), V({"-1", "0"}), V({"0", "-1"})};
    f.cones = {{0, 1}, {1, 3}, {3, 2}, {2, 4}, {4, 0}};
    return f;
}

} // namespace

TEST_CASE("chart matrices of the P2 deformation")
{
    QuantumFan f = p2_fan();
    CHECK(chart_matrix(f, {0, 1}) == Matrix::identity(2));
    CHECK(chart_matrix(f, {1, 2}) == M({{"-b/a", "1"}, {"1/a", "0"}}));
    CHECK(chart_matrix(f, {2, 0}) == M({{"0", "1/b"}, {"1", "-a/b"}}));
}

TEST_CASE("chart matrices send the cone generators to the canonical basis")
{
    std::mt19937 rng(1);
    for (size_t d : {2, 3}) {
        QuantumFan f = random_cross_fan(rng, d);
        for (const auto& c : f.cones) {
            Matrix A = chart_matrix(f, c);
            for (size_t k = 0; k < c.size(); ++k)
                CHECK(A * f.rays[c[k]] == unit_vector(d, k));
        }
    }
    // a lower-dimensional cone is completed by canonical vectors in order
    QuantumFan line;
    line.gamma = QLattice::standard(2);
    line.rays = {V({"1", "1"})};
    line.cones = {{0}};
    CHECK(inverse(chart_matrix(line, {0})) == M({{"1", "1"}, {"1", "0"}}));
}

TEST_CASE("gluing exponents of the P2 deformation")
{
    QuantumFan f = p2_fan();
    // the gluing between Q23 and Q12 is A23 A12^-1
    Matrix g = gluing_exponents(f, {0, 1}, {1, 2});
    CHECK(g == M({{"-b/a", "1"}, {"1/a", "0"}}));
    CHECK(render_monomials(g) == "[z^((-b)/(a))*w, z^((1)/(a))]");
    Matrix g31 = gluing_exponents(f, {0, 1}, {2, 0});
    CHECK(g31 == M({{"0", "1/b"}, {"1", "-a/b"}}));
    CHECK(render_monomials(g31) == "[w^((1)/(b)), z*w^((-a)/(b))]");
    CHECK(gluing_exponents(f, {1, 2}, {1, 2}) == Matrix::identity(2));
    Matrix g23 = gluing_exponents(f, {1, 2}, {2, 0});
    CHECK(g23 == M({{"1/b", "1"}, {"-a/b", "0"}}));
}

TEST_CASE("gluings fix the coordinates of shared rays")
{
    std::mt19937 rng(2);
    for (int t = 0; t < 10; ++t)
        for (size_t d : {2, 3}) {
            QuantumFan f = random_cross_fan(rng, d);
            for (const auto& I : f.cones)
                for (const auto& Ip : f.cones) {
                    Matrix g = gluing_exponents(f, I, Ip);
                    for (size_t k = 0; k < I.size(); ++k) {
                        auto pos = std::find(Ip.begin(), Ip.end(), I[k]);
                        if (pos != Ip.end())
                            CHECK(g.col(k) == unit_vector(d, pos - Ip.begin()));
                    }
                }
        }
}

TEST_CASE("chart calibrations of the P2 deformation")
{
    Calibration h;
    h.images = p2_fan().rays;
    h.I = {0, 1, 2};
    auto cf = make_calibrated_fan(h, p2_fan().cones);
    auto c12 = chart_calibration(cf, {0, 1});
    CHECK(c12.order == std::vector<int>{0, 1, 2});
    CHECK(c12.hbar == M({{"a"}, {"b"}}));
    CHECK(chart_calibration(cf, {1, 2}).hbar == M({{"-b/a"}, {"1/a"}}));
    CHECK(chart_calibration(cf, {2, 0}).hbar == M({{"1/b"}, {"-a/b"}}));
    CHECK(chart_calibration(cf, {1, 2}).order == std::vector<int>{1, 2, 0});
}

TEST_CASE("chart calibration completes small cones with images")
{
    Calibration h;
    h.images = {V({"1"}), V({"-1"}), V({"a"})};
    h.I = {0, 1};
    h.J = {2};
    auto cf = make_calibrated_fan(h, {{0}, {1}});
    auto c = chart_calibration(cf, {1});
    CHECK(c.A == M({{"-1"}}));
    CHECK(c.order == std::vector<int>{1, 0, 2});
    CHECK(c.hbar == M({{"-1", "-a"}}));

    Calibration plane;
    plane.images = {V({"1", "1"}), V({"0", "1"}), V({"1", "0"})};
    plane.I = {0};
    auto line = make_calibrated_fan(plane, {{0}});
    auto cl = chart_calibration(line, {0});
    CHECK(cl.completion == std::vector<int>{1});
    CHECK(cl.hbar == M({{"1"}, {"-1"}}));
}

TEST_CASE("cocycle condition")
{
    CHECK(cocycle_check(build_atlas(p2_fan())));
    QuantumFan p1;
    p1.gamma = QLattice::standard(1);
    p1.rays = {V({"1"}), V({"-1"})};
    p1.cones = {{0}, {1}};
    CHECK(cocycle_check(build_atlas(p1)));
    Atlas broken = build_atlas(p2_fan());
    broken.charts[{1, 2}] = M({{"1", "1"}, {"0", "1"}});
    CHECK_FALSE(cocycle_check(broken));

    std::mt19937 rng(6);
    for (int t = 0; t < 100; ++t) {
        size_t d = t % 2 ? 3 : 2;
        CHECK(cocycle_check(build_atlas(random_cross_fan(rng, d))));
    }
}

TEST_CASE("irrelevant locus")
{
    auto blow = build_irrelevant(blow_up_fan());
    CHECK(blow.forbidden == std::vector<Cone>{{0, 2}, {0, 3}, {1, 2}, {1, 4}, {3, 4}});

    QuantumFan p1;
    p1.gamma = QLattice::standard(1);
    p1.rays = {V({"1"}), V({"-1"})};
    p1.cones = {{0}, {1}};
    CHECK(build_irrelevant(p1).forbidden == std::vector<Cone>{{0, 1}});

    Calibration h;
    h.images = {V({"1"}), V({"-1"}), V({"a"})};
    h.I = {0, 1};
    h.J = {2};
    auto cal = build_irrelevant(make_calibrated_fan(h, {{0}, {1}}));
    CHECK(cal.forbidden == std::vector<Cone>{{2}, {0, 1}});
    CHECK(cal.allows({0}));
    CHECK_FALSE(cal.allows({2}));

    QuantumFan ray;
    ray.gamma = QLattice::standard(1);
    ray.rays = {V({"1"})};
    ray.cones = {{0}};
    CHECK(build_irrelevant(ray).forbidden.empty());
}

TEST_CASE("S membership matches the cone poset for every index set")
{
    std::mt19937 rng(9);
    for (size_t d : {2, 3}) {
        QuantumFan f = random_cross_fan(rng, d);
        auto irr = build_irrelevant(f);
        auto poset = cone_poset(f);
        size_t n = f.rays.size();
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            Cone z;
            for (size_t i = 0; i < n; ++i)
                if (mask & (1u << i))
                    z.push_back(int(i));
            CHECK(irr.allows(z) == (poset.count(z) > 0));
        }
        CHECK(std::set<Cone>(irr.cones.begin(), irr.cones.end()) == poset);
    }
}
