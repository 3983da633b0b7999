#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "k3lat/chambers.hpp"
#include "k3lat/lattice.hpp"
#include "oracle_helpers.hpp"

using namespace k3lat;
using namespace testutil;

namespace {

ZVec zv(std::initializer_list<long> xs) {
    ZVec v;
    for (long x : xs) v.push_back(Z(x));
    return v;
}

ZMat zm(std::initializer_list<std::initializer_list<long>> rows) {
    ZMat A((int)rows.size(), (int)rows.begin()->size());
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (long x : row) A.at(i, j++) = Z(x);
        ++i;
    }
    return A;
}

Sublattice comp_sub() {
    Lattice L2 = lattice_L2();
    ZMat B(2, 23);
    B.at(0, 0) = 1;
    B.at(0, 1) = 1;
    B.at(1, 22) = 1;
    return make_sublattice(L2, B);
}

Sublattice nonsep_sub() {
    Lattice L2 = lattice_L2();
    ZMat B(2, 23);
    B.at(0, 0) = 1;
    B.at(0, 2) = 1;
    B.at(1, 1) = 1;
    B.at(1, 3) = 1;
    return make_sublattice(L2, B);
}

Sublattice four_sub() {
    Lattice L2 = lattice_L2();
    ZMat B(4, 23);
    B.at(0, 0) = 1;
    B.at(0, 1) = 1;
    B.at(1, 2) = 1;
    B.at(1, 3) = -1;
    B.at(2, 4) = 1;
    B.at(2, 5) = -1;
    B.at(3, 22) = 1;
    return make_sublattice(L2, B);
}

// sign of the wall functional at a rational point
int wall_sign(const ZMat& gram, const ZVec& wall, const QVec& x) {
    QVec f = to_q(mul(gram, wall));
    Q v(0);
    for (std::size_t i = 0; i < f.size(); ++i) v += f[i] * x[i];
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

}  // namespace

TEST_CASE("cone engine basics") {
    Cone quad = cone_from_rays(2, {zv({1, 0}), zv({0, 1})});
    REQUIRE(quad.rays.size() == 2);
    CHECK(quad.rays[0] == zv({0, 1}));
    CHECK(quad.rays[1] == zv({1, 0}));
    CHECK(!quad.normals.empty());
    CHECK(cone_dim(quad) == 2);
    CHECK(interior_point(quad) == zv({1, 1}));

    // halfspace description of the first octant plus a redundant inequality
    Cone oct = cone_from_halfspaces(
        3, {zv({1, 0, 0}), zv({0, 1, 0}), zv({0, 0, 1}), zv({1, 1, 1})});
    CHECK(oct.rays.size() == 3);
    CHECK(cone_dim(oct) == 3);

    // splitting the quadrant along x = y
    auto [plus, minus] = split_cone(quad, zv({1, -1}));
    REQUIRE(plus.rays.size() == 2);
    REQUIRE(minus.rays.size() == 2);
    CHECK(std::find(plus.rays.begin(), plus.rays.end(), zv({1, 1})) != plus.rays.end());
    CHECK(std::find(minus.rays.begin(), minus.rays.end(), zv({1, 1})) != minus.rays.end());
    CHECK(std::find(plus.rays.begin(), plus.rays.end(), zv({1, 0})) != plus.rays.end());
    CHECK(std::find(minus.rays.begin(), minus.rays.end(), zv({0, 1})) != minus.rays.end());

    // facial tests
    CHECK(is_facet(quad, zv({0, 1})));
    CHECK(is_facet(quad, zv({1, 0})));
    CHECK(!is_facet(quad, zv({1, 1})));   // touches only at the origin
    CHECK(!is_facet(quad, zv({1, -1})));  // crosses the interior

    // sign tests
    CHECK(ray_signs(zv({1, -1}), quad) == std::vector<int>({-1, 1}));
    CHECK(meets_open(ray_signs(zv({1, -1}), quad)));
    CHECK(!meets_open(ray_signs(zv({0, 1}), quad)));
    CHECK(meets_closed(ray_signs(zv({0, 1}), quad)));
    CHECK(!meets_open(ray_signs(zv({1, 1}), quad)));
    CHECK(!meets_closed(ray_signs(zv({1, 1}), quad)));
    CHECK(meets_open(std::vector<int>{0, 0}));  // hyperplane containing the cone
}

TEST_CASE("default base points") {
    CHECK(default_base(zm({{2, 0}, {0, -2}})) == zv({1, 0}));
    ZVec ub = default_base(zm({{0, 1}, {1, 0}}));
    CHECK(dot(ub, mul(zm({{0, 1}, {1, 0}}), ub)) > 0);
    CHECK(default_base(zm({{0, 1}, {1, 0}})) == ub);  // deterministic
    CHECK_THROWS_AS(default_base(zm({{-2}})), std::invalid_argument);
}

TEST_CASE("fundamental domains of the worked rank-two sublattices") {
    Sublattice Mc = comp_sub();
    Polyhedron Pc = vinberg_domain(Mc, parse_wall_spec("-2"), zv({1, 0}));
    CHECK(Pc.certificate == "complete");
    CHECK(!Pc.full_cone);
    CHECK(Pc.roots == std::vector<ZVec>({zv({0, 1})}));
    CHECK(Pc.facets == std::vector<ZVec>({zv({0, 1})}));
    CHECK(Pc.vertices == std::vector<ZVec>({zv({1, -1}), zv({1, 0})}));

    Sublattice Mn = nonsep_sub();
    Polyhedron Pn = vinberg_domain(Mn, parse_wall_spec("-2"), zv({1, 1}));
    CHECK(Pn.certificate == "complete");
    CHECK(Pn.roots.empty());
    CHECK(Pn.facets.empty());
    CHECK(Pn.vertices == std::vector<ZVec>({zv({0, 1}), zv({1, 0})}));

    // a norm that cannot define a reflection is refused
    CHECK_THROWS_AS(vinberg_domain(Mn, standard_wall_spec(), zv({1, 1})),
                    std::invalid_argument);
}

TEST_CASE("fundamental domain of the rank-four sublattice") {
    Sublattice M = four_sub();
    Polyhedron P = vinberg_domain(M, parse_wall_spec("-2"), zv({1, 0, 0, 0}));
    CHECK(P.certificate == "complete");
    CHECK(!P.full_cone);
    std::vector<ZVec> facets = {zv({0, 0, 0, 1}),  zv({0, 0, 1, 0}),  zv({0, 1, 0, 0}),
                                zv({1, -1, -1, 0}), zv({1, -1, 0, -1}), zv({1, 0, -1, -1})};
    CHECK(P.facets == facets);
    CHECK(P.roots == facets);
    std::vector<ZVec> vertices = {zv({1, -1, 0, 0}), zv({1, 0, -1, 0}), zv({1, 0, 0, -1}),
                                  zv({1, 0, 0, 0}), zv({2, -1, -1, -1})};
    CHECK(P.vertices == vertices);
}

TEST_CASE("residue certificate for a rootless lattice") {
    Lattice L = parse_lattice("U(2) + <-4>");
    ZMat B = ZMat::identity(3);
    Sublattice M = make_sublattice(L, B);
    Polyhedron P = vinberg_domain(M, parse_wall_spec("-2"), zv({1, 1, 0}));
    CHECK(P.full_cone);
    CHECK(P.certificate == "complete");
    CHECK(P.roots.empty());
}

TEST_CASE("chamber decomposition of the rank-four domain") {
    Sublattice M = four_sub();
    Polyhedron P = vinberg_domain(M, parse_wall_spec("-2"), zv({1, 0, 0, 0}));
    WallEnumResult walls = enumerate_walls_in_cone(M, P.cone, parse_wall_spec("-10:div2"));
    CHECK(walls.certificate == "complete");
    std::vector<ZVec> wall_list = {zv({0, 0, 2, -1}), zv({0, 2, 0, -1}), zv({2, -2, -2, -1}),
                                   zv({2, 0, 0, -3})};
    CHECK(walls.classes == wall_list);

    ChamberComplex cx = chamber_decomposition(P, walls.classes);
    CHECK(cx.walls == wall_list);
    REQUIRE(cx.chambers.size() == 6);

    std::vector<std::vector<int>> signs = {{1, 1, 1, 1},  {1, 1, -1, 1},  {1, -1, 1, 1},
                                           {-1, 1, 1, 1}, {-1, -1, 1, 1}, {-1, -1, 1, -1}};
    std::vector<std::vector<ZVec>> verts = {
        {zv({1, -1, 0, 0}), zv({1, 0, -1, 0}), zv({1, 0, 0, 0}), zv({3, -1, -1, -2})},
        {zv({1, -1, 0, 0}), zv({1, 0, -1, 0}), zv({2, -1, -1, -1}), zv({3, -1, -1, -2})},
        {zv({1, 0, -1, 0}), zv({1, 0, 0, 0}), zv({3, -1, -1, -2}), zv({3, 0, -1, -2})},
        {zv({1, -1, 0, 0}), zv({1, 0, 0, 0}), zv({3, -1, -1, -2}), zv({3, -1, 0, -2})},
        {zv({1, 0, 0, 0}), zv({3, -1, -1, -2}), zv({3, -1, 0, -2}), zv({3, 0, -1, -2}),
         zv({3, 0, 0, -2})},
        {zv({1, 0, 0, -1}), zv({3, -1, -1, -2}), zv({3, -1, 0, -2}), zv({3, 0, -1, -2}),
         zv({3, 0, 0, -2})}};
    for (int i = 0; i < 6; ++i) {
        CHECK(cx.chambers[i].signs == signs[i]);
        CHECK(cx.chambers[i].vertices == verts[i]);
        CHECK(cx.chambers[i].cone.rays == verts[i]);
        // the witness realizes the sign vector and sits inside the domain
        for (std::size_t w = 0; w < cx.walls.size(); ++w)
            CHECK(wall_sign(M.gram, cx.walls[w], cx.chambers[i].witness) ==
                  cx.chambers[i].signs[w]);
        for (const ZVec& f : P.facets)
            CHECK(wall_sign(M.gram, f, cx.chambers[i].witness) == 1);
    }

    std::vector<std::array<int, 3>> adjacency = {{0, 1, 2}, {0, 2, 1}, {0, 3, 0},
                                                 {2, 4, 0}, {3, 4, 1}, {4, 5, 3}};
    CHECK(cx.adjacency == adjacency);
}

TEST_CASE("polyhedron symmetries and their verdicts") {
    Lattice L2 = lattice_L2();
    Sublattice M = four_sub();
    Polyhedron P = vinberg_domain(M, parse_wall_spec("-2"), zv({1, 0, 0, 0}));
    std::vector<SymmetryVerdict> syms = polyhedron_symmetries(P, 2);
    CHECK(syms.size() == 12);

    ZMat swap_dd = zm({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
    int members = 0, undecided = 0;
    for (const SymmetryVerdict& s : syms) {
        if (s.verdict == "undecided") ++undecided;
        if (s.verdict == "member") {
            ++members;
            CHECK((s.sigma == ZMat::identity(4) || s.sigma == swap_dd));
            REQUIRE(s.psi.has_value());
            REQUIRE(s.ambient.has_value());
            CHECK(is_isometry(L2, *s.ambient));
            CHECK(in_monodromy(L2, *s.ambient, 2));
            // the ambient extension restricts to sigma on M
            for (int i = 0; i < 4; ++i) {
                ZVec x(4, Z(0));
                x[i] = 1;
                CHECK(mul(*s.ambient, to_ambient(M, x)) == to_ambient(M, mul(s.sigma, x)));
            }
        } else if (s.verdict == "non_member") {
            CHECK(s.obstruction.has_value());
        }
    }
    CHECK(members == 2);
    CHECK(undecided == 0);

    // rank-two cases: only the vertex data decides the candidate list
    Polyhedron Pn = vinberg_domain(nonsep_sub(), parse_wall_spec("-2"), zv({1, 1}));
    std::vector<SymmetryVerdict> sn = polyhedron_symmetries(Pn, 2);
    CHECK(sn.size() == 2);
    for (const SymmetryVerdict& s : sn) CHECK(s.verdict == "member");

    Polyhedron Pc = vinberg_domain(comp_sub(), parse_wall_spec("-2"), zv({1, 0}));
    std::vector<SymmetryVerdict> sc = polyhedron_symmetries(Pc, 2);
    REQUIRE(sc.size() == 1);
    CHECK(sc[0].sigma == ZMat::identity(2));
    CHECK(sc[0].verdict == "member");

    // vertices that do not span the sublattice are refused
    Polyhedron bad;
    bad.M = comp_sub();
    bad.cone = cone_from_rays(2, {zv({1, 0})});
    bad.vertices = {zv({1, 0})};
    CHECK_THROWS_AS(polyhedron_symmetries(bad, 2), std::invalid_argument);
}

TEST_CASE("orbit and cone counts over the worked examples") {
    // rank two: finite reflection group of order two
    Sublattice Mc = comp_sub();
    Polyhedron Pc = vinberg_domain(Mc, parse_wall_spec("-2"), zv({1, 0}));
    WallEnumResult wc = enumerate_walls_in_cone(Mc, Pc.cone, parse_wall_spec("-10:div2"));
    CHECK(wc.classes == std::vector<ZVec>({zv({2, -3})}));
    ChamberComplex cc = chamber_decomposition(Pc, wc.classes);
    REQUIRE(cc.chambers.size() == 2);
    CHECK(cc.adjacency == std::vector<std::array<int, 3>>({{0, 1, 0}}));

    ConeCount k = chamber_count_in_cone(Pc, cc.chambers.size());
    CHECK(k.reason == "finite");
    REQUIRE(k.count.has_value());
    CHECK(*k.count == 4);
    REQUIRE(k.weyl_order.has_value());
    CHECK(*k.weyl_order == 2);

    ConeCount capped = chamber_count_in_cone(Pc, cc.chambers.size(), 1);
    CHECK(capped.reason == "group_cap_exceeded");
    CHECK(!capped.count.has_value());

    OrbitCount oc = chamber_orbits(cc, Mc.gram, polyhedron_symmetries(Pc, 2));
    CHECK(oc.lower == 2);
    CHECK(oc.upper == 2);

    // rank four: infinite reflection group, five orbits
    Sublattice M4 = four_sub();
    Polyhedron P4 = vinberg_domain(M4, parse_wall_spec("-2"), zv({1, 0, 0, 0}));
    WallEnumResult w4 = enumerate_walls_in_cone(M4, P4.cone, parse_wall_spec("-10:div2"));
    ChamberComplex c4 = chamber_decomposition(P4, w4.classes);
    ConeCount k4 = chamber_count_in_cone(P4, c4.chambers.size());
    CHECK(k4.reason == "infinite_reflection_group");
    CHECK(!k4.count.has_value());
    OrbitCount o4 = chamber_orbits(c4, M4.gram, polyhedron_symmetries(P4, 2));
    CHECK(o4.lower == 5);
    CHECK(o4.upper == 5);

    // rank two without any walls: a single chamber, trivial group
    Sublattice Mn = nonsep_sub();
    Polyhedron Pn = vinberg_domain(Mn, parse_wall_spec("-2"), zv({1, 1}));
    ChamberComplex cn = chamber_decomposition(Pn, {});
    REQUIRE(cn.chambers.size() == 1);
    ConeCount kn = chamber_count_in_cone(Pn, 1);
    CHECK(kn.reason == "finite");
    CHECK(*kn.count == 1);
    CHECK(*kn.weyl_order == 1);
    OrbitCount on = chamber_orbits(cn, Mn.gram, polyhedron_symmetries(Pn, 2));
    CHECK(on.lower == 1);
    CHECK(on.upper == 1);
}

TEST_CASE("simple flags across the three certified answers") {
    // miniature model: the hyperbolic plane inside U + <-2>
    Lattice A = parse_lattice("U + <-2>");
    ZMat B(2, 3);
    B.at(0, 0) = 1;
    B.at(1, 1) = 1;
    Sublattice M = make_sublattice(A, B);
    Polyhedron P;
    P.M = M;
    P.cone = cone_from_rays(2, {zv({1, 0}), zv({0, 1})});
    P.vertices = P.cone.rays;
    P.certificate = "complete";
    ChamberComplex cx = chamber_decomposition(P, {zv({1, -1})});
    REQUIRE(cx.chambers.size() == 2);

    // no ambient class can project to a norm in the empty admissible range
    std::vector<SimpleFlag> f1 = chamber_simple_flags(M, cx, parse_wall_spec("-2"));
    REQUIRE(f1.size() == 2);
    CHECK(f1[0].flag == "empty");
    CHECK(f1[1].flag == "empty");

    // the deep norm leaves candidate projections that neither complete nor
    // get excluded, so the flag stays open
    std::vector<SimpleFlag> f2 = chamber_simple_flags(M, cx, standard_wall_spec());
    CHECK(f2[0].flag == "undetermined");
    CHECK(f2[1].flag == "undetermined");

    // a supplied witness certifies the nonempty answer immediately
    Lattice L2 = lattice_L2();
    Sublattice Mn = nonsep_sub();
    Polyhedron Pn = vinberg_domain(Mn, parse_wall_spec("-2"), zv({1, 1}));
    ChamberComplex cn = chamber_decomposition(Pn, {});
    ZVec w(23, Z(0));
    w[0] = 2;
    w[1] = -2;
    w[22] = 1;
    std::vector<SimpleFlag> f3 = chamber_simple_flags(Mn, cn, standard_wall_spec(), {w});
    REQUIRE(f3.size() == 1);
    CHECK(f3[0].flag == "nonempty");
    REQUIRE(f3[0].witness.has_value());
    CHECK(*f3[0].witness == w);
    CHECK(in_Delta_M(L2, Mn, *f3[0].witness, standard_wall_spec()));
}
