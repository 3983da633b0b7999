#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "k3lat/fincke_pohst.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/walls.hpp"
#include "oracle_helpers.hpp"

using namespace k3lat;
using namespace testutil;

namespace {

ZVec zv(std::initializer_list<long> xs) {
    ZVec v;
    for (long x : xs) v.push_back(Z(x));
    return v;
}

// ambient vector of L2 with the listed (index, value) entries
ZVec ambient(std::initializer_list<std::pair<int, long>> entries) {
    ZVec v(23, Z(0));
    for (auto [i, x] : entries) v[i] = Z(x);
    return v;
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

// canonical representative with positive leading entry
ZVec canon(ZVec v) {
    for (const Z& x : v) {
        if (x > 0) return v;
        if (x < 0) return scale(Z(-1), v);
    }
    return v;
}

}  // namespace

TEST_CASE("wall spec parsing round trips") {
    WallSpec s = parse_wall_spec("-2, -10:div2");
    REQUIRE(s.allowed.size() == 2);
    CHECK(s.allowed[0] == std::make_pair(Z(-2), Z(0)));
    CHECK(s.allowed[1] == std::make_pair(Z(-10), Z(2)));

    WallSpec t = parse_wall_spec(to_string(s));
    CHECK(t.allowed == s.allowed);

    WallSpec u = parse_wall_spec("  -4:div2 ,-6 ");
    REQUIRE(u.allowed.size() == 2);
    CHECK(u.allowed[0] == std::make_pair(Z(-4), Z(2)));
    CHECK(u.allowed[1] == std::make_pair(Z(-6), Z(0)));
}

TEST_CASE("wall spec parse errors carry positions") {
    auto expect = [](const char* text, const char* msg, std::size_t pos) {
        try {
            parse_wall_spec(text);
            FAIL_CHECK("no exception for ", text);
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find(msg) != std::string::npos);
            CHECK(e.pos == pos);
        }
    };
    expect("", "expected an integer norm", 0);
    expect("-2,,", "expected an integer norm", 3);
    expect("-2:x2", "expected 'div' after ':'", 3);
    expect("-10:div", "expected a divisibility value", 7);
    expect("-10:div0", "divisibility must be positive", 7);
    expect("-2 -4", "expected ','", 3);
}

TEST_CASE("the standard wall table") {
    WallSpec s = standard_wall_spec();
    REQUIRE(s.allowed.size() == 2);
    CHECK(s.allowed[0] == std::make_pair(Z(-2), Z(0)));
    CHECK(s.allowed[1] == std::make_pair(Z(-10), Z(2)));
    CHECK_THROWS_AS(standard_wall_spec(3), std::invalid_argument);
}

TEST_CASE("wall divisor membership") {
    Lattice L2 = lattice_L2();

    ZVec e = ambient({{22, 1}});
    CHECK(norm(L2, e) == -2);
    CHECK(is_wall_divisor_n2(L2, e));

    ZVec delta = ambient({{0, 2}, {1, -2}, {22, 1}});
    CHECK(norm(L2, delta) == -10);
    CHECK(divisibility(L2, delta) == 2);
    CHECK(is_wall_divisor_n2(L2, delta));

    // norm -10 with divisibility one fails the table
    ZVec d1 = ambient({{0, 1}, {1, -1}, {22, 2}});
    CHECK(norm(L2, d1) == -10);
    CHECK(divisibility(L2, d1) == 1);
    CHECK(!is_wall_divisor_n2(L2, d1));
    WallSpec loose = parse_wall_spec("-10");
    CHECK(matches_wall_spec(L2, d1, loose));

    // isotropic classes fail the table; imprimitive input is refused outright
    CHECK(!is_wall_divisor_n2(L2, ambient({{0, 1}})));
    CHECK_THROWS_AS(is_wall_divisor_n2(L2, ambient({{22, 2}})), std::invalid_argument);
    CHECK_THROWS_AS(is_wall_divisor_n2(L2, ZVec(23, Z(0))), std::invalid_argument);
}

TEST_CASE("hyperplanes cutting the sublattice positive cone") {
    Lattice L2 = lattice_L2();
    Sublattice M = nonsep_sub();
    WallSpec spec = standard_wall_spec();

    ZVec delta = ambient({{0, 2}, {1, -2}, {22, 1}});
    CHECK(in_LnM(L2, M, delta));
    CHECK(in_Delta_M(L2, M, delta, spec));

    // a class inside M projects trivially to the complement
    CHECK(!in_LnM(L2, M, ambient({{0, 1}, {2, 1}})));
    // a class orthogonal to M projects trivially to M
    CHECK(!in_LnM(L2, M, ambient({{22, 1}})));
    CHECK(!in_Delta_M(L2, M, ambient({{22, 1}}), spec));

    Sublattice Mc = comp_sub();
    // a class of M itself has zero complement projection, so it is not in
    // Delta(M) even though it matches the wall table
    ZVec w = ambient({{0, 2}, {1, 2}, {22, -3}});
    CHECK(norm(L2, w) == -10);
    CHECK(divisibility(L2, w) == 2);
    CHECK(matches_wall_spec(L2, w, spec));
    CHECK(!in_LnM(L2, Mc, w));
    // mixed class with negative projections on both sides
    CHECK(in_Delta_M(L2, Mc, delta, spec));
}

TEST_CASE("quadric enumeration agrees with a box scan") {
    std::mt19937 g(7);
    const long R = 12;
    for (int trial = 0; trial < 12; ++trial) {
        int r = 1 + (int)rand_long(g, 1, 3) % 3;
        // negative definite A = -(B^T B + I)
        ZMat B(r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) B.at(i, j) = rand_long(g, -2, 2);
        ZMat A = neg(mul(transpose(B), B));
        for (int i = 0; i < r; ++i) A.at(i, i) -= 1;
        QMat Aq = to_q(A);
        QVec bq(r);
        for (int i = 0; i < r; ++i) bq[i] = Q(rand_long(g, -2, 2));
        Q t = Q(-2 * rand_long(g, 1, 15));

        std::vector<ZVec> found = enumerate_quadric(Aq, bq, Q(0), t);
        for (const ZVec& x : found)
            for (const Z& c : x) CHECK(abs(c) < R - 1);

        // brute scan of the box
        std::vector<ZVec> brute;
        ZVec x(r, Z(-R));
        while (true) {
            Q val(0);
            for (int i = 0; i < r; ++i) {
                for (int j = 0; j < r; ++j) val += Aq.at(i, j) * Q(x[i] * x[j]);
                val += 2 * bq[i] * Q(x[i]);
            }
            if (val == t) brute.push_back(x);
            int k = 0;
            while (k < r && x[k] == R) x[k++] = -R;
            if (k == r) break;
            x[k] += 1;
        }
        std::sort(brute.begin(), brute.end(), lex_less);
        CHECK(found == brute);
    }
}

TEST_CASE("norm enumeration on a small definite form") {
    QMat A = to_q(ZMat(2, 2));
    A.at(0, 0) = Q(-2);
    A.at(1, 1) = Q(-2);
    std::vector<ZVec> sols = enumerate_norm(A, Q(-4));
    REQUIRE(sols.size() == 4);
    CHECK(sols[0] == zv({-1, -1}));
    CHECK(sols[1] == zv({-1, 1}));
    CHECK(sols[2] == zv({1, -1}));
    CHECK(sols[3] == zv({1, 1}));
    CHECK(enumerate_norm(A, Q(-3)).empty());
}

TEST_CASE("level enumeration agrees with a box scan") {
    std::mt19937 g(11);
    const long R = 50;
    int done = 0;
    while (done < 5) {
        // random rank-two hyperbolic gram
        ZMat G(2, 2);
        G.at(0, 0) = 2 * rand_long(g, 1, 3);
        G.at(1, 1) = -2 * rand_long(g, 1, 3);
        G.at(0, 1) = G.at(1, 0) = 2 * rand_long(g, -1, 1);
        if (det(G) >= 0) continue;

        // two positive-norm rays spanning a pointed cone in one component
        auto draw_ray = [&]() -> std::optional<ZVec> {
            for (int t = 0; t < 200; ++t) {
                ZVec v = rand_vec(g, 2, -4, 4);
                if (is_zero(v)) continue;
                if (dot(v, mul(G, v)) > 0) return primitive_part(v);
            }
            return std::nullopt;
        };
        auto r1 = draw_ray(), r2 = draw_ray();
        if (!r1 || !r2) continue;
        if (dot(*r1, mul(G, *r2)) < 0) *r2 = scale(Z(-1), *r2);
        if (*r1 == *r2) continue;
        Cone C = cone_from_rays(2, {*r1, *r2});
        if (C.rays.size() != 2) continue;

        for (long N : {-2, -4, -10}) {
            bool complete = false;
            std::vector<ZVec> found =
                enumerate_norm_crossing(G, C, Z(N), /*require_primitive=*/true, std::nullopt,
                                        &complete);
            CHECK(complete);

            std::vector<ZVec> scan;
            for (long a = -R; a <= R; ++a)
                for (long b = -R; b <= R; ++b) {
                    ZVec x = zv({a, b});
                    if (is_zero(x)) continue;
                    if (content(x) != 1) continue;
                    if (dot(x, mul(G, x)) != N) continue;
                    ZVec fx = mul(G, x);
                    std::vector<int> signs;
                    for (const ZVec& ray : C.rays) {
                        Z v = dot(fx, ray);
                        signs.push_back(v > 0 ? 1 : (v < 0 ? -1 : 0));
                    }
                    if (!meets_open(signs)) continue;
                    scan.push_back(canon(x));
                }
            std::sort(scan.begin(), scan.end(), lex_less);
            scan.erase(std::unique(scan.begin(), scan.end()), scan.end());

            std::vector<ZVec> boxed;
            for (const ZVec& x : found) {
                bool in_box = true;
                for (const Z& c : x)
                    if (abs(c) > R) in_box = false;
                if (in_box) boxed.push_back(x);
            }
            CHECK(boxed == scan);
        }
        ++done;
    }
}

TEST_CASE("wall enumeration over the worked cone") {
    Sublattice M = comp_sub();
    Cone C = cone_from_rays(2, {zv({1, 1}), zv({1, -1})});
    WallSpec spec = standard_wall_spec();

    WallEnumResult res = enumerate_walls_in_cone(M, C, spec);
    CHECK(res.certificate == "complete");
    REQUIRE(res.classes.size() == 3);
    CHECK(res.classes[0] == zv({0, 1}));
    CHECK(res.classes[1] == zv({2, -3}));
    CHECK(res.classes[2] == zv({2, 3}));

    // a user level bound downgrades the certificate
    WallEnumResult lim = enumerate_walls_in_cone(M, C, spec, Z(2));
    CHECK(lim.certificate == "bounded_search");
    for (const ZVec& c : lim.classes)
        CHECK(std::find(res.classes.begin(), res.classes.end(), c) != res.classes.end());
}

TEST_CASE("signed views of a class list") {
    std::vector<ZVec> classes = {zv({0, 1}), zv({2, -3}), zv({2, 3})};
    std::vector<ZVec> closure = signed_closure(classes);
    CHECK(closure.size() == 6);
    CHECK(std::find(closure.begin(), closure.end(), zv({0, -1})) != closure.end());
    CHECK(std::find(closure.begin(), closure.end(), zv({0, 1})) != closure.end());
    CHECK(std::find(closure.begin(), closure.end(), zv({-2, 3})) != closure.end());

    ZMat G(2, 2);
    G.at(0, 0) = 2;
    G.at(1, 1) = -2;
    std::vector<ZVec> signed_b = signed_against_base(classes, G, zv({1, 0}));
    // the base is orthogonal to the first wall, so both signs of it appear
    REQUIRE(signed_b.size() == 4);
    CHECK(std::find(signed_b.begin(), signed_b.end(), zv({0, -1})) != signed_b.end());
    CHECK(std::find(signed_b.begin(), signed_b.end(), zv({0, 1})) != signed_b.end());
    CHECK(std::find(signed_b.begin(), signed_b.end(), zv({2, -3})) != signed_b.end());
    CHECK(std::find(signed_b.begin(), signed_b.end(), zv({2, 3})) != signed_b.end());
    CHECK(std::find(signed_b.begin(), signed_b.end(), zv({-2, 3})) == signed_b.end());
}
