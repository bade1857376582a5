#include "repzeta/zeta.hpp"

#include "doctest.h"

#include <cstdio>
#include <fstream>

using namespace repzeta;

TEST_CASE("level split properties") {
    for (int ell = 1; ell <= 40; ++ell)
        for (int m = 1; m <= ell; ++m) CHECK(LevelSplit::make(ell, m).violations().empty());
}

TEST_CASE("regular component") {
    GroupId gl1 = parse_group("gl1");
    for (int ell = 2; ell <= 4; ++ell) CHECK(zeta_regular(gl1, 5, ell) == DirichletPoly::term(1, group_order(gl1, 5, ell)));
    DirichletPoly z = zeta_regular(parse_group("gl2"), 5, 2);
    CHECK(z.at_neg(2) == BigInt(480) * 620);
    CHECK(zeta_regular(parse_group("gl3"), 5, 2).at_neg(2) == BigInt(1488000) * 1933900);
}

TEST_CASE("J zeta functions") {
    CHECK(zeta_J(5, 1, 1).str() == "{1:16, 4:24, 5:64}");
    CHECK(zeta_J(5, -1, 1).str() == "{1:36, 5:144, 6:24}");
    CHECK(zeta_J(5, -1, 1).at_neg(2) == 4500);
    CHECK(zeta_J(5, 1, 2).str() == "{1:400, 4:600, 5:1600, 20:3000, 25:8000}");
    CHECK(zeta_J(5, 1, 2).at_neg(2) == 6250000);
    for (int q : {5, 7, 11})
        for (int eps : {1, -1})
            for (int ell = 1; ell <= 5; ++ell) {
                CHECK(zeta_J(q, eps, ell) == zeta_J(q, eps, ell, true));
                CHECK(zeta_Jprime(q, eps, ell).at_neg(2) == j_order(q, eps, ell, true));
            }
    CHECK(zeta_Jprime(7, 1, 1).terms().count(2) == 1);
}

TEST_CASE("nilpotent component") {
    GroupId gl3 = parse_group("gl3"), gu3 = parse_group("gu3");
    CHECK(zeta_E_closed(gl3, 5, 2).str() == "{744:16, 2976:24, 3720:64}");
    CHECK(zeta_E_closed(gl3, 5, 2).at_neg(2) == 1107072000);
    CHECK(zeta_E_closed(gu3, 5, 2).at_neg(2) == BigInt(504) * 504 * 4500);
    CHECK(zeta_E_closed(gl3, 5, 3) == zeta_J(5, 1, 2).dilate(744 * 25));
    CHECK(zeta_E_explicit(gl3, LocalRing(5, 1, 2, CharKind::Mixed)) == zeta_E_closed(gl3, 5, 2));
    CHECK(zeta_E_explicit(gu3, LocalRing(5, 1, 3, CharKind::Mixed)) == zeta_E_closed(gu3, 5, 3));
    CHECK(zeta_E_explicit(parse_group("sl3"), LocalRing(7, 1, 2, CharKind::Mixed)) ==
          zeta_E_closed(parse_group("sl3"), 7, 2));
}

TEST_CASE("decomposable component") {
    BaseProvider base;
    GroupId gl3 = parse_group("gl3");
    auto r4 = zeta_decomposable(gl3, LocalRing(5, 1, 4, CharKind::Mixed), base);
    CHECK(r4.orbit_constant == 484375);
    CHECK(r4.level_constant == 484375);
    auto r2 = zeta_decomposable(gl3, LocalRing(5, 1, 2, CharKind::Mixed), base);
    CHECK(r2.chosen == 775);
    CHECK(r2.orbit_count == 20);
    CHECK(r2.component.at_neg(2) * 20 * bpow(BigInt(5), 9) == group_order(gl3, 5, 2) * 15500);
}

TEST_CASE("small groups") {
    BaseProvider base;
    CHECK(zeta_small(parse_group("gl2"), LocalRing(5, 1, 2, CharKind::Mixed), base).at_neg(2) == 625 * 480);
    CHECK(zeta_small(parse_group("sl2"), LocalRing(5, 1, 3, CharKind::Mixed), base).at_neg(2) ==
          bpow(BigInt(5), 6) * 120);
}

TEST_CASE("full zeta function") {
    BaseProvider base;
    GroupId gl3 = parse_group("gl3");
    ZetaReport rep = zeta_full(gl3, LocalRing(5, 1, 2, CharKind::Mixed), base);
    CHECK(rep.total.at_neg(2) == bpow(BigInt(5), 9) * 1488000);
    DirichletPoly sum;
    for (const auto& [n, c] : rep.components) sum += c;
    CHECK(sum == rep.total);
    auto j = rep.to_json();
    CHECK(j["checks"]["order_identity"].get<bool>());
    CHECK(j["checks"]["block_sum_ok"].get<bool>());
    for (int ell = 1; ell <= 3; ++ell)
        CHECK(zeta_total(gl3, LocalRing(5, 1, ell, CharKind::Mixed), base) ==
              zeta_total(gl3, LocalRing(5, 1, ell, CharKind::Equal), base));
}

TEST_CASE("builtin tables satisfy the degree identity") {
    for (const char* g : {"gl1", "gu1", "gl2", "gu2", "sl2", "su2", "gl3", "gu3", "sl3", "su3"})
        for (int q : {5, 7, 11, 13, 25}) CHECK(builtin_degrees(parse_group(g), q).at_neg(2) == group_order_k(parse_group(g), q));
}

TEST_CASE("shadow-preserving lift at level 2") {
    auto t = shadow_lift_check(parse_group("gl3"), LocalRing(5, 1, 2, CharKind::Mixed), false);
    CHECK(t.equal);
    CHECK(t.rhs == zeta_J(5, 1, 1).dilate(744));
}

TEST_CASE("file base provider rejects tables that fail the degree identity") {
    const std::string path = "bad_base.json";
    {
        std::ofstream f(path);
        f << R"({"censuses":[{"group":"gl2","q":5,"degrees":{"terms":[{"dim":"1","mult":"4"}]}}]})";
    }
    BaseProvider bad(BaseProvider::Kind::File, path);
    CHECK_THROWS_AS(bad.get(parse_group("gl2"), LocalRing(5, 1, 1, CharKind::Mixed)), Error);
    std::remove(path.c_str());
}
