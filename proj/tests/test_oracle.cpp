#include "repzeta/oracle.hpp"

#include "doctest.h"

using namespace repzeta;

TEST_CASE("group tables") {
    LocalRing R(5, 1, 1, CharKind::Mixed);
    FastRing F(R);
    CHECK(build_group(GroupSpec::j(1), F)->size() == 2000);
    CHECK(build_group(GroupSpec::j(-1), F)->size() == 4500);
    CHECK(build_group(GroupSpec::classical(parse_group("gl2")), F)->size() == 480);
}

TEST_CASE("conjugacy classes") {
    LocalRing R(5, 1, 1, CharKind::Mixed);
    FastRing F(R);
    CHECK(conjugacy_classes(*build_group(GroupSpec::j(1), F)).count() == 104);
    CHECK(conjugacy_classes(*build_group(GroupSpec::j(-1), F)).count() == 204);
    CHECK(conjugacy_classes(*build_group(GroupSpec::classical(parse_group("gl2")), F)).count() == 24);
}

TEST_CASE("dixon degrees") {
    LocalRing R(5, 1, 1, CharKind::Mixed);
    FastRing F(R);
    auto T = build_group(GroupSpec::j(1), F);
    CHECK(dixon_degrees(*T, conjugacy_classes(*T)).degrees.str() == "{1:16, 4:24, 5:64}");
    auto U = build_group(GroupSpec::classical(parse_group("gl2")), F);
    DirichletPoly d = dixon_degrees(*U, conjugacy_classes(*U)).degrees;
    CHECK(d.at_neg(2) == 480);
    CHECK(d.at_zero() == 24);

    // cyclic group of order 3 generated by the diagonal element diag(1, 1) * ... inside GL1(F7)
    LocalRing R7(7, 1, 1, CharKind::Mixed);
    FastRing F7(R7);
    GroupTable C(F7, Codec::full(F7, 1), "C3");
    SMat g = sm_identity(1);
    for (int i = 0; i < 3; ++i) {
        C.insert(g);
        g = sm_mul(F7, g, sm_from_mat(F7, mat_diag(R7, {R7.embed(R7.from_int(2))})));
    }
    CHECK(dixon_degrees(C, conjugacy_classes(C)).degrees.str() == "{1:3}");
}

TEST_CASE("class counts match zeta at s = 0 for small groups") {
    LocalRing R(5, 1, 1, CharKind::Equal);
    FastRing F(R);
    CHECK(class_count_only(GroupSpec::j(1, false, true), F) == 26);
}
