#include "repzeta/orbits.hpp"

#include "doctest.h"

using namespace repzeta;

namespace {
QuadElem n(const LocalRing& R, std::int64_t v) { return R.embed(R.from_int(v)); }
}  // namespace

TEST_CASE("level-1 classification") {
    LocalRing R(5, 1, 1, CharKind::Mixed);
    GroupId gl3 = parse_group("gl3");
    CHECK(classify_level1(R, mat_E(R), gl3).kind == OrbitKind::NilpotentTranslate);
    OrbitType t = classify_level1(R, mat_diag(R, {n(R, 1), n(R, 2), n(R, 3)}), gl3);
    CHECK(t.kind == OrbitKind::Regular);
    CHECK(t.tag() == "regular:1,1,1");
    CHECK(classify_level1(R, mat_diag(R, {n(R, 1), n(R, 1), n(R, 2)}), gl3).kind == OrbitKind::Decomposable);
    CHECK(classify_level1(R, mat_identity(R, 3), gl3).kind == OrbitKind::Scalar);
}

TEST_CASE("regular census gl2") {
    OrbitCensus c = regular_census(parse_group("gl2"), 5);
    std::map<std::string, std::pair<BigInt, BigInt>> rows;
    for (const auto& r : c.rows) rows[r.type] = {r.count, r.size};
    CHECK(regular_element_count(parse_group("gl2"), 5) == 620);
    BigInt n16 = 0, n24 = 0, n20 = 0;
    for (const auto& r : c.rows) {
        if (r.size == 20) n20 += r.count;
        if (r.size == 24) n24 += r.count;
        if (r.size == 30) n16 += r.count;
    }
    // 10 split classes of size 20, 10 elliptic of size 30, 5 non-semisimple of size 24
    CHECK(n20 == 10);
    CHECK(n16 == 10);
    CHECK(n24 == 5);
}

TEST_CASE("regular census gl3 and the level-1 head count") {
    GroupId gl3 = parse_group("gl3");
    bool irreducible_cubics = false;
    for (const auto& r : regular_census(gl3, 5).rows)
        if (r.type == "regular:3") irreducible_cubics = r.count == 40 && r.stabilizer == 124;
    CHECK(irreducible_cubics);
    OrbitCensus c = level1_census(gl3, 5);
    CHECK(c.closed());
    CHECK(c.points() == bpow(BigInt(5), 9));
    CHECK(regular_element_count(gl3, 5) == 1933900);
}

TEST_CASE("small brute-force censuses") {
    LocalRing R(5, 1, 1, CharKind::Mixed);
    for (const char* g : {"gl2", "gu2", "sl2", "su2"}) {
        OrbitCensus b = brute_force_census(parse_group(g), R);
        CHECK(b.closed());
        CHECK(b.same_rows(level1_census(parse_group(g), 5)));
    }
}

TEST_CASE("branching and coadjoint tables") {
    auto orbits = [](const OrbitCensus& c) { return c.orbits(); };
    CHECK(orbits(branching_fiber(1, 5)) == 25 + 100 + 30);
    CHECK(orbits(branching_fiber(-1, 5)) == 25 + 100 + 20);
    CHECK(branching_fiber(1, 5).points() == 3125);
    CHECK(j_coadjoint_census(5, 1).points() == 3125);
    CHECK(j_coadjoint_census(5, -1).points() == 3125);
    CHECK(j_coadjoint_census(7, 1).points() == 16807);
    LocalRing R1(5, 1, 1, CharKind::Mixed);
    CHECK(j_coadjoint_brute(R1, 1).same_rows(j_coadjoint_census(5, 1)));
}

TEST_CASE("j stabilizer of the zero V-part is the whole group") {
    LocalRing R(5, 1, 1, CharKind::Mixed);
    JCoadjointLift W{1, R.qzero(), R.qzero(), R.qzero(), R.qzero(), R.qzero()};
    CHECK(j_stabilizer_order(R, W, 1) == 2000);
}

TEST_CASE("shadows") {
    LocalRing R(5, 1, 2, CharKind::Mixed);
    GroupId gl3 = parse_group("gl3");
    ShadowReport e = shadow(R, mat_E(R), gl3);
    CHECK(e.preserving);
    REQUIRE(e.order);
    CHECK(*e.order == 2000);
    Mat x = mat_E(R);
    x.at(1, 0) = R.embed(R.pi_pow(1));
    CHECK_FALSE(shadow(R, x, gl3).preserving);
    ShadowReport s = shadow(R, mat_identity(R, 3), gl3);
    CHECK(s.preserving);
    REQUIRE(s.order);
    CHECK(*s.order == 1488000);
}

TEST_CASE("block diagonalisation") {
    LocalRing R(5, 1, 3, CharKind::Mixed);
    Mat xi = mat_diag(R, {n(R, 1), n(R, 1), n(R, 2)});
    Mat N = mat_zero(R, 3);
    N.at(0, 2) = n(R, 1);
    N.at(2, 1) = n(R, 3);
    N.at(1, 0) = n(R, 2);
    Mat x = mat_add(R, xi, mat_pi(R, N, 1));
    BlockDiag b = block_diagonalize(R, x);
    Mat y = mat_conjugate(R, b.g, x);
    for (int i = 0; i < 2; ++i) {
        CHECK(R.qis_zero(y.at(i, 2)));
        CHECK(R.qis_zero(y.at(2, i)));
    }
    CHECK(block_diagonalize(R, xi).g == mat_identity(R, 3));
    CHECK_THROWS(block_diagonalize(R, mat_identity(R, 3)));
}

TEST_CASE("nilpotent lifts validate their parameters") {
    LocalRing R(5, 1, 2, CharKind::Mixed);
    QuadElem z = R.qzero(), p = R.embed(R.pi_pow(1));
    NilpotentLift L = make_lift(R, false, z, z, p, z, z);
    CHECK(L.m == 1);
    CHECK_THROWS(make_lift(R, false, R.qone(), z, p, z, z));
    Mat A = nilpotent_lift_matrix(R, L);
    CHECK(A.at(0, 2) == R.qone());
}
