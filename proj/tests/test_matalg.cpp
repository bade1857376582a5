#include "repzeta/matalg.hpp"

#include "doctest.h"

using namespace repzeta;

TEST_CASE("star involution") {
    LocalRing R(5, 1, 1, CharKind::Mixed);
    Mat E = mat_E(R);
    CHECK(star(R, E) == E);
    CHECK(star(R, mat_identity(R, 3)) == mat_identity(R, 3));
    QuadElem a = R.rho(), b = R.embed(R.from_int(2)), c = R.qadd(R.qone(), R.rho());
    CHECK(star(R, mat_diag(R, {a, b, c})) == mat_diag(R, {R.conj(c), R.conj(b), R.conj(a)}));
}

TEST_CASE("membership") {
    LocalRing R(5, 1, 1, CharKind::Mixed);
    CHECK(in_lie_algebra(R, mat_scale(R, R.rho(), mat_E(R)), parse_group("gu3")));
    CHECK(in_group(R, mat_identity(R, 3), parse_group("su3")));
    LocalRing R2(5, 1, 2, CharKind::Mixed);
    Mat D = mat_diag(R2, {R2.embed(R2.from_int(2)), R2.qone(), R2.qone()});
    CHECK_FALSE(in_group(R2, D, parse_group("sl3")));
    CHECK(in_group(R2, D, parse_group("gl3")));
}

TEST_CASE("trace character") {
    LocalRing R(5, 1, 2, CharKind::Mixed);
    Mat X = mat_diag(R, {R.embed(R.from_int(7))});
    CHECK(trace_character(R, mat_zero(R, 1), X) == 0);
    CHECK(trace_character(R, mat_identity(R, 1), X) == 7);
}

TEST_CASE("characteristic polynomial tools") {
    LocalRing R(5, 1, 1, CharKind::Mixed);
    auto e = charpoly_tools(R, mat_E(R));
    CHECK_FALSE(e.cyclic);
    CHECK(e.hermitian_condition);
    for (const auto& c : e.coeffs) CHECK(R.qis_zero(c));
    auto h = charpoly_tools(R, mat_diag(R, {R.rho(), R.qzero(), R.qneg(R.rho())}));
    CHECK(h.hermitian_condition);
    Mat comp = mat_zero(R, 3);  // companion matrix of t^3 - rho
    comp.at(1, 0) = R.qone();
    comp.at(2, 1) = R.qone();
    comp.at(0, 2) = R.rho();
    CHECK(charpoly_tools(R, comp).cyclic);
}

TEST_CASE("congruence exponential") {
    LocalRing R(5, 1, 3, CharKind::Mixed);
    Mat X = mat_zero(R, 3);
    X.at(0, 1) = R.embed(R.from_int(3));
    X.at(2, 0) = R.embed(R.from_int(4));
    X.at(1, 1) = R.rho();
    Mat p2X = mat_pi(R, X, 2);
    CHECK(exp_congruence(R, p2X, 2) == mat_add(R, mat_identity(R, 3), p2X));
    Mat pX = mat_pi(R, X, 1);
    CHECK(log_congruence(R, exp_congruence(R, pX, 1), 1) == pX);
}

TEST_CASE("group orders") {
    CHECK(group_order(parse_group("gl3"), 5, 1) == 1488000);
    CHECK(group_order(parse_group("gu3"), 5, 1) == 2268000);
    CHECK(group_order(parse_group("gl3"), 5, 2) == bpow(BigInt(5), 9) * 1488000);
    CHECK(group_order(parse_group("gl2"), 5, 1) == 480);
}
