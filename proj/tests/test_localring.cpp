#include "repzeta/localring.hpp"

#include "doctest.h"

using namespace repzeta;

TEST_CASE("ring construction") {
    LocalRing R(5, 1, 2, CharKind::Mixed);
    CHECK(R.size() == 25);
    CHECK(R.residue(R.nu()) == std::vector<std::int64_t>{2});
    CHECK_FALSE(R.residue_is_square(R.nu()));
    LocalRing F(5, 1, 1, CharKind::Equal);
    CHECK(F.residue(F.nu()) == std::vector<std::int64_t>{2});
    CHECK_THROWS_AS(LocalRing(3, 1, 2, CharKind::Mixed), Error);
}

TEST_CASE("element algebra") {
    LocalRing R(5, 1, 2, CharKind::Mixed);
    CHECK(R.inv(R.from_int(7)) == R.from_int(18));
    CHECK_THROWS(R.inv(R.from_int(10)));

    LocalRing T(5, 1, 2, CharKind::Equal);
    RingElem t = T.pi_pow(1);
    CHECK(T.mul(T.add(T.one(), t), T.sub(T.one(), t)) == T.one());

    QuadElem r = R.rho();
    CHECK(R.qmul(r, r) == R.embed(R.from_int(2)));
}

TEST_CASE("valuations") {
    LocalRing R(5, 1, 3, CharKind::Mixed);
    CHECK(R.valuation(R.from_int(10)) == 1);
    CHECK(R.valuation(R.zero()) == 3);
    LocalRing T(5, 1, 3, CharKind::Equal);
    CHECK(T.valuation(T.add(T.pi_pow(1), T.pi_pow(2))) == 1);
}

TEST_CASE("galois conjugation") {
    LocalRing R(5, 1, 2, CharKind::Mixed);
    CHECK(R.conj(R.rho()) == R.qneg(R.rho()));
    QuadElem three = R.embed(R.from_int(3));
    CHECK(R.conj(three) == three);
    QuadElem a = R.qadd(R.qone(), R.qmul(R.embed(R.from_int(2)), R.rho()));
    QuadElem n = R.qmul(a, R.conj(a));
    CHECK(R.conj(n) == n);
    CHECK(R.conj(R.conj(a)) == a);
}

TEST_CASE("enumerate, reduce, lift") {
    LocalRing R(5, 1, 2, CharKind::Mixed);
    CHECK(R.size() * R.size() == 625);
    CHECK(R.enumerate().size() == 25);
    LocalRing k = R.at_level(1);
    CHECK(R.reduce(R.from_int(18), k) == k.from_int(3));
    CHECK(R.lift(k.from_int(3), k) == R.from_int(3));
}

TEST_CASE("galois ring") {
    LocalRing R(5, 2, 2, CharKind::Mixed);
    CHECK(R.q() == 25);
    CHECK(R.size() == 625);
    for (const RingElem& x : R.enumerate())
        if (R.is_unit(x)) CHECK(R.mul(x, R.inv(x)) == R.one());
}
