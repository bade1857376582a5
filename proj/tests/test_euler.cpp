#include "repzeta/euler.hpp"

#include "doctest.h"

using namespace repzeta;

TEST_CASE("places") {
    auto f = places(GlobalField::FunctionField, 5, 3);
    REQUIRE(f.size() == 3);
    CHECK(f[0].qv == 5);
    CHECK(f[0].count == 5);
    CHECK(f[1].qv == 25);
    CHECK(f[1].count == 10);
    CHECK(f[2].count == 40);
    std::vector<std::int64_t> primes;
    for (const auto& pc : places(GlobalField::Rationals, 0, 20)) primes.push_back(pc.qv);
    CHECK(primes == std::vector<std::int64_t>{5, 7, 11, 13, 17, 19});
}

TEST_CASE("local factors") {
    GroupId sl3 = parse_group("sl3"), su3 = parse_group("su3");
    LocalValue a = local_profinite(sl3, 5, 1, CharKind::Equal, 2.0, 1e-12);
    CHECK(a.converged);
    CHECK(a.value > 1.0);
    for (std::size_t i = 2; i < a.increments.size(); ++i) CHECK(a.increments[i] < a.increments[i - 1]);
    LocalValue b = local_profinite(su3, 5, 1, CharKind::Equal, 2.0, 1e-12);
    CHECK(b.converged);
    CHECK(b.value != doctest::Approx(a.value));
    CHECK_THROWS_AS(local_profinite(sl3, 5, 1, CharKind::Equal, -2.0), Error);
    CHECK_THROWS_AS(local_profinite(parse_group("gl3"), 5, 1, CharKind::Equal, 2.0), Error);
}

TEST_CASE("partial products") {
    GroupId sl3 = parse_group("sl3");
    auto e6 = partial_product(sl3, GlobalField::FunctionField, 5, 1.5, 6);
    auto e5 = partial_product(sl3, GlobalField::FunctionField, 5, 1.5, 5);
    CHECK(e6.trace.back().value == doctest::Approx(e5.trace.back().value).epsilon(1e-3));
    auto lo = partial_product(sl3, GlobalField::FunctionField, 5, 1.05, 6);
    CHECK(lo.trace.back().value > e6.trace.back().value);
    CHECK(partial_product(sl3, GlobalField::FunctionField, 5, 1.5, 0).trace.back().value == 1.0);
}

TEST_CASE("pole probe leading terms") {
    PoleProbe pr = pole_probe(parse_group("sl3"), GlobalField::FunctionField, 5, 4);
    REQUIRE(pr.r_values.size() == 4);
    for (const auto& t : pr.leading_terms) CHECK(t["converged"].get<bool>());
}
