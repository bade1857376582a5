#include "repzeta/dirichlet.hpp"

#include "doctest.h"

using namespace repzeta;

namespace {
DirichletPoly jl() {
    DirichletPoly z;
    z.add_term(1, 16);
    z.add_term(4, 24);
    z.add_term(5, 64);
    return z;
}
}  // namespace

TEST_CASE("arithmetic") {
    DirichletPoly one = DirichletPoly::term(1, 1);
    CHECK(one * jl() == jl());
    CHECK((DirichletPoly::term(3, 2) * DirichletPoly::term(7, 5)) == DirichletPoly::term(21, 10));
    DirichletPoly a = DirichletPoly::term(1, 1) + DirichletPoly::term(2, 4);
    DirichletPoly b = a + DirichletPoly::term(2, 4);
    CHECK(b.str() == "{1:1, 2:8}");
}

TEST_CASE("dilation") {
    CHECK(jl().dilate(744).str() == "{744:16, 2976:24, 3720:64}");
    CHECK(jl().dilate(1) == jl());
    CHECK(jl().dilate(3).dilate(5) == jl().dilate(15));
}

TEST_CASE("evaluation") {
    CHECK(jl().at_zero() == 104);
    CHECK(jl().at_neg(2) == 2000);
    CHECK(DirichletPoly().at_neg(2) == 0);
    CHECK(DirichletPoly().eval(Real(3)) == 0);
    DirichletPoly z = DirichletPoly::term(1, 1) + DirichletPoly::term(25, 5);  // 1 + 5^{1-2s}
    CHECK(abs(z.eval(Real(1)) - Real("1.2")) < Real("1e-40"));
}

TEST_CASE("serialization") {
    auto z = DirichletPoly::parse(R"({"terms":[{"dim":"1","mult":"16"}]})");
    CHECK(z == DirichletPoly::term(1, 16));
    CHECK(DirichletPoly::from_json(jl().to_json()) == jl());
    auto u = DirichletPoly::parse(R"({"terms":[{"dim":"5","mult":"64"},{"dim":"1","mult":"16"},{"dim":"4","mult":"24"}]})");
    CHECK(u == jl());
    CHECK_THROWS_AS(DirichletPoly::parse(R"({"terms":[{"dim":"1","mult":"-3"}]})"), Error);
}
