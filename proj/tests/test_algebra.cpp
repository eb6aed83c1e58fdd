#include <catch2/catch_amalgamated.hpp>

#include "trimod/algebra.hpp"

using namespace trimod;

namespace {
// upper triangular 2x2 over F_p: basis E11, E22, E12
Algebra ut2(u32 p) {
    Algebra ut;
    ut.p = p;
    ut.dim = 3;
    ut.name = "UT2";
    ut.left_mul = {Mat(p, 3, 3, {1, 0, 0, 0, 0, 0, 0, 0, 1}),   // L_E11
                   Mat(p, 3, 3, {0, 0, 0, 0, 1, 0, 0, 0, 0}),   // L_E22
                   Mat(p, 3, 3, {0, 0, 0, 0, 0, 0, 0, 1, 0})};  // L_E12
    ut.unit = {1, 1, 0};
    return ut;
}
}  // namespace

TEST_CASE("ground field is a valid 1-dim algebra") {
    auto f2 = ground_field(2);
    CHECK(f2->validate().ok);
    CHECK(f2->dim == 1);
    auto f97 = ground_field(97);
    CHECK(f97->validate().ok);
}

TEST_CASE("dual numbers D2 = F_2[x]/(x^2) validate") {
    auto d2 = dual_numbers(2);
    CHECK(d2->validate().ok);
    // x * x = 0
    CHECK(d2->mul({0, 1}, {0, 1}) == std::vector<u32>{0, 0});
    // (1 + x)(1 + x) = 1 over F_2
    CHECK(d2->mul({1, 1}, {1, 1}) == std::vector<u32>{1, 0});
}

TEST_CASE("unit axiom failure is reported") {
    // group algebra of Z/2 (x*x = 1) but with unit declared as x
    Algebra a;
    a.p = 2;
    a.dim = 2;
    a.name = "bad";
    a.left_mul = {Mat::identity(2, 2), Mat(2, 2, 2, {0, 1, 1, 0})};
    a.unit = {0, 1};
    auto r = a.validate();
    CHECK_FALSE(r.ok);
    CHECK(r.detail.find("unit") != std::string::npos);
}

TEST_CASE("non-associative table is rejected with the failing pair") {
    Algebra a;
    a.p = 2;
    a.dim = 2;
    a.left_mul = {Mat::identity(2, 2), Mat(2, 2, 2, {0, 1, 1, 0})};  // Z/2 group algebra
    a.unit = {1, 0};
    REQUIRE(a.validate().ok);
    a.left_mul[1].at(0, 0) = 1;  // corrupt L_x so that x*1 != 1*x consistency breaks
    auto r = a.validate();
    CHECK_FALSE(r.ok);
    CHECK(r.detail.find("associativity") != std::string::npos);
}

TEST_CASE("opposite algebra of a commutative algebra coincides") {
    auto d2 = dual_numbers(2);
    Algebra op = d2->opposite();
    CHECK(op.validate().ok);
    CHECK(op.left_mul == d2->left_mul);
}

TEST_CASE("UT2 validates; opposite reverses products") {
    Algebra ut = ut2(2);
    REQUIRE(ut.validate().ok);
    Algebra op = ut.opposite();
    CHECK(op.validate().ok);
    // in the opposite, E12 *op E11 = E11 E12 = E12
    std::vector<u32> e12{0, 0, 1}, e11{1, 0, 0};
    CHECK(op.mul(e12, e11) == e12);
    CHECK(op.mul(e11, e12) == std::vector<u32>{0, 0, 0});
    CHECK(make_algebra(ut.opposite())->opposite().left_mul == ut.left_mul);
}
