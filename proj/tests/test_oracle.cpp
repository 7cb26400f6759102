#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "common/corpus.hpp"
#include "manypoints/bounds.hpp"
#include "manypoints/jacobian.hpp"
#include "manypoints/oracle.hpp"

using namespace manypoints;
using namespace manypoints::tests;

TEST_CASE("orbit place counts on pinned examples") {
    auto P1F2 = parse_curve_spec("pline p=2 k=1");
    CHECK(oracle::brute_places(P1F2, 1) == 3);
    CHECK(oracle::brute_places(P1F2, 2) == 1);
    CHECK(oracle::brute_places(exceptional_f3_curve(), 3) == 4);
}

TEST_CASE("exhaustive nq values") {
    CHECK(oracle::brute_nq(2, 0) == 3);
    CHECK(oracle::brute_nq(2, 1) == 5);
    CHECK(oracle::brute_nq(3, 1) == 7);
    // imaginary models cap the affine part at 2q, so g = 2 rows sit at 2q+1
    CHECK(oracle::brute_nq(2, 2) == 5);
    CHECK(oracle::brute_nq(5, 2) == 11);
    CHECK_THROWS_AS(oracle::brute_nq(7, 1), DomainError);
    CHECK_THROWS_AS(oracle::brute_nq(4, 3), DomainError);
}

TEST_CASE("golden table regenerates byte-identically") {
    std::ifstream in(MANYPOINTS_GOLDEN_FILE);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    CHECK(oracle::golden_json() == ss.str());
}

TEST_CASE("golden values sit inside the refined Weil sandwich") {
    for (Z q : {2, 3, 4, 5}) {
        for (int g : {0, 1, 2}) {
            Z v = oracle::brute_nq(q, g);
            auto b = classical_bounds(q, g);
            CHECK(mpq_class(to_mpz(v)) <= b.serre_upper.value.rational);
            CHECK(mpq_class(to_mpz(v)) >= 1);
        }
    }
}

TEST_CASE("closure jacobian on a genus-2 curve") {
    auto C = parse_curve_spec("hyperelliptic p=3 k=1 f=[0,1,0,0,0,1] h=[]");
    auto brute = oracle::brute_jacobian(C);
    auto main_s = group_structure(C);
    CHECK(brute.order == main_s.order);
    CHECK(brute.invariant_factors == main_s.invariant_factors);
}
