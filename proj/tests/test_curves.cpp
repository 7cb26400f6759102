#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "common/corpus.hpp"
#include "manypoints/curve.hpp"
#include "manypoints/io.hpp"
#include "manypoints/oracle.hpp"

using namespace manypoints;
using namespace manypoints::tests;

TEST_CASE("model validation and genus") {
    auto F5 = FieldCtx::get(5, 1);
    auto C = CurveModel::hyperelliptic(F5, Poly::from_ints(*F5, {0, 1, 0, 1}),
                                       Poly::zero(*F5));
    CHECK(C.genus == 1);

    auto F3 = FieldCtx::get(3, 1);
    auto C2 = CurveModel::hyperelliptic(F3, Poly::from_ints(*F3, {0, 2, 1, 1}),
                                        Poly::zero(*F3));
    CHECK(C2.genus == 1);

    auto F2 = FieldCtx::get(2, 1);
    auto C3 = CurveModel::hyperelliptic(F2, Poly::from_ints(*F2, {0, 1, 0, 0, 0, 1}),
                                        Poly::one(*F2));
    CHECK(C3.genus == 2);

    // f = x^3 over F_3 is not squarefree
    CHECK_THROWS_WITH_AS(
        (void)CurveModel::hyperelliptic(F3, Poly::from_ints(*F3, {0, 0, 0, 1}),
                                        Poly::zero(*F3)),
        doctest::Contains("SingularModel"), DomainError);
    // even-degree f is not an imaginary model
    CHECK_THROWS_WITH_AS(
        (void)CurveModel::hyperelliptic(F3, Poly::from_ints(*F3, {1, 0, 0, 0, 1}),
                                        Poly::zero(*F3)),
        doctest::Contains("UnsupportedShape"), DomainError);
    // characteristic 2 needs h != 0
    CHECK_THROWS_AS((void)CurveModel::hyperelliptic(
                        F2, Poly::from_ints(*F2, {0, 0, 0, 1}), Poly::zero(*F2)),
                    DomainError);
    // y^2 + x y = x^3 over F_2 is singular at the origin
    CHECK_THROWS_WITH_AS(
        (void)CurveModel::hyperelliptic(F2, Poly::from_ints(*F2, {0, 0, 0, 1}),
                                        Poly::from_ints(*F2, {0, 1})),
        doctest::Contains("SingularModel"), DomainError);
    // h stays within deg h <= g
    CHECK_THROWS_AS((void)CurveModel::hyperelliptic(
                        F2, Poly::from_ints(*F2, {0, 0, 0, 1}),
                        Poly::from_ints(*F2, {1, 1, 1})),
                    DomainError);
}

TEST_CASE("point counts over extensions") {
    auto P1F2 = parse_curve_spec("pline p=2 k=1");
    CHECK(count_points(P1F2, 3) == 9);
    CHECK(count_points(parse_curve_spec("hyperelliptic p=3 k=1 f=[0,2,1,1] h=[]"), 1) == 6);
    CHECK(count_points(parse_curve_spec("hyperelliptic p=3 k=1 f=[0,1,0,1] h=[]"), 1) == 4);
    CHECK(count_points(parse_curve_spec("hyperelliptic p=2 k=1 f=[0,0,0,1] h=[1]"), 1) == 3);
    CHECK(count_points(parse_curve_spec("hyperelliptic p=2 k=2 f=[[0,0],[0,0],[0,0],[1,0]] h=[[1,0]]"), 1) == 9);
    CHECK(count_points(parse_curve_spec("hyperelliptic p=2 k=1 f=[0,1,0,1] h=[1]"), 1) == 5);
    CHECK_THROWS_AS(count_points(parse_curve_spec("hyperelliptic p=2 k=1 f=[0,0,0,1] h=[1]"), 3, /*budget=*/4), DomainError);
}

TEST_CASE("L-polynomials of the F_3 elliptic curves") {
    auto L1 = l_polynomial(parse_curve_spec("hyperelliptic p=3 k=1 f=[0,1,0,1] h=[]"));
    REQUIRE(L1.b.size() == 3);
    CHECK(L1.b[0] == 1);
    CHECK(L1.b[1] == 0);
    CHECK(L1.b[2] == 3);
    CHECK(L1.at_one() == 4);

    auto L2 = l_polynomial(exceptional_f3_curve());
    CHECK(L2.b[1] == 2);
    CHECK(L2.b[2] == 3);
    CHECK(L2.at_one() == 6);

    auto LP = l_polynomial(parse_curve_spec("pline p=2 k=1"));
    CHECK(LP.b.size() == 1);
    CHECK(LP.b[0] == 1);
}

TEST_CASE("counts from L: recurrence vs enumeration") {
    // the 6-point curve reaches 18 points over F_27
    auto L = l_polynomial(exceptional_f3_curve());
    CHECK(counts_from_l(L, 3) == 18);
    // P^1: q^m + 1 for any m
    auto LP = l_polynomial(parse_curve_spec("pline p=5 k=1"));
    CHECK(counts_from_l(LP, 4) == 626);
    // corpus-wide: enumeration equals the recurrence for m <= 2g+2
    for (auto& C : corpus()) {
        auto Lc = l_polynomial(C);
        for (int m = 1; m <= 2 * C.genus + 2; ++m) {
            Z qm = 1;
            bool fits = true;
            for (int i = 0; i < m; ++i) {
                qm *= C.q();
                if (qm > kEnumBudget) { fits = false; break; }
            }
            if (!fits) continue;
            CHECK(counts_from_l(Lc, m) == to_mpz(count_points(C, m)));
        }
    }
}

TEST_CASE("place counts by Moebius inversion") {
    auto P1F2 = parse_curve_spec("pline p=2 k=1");
    CHECK(place_count_nd(P1F2, 1) == 3);
    CHECK(place_count_nd(P1F2, 2) == 1);
    CHECK(place_count_nd(P1F2, 3) == 2);
    CHECK(place_count_nd(P1F2, 4) == 3);
    CHECK(place_count_nd(exceptional_f3_curve(), 3) == 4);
    for (auto& C : corpus())
        CHECK(place_count_nd(C, 1) == to_mpz(count_points(C, 1)));
}

TEST_CASE("pre-inversion identity: sum of m*n_m over m|d") {
    for (auto& C : corpus()) {
        for (int d = 1; d <= 6; ++d) {
            Z qd = 1;
            bool fits = true;
            for (int i = 0; i < d; ++i) {
                qd *= C.q();
                if (qd > 1'000'000) { fits = false; break; }
            }
            if (!fits) continue;
            mpz_class total = 0;
            for (int m = 1; m <= d; ++m)
                if (d % m == 0) total += m * place_count_nd(C, m);
            CHECK(total == counts_from_l(l_polynomial(C), d));
        }
    }
}

TEST_CASE("moebius place counts agree with frobenius orbit counts") {
    for (auto& C : corpus()) {
        for (int d = 1; d <= 6; ++d) {
            Z qd = 1;
            bool fits = true;
            for (int i = 0; i < d; ++i) {
                qd *= C.q();
                if (qd > 1'000'000) { fits = false; break; }
            }
            if (!fits) continue;
            CHECK(place_count_nd(C, d) == to_mpz(oracle::brute_places(C, d)));
        }
    }
}

TEST_CASE("find_place canonical results") {
    auto P1F2 = parse_curve_spec("pline p=2 k=1");
    Place P = find_place(P1F2, 2, false);
    CHECK(P.degree == 2);
    CHECK(place_min_poly(P1F2, P).index_vector() == std::vector<Z>{1, 1, 1});

    auto C = parse_curve_spec("hyperelliptic p=3 k=1 f=[0,1,0,1] h=[]");
    Place P2 = find_place(C, 2, false);
    CHECK(P2.degree == 2);
    // orbit size is exactly 2
    FieldElem x1 = P2.x.pow(C.q()), y1 = P2.y.pow(C.q());
    CHECK(!(x1 == P2.x && y1 == P2.y));
    CHECK(x1.pow(C.q()) == P2.x);

    // y^2 + y = x^3 + x over F_2 has no degree-2 place
    auto C52 = parse_curve_spec("hyperelliptic p=2 k=1 f=[0,1,0,1] h=[1]");
    CHECK(place_count_nd(C52, 2) == 0);
    CHECK_THROWS_WITH_AS((void)find_place(C52, 2, false),
                         doctest::Contains("NoSuchPlace"), DomainError);

    // degree-1 places: affine points first (ascending), infinity last
    auto ps = list_places(C, 1, false, 100);
    REQUIRE(ps.size() == (size_t)count_points(C, 1));
    CHECK(ps.back().at_infinity);
    CHECK_FALSE(ps.front().at_infinity);
}

TEST_CASE("repeated-x places are found and counted") {
    // over F_3, y^2 = x^3 + x: place counts of every degree match the
    // orbit oracle, including degree-2 places over non-residue fibers
    auto C = parse_curve_spec("hyperelliptic p=3 k=1 f=[0,1,0,1] h=[]");
    auto all2 = list_places(C, 2, false, 1000);
    CHECK(to_mpz((Z)all2.size()) == place_count_nd(C, 2));
    auto gen2 = list_places(C, 2, true, 1000);
    CHECK(gen2.size() <= all2.size());
    for (auto& P : all2) {
        // representative is canonical: least over its orbit
        FieldElem x = P.x, y = P.y;
        for (int j = 1; j < P.degree; ++j) {
            x = x.pow(C.q());
            y = y.pow(C.q());
            bool greater = (x.index() > P.x.index()) ||
                           (x.index() == P.x.index() && y.index() >= P.y.index());
            CHECK(greater);
        }
    }
}

TEST_CASE("weil report on the corpus") {
    for (auto& C : corpus()) {
        auto R = weil_verify(C);
        CHECK(R.functional_equation);
        CHECK(R.weil_interval);
        CHECK(R.serre_refined);
        CHECK(R.root_moduli_max_err < 1e-9);
    }
    // |6 - 4| = 2 <= floor(2*sqrt(3)) = 3 on the refined bound
    auto R = weil_verify(exceptional_f3_curve());
    CHECK(R.serre_refined);
}

TEST_CASE("curve spec round trip") {
    for (auto& s : corpus_specs()) {
        auto C = parse_curve_spec(s);
        CHECK(render_curve_spec(C) == s);
    }
    CHECK_THROWS_AS(parse_curve_spec("elliptic p=3 k=1"), DomainError);
    CHECK_THROWS_AS(parse_curve_spec("hyperelliptic p=3"), DomainError);
}
