#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "manypoints/gf.hpp"
#include "manypoints/poly.hpp"

using namespace manypoints;

// Brute-force check that a monic polynomial of degree <= 3 over F_p is
// irreducible: no roots (and for completeness, degree 2/3 suffices).
static bool brute_irreducible_low_degree(Z p, const std::vector<Z>& coeffs) {
    int deg = (int)coeffs.size() - 1;
    REQUIRE(deg <= 3);
    for (Z x = 0; x < p; ++x) {
        Z v = 0;
        for (int i = deg; i >= 0; --i) v = (v * x + coeffs[i]) % p;
        if (v == 0) return false;
    }
    return deg >= 2; // linear polys always have a root
}

TEST_CASE("deterministic moduli match exhaustive scan") {
    // F_2: modulus is t
    auto F2 = FieldCtx::get(2, 1);
    CHECK(F2->modulus == std::vector<Z>{0, 1});

    // F_4: the only irreducible quadratic over F_2
    auto F4 = FieldCtx::get(2, 2);
    CHECK(F4->modulus == std::vector<Z>{1, 1, 1});

    // F_9: scan monic quadratics in constant-first lex order, pick the
    // first with no root in F_3 (degree-2 irreducibility == no roots)
    std::vector<Z> expected;
    for (Z c0 = 0; c0 < 3 && expected.empty(); ++c0)
        for (Z c1 = 0; c1 < 3 && expected.empty(); ++c1)
            if (brute_irreducible_low_degree(3, {c0, c1, 1}))
                expected = {c0, c1, 1};
    auto F9 = FieldCtx::get(3, 2);
    CHECK(F9->modulus == expected);
    CHECK(F9->modulus == std::vector<Z>{1, 0, 1}); // t^2 + 1

    // F_27 via the same scan
    expected.clear();
    for (Z c0 = 0; c0 < 3 && expected.empty(); ++c0)
        for (Z c1 = 0; c1 < 3 && expected.empty(); ++c1)
            for (Z c2 = 0; c2 < 3 && expected.empty(); ++c2)
                if (brute_irreducible_low_degree(3, {c0, c1, c2, 1}))
                    expected = {c0, c1, c2, 1};
    auto F27 = FieldCtx::get(3, 3);
    CHECK(F27->modulus == expected);
}

TEST_CASE("construction rejects bad input") {
    CHECK_THROWS_AS(FieldCtx::get(4, 1), DomainError);
    CHECK_THROWS_AS(FieldCtx::get(2, 0), DomainError);
}

TEST_CASE("F4 multiplication table facts") {
    auto F4 = FieldCtx::get(2, 2);
    FieldElem t = FieldElem::generator(*F4);
    FieldElem one = FieldElem::one(*F4);
    CHECK(t * t == t + one);            // t^2 = t + 1
    CHECK((t * t * t) == one);          // t^3 = 1
    CHECK(t.trace_absolute() == 1);     // t + t^2 = 1
    CHECK(t.frobenius() == t * t);
}

TEST_CASE("field axioms on random triples, q <= 64") {
    std::mt19937_64 rng(12345);
    for (auto [p, k] : std::vector<std::pair<Z, int>>{
             {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6},
             {3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}, {7, 1}, {7, 2},
             {11, 1}, {13, 1}, {61, 1}}) {
        auto F = FieldCtx::get(p, k);
        for (int iter = 0; iter < 60; ++iter) {
            FieldElem a = FieldElem::from_index(*F, (Z)(rng() % F->q));
            FieldElem b = FieldElem::from_index(*F, (Z)(rng() % F->q));
            FieldElem c = FieldElem::from_index(*F, (Z)(rng() % F->q));
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == FieldElem::zero(*F));
            if (!a.is_zero()) CHECK(a * a.inverse() == FieldElem::one(*F));
            CHECK(a.pow(F->q) == a); // Fermat
            if (!a.is_zero()) CHECK(a.pow(F->q - 1) == FieldElem::one(*F));
        }
    }
}

TEST_CASE("frobenius applied k times is the identity") {
    for (auto [p, k] : std::vector<std::pair<Z, int>>{{2, 4}, {3, 3}, {5, 2}}) {
        auto F = FieldCtx::get(p, k);
        for (Z i = 0; i < F->q; ++i) {
            FieldElem x = FieldElem::from_index(*F, i);
            FieldElem y = x;
            for (int j = 0; j < k; ++j) y = y.frobenius();
            CHECK(y == x);
        }
    }
}

TEST_CASE("inv and division errors") {
    auto F9 = FieldCtx::get(3, 2);
    CHECK(FieldElem::one(*F9).inverse() == FieldElem::one(*F9));
    CHECK_THROWS_AS(FieldElem::zero(*F9).inverse(), DomainError);
    auto F4 = FieldCtx::get(2, 2);
    CHECK_THROWS_AS(FieldElem::one(*F9) + FieldElem::one(*F4), DomainError);
}

TEST_CASE("square flags agree with exhaustive squaring, q <= 81") {
    for (auto [p, k] : std::vector<std::pair<Z, int>>{
             {3, 1}, {3, 2}, {3, 4}, {5, 1}, {5, 2}, {7, 1}, {7, 2}, {79, 1}}) {
        auto F = FieldCtx::get(p, k);
        std::set<Z> squares;
        for (Z i = 0; i < F->q; ++i) {
            FieldElem x = FieldElem::from_index(*F, i);
            squares.insert((x * x).index());
        }
        for (Z i = 0; i < F->q; ++i) {
            FieldElem x = FieldElem::from_index(*F, i);
            auto [flag, root] = x.sqrt();
            CHECK(flag == (squares.count(i) > 0));
            if (flag) {
                CHECK(root * root == x);
                // canonical root: the smaller of r, -r by index
                CHECK(root.index() <= (-root).index());
            }
        }
    }
}

TEST_CASE("squares in characteristic 2: everything is a square") {
    for (auto [p, k] : std::vector<std::pair<Z, int>>{{2, 1}, {2, 3}, {2, 4}}) {
        auto F = FieldCtx::get(p, k);
        for (Z i = 0; i < F->q; ++i) {
            FieldElem x = FieldElem::from_index(*F, i);
            auto [flag, root] = x.sqrt();
            CHECK(flag);
            CHECK(root * root == x);
        }
    }
}

TEST_CASE("specific square facts") {
    auto F3 = FieldCtx::get(3, 1);
    CHECK_FALSE(FieldElem::from_int(*F3, 2).is_square()); // squares mod 3: {0,1}
    auto F9 = FieldCtx::get(3, 2);
    // every F_3 element becomes a square in F_9
    auto [flag, r] = FieldElem::from_int(*F9, 2).sqrt();
    CHECK(flag);
    CHECK(r * r == FieldElem::from_int(*F9, 2));
    auto [zf, zr] = FieldElem::zero(*F3).sqrt();
    CHECK(zf);
    CHECK(zr.is_zero());
}

TEST_CASE("trace of zero and artin-schreier fiber counts") {
    for (auto [p, k] : std::vector<std::pair<Z, int>>{{2, 2}, {2, 3}, {3, 2}}) {
        auto F = FieldCtx::get(p, k);
        CHECK(FieldElem::zero(*F).trace_absolute() == 0);
        // #{y : y^p - y = x} is p if trace(x) = 0, else 0
        for (Z i = 0; i < F->q; ++i) {
            FieldElem x = FieldElem::from_index(*F, i);
            Z count = 0;
            for (Z j = 0; j < F->q; ++j) {
                FieldElem y = FieldElem::from_index(*F, j);
                if (y.pow(p) - y == x) ++count;
            }
            CHECK(count == (x.trace_absolute() == 0 ? p : 0));
        }
    }
}

TEST_CASE("multiplicative order divides q-1") {
    for (auto [p, k] : std::vector<std::pair<Z, int>>{{2, 4}, {3, 2}, {5, 2}}) {
        auto F = FieldCtx::get(p, k);
        for (Z i = 1; i < F->q; ++i) {
            FieldElem x = FieldElem::from_index(*F, i);
            Z ord = 1;
            FieldElem y = x;
            while (!y.is_one()) {
                y = y * x;
                ++ord;
            }
            CHECK((F->q - 1) % ord == 0);
        }
    }
}

TEST_CASE("serialization round-trip over all elements of test fields") {
    for (auto [p, k] : std::vector<std::pair<Z, int>>{{2, 1}, {2, 4}, {3, 2}, {5, 1}, {7, 2}}) {
        auto F = FieldCtx::get(p, k);
        for (Z i = 0; i < F->q; ++i) {
            FieldElem x = FieldElem::from_index(*F, i);
            CHECK(FieldElem::parse(x.render()) == x);
        }
    }
    CHECK(FieldElem::parse("3^2:[1,2]").render() == "3^2:[1,2]");
    CHECK_THROWS_AS(FieldElem::parse("nonsense"), DomainError);
    CHECK_THROWS_AS(FieldElem::parse("3^2:[1]"), DomainError);
}

TEST_CASE("canonical twisting scalars") {
    auto F3 = FieldCtx::get(3, 1);
    CHECK(least_nonsquare(*F3).index() == 2);
    auto F2 = FieldCtx::get(2, 1);
    CHECK(least_nonzero_trace(*F2).index() == 1);
    auto F4 = FieldCtx::get(2, 2);
    // trace(t) = 1 and index(t) = 2; index 1 is the constant 1, trace 0
    CHECK(FieldElem::one(*F4).trace_absolute() == 0);
    CHECK(least_nonzero_trace(*F4) == FieldElem::generator(*F4));
}
