#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "common/corpus.hpp"
#include "manypoints/local.hpp"

using namespace manypoints;
using namespace manypoints::tests;

TEST_CASE("series primitives") {
    auto F = FieldCtx::get(5, 1);
    Series a = Series::monomial(*F, -2, FieldElem::from_int(*F, 3), 8);
    Series b = Series::constant(*F, FieldElem::from_int(*F, 2), 8);
    Series p = series_mul(a, b);
    CHECK(p.valuation() == -2);
    CHECK(p.at_exp(-2) == FieldElem::from_int(*F, 1)); // 3*2 = 6 = 1 mod 5
    Series inv = series_inverse(a);
    Series one = series_mul(a, inv);
    CHECK(one.valuation() == 0);
    CHECK(one.at_exp(0).is_one());
    for (int e = 1; e < 4; ++e) CHECK(one.at_exp(e).is_zero());
}

TEST_CASE("coordinate expansions satisfy the curve equation") {
    for (auto& C : corpus()) {
        if (C.is_pline()) continue;
        CurveOverExt E = base_change(C, 1);
        int n = 14;
        // a couple of affine points and the infinite place
        std::vector<PointOnExt> pts;
        for_each_point(C, 1, [&](bool inf, const FieldElem& x, const FieldElem& y) {
            if (!inf && pts.size() < 3) pts.push_back({false, x, y});
        });
        pts.push_back({true, FieldElem::zero(*E.ext), FieldElem::zero(*E.ext)});
        for (auto& P : pts) {
            CoordSeries cs = expand_coordinates(E, P, n);
            Series lhs = series_add(series_mul(cs.y, cs.y),
                                    series_mul(series_eval_poly(E.h, cs.x, 0, n), cs.y));
            Series rhs = series_eval_poly(E.f, cs.x, 0, n);
            Series diff = series_sub(lhs, rhs);
            // zero to the shared window
            CHECK_FALSE(diff.valuation().has_value());
        }
    }
}

TEST_CASE("valuations of coordinate functions at infinity") {
    auto C = parse_curve_spec("hyperelliptic p=3 k=1 f=[0,2,1,1] h=[]");
    CurveOverExt E = base_change(C, 1);
    PointOnExt inf{true, FieldElem::zero(*E.ext), FieldElem::zero(*E.ext)};
    // v(x) = -2, v(y) = -(2g+1) = -3
    auto vx = function_val_unit(E, inf, CurveFunction::poly_xy(Poly::x(*E.ext), Poly::zero(*E.ext)));
    CHECK(vx.val == -2);
    auto vy = function_val_unit(E, inf,
                                CurveFunction::poly_xy(Poly::zero(*E.ext), Poly::one(*E.ext)));
    CHECK(vy.val == -3);
    // genus-2: v(y) = -5
    auto C2 = parse_curve_spec("hyperelliptic p=5 k=1 f=[0,1,0,0,0,1] h=[]");
    CurveOverExt E2 = base_change(C2, 1);
    auto vy2 = function_val_unit(E2, inf,
                                 CurveFunction::poly_xy(Poly::zero(*E2.ext), Poly::one(*E2.ext)));
    CHECK(vy2.val == -5);
}

TEST_CASE("value at unramified points matches direct evaluation") {
    std::mt19937_64 rng(404);
    for (auto& C : corpus()) {
        if (C.is_pline()) continue;
        CurveOverExt E = base_change(C, 2);
        std::vector<PointOnExt> pts;
        for_each_point(C, 2, [&](bool inf, const FieldElem& x, const FieldElem& y) {
            if (!inf) pts.push_back({false, x, y});
        });
        if (pts.empty()) continue;
        const FieldCtx& F = *E.ext;
        for (int iter = 0; iter < 6; ++iter) {
            auto& P = pts[rng() % pts.size()];
            std::vector<FieldElem> ca, cb;
            for (int i = 0; i < 3; ++i) {
                ca.push_back(FieldElem::from_index(F, (Z)(rng() % F.q)));
                cb.push_back(FieldElem::from_index(F, (Z)(rng() % F.q)));
            }
            CurveFunction fn = CurveFunction::poly_xy(Poly(F, ca), Poly(F, cb));
            if (fn.na.is_zero() && fn.nb.is_zero()) continue;
            FieldElem direct = fn.na.eval(P.x) + fn.nb.eval(P.x) * P.y;
            if (direct.is_zero()) continue;
            auto vu = function_val_unit(E, P, fn);
            CHECK(vu.val == 0);
            CHECK(vu.unit == direct);
        }
    }
}

TEST_CASE("principal divisors have degree zero") {
    // sum of val * deg over all places equals zero for x - c and for y
    std::mt19937_64 rng(9);
    for (auto& C : corpus()) {
        if (C.is_pline()) continue;
        if (C.q() > 3) continue;
        CurveOverExt E1 = base_change(C, 1);
        const FieldCtx& F = *C.field;
        // the function x - c: divisor supported on the fiber over c and infinity
        FieldElem c = FieldElem::from_index(F, (Z)(rng() % F.q));
        CurveFunction fn =
            CurveFunction::poly_xy(Poly::x(F) - Poly::constant(c), Poly::zero(F));
        Z total = 0;
        // affine part: places over x = c; walk degrees 1 and 2 (the fiber
        // has at most two geometric points, of degree <= 2 over F_q)
        for (int d = 1; d <= 2; ++d) {
            for (auto& P : list_places(C, d, false, 1000)) {
                if (P.at_infinity) continue;
                CurveOverExt E = base_change(C, d);
                const Embedding& e = get_embedding(C.field, E.ext);
                CurveFunction fx = base_change_function(fn, e);
                // only places over x = c matter
                if (!(e.map_poly(Poly::x(F) - Poly::constant(c)).eval(P.x)).is_zero())
                    continue;
                auto vu = function_val_unit(E, {false, P.x, P.y}, fx);
                total += (Z)vu.val * d;
            }
        }
        PointOnExt inf{true, FieldElem::zero(*E1.ext), FieldElem::zero(*E1.ext)};
        auto vinf = function_val_unit(E1, inf, fn);
        total += vinf.val;
        CHECK(total == 0);
        CHECK(vinf.val == -2); // x has a double pole at infinity
    }
}
