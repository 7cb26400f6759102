#include "manypoints/local.hpp"

#include <algorithm>

namespace manypoints {

FieldElem Series::at_exp(int e) const {
    if (e < start || e >= start + (int)c.size()) return FieldElem::zero(*ctx);
    return c[e - start];
}

std::optional<int> Series::valuation() const {
    for (size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero()) return start + (int)i;
    return std::nullopt;
}

Series Series::constant(const FieldCtx& F, FieldElem v, int n) {
    Series s;
    s.ctx = &F;
    s.start = 0;
    s.c.assign(n, FieldElem::zero(F));
    if (n > 0) s.c[0] = std::move(v);
    return s;
}

Series Series::zero(const FieldCtx& F, int start, int n) {
    Series s;
    s.ctx = &F;
    s.start = start;
    s.c.assign(n, FieldElem::zero(F));
    return s;
}

Series Series::monomial(const FieldCtx& F, int exp, FieldElem v, int n) {
    Series s = zero(F, exp, n);
    if (n > 0) s.c[0] = std::move(v);
    return s;
}

Series series_add(const Series& a, const Series& b) {
    const FieldCtx& F = *a.ctx;
    // known window of the sum: intersection of known windows, extended to
    // the smaller start (coefficients below either start are known zero of
    // that series only if below its window... they are unknown only above
    // the window, so anything below max(hi) works from min(start))
    int start = std::min(a.start, b.start);
    int hi = std::min(a.start + a.window(), b.start + b.window());
    if (hi <= start) hi = start;
    Series s = Series::zero(F, start, hi - start);
    for (int e = start; e < hi; ++e) s.c[e - start] = a.at_exp(e) + b.at_exp(e);
    return s;
}

Series series_sub(const Series& a, const Series& b) {
    return series_add(a, series_scale(b, -FieldElem::one(*b.ctx)));
}

Series series_mul(const Series& a, const Series& b) {
    const FieldCtx& F = *a.ctx;
    int start = a.start + b.start;
    int n = std::min(a.window(), b.window());
    Series s = Series::zero(F, start, n);
    for (int i = 0; i < a.window(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (int j = 0; j < b.window() && i + j < n; ++j)
            s.c[i + j] = s.c[i + j] + a.c[i] * b.c[j];
    }
    return s;
}

Series series_scale(const Series& a, const FieldElem& s) {
    Series r = a;
    for (auto& x : r.c) x = x * s;
    return r;
}

Series series_shift(const Series& a, int exps) {
    Series r = a;
    r.start += exps;
    return r;
}

Series series_inverse(const Series& a) {
    auto v = a.valuation();
    if (!v) fail(Err::NonIntegerResult, "series zero to precision; cannot invert");
    const FieldCtx& F = *a.ctx;
    int off = *v - a.start;
    int n = a.window() - off;
    // normalized unit part u = c[off] + c[off+1] t + ...
    std::vector<FieldElem> u(a.c.begin() + off, a.c.end());
    std::vector<FieldElem> b(n, FieldElem::zero(F));
    FieldElem inv0 = u[0].inverse();
    b[0] = inv0;
    for (int m = 1; m < n; ++m) {
        FieldElem acc = FieldElem::zero(F);
        for (int i = 1; i <= m; ++i) acc = acc + u[i] * b[m - i];
        b[m] = -acc * inv0;
    }
    Series r;
    r.ctx = &F;
    r.start = -*v;
    r.c = std::move(b);
    return r;
}

Series series_eval_poly(const Poly& f, const Series& x, int start_hint, int n) {
    const FieldCtx& F = *x.ctx;
    Series acc = Series::zero(F, start_hint, n);
    if (f.is_zero()) return acc;
    acc = Series::constant(F, f.lc(), n);
    for (int i = f.degree() - 1; i >= 0; --i) {
        acc = series_mul(acc, x);
        // re-widen the window: multiplying by x narrows nothing here since
        // both operands carry window n, but the start moves; add the
        // coefficient at the current start
        acc = series_add(acc, Series::constant(F, f.coeff(i), n));
    }
    return acc;
}

CurveFunction CurveFunction::ratio_x(const Poly& num, const Poly& den) {
    const FieldCtx& F = num.ctx();
    return {num, Poly::zero(F), den, Poly::zero(F)};
}

CurveFunction CurveFunction::poly_xy(const Poly& a, const Poly& b) {
    const FieldCtx& F = a.ctx();
    return {a, b, Poly::one(F), Poly::zero(F)};
}

CurveFunction base_change_function(const CurveFunction& fn, const Embedding& e) {
    return {e.map_poly(fn.na), e.map_poly(fn.nb), e.map_poly(fn.da), e.map_poly(fn.db)};
}

namespace {

// y(t) at a non-ramified affine point: x = x0 + t, solve
// y^2 + h(x) y - f(x) = 0 coefficient by coefficient from y(0) = y0
Series solve_y_series(const CurveOverExt& E, const FieldElem& x0, const FieldElem& y0,
                      int n) {
    const FieldCtx& F = *E.ext;
    Series x = Series::zero(F, 0, n);
    x.c[0] = x0;
    if (n > 1) x.c[1] = FieldElem::one(F);
    Series fx = series_eval_poly(E.f, x, 0, n);
    Series hx = series_eval_poly(E.h, x, 0, n);
    // dF/dy at the point: 2 y0 + h(x0)
    FieldElem dFy = y0 + y0 + E.h.eval(x0);
    if (dFy.is_zero()) fail(Err::NonIntegerResult, "point is ramified; wrong uniformizer");
    FieldElem dinv = dFy.inverse();
    Series y = Series::zero(F, 0, n);
    y.c[0] = y0;
    for (int m = 1; m < n; ++m) {
        // residual F(y) = y^2 + h y - f known up to t^m given y mod t^m
        Series res = series_sub(series_add(series_mul(y, y), series_mul(hx, y)), fx);
        FieldElem cm = res.at_exp(m);
        // correction: y_m = -cm / F_y(0)
        y.c[m] = -cm * dinv;
    }
    return y;
}

// x(t) at a ramified affine point: y = y0 + t, solve for x from x(0) = x0
Series solve_x_series(const CurveOverExt& E, const FieldElem& x0, const FieldElem& y0,
                      int n) {
    const FieldCtx& F = *E.ext;
    Series y = Series::zero(F, 0, n);
    y.c[0] = y0;
    if (n > 1) y.c[1] = FieldElem::one(F);
    // dF/dx = h'(x) y - f'(x), nonzero at a smooth ramified point
    FieldElem dFx = E.h.derivative().eval(x0) * y0 - E.f.derivative().eval(x0);
    if (dFx.is_zero()) fail(Err::SingularModel, "ramified point with vanishing x-derivative");
    FieldElem dinv = dFx.inverse();
    Series x = Series::zero(F, 0, n);
    x.c[0] = x0;
    for (int m = 1; m < n; ++m) {
        Series fx = series_eval_poly(E.f, x, 0, n);
        Series hx = series_eval_poly(E.h, x, 0, n);
        Series res = series_sub(series_add(series_mul(y, y), series_mul(hx, y)), fx);
        FieldElem cm = res.at_exp(m);
        x.c[m] = -cm * dinv;
    }
    return x;
}

// expansions at the infinite place of an imaginary hyperelliptic model,
// uniformizer t = x^g / y: iterate u = 1/x from
// u = t^2 (1 + sum_{i<=2g} f_i u^{2g+1-i}) - t sum_{i<=g} h_i u^{g+1-i}
CoordSeries expand_at_infinity_hyper(const CurveOverExt& E, int n) {
    const FieldCtx& F = *E.ext;
    int g = (E.f.degree() - 1) / 2;
    Series u = Series::zero(F, 0, n);
    for (int iter = 0; iter < n + 2; ++iter) {
        // powers of u as needed
        std::vector<Series> upow;
        upow.push_back(Series::constant(F, FieldElem::one(F), n));
        for (int i = 1; i <= 2 * g + 1; ++i) upow.push_back(series_mul(upow.back(), u));
        Series rhs = Series::constant(F, FieldElem::one(F), n);
        for (int i = 0; i <= 2 * g; ++i) {
            FieldElem fi = E.f.coeff(i);
            if (fi.is_zero()) continue;
            rhs = series_add(rhs, series_scale(upow[2 * g + 1 - i], fi));
        }
        Series t2 = Series::monomial(F, 2, FieldElem::one(F), n);
        rhs = series_mul(t2, rhs);
        for (int i = 0; i <= g; ++i) {
            FieldElem hi = E.h.coeff(i);
            if (hi.is_zero()) continue;
            Series term = series_mul(Series::monomial(F, 1, FieldElem::one(F), n),
                                     series_scale(upow[g + 1 - i], hi));
            rhs = series_sub(rhs, term);
        }
        // rebase into the window [0, n): the iteration gains one exact
        // t-adic digit per round, so junk above the converged prefix is
        // harmless and gets overwritten by later rounds
        Series nu = Series::zero(F, 0, n);
        for (int e = 0; e < n; ++e) nu.c[e] = rhs.at_exp(e);
        u = std::move(nu);
    }
    CoordSeries cs;
    cs.x = series_inverse(u); // x = 1/u, valuation -2
    // y = x^g / t
    Series xg = Series::constant(F, FieldElem::one(F), n);
    for (int i = 0; i < g; ++i) xg = series_mul(xg, cs.x);
    cs.y = series_shift(xg, -1);
    return cs;
}

} // namespace

CoordSeries expand_coordinates(const CurveOverExt& E, const PointOnExt& P, int n) {
    const FieldCtx& F = *E.ext;
    CoordSeries cs;
    if (E.base->is_pline()) {
        if (P.at_infinity) {
            // t = 1/x
            cs.x = Series::monomial(F, -1, FieldElem::one(F), n);
        } else {
            cs.x = Series::zero(F, 0, n);
            cs.x.c[0] = P.x;
            if (n > 1) cs.x.c[1] = FieldElem::one(F);
        }
        cs.y = Series::zero(F, 0, n);
        return cs;
    }
    if (P.at_infinity) return expand_at_infinity_hyper(E, n);
    FieldElem two_y_h = P.y + P.y + E.h.eval(P.x);
    if (!two_y_h.is_zero()) {
        cs.x = Series::zero(F, 0, n);
        cs.x.c[0] = P.x;
        if (n > 1) cs.x.c[1] = FieldElem::one(F);
        cs.y = solve_y_series(E, P.x, P.y, n);
    } else {
        cs.y = Series::zero(F, 0, n);
        cs.y.c[0] = P.y;
        if (n > 1) cs.y.c[1] = FieldElem::one(F);
        cs.x = solve_x_series(E, P.x, P.y, n);
    }
    return cs;
}

Series expand_function(const CurveOverExt& E, const PointOnExt& P,
                       const CurveFunction& fn, int n) {
    const FieldCtx& F = *E.ext;
    // generous window: polynomial evaluation at x (valuation >= -2 deg per
    // power at infinity) needs headroom; expand coordinates with padding
    int g = E.base->is_pline() ? 0 : (E.f.degree() - 1) / 2;
    int maxdeg = std::max(std::max(fn.na.degree(), fn.nb.degree()),
                          std::max(fn.da.degree(), fn.db.degree()));
    maxdeg = std::max(maxdeg, 0);
    int pad = P.at_infinity ? (2 * maxdeg + 2 * g + 3) : 0;
    int w = n + pad + 2;
    CoordSeries cs = expand_coordinates(E, P, w);
    auto part = [&](const Poly& a, const Poly& b) {
        int hint = P.at_infinity ? -(2 * maxdeg + 2 * g + 1) : 0;
        Series sa = series_eval_poly(a, cs.x, hint, w);
        if (b.is_zero()) return sa;
        Series sb = series_mul(series_eval_poly(b, cs.x, hint, w), cs.y);
        return series_add(sa, sb);
    };
    Series num = part(fn.na, fn.nb);
    Series den = part(fn.da, fn.db);
    Series r = series_mul(num, series_inverse(den));
    // clip to the requested window size
    if ((int)r.c.size() > n) r.c.resize(n);
    return r;
}

ValUnit function_val_unit(const CurveOverExt& E, const PointOnExt& P,
                          const CurveFunction& fn) {
    for (int n = 24; n <= 3072; n *= 2) {
        try {
            Series s = expand_function(E, P, fn, n);
            auto v = s.valuation();
            if (v) return {*v, s.at_exp(*v)};
        } catch (const DomainError&) {
            // denominator unresolved at this precision; widen and retry
        }
    }
    fail(Err::NonIntegerResult,
         "function appears to vanish to all computed precision at a point");
}

} // namespace manypoints
