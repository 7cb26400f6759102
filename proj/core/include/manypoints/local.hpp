#ifndef MANYPOINTS_LOCAL_HPP
#define MANYPOINTS_LOCAL_HPP

#include <optional>

#include "manypoints/curve.hpp"

namespace manypoints {

/*
 * Truncated Laurent series over a field: coefficients c[0..n-1] cover the
 * exponent window [start, start + n); nothing is known beyond the window.
 * Leading zeros are allowed, so `start` is a window bound, not the
 * valuation.
 */
struct Series {
    const FieldCtx* ctx = nullptr;
    int start = 0;
    std::vector<FieldElem> c;

    int window() const { return (int)c.size(); }
    FieldElem at_exp(int e) const; // zero outside the window
    // first nonzero exponent, or nullopt if zero to the whole window
    std::optional<int> valuation() const;

    static Series constant(const FieldCtx& F, FieldElem v, int n);
    static Series zero(const FieldCtx& F, int start, int n);
    static Series monomial(const FieldCtx& F, int exp, FieldElem v, int n);
};

Series series_add(const Series& a, const Series& b);
Series series_sub(const Series& a, const Series& b);
Series series_mul(const Series& a, const Series& b);
Series series_scale(const Series& a, const FieldElem& s);
Series series_shift(const Series& a, int exps);
// inverse of a unit-after-normalization series; fails if zero to precision
Series series_inverse(const Series& a);
// evaluate a polynomial at a series argument (Horner)
Series series_eval_poly(const Poly& f, const Series& x, int start_hint, int n);

/*
 * Function on a curve, written (na + nb*y) / (da + db*y) with polynomial
 * coefficients over the base field. For the projective line nb = db = 0.
 */
struct CurveFunction {
    Poly na, nb, da, db;

    static CurveFunction ratio_x(const Poly& num, const Poly& den); // num(x)/den(x)
    static CurveFunction poly_xy(const Poly& a, const Poly& b);     // a(x) + b(x) y
    bool zero_denominator() const { return da.is_zero() && db.is_zero(); }
};

// push a function's coefficients into F_{q^m}
CurveFunction base_change_function(const CurveFunction& fn, const Embedding& e);

/*
 * Local uniformizers: t = x - x0 at a non-ramified affine point,
 * t = y - y0 at a ramified affine point, t = x^g / y at the infinite place
 * of a hyperelliptic model and t = 1/x on the projective line.
 */
struct PointOnExt {
    bool at_infinity = false;
    FieldElem x, y; // over E.ext; y ignored for the projective line
};

// Laurent expansions of the coordinate functions at a point; window size n
struct CoordSeries {
    Series x, y;
};
CoordSeries expand_coordinates(const CurveOverExt& E, const PointOnExt& P, int n);

// expansion of a function (coefficients already over E.ext) at the point
Series expand_function(const CurveOverExt& E, const PointOnExt& P,
                       const CurveFunction& fn, int n);

struct ValUnit {
    int val = 0;
    FieldElem unit; // leading coefficient w.r.t. the canonical uniformizer
};

// valuation and normalized leading unit; retries with a larger window until
// the numerator and denominator resolve (the function must be nonzero)
ValUnit function_val_unit(const CurveOverExt& E, const PointOnExt& P,
                          const CurveFunction& fn);

} // namespace manypoints

#endif
