#include "manypoints/funcspace.hpp"

#include <algorithm>

namespace manypoints {

std::vector<std::vector<FieldElem>> matrix_kernel(const FieldCtx& F,
                                                  std::vector<std::vector<FieldElem>> rows,
                                                  int cols) {
    int nrows = (int)rows.size();
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < nrows; ++c) {
        int piv = -1;
        for (int i = r; i < nrows; ++i)
            if (!rows[i][c].is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[r]);
        FieldElem inv = rows[r][c].inverse();
        for (int j = 0; j < cols; ++j) rows[r][j] = rows[r][j] * inv;
        for (int i = 0; i < nrows; ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            FieldElem m = rows[i][c];
            for (int j = 0; j < cols; ++j) rows[i][j] = rows[i][j] - m * rows[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<FieldElem>> kernel;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<FieldElem> v(cols, FieldElem::zero(F));
        v[free] = FieldElem::one(F);
        for (int i = 0; i < (int)pivot_col.size(); ++i)
            v[pivot_col[i]] = -rows[i][free];
        kernel.push_back(std::move(v));
    }
    return kernel;
}

ValUnit place_val_unit(const CurveModel& C, const Place& P, const CurveFunction& fn) {
    if (P.at_infinity) {
        CurveOverExt E = base_change(C, 1);
        const Embedding& e = get_embedding(C.field, E.ext);
        PointOnExt pt{true, FieldElem::zero(*E.ext), FieldElem::zero(*E.ext)};
        return function_val_unit(E, pt, base_change_function(fn, e));
    }
    CurveOverExt E = base_change(C, P.degree);
    const Embedding& e = get_embedding(C.field, P.ext);
    PointOnExt pt{false, P.x, P.y};
    return function_val_unit(E, pt, base_change_function(fn, e));
}

std::vector<std::pair<Poly, Poly>> function_space(const CurveModel& C,
                                                  const AmbientSpace& amb,
                                                  const std::vector<LocalCondition>& conds) {
    const FieldCtx& F = *C.field;
    if (amb.den.is_zero()) fail(Err::UnsupportedShape, "denominator must be nonzero");
    int g = C.genus;
    int na = amb.deg_a + 1, nb = amb.deg_b + 1;
    int cols = na + nb;
    if (cols == 0) return {};
    std::vector<std::vector<FieldElem>> rows;

    for (auto& cond : conds) {
        CurveOverExt E = base_change(C, cond.ext_degree);
        const FieldCtx& X = *E.ext;
        const Embedding& e = get_embedding(C.field, E.ext);
        Poly den_ext = e.map_poly(amb.den);
        // exponents the condition touches
        int top = cond.min_val - 1;
        for (int z : cond.zero_exps) top = std::max(top, z);
        // lower bound on basis/den valuations to size the window
        int lead;
        if (cond.at_infinity) {
            int mu = 0;
            if (amb.deg_a >= 0)
                mu = std::min(mu, C.is_pline() ? -amb.deg_a : -2 * amb.deg_a);
            if (amb.deg_b >= 0) mu = std::min(mu, -(2 * amb.deg_b + 2 * g + 1));
            int vden = C.is_pline() ? -amb.den.degree() : -2 * amb.den.degree();
            lead = mu - vden; // basis val minus den val
        } else {
            // affine: basis vals >= 0; den pole impossible, den zero of
            // order at most deg(den) * 2
            lead = -(2 * amb.den.degree() + 2);
        }
        int need = top - lead + 4;
        if (need < 8) need = 8;
        PointOnExt pt{cond.at_infinity, cond.x, cond.y};
        CoordSeries cs = expand_coordinates(E, pt, need + 8);
        int hint = cond.at_infinity ? lead : 0;
        Series den_s = series_eval_poly(den_ext, cs.x, hint, need + 8);
        Series den_inv = series_inverse(den_s);
        // basis series: x^i / den and x^j y / den
        std::vector<Series> basis;
        Series xp = Series::constant(X, FieldElem::one(X), need + 8);
        for (int i = 0; i < std::max(na, nb); ++i) {
            if (i > 0) xp = series_mul(xp, cs.x);
            if (i < na) basis.push_back(series_mul(xp, den_inv));
            if (i < nb) {
                // store later; avoid recomputing powers: collect x^j first
            }
        }
        if (nb > 0) {
            Series xq = Series::constant(X, FieldElem::one(X), need + 8);
            for (int j = 0; j < nb; ++j) {
                if (j > 0) xq = series_mul(xq, cs.x);
                basis.push_back(series_mul(series_mul(xq, cs.y), den_inv));
            }
        }
        // rows: each touched exponent gives ext_degree F_q-rows
        std::vector<int> exps;
        for (int v = lead; v < cond.min_val; ++v) exps.push_back(v);
        for (int z : cond.zero_exps)
            if (z >= cond.min_val) exps.push_back(z);
        for (int exp : exps) {
            std::vector<std::vector<FieldElem>> sub(cond.ext_degree,
                                                    std::vector<FieldElem>(cols, FieldElem::zero(F)));
            for (int col = 0; col < cols; ++col) {
                FieldElem coeff = basis[col].at_exp(exp);
                auto coords = e.coords(coeff);
                for (int r2 = 0; r2 < cond.ext_degree; ++r2) sub[r2][col] = coords[r2];
            }
            for (auto& rr : sub) rows.push_back(std::move(rr));
        }
    }

    auto kernel = matrix_kernel(F, std::move(rows), cols);
    std::vector<std::pair<Poly, Poly>> out;
    for (auto& v : kernel) {
        std::vector<FieldElem> ac(v.begin(), v.begin() + na);
        std::vector<FieldElem> bc(v.begin() + na, v.end());
        out.emplace_back(Poly(F, std::move(ac)), Poly(F, std::move(bc)));
    }
    return out;
}

} // namespace manypoints
