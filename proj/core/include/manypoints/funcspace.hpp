#ifndef MANYPOINTS_FUNCSPACE_HPP
#define MANYPOINTS_FUNCSPACE_HPP

#include "manypoints/local.hpp"

namespace manypoints {

/*
 * Linear conditions on functions w = (a(x) + b(x) y) / den(x): at a chosen
 * point (over an extension), require val(w) >= min_val and/or kill specific
 * expansion coefficients. Conditions over F_{q^d} decompose into d rows
 * over F_q, so the solver works entirely over the base field.
 */
struct LocalCondition {
    bool at_infinity = false;
    int ext_degree = 1; // the point lives over F_{q^ext_degree}
    FieldElem x, y;     // over F_{p^(k*ext_degree)}; ignored at infinity
    int min_val = 0;
    std::vector<int> zero_exps; // extra exponents forced to zero
};

struct AmbientSpace {
    int deg_a = -1; // max degree of a(x); -1 for none
    int deg_b = -1; // max degree of b(x); -1 for none (mandatory for P^1)
    Poly den;       // denominator in x, nonzero
};

// F_q-basis (canonical reduced echelon form) of the condition subspace,
// returned as (a, b) numerator pairs
std::vector<std::pair<Poly, Poly>> function_space(const CurveModel& C,
                                                  const AmbientSpace& amb,
                                                  const std::vector<LocalCondition>& conds);

// valuation/unit of a function at a place's canonical representative
ValUnit place_val_unit(const CurveModel& C, const Place& P, const CurveFunction& fn);

// kernel of an F_q matrix (rows x cols), basis vectors in canonical form
std::vector<std::vector<FieldElem>> matrix_kernel(const FieldCtx& F,
                                                  std::vector<std::vector<FieldElem>> rows,
                                                  int cols);

} // namespace manypoints

#endif
