#ifndef MANYPOINTS_IO_HPP
#define MANYPOINTS_IO_HPP

#include <string>

#include "manypoints/curve.hpp"

namespace manypoints {

/*
 * Curve spec text format:
 *   pline p=2 k=1
 *   hyperelliptic p=3 k=1 f=[0,2,1,1] h=[]
 * Coefficient vectors are constant term first; over extension fields each
 * coefficient is itself a bracketed residue vector, e.g. f=[[0,1],[1],[0],[1]].
 * An empty list means the zero polynomial.
 */
CurveModel parse_curve_spec(const std::string& spec);
std::string render_curve_spec(const CurveModel& C);

// polynomial coefficient list in the same bracket syntax
std::string render_poly_brackets(const Poly& f);
Poly parse_poly_brackets(const FieldCtx& ctx, const std::string& brackets);

std::string render_weil_report_json(const WeilReport& R);

} // namespace manypoints

#endif
