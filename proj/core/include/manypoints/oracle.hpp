#ifndef MANYPOINTS_ORACLE_HPP
#define MANYPOINTS_ORACLE_HPP

#include "manypoints/curve.hpp"

namespace manypoints {

struct GroupStructure; // jacobian.hpp

namespace oracle {

/*
 * Independent ground truth, deliberately algorithm-disjoint from the main
 * path: places are counted by explicit Frobenius-orbit partition (the main
 * path uses Moebius inversion of the zeta counts), and Jacobian structure
 * is rebuilt by subgroup closure (the main path enumerates all reduced
 * divisors).
 */

// number of Frobenius orbits of size exactly d inside C(F_{q^d})
Z brute_places(const CurveModel& C, int d, Z budget = kEnumBudget);

// exact maximum of #C(F_q) over the supported imaginary hyperelliptic
// models of genus g (g in {0,1,2}, q <= 5). For g = 1 this is N_q(1):
// every genus-1 maximizer has a rational point, hence a Weierstrass model.
// For g = 2 it is the maximum over curves with a rational Weierstrass
// point; genus-2 curves without one can exceed it, so treat the value as a
// certified lower bound for N_q(2) rather than the maximum itself.
Z brute_nq(Z q, int g);

// Jacobian structure by closure of scanned generators (|J| <= 5000)
GroupStructure brute_jacobian(const CurveModel& C);

// #B(F_{q^m}) for the plane model w^2 = num(x)*den(x) of a quadratic
// Kummer cover y^2 = num/den of the projective line (odd q, monic parts)
Z brute_kummer_cover_count(const FieldPtr& field, const Poly& num, const Poly& den,
                           int m, Z budget = kEnumBudget);

// regenerate the golden table as canonical JSON
std::string golden_json();

} // namespace oracle
} // namespace manypoints

#endif
