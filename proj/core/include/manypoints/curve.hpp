#ifndef MANYPOINTS_CURVE_HPP
#define MANYPOINTS_CURVE_HPP

#include <functional>
#include <gmpxx.h>
#include <vector>

#include "manypoints/poly.hpp"

namespace manypoints {

inline mpz_class to_mpz(Z v) { return mpz_class((long)v); }

/*
 * Supported models: the projective line, and imaginary hyperelliptic
 * curves y^2 + h(x) y = f(x) with f monic of odd degree 2g+1 and
 * deg h <= g, so there is a single rational place at infinity.
 * In odd characteristic h = 0 and f squarefree; in characteristic 2
 * h != 0 and the affine model has no geometric singular point.
 */
struct CurveModel {
    enum class Kind { ProjectiveLine, Hyperelliptic };

    FieldPtr field;
    Kind kind;
    Poly f, h;
    int genus = 0;

    static CurveModel projective_line(FieldPtr field);
    // validates the model and derives the genus; throws SingularModel /
    // UnsupportedShape
    static CurveModel hyperelliptic(FieldPtr field, Poly f, Poly h);

    Z q() const { return field->q; }
    bool is_pline() const { return kind == Kind::ProjectiveLine; }
};

bool same_curve(const CurveModel& a, const CurveModel& b);

// Model together with its coefficient polynomials pushed into F_{q^m}.
struct CurveOverExt {
    const CurveModel* base;
    int m;
    FieldPtr ext; // F_{p^(k*m)}
    Poly f, h;    // over ext (empty for the projective line)
};

CurveOverExt base_change(const CurveModel& C, int m);

// y-coordinates over x in ascending index order (empty if no point)
std::vector<FieldElem> fiber_solutions(const CurveOverExt& E, const FieldElem& x);

/*
 * A closed point of degree d, stored as its canonical geometric
 * representative over F_{q^d}: the Frobenius-orbit element least under
 * (index(x), index(y)) lexicographic order. The infinite place has
 * degree 1 and carries no coordinates.
 */
struct Place {
    int degree = 1;
    bool at_infinity = false;
    FieldPtr ext;     // F_{p^(k*degree)}
    FieldElem x, y;   // y unused for the projective line

    static Place infinity();
};

/*
 * Zeta numerator: integer coefficients b_0..b_{2g}, b_0 = 1, with the
 * functional equation b_{2g-i} = q^{g-i} b_i. L(1) = #Jacobian(F_q).
 */
struct LPolynomial {
    Z q = 0;
    int genus = 0;
    std::vector<mpz_class> b;

    mpz_class at_one() const;
};

struct WeilReport {
    bool functional_equation = false;
    bool weil_interval = false;
    bool serre_refined = false;
    double root_moduli_max_err = 0.0;

    bool all_pass() const {
        return functional_equation && weil_interval && serre_refined &&
               root_moduli_max_err < 1e-9;
    }
};

// exact #C(F_{q^m}) by fiber enumeration; the x-range may be partitioned
// across workers, combined by exact integer sum
Z count_points(const CurveModel& C, int m, Z budget = kEnumBudget, int jobs = 1);

// enumerate the points of C(F_{q^m}) (affine points plus infinity)
void for_each_point(const CurveModel& C, int m,
                    const std::function<void(bool at_infinity, const FieldElem& x,
                                             const FieldElem& y)>& fn,
                    Z budget = kEnumBudget);

LPolynomial l_polynomial(const CurveModel& C, Z budget = kEnumBudget);

// #C(F_{q^m}) from the integer recurrence carried by L
mpz_class counts_from_l(const LPolynomial& L, int m);

// n_d(C) via Moebius inversion of the extension counts
mpz_class place_count_nd(const CurveModel& C, int d, Z budget = kEnumBudget);

/*
 * First degree-d place in the canonical sweep order: minimal polynomials
 * of the x-coordinate scanned by (degree, coefficient order); among the
 * places over one minimal polynomial, ascending y. The infinite place
 * comes last among degree-1 places. With generic_only set, skips places
 * fixed by the hyperelliptic involution and places whose orbit repeats
 * x-coordinates (both obstruct the Mumford construction).
 */
Place find_place(const CurveModel& C, int d, bool generic_only,
                 Z budget = kEnumBudget);

// all degree-d places in the same canonical order (stops after max_count)
std::vector<Place> list_places(const CurveModel& C, int d, bool generic_only,
                               size_t max_count, Z budget = kEnumBudget);

WeilReport weil_verify(const CurveModel& C, Z budget = kEnumBudget);

// u-polynomial of an affine place: minimal polynomial of its x-coordinate
// over F_q (degree = place degree for distinct-x places, half for
// repeated-x places)
Poly place_min_poly(const CurveModel& C, const Place& P);

bool place_equal(const Place& a, const Place& b);

} // namespace manypoints

#endif
