#ifndef MANYPOINTS_COVERS_HPP
#define MANYPOINTS_COVERS_HPP

#include "manypoints/funcspace.hpp"
#include "manypoints/jacobian.hpp"

namespace manypoints {

/*
 * Abstract covers of a base curve: a Kummer stage y^r = f (r coprime to
 * the characteristic), an Artin-Schreier stage z^(p^e) - z = f, or the
 * composite of the two over the same defining function. Covers are never
 * re-embedded as plane models; all counting is fiber-wise.
 */
struct RamEntry {
    Place place;  // place of the base curve
    int exponent; // contribution: sum deg(place) * exponent = different degree
};

struct CoverSpec {
    CurveModel base;
    Z kummer_r = 1; // 1 = no Kummer stage
    Z as_pe = 1;    // 1 = no Artin-Schreier stage (p-power otherwise)
    CurveFunction defining;
    std::vector<RamEntry> ramification;
    int expected_genus = 0;

    Z degree() const { return kummer_r * as_pe; }
    std::string kind() const;
};

struct SearchOptions {
    Z max_candidates = 400'000; // function-search sweep cap
    int max_extra_degree = 12;  // numerator degree headroom over the minimum
    int max_as_level = 6;       // cap on the 2-power pole level in the
                                // place-ramified Artin-Schreier search
};

// degree-2 Artin-Schreier cover of prescribed genus h >= 4g (even q). The
// default branch ramifies at the rational infinite place; the
// place-ramified variant ramifies at a single place of degree h - 2g + 1
// and realizes the additive-pole-space search.
CoverSpec build_as_cover(const CurveModel& C, int h, bool force_place_ramified = false,
                         SearchOptions opts = {});

// degree-2 Kummer cover of prescribed genus h >= 4g (odd q) via a
// J/2J collision between degree-d places, d = h - 2g + 1
CoverSpec build_kummer_cover(const CurveModel& C, int h, SearchOptions opts = {});

// degree-2 Kummer cover in which every rational place of the base splits
CoverSpec build_splitting_cover(const CurveModel& C, int h, SearchOptions opts = {});

struct NRankCover {
    CoverSpec cover;
    int d = 0;      // number of totally ramified rational points used
    Z r = 1, pe = 1;
    int genus = 0;
    Z genus_bound = 0; // 7 n g
};

// composite cover y^r = f, z^(p^e) - z = f with n = p^e * r, built from a
// function with simple poles at d rational points and one place of degree
// 2g+1; the Jacobian of the result picks up (Z/nZ)^(d-2)
NRankCover build_nrank_cover(const CurveModel& C, Z n, SearchOptions opts = {});

// exact #B(F_{q^m}) by summing fiber sizes over base points
Z cover_count_points(const CoverSpec& B, int m, Z budget = kEnumBudget);

// B or its quadratic twist, whichever has at least #C(F_q) points (ties
// keep the untwisted cover); asserts the twist-sum identity
CoverSpec select_twist(const CoverSpec& B, Z budget = kEnumBudget);
CoverSpec quadratic_twist(const CoverSpec& B);

// genus from the ramification re-derived off the defining function; throws
// InconsistentRamification if it disagrees with the stored data
int hurwitz_genus(const CoverSpec& B);

// L-polynomial of a cover from fiber counts m = 1..genus, verified against
// the counts for m = genus+1..2*genus (an independent genus confirmation)
LPolynomial cover_l_polynomial(const CoverSpec& B, Z budget = kEnumBudget);

// full divisor support of a function: places with nonzero valuation
struct SupportEntry {
    Place place;
    int val;
    FieldElem unit;
};
std::vector<SupportEntry> function_divisor_support(const CurveModel& C,
                                                   const CurveFunction& fn);

// JSON round trip for cover specs
std::string render_cover_json(const CoverSpec& B);
CoverSpec parse_cover_json(const std::string& json_text);

} // namespace manypoints

#endif
