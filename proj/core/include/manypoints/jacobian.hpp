#ifndef MANYPOINTS_JACOBIAN_HPP
#define MANYPOINTS_JACOBIAN_HPP

#include <gmpxx.h>
#include <optional>
#include <unordered_map>
#include <vector>

#include "manypoints/curve.hpp"

namespace manypoints {

// group order budget used by the enumeration-based structure machinery
constexpr Z kJacobianBudget = 200'000;

/*
 * Reduced Mumford representation of a divisor class on J(F_q): u monic of
 * degree <= g, deg v < deg u, u | v^2 + h v - f. Identity is (1, 0).
 */
struct MumfordDivisor {
    Poly u, v;
};

struct GroupStructure {
    mpz_class order;
    std::vector<Z> invariant_factors; // d_1 | d_2 | ... , each > 1
    std::vector<MumfordDivisor> generators; // generator i has order d_i
};

/*
 * Arithmetic and enumeration context for one curve's Jacobian. Cantor
 * composition/reduction is done in the general y^2 + h y = f form, so the
 * same code path serves both characteristics.
 */
class Jacobian {
public:
    explicit Jacobian(const CurveModel& C, Z budget = kJacobianBudget);

    const CurveModel& curve() const { return *C_; }

    MumfordDivisor identity() const;
    MumfordDivisor add(const MumfordDivisor& a, const MumfordDivisor& b) const;
    MumfordDivisor neg(const MumfordDivisor& a) const;
    MumfordDivisor scalar_mul(const MumfordDivisor& a, Z n) const;
    bool is_valid(const MumfordDivisor& a) const;
    // semi-reduced (u, v) of any degree -> reduced representative
    MumfordDivisor reduce(Poly u, Poly v) const;

    Z element_key(const MumfordDivisor& a) const; // canonical encoding

    // enumeration-backed (computed lazily, cached)
    const std::vector<MumfordDivisor>& elements() const;
    Z order() const;
    Z order_of(const MumfordDivisor& a) const;
    const GroupStructure& structure() const;
    Z n_rank(Z n) const;

    // J/2J: label of the coset of a (least element key in the coset);
    // equal labels iff the difference lies in 2J
    Z class_mod2(const MumfordDivisor& a) const;
    Z two_torsion_count() const; // #J[2]
    Z mod2_index() const;        // #(J/2J)

private:
    const CurveModel* C_;
    Z budget_;
    mutable std::vector<MumfordDivisor> elements_;
    mutable std::unordered_map<Z, size_t> index_of_key_;
    mutable std::vector<Z> coset_label_; // per element
    mutable std::optional<GroupStructure> structure_;
    void ensure_elements() const;
    void ensure_mod2() const;
};

// operation-table entry points
MumfordDivisor cantor_add(const CurveModel& C, const MumfordDivisor& a,
                          const MumfordDivisor& b);
GroupStructure group_structure(const CurveModel& C, Z budget = kJacobianBudget);
Z n_rank(const CurveModel& C, Z n, Z budget = kJacobianBudget);

// class of P - deg(P)*[infinity] for a generic affine place
MumfordDivisor place_to_divisor(const CurveModel& C, const Place& P);

// oracle twin: subgroup closure from scanned generators + invariant-factor
// chain fitting (see oracle.hpp)
GroupStructure jacobian_structure_by_closure(const CurveModel& C);

std::string render_divisor(const MumfordDivisor& D);

} // namespace manypoints

#endif
