#ifndef MANYPOINTS_GF_HPP
#define MANYPOINTS_GF_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "manypoints/errors.hpp"

namespace manypoints {

using Z = long long;

// Hard cap on q = p^k for field *construction* (element arithmetic only).
// Enumeration loops enforce their own, smaller budgets.
constexpr Z kFieldConstructionCap = 200'000'000'000'000LL; // 2e14
// Default budget for loops that enumerate a whole field or point set.
constexpr Z kEnumBudget = 10'000'000;

class FieldCtx;
using FieldPtr = std::shared_ptr<const FieldCtx>;

/*
 * F_{p^k} = F_p[t]/(m(t)) with m the lexicographically least monic
 * irreducible of degree k, comparing coefficient vectors constant term
 * first.  For k = 1 the modulus is t.  Contexts are memoized, so equal
 * (p, k) means equal pointers.
 *
 * Elements are coefficient vectors c[0..k-1] (constant first) with the
 * encoding index(x) = sum c[i] p^i; all canonical choices ("least
 * element") refer to this index.
 */
class FieldCtx {
public:
    Z p;
    int k;
    std::vector<Z> modulus; // size k+1, monic, constant first
    Z q;                    // p^k

    static FieldPtr get(Z p, int k);

    // --- raw kernels on coefficient buffers of length k ---
    void add(const Z* a, const Z* b, Z* out) const;
    void sub(const Z* a, const Z* b, Z* out) const;
    void neg(const Z* a, Z* out) const;
    void mul(const Z* a, const Z* b, Z* out) const;
    void sqr(const Z* a, Z* out) const { mul(a, a, out); }
    void inv(const Z* a, Z* out) const;            // DivisionByZero on 0
    void pow(const Z* a, Z e, Z* out) const;        // e >= 0
    void frobenius(const Z* a, Z* out) const;       // x -> x^p
    bool is_zero(const Z* a) const;

    Z index_of(const Z* a) const;
    void from_index(Z idx, Z* out) const;

    // trace to F_p: x + x^p + ... + x^{p^(k-1)}, returned as residue
    Z trace_absolute(const Z* a) const;

    // Quadratic-character table (built lazily for q small enough):
    // chi(x) in {-1,0,1}; for p = 2 returns 1 for x != 0.
    int chi(const Z* a) const;

    ~FieldCtx();

private:
    FieldCtx() = default;
    friend struct FieldCtxFactory;

    std::vector<Z> trace_powers_;      // trace(t^i), precomputed
    mutable std::vector<int8_t> chi_table_; // lazy, guarded by mutex
    mutable std::shared_ptr<void> chi_mutex_;
};

class FieldElem {
public:
    FieldElem() : ctx_(nullptr) {}
    FieldElem(const FieldCtx& ctx, std::vector<Z> coeffs);

    static FieldElem zero(const FieldCtx& ctx);
    static FieldElem one(const FieldCtx& ctx);
    static FieldElem from_int(const FieldCtx& ctx, Z n); // n mod p embedded
    static FieldElem from_index(const FieldCtx& ctx, Z idx);
    static FieldElem generator(const FieldCtx& ctx); // the class of t

    const FieldCtx& ctx() const { return *ctx_; }
    const FieldCtx* ctx_ptr() const { return ctx_; }
    const std::vector<Z>& coeffs() const { return c_; }
    Z index() const { return ctx_->index_of(c_.data()); }
    bool is_zero() const { return ctx_->is_zero(c_.data()); }
    bool is_one() const;

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a);
    friend bool operator==(const FieldElem& a, const FieldElem& b);
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    FieldElem inverse() const;
    FieldElem pow(Z e) const; // e may be negative if invertible
    FieldElem frobenius() const;
    Z trace_absolute() const { return ctx_->trace_absolute(c_.data()); }

    // Square test and canonical square root (least root by index).
    // In characteristic 2 every element is a square.
    bool is_square() const;
    std::pair<bool, FieldElem> sqrt() const;

    // text form "p^k:[c0,c1,...]"
    std::string render() const;
    static FieldElem parse(const std::string& s);

private:
    const FieldCtx* ctx_;
    std::vector<Z> c_;
    void check_same(const FieldElem& o) const;
};

// Least non-square of an odd field / least element of nonzero absolute
// trace, both by index order.  Used as canonical twisting scalars.
FieldElem least_nonsquare(const FieldCtx& ctx);
FieldElem least_nonzero_trace(const FieldCtx& ctx);

} // namespace manypoints

#endif
