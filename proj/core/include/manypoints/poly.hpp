#ifndef MANYPOINTS_POLY_HPP
#define MANYPOINTS_POLY_HPP

#include <functional>
#include <utility>
#include <vector>

#include "manypoints/gf.hpp"

namespace manypoints {

/*
 * Dense polynomials over F_q, coefficients constant term first. The zero
 * polynomial has empty coefficient list and degree -1. Canonical order on
 * polynomials: by degree, then by the constant-first index vector, first
 * position most significant (this matches the modulus selection rule).
 */
class Poly {
public:
    Poly() : ctx_(nullptr) {} // empty shell; assign before use
    explicit Poly(const FieldCtx& ctx) : ctx_(&ctx) {}
    Poly(const FieldCtx& ctx, std::vector<FieldElem> coeffs);

    static Poly zero(const FieldCtx& ctx) { return Poly(ctx); }
    static Poly one(const FieldCtx& ctx);
    static Poly x(const FieldCtx& ctx);
    static Poly constant(FieldElem c);
    static Poly from_ints(const FieldCtx& ctx, const std::vector<Z>& ints);
    static Poly monomial(const FieldCtx& ctx, int degree, FieldElem c);

    const FieldCtx& ctx() const { return *ctx_; }
    int degree() const { return (int)c_.size() - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const;
    FieldElem coeff(int i) const;
    const std::vector<FieldElem>& coeffs() const { return c_; }
    FieldElem lc() const; // leading coefficient; zero poly -> 0
    bool is_monic() const { return !is_zero() && lc().is_one(); }

    FieldElem eval(const FieldElem& x) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator*(const FieldElem& s) const;
    Poly operator-() const;
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // division with remainder; divisor must be nonzero
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    Poly mod(const Poly& m) const { return divmod(*this, m).second; }
    bool divides(const Poly& a) const; // *this | a

    Poly make_monic() const;
    Poly derivative() const;
    Poly shift(int n) const; // multiply by x^n

    static Poly gcd(Poly a, Poly b); // monic gcd
    // monic g with s*a + t*b = g
    static void xgcd(const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t);
    static Poly pow_mod(const Poly& base, unsigned __int128 e, const Poly& m);

    bool is_irreducible() const;
    bool is_squarefree() const;

    // full factorization into monic irreducibles, canonically sorted
    std::vector<std::pair<Poly, int>> factor() const;
    // roots in the coefficient field, ascending by index
    std::vector<FieldElem> roots() const;

    // canonical comparison
    static int compare(const Poly& a, const Poly& b);

    std::vector<Z> index_vector() const; // constant-first coefficient indices

private:
    const FieldCtx* ctx_;
    std::vector<FieldElem> c_;
    void trim();
};

/*
 * Embedding of F_{p^k} into F_{p^(k*d)}: the small generator maps to the
 * least root of the small modulus in the big field. coords() writes a big
 * element in the basis {T^j : j < d} over the embedded small field, where
 * T is the big field's canonical generator.
 */
class Embedding {
public:
    FieldPtr from, to;
    FieldElem gen_image;

    int rel_degree() const { return to->k / from->k; }
    FieldElem map(const FieldElem& x) const;
    Poly map_poly(const Poly& f) const;
    std::vector<FieldElem> coords(const FieldElem& big) const;
    // inverse of map for elements that lie in the embedded subfield
    FieldElem down(const FieldElem& big) const;

private:
    friend const Embedding& get_embedding(const FieldPtr& from, const FieldPtr& to);
    std::vector<std::vector<Z>> solve_matrix_; // inverse basis matrix over F_p
    void build_matrix();
};

const Embedding& get_embedding(const FieldPtr& from, const FieldPtr& to);

// Least monic irreducible polynomial of given degree over ctx, scanning in
// canonical order; used for P^1 place enumeration and tests.
Poly least_irreducible_poly(const FieldCtx& ctx, int degree);

// Enumerate monic polynomials of exact degree d in canonical order and call
// fn; stop when fn returns false.
void for_each_monic(const FieldCtx& ctx, int degree,
                    const std::function<bool(const Poly&)>& fn);

} // namespace manypoints

#endif
