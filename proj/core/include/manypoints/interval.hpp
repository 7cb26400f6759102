#ifndef MANYPOINTS_INTERVAL_HPP
#define MANYPOINTS_INTERVAL_HPP

#include <gmpxx.h>
#include <mpfr.h>
#include <optional>
#include <string>

#include "manypoints/errors.hpp"

namespace manypoints {

/*
 * Closed interval [lo, hi] with outward-rounded mpfr endpoints. All
 * transcendental comparisons in the bound calculus go through certified
 * interval comparisons; callers escalate the precision until they resolve.
 */
class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 256);
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(Interval o);
    ~Interval();

    mpfr_prec_t prec() const { return prec_; }

    static Interval exact_int(long v, mpfr_prec_t prec = 256);
    static Interval exact_mpz(const mpz_class& v, mpfr_prec_t prec = 256);
    static Interval exact_mpq(const mpq_class& v, mpfr_prec_t prec = 256);

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator/(const Interval& a, const Interval& b); // 0 not in b
    Interval neg() const;
    Interval ln() const;   // lo > 0
    Interval sqrt() const; // lo >= 0
    Interval pow_int(long e) const;

    // certified three-way comparisons; nullopt = unresolved at this precision
    std::optional<int> cmp(const mpq_class& rhs) const;
    std::optional<int> cmp(const Interval& rhs) const;

    bool contains_zero() const;
    // exact dyadic rational endpoints
    mpq_class lo_q() const;
    mpq_class hi_q() const;
    std::string lo_str(int digits = 20) const;
    std::string hi_str(int digits = 20) const;
    // decimal of the midpoint, printed round-to-nearest
    std::string mid_str(int digits = 50) const;
    double width_d() const;

private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
    friend class IntervalOps;
};

} // namespace manypoints

#endif
