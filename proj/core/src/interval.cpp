#include "manypoints/interval.hpp"

#include <algorithm>

namespace manypoints {

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec);
    mpfr_init2(hi_, prec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(Interval o) {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Interval Interval::exact_int(long v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo_, v, MPFR_RNDD);
    mpfr_set_si(r.hi_, v, MPFR_RNDU);
    return r;
}

Interval Interval::exact_mpz(const mpz_class& v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_z(r.lo_, v.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, v.get_mpz_t(), MPFR_RNDU);
    return r;
}

Interval Interval::exact_mpq(const mpq_class& v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    // lo = min of the four products rounded down
    bool first = true;
    const mpfr_t* as[2] = {&a.lo_, &a.hi_};
    const mpfr_t* bs[2] = {&b.lo_, &b.hi_};
    for (auto pa : as)
        for (auto pb : bs) {
            mpfr_mul(t, *pa, *pb, MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            first = false;
        }
    first = true;
    for (auto pa : as)
        for (auto pb : bs) {
            mpfr_mul(t, *pa, *pb, MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) fail(Err::DivisionByZero, "interval division by zero");
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_t t;
    mpfr_init2(t, r.prec_);
    bool first = true;
    const mpfr_t* as[2] = {&a.lo_, &a.hi_};
    const mpfr_t* bs[2] = {&b.lo_, &b.hi_};
    for (auto pa : as)
        for (auto pb : bs) {
            mpfr_div(t, *pa, *pb, MPFR_RNDD);
            if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
            first = false;
        }
    first = true;
    for (auto pa : as)
        for (auto pb : bs) {
            mpfr_div(t, *pa, *pb, MPFR_RNDU);
            if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return r;
}

Interval Interval::neg() const {
    Interval r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval Interval::ln() const {
    if (mpfr_sgn(lo_) <= 0) fail(Err::DivisionByZero, "log of a non-positive interval");
    Interval r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::sqrt() const {
    if (mpfr_sgn(lo_) < 0) fail(Err::DivisionByZero, "sqrt of a negative interval");
    Interval r(prec_);
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::pow_int(long e) const {
    Interval r = Interval::exact_int(1, prec_);
    Interval base = *this;
    bool invert = e < 0;
    unsigned long n = invert ? -e : e;
    while (n > 0) {
        if (n & 1) r = r * base;
        base = base * base;
        n >>= 1;
    }
    if (invert) r = Interval::exact_int(1, prec_) / r;
    return r;
}

std::optional<int> Interval::cmp(const mpq_class& rhs) const {
    if (mpfr_cmp_q(lo_, rhs.get_mpq_t()) > 0) return 1;
    if (mpfr_cmp_q(hi_, rhs.get_mpq_t()) < 0) return -1;
    if (mpfr_cmp_q(lo_, rhs.get_mpq_t()) == 0 && mpfr_cmp_q(hi_, rhs.get_mpq_t()) == 0)
        return 0; // exactly representable and equal
    return std::nullopt;
}

std::optional<int> Interval::cmp(const Interval& rhs) const {
    if (mpfr_cmp(lo_, rhs.hi_) > 0) return 1;
    if (mpfr_cmp(hi_, rhs.lo_) < 0) return -1;
    return std::nullopt;
}

bool Interval::contains_zero() const {
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

namespace {
mpq_class mpfr_to_mpq(const mpfr_t v) {
    if (mpfr_zero_p(v)) return mpq_class(0);
    mpz_class mant;
    mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v);
    mpq_class r(mant);
    if (e >= 0) {
        mpz_class two;
        mpz_ui_pow_ui(two.get_mpz_t(), 2, (unsigned long)e);
        r *= mpq_class(two);
    } else {
        mpz_class two;
        mpz_ui_pow_ui(two.get_mpz_t(), 2, (unsigned long)(-e));
        r /= mpq_class(two);
    }
    r.canonicalize();
    return r;
}
} // namespace

mpq_class Interval::lo_q() const { return mpfr_to_mpq(lo_); }
mpq_class Interval::hi_q() const { return mpfr_to_mpq(hi_); }

namespace {
std::string fmt(const mpfr_t v, int digits, mpfr_rnd_t rnd) {
    char buf[256];
    std::string f = "%." + std::to_string(digits) + "R*g";
    mpfr_snprintf(buf, sizeof buf, f.c_str(), rnd, v);
    return buf;
}
} // namespace

std::string Interval::lo_str(int digits) const { return fmt(lo_, digits, MPFR_RNDD); }
std::string Interval::hi_str(int digits) const { return fmt(hi_, digits, MPFR_RNDU); }

std::string Interval::mid_str(int digits) const {
    mpfr_t mid;
    mpfr_init2(mid, prec_);
    mpfr_add(mid, lo_, hi_, MPFR_RNDN);
    mpfr_div_ui(mid, mid, 2, MPFR_RNDN);
    std::string s = fmt(mid, digits, MPFR_RNDN);
    mpfr_clear(mid);
    return s;
}

double Interval::width_d() const {
    mpfr_t w;
    mpfr_init2(w, 64);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

} // namespace manypoints
