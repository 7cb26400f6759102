#include "manypoints/gf.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <sstream>

namespace manypoints {

namespace {

bool is_prime(Z n) {
    if (n < 2) return false;
    for (Z d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Z mod_inverse(Z a, Z p) {
    // extended Euclid; a != 0 mod p
    Z t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        Z qq = r / nr;
        std::swap(t -= qq * nt, nt);
        std::swap(r -= qq * nr, nr);
    }
    if (r != 1) fail(Err::DivisionByZero, "inverse of noninvertible residue");
    return ((t % p) + p) % p;
}

// --- dense polynomials over F_p, used only for modulus search ---
using PP = std::vector<Z>;

void pp_trim(PP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PP pp_mulmod(const PP& a, const PP& b, const PP& mod, Z p) {
    if (a.empty() || b.empty()) return {};
    PP r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    // mod is monic
    int dm = (int)mod.size() - 1;
    for (int i = (int)r.size() - 1; i >= dm; --i) {
        Z c = r[i];
        if (c == 0) continue;
        r[i] = 0;
        for (int j = 0; j < dm; ++j)
            r[i - dm + j] = ((r[i - dm + j] - c * mod[j]) % p + p) % p;
    }
    r.resize(dm);
    pp_trim(r);
    return r;
}

PP pp_powmod_p(const PP& a, Z e, const PP& mod, Z p) {
    PP base = a, res = {1};
    while (e > 0) {
        if (e & 1) res = pp_mulmod(res, base, mod, p);
        base = pp_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return res;
}

PP pp_gcd(PP a, PP b, Z p) {
    pp_trim(a);
    pp_trim(b);
    while (!b.empty()) {
        // a mod b, b made monic on the fly
        Z lcinv = mod_inverse(b.back(), p);
        PP r = a;
        int db = (int)b.size() - 1;
        for (int i = (int)r.size() - 1; i >= db; --i) {
            Z c = r[i] % p;
            if (c == 0) continue;
            Z f = c * lcinv % p;
            for (int j = 0; j <= db; ++j)
                r[i - db + j] = ((r[i - db + j] - f * b[j]) % p + p) % p;
        }
        pp_trim(r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// x^{p^j} mod f by iterated powering
PP pp_frob_power(const PP& f, Z p, int j) {
    PP x = {0, 1};
    PP r = x;
    for (int i = 0; i < j; ++i) r = pp_powmod_p(r, p, f, p);
    return r;
}

bool pp_is_irreducible(const PP& f, Z p) {
    int k = (int)f.size() - 1;
    if (k <= 0) return false;
    if (k == 1) return true;
    // x^{p^k} == x mod f
    PP xqk = pp_frob_power(f, p, k);
    PP x = {0, 1};
    if (xqk != x) return false;
    // gcd(x^{p^{k/l}} - x, f) trivial for prime l | k
    for (int l = 2; l <= k; ++l) {
        if (k % l != 0 || !is_prime(l)) continue;
        PP xe = pp_frob_power(f, p, k / l);
        PP diff = xe;
        diff.resize(std::max<size_t>(diff.size(), 2), 0);
        diff[1] = ((diff[1] - 1) % p + p) % p;
        pp_trim(diff);
        PP g = pp_gcd(diff, f, p);
        if ((int)g.size() - 1 > 0) return false;
    }
    return true;
}

// Least monic irreducible of degree k, coefficient vectors compared
// lexicographically constant term first.
std::vector<Z> least_irreducible(Z p, int k) {
    if (k == 1) return {0, 1}; // t
    std::vector<Z> c(k, 0);    // free coefficients c[0..k-1]
    for (;;) {
        PP f(c.begin(), c.end());
        f.push_back(1);
        if (pp_is_irreducible(f, p)) return f;
        // next vector in lex order, last coordinate fastest
        int i = k - 1;
        while (i >= 0 && c[i] == p - 1) c[i--] = 0;
        if (i < 0) fail(Err::NotPrime, "no irreducible found (p not prime?)");
        ++c[i];
    }
}

struct Registry {
    std::mutex mu;
    std::map<std::pair<Z, int>, FieldPtr> fields;
};

Registry& registry() {
    static Registry r;
    return r;
}

} // namespace

struct FieldCtxFactory {
    static FieldPtr make(Z p, int k) {
        if (!is_prime(p)) fail(Err::NotPrime, "p = " + std::to_string(p));
        if (k < 1) fail(Err::UnsupportedShape, "extension degree must be >= 1");
        if (k > 60) fail(Err::BudgetExceeded, "extension degree beyond supported range");
        Z q = 1;
        for (int i = 0; i < k; ++i) {
            if (q > kFieldConstructionCap / p)
                fail(Err::BudgetExceeded, "p^k exceeds field construction cap");
            q *= p;
        }
        auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
        ctx->p = p;
        ctx->k = k;
        ctx->q = q;
        ctx->modulus = least_irreducible(p, k);
        ctx->chi_mutex_ = std::make_shared<std::mutex>();
        // trace(t^i) for i < k, via explicit Frobenius sums
        ctx->trace_powers_.assign(k, 0);
        for (int i = 0; i < k; ++i) {
            std::vector<Z> ti(k, 0), acc(k, 0), fr(k, 0);
            ti[i] = 1;
            fr = ti;
            for (int j = 0; j < k; ++j) {
                ctx->add(acc.data(), fr.data(), acc.data());
                std::vector<Z> tmp(k);
                ctx->frobenius(fr.data(), tmp.data());
                fr = tmp;
            }
            // acc lies in F_p
            for (int j = 1; j < k; ++j) assert(acc[j] == 0);
            ctx->trace_powers_[i] = acc[0];
        }
        return ctx;
    }
};

FieldPtr FieldCtx::get(Z p, int k) {
    auto& reg = registry();
    std::lock_guard<std::mutex> lk(reg.mu);
    auto key = std::make_pair(p, k);
    auto it = reg.fields.find(key);
    if (it != reg.fields.end()) return it->second;
    auto ctx = FieldCtxFactory::make(p, k);
    reg.fields.emplace(key, ctx);
    return ctx;
}

FieldCtx::~FieldCtx() = default;

void FieldCtx::add(const Z* a, const Z* b, Z* out) const {
    for (int i = 0; i < k; ++i) out[i] = (a[i] + b[i]) % p;
}

void FieldCtx::sub(const Z* a, const Z* b, Z* out) const {
    for (int i = 0; i < k; ++i) out[i] = ((a[i] - b[i]) % p + p) % p;
}

void FieldCtx::neg(const Z* a, Z* out) const {
    for (int i = 0; i < k; ++i) out[i] = (p - a[i]) % p;
}

void FieldCtx::mul(const Z* a, const Z* b, Z* out) const {
    if (k == 1) {
        out[0] = a[0] * b[0] % p;
        return;
    }
    Z prod[2 * 64];
    std::fill(prod, prod + 2 * k, 0);
    for (int i = 0; i < k; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < k; ++j)
            prod[i + j] += a[i] * b[j] % p;
    }
    for (int i = 0; i < 2 * k; ++i) prod[i] %= p;
    for (int i = 2 * k - 2; i >= k; --i) {
        Z c = prod[i] % p;
        if (c == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < k; ++j)
            prod[i - k + j] = ((prod[i - k + j] - c * modulus[j]) % p + p) % p;
    }
    for (int i = 0; i < k; ++i) out[i] = (prod[i] % p + p) % p;
}

bool FieldCtx::is_zero(const Z* a) const {
    for (int i = 0; i < k; ++i)
        if (a[i] != 0) return false;
    return true;
}

void FieldCtx::inv(const Z* a, Z* out) const {
    if (is_zero(a)) fail(Err::DivisionByZero, "inverse of zero");
    if (k == 1) {
        out[0] = mod_inverse(a[0], p);
        return;
    }
    // extended Euclid in F_p[t]: r0 = modulus, r1 = a
    PP r0(modulus.begin(), modulus.end()), r1(a, a + k);
    pp_trim(r1);
    PP s0 = {}, s1 = {1};
    while ((int)r1.size() - 1 > 0) {
        // divide r0 by r1
        Z lcinv = mod_inverse(r1.back(), p);
        PP quo(r0.size() > r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
        PP rem = r0;
        int d1 = (int)r1.size() - 1;
        for (int i = (int)rem.size() - 1; i >= d1; --i) {
            Z c = rem[i] % p;
            if (c == 0) continue;
            Z f = c * lcinv % p;
            quo[i - d1] = f;
            for (int j = 0; j <= d1; ++j)
                rem[i - d1 + j] = ((rem[i - d1 + j] - f * r1[j]) % p + p) % p;
        }
        pp_trim(rem);
        // s = s0 - quo*s1
        PP qs(quo.size() + s1.size(), 0);
        for (size_t i = 0; i < quo.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j)
                qs[i + j] = (qs[i + j] + quo[i] * s1[j]) % p;
        PP s(std::max(s0.size(), qs.size()), 0);
        for (size_t i = 0; i < s.size(); ++i) {
            Z v = (i < s0.size() ? s0[i] : 0) - (i < qs.size() ? qs[i] : 0);
            s[i] = ((v % p) + p) % p;
        }
        pp_trim(s);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    // r1 is a nonzero constant; inverse = s1 / r1
    Z c = mod_inverse(r1.empty() ? 0 : r1[0], p);
    std::fill(out, out + k, 0);
    for (size_t i = 0; i < s1.size(); ++i) out[i] = s1[i] * c % p;
}

void FieldCtx::pow(const Z* a, Z e, Z* out) const {
    std::vector<Z> base(a, a + k), res(k, 0);
    res[0] = 1 % p;
    while (e > 0) {
        if (e & 1) {
            std::vector<Z> t(k);
            mul(res.data(), base.data(), t.data());
            res = t;
        }
        std::vector<Z> t(k);
        mul(base.data(), base.data(), t.data());
        base = t;
        e >>= 1;
    }
    std::copy(res.begin(), res.end(), out);
}

void FieldCtx::frobenius(const Z* a, Z* out) const {
    pow(a, p, out);
}

Z FieldCtx::index_of(const Z* a) const {
    Z idx = 0;
    for (int i = k - 1; i >= 0; --i) idx = idx * p + a[i];
    return idx;
}

void FieldCtx::from_index(Z idx, Z* out) const {
    for (int i = 0; i < k; ++i) {
        out[i] = idx % p;
        idx /= p;
    }
}

Z FieldCtx::trace_absolute(const Z* a) const {
    Z t = 0;
    for (int i = 0; i < k; ++i) t = (t + a[i] * trace_powers_[i]) % p;
    return t;
}

int FieldCtx::chi(const Z* a) const {
    if (is_zero(a)) return 0;
    if (p == 2) return 1;
    if (q <= 4'000'000) {
        auto* mu = static_cast<std::mutex*>(chi_mutex_.get());
        {
            std::lock_guard<std::mutex> lk(*mu);
            if (chi_table_.empty()) {
                chi_table_.assign(q, -1);
                chi_table_[0] = 0;
                std::vector<Z> x(k, 0), sq(k);
                for (Z i = 1; i < q; ++i) {
                    from_index(i, x.data());
                    mul(x.data(), x.data(), sq.data());
                    chi_table_[index_of(sq.data())] = 1;
                }
            }
        }
        return chi_table_[index_of(a)];
    }
    std::vector<Z> r(k);
    pow(a, (q - 1) / 2, r.data());
    // r is 1 or -1
    bool one = (r[0] == 1);
    for (int i = 1; i < k; ++i) one = one && (r[i] == 0);
    return one ? 1 : -1;
}

// ---------- FieldElem ----------

FieldElem::FieldElem(const FieldCtx& ctx, std::vector<Z> coeffs)
    : ctx_(&ctx), c_(std::move(coeffs)) {
    if ((int)c_.size() != ctx.k)
        fail(Err::ParseError, "coefficient vector has wrong length");
    for (auto& v : c_) v = ((v % ctx.p) + ctx.p) % ctx.p;
}

FieldElem FieldElem::zero(const FieldCtx& ctx) {
    return FieldElem(ctx, std::vector<Z>(ctx.k, 0));
}

FieldElem FieldElem::one(const FieldCtx& ctx) {
    std::vector<Z> c(ctx.k, 0);
    c[0] = 1 % ctx.p;
    return FieldElem(ctx, std::move(c));
}

FieldElem FieldElem::from_int(const FieldCtx& ctx, Z n) {
    std::vector<Z> c(ctx.k, 0);
    c[0] = ((n % ctx.p) + ctx.p) % ctx.p;
    return FieldElem(ctx, std::move(c));
}

FieldElem FieldElem::from_index(const FieldCtx& ctx, Z idx) {
    std::vector<Z> c(ctx.k);
    ctx.from_index(idx, c.data());
    return FieldElem(ctx, std::move(c));
}

FieldElem FieldElem::generator(const FieldCtx& ctx) {
    std::vector<Z> c(ctx.k, 0);
    if (ctx.k == 1)
        c[0] = 0; // t == 0 in the prime field (modulus is t)
    else
        c[1] = 1;
    return FieldElem(ctx, std::move(c));
}

bool FieldElem::is_one() const {
    if (c_[0] != 1 % ctx_->p) return false;
    for (int i = 1; i < ctx_->k; ++i)
        if (c_[i] != 0) return false;
    return true;
}

void FieldElem::check_same(const FieldElem& o) const {
    if (ctx_ != o.ctx_)
        fail(Err::CtxMismatch, "operands from different fields");
}

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    a.check_same(b);
    FieldElem r = a;
    a.ctx_->add(a.c_.data(), b.c_.data(), r.c_.data());
    return r;
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    a.check_same(b);
    FieldElem r = a;
    a.ctx_->sub(a.c_.data(), b.c_.data(), r.c_.data());
    return r;
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    a.check_same(b);
    FieldElem r = a;
    a.ctx_->mul(a.c_.data(), b.c_.data(), r.c_.data());
    return r;
}

FieldElem operator-(const FieldElem& a) {
    FieldElem r = a;
    a.ctx_->neg(a.c_.data(), r.c_.data());
    return r;
}

bool operator==(const FieldElem& a, const FieldElem& b) {
    return a.ctx_ == b.ctx_ && a.c_ == b.c_;
}

FieldElem FieldElem::inverse() const {
    FieldElem r = *this;
    ctx_->inv(c_.data(), r.c_.data());
    return r;
}

FieldElem FieldElem::pow(Z e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElem r = *this;
    ctx_->pow(c_.data(), e, r.c_.data());
    return r;
}

FieldElem FieldElem::frobenius() const {
    FieldElem r = *this;
    ctx_->frobenius(c_.data(), r.c_.data());
    return r;
}

bool FieldElem::is_square() const {
    return ctx_->chi(c_.data()) >= 0;
}

std::pair<bool, FieldElem> FieldElem::sqrt() const {
    const FieldCtx& F = *ctx_;
    if (is_zero()) return {true, *this};
    if (F.p == 2) {
        // squaring is bijective: sqrt(x) = x^(q/2)
        return {true, pow(F.q / 2)};
    }
    if (F.chi(c_.data()) < 0) return {false, FieldElem::zero(F)};
    // Tonelli-Shanks with the canonical least non-residue
    Z m = F.q - 1;
    int s = 0;
    while (m % 2 == 0) {
        m /= 2;
        ++s;
    }
    FieldElem z = least_nonsquare(F);
    FieldElem cc = z.pow(m);
    FieldElem x = pow((m + 1) / 2);
    FieldElem t = pow(m);
    int mm = s;
    while (!t.is_one()) {
        FieldElem tt = t;
        int i = 0;
        while (!tt.is_one()) {
            tt = tt * tt;
            ++i;
        }
        FieldElem b = cc;
        for (int j = 0; j < mm - i - 1; ++j) b = b * b;
        x = x * b;
        cc = b * b;
        t = t * cc;
        mm = i;
    }
    FieldElem nx = -x;
    FieldElem root = (x.index() <= nx.index()) ? x : nx;
    return {true, root};
}

std::string FieldElem::render() const {
    std::ostringstream os;
    os << ctx_->p << "^" << ctx_->k << ":[";
    for (int i = 0; i < ctx_->k; ++i) {
        if (i) os << ",";
        os << c_[i];
    }
    os << "]";
    return os.str();
}

FieldElem FieldElem::parse(const std::string& s) {
    Z p = 0;
    int k = 0;
    size_t caret = s.find('^'), colon = s.find(':');
    if (caret == std::string::npos || colon == std::string::npos || colon < caret)
        fail(Err::ParseError, "element must look like p^k:[c0,...]: " + s);
    try {
        p = std::stoll(s.substr(0, caret));
        k = std::stoi(s.substr(caret + 1, colon - caret - 1));
    } catch (const std::exception&) {
        fail(Err::ParseError, "bad p^k prefix in " + s);
    }
    size_t lb = s.find('[', colon), rb = s.rfind(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb)
        fail(Err::ParseError, "missing coefficient list in " + s);
    std::vector<Z> c;
    std::string body = s.substr(lb + 1, rb - lb - 1);
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        try {
            c.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            fail(Err::ParseError, "bad coefficient '" + tok + "'");
        }
    }
    auto ctx = FieldCtx::get(p, k);
    if ((int)c.size() != k)
        fail(Err::ParseError, "expected " + std::to_string(k) + " coefficients");
    return FieldElem(*ctx, std::move(c));
}

FieldElem least_nonsquare(const FieldCtx& ctx) {
    if (ctx.p == 2)
        fail(Err::UnsupportedShape, "no non-square in characteristic 2");
    std::vector<Z> x(ctx.k);
    for (Z i = 1; i < ctx.q; ++i) {
        ctx.from_index(i, x.data());
        if (ctx.chi(x.data()) < 0) return FieldElem(ctx, x);
    }
    fail(Err::UnsupportedShape, "field has no non-square");
}

FieldElem least_nonzero_trace(const FieldCtx& ctx) {
    std::vector<Z> x(ctx.k);
    for (Z i = 1; i < ctx.q; ++i) {
        ctx.from_index(i, x.data());
        if (ctx.trace_absolute(x.data()) != 0) return FieldElem(ctx, x);
    }
    fail(Err::UnsupportedShape, "field has no element of nonzero trace");
}

} // namespace manypoints
