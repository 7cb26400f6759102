#include "manypoints/poly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <tuple>

namespace manypoints {

Poly::Poly(const FieldCtx& ctx, std::vector<FieldElem> coeffs)
    : ctx_(&ctx), c_(std::move(coeffs)) {
    for (auto& e : c_)
        if (e.ctx_ptr() != ctx_) fail(Err::CtxMismatch, "polynomial coefficient from wrong field");
    trim();
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::one(const FieldCtx& ctx) {
    return Poly(ctx, {FieldElem::one(ctx)});
}

Poly Poly::x(const FieldCtx& ctx) {
    return Poly(ctx, {FieldElem::zero(ctx), FieldElem::one(ctx)});
}

Poly Poly::constant(FieldElem c) {
    const FieldCtx& ctx = c.ctx();
    return Poly(ctx, {std::move(c)});
}

Poly Poly::from_ints(const FieldCtx& ctx, const std::vector<Z>& ints) {
    std::vector<FieldElem> c;
    c.reserve(ints.size());
    for (Z v : ints) c.push_back(FieldElem::from_int(ctx, v));
    return Poly(ctx, std::move(c));
}

Poly Poly::monomial(const FieldCtx& ctx, int degree, FieldElem c) {
    std::vector<FieldElem> v(degree + 1, FieldElem::zero(ctx));
    v[degree] = std::move(c);
    return Poly(ctx, std::move(v));
}

bool Poly::is_one() const {
    return c_.size() == 1 && c_[0].is_one();
}

FieldElem Poly::coeff(int i) const {
    if (i < 0 || i >= (int)c_.size()) return FieldElem::zero(*ctx_);
    return c_[i];
}

FieldElem Poly::lc() const {
    if (c_.empty()) return FieldElem::zero(*ctx_);
    return c_.back();
}

FieldElem Poly::eval(const FieldElem& x) const {
    FieldElem r = FieldElem::zero(*ctx_);
    for (int i = (int)c_.size() - 1; i >= 0; --i) r = r * x + c_[i];
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    if (a.ctx_ != b.ctx_) fail(Err::CtxMismatch, "polynomial contexts differ");
    std::vector<FieldElem> c;
    size_t n = std::max(a.c_.size(), b.c_.size());
    c.reserve(n);
    for (size_t i = 0; i < n; ++i) c.push_back(a.coeff((int)i) + b.coeff((int)i));
    return Poly(*a.ctx_, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
    if (a.ctx_ != b.ctx_) fail(Err::CtxMismatch, "polynomial contexts differ");
    std::vector<FieldElem> c;
    size_t n = std::max(a.c_.size(), b.c_.size());
    c.reserve(n);
    for (size_t i = 0; i < n; ++i) c.push_back(a.coeff((int)i) - b.coeff((int)i));
    return Poly(*a.ctx_, std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.ctx_ != b.ctx_) fail(Err::CtxMismatch, "polynomial contexts differ");
    if (a.is_zero() || b.is_zero()) return Poly::zero(*a.ctx_);
    std::vector<FieldElem> c(a.c_.size() + b.c_.size() - 1, FieldElem::zero(*a.ctx_));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(*a.ctx_, std::move(c));
}

Poly Poly::operator*(const FieldElem& s) const {
    std::vector<FieldElem> c;
    c.reserve(c_.size());
    for (auto& e : c_) c.push_back(e * s);
    return Poly(*ctx_, std::move(c));
}

Poly Poly::operator-() const {
    std::vector<FieldElem> c;
    c.reserve(c_.size());
    for (auto& e : c_) c.push_back(-e);
    return Poly(*ctx_, std::move(c));
}

bool operator==(const Poly& a, const Poly& b) {
    return a.ctx_ == b.ctx_ && a.c_ == b.c_;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
    if (a.ctx_ != b.ctx_) fail(Err::CtxMismatch, "polynomial contexts differ");
    if (b.is_zero()) fail(Err::DivisionByZero, "polynomial division by zero");
    const FieldCtx& F = *a.ctx_;
    Poly q = Poly::zero(F), r = a;
    FieldElem lcinv = b.lc().inverse();
    int db = b.degree();
    std::vector<FieldElem> qc(std::max(0, a.degree() - db + 1), FieldElem::zero(F));
    while (r.degree() >= db) {
        FieldElem f = r.lc() * lcinv;
        int sh = r.degree() - db;
        qc[sh] = f;
        std::vector<FieldElem> rc = r.c_;
        for (int j = 0; j <= db; ++j)
            rc[sh + j] = rc[sh + j] - f * b.c_[j];
        r = Poly(F, std::move(rc));
    }
    q = Poly(F, std::move(qc));
    return {q, r};
}

bool Poly::divides(const Poly& a) const {
    if (is_zero()) return a.is_zero();
    return divmod(a, *this).second.is_zero();
}

Poly Poly::make_monic() const {
    if (is_zero() || lc().is_one()) return *this;
    return *this * lc().inverse();
}

Poly Poly::derivative() const {
    if (degree() <= 0) return Poly::zero(*ctx_);
    std::vector<FieldElem> c;
    c.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        c.push_back(c_[i] * FieldElem::from_int(*ctx_, (Z)i));
    return Poly(*ctx_, std::move(c));
}

Poly Poly::shift(int n) const {
    if (is_zero()) return *this;
    std::vector<FieldElem> c(c_.size() + n, FieldElem::zero(*ctx_));
    for (size_t i = 0; i < c_.size(); ++i) c[i + n] = c_[i];
    return Poly(*ctx_, std::move(c));
}

Poly Poly::gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.make_monic();
}

void Poly::xgcd(const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t) {
    const FieldCtx& F = a.ctx();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(F), s1 = Poly::zero(F);
    Poly t0 = Poly::zero(F), t1 = Poly::one(F);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) {
        g = r0;
        s = s0;
        t = t0;
        return;
    }
    FieldElem lcinv = r0.lc().inverse();
    g = r0 * lcinv;
    s = s0 * lcinv;
    t = t0 * lcinv;
}

Poly Poly::pow_mod(const Poly& base, unsigned __int128 e, const Poly& m) {
    Poly b = base.mod(m), r = Poly::one(base.ctx());
    while (e > 0) {
        if (e & 1) r = (r * b).mod(m);
        b = (b * b).mod(m);
        e >>= 1;
    }
    return r;
}

namespace {

bool is_small_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// product of x^{Q^j} iterates: returns x^{Q^j} mod f
Poly frob_iterate(const Poly& f, int j) {
    const FieldCtx& F = f.ctx();
    Poly h = Poly::x(F);
    for (int i = 0; i < j; ++i) h = Poly::pow_mod(h, (unsigned __int128)F.q, f);
    return h;
}

} // namespace

bool Poly::is_irreducible() const {
    int d = degree();
    if (d <= 0) return false;
    if (d == 1) return true;
    Poly f = make_monic();
    const FieldCtx& F = *ctx_;
    Poly xq = frob_iterate(f, d);
    if (!(xq - Poly::x(F)).mod(f).is_zero()) return false;
    for (int l = 2; l <= d; ++l) {
        if (d % l != 0 || !is_small_prime(l)) continue;
        Poly xe = frob_iterate(f, d / l);
        Poly g = gcd(xe - Poly::x(F), f);
        if (g.degree() > 0) return false;
    }
    return true;
}

bool Poly::is_squarefree() const {
    if (degree() <= 1) return true;
    Poly d = derivative();
    if (d.is_zero()) return false;
    return gcd(*this, d).degree() == 0;
}

namespace {

// deterministic equal-degree splitting of a monic squarefree product of
// irreducibles of degree e
void edf(const Poly& f, int e, std::vector<Poly>& out) {
    const FieldCtx& F = f.ctx();
    if (f.degree() == e) {
        out.push_back(f);
        return;
    }
    unsigned __int128 Q = (unsigned __int128)F.q;
    // sweep candidate polynomials by global index, degree < 2e
    for (Z seed = 1;; ++seed) {
        // decode seed into a polynomial of degree < 2e over F_q
        std::vector<FieldElem> cc;
        Z s = seed;
        for (int i = 0; i < 2 * e && s > 0; ++i) {
            cc.push_back(FieldElem::from_index(F, s % F.q));
            s /= F.q;
        }
        Poly w(F, std::move(cc));
        if (w.degree() < 1) continue;
        Poly g = Poly::gcd(w, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, e, out);
            edf(Poly::divmod(f, g).first, e, out);
            return;
        }
        Poly h(F);
        if (F.p == 2) {
            // trace map sum_{i<m*e} w^{2^i} mod f
            int m = F.k * e;
            Poly t = w.mod(f), acc = Poly::zero(F);
            for (int i = 0; i < m; ++i) {
                acc = (acc + t).mod(f);
                t = (t * t).mod(f);
            }
            h = acc;
        } else {
            unsigned __int128 expo = 1;
            for (int i = 0; i < e; ++i) expo *= Q;
            expo = (expo - 1) / 2;
            h = Poly::pow_mod(w, expo, f) - Poly::one(F);
        }
        g = Poly::gcd(h, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, e, out);
            edf(Poly::divmod(f, g).first, e, out);
            return;
        }
    }
}

void factor_monic(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out);

// distinct-degree then equal-degree factorization of monic squarefree f
void factor_squarefree(Poly f, int mult, std::vector<std::pair<Poly, int>>& out) {
    const FieldCtx& F = f.ctx();
    Poly h = Poly::x(F);
    int d = 0;
    while (f.degree() > 0) {
        ++d;
        if (2 * d > f.degree()) {
            out.emplace_back(f, mult);
            break;
        }
        h = Poly::pow_mod(h, (unsigned __int128)F.q, f);
        Poly g = Poly::gcd(h - Poly::x(F), f);
        if (g.degree() > 0) {
            std::vector<Poly> parts;
            edf(g, d, parts);
            for (auto& pp : parts) out.emplace_back(pp, mult);
            f = Poly::divmod(f, g).first;
            h = h.mod(f);
        }
    }
}

void factor_monic(const Poly& f, int mult, std::vector<std::pair<Poly, int>>& out) {
    const FieldCtx& F = f.ctx();
    if (f.degree() <= 0) return;
    Poly d = f.derivative();
    if (d.is_zero()) {
        // f = g(x)^p with g coefficients the p-th roots of c_{p*i}
        std::vector<FieldElem> gc;
        for (int i = 0; i * F.p <= f.degree(); ++i)
            gc.push_back(f.coeff(i * (int)F.p).pow(F.q / F.p));
        Poly g(F, std::move(gc));
        std::vector<std::pair<Poly, int>> sub;
        factor_monic(g, mult, sub);
        for (auto& [pp, m] : sub) out.emplace_back(pp, m * (int)F.p);
        return;
    }
    Poly u = Poly::gcd(f, d);
    if (u.degree() == 0) {
        factor_squarefree(f, mult, out);
        return;
    }
    factor_monic(Poly::divmod(f, u).first, mult, out);
    factor_monic(u, mult, out);
}

} // namespace

std::vector<std::pair<Poly, int>> Poly::factor() const {
    std::vector<std::pair<Poly, int>> raw;
    if (degree() >= 1) factor_monic(make_monic(), 1, raw);
    // merge duplicates, sort canonically
    std::sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
        return compare(a.first, b.first) < 0;
    });
    std::vector<std::pair<Poly, int>> out;
    for (auto& [pp, m] : raw) {
        if (!out.empty() && out.back().first == pp)
            out.back().second += m;
        else
            out.emplace_back(pp, m);
    }
    return out;
}

std::vector<FieldElem> Poly::roots() const {
    std::vector<FieldElem> rs;
    for (auto& [pp, m] : factor()) {
        if (pp.degree() == 1) rs.push_back(-pp.coeff(0));
    }
    std::sort(rs.begin(), rs.end(), [](const FieldElem& a, const FieldElem& b) {
        return a.index() < b.index();
    });
    return rs;
}

int Poly::compare(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (size_t i = 0; i < a.c_.size(); ++i) {
        Z ia = a.c_[i].index(), ib = b.c_[i].index();
        if (ia != ib) return ia < ib ? -1 : 1;
    }
    return 0;
}

std::vector<Z> Poly::index_vector() const {
    std::vector<Z> v;
    v.reserve(c_.size());
    for (auto& e : c_) v.push_back(e.index());
    return v;
}

// ---------- embeddings ----------

namespace {

// Gauss-Jordan inverse of an n x n matrix over F_p; columns given as vectors
std::vector<std::vector<Z>> invert_fp(std::vector<std::vector<Z>> m, Z p, int n) {
    std::vector<std::vector<Z>> inv(n, std::vector<Z>(n, 0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    auto modinv = [p](Z a) {
        Z t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
        while (nr != 0) {
            Z qq = r / nr;
            std::swap(t -= qq * nt, nt);
            std::swap(r -= qq * nr, nr);
        }
        return ((t % p) + p) % p;
    };
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] % p != 0) {
                piv = r;
                break;
            }
        if (piv < 0) fail(Err::CtxMismatch, "embedding basis is singular");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Z f = modinv(m[col][col]);
        for (int j = 0; j < n; ++j) {
            m[col][j] = m[col][j] * f % p;
            inv[col][j] = inv[col][j] * f % p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            Z c = ((m[r][col] % p) + p) % p;
            if (c == 0) continue;
            for (int j = 0; j < n; ++j) {
                m[r][j] = ((m[r][j] - c * m[col][j]) % p + p) % p;
                inv[r][j] = ((inv[r][j] - c * inv[col][j]) % p + p) % p;
            }
        }
    }
    return inv;
}

} // namespace

void Embedding::build_matrix() {
    int K = to->k, k = from->k, d = K / k;
    Z p = to->p;
    // column j*k + i = coefficient vector of gen_image^i * T^j
    std::vector<std::vector<Z>> cols(K, std::vector<Z>(K, 0));
    FieldElem T = FieldElem::generator(*to);
    FieldElem gi = FieldElem::one(*to);
    std::vector<FieldElem> gpow;
    for (int i = 0; i < k; ++i) {
        gpow.push_back(gi);
        gi = gi * gen_image;
    }
    FieldElem Tj = FieldElem::one(*to);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < k; ++i) {
            FieldElem v = gpow[i] * Tj;
            for (int r = 0; r < K; ++r) cols[r][j * k + i] = v.coeffs()[r];
        }
        Tj = Tj * T;
    }
    solve_matrix_ = invert_fp(std::move(cols), p, K);
}

FieldElem Embedding::map(const FieldElem& x) const {
    if (from == to) return x;
    FieldElem r = FieldElem::zero(*to);
    for (int i = from->k - 1; i >= 0; --i)
        r = r * gen_image + FieldElem::from_int(*to, x.coeffs()[i]);
    return r;
}

Poly Embedding::map_poly(const Poly& f) const {
    std::vector<FieldElem> c;
    c.reserve(f.coeffs().size());
    for (auto& e : f.coeffs()) c.push_back(map(e));
    return Poly(*to, std::move(c));
}

std::vector<FieldElem> Embedding::coords(const FieldElem& big) const {
    int K = to->k, k = from->k, d = K / k;
    Z p = to->p;
    std::vector<Z> sol(K, 0);
    for (int r = 0; r < K; ++r) {
        Z acc = 0;
        for (int j = 0; j < K; ++j)
            acc = (acc + solve_matrix_[r][j] * big.coeffs()[j]) % p;
        sol[r] = acc;
    }
    std::vector<FieldElem> out;
    out.reserve(d);
    for (int j = 0; j < d; ++j) {
        std::vector<Z> cc(sol.begin() + j * k, sol.begin() + (j + 1) * k);
        out.push_back(FieldElem(*from, std::move(cc)));
    }
    return out;
}

FieldElem Embedding::down(const FieldElem& big) const {
    if (from == to) return big;
    auto cs = coords(big);
    for (size_t j = 1; j < cs.size(); ++j)
        if (!cs[j].is_zero())
            fail(Err::CtxMismatch, "element does not lie in the embedded subfield");
    return cs[0];
}

const Embedding& get_embedding(const FieldPtr& from, const FieldPtr& to) {
    static std::mutex mu;
    static std::map<std::tuple<Z, int, int>, std::unique_ptr<Embedding>> cache;
    if (from->p != to->p || to->k % from->k != 0)
        fail(Err::CtxMismatch, "no embedding between these fields");
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_tuple(from->p, from->k, to->k);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    auto emb = std::unique_ptr<Embedding>(new Embedding());
    emb->from = from;
    emb->to = to;
    if (from->k == to->k) {
        emb->gen_image = FieldElem::generator(*to);
    } else {
        Poly m = Poly::from_ints(*to, from->modulus);
        auto rs = m.roots();
        if (rs.empty()) fail(Err::CtxMismatch, "modulus has no root in extension");
        emb->gen_image = rs.front();
    }
    emb->build_matrix();
    auto& ref = *emb;
    cache.emplace(key, std::move(emb));
    return ref;
}

Poly least_irreducible_poly(const FieldCtx& ctx, int degree) {
    Poly found = Poly::zero(ctx);
    for_each_monic(ctx, degree, [&](const Poly& f) {
        if (f.is_irreducible()) {
            found = f;
            return false;
        }
        return true;
    });
    if (found.is_zero()) fail(Err::NoSuchPlace, "no irreducible of requested degree");
    return found;
}

void for_each_monic(const FieldCtx& ctx, int degree,
                    const std::function<bool(const Poly&)>& fn) {
    if (degree < 0) return;
    std::vector<Z> idx(degree, 0);
    for (;;) {
        std::vector<FieldElem> c;
        c.reserve(degree + 1);
        for (int i = 0; i < degree; ++i) c.push_back(FieldElem::from_index(ctx, idx[i]));
        c.push_back(FieldElem::one(ctx));
        if (!fn(Poly(ctx, std::move(c)))) return;
        int i = degree - 1;
        while (i >= 0 && idx[i] == ctx.q - 1) idx[i--] = 0;
        if (i < 0) return;
        ++idx[i];
    }
}

} // namespace manypoints
