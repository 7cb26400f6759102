#include "manypoints/jacobian.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <map>
#include <set>
#include <sstream>

namespace manypoints {

namespace {

std::vector<std::pair<Z, int>> factorize(Z n) {
    std::vector<std::pair<Z, int>> f;
    for (Z p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.emplace_back(p, e);
        }
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

} // namespace

Jacobian::Jacobian(const CurveModel& C, Z budget) : C_(&C), budget_(budget) {}

MumfordDivisor Jacobian::identity() const {
    return {Poly::one(*C_->field), Poly::zero(*C_->field)};
}

bool Jacobian::is_valid(const MumfordDivisor& a) const {
    if (a.u.is_zero() || !a.u.is_monic()) return false;
    if (a.u.degree() > C_->genus) return false;
    if (!a.v.is_zero() && a.v.degree() >= a.u.degree()) return false;
    Poly t = a.v * a.v + C_->h * a.v - C_->f;
    return a.u.divides(t);
}

MumfordDivisor Jacobian::reduce(Poly u, Poly v) const {
    const Poly& f = C_->f;
    const Poly& h = C_->h;
    u = u.make_monic();
    v = v.mod(u);
    while (u.degree() > C_->genus) {
        Poly num = f - v * h - v * v;
        auto [q, r] = Poly::divmod(num, u);
        if (!r.is_zero()) fail(Err::NonIntegerResult, "non-exact Cantor reduction");
        Poly u2 = q.make_monic();
        Poly v2 = (-h - v).mod(u2);
        u = std::move(u2);
        v = std::move(v2);
    }
    return {u, v.mod(u)};
}

MumfordDivisor Jacobian::add(const MumfordDivisor& a, const MumfordDivisor& b) const {
    const Poly& f = C_->f;
    const Poly& h = C_->h;
    Poly d0, e1, e2;
    Poly::xgcd(a.u, b.u, d0, e1, e2);
    Poly d, c1, c2;
    Poly::xgcd(d0, a.v + b.v + h, d, c1, c2);
    Poly s1 = c1 * e1, s2 = c1 * e2, s3 = c2;
    auto [uq, ur] = Poly::divmod(a.u * b.u, d * d);
    if (!ur.is_zero()) fail(Err::NonIntegerResult, "non-exact Cantor composition (u)");
    Poly vnum = s1 * a.u * b.v + s2 * b.u * a.v + s3 * (a.v * b.v + f);
    auto [vq, vr] = Poly::divmod(vnum, d);
    if (!vr.is_zero()) fail(Err::NonIntegerResult, "non-exact Cantor composition (v)");
    return reduce(uq, vq.mod(uq));
}

MumfordDivisor Jacobian::neg(const MumfordDivisor& a) const {
    return {a.u, (-a.v - C_->h).mod(a.u)};
}

MumfordDivisor Jacobian::scalar_mul(const MumfordDivisor& a, Z n) const {
    if (n < 0) return scalar_mul(neg(a), -n);
    MumfordDivisor r = identity(), base = a;
    while (n > 0) {
        if (n & 1) r = add(r, base);
        base = add(base, base);
        n >>= 1;
    }
    return r;
}

Z Jacobian::element_key(const MumfordDivisor& a) const {
    const FieldCtx& F = *C_->field;
    int g = C_->genus;
    Z key = 0;
    for (int i = g; i >= 0; --i) key = key * F.q + a.u.coeff(i).index();
    for (int i = g - 1; i >= 0; --i) key = key * F.q + a.v.coeff(i).index();
    return key;
}

void Jacobian::ensure_elements() const {
    if (!elements_.empty()) return;
    const FieldCtx& F = *C_->field;
    int g = C_->genus;
    Z scan = 0, pw = 1;
    for (int d = 0; d <= g; ++d) {
        scan += pw * pw;
        pw *= F.q;
        if (scan > 200 * budget_) fail(Err::BudgetExceeded, "Jacobian (u,v) scan too large");
    }
    std::vector<MumfordDivisor> found;
    for (int du = 0; du <= g; ++du) {
        for_each_monic(F, du, [&](const Poly& u) {
            Z vcount = 1;
            for (int i = 0; i < du; ++i) vcount *= F.q;
            for (Z vi = 0; vi < vcount; ++vi) {
                std::vector<FieldElem> vc;
                Z r = vi;
                for (int i = 0; i < du; ++i) {
                    vc.push_back(FieldElem::from_index(F, r % F.q));
                    r /= F.q;
                }
                MumfordDivisor D{u, Poly(F, std::move(vc))};
                if (is_valid(D)) found.push_back(std::move(D));
            }
            return true;
        });
    }
    std::sort(found.begin(), found.end(),
              [&](const MumfordDivisor& A, const MumfordDivisor& B) {
                  return element_key(A) < element_key(B);
              });
    if ((Z)found.size() > budget_)
        fail(Err::BudgetExceeded, "Jacobian order exceeds budget");
    mpz_class expect = l_polynomial(*C_).at_one();
    if (expect != to_mpz((Z)found.size()))
        fail(Err::CountMismatch, "enumerated " + std::to_string(found.size()) +
                                     " reduced divisors but L(1) = " + expect.get_str());
    elements_ = std::move(found);
    for (size_t i = 0; i < elements_.size(); ++i)
        index_of_key_[element_key(elements_[i])] = i;
}

const std::vector<MumfordDivisor>& Jacobian::elements() const {
    ensure_elements();
    return elements_;
}

Z Jacobian::order() const {
    ensure_elements();
    return (Z)elements_.size();
}

Z Jacobian::order_of(const MumfordDivisor& a) const {
    Z N = order();
    Z ord = N;
    auto is_id = [](const MumfordDivisor& d) { return d.u.is_one() && d.v.is_zero(); };
    for (auto& [p, e] : factorize(N)) {
        (void)e;
        while (ord % p == 0 && is_id(scalar_mul(a, ord / p))) ord /= p;
    }
    return ord;
}

namespace {

/*
 * Basis of an explicitly listed abelian p-group. Arithmetic is provided
 * through `nadd` (addition followed by any normalization, so the same
 * routine serves quotient groups), `key` (injective on the group) and
 * `id`. Returns basis elements in non-increasing order of order; the
 * classical maximal-element/quotient-lifting induction.
 */
struct PGroupOps {
    std::function<MumfordDivisor(const MumfordDivisor&, const MumfordDivisor&)> nadd;
    std::function<Z(const MumfordDivisor&)> key;
    MumfordDivisor id;
    Z p;

    MumfordDivisor times_p(MumfordDivisor a) const {
        MumfordDivisor s = a;
        for (Z i = 1; i < p; ++i) s = nadd(s, a);
        return s;
    }
    MumfordDivisor nscalar(MumfordDivisor a, Z n) const {
        MumfordDivisor r = id, base = a;
        while (n > 0) {
            if (n & 1) r = nadd(r, base);
            base = nadd(base, base);
            n >>= 1;
        }
        return r;
    }
    Z norder(MumfordDivisor a) const {
        Z o = 1;
        while (key(a) != key(id)) {
            a = times_p(a);
            o *= p;
        }
        return o;
    }
};

std::vector<MumfordDivisor> pgroup_basis(const PGroupOps& ops,
                                         std::vector<MumfordDivisor> G) {
    if (G.size() <= 1) return {};
    std::sort(G.begin(), G.end(), [&](const MumfordDivisor& A, const MumfordDivisor& B) {
        return ops.key(A) < ops.key(B);
    });
    Z best = 0;
    MumfordDivisor x = ops.id;
    for (auto& g : G) {
        Z o = ops.norder(g);
        if (o > best) {
            best = o;
            x = g;
        }
    }
    // H = <x>
    std::map<Z, MumfordDivisor> H;
    MumfordDivisor t = ops.id;
    for (Z i = 0; i < best; ++i) {
        H[ops.key(t)] = t;
        t = ops.nadd(t, x);
    }
    if (H.size() == G.size()) return {x};
    // least-key coset representatives of G / H
    auto rep = std::make_shared<std::map<Z, MumfordDivisor>>();
    std::vector<MumfordDivisor> Q;
    for (auto& g : G) {
        if (rep->count(ops.key(g))) continue;
        std::vector<MumfordDivisor> coset;
        MumfordDivisor bestrep = g;
        for (auto& [hk, h] : H) {
            (void)hk;
            MumfordDivisor e = ops.nadd(g, h);
            coset.push_back(e);
            if (ops.key(e) < ops.key(bestrep)) bestrep = e;
        }
        for (auto& e : coset) (*rep)[ops.key(e)] = bestrep;
        Q.push_back(bestrep);
    }
    PGroupOps qops = ops;
    qops.nadd = [ops, rep](const MumfordDivisor& a, const MumfordDivisor& b) {
        return rep->at(ops.key(ops.nadd(a, b)));
    };
    qops.id = rep->at(ops.key(ops.id));
    auto qbasis = pgroup_basis(qops, Q);
    std::vector<MumfordDivisor> out = {x};
    for (auto& gq : qbasis) {
        Z m = qops.norder(gq);
        // m*gq lies in H; pick h in H with m*h = m*gq, then gq - h has
        // order m and still lifts gq (possible because x has maximal order)
        MumfordDivisor target = ops.nscalar(gq, m);
        const MumfordDivisor* found = nullptr;
        for (auto& [hk, h] : H) {
            (void)hk;
            if (ops.key(ops.nscalar(h, m)) == ops.key(target)) {
                found = &h;
                break;
            }
        }
        if (!found) fail(Err::CountMismatch, "p-group basis lifting failed");
        // gq - h: negation inside the normalized group is (p^a - 1) * h
        Z ho = ops.norder(*found);
        MumfordDivisor minus_h = ops.nscalar(*found, ho - 1);
        out.push_back(ops.nadd(gq, minus_h));
    }
    std::sort(out.begin(), out.end(), [&](const MumfordDivisor& A, const MumfordDivisor& B) {
        return ops.norder(A) > ops.norder(B);
    });
    return out;
}

} // namespace

const GroupStructure& Jacobian::structure() const {
    if (structure_) return *structure_;
    ensure_elements();
    Z N = order();
    GroupStructure S;
    S.order = to_mpz(N);
    if (N > 1) {
        // invariant factors from order statistics: for each prime p | N,
        // c_j = #{x in J : p^j x = 0}; the increments log_p(c_j / c_{j-1})
        // form the conjugate of the exponent partition of the p-Sylow part
        std::vector<Z> orders(elements_.size());
        for (size_t i = 0; i < elements_.size(); ++i) orders[i] = order_of(elements_[i]);
        std::map<Z, std::vector<int>> partitions;
        for (auto& [p, emax] : factorize(N)) {
            std::vector<Z> c(emax + 1, 0);
            for (Z o : orders) {
                int j = 0;
                while (o % p == 0) {
                    o /= p;
                    ++j;
                }
                // the element is killed by p^jj (times the prime-to-p part)
                // exactly when jj >= j; count p-parts only
                for (int jj = j; jj <= emax; ++jj) c[jj] += 1;
            }
            // c[jj] currently counts all x whose p-part of order divides
            // p^jj; those are (N / p^emax) * (Sylow count), so normalize
            Z cof = N;
            while (cof % p == 0) cof /= p;
            std::vector<int> conj;
            Z prev = c[0] / cof;
            for (int j = 1; j <= emax; ++j) {
                Z cj = c[j] / cof;
                Z ratio = cj / prev;
                int lambda = 0;
                while (ratio > 1) {
                    ratio /= p;
                    ++lambda;
                }
                conj.push_back(lambda);
                prev = cj;
            }
            std::vector<int> expo; // partition, non-increasing
            for (int rank = 1; rank <= (conj.empty() ? 0 : conj[0]); ++rank) {
                int e = 0;
                for (int j = 0; j < (int)conj.size(); ++j)
                    if (conj[j] >= rank) e = j + 1;
                expo.push_back(e);
            }
            partitions[p] = expo;
        }
        size_t s = 0;
        for (auto& [p, expo] : partitions) s = std::max(s, expo.size());
        std::vector<Z> factors_desc(s, 1);
        for (auto& [p, expo] : partitions)
            for (size_t i = 0; i < expo.size(); ++i) {
                Z pp = 1;
                for (int j = 0; j < expo[i]; ++j) pp *= p;
                factors_desc[i] *= pp;
            }
        // generators: CRT-combine per-prime bases rank by rank
        std::vector<MumfordDivisor> gens_desc(s, identity());
        for (auto& [p, expo] : partitions) {
            if (expo.empty()) continue;
            Z cof = N;
            while (cof % p == 0) cof /= p;
            std::set<Z> seen;
            std::vector<MumfordDivisor> sylow;
            for (auto& e : elements_) {
                MumfordDivisor t = scalar_mul(e, cof);
                if (seen.insert(element_key(t)).second) sylow.push_back(t);
            }
            PGroupOps ops;
            ops.nadd = [this](const MumfordDivisor& a, const MumfordDivisor& b) {
                return add(a, b);
            };
            ops.key = [this](const MumfordDivisor& a) { return element_key(a); };
            ops.id = identity();
            ops.p = p;
            auto basis = pgroup_basis(ops, sylow);
            if (basis.size() != expo.size())
                fail(Err::CountMismatch, "Sylow basis size disagrees with order statistics");
            for (size_t i = 0; i < basis.size(); ++i)
                gens_desc[i] = add(gens_desc[i], basis[i]);
        }
        S.invariant_factors.assign(factors_desc.rbegin(), factors_desc.rend());
        S.generators.assign(gens_desc.rbegin(), gens_desc.rend());
        for (size_t i = 0; i < S.generators.size(); ++i)
            if (order_of(S.generators[i]) != S.invariant_factors[i])
                fail(Err::CountMismatch, "generator order does not match invariant factor");
    }
    structure_ = std::move(S);
    return *structure_;
}

Z Jacobian::n_rank(Z n) const {
    if (n <= 1) fail(Err::UnsupportedShape, "n-rank needs n > 1");
    const GroupStructure& S = structure();
    Z r = 0;
    for (Z d : S.invariant_factors)
        if (d % n == 0) ++r;
    return r;
}

void Jacobian::ensure_mod2() const {
    ensure_elements();
    if (!coset_label_.empty()) return;
    // 2J as a set of element indices
    std::set<size_t> twoJ;
    for (auto& e : elements_) {
        MumfordDivisor t = add(e, e);
        twoJ.insert(index_of_key_.at(element_key(t)));
    }
    coset_label_.assign(elements_.size(), -1);
    for (size_t i = 0; i < elements_.size(); ++i) {
        if (coset_label_[i] >= 0) continue;
        // coset = elements_[i] + 2J; label = least element key in it
        std::vector<size_t> members;
        Z least = -1;
        for (size_t t : twoJ) {
            MumfordDivisor e = add(elements_[i], elements_[t]);
            size_t idx = index_of_key_.at(element_key(e));
            members.push_back(idx);
            Z key = element_key(elements_[idx]);
            if (least < 0 || key < least) least = key;
        }
        for (size_t m : members) coset_label_[m] = least;
    }
}

Z Jacobian::class_mod2(const MumfordDivisor& a) const {
    if (!is_valid(a)) fail(Err::NonIntegerResult, "divisor is not reduced/valid");
    ensure_mod2();
    auto it = index_of_key_.find(element_key(a));
    if (it == index_of_key_.end())
        fail(Err::CountMismatch, "divisor not found among enumerated elements");
    return coset_label_[it->second];
}

Z Jacobian::two_torsion_count() const {
    ensure_elements();
    Z n = 0;
    for (auto& e : elements_) {
        MumfordDivisor t = add(e, e);
        if (t.u.is_one() && t.v.is_zero()) ++n;
    }
    return n;
}

Z Jacobian::mod2_index() const {
    ensure_mod2();
    std::set<Z> labels(coset_label_.begin(), coset_label_.end());
    return (Z)labels.size();
}

MumfordDivisor cantor_add(const CurveModel& C, const MumfordDivisor& a,
                          const MumfordDivisor& b) {
    return Jacobian(C).add(a, b);
}

GroupStructure group_structure(const CurveModel& C, Z budget) {
    return Jacobian(C, budget).structure();
}

Z n_rank(const CurveModel& C, Z n, Z budget) {
    return Jacobian(C, budget).n_rank(n);
}

MumfordDivisor place_to_divisor(const CurveModel& C, const Place& P) {
    if (P.at_infinity) fail(Err::NonGenericPlace, "infinite place");
    if (C.is_pline()) fail(Err::UnsupportedShape, "projective line has trivial Jacobian");
    const FieldCtx& ext = *P.ext;
    CurveOverExt E = base_change(C, P.degree);
    if ((P.y + P.y + E.h.eval(P.x)).is_zero())
        fail(Err::NonGenericPlace, "place is fixed by the hyperelliptic involution");
    // orbit; require distinct x-coordinates
    std::vector<std::pair<FieldElem, FieldElem>> orbit;
    FieldElem x = P.x, y = P.y;
    for (int i = 0; i < P.degree; ++i) {
        orbit.emplace_back(x, y);
        x = x.pow(C.q());
        y = y.pow(C.q());
    }
    if (!(x == P.x && y == P.y))
        fail(Err::NonGenericPlace, "representative orbit size differs from degree");
    std::set<Z> xs;
    for (auto& [xi, yi] : orbit) xs.insert(xi.index());
    if ((int)xs.size() != P.degree)
        fail(Err::NonGenericPlace, "orbit has repeated x-coordinates");
    // u = prod (X - x_i); v = Lagrange interpolation of y_i at x_i
    Poly u_big = Poly::one(ext), v_big = Poly::zero(ext);
    for (auto& [xi, yi] : orbit) u_big = u_big * (Poly::x(ext) - Poly::constant(xi));
    for (auto& [xi, yi] : orbit) {
        Poly term = Poly::constant(yi);
        for (auto& [xj, yj] : orbit) {
            (void)yj;
            if (xj == xi) continue;
            term = term * (Poly::x(ext) - Poly::constant(xj)) *
                   Poly::constant((xi - xj).inverse());
        }
        v_big = v_big + term;
    }
    const Embedding& e = get_embedding(C.field, P.ext);
    auto descend = [&](const Poly& big) {
        std::vector<FieldElem> c;
        for (auto& ce : big.coeffs()) c.push_back(e.down(ce));
        return Poly(*C.field, std::move(c));
    };
    Poly u = descend(u_big), v = descend(v_big);
    Poly chk = v * v + C.h * v - C.f;
    if (!u.divides(chk))
        fail(Err::NonIntegerResult, "interpolated divisor fails the Mumford relation");
    return Jacobian(C).reduce(std::move(u), std::move(v));
}

GroupStructure jacobian_structure_by_closure(const CurveModel& C) {
    Jacobian J(C, 5000);
    const FieldCtx& F = *C.field;
    int g = C.genus;
    // subgroup closure over scanned generators
    std::map<Z, MumfordDivisor> S;
    MumfordDivisor id = J.identity();
    S[J.element_key(id)] = id;
    std::vector<MumfordDivisor> gens;
    for (int du = 0; du <= g; ++du) {
        for_each_monic(F, du, [&](const Poly& u) {
            Z vcount = 1;
            for (int i = 0; i < du; ++i) vcount *= F.q;
            for (Z vi = 0; vi < vcount; ++vi) {
                std::vector<FieldElem> vc;
                Z r = vi;
                for (int i = 0; i < du; ++i) {
                    vc.push_back(FieldElem::from_index(F, r % F.q));
                    r /= F.q;
                }
                MumfordDivisor D{u, Poly(F, std::move(vc))};
                if (!J.is_valid(D)) continue;
                if (S.count(J.element_key(D))) continue;
                gens.push_back(D);
                // close: union of cosets S + m*D
                std::vector<MumfordDivisor> base;
                base.reserve(S.size());
                for (auto& [k, e] : S) base.push_back(e);
                MumfordDivisor cur = D;
                while (!S.count(J.element_key(cur))) {
                    for (auto& b : base) {
                        MumfordDivisor e = J.add(b, cur);
                        S[J.element_key(e)] = e;
                    }
                    cur = J.add(cur, D);
                }
                if ((Z)S.size() > 5000)
                    fail(Err::BudgetExceeded, "closure exceeded oracle budget");
            }
            return true;
        });
    }
    Z N = (Z)S.size();
    GroupStructure out;
    out.order = to_mpz(N);
    out.generators = gens;
    if (N == 1) return out;
    // candidate invariant-factor chains d_1 | d_2 | ... with product N,
    // fitted against the observed counts c(m) = #{x : m x = 0}
    std::vector<MumfordDivisor> elems;
    elems.reserve(N);
    for (auto& [k, e] : S) elems.push_back(e);
    // exponent = lcm of element orders, orders by doubling-free repeated add
    auto kill_count = [&](Z m) {
        Z c = 0;
        for (auto& e : elems) {
            MumfordDivisor t = J.scalar_mul(e, m);
            if (t.u.is_one() && t.v.is_zero()) ++c;
        }
        return c;
    };
    std::vector<Z> divisors;
    for (Z d = 1; d * d <= N; ++d)
        if (N % d == 0) {
            divisors.push_back(d);
            if (d != N / d) divisors.push_back(N / d);
        }
    std::sort(divisors.begin(), divisors.end());
    std::map<Z, Z> observed;
    for (Z m : divisors) observed[m] = kill_count(m);
    // enumerate chains recursively (ascending, each dividing the next)
    std::vector<Z> chain;
    std::vector<Z> bestchain;
    std::function<void(Z, Z)> rec = [&](Z remaining, Z next_min) {
        if (!bestchain.empty()) return;
        if (remaining == 1) {
            // test the chain
            for (Z m : divisors) {
                Z predicted = 1;
                for (Z d : chain) predicted *= std::gcd(d, m);
                if (predicted != observed[m]) return;
            }
            bestchain = chain;
            return;
        }
        for (Z d : divisors) {
            if (d < std::max<Z>(2, next_min)) continue;
            if (remaining % d != 0) continue;
            // all later factors must be multiples of d
            chain.push_back(d);
            bool ok = true;
            for (size_t i = 1; i < chain.size(); ++i)
                if (chain[i] % chain[i - 1] != 0) ok = false;
            if (ok) rec(remaining / d, d);
            chain.pop_back();
            if (!bestchain.empty()) return;
        }
    };
    rec(N, 2);
    if (bestchain.empty())
        fail(Err::CountMismatch, "no invariant-factor chain matches observed order counts");
    out.invariant_factors = bestchain;
    return out;
}

std::string render_divisor(const MumfordDivisor& D) {
    std::ostringstream os;
    os << "u=" << "[";
    for (int i = 0; i <= D.u.degree(); ++i) {
        if (i) os << ",";
        os << D.u.coeff(i).index();
    }
    os << "] v=[";
    for (int i = 0; i <= D.v.degree(); ++i) {
        if (i) os << ",";
        os << D.v.coeff(i).index();
    }
    os << "]";
    return os.str();
}

} // namespace manypoints
