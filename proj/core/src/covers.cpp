#include "manypoints/covers.hpp"

#include <json.hpp>
#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

#include "manypoints/io.hpp"

namespace manypoints {

std::string CoverSpec::kind() const {
    if (kummer_r > 1 && as_pe > 1) return "composite";
    if (as_pe > 1) return "artin_schreier";
    return "kummer";
}

namespace {

Z gcd_pos(Z a, Z b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// p^e-th root in a field of characteristic p (Frobenius is bijective)
FieldElem pe_root(const FieldElem& x, Z pe) {
    const FieldCtx& F = x.ctx();
    FieldElem r = x;
    Z m = pe;
    while (m > 1) {
        r = r.pow(F.q / F.p); // p-th root
        m /= F.p;
    }
    return r;
}

// local Artin-Schreier reduction of a Laurent series: repeatedly remove
// pole terms of order divisible by p^e. Returns the reduced pole order
// (0 if the function becomes regular, with its value at the point).
struct ASLocal {
    int reduced_order = 0;
    FieldElem value;
};

ASLocal as_reduce_series(Series s, Z pe, Z p) {
    const FieldCtx& F = *s.ctx;
    for (;;) {
        auto v = s.valuation();
        if (!v || *v >= 0) {
            ASLocal r;
            r.reduced_order = 0;
            r.value = v ? s.at_exp(0) : FieldElem::zero(F);
            if (!v) r.value = FieldElem::zero(F);
            else r.value = s.at_exp(0);
            return r;
        }
        int j = -*v;
        if (j % pe != 0) {
            if (j % p == 0)
                fail(Err::UnsupportedShape,
                     "wild pole order divisible by p but not by p^e");
            ASLocal r;
            r.reduced_order = j;
            r.value = FieldElem::zero(F);
            return r;
        }
        FieldElem gamma = s.at_exp(*v);
        FieldElem delta = pe_root(gamma, pe);
        // subtract delta^{p^e} t^{-j} - delta t^{-j/p^e}
        s.c[*v - s.start] = FieldElem::zero(F);
        int tgt = -(j / (int)pe);
        if (tgt >= s.start && tgt < s.start + s.window())
            s.c[tgt - s.start] = s.c[tgt - s.start] + delta;
        else
            fail(Err::NonIntegerResult, "window too small for local reduction");
    }
}

PointOnExt rep_point(const Place& P) {
    PointOnExt pt;
    pt.at_infinity = P.at_infinity;
    if (!P.at_infinity) {
        pt.x = P.x;
        pt.y = P.y;
    }
    return pt;
}

// norm of (a + b y) down to F_q[x]: a^2 - a b h - b^2 f
Poly xy_norm(const CurveModel& C, const Poly& a, const Poly& b) {
    if (C.is_pline()) return a;
    return a * a - a * b * C.h - b * b * C.f;
}

} // namespace

std::vector<SupportEntry> function_divisor_support(const CurveModel& C,
                                                   const CurveFunction& fn) {
    if ((fn.na.is_zero() && fn.nb.is_zero()) || fn.zero_denominator())
        fail(Err::UnsupportedShape, "support of the zero or undefined function");
    const FieldCtx& F = *C.field;
    std::vector<SupportEntry> out;
    // candidate x-polynomials: irreducible factors of the two norms
    Poly prod = xy_norm(C, fn.na, fn.nb) * xy_norm(C, fn.da, fn.db);
    std::set<std::vector<Z>> seen;
    std::vector<Poly> pis;
    for (auto& [pi, m] : prod.factor()) {
        (void)m;
        if (pi.degree() < 1) continue;
        if (seen.insert(pi.index_vector()).second) pis.push_back(pi);
    }
    for (auto& pi : pis) {
        int dpi = pi.degree();
        auto ext = FieldCtx::get(F.p, F.k * dpi);
        const Embedding& e = get_embedding(C.field, ext);
        auto roots = e.map_poly(pi).roots();
        if (roots.empty()) fail(Err::NonIntegerResult, "irreducible factor with no root");
        FieldElem x0 = roots.front();
        std::vector<Place> places;
        if (C.is_pline()) {
            Place P;
            P.degree = dpi;
            P.ext = ext;
            P.x = x0;
            P.y = FieldElem::zero(*ext);
            places.push_back(P);
        } else {
            CurveOverExt E = base_change(C, dpi);
            auto ys = fiber_solutions(E, x0);
            if (!ys.empty()) {
                bool fixed = (ys[0] + ys[0] + E.h.eval(x0)).is_zero();
                if (fixed && ys.size() == 1) {
                    Place P;
                    P.degree = dpi;
                    P.ext = ext;
                    P.x = x0;
                    P.y = ys[0];
                    places.push_back(P);
                } else {
                    for (auto& y : ys) {
                        Place P;
                        P.degree = dpi;
                        P.ext = ext;
                        P.x = x0;
                        P.y = y;
                        places.push_back(P);
                    }
                }
            } else {
                // the fiber lives over the quadratic extension
                auto ext2 = FieldCtx::get(F.p, F.k * 2 * dpi);
                const Embedding& up = get_embedding(ext, ext2);
                CurveOverExt E2 = base_change(C, 2 * dpi);
                FieldElem xb = up.map(x0);
                auto ys2 = fiber_solutions(E2, xb);
                if (ys2.empty()) fail(Err::NonIntegerResult, "empty fiber over extension");
                Place P;
                P.degree = 2 * dpi;
                P.ext = ext2;
                P.x = xb;
                P.y = ys2.front();
                // canonical representative over the orbit
                FieldElem bx = P.x, by = P.y, cx = P.x, cy = P.y;
                for (int j = 1; j < P.degree; ++j) {
                    cx = cx.pow(C.q());
                    cy = cy.pow(C.q());
                    if (cx.index() < bx.index() ||
                        (cx.index() == bx.index() && cy.index() < by.index())) {
                        bx = cx;
                        by = cy;
                    }
                }
                P.x = bx;
                P.y = by;
                places.push_back(P);
            }
        }
        for (auto& P : places) {
            ValUnit vu = place_val_unit(C, P, fn);
            if (vu.val != 0) out.push_back({P, vu.val, vu.unit});
        }
    }
    // infinite place
    {
        ValUnit vu = place_val_unit(C, Place::infinity(), fn);
        if (vu.val != 0) {
            Place inf = Place::infinity();
            inf.ext = C.field;
            inf.x = FieldElem::zero(F);
            inf.y = FieldElem::zero(F);
            out.push_back({inf, vu.val, vu.unit});
        }
    }
    // principal divisors have degree zero
    Z total = 0;
    for (auto& s : out) total += (Z)s.val * s.place.degree;
    if (total != 0)
        fail(Err::NonIntegerResult,
             "divisor degree " + std::to_string(total) + " != 0 (support bug)");
    return out;
}

namespace {

struct RamAnalysis {
    std::vector<RamEntry> entries;
    int genus = 0;     // of the full cover
    int genus_mid = 0; // after the Kummer stage
};

RamAnalysis analyze_ramification(const CurveModel& C, const CurveFunction& fn, Z r,
                                 Z pe) {
    const FieldCtx& F = *C.field;
    Z p = F.p;
    auto support = function_divisor_support(C, fn);
    RamAnalysis R;
    int two_g_minus_2 = 2 * C.genus - 2;
    // tame Kummer stage
    Z delta1 = 0;
    std::map<const SupportEntry*, Z> wgcd;
    for (auto& s : support) {
        Z w = gcd_pos(r, s.val);
        wgcd[&s] = w;
        if ((s.val % r + r) % r != 0) {
            Z e = r / w;
            delta1 += (e - 1) * (r / e) * s.place.degree;
        }
    }
    Z two_gm_minus_2 = r * two_g_minus_2 + delta1;
    if ((two_gm_minus_2 + 2) % 2 != 0)
        fail(Err::InconsistentRamification, "odd Euler characteristic after Kummer stage");
    R.genus_mid = (int)((two_gm_minus_2 + 2) / 2);
    // wild Artin-Schreier stage over the intermediate curve
    Z delta2 = 0;
    std::map<const SupportEntry*, Z> as_exp;
    if (pe > 1) {
        for (auto& s : support) {
            if (s.val >= 0) continue;
            Z w = wgcd[&s];
            Z m_loc = (r / w) * (Z)(-s.val);
            Z m_red = m_loc;
            if (m_loc % p == 0) {
                if (r != 1)
                    fail(Err::UnsupportedShape,
                         "composite cover with wild pole after the Kummer stage");
                // pure Artin-Schreier: reduce the pole locally
                CurveOverExt E = base_change(C, s.place.degree);
                const Embedding& e = get_embedding(C.field, s.place.ext ? s.place.ext
                                                                        : C.field);
                CurveFunction fx = base_change_function(fn, e);
                Series ser = expand_function(E, rep_point(s.place), fx,
                                             (int)m_loc + 8);
                ASLocal red = as_reduce_series(ser, pe, p);
                m_red = red.reduced_order;
                if (m_red == 0) continue; // unramified after reduction
                if (m_red % p == 0)
                    fail(Err::UnsupportedShape, "wild reduced pole order");
            }
            Z contrib = (pe - 1) * (m_red + 1) * w;
            as_exp[&s] = contrib;
            delta2 += contrib * s.place.degree;
        }
    }
    Z two_gb_minus_2 = pe * two_gm_minus_2 + delta2;
    if ((two_gb_minus_2 + 2) % 2 != 0)
        fail(Err::InconsistentRamification, "odd Euler characteristic for the cover");
    R.genus = (int)((two_gb_minus_2 + 2) / 2);
    if (R.genus < 0) fail(Err::InconsistentRamification, "negative genus");
    // per-place exponents: sum deg * exponent reproduces the stage-weighted
    // different degree p^e * delta1 + delta2
    for (auto& s : support) {
        Z expo = 0;
        if ((s.val % r + r) % r != 0) {
            Z w = wgcd[&s];
            Z e = r / w;
            expo += pe * (e - 1) * (r / e);
        }
        auto it = as_exp.find(&s);
        if (it != as_exp.end()) expo += it->second;
        if (expo > 0) R.entries.push_back({s.place, (int)expo});
    }
    return R;
}

bool ram_entries_match(const std::vector<RamEntry>& a, const std::vector<RamEntry>& b) {
    if (a.size() != b.size()) return false;
    auto key = [](const RamEntry& e) {
        if (e.place.at_infinity) return std::tuple<int, Z, Z, int>(1, 0, 0, e.exponent);
        return std::tuple<int, Z, Z, int>(0, e.place.x.index(), e.place.y.index(),
                                          e.exponent);
    };
    std::vector<std::tuple<int, Z, Z, int>> ka, kb;
    for (auto& e : a) ka.push_back(key(e));
    for (auto& e : b) kb.push_back(key(e));
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    return ka == kb;
}

} // namespace

int hurwitz_genus(const CoverSpec& B) {
    RamAnalysis R = analyze_ramification(B.base, B.defining, B.kummer_r, B.as_pe);
    if (!ram_entries_match(R.entries, B.ramification))
        fail(Err::InconsistentRamification,
             "stored ramification data disagrees with the defining function");
    if (R.genus != B.expected_genus)
        fail(Err::InconsistentRamification,
             "recomputed genus " + std::to_string(R.genus) + " != expected " +
                 std::to_string(B.expected_genus));
    return R.genus;
}

Z cover_count_points(const CoverSpec& B, int m, Z budget) {
    const CurveModel& C = B.base;
    const FieldCtx& F = *C.field;
    Z p = F.p;
    Z r = B.kummer_r, pe = B.as_pe;
    CurveOverExt E = base_change(C, m);
    const FieldCtx& X = *E.ext;
    if (X.q > budget) fail(Err::BudgetExceeded, "cover count over q^m");
    const Embedding& e = get_embedding(C.field, E.ext);
    CurveFunction fx = base_change_function(B.defining, e);
    // Artin-Schreier image set over F_{q^m} and kernel size
    std::unordered_set<Z> as_image;
    Z as_kernel = 1;
    if (pe > 1) {
        as_image.reserve((size_t)X.q);
        std::vector<Z> zb(X.k), ib(X.k), t1(X.k);
        for (Z i = 0; i < X.q; ++i) {
            X.from_index(i, zb.data());
            X.pow(zb.data(), pe, t1.data());
            X.sub(t1.data(), zb.data(), ib.data());
            as_image.insert(X.index_of(ib.data()));
        }
        as_kernel = X.q / (Z)as_image.size();
    }
    auto roots_of_Tw = [&](Z w, const FieldElem& c) -> Z {
        // #{T in F : T^w = c}, c != 0
        Z d0 = gcd_pos(w, X.q - 1);
        if (c.pow((X.q - 1) / d0).is_one()) return d0;
        return 0;
    };
    Z total = 0;
    auto fiber = [&](const PointOnExt& pt) {
        // fast path: numerator and denominator both nonzero at the point
        int v;
        FieldElem unit = FieldElem::zero(X);
        bool fast = false;
        if (!pt.at_infinity) {
            FieldElem A = fx.na.eval(pt.x) + fx.nb.eval(pt.x) * pt.y;
            FieldElem Bv = fx.da.eval(pt.x) + fx.db.eval(pt.x) * pt.y;
            if (!A.is_zero() && !Bv.is_zero()) {
                v = 0;
                unit = A * Bv.inverse();
                fast = true;
            }
        }
        ValUnit vu;
        if (!fast) {
            vu = function_val_unit(E, pt, fx);
            v = vu.val;
            unit = vu.unit;
        }
        // Kummer stage: rational points of B' over the base point
        Z cnt_k = 1;
        if (r > 1) {
            if (v == 0) {
                cnt_k = roots_of_Tw(r, unit);
            } else {
                Z w = gcd_pos(r, v);
                cnt_k = roots_of_Tw(w, unit);
            }
        }
        if (cnt_k == 0) return (Z)0;
        // Artin-Schreier stage multiplier (uniform over the B'-points)
        Z mult = 1;
        if (pe > 1) {
            if (v < 0) {
                if (r > 1) {
                    Z w = gcd_pos(r, v);
                    Z m_loc = (r / w) * (Z)(-v);
                    if (m_loc % p == 0)
                        fail(Err::UnsupportedShape,
                             "wild pole in composite fiber counting");
                    mult = 1;
                } else {
                    Series s = expand_function(E, pt, fx, -v + 8);
                    ASLocal red = as_reduce_series(s, pe, p);
                    if (red.reduced_order > 0) {
                        mult = 1;
                    } else {
                        mult = as_image.count(red.value.index()) ? as_kernel : 0;
                    }
                }
            } else {
                FieldElem c = (v > 0) ? FieldElem::zero(X) : unit;
                mult = as_image.count(c.index()) ? as_kernel : 0;
            }
        }
        return cnt_k * mult;
    };
    for_each_point(C, m, [&](bool inf, const FieldElem& x, const FieldElem& y) {
        PointOnExt pt{inf, x, y};
        total += fiber(pt);
    }, budget);
    return total;
}

CoverSpec quadratic_twist(const CoverSpec& B) {
    const FieldCtx& F = *B.base.field;
    CoverSpec T = B;
    if (B.kummer_r == 2 && B.as_pe == 1) {
        FieldElem nu = least_nonsquare(F);
        T.defining.na = B.defining.na * nu;
        T.defining.nb = B.defining.nb * nu;
    } else if (B.as_pe == 2 && B.kummer_r == 1) {
        FieldElem kappa = least_nonzero_trace(F);
        T.defining.na = B.defining.na + B.defining.da * kappa;
        T.defining.nb = B.defining.nb + B.defining.db * kappa;
    } else {
        fail(Err::UnsupportedShape, "twists are defined for degree-2 covers only");
    }
    return T;
}

CoverSpec select_twist(const CoverSpec& B, Z budget) {
    CoverSpec T = quadratic_twist(B);
    Z nb = cover_count_points(B, 1, budget);
    Z nt = cover_count_points(T, 1, budget);
    Z nc = count_points(B.base, 1, budget);
    if (nb + nt != 2 * nc)
        fail(Err::CountMismatch, "twist-sum identity violated: " + std::to_string(nb) +
                                     " + " + std::to_string(nt) +
                                     " != 2*" + std::to_string(nc));
    return (nb >= nc) ? B : T;
}

LPolynomial cover_l_polynomial(const CoverSpec& B, Z budget) {
    int g = B.expected_genus;
    Z q = B.base.q();
    LPolynomial L;
    L.q = q;
    L.genus = g;
    L.b.assign(2 * g + 1, 0);
    L.b[0] = 1;
    if (g == 0) {
        // still check the counts look like a genus-0 curve where affordable
        for (int m = 1; m <= 2; ++m) {
            Z qm = 1;
            bool fits = true;
            for (int i = 0; i < m; ++i) {
                qm *= q;
                if (qm > budget) { fits = false; break; }
            }
            if (!fits) break;
            if (cover_count_points(B, m, budget) != qm + 1)
                fail(Err::CountMismatch, "genus-0 cover has wrong counts");
        }
        return L;
    }
    std::vector<mpz_class> s(g + 1);
    for (int m = 1; m <= g; ++m) {
        Z n = cover_count_points(B, m, budget);
        mpz_class qm;
        mpz_ui_pow_ui(qm.get_mpz_t(), (unsigned long)q, (unsigned long)m);
        s[m] = qm + 1 - to_mpz(n);
    }
    for (int m = 1; m <= g; ++m) {
        mpz_class acc = s[m];
        for (int i = 1; i < m; ++i) acc += L.b[i] * s[m - i];
        mpz_class num = -acc;
        if (num % m != 0)
            fail(Err::NonIntegerResult, "cover Newton identity does not divide");
        L.b[m] = num / m;
    }
    for (int i = 0; i < g; ++i) {
        mpz_class qgi;
        mpz_ui_pow_ui(qgi.get_mpz_t(), (unsigned long)q, (unsigned long)(g - i));
        L.b[2 * g - i] = qgi * L.b[i];
    }
    if (L.at_one() <= 0) fail(Err::CountMismatch, "cover L(1) not positive");
    // independent confirmation of the genus: the extended polynomial must
    // reproduce the point counts beyond m = g
    for (int m = g + 1; m <= 2 * g; ++m) {
        Z qm = 1;
        bool fits = true;
        for (int i = 0; i < m; ++i) {
            qm *= q;
            if (qm > budget) { fits = false; break; }
        }
        if (!fits) break;
        if (counts_from_l(L, m) != to_mpz(cover_count_points(B, m, budget)))
            fail(Err::CountMismatch,
                 "fiber counts are inconsistent with genus " + std::to_string(g));
    }
    return L;
}

// ---------- builders ----------

namespace {

Place infinity_place_of(const CurveModel& C) {
    Place inf = Place::infinity();
    inf.ext = C.field;
    inf.x = FieldElem::zero(*C.field);
    inf.y = FieldElem::zero(*C.field);
    return inf;
}

// sweep nonzero combinations of a kernel basis in canonical order
bool sweep_kernel(const FieldCtx& F, const std::vector<std::pair<Poly, Poly>>& basis,
                  Z max_candidates,
                  const std::function<bool(const Poly&, const Poly&)>& accept) {
    if (basis.empty()) return false;
    Z total = 1;
    for (size_t i = 0; i < basis.size(); ++i) {
        total *= F.q;
        if (total > 4 * max_candidates) break;
    }
    Z n = 0;
    std::vector<Z> idx(basis.size(), 0);
    for (;;) {
        // advance odometer (skip the all-zero combination)
        int i = (int)idx.size() - 1;
        while (i >= 0 && idx[i] == F.q - 1) idx[i--] = 0;
        if (i < 0) return false;
        ++idx[i];
        if (++n > max_candidates) return false;
        Poly a = Poly::zero(F), b = Poly::zero(F);
        for (size_t j = 0; j < basis.size(); ++j) {
            if (idx[j] == 0) continue;
            FieldElem c = FieldElem::from_index(F, idx[j]);
            a = a + basis[j].first * c;
            b = b + basis[j].second * c;
        }
        if (a.is_zero() && b.is_zero()) continue;
        if (accept(a, b)) return true;
    }
}

} // namespace

CoverSpec build_as_cover(const CurveModel& C, int h, bool force_place_ramified,
                         SearchOptions opts) {
    const FieldCtx& F = *C.field;
    if (F.p != 2) fail(Err::UnsupportedShape, "Artin-Schreier double covers need even q");
    int g = C.genus;
    if (h < 4 * g) fail(Err::GenusTooSmall, "need h >= 4g");
    if (!force_place_ramified) {
        // ramify at the rational infinite place: polar divisor m * inf
        int m = 2 * h - 4 * g + 1;
        CoverSpec B;
        B.base = C;
        B.as_pe = 2;
        if (C.is_pline()) {
            B.defining = CurveFunction::poly_xy(Poly::monomial(F, m, FieldElem::one(F)),
                                                Poly::zero(F));
        } else {
            // x^j y has pole order 2j + 2g + 1 = m at infinity
            if (m < 2 * g + 1)
                fail(Err::GenusTooSmall, "pole order below the x^j y basis range");
            int j = (m - 2 * g - 1) / 2;
            B.defining = CurveFunction::poly_xy(Poly::zero(F),
                                                Poly::monomial(F, j, FieldElem::one(F)));
        }
        B.ramification = {{infinity_place_of(C), m + 1}};
        B.expected_genus = h;
        hurwitz_genus(B); // self-check
        return B;
    }
    // place-ramified branch: additive pole space at a single degree-d place
    int d = h - 2 * g + 1;
    if (d < 1) fail(Err::GenusTooSmall, "need d = h - 2g + 1 >= 1");
    if (C.is_pline())
        fail(Err::UnsupportedShape,
             "place-ramified search targets positive-genus bases");
    Place P = find_place(C, d, /*generic_only=*/true);
    Poly u = place_min_poly(C, P);
    // involution partner of the representative
    CurveOverExt Ed = base_change(C, d);
    const Embedding& ed = get_embedding(C.field, P.ext);
    FieldElem ybar = -P.y - ed.map_poly(C.h).eval(P.x);
    for (int level = 1; level <= opts.max_as_level; ++level) {
        int M = 1 << level; // pole allowance u^{-M} with 2-power exponents
        AmbientSpace amb;
        amb.deg_a = d * M;
        amb.deg_b = std::max(-1, d * M - g - 1);
        amb.den = Poly::one(F);
        for (int i = 0; i < M; ++i) amb.den = amb.den * u;
        LocalCondition at_inf;
        at_inf.at_infinity = true;
        at_inf.min_val = 0;
        LocalCondition at_pbar; // no pole on the involution side
        at_pbar.ext_degree = d;
        at_pbar.x = P.x;
        at_pbar.y = ybar;
        at_pbar.min_val = 0;
        LocalCondition at_p; // poles only at 2-power orders (and order 1)
        at_p.ext_degree = d;
        at_p.x = P.x;
        at_p.y = P.y;
        at_p.min_val = -M;
        for (int e2 = 2; e2 < M; ++e2) {
            bool is_pow2 = (e2 & (e2 - 1)) == 0;
            if (!is_pow2) at_p.zero_exps.push_back(-e2);
        }
        auto basis = function_space(C, amb, {at_inf, at_pbar, at_p});
        CoverSpec found;
        bool ok = sweep_kernel(F, basis, opts.max_candidates, [&](const Poly& a, const Poly& b) {
            CurveFunction w{a, b, amb.den, Poly::zero(F)};
            // reduced pole order at P must be exactly 1 (the additive
            // cascade invariant must not vanish)
            CurveFunction wx = base_change_function(w, ed);
            Series s = expand_function(Ed, rep_point(P), wx, M + 8);
            auto v = s.valuation();
            if (!v || *v >= 0) return false;
            ASLocal red = as_reduce_series(s, 2, 2);
            if (red.reduced_order != 1) return false;
            CoverSpec B;
            B.base = C;
            B.as_pe = 2;
            B.defining = w;
            B.ramification = {{P, 2}};
            B.expected_genus = 2 * g + d - 1;
            // full consistency check (also catches stray poles)
            hurwitz_genus(B);
            found = B;
            return true;
        });
        if (ok) {
            if (found.expected_genus != h)
                fail(Err::InconsistentRamification, "place-ramified genus mismatch");
            return found;
        }
    }
    fail(Err::SearchBudgetExceeded,
         "additive pole-space search exhausted; enlarge the 2-power level");
}

namespace {

// collision pair of generic degree-d places with equal classes in J/2J
struct CollisionPair {
    Place P1, P2;
};

CollisionPair find_mod2_collision(const CurveModel& C, int d, Jacobian& J) {
    Z classes = J.mod2_index();
    auto places = list_places(C, d, /*generic_only=*/true, (size_t)classes + 1);
    std::map<Z, Place> by_label;
    for (auto& P : places) {
        MumfordDivisor D = place_to_divisor(C, P);
        Z label = J.class_mod2(D);
        auto it = by_label.find(label);
        if (it != by_label.end()) return {it->second, P};
        by_label.emplace(label, P);
    }
    fail(Err::NoCollision,
         "no J/2J collision among degree-" + std::to_string(d) + " places: found " +
             std::to_string(places.size()) + " generic places vs #(J/2J) = " +
             std::to_string(classes));
}

// does div(w) = P1 + P2 (mod 2) hold, with odd valuation exactly there?
bool parity_pattern_ok(const CurveModel& C, const CurveFunction& w, const Place& P1,
                       const Place& P2, std::vector<SupportEntry>* support_out) {
    std::vector<SupportEntry> support;
    try {
        support = function_divisor_support(C, w);
    } catch (const DomainError&) {
        return false;
    }
    bool seen1 = false, seen2 = false;
    for (auto& s : support) {
        bool odd = (s.val % 2) != 0;
        if (!odd) continue;
        if (place_equal(s.place, P1) && !seen1) {
            seen1 = true;
        } else if (place_equal(s.place, P2) && !seen2) {
            seen2 = true;
        } else {
            return false; // odd valuation somewhere else
        }
    }
    if (!(seen1 && seen2)) return false;
    if (support_out) *support_out = support;
    return true;
}

CoverSpec make_kummer_spec(const CurveModel& C, const CurveFunction& w, const Place& P1,
                           const Place& P2, int h) {
    CoverSpec B;
    B.base = C;
    B.kummer_r = 2;
    B.defining = w;
    B.ramification = {{P1, 1}, {P2, 1}};
    B.expected_genus = h;
    hurwitz_genus(B);
    return B;
}

} // namespace

CoverSpec build_kummer_cover(const CurveModel& C, int h, SearchOptions opts) {
    const FieldCtx& F = *C.field;
    if (F.p == 2) fail(Err::UnsupportedShape, "Kummer double covers need odd q");
    int g = C.genus;
    if (h < 4 * g) fail(Err::GenusTooSmall, "need h >= 4g");
    int d = h - 2 * g + 1;
    if (d < 1) fail(Err::GenusTooSmall, "need d = h - 2g + 1 >= 1");
    if (C.is_pline()) {
        auto places = list_places(C, d, true, 2);
        if (places.size() < 2)
            fail(Err::NoCollision, "need two degree-" + std::to_string(d) + " places");
        Poly u1 = place_min_poly(C, places[0]);
        Poly u2 = place_min_poly(C, places[1]);
        CurveFunction w = CurveFunction::ratio_x(u1, u2);
        return make_kummer_spec(C, w, places[0], places[1], h);
    }
    Jacobian J(C);
    CollisionPair pair = find_mod2_collision(C, d, J);
    // bounded search for w = a + b y with div(w) = P1 + P2 (mod 2)
    for (int extra = 0; extra <= opts.max_extra_degree; ++extra) {
        int deg_a = d + extra;
        for (int deg_b = -1; deg_b <= deg_a - g - 1; ++deg_b) {
            AmbientSpace amb;
            amb.deg_a = deg_a;
            amb.deg_b = deg_b;
            amb.den = Poly::one(F);
            LocalCondition c1;
            c1.ext_degree = d;
            c1.x = pair.P1.x;
            c1.y = pair.P1.y;
            c1.min_val = 1;
            LocalCondition c2;
            c2.ext_degree = d;
            c2.x = pair.P2.x;
            c2.y = pair.P2.y;
            c2.min_val = 1;
            auto basis = function_space(C, amb, {c1, c2});
            if (basis.empty()) continue;
            if ((int)basis.size() > 7) continue; // keep sweeps bounded
            CoverSpec found;
            bool ok = sweep_kernel(F, basis, opts.max_candidates,
                                   [&](const Poly& a, const Poly& b) {
                CurveFunction w = CurveFunction::poly_xy(a, b);
                if (!parity_pattern_ok(C, w, pair.P1, pair.P2, nullptr)) return false;
                found = make_kummer_spec(C, w, pair.P1, pair.P2, h);
                return true;
            });
            if (ok) return found;
        }
    }
    fail(Err::SearchBudgetExceeded,
         "no explicit function found for the collision pair (classes collide: " +
         render_divisor(place_to_divisor(C, pair.P1)) + " ~ " +
         render_divisor(place_to_divisor(C, pair.P2)) + " mod 2J)");
}

namespace {

// is the function a nonzero square at every rational place?
bool splits_everywhere(const CurveModel& C, const CurveFunction& w) {
    auto rational = list_places(C, 1, false, (size_t)count_points(C, 1) + 1);
    for (auto& Q : rational) {
        ValUnit vu = place_val_unit(C, Q, w);
        if (vu.val % 2 != 0) return false;
        if (!vu.unit.is_square()) return false;
    }
    return true;
}

} // namespace

CoverSpec build_splitting_cover(const CurveModel& C, int h, SearchOptions opts) {
    const FieldCtx& F = *C.field;
    if (F.p == 2) fail(Err::UnsupportedShape, "splitting covers need odd q");
    int g = C.genus;
    int d = h - 2 * g + 1;
    if (d <= 1) fail(Err::GenusTooSmall, "need d = h - 2g + 1 > 1");
    if (C.is_pline()) {
        // sweep pairs of monic irreducibles of degree d in canonical order
        std::vector<Poly> irr;
        for_each_monic(F, d, [&](const Poly& u) {
            if (u.is_irreducible()) irr.push_back(u);
            return true;
        });
        for (size_t i = 0; i < irr.size(); ++i) {
            for (size_t j = i + 1; j < irr.size(); ++j) {
                CurveFunction w = CurveFunction::ratio_x(irr[i], irr[j]);
                if (!splits_everywhere(C, w)) continue;
                auto places = list_places(C, d, true, irr.size());
                Place P1, P2;
                for (auto& P : places) {
                    Poly mp = place_min_poly(C, P);
                    if (mp == irr[i]) P1 = P;
                    if (mp == irr[j]) P2 = P;
                }
                return make_kummer_spec(C, w, P1, P2, h);
            }
        }
        fail(Err::NoSplittingPair,
             "no pair among the " + std::to_string(irr.size()) +
                 " degree-" + std::to_string(d) +
                 " places gives a totally split double cover");
    }
    Jacobian J(C);
    // group places by their J/2J class and try colliding pairs
    Z classes = J.mod2_index();
    auto places = list_places(C, d, true, (size_t)(4 * classes + 8));
    std::map<Z, std::vector<size_t>> buckets;
    for (size_t i = 0; i < places.size(); ++i)
        buckets[J.class_mod2(place_to_divisor(C, places[i]))].push_back(i);
    for (auto& [label, members] : buckets) {
        for (size_t a = 0; a < members.size(); ++a) {
            for (size_t b = a + 1; b < members.size(); ++b) {
                const Place& P1 = places[members[a]];
                const Place& P2 = places[members[b]];
                for (int extra = 0; extra <= opts.max_extra_degree; ++extra) {
                    int deg_a = d + extra;
                    for (int deg_b = -1; deg_b <= deg_a - g - 1; ++deg_b) {
                        AmbientSpace amb{deg_a, deg_b, Poly::one(F)};
                        LocalCondition c1, c2;
                        c1.ext_degree = c2.ext_degree = d;
                        c1.x = P1.x;
                        c1.y = P1.y;
                        c1.min_val = 1;
                        c2.x = P2.x;
                        c2.y = P2.y;
                        c2.min_val = 1;
                        auto basis = function_space(C, amb, {c1, c2});
                        if (basis.empty() || (int)basis.size() > 6) continue;
                        CoverSpec found;
                        bool ok = sweep_kernel(F, basis, opts.max_candidates / 8,
                                               [&](const Poly& aa, const Poly& bb) {
                            CurveFunction w = CurveFunction::poly_xy(aa, bb);
                            if (!parity_pattern_ok(C, w, P1, P2, nullptr)) return false;
                            if (!splits_everywhere(C, w)) return false;
                            found = make_kummer_spec(C, w, P1, P2, h);
                            return true;
                        });
                        if (ok) return found;
                    }
                }
            }
        }
    }
    fail(Err::NoSplittingPair, "splitting-pair search exhausted at d = " +
                                   std::to_string(d));
}

NRankCover build_nrank_cover(const CurveModel& C, Z n, SearchOptions opts) {
    const FieldCtx& F = *C.field;
    if (n <= 1) fail(Err::UnsupportedShape, "n must exceed 1");
    if (C.genus < 1) fail(Err::UnsupportedShape, "base must have positive genus");
    int g = C.genus;
    Z p = F.p;
    Z r = n, pe = 1;
    while (r % p == 0) {
        r /= p;
        pe *= p;
    }
    // S: canonically least affine rational points, d = min(#C(F_q), g)
    Z nc = count_points(C, 1);
    int d = (int)std::min<Z>(nc, g);
    auto rat = list_places(C, 1, false, (size_t)nc + 1);
    std::vector<Place> S;
    for (auto& P : rat) {
        if (P.at_infinity) continue;
        if ((int)S.size() < d) S.push_back(P);
    }
    if (S.empty()) fail(Err::NoRationalPoints, "no affine rational point for S");
    d = (int)S.size();
    Place Q = find_place(C, 2 * g + 1, /*generic_only=*/false);
    Poly uq = place_min_poly(C, Q);
    Poly us = Poly::one(F);
    for (auto& P : S) us = us * place_min_poly(C, P);
    // f with simple poles exactly at S and Q
    AmbientSpace amb;
    Poly den = us * uq;
    amb.den = den;
    amb.deg_a = den.degree() + g + 1;
    amb.deg_b = amb.deg_a - g - 1;
    std::vector<LocalCondition> conds;
    LocalCondition inf;
    inf.at_infinity = true;
    inf.min_val = 0;
    conds.push_back(inf);
    CurveOverExt E1 = base_change(C, 1);
    for (auto& P : S) {
        LocalCondition cp;
        cp.ext_degree = 1;
        cp.x = P.x;
        cp.y = P.y;
        cp.min_val = -1;
        conds.push_back(cp);
        FieldElem ybar = -P.y - E1.h.eval(P.x);
        if (!(ybar == P.y)) {
            LocalCondition cbar;
            cbar.ext_degree = 1;
            cbar.x = P.x;
            cbar.y = ybar;
            cbar.min_val = 0;
            conds.push_back(cbar);
        }
    }
    {
        LocalCondition cq;
        cq.ext_degree = Q.degree;
        cq.x = Q.x;
        cq.y = Q.y;
        cq.min_val = -1;
        conds.push_back(cq);
        CurveOverExt Eq = base_change(C, Q.degree);
        const Embedding& eq = get_embedding(C.field, Q.ext);
        FieldElem ybar = -Q.y - eq.map_poly(C.h).eval(Q.x);
        if (!(ybar == Q.y)) {
            LocalCondition cbar;
            cbar.ext_degree = Q.degree;
            cbar.x = Q.x;
            cbar.y = ybar;
            cbar.min_val = 0;
            conds.push_back(cbar);
        }
    }
    auto basis = function_space(C, amb, conds);
    NRankCover out;
    bool ok = sweep_kernel(F, basis, opts.max_candidates, [&](const Poly& a, const Poly& b) {
        CurveFunction w{a, b, den, Poly::zero(F)};
        // exact simple poles at every point of S and at Q
        for (auto& P : S) {
            auto vu = function_val_unit(E1, rep_point(P), w);
            if (vu.val != -1) return false;
        }
        {
            CurveOverExt Eq = base_change(C, Q.degree);
            const Embedding& eq = get_embedding(C.field, Q.ext);
            auto vu = function_val_unit(Eq, rep_point(Q), base_change_function(w, eq));
            if (vu.val != -1) return false;
        }
        RamAnalysis R;
        try {
            R = analyze_ramification(C, w, r, pe);
        } catch (const DomainError&) {
            return false;
        }
        CoverSpec B;
        B.base = C;
        B.kummer_r = r;
        B.as_pe = pe;
        B.defining = w;
        B.ramification = R.entries;
        B.expected_genus = R.genus;
        out.cover = B;
        out.d = d;
        out.r = r;
        out.pe = pe;
        out.genus = R.genus;
        out.genus_bound = 7 * n * g;
        return true;
    });
    if (!ok)
        fail(Err::SearchBudgetExceeded, "no function with exact simple poles found");
    if (to_mpz(out.genus) >= to_mpz(out.genus_bound))
        fail(Err::InconsistentRamification,
             "constructed genus violates the 7ng bound");
    return out;
}

// ---------- JSON ----------

namespace {

nlohmann::ordered_json place_to_json(const Place& P) {
    nlohmann::ordered_json j;
    if (P.at_infinity) {
        j["at_infinity"] = true;
        j["degree"] = 1;
        return j;
    }
    j["at_infinity"] = false;
    j["degree"] = P.degree;
    j["x"] = P.x.render();
    j["y"] = P.y.render();
    return j;
}

Place place_from_json(const CurveModel& C, const nlohmann::json& j) {
    if (j.value("at_infinity", false)) {
        Place inf = Place::infinity();
        inf.ext = C.field;
        inf.x = FieldElem::zero(*C.field);
        inf.y = FieldElem::zero(*C.field);
        return inf;
    }
    Place P;
    P.degree = j.at("degree").get<int>();
    P.x = FieldElem::parse(j.at("x").get<std::string>());
    P.y = FieldElem::parse(j.at("y").get<std::string>());
    P.ext = FieldCtx::get(C.field->p, C.field->k * P.degree);
    if (P.x.ctx_ptr() != P.ext.get())
        fail(Err::ParseError, "place coordinates in the wrong field");
    return P;
}

} // namespace

std::string render_cover_json(const CoverSpec& B) {
    nlohmann::ordered_json j;
    j["base"] = render_curve_spec(B.base);
    j["kind"] = B.kind();
    j["exponents"] = {B.kummer_r, B.as_pe};
    nlohmann::ordered_json def;
    def["a"] = nlohmann::json::parse(render_poly_brackets(B.defining.na));
    def["b"] = nlohmann::json::parse(render_poly_brackets(B.defining.nb));
    def["denom_a"] = nlohmann::json::parse(render_poly_brackets(B.defining.da));
    def["denom_b"] = nlohmann::json::parse(render_poly_brackets(B.defining.db));
    j["defining"] = def;
    nlohmann::ordered_json ram = nlohmann::ordered_json::array();
    for (auto& e : B.ramification) {
        nlohmann::ordered_json entry = nlohmann::ordered_json::array();
        entry.push_back(place_to_json(e.place));
        entry.push_back(e.exponent);
        ram.push_back(entry);
    }
    j["ramification"] = ram;
    j["genus"] = B.expected_genus;
    return j.dump(2);
}

CoverSpec parse_cover_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        fail(Err::ParseError, std::string("bad cover JSON: ") + e.what());
    }
    CoverSpec B;
    B.base = parse_curve_spec(j.at("base").get<std::string>());
    const FieldCtx& F = *B.base.field;
    auto expo = j.at("exponents");
    B.kummer_r = expo.at(0).get<Z>();
    B.as_pe = expo.at(1).get<Z>();
    auto def = j.at("defining");
    B.defining.na = parse_poly_brackets(F, def.at("a").dump());
    B.defining.nb = parse_poly_brackets(F, def.at("b").dump());
    B.defining.da = parse_poly_brackets(F, def.at("denom_a").dump());
    B.defining.db = parse_poly_brackets(F, def.at("denom_b").dump());
    for (auto& entry : j.at("ramification"))
        B.ramification.push_back(
            {place_from_json(B.base, entry.at(0)), entry.at(1).get<int>()});
    B.expected_genus = j.at("genus").get<int>();
    return B;
}

} // namespace manypoints
