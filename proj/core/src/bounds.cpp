#include "manypoints/bounds.hpp"

#include <algorithm>

#include "manypoints/parallel.hpp"

#include "manypoints/covers.hpp"
#include "manypoints/oracle.hpp"

namespace manypoints {

NumberVal NumberVal::from_mpq(mpq_class v) {
    NumberVal n;
    n.exact = true;
    v.canonicalize();
    n.rational = std::move(v);
    return n;
}

NumberVal NumberVal::from_interval(const Interval& v) {
    NumberVal n;
    n.exact = false;
    n.decimal = v.mid_str(50);
    n.lo = v.lo_str(30);
    n.hi = v.hi_str(30);
    n.enclosure_lo = v.lo_q();
    n.enclosure_hi = v.hi_q();
    return n;
}

std::string NumberVal::str() const {
    if (!exact) return decimal;
    if (rational.get_den() == 1) return rational.get_num().get_str();
    return rational.get_str();
}

std::pair<Z, int> split_prime_power(Z q) {
    if (q < 2) fail(Err::NotPrimePower, std::to_string(q));
    Z p = 0;
    for (Z d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) return {q, 1}; // prime
    int a = 0;
    Z rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++a;
    }
    if (rest != 1) fail(Err::NotPrimePower, std::to_string(q));
    return {p, a};
}

namespace {

constexpr mpfr_prec_t kPrecLadder[] = {256, 512, 1024, 2048, 4096, 8192};

// resolved sign of (a - rhs), escalating precision through `make`
template <typename MakeFn>
int resolve_cmp_mpq(const MakeFn& make, const mpq_class& rhs) {
    for (mpfr_prec_t prec : kPrecLadder) {
        Interval v = make(prec);
        auto c = v.cmp(rhs);
        if (c) return *c;
    }
    fail(Err::NonIntegerResult, "interval comparison unresolved at maximum precision");
}

bool is_perfect_square(const mpz_class& v) {
    return v >= 0 && mpz_perfect_square_p(v.get_mpz_t());
}

mpz_class mpz_isqrt(const mpz_class& v) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

mpz_class pow_mpz(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

} // namespace

ClassicalBounds classical_bounds(Z q, int g) {
    split_prime_power(q);
    ClassicalBounds out;
    mpz_class qz = to_mpz(q);
    mpz_class root4q = mpz_isqrt(4 * qz); // floor(2 sqrt q)
    {
        BoundReport r;
        r.id = "weil_upper";
        r.provenance = "Weil bound: #C(F_q) <= (2 sqrt q) g + q + 1";
        r.inputs = {{"q", std::to_string(q)}, {"g", std::to_string(g)}};
        if (g == 0) {
            r.value = NumberVal::from_mpq(mpq_class(qz + 1));
        } else if (is_perfect_square(qz)) {
            mpz_class s = mpz_isqrt(qz);
            r.value = NumberVal::from_mpq(mpq_class(2 * s * g + qz + 1));
        } else {
            Interval v = Interval::exact_int(2) * Interval::exact_mpz(qz).sqrt() *
                             Interval::exact_int(g) +
                         Interval::exact_mpz(qz + 1);
            r.value = NumberVal::from_interval(v);
        }
        out.weil_upper = r;
    }
    {
        BoundReport r;
        r.id = "serre_refined_lower";
        r.provenance = "refined Weil bound: |#C - q - 1| <= g floor(2 sqrt q)";
        r.value = NumberVal::from_mpq(mpq_class(qz + 1 - g * root4q));
        out.serre_lower = r;
    }
    {
        BoundReport r;
        r.id = "serre_refined_upper";
        r.provenance = "refined Weil bound: |#C - q - 1| <= g floor(2 sqrt q)";
        r.value = NumberVal::from_mpq(mpq_class(qz + 1 + g * root4q));
        out.serre_upper = r;
    }
    {
        BoundReport r;
        r.id = "dv_slope";
        r.provenance = "Drinfeld-Vladut: A+(q) <= sqrt(q) - 1";
        if (is_perfect_square(qz)) {
            r.value = NumberVal::from_mpq(mpq_class(mpz_isqrt(qz) - 1));
        } else {
            r.value = NumberVal::from_interval(Interval::exact_mpz(qz).sqrt() -
                                               Interval::exact_int(1));
        }
        out.dv_slope = r;
    }
    return out;
}

BoundReport lemma21(Z q, Z g, Z d, Lemma21Variant variant, std::optional<Z> j) {
    split_prime_power(q);
    if (d < 1) fail(Err::UnsupportedShape, "d must be positive");
    BoundReport r;
    r.inputs = {{"q", std::to_string(q)}, {"g", std::to_string(g)},
                {"d", std::to_string(d)}};
    mpz_class qz = to_mpz(q);
    switch (variant) {
        case Lemma21Variant::I: {
            r.id = "place_count_lower_i";
            r.provenance = "n_d(C) > (q^d - (6g+3) q^(d/2)) / d";
            mpz_class qd = pow_mpz(qz, (unsigned long)d);
            if (d % 2 == 0) {
                mpz_class qhalf = pow_mpz(qz, (unsigned long)(d / 2));
                r.value = NumberVal::from_mpq(mpq_class(qd - to_mpz(6 * g + 3) * qhalf,
                                                        to_mpz(d)));
            } else {
                Interval qd_i = Interval::exact_mpz(qd);
                Interval v = (qd_i - Interval::exact_int(6 * (long)g + 3) * qd_i.sqrt()) /
                             Interval::exact_int((long)d);
                r.value = NumberVal::from_interval(v);
            }
            return r;
        }
        case Lemma21Variant::II: {
            r.id = "place_exists_ii";
            r.provenance = "g > 1 and d > 2g imply n_d(C) > 0";
            r.has_flag = true;
            r.flag = (g > 1 && d > 2 * g);
            r.value = NumberVal::from_mpq(mpq_class(0)); // strict lower bound
            return r;
        }
        case Lemma21Variant::III: {
            r.id = "place_count_iii";
            r.provenance =
                "q odd and d > 2g imply n_d(C) >= 2^(2g), with equality only for "
                "the 6-point genus-1 curve over F_3 at d = 3";
            r.has_flag = true;
            r.flag = (q % 2 == 1 && d > 2 * g);
            if (2 * g > 4000) fail(Err::BudgetExceeded, "2^(2g) beyond report range");
            r.value = NumberVal::from_mpq(mpq_class(pow_mpz(2, (unsigned long)(2 * g))));
            return r;
        }
        case Lemma21Variant::IV: {
            if (!j || *j < 1) fail(Err::UnsupportedShape, "variant iv needs j >= 1");
            r.id = "place_count_iv";
            r.provenance =
                "g >= 900 and d >= log_q(j ln j + 1) + sqrt(g) imply n_d(C) > j";
            r.inputs.push_back({"j", std::to_string(*j)});
            r.has_flag = true;
            bool hyp = (g >= 900);
            if (hyp) {
                if (*j == 1) {
                    // log_q(1) = 0 exactly; d >= sqrt(g) iff d^2 >= g
                    hyp = (d * d >= g);
                } else {
                    Z jj = *j;
                    int c = resolve_cmp_mpq(
                        [&](mpfr_prec_t prec) {
                            Interval lnj = Interval::exact_int((long)jj, prec).ln();
                            Interval arg = Interval::exact_int((long)jj, prec) * lnj +
                                           Interval::exact_int(1, prec);
                            Interval rhs = arg.ln() /
                                               Interval::exact_mpz(qz, prec).ln() +
                                           Interval::exact_int((long)g, prec).sqrt();
                            return Interval::exact_int((long)d, prec) - rhs;
                        },
                        mpq_class(0));
                    hyp = (c >= 0);
                }
            }
            r.flag = hyp;
            r.value = NumberVal::from_mpq(mpq_class(to_mpz(*j)));
            return r;
        }
    }
    fail(Err::UnsupportedShape, "unknown variant");
}

SequenceStats sequence_stats(const std::vector<SeqEntry>& entries) {
    if (entries.size() < 2) fail(Err::TooFewEntries, "need at least two entries");
    for (auto& e : entries)
        if (e.genus <= 0) fail(Err::UnsupportedShape, "genera must be positive");
    SequenceStats S;
    S.entries = entries;
    bool first = true;
    for (size_t i = 0; i + 1 < entries.size(); ++i) {
        mpq_class gam(to_mpz(entries[i].count), to_mpz(entries[i + 1].genus));
        mpq_class bet(to_mpz(entries[i].genus), to_mpz(entries[i + 1].genus));
        mpq_class rho(to_mpz(entries[i].rn), to_mpz(entries[i + 1].genus));
        gam.canonicalize();
        bet.canonicalize();
        rho.canonicalize();
        if (first || gam < S.gamma) S.gamma = gam;
        if (first || bet < S.beta) S.beta = bet;
        if (first || rho < S.rho_n) S.rho_n = rho;
        first = false;
    }
    bool first2 = true;
    for (auto& e : entries) {
        mpq_class v(to_mpz(e.r2), to_mpz(e.genus));
        v.canonicalize();
        if (first2 || v > S.r2_sup) S.r2_sup = v;
        first2 = false;
    }
    return S;
}

BoundReport thm_bounds(ThmFormula which, const ThmParams& params) {
    BoundReport r;
    auto need_q = [&]() {
        if (!params.q) fail(Err::UnsupportedShape, "formula needs q");
        return *params.q;
    };
    switch (which) {
        case ThmFormula::LiminfQuarter: {
            if (!params.gamma) fail(Err::UnsupportedShape, "needs gamma");
            r.id = "liminf_quarter";
            r.provenance = "A-(q) >= gamma(sequence) / 4";
            r.value = NumberVal::from_mpq(*params.gamma / 4);
            return r;
        }
        case ThmFormula::CftGamma: {
            if (!params.S || !params.gC || !params.ell)
                fail(Err::UnsupportedShape, "needs S, gC, ell");
            if (*params.gC <= 1) fail(Err::UnsupportedShape, "tower base needs genus > 1");
            r.id = "cft_gamma";
            r.provenance =
                "infinite (S,ell)-class field tower: gamma >= #S / ((g-1) ell)";
            mpq_class v(to_mpz(*params.S), to_mpz((*params.gC - 1) * *params.ell));
            v.canonicalize();
            r.value = NumberVal::from_mpq(v);
            return r;
        }
        case ThmFormula::Thm12: {
            Z q = need_q();
            auto [p, a] = split_prime_power(q);
            mpz_class qz = to_mpz(q);
            if (!is_perfect_square(qz))
                fail(Err::UnsupportedShape, "formula applies to square q");
            r.id = "asquare_lower";
            r.inputs = {{"q", std::to_string(q)}};
            mpz_class s = mpz_isqrt(qz);
            if (p == 2) {
                r.provenance = "A-(q) >= (sqrt q - 1) / (2 + log2/log q), even square q";
                // log 2 / log q = 1/a exactly
                mpq_class v(mpq_class(s - 1) / (mpq_class(2) + mpq_class(1, a)));
                v.canonicalize();
                r.value = NumberVal::from_mpq(v);
            } else {
                r.provenance = "A-(q) >= (sqrt q - 1) / (2 + log4/log q), odd square q";
                Interval q_i = Interval::exact_mpz(qz);
                Interval v = Interval::exact_mpz(s - 1) /
                             (Interval::exact_int(2) +
                              Interval::exact_int(4).ln() / q_i.ln());
                r.value = NumberVal::from_interval(v);
            }
            return r;
        }
        case ThmFormula::HC: {
            Z q = need_q();
            auto [p, a] = split_prime_power(q);
            if (!params.R2) fail(Err::UnsupportedShape, "needs R2");
            r.id = "bounding_H";
            r.provenance = "H = 2 + R2 log2/log q";
            r.inputs = {{"q", std::to_string(q)}, {"R2", params.R2->get_str()}};
            if (p == 2) {
                mpq_class v = 2 + *params.R2 * mpq_class(1, a);
                v.canonicalize();
                r.value = NumberVal::from_mpq(v);
            } else {
                Interval v = Interval::exact_int(2) +
                             Interval::exact_mpq(*params.R2) *
                                 Interval::exact_int(2).ln() /
                                 Interval::exact_mpz(to_mpz(q)).ln();
                r.value = NumberVal::from_interval(v);
            }
            return r;
        }
        case ThmFormula::BoundingData: {
            if (!params.gamma || !params.H || !params.M)
                fail(Err::UnsupportedShape, "needs gamma, H, M");
            if (*params.H <= 0) fail(Err::UnsupportedShape, "H must be positive");
            r.id = "bounding_data";
            r.provenance = "A-(q) >= gamma * M / H for bounding data (H, M)";
            mpq_class v = *params.gamma * *params.M / *params.H;
            v.canonicalize();
            r.value = NumberVal::from_mpq(v);
            return r;
        }
        case ThmFormula::Cor62: {
            Z q = need_q();
            split_prime_power(q);
            if (q % 2 == 0) fail(Err::UnsupportedShape, "formula applies to odd q");
            mpz_class qz = to_mpz(q);
            mpq_class gamma;
            if (params.gamma) {
                gamma = *params.gamma;
            } else if (is_perfect_square(qz)) {
                gamma = mpq_class(mpz_isqrt(qz) - 1);
            } else {
                fail(Err::UnsupportedShape, "needs gamma when q is not a square");
            }
            r.id = "split_cover_lower";
            r.provenance =
                "A-(q) >= gamma / (1 + m/2), m = (log2/log q)(sqrt q + 1); every "
                "rational place splits in the constructed degree-2 covers";
            r.inputs = {{"q", std::to_string(q)}, {"gamma", gamma.get_str()}};
            Interval q_i = Interval::exact_mpz(qz);
            Interval m = Interval::exact_int(2).ln() / q_i.ln() *
                         (q_i.sqrt() + Interval::exact_int(1));
            Interval denom = Interval::exact_int(1) + m / Interval::exact_int(2);
            Interval v = Interval::exact_mpq(gamma) / denom;
            r.value = NumberVal::from_interval(v);
            r.inputs.push_back({"one_plus_m_half_lo", denom.lo_str(30)});
            r.inputs.push_back({"one_plus_m_half_hi", denom.hi_str(30)});
            return r;
        }
    }
    fail(Err::UnsupportedShape, "unknown formula");
}

BoundReport golod_shafarevich(Z ell, const mpz_class& q, Z r, Z s) {
    if (r < 2) fail(Err::UnsupportedShape, "needs r >= 2");
    if (s < 1) fail(Err::UnsupportedShape, "needs s >= 1");
    BoundReport out;
    out.id = "golod_shafarevich";
    out.provenance =
        "(r-2)^2/4 >= 1 + #S (when ell | q-1) or #S forces an infinite "
        "(S,ell)-class field tower";
    bool divides = ((q - 1) % to_mpz(ell) == 0);
    mpq_class lhs(to_mpz((r - 2) * (r - 2)), 4);
    lhs.canonicalize();
    mpq_class rhs = divides ? mpq_class(to_mpz(s + 1)) : mpq_class(to_mpz(s));
    out.has_flag = true;
    out.flag = (lhs >= rhs);
    out.value = NumberVal::from_mpq(lhs);
    out.inputs = {{"ell", std::to_string(ell)},
                  {"q", q.get_str()},
                  {"r", std::to_string(r)},
                  {"s", std::to_string(s)},
                  {"lhs", NumberVal::from_mpq(lhs).str()},
                  {"rhs", NumberVal::from_mpq(rhs).str()},
                  {"branch", divides ? "ell divides q-1" : "ell does not divide q-1"}};
    return out;
}

ModularFormulas modular_formulas(Z ell, Z p) {
    auto is_prime = [](Z n) {
        if (n < 2) return false;
        for (Z d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    if (!is_prime(ell)) fail(Err::NotPrimePower, "ell must be prime");
    if (!is_prime(p)) fail(Err::NotPrimePower, "p must be prime");
    if (ell == p) fail(Err::UnsupportedShape, "ell must differ from p");
    ModularFormulas out;
    out.genus.id = "x0_genus";
    out.genus.provenance = "classical genus of X_0(ell), ell prime";
    out.genus.inputs = {{"ell", std::to_string(ell)}};
    Z g = (ell % 12 == 1) ? (ell - 13) / 12 : (ell + 1) / 12;
    out.genus.value = NumberVal::from_mpq(mpq_class(to_mpz(g)));
    out.supersingular_bound.id = "supersingular_lower";
    out.supersingular_bound.provenance =
        "all supersingular points of X_0(ell) are F_{p^2}-rational; their "
        "number is at least (p-1)(ell+1)/12";
    out.supersingular_bound.inputs = {{"ell", std::to_string(ell)},
                                      {"p", std::to_string(p)}};
    mpq_class b(to_mpz((p - 1) * (ell + 1)), 12);
    b.canonicalize();
    out.supersingular_bound.value = NumberVal::from_mpq(b);
    return out;
}

SerreTowerParams serre_tower_params(const mpz_class& q) {
    if (q < 3 || q % 2 == 0) fail(Err::UnsupportedShape, "needs odd q >= 3");
    SerreTowerParams out;
    // r = even integer nearest to log2(q)/3 (never a tie for odd q; the
    // documented tie rule rounds down)
    Z n0 = -1;
    for (mpfr_prec_t prec : kPrecLadder) {
        Interval L = Interval::exact_mpz(q, prec).ln() /
                     Interval::exact_int(2, prec).ln() / Interval::exact_int(3, prec);
        // locate the integer floor by certified comparisons
        for (Z n = 0; n < 100000; ++n) {
            auto lo = L.cmp(mpq_class((long)n));
            auto hi = L.cmp(mpq_class((long)(n + 1)));
            if (lo && hi && *lo > 0 && *hi < 0) {
                n0 = n;
                break;
            }
            if (hi && *hi < 0 && n == 0 && lo && *lo < 0) {
                n0 = -1; // L < 0 cannot happen for q >= 3
                break;
            }
            if (hi && *hi > 0) continue;
            break; // unresolved at this precision
        }
        if (n0 >= 0) {
            Z r1 = n0 - (n0 % 2), r2 = r1 + 2;
            // nearest even: compare L to the odd midpoint r1 + 1
            auto c = L.cmp(mpq_class((long)(r1 + 1)));
            if (!c) { n0 = -1; continue; }
            out.r = (*c < 0) ? r1 : r2;
            break;
        }
    }
    if (out.r == 0 && n0 < 0)
        fail(Err::NonIntegerResult, "could not resolve the nearest even integer");
    Z r = out.r;
    out.base_genus = r / 2;
    mpz_class twor = pow_mpz(2, (unsigned long)r);
    out.cover_genus = 1 + twor * to_mpz(r / 2 - 1);
    out.split_budget = (r - 2) * (r - 2) / 4 - 1;
    // N >= q + 1 - 2 sqrt(q) 2^r (r/2 - 1)
    mpz_class scale = 2 * twor * to_mpz(r / 2 - 1);
    bool exact_sqrt = is_perfect_square(q);
    mpq_class n_exact;
    Interval n_int;
    if (exact_sqrt) {
        n_exact = mpq_class(q + 1 - scale * mpz_isqrt(q));
        out.n_lower = NumberVal::from_mpq(n_exact);
    } else {
        n_int = Interval::exact_mpz(q + 1) -
                Interval::exact_mpz(scale) * Interval::exact_mpz(q).sqrt();
        out.n_lower = NumberVal::from_interval(n_int);
    }
    bool feasible = (out.split_budget >= 1 && out.base_genus > 1);
    if (feasible) {
        // need N / 2^r >= #S, certified
        mpq_class rhs = mpq_class(to_mpz(out.split_budget)) * mpq_class(twor);
        if (exact_sqrt) {
            feasible = (n_exact >= rhs);
        } else {
            int c = resolve_cmp_mpq(
                [&](mpfr_prec_t prec) {
                    return Interval::exact_mpz(q + 1, prec) -
                           Interval::exact_mpz(scale, prec) *
                               Interval::exact_mpz(q, prec).sqrt();
                },
                rhs);
            feasible = (c >= 0);
        }
        // and the Golod-Shafarevich criterion itself (ell = 2 divides q-1)
        if (feasible)
            feasible = golod_shafarevich(2, q, r, out.split_budget).flag;
    }
    out.feasible = feasible;
    if (out.base_genus > 1 && out.split_budget >= 1) {
        mpq_class gc(to_mpz(out.split_budget), to_mpz(2 * (out.base_genus - 1)));
        gc.canonicalize();
        out.gamma_contribution = gc;
    }
    return out;
}

std::vector<NqRow> nq_lower_table(Z q, int g_max, bool construct_covers, int jobs) {
    split_prime_power(q);
    if (g_max < 0) fail(Err::UnsupportedShape, "g_max must be nonnegative");
    std::vector<NqRow> rows(g_max + 1);
    for (int g = 0; g <= g_max; ++g) {
        rows[g].q = q;
        rows[g].g = g;
        rows[g].lower_bound = 0;
        rows[g].source = "none";
        rows[g].citation = "no certificate";
    }
    auto improve = [&](int g, const mpz_class& v, const std::string& src,
                       const std::string& cite) {
        if (g > g_max) return;
        if (v > rows[g].lower_bound) {
            rows[g].lower_bound = v;
            rows[g].source = src;
            rows[g].citation = cite;
        }
    };
    improve(0, to_mpz(q + 1), "exact", "the projective line attains N_q(0) = q + 1");
    if (q <= 5) {
        for (int g = 1; g <= std::min(2, g_max); ++g) {
            Z v = oracle::brute_nq(q, g);
            std::string cite =
                "exhaustive sweep over imaginary hyperelliptic models";
            if (g == 2)
                cite += " (witnessed value; genus-2 curves without a rational "
                        "Weierstrass point may exceed it)";
            improve(g, to_mpz(v), "exhaustive", cite);
        }
    }
    if (construct_covers) {
        auto [p, a] = split_prime_power(q);
        auto F = FieldCtx::get(p, a);
        CurveModel P1 = CurveModel::projective_line(F);
        auto counts = parallel_map<Z>((size_t)g_max + 1, jobs, [&](size_t h) -> Z {
            try {
                CoverSpec B = (q % 2 == 0) ? build_as_cover(P1, (int)h)
                                           : build_kummer_cover(P1, (int)h);
                CoverSpec W = select_twist(B);
                return cover_count_points(W, 1);
            } catch (const DomainError&) {
                return -1; // out of budget; the monotone bound still applies
            }
        });
        for (int h = 0; h <= g_max; ++h)
            if (counts[h] >= 0)
                improve(h, to_mpz(counts[h]), "cover",
                        "constructed degree-2 cover of the projective line, "
                        "twist-selected");
    }
    // genus monotonicity: N_q(h) >= N_q(g) for h >= 4g
    for (int h = 0; h <= g_max; ++h) {
        for (int g = 0; 4 * g <= h; ++g) {
            if (g == h) continue;
            if (rows[g].lower_bound > rows[h].lower_bound)
                improve(h, rows[g].lower_bound, "monotone",
                        "N_q(h) >= N_q(" + std::to_string(g) +
                            ") via twisted double covers (h >= 4g)");
        }
    }
    return rows;
}

int crossover_cmp(Z q, const mpq_class& threshold) {
    split_prime_power(q);
    if (q % 2 == 0) fail(Err::UnsupportedShape, "crossover sweep is over odd q");
    mpz_class qz = to_mpz(q);
    return resolve_cmp_mpq(
        [&](mpfr_prec_t prec) {
            Interval q_i = Interval::exact_mpz(qz, prec);
            Interval m = Interval::exact_int(2, prec).ln() / q_i.ln() *
                         (q_i.sqrt() + Interval::exact_int(1, prec));
            return Interval::exact_int(1, prec) + m / Interval::exact_int(2, prec);
        },
        threshold);
}

int crossover_cmp_hc(Z q) {
    split_prime_power(q);
    if (q % 2 == 0) fail(Err::UnsupportedShape, "crossover sweep is over odd q");
    mpz_class qz = to_mpz(q);
    for (mpfr_prec_t prec : kPrecLadder) {
        Interval q_i = Interval::exact_mpz(qz, prec);
        Interval m = Interval::exact_int(2, prec).ln() / q_i.ln() *
                     (q_i.sqrt() + Interval::exact_int(1, prec));
        Interval lhs = Interval::exact_int(1, prec) + m / Interval::exact_int(2, prec);
        Interval rhs = Interval::exact_int(2, prec) +
                       Interval::exact_int(4, prec).ln() / q_i.ln();
        auto c = lhs.cmp(rhs);
        if (c) return *c;
    }
    fail(Err::NonIntegerResult, "crossover comparison unresolved");
}

std::vector<Z> odd_prime_powers(Z lo, Z hi) {
    auto is_prime = [](Z n) {
        if (n < 2) return false;
        for (Z d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    std::vector<Z> out;
    for (Z q = std::max<Z>(3, lo); q <= hi; ++q) {
        if (q % 2 == 0) continue;
        Z p = q;
        for (Z d = 3; d * d <= q; ++d)
            if (q % d == 0) {
                p = d;
                break;
            }
        if (!is_prime(p)) continue;
        Z rest = q;
        while (rest % p == 0) rest /= p;
        if (rest == 1) out.push_back(q);
    }
    return out;
}

} // namespace manypoints
