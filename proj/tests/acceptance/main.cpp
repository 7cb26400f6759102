/*
 * Acceptance suite: one pass/fail line per criterion, every tolerance and
 * threshold pinned in code. The binary exits nonzero if any criterion
 * fails. Criterion 8 is known-infeasible as stated (see the NOTE it
 * prints): the required covers would violate the genus-1 Weil bound, and
 * the exhaustive class computation confirms no qualifying pair exists.
 * It is kept verbatim and reported honestly rather than weakened.
 */
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "common/corpus.hpp"
#include "manypoints/bounds.hpp"
#include "manypoints/covers.hpp"
#include "manypoints/jacobian.hpp"
#include "manypoints/oracle.hpp"

using namespace manypoints;
using namespace manypoints::tests;

namespace {

struct Criterion {
    int number;
    std::string name;
    double time_limit_s;
    std::function<void(std::vector<std::string>&)> run; // throws on failure
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

Z pow_fits(Z q, int e, Z cap) {
    Z v = 1;
    for (int i = 0; i < e; ++i) {
        v *= q;
        if (v > cap) return -1;
    }
    return v;
}

} // namespace

int main() {
    std::vector<Criterion> criteria;

    criteria.push_back({1, "Moebius/orbit place-count equivalence", 60.0,
                        [](std::vector<std::string>&) {
        for (auto& C : corpus()) {
            for (int d = 1; d <= 6; ++d) {
                if (pow_fits(C.q(), d, 1'000'000) < 0) continue;
                mpz_class main_path = place_count_nd(C, d);
                Z orbit = oracle::brute_places(C, d);
                require(main_path == to_mpz(orbit),
                        "n_" + std::to_string(d) + " mismatch on " +
                            render_curve_spec(C));
            }
        }
    }});

    criteria.push_back({2, "place-count bound family (i)/(iii)/(iv)", 10.0,
                        [](std::vector<std::string>&) {
        for (auto& C : corpus()) {
            for (int d = 1; d <= 6; ++d) {
                if (pow_fits(C.q(), d, 1'000'000) < 0) continue;
                auto b = lemma21(C.q(), C.genus, d, Lemma21Variant::I);
                mpq_class nd(place_count_nd(C, d));
                require(nd > b.value.certified_lo(),
                        "variant (i) fails at d = " + std::to_string(d) + " on " +
                            render_curve_spec(C));
            }
        }
        // (iii): bound 2^{2g} for odd q, d > 2g; equality exactly at the
        // 6-point genus-1 curve over F_3 with n_3 = 4
        int equality_hits = 0;
        for (auto& C : corpus()) {
            if (C.q() % 2 == 0 || C.genus < 1) continue;
            for (int d = 2 * C.genus + 1; d <= 2 * C.genus + 3; ++d) {
                if (pow_fits(C.q(), d, 1'000'000) < 0) continue;
                auto b = lemma21(C.q(), C.genus, d, Lemma21Variant::III);
                require(b.flag, "variant (iii) hypothesis");
                mpz_class nd = place_count_nd(C, d);
                mpz_class bound = b.value.rational.get_num();
                require(nd >= bound, "variant (iii) bound violated");
                bool exceptional = (C.q() == 3 && C.genus == 1 && d == 3 &&
                                    count_points(C, 1) == 6);
                if (exceptional) {
                    require(nd == bound && bound == 4,
                            "equality case must pin n_3 = 4");
                    ++equality_hits;
                } else {
                    require(nd > bound, "equality outside the exceptional curve");
                }
            }
        }
        require(equality_hits == 1, "exactly one equality witness expected");
        // (iv) at (q=2, g=900, d=31, j=1), hypothesis checked symbolically
        auto b4 = lemma21(2, 900, 31, Lemma21Variant::IV, 1);
        require(b4.flag && b4.value.rational == 1, "variant (iv) plug-in");
    }});

    criteria.push_back({3, "constructive genus coverage h in [4g, 4g+6]", 300.0,
                        [](std::vector<std::string>& notes) {
        int built = 0, confirmed = 0;
        for (auto& C : corpus()) {
            for (int h = 4 * C.genus; h <= 4 * C.genus + 6; ++h) {
                CoverSpec B = (C.q() % 2 == 0) ? build_as_cover(C, h)
                                               : build_kummer_cover(C, h);
                require(hurwitz_genus(B) == h,
                        "genus " + std::to_string(h) + " cover of " +
                            render_curve_spec(C));
                ++built;
                if (h <= 4 && C.q() <= 4) {
                    auto L = cover_l_polynomial(B); // throws if degree != 2h
                    require((int)L.b.size() == 2 * h + 1, "L-degree");
                    ++confirmed;
                }
            }
        }
        notes.push_back(std::to_string(built) + " covers built, " +
                        std::to_string(confirmed) +
                        " genus-confirmed through fiber-count L-polynomials");
    }});

    criteria.push_back({4, "twist guarantee and twist-sum identity", 120.0,
                        [](std::vector<std::string>&) {
        for (auto& C : corpus()) {
            for (int h = 4 * C.genus; h <= 4 * C.genus + 6; ++h) {
                CoverSpec B = (C.q() % 2 == 0) ? build_as_cover(C, h)
                                               : build_kummer_cover(C, h);
                CoverSpec T = quadratic_twist(B);
                Z nb = cover_count_points(B, 1);
                Z nt = cover_count_points(T, 1);
                Z nc = count_points(C, 1);
                require(nb + nt == 2 * nc, "twist-sum identity at m = 1");
                CoverSpec W = select_twist(B);
                require(cover_count_points(W, 1) >= nc,
                        "selected twist below the base count");
            }
        }
    }});

    criteria.push_back({5, "numeric anchors and crossover sweeps", 5.0,
                        [](std::vector<std::string>&) {
        ThmParams p4;
        p4.q = 4;
        auto t = thm_bounds(ThmFormula::Thm12, p4);
        require(t.value.exact && t.value.rational == mpq_class(2, 5),
                "even-square formula at q = 4 must be exactly 2/5");
        ThmParams p9;
        p9.q = 9;
        auto c = thm_bounds(ThmFormula::Cor62, p9);
        require(!c.value.exact, "q = 9 bound is transcendental");
        require(c.value.certified_lo() > mpq_class(1226, 1000),
                "certified lower digit 1.226");
        require(c.value.certified_hi() < mpq_class(1227, 1000),
                "certified upper digit 1.227");
        Z first_at_or_above = 0;
        for (Z q : odd_prime_powers(3, 230)) {
            int sign = crossover_cmp(q, mpq_class(2));
            if (q < 207) {
                require(sign < 0, "1 + m/2 < 2 must hold below 207 (q = " +
                                      std::to_string(q) + ")");
            } else if (!first_at_or_above) {
                first_at_or_above = q;
                require(sign > 0, "1 + m/2 >= 2 at the first odd prime power "
                                  ">= 207");
            }
        }
        require(first_at_or_above == 211, "first odd prime power >= 207 is 211");
        auto m13 = modular_formulas(13, 5), m37 = modular_formulas(37, 5),
             m11 = modular_formulas(11, 5);
        require(m13.genus.value.rational == 0, "genus of X_0(13)");
        require(m37.genus.value.rational == 2, "genus of X_0(37)");
        require(m11.supersingular_bound.value.rational == 4,
                "supersingular bound at (11, 5)");
    }});

    criteria.push_back({6, "tower criterion vs exact reimplementation", 10.0,
                        [](std::vector<std::string>& notes) {
        for (Z r = 2; r <= 12; ++r)
            for (Z s = 1; s <= 40; ++s) {
                bool div_branch = ((r - 2) * (r - 2) >= 4 * (1 + s));
                bool nodiv_branch = ((r - 2) * (r - 2) >= 4 * s);
                require(golod_shafarevich(2, mpz_class(9), r, s).flag == div_branch,
                        "dividing branch");
                require(golod_shafarevich(2, mpz_class(4), r, s).flag == nodiv_branch,
                        "non-dividing branch");
            }
        auto six = golod_shafarevich(2, mpz_class(3), 5, 2);
        require(!six.flag,
                "six-polynomial configuration must report unsatisfied");
        notes.push_back(
            "six-even-degree-polynomials configuration (r = 5, two split "
            "infinite places, ell = 2 | q-1) evaluates to 9/4 < 3: the "
            "displayed criterion is not met; recorded as a documented open "
            "question, the checker reports the literal result");
    }});

    criteria.push_back({7, "composite covers with prescribed n-rank support", 120.0,
                        [](std::vector<std::string>& notes) {
        auto C = exceptional_f3_curve();
        for (Z n : {2, 3, 6}) {
            NRankCover R = build_nrank_cover(C, n);
            require(to_mpz(R.genus) < to_mpz(R.genus_bound),
                    "7ng genus bound at n = " + std::to_string(n));
            require(hurwitz_genus(R.cover) == R.genus, "stored genus");
            if (R.genus <= 5) {
                auto L = cover_l_polynomial(R.cover);
                mpz_class rk = 1;
                for (int i = 0; i < R.d - 2; ++i) rk *= to_mpz(R.r);
                require(L.at_one() % rk == 0,
                        "r^(d-2) must divide the Jacobian order");
                notes.push_back("n = " + std::to_string(n) + ": genus " +
                                std::to_string(R.genus) + " < " +
                                std::to_string(R.genus_bound) + ", |J_B| = " +
                                L.at_one().get_str() + " (d = " +
                                std::to_string(R.d) +
                                ", so the divisibility check is the trivial "
                                "r^0 = 1 at this scale)");
            } else {
                notes.push_back("n = " + std::to_string(n) + ": genus " +
                                std::to_string(R.genus) + " < " +
                                std::to_string(R.genus_bound) +
                                " (L-polynomial skipped, genus > 5)");
            }
        }
    }});

    criteria.push_back({8, "totally split covers at d = 2 over F_3 and F_5", 60.0,
                        [](std::vector<std::string>&) {
        for (Z q : {3, 5}) {
            auto C = parse_curve_spec("pline p=" + std::to_string(q) + " k=1");
            // d = h - 2g + 1 = 2 means h = 1
            CoverSpec B = build_splitting_cover(C, 1); // throws NoSplittingPair
            require(cover_count_points(B, 1) == 2 * (q + 1),
                    "split cover count");
        }
    }});

    criteria.push_back({9, "golden-table stability and sandwich", 60.0,
                        [](std::vector<std::string>&) {
        std::ifstream in(MANYPOINTS_GOLDEN_FILE);
        require(in.good(), "golden file present");
        std::ostringstream ss;
        ss << in.rdbuf();
        require(oracle::golden_json() == ss.str(),
                "golden table regenerates byte-identically");
        for (Z q : {2, 3, 4, 5})
            for (int g : {0, 1, 2}) {
                Z v = oracle::brute_nq(q, g);
                auto b = classical_bounds(q, g);
                require(mpq_class(to_mpz(v)) <= b.serre_upper.value.rational &&
                            v >= 1,
                        "refined-Weil sandwich");
            }
    }});

    int failures = 0;
    for (auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::vector<std::string> notes;
        std::string verdict = "PASS";
        std::string detail;
        try {
            c.run(notes);
        } catch (const Failure& f) {
            verdict = "FAIL";
            detail = f.what();
        } catch (const DomainError& e) {
            verdict = "FAIL";
            detail = e.what();
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (verdict == "PASS" && secs > c.time_limit_s) {
            verdict = "FAIL";
            detail = "over the " + std::to_string(c.time_limit_s) + "s budget";
        }
        if (verdict == "FAIL") ++failures;
        std::printf("[%s] criterion %d: %s (%.1fs)\n", verdict.c_str(), c.number,
                    c.name.c_str(), secs);
        if (!detail.empty()) std::printf("       reason: %s\n", detail.c_str());
        for (auto& n : notes) std::printf("       note: %s\n", n.c_str());
        if (c.number == 8 && verdict == "FAIL") {
            std::printf(
                "       NOTE: infeasible as stated. d = 2 on the projective line "
                "forces a genus-1 cover with 2(q+1) rational points, above the\n"
                "       genus-1 Weil bound (7 over F_3, 10 over F_5); exhaustively, "
                "no pair of degree-2 places has matching local square classes\n"
                "       at all rational places. Splitting covers do exist one "
                "degree up: d = 4 over F_3 and d = 3 over F_5 (see the cover "
                "tests).\n");
        }
    }
    std::printf("%d/%zu criteria passed\n", (int)criteria.size() - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
