#ifndef MANYPOINTS_BOUNDS_HPP
#define MANYPOINTS_BOUNDS_HPP

#include <map>
#include <optional>

#include "manypoints/curve.hpp"
#include "manypoints/interval.hpp"

namespace manypoints {

/*
 * Closed-form bound calculus. Every value is exact rational whenever the
 * inputs permit; transcendental quantities are certified enclosures with
 * 50-digit decimal rendering and directed endpoints.
 */
struct NumberVal {
    bool exact = true;
    mpq_class rational;  // when exact
    std::string decimal; // 50 significant digits otherwise
    std::string lo, hi;  // certified enclosure endpoints otherwise
    // exact dyadic endpoints of the enclosure (valid when !exact)
    mpq_class enclosure_lo, enclosure_hi;

    static NumberVal from_mpq(mpq_class v);
    static NumberVal from_interval(const Interval& v);
    std::string str() const; // "a/b" or the decimal
    // certified bounds usable for either representation
    mpq_class certified_lo() const { return exact ? rational : enclosure_lo; }
    mpq_class certified_hi() const { return exact ? rational : enclosure_hi; }
};

struct BoundReport {
    std::string id;
    NumberVal value;
    bool has_flag = false;
    bool flag = false; // hypothesis satisfied / criterion outcome
    std::string provenance;
    std::vector<std::pair<std::string, std::string>> inputs;
};

// q = p^a or NotPrimePower
std::pair<Z, int> split_prime_power(Z q);

struct ClassicalBounds {
    BoundReport weil_upper;   // (2 sqrt q) g + q + 1
    BoundReport serre_lower;  // q + 1 - g floor(2 sqrt q)
    BoundReport serre_upper;  // q + 1 + g floor(2 sqrt q)
    BoundReport dv_slope;     // sqrt(q) - 1
};
ClassicalBounds classical_bounds(Z q, int g);

enum class Lemma21Variant { I, II, III, IV };
BoundReport lemma21(Z q, Z g, Z d, Lemma21Variant variant,
                    std::optional<Z> j = std::nullopt);

struct SeqEntry {
    Z genus = 0;
    Z count = 0;
    Z r2 = 0;
    Z rn = 0;
};
struct SequenceStats {
    std::vector<SeqEntry> entries;
    mpq_class gamma;  // min count_i / genus_{i+1}
    mpq_class beta;   // min genus_i / genus_{i+1}
    mpq_class rho_n;  // min rn_i / genus_{i+1}
    mpq_class r2_sup; // max r2_i / genus_i
};
SequenceStats sequence_stats(const std::vector<SeqEntry>& entries);

enum class ThmFormula { LiminfQuarter, CftGamma, Thm12, HC, BoundingData, Cor62 };
struct ThmParams {
    std::optional<Z> q;
    std::optional<mpq_class> gamma;
    std::optional<mpq_class> H, M;
    std::optional<mpq_class> R2;
    std::optional<Z> S;      // #S
    std::optional<Z> gC;     // genus of the tower base
    std::optional<Z> ell;    // prime of the tower
};
BoundReport thm_bounds(ThmFormula which, const ThmParams& params);

// (r-2)^2/4 >= 1 + s when ell | q - 1, else >= s; exact rational comparison
BoundReport golod_shafarevich(Z ell, const mpz_class& q, Z r, Z s);

struct ModularFormulas {
    BoundReport genus;              // g(X_0(ell))
    BoundReport supersingular_bound; // (p-1)(ell+1)/12 over F_{p^2}
};
ModularFormulas modular_formulas(Z ell, Z p);

struct SerreTowerParams {
    Z r = 0;                  // even integer nearest (log2 q)/3
    Z base_genus = 0;         // r/2
    mpz_class cover_genus;    // 1 + 2^r (r/2 - 1)
    NumberVal n_lower;        // q + 1 - 2 sqrt(q) 2^r (r/2 - 1)
    Z split_budget = 0;       // floor((r-2)^2/4 - 1)
    std::optional<mpq_class> gamma_contribution; // S / (2 (g-1))
    bool feasible = false;
};
SerreTowerParams serre_tower_params(const mpz_class& q);

struct NqRow {
    Z q = 0;
    int g = 0;
    mpz_class lower_bound;
    std::string source;
    std::string citation;
};
std::vector<NqRow> nq_lower_table(Z q, int g_max, bool construct_covers = false,
                                  int jobs = 1);

// certified sign of (1 + m/2) - threshold, m = (log2/log q)(sqrt q + 1)
int crossover_cmp(Z q, const mpq_class& threshold);
// certified sign of (1 + m/2) - (2 + log4/log q)
int crossover_cmp_hc(Z q);
// odd prime powers in [lo, hi], ascending
std::vector<Z> odd_prime_powers(Z lo, Z hi);

} // namespace manypoints

#endif
