// Batch command-line front end: every operation of the library behind
// stable text/JSON/CSV output. No interactive mode; no randomness.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "manypoints/bounds.hpp"
#include "manypoints/covers.hpp"
#include "manypoints/io.hpp"
#include "manypoints/jacobian.hpp"
#include "manypoints/oracle.hpp"

using namespace manypoints;
using ojson = nlohmann::ordered_json;

namespace {

std::string g_format = "json";
int g_jobs = 1;

ojson num(const mpz_class& v) {
    if (v >= -((long)1 << 52) && v <= ((long)1 << 52)) return v.get_si();
    return v.get_str();
}

ojson value_json(const NumberVal& v) {
    ojson j;
    if (v.exact) {
        j["exact"] = true;
        if (v.rational.get_den() == 1)
            j["value"] = num(v.rational.get_num());
        else
            j["value"] = v.rational.get_str();
    } else {
        j["exact"] = false;
        j["value"] = v.decimal;
        j["lo"] = v.lo;
        j["hi"] = v.hi;
    }
    return j;
}

ojson report_json(const BoundReport& r) {
    ojson j;
    j["id"] = r.id;
    ojson v = value_json(r.value);
    for (auto& [k, val] : v.items()) j[k] = val;
    if (r.has_flag) j["satisfied"] = r.flag;
    j["provenance"] = r.provenance;
    if (!r.inputs.empty()) {
        ojson in;
        for (auto& [k, val] : r.inputs) in[k] = val;
        j["inputs"] = in;
    }
    return j;
}

void emit(const ojson& j) {
    if (g_format == "text") {
        std::function<void(const ojson&, std::string)> walk =
            [&](const ojson& node, std::string prefix) {
                if (node.is_object()) {
                    for (auto& [k, v] : node.items())
                        walk(v, prefix.empty() ? k : prefix + "." + k);
                } else if (node.is_array()) {
                    int i = 0;
                    for (auto& v : node) walk(v, prefix + "[" + std::to_string(i++) + "]");
                } else {
                    std::cout << prefix << ": "
                              << (node.is_string() ? node.get<std::string>() : node.dump())
                              << "\n";
                }
            };
        walk(j, "");
        return;
    }
    std::cout << j.dump(2) << "\n";
}

mpz_class parse_big_q(const std::string& s) {
    try {
        auto caret = s.find('^');
        if (caret == std::string::npos) return mpz_class(s);
        mpz_class p(s.substr(0, caret));
        unsigned long a = std::stoul(s.substr(caret + 1));
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), a);
        return r;
    } catch (const std::invalid_argument&) {
        fail(Err::ParseError, "bad q literal: " + s);
    }
}

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) fail(Err::ParseError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact curve/point-count/cover/bound calculator over finite fields"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);
    app.add_option("--format", g_format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--jobs", g_jobs, "worker fan-out for enumeration sweeps")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    std::string spec, cover_path, which, variant = "i", qbig, check_path;
    Z q = 0, d = 1, ell = 2, rr = 2, ss = 1, nn = 2, jq = 1;
    int m = 1, h = 0, g = 0, gmax = 8, gg = 0;
    bool find_flag = false, generic = false, place_ram = false, construct = false;
    std::string gamma_s, H_s, M_s, R2_s;
    Z S_in = -1, gc_in = -1, pp = 0;

    auto* curve = app.add_subcommand("curve", "curve models, counts, places");
    curve->require_subcommand(1);
    auto* cinfo = curve->add_subcommand("info", "validate; genus, zeta data, Weil report");
    cinfo->add_option("--spec", spec)->required();
    auto* ccount = curve->add_subcommand("count", "#C(F_{q^m}) by enumeration");
    ccount->set_help_flag("--help", "print help");
    ccount->add_option("--spec", spec)->required();
    ccount->add_option("--m", m)->required();
    auto* cplaces = curve->add_subcommand("places", "n_d and optionally the first place");
    cplaces->set_help_flag("--help", "print help");
    cplaces->add_option("--spec", spec)->required();
    cplaces->add_option("--d", d)->required();
    cplaces->add_flag("--find", find_flag);
    cplaces->add_flag("--generic", generic);

    auto* jac = app.add_subcommand("jac", "Jacobian group structure");
    jac->require_subcommand(1);
    auto* jstruct = jac->add_subcommand("structure", "order, invariant factors, generators");
    jstruct->set_help_flag("--help", "print help");
    jstruct->add_option("--spec", spec)->required();

    auto* cover = app.add_subcommand("cover", "degree-2 and composite covers");
    cover->require_subcommand(1);
    auto* cbuild = cover->add_subcommand("build", "cover of prescribed genus");
    cbuild->set_help_flag("--help", "print help");
    cbuild->add_option("--spec", spec)->required();
    cbuild->add_option("--h", h)->required();
    cbuild->add_flag("--place-ramified", place_ram,
                     "force the single-place-ramified Artin-Schreier branch");
    auto* ctwist = cover->add_subcommand("twist", "pick the cover or its quadratic twist");
    ctwist->set_help_flag("--help", "print help");
    ctwist->add_option("--cover", cover_path, "cover JSON file ('-' for stdin)")->required();
    auto* csplit = cover->add_subcommand("split", "cover in which every rational place splits");
    csplit->set_help_flag("--help", "print help");
    csplit->add_option("--spec", spec)->required();
    csplit->add_option("--h", h)->required();
    auto* cnrank = cover->add_subcommand("nrank", "composite cover with large n-rank");
    cnrank->set_help_flag("--help", "print help");
    cnrank->add_option("--spec", spec)->required();
    cnrank->add_option("--n", nn)->required();

    auto* bounds = app.add_subcommand("bounds", "closed-form bound calculus");
    bounds->require_subcommand(1);
    auto* btable = bounds->add_subcommand("table", "N_q(g) lower bounds with provenance");
    btable->set_help_flag("--help", "print help");
    btable->add_option("--q", q)->required();
    btable->add_option("--gmax", gmax);
    btable->add_flag("--construct", construct, "add constructed-cover certificates");
    auto* bgs = bounds->add_subcommand("gs", "Golod-Shafarevich tower criterion");
    bgs->set_help_flag("--help", "print help");
    bgs->add_option("--ell", ell)->required();
    bgs->add_option("--q", qbig)->required();
    bgs->add_option("--r", rr)->required();
    bgs->add_option("--s", ss)->required();
    auto* bserre = bounds->add_subcommand("serre", "tower parameter bundle for odd q");
    bserre->set_help_flag("--help", "print help");
    bserre->add_option("--q", qbig, "odd prime power, plain or p^a")->required();
    auto* bformula = bounds->add_subcommand("formula", "single formula evaluation");
    bformula->set_help_flag("--help", "print help");
    bformula->add_option("--which", which)
        ->required()
        ->check(CLI::IsMember({"classical", "lemma21", "thm12", "cor62", "hc",
                               "bounding_data", "liminf_quarter", "cft_gamma",
                               "modular"}));
    bformula->add_option("--q", q);
    bformula->add_option("--g", gg);
    bformula->add_option("--d", d);
    bformula->add_option("--variant", variant)
        ->check(CLI::IsMember({"i", "ii", "iii", "iv"}));
    bformula->add_option("--j", jq);
    bformula->add_option("--gamma", gamma_s);
    bformula->add_option("--H", H_s);
    bformula->add_option("--M", M_s);
    bformula->add_option("--R2", R2_s);
    bformula->add_option("--S", S_in);
    bformula->add_option("--gc", gc_in);
    bformula->add_option("--ell", ell);
    bformula->add_option("--p", pp);

    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force ground truth");
    oracle_cmd->require_subcommand(1);
    auto* onq = oracle_cmd->add_subcommand("nq", "exact small-genus model sweep");
    onq->set_help_flag("--help", "print help");
    onq->add_option("--q", q)->required();
    onq->add_option("--g", g)->required();
    auto* ogolden = oracle_cmd->add_subcommand("golden", "regenerate the golden table");
    ogolden->set_help_flag("--help", "print help");
    ogolden->add_option("--check", check_path, "compare against a golden file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (cinfo->parsed()) {
            CurveModel C = parse_curve_spec(spec);
            ojson j;
            j["spec"] = render_curve_spec(C);
            j["p"] = C.field->p;
            j["k"] = C.field->k;
            j["q"] = C.q();
            j["kind"] = C.is_pline() ? "pline" : "hyperelliptic";
            j["genus"] = C.genus;
            LPolynomial L = l_polynomial(C);
            ojson lb = ojson::array();
            for (auto& b : L.b) lb.push_back(num(b));
            j["l_polynomial"] = lb;
            j["jacobian_order"] = num(L.at_one());
            WeilReport R = weil_verify(C);
            j["weil"] = ojson::parse(render_weil_report_json(R));
            emit(j);
        } else if (ccount->parsed()) {
            CurveModel C = parse_curve_spec(spec);
            ojson j;
            j["count"] = count_points(C, m, kEnumBudget, g_jobs);
            emit(j);
        } else if (cplaces->parsed()) {
            CurveModel C = parse_curve_spec(spec);
            ojson j;
            j["n_d"] = num(place_count_nd(C, (int)d));
            if (find_flag) {
                Place P = find_place(C, (int)d, generic);
                ojson pj;
                pj["degree"] = P.degree;
                pj["at_infinity"] = P.at_infinity;
                if (!P.at_infinity) {
                    pj["x"] = P.x.render();
                    pj["y"] = P.y.render();
                }
                j["place"] = pj;
            }
            emit(j);
        } else if (jstruct->parsed()) {
            CurveModel C = parse_curve_spec(spec);
            Jacobian J(C);
            const GroupStructure& S = J.structure();
            ojson j;
            j["order"] = num(S.order);
            ojson fs = ojson::array();
            for (Z f : S.invariant_factors) fs.push_back(f);
            j["invariant_factors"] = fs;
            ojson gens = ojson::array();
            for (auto& D : S.generators) gens.push_back(render_divisor(D));
            j["generators"] = gens;
            emit(j);
        } else if (cbuild->parsed()) {
            CurveModel C = parse_curve_spec(spec);
            CoverSpec B = (C.q() % 2 == 0) ? build_as_cover(C, h, place_ram)
                                           : build_kummer_cover(C, h);
            std::cout << render_cover_json(B) << "\n";
        } else if (ctwist->parsed()) {
            CoverSpec B = parse_cover_json(slurp(cover_path));
            CoverSpec W = select_twist(B);
            std::cout << render_cover_json(W) << "\n";
        } else if (csplit->parsed()) {
            CurveModel C = parse_curve_spec(spec);
            CoverSpec B = build_splitting_cover(C, h);
            std::cout << render_cover_json(B) << "\n";
        } else if (cnrank->parsed()) {
            CurveModel C = parse_curve_spec(spec);
            NRankCover R = build_nrank_cover(C, nn);
            ojson j;
            j["cover"] = ojson::parse(render_cover_json(R.cover));
            j["d"] = R.d;
            j["r"] = R.r;
            j["pe"] = R.pe;
            j["genus"] = R.genus;
            j["genus_bound_7ng"] = R.genus_bound;
            emit(j);
        } else if (btable->parsed()) {
            auto rows = nq_lower_table(q, gmax, construct, g_jobs);
            if (g_format == "csv") {
                std::cout << "q,g,lower_bound,source,citation\n";
                for (auto& r : rows) {
                    std::string cite = r.citation;
                    for (auto& ch : cite)
                        if (ch == ',') ch = ';';
                    std::cout << r.q << "," << r.g << "," << r.lower_bound.get_str()
                              << "," << r.source << "," << cite << "\n";
                }
            } else {
                ojson j = ojson::array();
                for (auto& r : rows) {
                    ojson row;
                    row["q"] = r.q;
                    row["g"] = r.g;
                    row["lower_bound"] = num(r.lower_bound);
                    row["source"] = r.source;
                    row["citation"] = r.citation;
                    j.push_back(row);
                }
                emit(j);
            }
        } else if (bgs->parsed()) {
            BoundReport r = golod_shafarevich(ell, parse_big_q(qbig), rr, ss);
            ojson j;
            j["satisfied"] = r.flag;
            std::string lhs, rhs, branch;
            for (auto& [k, v] : r.inputs) {
                if (k == "lhs") lhs = v;
                if (k == "rhs") rhs = v;
                if (k == "branch") branch = v;
            }
            j["lhs"] = lhs;
            j["rhs"] = rhs;
            j["branch"] = branch;
            emit(j);
        } else if (bserre->parsed()) {
            auto t = serre_tower_params(parse_big_q(qbig));
            ojson j;
            j["r"] = t.r;
            j["base_genus"] = t.base_genus;
            j["cover_genus"] = num(t.cover_genus);
            j["n_lower"] = value_json(t.n_lower);
            j["split_budget"] = t.split_budget;
            if (t.gamma_contribution)
                j["gamma_contribution"] = t.gamma_contribution->get_str();
            j["feasible"] = t.feasible;
            emit(j);
        } else if (bformula->parsed()) {
            auto parse_q_opt = [&](const std::string& s) -> std::optional<mpq_class> {
                if (s.empty()) return std::nullopt;
                return mpq_class(s);
            };
            if (which == "classical") {
                auto b = classical_bounds(q, gg);
                ojson j;
                j["weil_upper"] = report_json(b.weil_upper);
                j["serre_lower"] = report_json(b.serre_lower);
                j["serre_upper"] = report_json(b.serre_upper);
                j["dv_slope"] = report_json(b.dv_slope);
                emit(j);
            } else if (which == "lemma21") {
                Lemma21Variant v = variant == "i"     ? Lemma21Variant::I
                                   : variant == "ii"  ? Lemma21Variant::II
                                   : variant == "iii" ? Lemma21Variant::III
                                                      : Lemma21Variant::IV;
                std::optional<Z> j_opt;
                if (v == Lemma21Variant::IV) j_opt = jq;
                emit(report_json(lemma21(q, gg, d, v, j_opt)));
            } else if (which == "modular") {
                auto mfs = modular_formulas(ell, pp);
                ojson j;
                j["genus"] = report_json(mfs.genus);
                j["supersingular_bound"] = report_json(mfs.supersingular_bound);
                emit(j);
            } else {
                ThmParams params;
                if (q) params.q = q;
                params.gamma = parse_q_opt(gamma_s);
                params.H = parse_q_opt(H_s);
                params.M = parse_q_opt(M_s);
                params.R2 = parse_q_opt(R2_s);
                if (S_in >= 0) params.S = S_in;
                if (gc_in >= 0) params.gC = gc_in;
                params.ell = ell;
                ThmFormula f = which == "thm12"            ? ThmFormula::Thm12
                               : which == "cor62"          ? ThmFormula::Cor62
                               : which == "hc"             ? ThmFormula::HC
                               : which == "bounding_data"  ? ThmFormula::BoundingData
                               : which == "liminf_quarter" ? ThmFormula::LiminfQuarter
                                                           : ThmFormula::CftGamma;
                emit(report_json(thm_bounds(f, params)));
            }
        } else if (onq->parsed()) {
            ojson j;
            j["q"] = q;
            j["g"] = g;
            j["value"] = oracle::brute_nq(q, g);
            emit(j);
        } else if (ogolden->parsed()) {
            std::string golden = oracle::golden_json();
            if (!check_path.empty()) {
                std::string disk = slurp(check_path);
                if (disk != golden) {
                    ojson j;
                    j["error"] = "GoldenMismatch";
                    j["detail"] = "regenerated golden table differs from " + check_path;
                    std::cout << j.dump(2) << "\n";
                    return 2;
                }
                ojson j;
                j["golden"] = "ok";
                emit(j);
            } else {
                std::cout << golden;
            }
        }
    } catch (const DomainError& e) {
        if (e.code() == Err::ParseError) {
            std::cerr << "parse error: " << e.detail() << "\n";
            return 1;
        }
        ojson j;
        j["error"] = err_name(e.code());
        j["detail"] = e.detail();
        std::cout << j.dump(2) << "\n";
        return 2;
    }
    return 0;
}
