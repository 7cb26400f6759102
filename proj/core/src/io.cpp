#include "manypoints/io.hpp"

#include <json.hpp>
#include <sstream>

namespace manypoints {

using nlohmann::json;

namespace {

std::map<std::string, std::string> split_kv(const std::string& s, size_t start) {
    std::map<std::string, std::string> kv;
    size_t i = start;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') ++i;
        if (i >= s.size()) break;
        size_t eq = s.find('=', i);
        if (eq == std::string::npos) fail(Err::ParseError, "expected key=value in: " + s);
        std::string key = s.substr(i, eq - i);
        size_t j = eq + 1;
        int depth = 0;
        while (j < s.size() && (depth > 0 || s[j] != ' ')) {
            if (s[j] == '[') ++depth;
            if (s[j] == ']') --depth;
            ++j;
        }
        kv[key] = s.substr(eq + 1, j - eq - 1);
        i = j;
    }
    return kv;
}

FieldElem elem_from_json(const FieldCtx& F, const json& j) {
    if (j.is_number_integer()) return FieldElem::from_int(F, j.get<Z>());
    if (j.is_array()) {
        std::vector<Z> c(F.k, 0);
        if ((int)j.size() > F.k)
            fail(Err::ParseError, "coefficient vector longer than extension degree");
        for (size_t i = 0; i < j.size(); ++i) {
            if (!j[i].is_number_integer()) fail(Err::ParseError, "bad residue entry");
            c[i] = j[i].get<Z>();
        }
        return FieldElem(F, std::move(c));
    }
    fail(Err::ParseError, "bad field element literal");
}

} // namespace

Poly parse_poly_brackets(const FieldCtx& ctx, const std::string& brackets) {
    json j;
    try {
        j = json::parse(brackets);
    } catch (const std::exception& e) {
        fail(Err::ParseError, std::string("bad coefficient list: ") + e.what());
    }
    if (!j.is_array()) fail(Err::ParseError, "coefficient list must be an array");
    std::vector<FieldElem> c;
    for (auto& entry : j) c.push_back(elem_from_json(ctx, entry));
    return Poly(ctx, std::move(c));
}

std::string render_poly_brackets(const Poly& f) {
    const FieldCtx& F = f.ctx();
    json j = json::array();
    for (auto& c : f.coeffs()) {
        if (F.k == 1) {
            j.push_back(c.coeffs()[0]);
        } else {
            json e = json::array();
            for (Z v : c.coeffs()) e.push_back(v);
            j.push_back(e);
        }
    }
    return j.dump();
}

CurveModel parse_curve_spec(const std::string& spec) {
    std::istringstream is(spec);
    std::string kind;
    is >> kind;
    auto kv = split_kv(spec, kind.size());
    auto need = [&](const std::string& key) {
        auto it = kv.find(key);
        if (it == kv.end()) fail(Err::ParseError, "missing " + key + " in curve spec");
        return it->second;
    };
    Z p = 0;
    int k = 0;
    try {
        p = std::stoll(need("p"));
        k = std::stoi(need("k"));
    } catch (const std::exception&) {
        fail(Err::ParseError, "bad p/k in curve spec");
    }
    auto F = FieldCtx::get(p, k);
    if (kind == "pline") return CurveModel::projective_line(F);
    if (kind == "hyperelliptic") {
        Poly f = parse_poly_brackets(*F, need("f"));
        Poly h = kv.count("h") ? parse_poly_brackets(*F, kv["h"]) : Poly::zero(*F);
        return CurveModel::hyperelliptic(F, std::move(f), std::move(h));
    }
    fail(Err::ParseError, "unknown curve kind '" + kind + "'");
}

std::string render_curve_spec(const CurveModel& C) {
    std::ostringstream os;
    if (C.is_pline()) {
        os << "pline p=" << C.field->p << " k=" << C.field->k;
        return os.str();
    }
    os << "hyperelliptic p=" << C.field->p << " k=" << C.field->k
       << " f=" << render_poly_brackets(C.f) << " h=" << render_poly_brackets(C.h);
    return os.str();
}

std::string render_weil_report_json(const WeilReport& R) {
    nlohmann::ordered_json j;
    j["functional_equation"] = R.functional_equation;
    j["weil_interval"] = R.weil_interval;
    j["serre_refined"] = R.serre_refined;
    j["root_moduli_max_err"] = R.root_moduli_max_err;
    return j.dump();
}

} // namespace manypoints
