#include "manypoints/oracle.hpp"

#include <json.hpp>
#include <set>

#include "manypoints/jacobian.hpp"

namespace manypoints {
namespace oracle {

Z brute_places(const CurveModel& C, int d, Z budget) {
    // collect all points of C(F_{q^d}) and partition into Frobenius orbits
    std::set<std::pair<Z, Z>> points; // (ix, iy); infinity excluded
    const FieldCtx* ext = nullptr;
    for_each_point(C, d, [&](bool inf, const FieldElem& x, const FieldElem& y) {
        if (inf) return;
        ext = x.ctx_ptr();
        points.emplace(x.index(), y.index());
    }, budget);
    Z q = C.q();
    Z orbits_of_size_d = 0;
    std::set<std::pair<Z, Z>> seen;
    for (auto& pt : points) {
        if (seen.count(pt)) continue;
        // walk the orbit
        FieldElem x = FieldElem::from_index(*ext, pt.first);
        FieldElem y = FieldElem::from_index(*ext, pt.second);
        int size = 0;
        std::pair<Z, Z> cur = pt;
        do {
            seen.insert(cur);
            ++size;
            x = x.pow(q);
            y = y.pow(q);
            cur = {x.index(), y.index()};
        } while (cur != pt);
        if (size == d) ++orbits_of_size_d;
    }
    if (d == 1) ++orbits_of_size_d; // the infinite place
    return orbits_of_size_d;
}

Z brute_nq(Z q, int g) {
    if (q > 5) fail(Err::BudgetExceeded, "exhaustive model sweep limited to q <= 5");
    if (g < 0 || g > 2) fail(Err::BudgetExceeded, "exhaustive sweep limited to g <= 2");
    Z p = (q == 4) ? 2 : q;
    int kk = (q == 4) ? 2 : 1;
    auto F = FieldCtx::get(p, kk);
    if (g == 0) return q + 1;

    Z best = 0;
    auto consider = [&](Poly f, Poly h) {
        try {
            CurveModel C = CurveModel::hyperelliptic(F, std::move(f), std::move(h));
            best = std::max(best, count_points(C, 1));
        } catch (const DomainError&) {
            // singular or malformed model: skip
        }
    };
    int degf = 2 * g + 1;
    if (p != 2) {
        for_each_monic(*F, degf, [&](const Poly& f) {
            consider(f, Poly::zero(*F));
            return true;
        });
    } else {
        // sweep all nonzero h of degree <= g alongside monic f
        Z hcount = 1;
        for (int i = 0; i <= g; ++i) hcount *= q;
        for (Z hidx = 1; hidx < hcount; ++hidx) {
            std::vector<FieldElem> hc;
            Z r = hidx;
            for (int i = 0; i <= g; ++i) {
                hc.push_back(FieldElem::from_index(*F, r % q));
                r /= q;
            }
            Poly h(*F, std::move(hc));
            for_each_monic(*F, degf, [&](const Poly& f) {
                consider(f, h);
                return true;
            });
        }
    }
    return best;
}

GroupStructure brute_jacobian(const CurveModel& C) {
    return jacobian_structure_by_closure(C);
}

Z brute_kummer_cover_count(const FieldPtr& field, const Poly& num, const Poly& den,
                           int m, Z budget) {
    // plane model w^2 = num(x) * den(x); adds the two rational points at
    // infinity of the (even-degree, monic) real model when deg(num*den) is
    // even, matching the cover's split infinite place
    if (field->p == 2) fail(Err::UnsupportedShape, "plane Kummer model needs odd q");
    auto ext = FieldCtx::get(field->p, field->k * m);
    const Embedding& e = get_embedding(field, ext);
    if (ext->q > budget) fail(Err::BudgetExceeded, "plane model enumeration");
    Poly prod = e.map_poly(num * den);
    Z n = 0;
    for (Z i = 0; i < ext->q; ++i) {
        FieldElem x = FieldElem::from_index(*ext, i);
        FieldElem v = prod.eval(x);
        if (v.is_zero())
            n += 1;
        else if (v.is_square())
            n += 2;
    }
    if ((num.degree() + den.degree()) % 2 == 0 && (num.lc() * den.lc()).is_square())
        n += 2;
    else if ((num.degree() + den.degree()) % 2 == 0)
        n += 0;
    else
        n += 1;
    return n;
}

std::string golden_json() {
    nlohmann::ordered_json j;
    j["table"] = "oracle_nq";
    j["model_class"] = "imaginary hyperelliptic (rational Weierstrass point)";
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (Z q : {2, 3, 4, 5}) {
        for (int g : {0, 1, 2}) {
            nlohmann::ordered_json row;
            row["q"] = q;
            row["g"] = g;
            row["value"] = brute_nq(q, g);
            rows.push_back(row);
        }
    }
    j["nq"] = rows;
    return j.dump(2) + "\n";
}

} // namespace oracle
} // namespace manypoints
