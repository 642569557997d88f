#include "kummerlab/json_io.hpp"

namespace kummerlab {

using nlohmann::json;

json to_json(const Integer& n) {
    if (n.fits_slong_p()) {
        long v = n.get_si();
        if (v >= -(1L << 52) && v <= (1L << 52)) return v;
    }
    return n.get_str();
}

json to_json(const Rational& q) {
    if (q.get_den() == 1) return to_json(Integer(q.get_num()));
    return q.get_str();
}

json to_json(const SquareClass& c) { return to_json(c.rep()); }

json to_json(const CoordinatePair& p) { return json::array({to_json(p[0]), to_json(p[1])}); }

json to_json(const CohClass& c) {
    json j = json::array();
    for (const auto& x : c.coords()) j.push_back(to_json(x));
    return j;
}

json to_json(const BVector& b) {
    json j = json::array();
    for (const auto& x : b.entries()) j.push_back(to_json(x));
    return j;
}

json to_json(const SelmerGroup& sel) {
    json j;
    j["schema"] = kSchema;
    j["curve"] = {{"c", {to_json(sel.curve.c[0]), to_json(sel.curve.c[1]),
                         to_json(sel.curve.c[2])}},
                  {"d", to_json(sel.curve.d)}};
    j["dim"] = sel.dim();
    json supp = json::array();
    for (const auto& s : sel.support) supp.push_back(to_json(s));
    j["support"] = supp;
    json basis = json::array();
    for (const auto& b : sel.basis) basis.push_back(to_json(b));
    j["basis"] = basis;
    return j;
}

json to_json(const MazurRubinReport& rep) {
    json j;
    j["schema"] = kSchema;
    j["d"] = to_json(rep.d);
    json T = json::array();
    for (const auto& w : rep.T) T.push_back(to_json(w));
    j["T"] = T;
    j["r"] = rep.r;
    j["dim_VT"] = rep.dim_VT;
    j["dim_VT_twist"] = rep.dim_VT_twist;
    j["gap"] = rep.gap;
    j["dim_sel"] = rep.dim_sel;
    j["dim_sel_twist"] = rep.dim_sel_twist;
    json places = json::array();
    for (const auto& p : rep.places) {
        json pj;
        pj["w"] = to_json(p.w);
        pj["dim_W"] = p.dim_W;
        pj["dim_U"] = p.dim_U;
        pj["dim_Wbar"] = p.dim_Wbar;
        json ub = json::array();
        for (const auto& u : p.U_basis) ub.push_back(to_json(u));
        pj["U_basis"] = ub;
        places.push_back(pj);
    }
    j["places"] = places;
    return j;
}

json to_json(const TwoStructureResult& res) {
    json j;
    j["schema"] = kSchema;
    j["accept"] = res.accepted();
    if (!res.accepted()) {
        j["violated_condition"] = res.violated_condition;
        j["detail"] = res.detail;
        return j;
    }
    const auto& ts = *res.certificate;
    j["extended"] = ts.extended;
    json certs = json::array();
    for (const auto& c : ts.certificates) {
        json cj;
        cj["w"] = to_json(c.w);
        cj["curve"] = c.curve_index;
        cj["colliding_pair"] = {c.colliding_pair[0], c.colliding_pair[1]};
        certs.push_back(cj);
    }
    j["certificates"] = certs;
    return j;
}

json to_json(const AdmissibilityReport& rep, const TwoStructure& ts) {
    json j;
    j["schema"] = kSchema;
    j["admissible"] = rep.admissible;
    if (rep.witness) {
        const int n = static_cast<int>(ts.M.size());
        json f = json::array(), h = json::array();
        for (int i = 0; i < n; ++i) f.push_back(static_cast<int>(rep.witness->first >> i & 1));
        for (int wi = 0; wi < n; ++wi) {
            json row = json::array();
            for (int ui = 0; ui < n; ++ui)
                row.push_back(static_cast<int>(rep.witness->second >> (wi * n + ui) & 1));
            h.push_back(row);
        }
        j["witness"] = {{"f", f}, {"h", h}};
    }
    return j;
}

json to_json(const HypothesisReport& rep) {
    json j;
    j["schema"] = kSchema;
    j["accept"] = rep.accepted();
    j["nondegenerate_ratios"] = rep.nondegenerate_ratios;
    j["valuation_pattern"] = rep.valuation_pattern;
    j["ratios_units"] = rep.ratios_units;
    j["ratios_not_all_squares"] = rep.ratios_not_all_squares;
    j["alpha_unramified_nontrivial"] = rep.alpha_unramified_nontrivial;
    if (!rep.accepted()) {
        j["violated_condition"] = rep.violated();
        j["detail"] = rep.detail;
    }
    return j;
}

json to_json(const std::array<QuadricForm, 3>& forms) {
    json j;
    j["schema"] = kSchema;
    json fs = json::array();
    for (const auto& f : forms) {
        json row = json::array();
        for (const auto& q : f.q) row.push_back(to_json(q));
        fs.push_back(row);
    }
    j["forms"] = fs;
    return j;
}

json to_json(const SolubilityCertificate& cert) {
    json j;
    j["schema"] = kSchema;
    j["els"] = cert.els;
    j["undecided"] = cert.undecided;
    if (cert.failing_place) j["failing_place"] = cert.failing_place->str();
    j["good_reduction_bound"] = to_json(cert.good_reduction_bound);
    j["assumption"] = cert.assumption;
    json vs = json::array();
    for (const auto& v : cert.verdicts) {
        json vj;
        vj["place"] = v.place.str();
        vj["verdict"] = v.verdict == LocalVerdict::soluble
                            ? "soluble"
                            : (v.verdict == LocalVerdict::insoluble ? "insoluble"
                                                                    : "undecided");
        if (v.witness) {
            json pt = json::array();
            for (long long c : v.witness->point) pt.push_back(c);
            vj["point"] = pt;
            vj["precision"] = v.witness->precision;
            vj["minor_valuation"] = v.witness->minor_valuation;
        }
        if (v.real_squares) {
            json sq = json::array();
            for (const auto& s : *v.real_squares) sq.push_back(to_json(s));
            vj["squares"] = sq;
        }
        if (!v.reason.empty()) vj["reason"] = v.reason;
        vs.push_back(vj);
    }
    j["verdicts"] = vs;
    return j;
}

Integer integer_from_json(const json& j, const char* field) {
    try {
        if (j.is_number_integer()) return Integer(static_cast<long>(j.get<long long>()));
        if (j.is_string()) return Integer(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
    throw input_error(std::string("expected an integer at '") + field + "'");
}

Rational rational_from_json(const json& j, const char* field) {
    try {
        if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
        if (j.is_string()) {
            Rational q(j.get<std::string>());
            q.canonicalize();
            return q;
        }
    } catch (const std::invalid_argument&) {
    }
    throw input_error(std::string("expected a rational at '") + field + "'");
}

EllipticCurveFull2 curve_from_json(const json& j) {
    if (!j.is_object() || !j.contains("c") || !j["c"].is_array() || j["c"].size() != 3)
        throw input_error("curve: expected {\"c\": [c1, c2, c3], \"d\": int}");
    std::array<Integer, 3> c;
    for (int i = 0; i < 3; ++i) c[i] = integer_from_json(j["c"][i], "c");
    Integer d = j.contains("d") ? integer_from_json(j["d"], "d") : Integer(1);
    try {
        return EllipticCurveFull2(c, d);
    } catch (const domain_error& e) {
        throw input_error(e.what());
    }
}

KummerSpec kummer_spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("a") || !j["a"].is_array() || j["a"].size() != 6 ||
        !j.contains("b") || !j["b"].is_array() || j["b"].size() != 6)
        throw input_error("spec: expected {\"a\": [6 ints], \"b\": [6 rationals], \"M\": [...]}");
    std::array<Integer, 6> a;
    for (int i = 0; i < 6; ++i) a[i] = integer_from_json(j["a"][i], "a");
    std::vector<Rational> b;
    for (int i = 0; i < 6; ++i) b.push_back(rational_from_json(j["b"][i], "b"));
    std::vector<Integer> M;
    if (j.contains("M")) {
        if (!j["M"].is_array()) throw input_error("spec: M must be an array");
        for (const auto& w : j["M"]) M.push_back(integer_from_json(w, "M"));
    }
    try {
        return KummerSpec(a, std::move(b), std::move(M));
    } catch (const domain_error& e) {
        throw input_error(e.what());
    }
}

}  // namespace kummerlab
