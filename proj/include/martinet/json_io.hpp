/*
 * json_io.hpp
 * -----------
 * JSON encodings used repo-wide. Rationals travel as reduced strings
 * ("3", "-1/2") so exact data never passes through floats; polynomials
 * serialize in the canonical term order, so equal values are
 * byte-identical on the wire.
 *
 *   polynomial: {"terms":[{"e":[i,j],"c":"p/q"}, ...]}
 *   1-form:     {"dx": <poly>, "dy": <poly>}
 *   2-form:     {"dxdy": <poly>}
 *   series:     ["c0", "c1", ...]
 */
#pragma once

#include <nlohmann/json.hpp>

#include "classifier.hpp"
#include "flux.hpp"
#include "francoise.hpp"
#include "normalizer.hpp"

namespace martinet {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return rational_to_string(r); }

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw input_error("expected a rational (string or integer)");
}

inline Json to_json(const Poly& p) {
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms()) {
        Json t;
        t["e"] = Json::array({m.ex, m.ey});
        t["c"] = rational_to_string(c);
        terms.push_back(t);
    }
    Json out;
    out["terms"] = terms;
    return out;
}

inline Poly poly_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw input_error("polynomial JSON needs a \"terms\" array");
    Poly p;
    for (const auto& t : j["terms"]) {
        if (!t.contains("e") || !t.contains("c") || !t["e"].is_array() ||
            t["e"].size() != 2)
            throw input_error("polynomial term needs \"e\":[i,j] and \"c\"");
        int ex = t["e"][0].get<int>();
        int ey = t["e"][1].get<int>();
        if (ex < 0 || ey < 0) throw input_error("negative exponent");
        p.add_term({ex, ey}, rational_from_json(t["c"]));
    }
    return p;
}

inline Json to_json(const OneForm& a) {
    Json out;
    out["dx"] = to_json(a.p);
    out["dy"] = to_json(a.q);
    return out;
}

inline Json to_json(const TwoForm& w) {
    Json out;
    out["dxdy"] = to_json(w.c);
    return out;
}

inline OneForm oneform_from_json(const Json& j) {
    if (!j.contains("dx") || !j.contains("dy"))
        throw input_error("1-form JSON needs \"dx\" and \"dy\"");
    return {poly_from_json(j["dx"]), poly_from_json(j["dy"])};
}

inline TwoForm twoform_from_json(const Json& j) {
    if (!j.contains("dxdy")) throw input_error("2-form JSON needs \"dxdy\"");
    return {poly_from_json(j["dxdy"])};
}

inline FormAny form_from_json(const Json& j) {
    if (!j.is_object()) throw input_error("form JSON must be an object");
    if (j.contains("dxdy")) return twoform_from_json(j);
    if (j.contains("dx")) return oneform_from_json(j);
    if (j.contains("terms")) return poly_from_json(j);
    throw input_error("unrecognized form JSON");
}

inline Json to_json(const FormAny& f) {
    return std::visit([](const auto& v) { return to_json(v); }, f);
}

inline Json to_json(const Series& s) {
    Json out = Json::array();
    for (const auto& c : s.coeffs()) out.push_back(rational_to_string(c));
    return out;
}

inline Series series_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw input_error("series JSON must be a nonempty array");
    std::vector<Rational> c;
    for (const auto& v : j) c.push_back(rational_from_json(v));
    return Series(std::move(c));
}

inline Json to_json(const WeightSystem& w) {
    Json out;
    out["m1"] = rational_to_string(w.m1);
    out["m2"] = rational_to_string(w.m2);
    out["denom"] = w.denom;
    return out;
}

inline WeightSystem weights_from_json(const Json& j) {
    if (!j.contains("m1") || !j.contains("m2"))
        throw input_error("weights JSON needs \"m1\" and \"m2\"");
    return WeightSystem(rational_from_json(j["m1"]),
                        rational_from_json(j["m2"]));
}

inline Json basis_to_json(const std::vector<Monomial>& basis) {
    Json out = Json::array();
    for (const auto& m : basis) out.push_back(Json::array({m.ex, m.ey}));
    return out;
}

// Germ data echoed by every command that computes it.
inline Json engine_block(const BoundaryGerm& germ) {
    Json out;
    out["mu"] = germ.mu;
    out["mu1"] = germ.mu1;
    out["mu0"] = germ.mu0;
    out["basis"] = basis_to_json(germ.basis);
    out["weights"] = to_json(germ.weights);
    out["boundary"] = germ.boundary;
    return out;
}

inline Json to_json(const DecompositionResult& r) {
    Json out;
    out["mu"] = r.germ.mu;
    out["basis"] = basis_to_json(r.germ.basis);
    Json cs = Json::array();
    for (const auto& s : r.c) cs.push_back(to_json(s));
    out["c"] = cs;
    out["xi"] = to_json(r.xi);
    out["residual"] = r.residual.is_zero() ? Json(nullptr) : to_json(r.residual.c);
    out["iterations"] = r.iterations;
    return out;
}

inline Json to_json(const PlaneMap& m) {
    Json out;
    out["x"] = to_json(m.fx);
    out["y"] = to_json(m.fy);
    return out;
}

inline Json to_json(const NormalizePairResult& r) {
    Json out;
    out["phi"] = to_json(r.phi);
    out["psi"] = to_json(r.psi);
    out["w"] = to_json(r.w);
    out["v"] = to_json(r.v);
    out["sign"] = r.quad > 0 ? "+1" : "-1";
    out["scale"] = rational_to_string(r.quad < 0 ? -r.quad : r.quad);
    out["c"] = to_json(r.c);
    out["xi"] = to_json(r.xi);
    return out;
}

inline Json conditions_to_json(const GenericityConditions& c) {
    Json out;
    out["omega_nonzero"] = c.omega_nonzero;
    out["martinet"] = c.martinet;
    out["f_regular"] = c.f_regular;
    out["hessian_nondegenerate"] = c.hessian_nondegenerate;
    out["restriction_critical"] = c.restriction_critical;
    out["restriction_morse"] = c.restriction_morse;
    return out;
}

inline Json to_json(const ClassificationReport& r) {
    Json out;
    out["class"] = to_string(r.tag);
    if (r.tag == LagrangianClass::lnf2 || r.tag == LagrangianClass::lnf3)
        out["sign"] = r.sign > 0 ? "+1" : "-1";
    else
        out["sign"] = nullptr;
    if (!r.signature.empty()) out["signature"] = r.signature;
    out["invariant"] = r.invariant ? to_json(*r.invariant) : Json(nullptr);
    out["scale"] = rational_to_string(r.scale);
    out["conditions"] = conditions_to_json(r.conditions);
    if (!r.reason.empty()) out["reason"] = r.reason;
    if (r.normalizer) out["normalizer"] = to_json(*r.normalizer);
    return out;
}

inline Json to_json(const FluxSample& s) {
    Json out;
    out["t"] = s.t;
    out["V"] = s.V;
    out["V0"] = s.V0;
    out["Vprime"] = s.Vprime;
    out["residual"] = s.residual;
    return out;
}

inline Json flux_report(const std::vector<FluxSample>& samples) {
    Json out;
    Json arr = Json::array();
    double worst = 0;
    for (const auto& s : samples) {
        arr.push_back(to_json(s));
        worst = std::max(worst, s.residual);
    }
    out["samples"] = arr;
    out["max_residual"] = worst;
    return out;
}

} // namespace martinet
