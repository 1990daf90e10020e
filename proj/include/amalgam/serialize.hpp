#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "amalgam/laws.hpp"

namespace amalgam {

using nlohmann::json;

// ---- space-spec grammar -----------------------------------------------
// "L:<p>" | "Lorentz:<p>:<q>" | "WL:<local>:<global>" | "W:<p>:<q>" |
// "Int:<inner>", with <p>, <q> rationals or "inf".

namespace detail {

inline std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ':') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

inline Exponent parse_exponent(const std::vector<std::string>& t, std::size_t& i) {
    if (i >= t.size()) throw ParseError("spec: missing exponent");
    const std::string& tok = t[i++];
    if (tok == "inf") return Exponent::inf();
    return Exponent::finite(Rational::from_string(tok));
}

inline NormSpec parse_norm(const std::vector<std::string>& t, std::size_t& i) {
    if (i >= t.size()) throw ParseError("spec: missing norm family");
    const std::string head = t[i++];
    if (head == "L") return lebesgue(parse_exponent(t, i));
    if (head == "Lorentz") {
        const Exponent p = parse_exponent(t, i);
        const Exponent q = parse_exponent(t, i);
        return lorentz(p, q);
    }
    throw ParseError("spec: unknown norm family '" + head + "'");
}

inline SpaceSpec parse_space(const std::vector<std::string>& t, std::size_t& i) {
    if (i >= t.size()) throw ParseError("spec: empty");
    if (t[i] == "WL") {
        ++i;
        const NormSpec local = parse_norm(t, i);
        const NormSpec global = parse_norm(t, i);
        return wl(local, global);
    }
    if (t[i] == "W") {
        ++i;
        const Exponent p = parse_exponent(t, i);
        const Exponent q = parse_exponent(t, i);
        return wiener(p, q);
    }
    if (t[i] == "Int") {
        ++i;
        return integrable(parse_space(t, i));
    }
    return simple(parse_norm(t, i));
}

} // namespace detail

inline SpaceSpec parse_space_spec(const std::string& s) {
    const auto tokens = detail::split_tokens(s);
    std::size_t i = 0;
    const SpaceSpec spec = detail::parse_space(tokens, i);
    if (i != tokens.size()) throw ParseError("spec: trailing tokens in '" + s + "'");
    return spec;
}

inline NormSpec parse_norm_spec(const std::string& s) {
    const auto tokens = detail::split_tokens(s);
    std::size_t i = 0;
    const NormSpec spec = detail::parse_norm(tokens, i);
    if (i != tokens.size()) throw ParseError("spec: trailing tokens in '" + s + "'");
    return spec;
}

// ---- function files -----------------------------------------------------
// {"pieces": [{"a": "<rat>", "b": "<rat>"|"inf", "c": "<rat>", "alpha": "<rat>"}]}
// Rationals are strings ("p/q" or integers); unknown keys are rejected.

inline json to_json(const PPF& f) {
    json pieces = json::array();
    for (const Piece& p : f.pieces()) {
        pieces.push_back({{"a", p.iv.left.str()},
                          {"b", p.iv.unbounded() ? std::string("inf") : p.iv.right->str()},
                          {"c", p.coef.str()},
                          {"alpha", p.expo.str()}});
    }
    return json{{"pieces", pieces}};
}

inline PPF function_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("function: expected a JSON object");
    for (const auto& [key, _] : j.items())
        if (key != "pieces") throw ParseError("function: unknown key '" + key + "'");
    if (!j.contains("pieces") || !j["pieces"].is_array())
        throw ParseError("function: missing 'pieces' array");
    std::vector<Piece> ps;
    for (const json& pj : j["pieces"]) {
        if (!pj.is_object()) throw ParseError("function: piece must be an object");
        for (const auto& [key, _] : pj.items())
            if (key != "a" && key != "b" && key != "c" && key != "alpha")
                throw ParseError("function: unknown piece key '" + key + "'");
        for (const char* key : {"a", "b", "c", "alpha"})
            if (!pj.contains(key) || !pj[key].is_string())
                throw ParseError(std::string("function: piece key '") + key +
                                 "' must be a rational string");
        const Rational a = Rational::from_string(pj["a"].get<std::string>());
        const std::string bs = pj["b"].get<std::string>();
        const Rational c = Rational::from_string(pj["c"].get<std::string>());
        const Rational alpha = Rational::from_string(pj["alpha"].get<std::string>());
        const Interval iv = bs == "inf" ? Interval::to_infinity(a)
                                        : Interval::bounded(a, Rational::from_string(bs));
        ps.push_back({iv, c, alpha});
    }
    return PPF::normalized(std::move(ps));
}

inline PPF load_function_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open function file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError("bad JSON in '" + path + "': " + e.what());
    }
    return function_from_json(j);
}

// ---- values and reports --------------------------------------------------

inline json to_json(const ExtReal& v) {
    switch (v.kind()) {
        case ExtReal::Kind::Exact:
            return json{{"kind", "exact"}, {"value", v.exact_value().str()}};
        case ExtReal::Kind::Approx:
            return json{{"kind", "approx"}, {"value", v.value()}, {"error_bound", v.rel_error()}};
        default:
            return json{{"kind", "infinity"}};
    }
}

inline json to_json(const PropertyReport& r) {
    return json{{"suite", r.suite},
                {"cases", r.cases_run},
                {"failures", r.failures},
                {"observed_constant", r.observed_constant},
                {"verdict", PropertyReport::verdict_str(r.verdict)},
                {"note", r.note}};
}

inline json to_json(const SeriesCertificate& c) {
    return json{{"exponent", c.exponent.str()},
                {"terms", c.terms},
                {"method", "integral-test"},
                {"verdict", c.convergent() ? "convergent" : "divergent"},
                {"partial_sum", to_json(c.partial_sum)},
                {"bound", to_json(c.bound)}};
}

inline json to_json(const WitnessBundle& w) {
    json j{{"name", w.name},
           {"function", to_json(w.fn)},
           {"finite", json{{"space", str(w.finite_space)},
                           {"value", to_json(w.finite_value)},
                           {"evaluated", to_json(w.finite_evaluated)}}},
           {"divergent", json{{"space", str(w.divergent_space)},
                              {"reason", w.divergence_reason}}},
           {"note", w.note}};
    if (w.truncated_divergent_value)
        j["divergent"]["truncated_value"] = to_json(*w.truncated_divergent_value);
    json certs = json::object();
    if (w.measure_certificate) certs["measure"] = to_json(*w.measure_certificate);
    if (w.finite_certificate) certs["finite"] = to_json(*w.finite_certificate);
    if (w.divergent_certificate) certs["divergent"] = to_json(*w.divergent_certificate);
    if (!certs.empty()) j["certificates"] = certs;
    return j;
}

inline json to_json(const HolderReport& r) {
    return json{{"spec", str(r.spec)},
                {"lhs", to_json(r.lhs)},
                {"norm_f", to_json(r.norm_f)},
                {"norm_g", to_json(r.norm_g)},
                {"rhs", to_json(r.rhs)},
                {"pass", r.pass}};
}

inline json to_json(const HlpFamilyCase& c) {
    return json{{"f", to_json(c.f.fn())},
                {"g", to_json(c.g.fn())},
                {"ratio", to_json(c.ratio)}};
}

} // namespace amalgam
