#pragma once

#include "boollat/constructions.hpp"
#include "boollat/family.hpp"
#include "boollat/katona.hpp"
#include "boollat/numeric.hpp"
#include "boollat/supersat.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace boollat {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "boollat";
inline constexpr const char* kToolVersion = "1.0.0";

inline Json json_big(const BigCount& v) { return to_decimal_string(v); }

inline Json json_rational(const Rational& r) {
    return Json{{"num", to_decimal_string(boost::multiprecision::numerator(r))},
                {"den", to_decimal_string(boost::multiprecision::denominator(r))}};
}

inline Json json_rational_approx(const Rational& r) {
    Json j = json_rational(r);
    j["approx"] = rational_to_fixed(r, 6);
    return j;
}

inline Json json_family(const Family& f) {
    Json members = Json::array();
    for (SetMask m : f.members) members.push_back(mask_to_hex(m));
    return Json{{"n", f.n}, {"members", members}};
}

inline Json json_set_pair_family(const SetPairFamily& f) {
    Json pairs = Json::array();
    for (const SetPair& p : f.pairs)
        pairs.push_back(Json::array({mask_to_hex(p.first), mask_to_hex(p.second)}));
    return Json{{"n", f.N}, {"pairs", pairs}};
}

inline Json json_monte_carlo(const MonteCarloReport& r) {
    Json per = Json::array();
    for (const TrialStat& t : r.per_trial)
        per.push_back(Json{{"trial", t.trial},
                           {"sample_size", t.sample_size},
                           {"max_intersecting", t.max_intersecting},
                           {"ratio", json_rational(t.ratio)}});
    return Json{{"n", r.n},
                {"t", r.t},
                {"p", json_rational(r.p)},
                {"trials", r.trials},
                {"seed", r.seed},
                {"per_trial", std::move(per)},
                {"mean_ratio", json_rational(r.mean_ratio)},
                {"max_ratio", json_rational(r.max_ratio)},
                {"K", json_big(r.K)},
                {"p2n", json_rational(r.p2n)}};
}

inline Json make_report(const std::string& command, Json config) {
    Json rep;
    rep["tool"] = kToolName;
    rep["version"] = kToolVersion;
    rep["command"] = command;
    rep["config"] = std::move(config);
    return rep;
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += "\"";
    return out;
}

inline void flatten_json(const Json& j, const std::string& prefix, std::string& out) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            flatten_json(value, prefix.empty() ? key : prefix + "." + key, out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten_json(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        std::string value = j.is_string() ? j.get<std::string>() : j.dump();
        out += csv_escape(prefix) + "," + csv_escape(value) + "\n";
    }
}

}  // namespace detail

// Flat key,value projection of a report for spreadsheets.
inline std::string report_to_csv(const Json& rep) {
    std::string out = "key,value\n";
    detail::flatten_json(rep, "", out);
    return out;
}

inline void emit_report(const Json& rep, const std::string& format, std::ostream& os) {
    if (format == "json")
        os << rep.dump(2) << "\n";
    else if (format == "csv")
        os << report_to_csv(rep);
    else
        throw std::invalid_argument("unknown report format '" + format + "'");
}

}  // namespace boollat
