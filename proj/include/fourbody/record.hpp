#pragma once

// Serialization of solved configurations and limit solutions. JSON numbers
// are written in shortest round-trip form, CSV numbers with 17 significant
// digits, so every double survives a write/read cycle bit-exactly.

#include "fourbody/errors.hpp"
#include "fourbody/model.hpp"
#include "fourbody/solver.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace fourbody::record {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kToolName = "fourbody";
inline constexpr std::string_view kToolVersion = "1.0.0";

struct Provenance {
    std::string timestamp;
    std::string tool_version{kToolVersion};

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct ConfigRecord {
    int schema_version = kSchemaVersion;
    WeightedAreas areas;  // as given, before canonical orientation
    SolverOptions options;
    CentralConfig config;
    Provenance provenance;

    friend bool operator==(const ConfigRecord&, const ConfigRecord&) = default;
};

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline ConfigRecord make_record(const WeightedAreas& input, const SolverOptions& opts, const CentralConfig& c) {
    return {kSchemaVersion, input, opts, c, {utc_timestamp(), std::string(kToolVersion)}};
}

// ---------------------------------------------------------------------------
// Text forms

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// RFC 4180 field: quoted only when it contains a separator, quote or newline.
inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

inline std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    return out;
}

inline Hull parse_hull(std::string_view s) {
    if (s == "Concave") return Hull::Concave;
    if (s == "Convex") return Hull::Convex;
    throw Error(ErrorCode::ParseError, "unknown hull '" + std::string(s) + "'");
}

inline std::optional<Symmetry> parse_symmetry(std::string_view s) {
    for (auto sym : kAllSymmetries)
        if (to_string(sym) == s) return sym;
    if (s == "None") return std::nullopt;
    throw Error(ErrorCode::ParseError, "unknown symmetry '" + std::string(s) + "'");
}

inline RootResidual parse_root_residual(std::string_view s) {
    for (auto r : {RootResidual::Auto, RootResidual::QuadConstraint, RootResidual::PlaneSum, RootResidual::KitePythagoras})
        if (to_string(r) == s) return r;
    throw Error(ErrorCode::ParseError, "unknown root residual '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

/// NaN and infinities have no JSON literal; they travel as null.
inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline double get_number(const json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    if (!j.is_number()) throw Error(ErrorCode::ParseError, "expected a number, got " + j.dump());
    return j.get<double>();
}

template <std::size_t N>
json array_of(const std::array<double, N>& v) {
    json out = json::array();
    for (double x : v) out.push_back(number(x));
    return out;
}

template <std::size_t N>
std::array<double, N> get_array(const json& j) {
    if (!j.is_array() || j.size() != N)
        throw Error(ErrorCode::ParseError, "expected an array of " + std::to_string(N) + " numbers");
    std::array<double, N> out{};
    for (std::size_t k = 0; k < N; ++k) out[k] = get_number(j[k]);
    return out;
}

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace detail

inline json to_json(const DistanceSet& d) {
    json out = json::object();
    for (std::size_t k = 0; k < kPairNames.size(); ++k) out[std::string(kPairNames[k])] = detail::number(d.r[k]);
    return out;
}

inline DistanceSet distances_from_json(const json& j) {
    DistanceSet d;
    for (std::size_t k = 0; k < kPairNames.size(); ++k)
        d.r[k] = detail::get_number(detail::field(j, std::string(kPairNames[k]).c_str()));
    return d;
}

inline json to_json(const ResidualReport& r) {
    return {{"plane_sum", detail::number(r.plane_sum)},
            {"quad_constraint", detail::number(r.quad_constraint)},
            {"laura_andoyer", detail::number(r.laura_andoyer)},
            {"central_eq", detail::number(r.central_eq)},
            {"sigma_identity", detail::number(r.sigma_identity)}};
}

inline ResidualReport residuals_from_json(const json& j) {
    ResidualReport r;
    r.plane_sum = detail::get_number(detail::field(j, "plane_sum"));
    r.quad_constraint = detail::get_number(detail::field(j, "quad_constraint"));
    r.laura_andoyer = detail::get_number(detail::field(j, "laura_andoyer"));
    r.central_eq = detail::get_number(detail::field(j, "central_eq"));
    r.sigma_identity = detail::get_number(detail::field(j, "sigma_identity"));
    return r;
}

inline json to_json(const Classification& c) {
    return {{"hull", std::string(to_string(c.hull))}, {"symmetries", c.symmetries.names()}};
}

inline Classification classification_from_json(const json& j) {
    Classification c;
    c.hull = parse_hull(detail::field(j, "hull").get<std::string>());
    for (const auto& s : detail::field(j, "symmetries"))
        if (auto sym = parse_symmetry(s.get<std::string>())) c.symmetries.insert(*sym);
    return c;
}

inline json to_json(const SolverOptions& o) {
    return {{"tol_root", o.tol_root},
            {"max_iter", o.max_iter},
            {"bracket_margin", o.bracket_margin},
            {"residual_for_root", std::string(to_string(o.residual_for_root))},
            {"grid_cells", o.grid_cells},
            {"accept_residual", o.accept_residual}};
}

inline SolverOptions options_from_json(const json& j) {
    SolverOptions o;
    o.tol_root = detail::get_number(detail::field(j, "tol_root"));
    o.max_iter = detail::field(j, "max_iter").get<int>();
    o.bracket_margin = detail::get_number(detail::field(j, "bracket_margin"));
    o.residual_for_root = parse_root_residual(detail::field(j, "residual_for_root").get<std::string>());
    o.grid_cells = detail::field(j, "grid_cells").get<std::size_t>();
    o.accept_residual = detail::get_number(detail::field(j, "accept_residual"));
    return o;
}

inline json outputs_to_json(const CentralConfig& c) {
    json coords = json::array();
    for (const auto& p : c.coords) coords.push_back({detail::number(p.x), detail::number(p.y)});
    json roots = json::array();
    for (double r : c.candidate_roots) roots.push_back(detail::number(r));
    return {{"canonical_areas", detail::array_of(c.areas_in.a)},
            {"sign_flipped", c.sign_flipped},
            {"lambda", detail::number(c.lambda)},
            {"sigma", detail::number(c.sigma)},
            {"distances", to_json(c.distances)},
            {"signed_areas", detail::array_of(c.signed_areas.s)},
            {"masses", detail::array_of(c.masses)},
            {"coordinates", coords},
            {"classification", to_json(c.classification)},
            {"residuals", to_json(c.diagnostics)},
            {"candidate_roots", roots}};
}

inline CentralConfig outputs_from_json(const json& j) {
    CentralConfig c;
    c.areas_in.a = detail::get_array<4>(detail::field(j, "canonical_areas"));
    c.sign_flipped = detail::field(j, "sign_flipped").get<bool>();
    c.lambda = detail::get_number(detail::field(j, "lambda"));
    c.sigma = detail::get_number(detail::field(j, "sigma"));
    c.distances = distances_from_json(detail::field(j, "distances"));
    c.signed_areas.s = detail::get_array<4>(detail::field(j, "signed_areas"));
    c.masses = detail::get_array<4>(detail::field(j, "masses"));
    const auto& coords = detail::field(j, "coordinates");
    if (!coords.is_array() || coords.size() != 4) throw Error(ErrorCode::ParseError, "expected four coordinate pairs");
    for (std::size_t k = 0; k < 4; ++k) {
        const auto xy = detail::get_array<2>(coords[k]);
        c.coords[k] = {xy[0], xy[1]};
    }
    c.classification = classification_from_json(detail::field(j, "classification"));
    c.diagnostics = residuals_from_json(detail::field(j, "residuals"));
    for (const auto& r : detail::field(j, "candidate_roots")) c.candidate_roots.push_back(detail::get_number(r));
    return c;
}

inline json to_json(const ConfigRecord& r) {
    return {{"schema_version", r.schema_version},
            {"inputs", {{"areas", detail::array_of(r.areas.a)}, {"options", to_json(r.options)}}},
            {"outputs", outputs_to_json(r.config)},
            {"provenance",
             {{"tool", std::string(kToolName)}, {"tool_version", r.provenance.tool_version}, {"timestamp", r.provenance.timestamp}}}};
}

inline ConfigRecord record_from_json(const json& j) {
    ConfigRecord r;
    r.schema_version = detail::field(j, "schema_version").get<int>();
    if (r.schema_version != kSchemaVersion)
        throw Error(ErrorCode::ParseError, "unsupported schema_version " + std::to_string(r.schema_version));
    const auto& in = detail::field(j, "inputs");
    r.areas.a = detail::get_array<4>(detail::field(in, "areas"));
    r.options = options_from_json(detail::field(in, "options"));
    r.config = outputs_from_json(detail::field(j, "outputs"));
    const auto& prov = detail::field(j, "provenance");
    r.provenance.timestamp = detail::field(prov, "timestamp").get<std::string>();
    r.provenance.tool_version = detail::field(prov, "tool_version").get<std::string>();
    return r;
}

inline ConfigRecord parse_record(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
    try {
        return record_from_json(j);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed record: ") + e.what());
    }
}

inline json to_json(const LimitSolution& s) {
    json aux = json::object();
    for (const auto& [k, v] : s.aux) aux[k] = detail::number(v);
    return {{"schema_version", kSchemaVersion},
            {"kind", std::string(to_string(s.kind))},
            {"distances", s.distances ? to_json(*s.distances) : json(nullptr)},
            {"lambda_or_product", detail::number(s.lambda_or_product)},
            {"aux", aux}};
}

inline json error_json(const Error& e) {
    return {{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}};
}

}  // namespace fourbody::record
