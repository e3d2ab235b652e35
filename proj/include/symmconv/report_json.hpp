#pragma once

// JSON serialization for verdicts and inequality reports.  Everything goes
// through nlohmann's ordered_json so that key order (and therefore the byte
// stream) is stable between runs with identical inputs.

#include <json.hpp>

#include <symmconv/analysis.hpp>
#include <symmconv/inequalities.hpp>
#include <symmconv/integrate.hpp>

#include <string>

namespace symmconv {

using json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

inline json to_json(const Witness& w) {
    return json{{"x", w.x}, {"y", w.y}, {"t", w.t}};
}

inline json to_json(const ConvexityVerdict& v) {
    json j;
    j["holds"] = v.holds;
    j["worst_defect"] = v.worst_defect;
    j["samples_checked"] = v.samples_checked;
    if (v.witness) j["witness"] = to_json(*v.witness);
    return j;
}

inline json to_json(const WeightSymmetry& s) {
    return json{{"symmetric", s.symmetric},
                {"worst_asymmetry", s.worst_asymmetry},
                {"samples_checked", s.samples_checked}};
}

inline json to_json(const InequalityReport& r) {
    json j;
    j["name"] = r.name;
    json terms = json::array();
    for (const auto& t : r.terms)
        terms.push_back(json{{"label", t.label}, {"value", t.value}});
    j["terms"] = terms;
    j["margins"] = r.margins;
    j["holds"] = r.holds;
    j["tolerance_used"] = r.tolerance_used;
    j["evaluations"] = r.evaluations;
    j["warnings"] = r.warnings;
    if (!r.notes.empty()) {
        json notes;
        for (const auto& [k, v] : r.notes) notes[k] = v;
        j["notes"] = notes;
    }
    return j;
}

inline json to_json(const QuadConfig& q) {
    return json{{"abs_tol", q.abs_tol},
                {"rel_tol", q.rel_tol},
                {"max_subdivisions", q.max_subdivisions}};
}

inline json to_json(const GridSpec& g) {
    return json{{"xy_points", g.xy_points},
                {"t_points", g.t_points},
                {"refine_rounds", g.refine_rounds}};
}

// Common envelope shared by all CLI commands.  Fields that a command has no
// use for stay present but empty, so consumers can rely on the shape.
inline json make_envelope(const std::string& command, json config) {
    json j;
    j["schema_version"] = schema_version;
    j["command"] = command;
    j["config"] = std::move(config);
    j["terms"] = json::array();
    j["margins"] = json::array();
    j["holds"] = true;
    j["warnings"] = json::array();
    return j;
}

// Copies the interesting pieces of an inequality report into an envelope.
inline void fill_envelope(json& envelope, const InequalityReport& r) {
    json rep = to_json(r);
    envelope["terms"] = rep["terms"];
    envelope["margins"] = rep["margins"];
    envelope["holds"] = rep["holds"];
    envelope["warnings"] = rep["warnings"];
    envelope["report"] = std::move(rep);
}

inline void fill_envelope(json& envelope, const ConvexityVerdict& v) {
    envelope["holds"] = v.holds;
    envelope["worst_defect"] = v.worst_defect;
    envelope["samples_checked"] = v.samples_checked;
    if (v.witness) envelope["witness"] = to_json(*v.witness);
}

}  // namespace symmconv
