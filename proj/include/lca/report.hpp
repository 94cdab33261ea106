#pragma once

// Experiment reports: one CSV row per case, a JSON summary with a schema
// version, and merging with case-id collision detection. Serialized output
// contains no volatile fields (timings stay on the console) so repeated runs
// are byte-identical.

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace lca {

constexpr const char* kReportSchema = "lca-report-1";

/// Where a reference value comes from: an exact identity, a computed
/// independent oracle, or a published closed form.
enum class RefKind { exact, oracle, literature };

inline const char* to_string(RefKind k) {
    switch (k) {
        case RefKind::exact: return "exact";
        case RefKind::oracle: return "oracle";
        case RefKind::literature: return "literature";
    }
    return "?";
}

struct CaseRow {
    std::string id;
    std::vector<std::pair<std::string, double>> params;
    double measured = 0;
    double reference = 0;
    RefKind ref_kind = RefKind::oracle;
    double tol = 0;
    bool pass = false;
    double fitted_exponent = std::numeric_limits<double>::quiet_NaN();
};

struct ExperimentReport {
    std::string experiment;
    std::vector<CaseRow> rows;
    double wall_ms = 0;  // console only, never serialized

    bool pass_all() const {
        for (auto& r : rows)
            if (!r.pass) return false;
        return !rows.empty();
    }
};

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

inline void write_csv(const ExperimentReport& rep, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    // union of parameter columns, in first-seen order
    std::vector<std::string> cols;
    for (auto& r : rep.rows)
        for (auto& [k, v] : r.params)
            if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    out << "case";
    for (auto& c : cols) out << "," << c;
    out << ",measured,reference,ref_kind,tol,fitted_exponent,pass\n";
    for (auto& r : rep.rows) {
        out << r.id;
        for (auto& c : cols) {
            out << ",";
            for (auto& [k, v] : r.params)
                if (k == c) out << detail::fmt(v);
        }
        out << "," << detail::fmt(r.measured) << "," << detail::fmt(r.reference) << ","
            << to_string(r.ref_kind) << "," << detail::fmt(r.tol) << ","
            << (std::isnan(r.fitted_exponent) ? "" : detail::fmt(r.fitted_exponent)) << ","
            << (r.pass ? "1" : "0") << "\n";
    }
}

inline nlohmann::ordered_json report_to_json(const ExperimentReport& rep) {
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    j["experiment"] = rep.experiment;
    j["n_cases"] = rep.rows.size();
    std::size_t fails = 0;
    for (auto& r : rep.rows)
        if (!r.pass) ++fails;
    j["n_fail"] = fails;
    j["pass"] = rep.pass_all();
    nlohmann::ordered_json cases = nlohmann::ordered_json::array();
    for (auto& r : rep.rows) {
        nlohmann::ordered_json c;
        c["id"] = r.id;
        for (auto& [k, v] : r.params) c["params"][k] = v;
        c["measured"] = r.measured;
        c["reference"] = r.reference;
        c["ref_kind"] = to_string(r.ref_kind);
        c["tol"] = r.tol;
        if (!std::isnan(r.fitted_exponent)) c["fitted_exponent"] = r.fitted_exponent;
        c["pass"] = r.pass;
        cases.push_back(c);
    }
    j["cases"] = cases;
    return j;
}

inline void write_json(const ExperimentReport& rep, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << report_to_json(rep).dump(2) << "\n";
}

/// Aggregate pass/fail matrix over several reports; case ids must be unique
/// within an experiment.
inline nlohmann::ordered_json report_merge(const std::vector<nlohmann::ordered_json>& reports) {
    nlohmann::ordered_json out;
    out["schema"] = kReportSchema;
    std::map<std::string, std::vector<std::string>> seen;  // experiment -> ids
    nlohmann::ordered_json matrix = nlohmann::ordered_json::array();
    bool all = true;
    for (auto& rep : reports) {
        if (!rep.contains("schema") || rep["schema"] != kReportSchema)
            throw std::runtime_error("report_merge: schema mismatch");
        std::string exp = rep["experiment"];
        for (auto& c : rep["cases"]) {
            std::string id = c["id"];
            auto& ids = seen[exp];
            if (std::find(ids.begin(), ids.end(), id) != ids.end())
                throw std::runtime_error("report_merge: conflicting case id '" + id +
                                         "' in experiment '" + exp + "' (present in two reports)");
            ids.push_back(id);
        }
        nlohmann::ordered_json entry;
        entry["experiment"] = exp;
        entry["n_cases"] = rep["n_cases"];
        entry["n_fail"] = rep["n_fail"];
        entry["pass"] = rep["pass"];
        all = all && rep["pass"].get<bool>();
        matrix.push_back(entry);
    }
    out["experiments"] = matrix;
    out["pass"] = all;
    return out;
}

}  // namespace lca
