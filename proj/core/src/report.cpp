#include "advstab/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace advstab {

using ordered_json = nlohmann::ordered_json;

double ReportRow::get(const std::string& name) const {
    for (const auto& [k, v] : values)
        if (k == name) return v;
    throw InvalidParameter("ReportRow: no value named " + name);
}

void ReportRow::set(const std::string& name, double v) {
    for (auto& [k, existing] : values)
        if (k == name) {
            existing = v;
            return;
        }
    values.emplace_back(name, v);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void ExperimentReport::add_provenance(const std::string& key, double v) {
    provenance.emplace_back(key, format_double(v));
}

std::string ExperimentReport::to_json() const {
    ordered_json j;
    j["channel"] = channel;
    ordered_json jr = ordered_json::array();
    for (const ReportRow& row : rows) {
        ordered_json o;
        o["eps"] = row.eps;
        for (const auto& [k, v] : row.values) o[k] = v;
        jr.push_back(o);
    }
    j["rows"] = jr;
    ordered_json jf = ordered_json::object();
    for (const NamedFit& f : fits) {
        ordered_json o;
        o["slope"] = f.fit.slope;
        o["intercept"] = f.fit.intercept;
        o["slope_stderr"] = f.fit.slope_stderr;
        o["ci95"] = f.fit.ci95;
        o["points"] = f.fit.points;
        jf[f.name] = o;
    }
    j["fits"] = jf;
    ordered_json jv = ordered_json::object();
    for (const auto& [k, v] : verdicts) jv[k] = v;
    j["verdicts"] = jv;
    ordered_json jp = ordered_json::object();
    for (const auto& [k, v] : provenance) jp[k] = v;
    j["provenance"] = jp;
    return j.dump(2) + "\n";
}

std::string ExperimentReport::to_csv() const {
    std::string out = "eps";
    if (!rows.empty())
        for (const auto& [k, v] : rows.front().values) out += "," + k;
    out += "\n";
    for (const ReportRow& row : rows) {
        out += format_double(row.eps);
        for (const auto& [k, v] : row.values) out += "," + format_double(v);
        out += "\n";
    }
    return out;
}

} // namespace advstab
