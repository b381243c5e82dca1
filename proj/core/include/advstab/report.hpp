#pragma once

#include <string>
#include <utility>
#include <vector>

#include "advstab/ratefit.hpp"

namespace advstab {

/// One sweep point: the parameter and a fixed-order list of named values.
struct ReportRow {
    double eps = 0.0;
    std::vector<std::pair<std::string, double>> values;

    double get(const std::string& name) const;
    void set(const std::string& name, double v);
};

struct NamedFit {
    std::string name;
    LineFit fit;
};

/// Sweep results with fits, verdicts, and the provenance needed to rerun
/// them. Serialization is deterministic: fixed key order, no timestamps,
/// shortest-roundtrip doubles, so identical specs produce identical bytes.
struct ExperimentReport {
    std::string channel;
    std::vector<ReportRow> rows;
    std::vector<NamedFit> fits;
    std::vector<std::pair<std::string, std::string>> verdicts;
    std::vector<std::pair<std::string, std::string>> provenance;

    void add_verdict(const std::string& name, const std::string& v) {
        verdicts.emplace_back(name, v);
    }
    void add_provenance(const std::string& key, const std::string& v) {
        provenance.emplace_back(key, v);
    }
    void add_provenance(const std::string& key, double v);

    std::string to_json() const;
    std::string to_csv() const;
};

std::string format_double(double v);

} // namespace advstab
