#include "qcorr_cli/output.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace qcorr::cli {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

std::optional<double> read_optional(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    return j.at(key).get<double>();
}

Space space_from(const std::string& s) {
    return s == "momentum" ? Space::Momentum : Space::Position;
}

SymmetryClass symmetry_from(const std::string& s) {
    if (s == "symmetric") {
        return SymmetryClass::Symmetric;
    }
    return s == "distinguishable" ? SymmetryClass::Distinguishable : SymmetryClass::Antisymmetric;
}

} // namespace

json to_json(const InformationReport& r) {
    json j;
    j["system"] = r.system;
    j["space"] = std::string(to_string(r.space));
    j["symmetry"] = std::string(to_string(r.symmetry));
    j["particles"] = r.particles;
    j["strategy"] = std::string(to_string(r.strategy));
    const auto& s = r.entropies;
    j["entropies"] = {{"s1", s.s1},
                      {"s1_error", s.s1_error},
                      {"s2", s.s2},
                      {"s2_error", s.s2_error},
                      {"s3", optional_number(s.s3)},
                      {"s3_error", optional_number(s.s3_error)}};
    j["measures"] = {{"I_pair", r.I_pair},
                     {"I3", optional_number(r.I_total3)},
                     {"I_rho_gamma", optional_number(r.I_one_pair)},
                     {"I_gamma_gamma", optional_number(r.I_pair_pair)},
                     {"I_higher", optional_number(r.I_higher)}};
    if (r.I_pair_direct) {
        j["direct"] = {{"I_pair", *r.I_pair_direct}, {"I_higher", optional_number(r.I_higher_direct)}};
    }
    if (!r.coordinate_entropies.empty()) {
        j["coordinate_entropies"] = r.coordinate_entropies;
        j["pair_entropies"] = r.pair_entropies;
    }
    j["warnings"] = r.warnings;
    j["nodes_used"] = r.nodes_used;
    return j;
}

InformationReport report_from_json(const json& j) {
    InformationReport r;
    r.system = j.at("system").get<std::string>();
    r.space = space_from(j.at("space").get<std::string>());
    r.symmetry = symmetry_from(j.at("symmetry").get<std::string>());
    r.particles = j.at("particles").get<int>();
    r.strategy = j.at("strategy").get<std::string>() == "closed-form"
                     ? ReductionStrategy::ClosedForm
                     : ReductionStrategy::QuadratureReduced;
    const json& e = j.at("entropies");
    r.entropies.space = r.space;
    r.entropies.s1 = e.at("s1").get<double>();
    r.entropies.s1_error = e.at("s1_error").get<double>();
    r.entropies.s2 = e.at("s2").get<double>();
    r.entropies.s2_error = e.at("s2_error").get<double>();
    r.entropies.s3 = read_optional(e, "s3");
    r.entropies.s3_error = read_optional(e, "s3_error");
    const json& m = j.at("measures");
    r.I_pair = m.at("I_pair").get<double>();
    r.I_total3 = read_optional(m, "I3");
    r.I_one_pair = read_optional(m, "I_rho_gamma");
    r.I_pair_pair = read_optional(m, "I_gamma_gamma");
    r.I_higher = read_optional(m, "I_higher");
    if (j.contains("direct")) {
        r.I_pair_direct = read_optional(j.at("direct"), "I_pair");
        r.I_higher_direct = read_optional(j.at("direct"), "I_higher");
    }
    if (j.contains("coordinate_entropies")) {
        r.coordinate_entropies = j.at("coordinate_entropies").get<std::vector<double>>();
        r.pair_entropies = j.at("pair_entropies").get<std::vector<double>>();
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    r.nodes_used = j.at("nodes_used").get<long long>();
    return r;
}

json to_json(const ScanResult& scan) {
    json samples = json::array();
    for (const auto& s : scan.samples) {
        json item{{"c1sq", s.c1sq}};
        if (s.report) {
            item["report"] = to_json(*s.report);
        } else {
            item["error"] = s.error;
        }
        samples.push_back(item);
    }
    return {{"interference", scan.spec.interference}, {"samples", samples}};
}

const std::vector<std::string>& row_names() {
    static const std::vector<std::string> names{"s1",     "s2",          "s3",           "I_pair",
                                                "I3",     "I_rho_gamma", "I_gamma_gamma", "I_higher"};
    return names;
}

std::vector<double> row_values(const InformationReport& r) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {r.entropies.s1,           r.entropies.s2,           r.entropies.s3.value_or(nan),
            r.I_pair,                 r.I_total3.value_or(nan), r.I_one_pair.value_or(nan),
            r.I_pair_pair.value_or(nan), r.I_higher.value_or(nan)};
}

void write_csv_header(std::ostream& out, const std::vector<std::string>& prefix_columns) {
    bool first = true;
    for (const auto& c : prefix_columns) {
        out << (first ? "" : ",") << c;
        first = false;
    }
    for (const auto& c : row_names()) {
        out << (first ? "" : ",") << c;
        first = false;
    }
    out << '\n';
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& prefix,
                   const InformationReport& report) {
    const auto old = out.precision(12);
    bool first = true;
    for (const auto& c : prefix) {
        out << (first ? "" : ",") << c;
        first = false;
    }
    for (double v : row_values(report)) {
        out << (first ? "" : ",");
        if (!std::isnan(v)) {
            out << v;
        }
        first = false;
    }
    out << '\n';
    out.precision(old);
}

void write_table(std::ostream& out, std::span<const std::string> headers,
                 std::span<const InformationReport> reports) {
    constexpr int label_width = 15;
    std::size_t width = 12;
    for (const auto& h : headers) {
        width = std::max(width, h.size() + 2);
    }
    const auto flags = out.flags();
    out << std::left << std::setw(label_width) << "" << std::right;
    for (const auto& h : headers) {
        out << std::setw(static_cast<int>(width)) << h;
    }
    out << '\n' << std::fixed << std::setprecision(6);
    for (std::size_t row = 0; row < row_names().size(); ++row) {
        out << std::left << std::setw(label_width) << row_names()[row] << std::right;
        for (const auto& r : reports) {
            const double v = row_values(r)[row];
            out << std::setw(static_cast<int>(width));
            if (std::isnan(v)) {
                out << "-";
            } else {
                out << v;
            }
        }
        out << '\n';
    }
    out.flags(flags);
}

} // namespace qcorr::cli
