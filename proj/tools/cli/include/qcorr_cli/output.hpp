#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include <qcorr/information.hpp>
#include <qcorr/superposition.hpp>

namespace qcorr::cli {

nlohmann::json to_json(const InformationReport& report);
InformationReport report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScanResult& scan);

/// Labels and values of the eight table rows: s1, s2, s3, I_pair, I3,
/// I_rho_gamma, I_gamma_gamma, I_higher. Missing three-particle values are NaN.
const std::vector<std::string>& row_names();
std::vector<double> row_values(const InformationReport& report);

/// One CSV line per report, 12 significant digits. `prefix_columns` names
/// leading columns whose values the caller passes to write_csv_row.
void write_csv_header(std::ostream& out, const std::vector<std::string>& prefix_columns);
void write_csv_row(std::ostream& out, const std::vector<std::string>& prefix,
                   const InformationReport& report);

/// Aligned table with one column per report, rows in table order, 6 decimals.
void write_table(std::ostream& out, std::span<const std::string> headers,
                 std::span<const InformationReport> reports);

} // namespace qcorr::cli
