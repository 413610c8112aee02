#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <qcorr/quadrature.hpp>
#include <qcorr/wavefunction.hpp>

namespace qcorr::cli {

enum class Format { Json, Csv, Table };

/// Raw option values as given on the command line or in a config file.
/// Empty optionals fall back to per-command defaults.
struct RawOptions {
    std::string model = "box";
    double length = 1.0;
    double omega = 1.0;
    std::optional<std::string> ns;
    std::optional<std::string> second;
    std::optional<std::string> sym;
    std::string space = "position";
    std::optional<int> panels;
    std::optional<int> panels_3d;
    std::optional<int> nodes;
    std::optional<double> tol;
    std::string rule = "gauss-legendre";
    std::optional<std::string> format;
    std::string out;
    bool no_interference = false;
    std::optional<std::string> c1sq_grid;
    std::optional<std::string> n3;
    std::string table = "all";
    int points = 101;
    std::optional<double> lo;
    std::optional<double> hi;
    bool direct = false;
    unsigned threads = 0;
};

/// Validated settings shared by all commands.
struct RunConfig {
    ModelParams params;
    std::optional<std::vector<int>> ns;
    std::optional<std::vector<int>> second;
    std::optional<SymmetryClass> symmetry;
    std::vector<Space> spaces;
    Format format = Format::Table;
    bool format_given = false;
    std::string out;
    bool interference = true;
    std::optional<std::vector<double>> c1sq;
    std::optional<std::pair<int, int>> n3;
    std::string table = "all";
    int points = 101;
    std::optional<double> lo;
    std::optional<double> hi;
    bool direct = false;

    std::optional<int> panels;
    std::optional<int> panels_3d;
    std::optional<int> nodes;
    std::optional<double> tol;
    RuleFamily rule = RuleFamily::GaussLegendreComposite;

    /// Default scheme of `space` with the command-line overrides applied.
    /// --panels alone sets both the 1D/2D and the 3D panel counts.
    QuadratureScheme scheme(Space space) const;
};

/// Throws ConfigurationError with a message naming the offending option.
RunConfig resolve(const RawOptions& raw);

std::vector<int> parse_int_list(std::string_view text, std::string_view option);
std::vector<double> parse_double_list(std::string_view text, std::string_view option);

/// "a..b", "a:b" or "a-b", inclusive.
std::pair<int, int> parse_range(std::string_view text, std::string_view option);

SymmetryClass parse_symmetry(std::string_view text);

} // namespace qcorr::cli
