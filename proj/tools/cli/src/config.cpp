#include "qcorr_cli/config.hpp"

#include <charconv>
#include <string>

#include <qcorr/errors.hpp>

namespace qcorr::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"' || s.front() == '[')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '"' || s.back() == ']')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view text) {
    std::vector<std::string_view> parts;
    text = trim(text);
    while (!text.empty()) {
        const auto pos = text.find(',');
        parts.push_back(trim(text.substr(0, pos)));
        if (pos == std::string_view::npos) {
            break;
        }
        text.remove_prefix(pos + 1);
    }
    return parts;
}

template <class T>
T parse_number(std::string_view token, std::string_view option) {
    T value{};
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (token.empty() || ec != std::errc() || ptr != end) {
        throw ConfigurationError("--" + std::string(option) + ": cannot parse '"
                                 + std::string(token) + "' as a number");
    }
    return value;
}

} // namespace

std::vector<int> parse_int_list(std::string_view text, std::string_view option) {
    std::vector<int> out;
    for (auto token : split(text)) {
        out.push_back(parse_number<int>(token, option));
    }
    if (out.empty()) {
        throw ConfigurationError("--" + std::string(option) + " needs at least one value");
    }
    return out;
}

std::vector<double> parse_double_list(std::string_view text, std::string_view option) {
    std::vector<double> out;
    for (auto token : split(text)) {
        out.push_back(parse_number<double>(token, option));
    }
    if (out.empty()) {
        throw ConfigurationError("--" + std::string(option) + " needs at least one value");
    }
    return out;
}

std::pair<int, int> parse_range(std::string_view text, std::string_view option) {
    text = trim(text);
    std::size_t pos = text.find("..");
    std::size_t width = 2;
    if (pos == std::string_view::npos) {
        pos = text.find_first_of(":-", 1);
        width = 1;
    }
    if (pos == std::string_view::npos) {
        const int single = parse_number<int>(text, option);
        return {single, single};
    }
    const int a = parse_number<int>(trim(text.substr(0, pos)), option);
    const int b = parse_number<int>(trim(text.substr(pos + width)), option);
    if (b < a) {
        throw ConfigurationError("--" + std::string(option) + ": empty range");
    }
    return {a, b};
}

SymmetryClass parse_symmetry(std::string_view text) {
    if (text == "s" || text == "symmetric") {
        return SymmetryClass::Symmetric;
    }
    if (text == "a" || text == "antisymmetric") {
        return SymmetryClass::Antisymmetric;
    }
    if (text == "d" || text == "distinguishable") {
        return SymmetryClass::Distinguishable;
    }
    throw ConfigurationError("--sym must be s, a or d");
}

RunConfig resolve(const RawOptions& raw) {
    RunConfig cfg;
    if (raw.model == "box") {
        cfg.params = ModelParams::box(raw.length);
    } else if (raw.model == "ho") {
        cfg.params = ModelParams::oscillator(raw.omega);
    } else {
        throw ConfigurationError("--model must be box or ho");
    }
    cfg.params.validate();
    if (raw.ns) {
        cfg.ns = parse_int_list(*raw.ns, "n");
    }
    if (raw.second) {
        cfg.second = parse_int_list(*raw.second, "second");
    }
    if (raw.sym) {
        cfg.symmetry = parse_symmetry(*raw.sym);
    }
    if (raw.space == "position") {
        cfg.spaces = {Space::Position};
    } else if (raw.space == "momentum") {
        cfg.spaces = {Space::Momentum};
    } else if (raw.space == "both") {
        cfg.spaces = {Space::Position, Space::Momentum};
    } else {
        throw ConfigurationError("--space must be position, momentum or both");
    }
    if (raw.format) {
        cfg.format_given = true;
        if (*raw.format == "json") {
            cfg.format = Format::Json;
        } else if (*raw.format == "csv") {
            cfg.format = Format::Csv;
        } else if (*raw.format == "table") {
            cfg.format = Format::Table;
        } else {
            throw ConfigurationError("--format must be json, csv or table");
        }
    }
    if (raw.rule == "gauss-legendre" || raw.rule == "gl") {
        cfg.rule = RuleFamily::GaussLegendreComposite;
    } else if (raw.rule == "tanh-sinh") {
        cfg.rule = RuleFamily::TanhSinh;
    } else {
        throw ConfigurationError("--rule must be gauss-legendre or tanh-sinh");
    }
    cfg.out = raw.out;
    cfg.interference = !raw.no_interference;
    if (raw.c1sq_grid) {
        cfg.c1sq = parse_double_list(*raw.c1sq_grid, "c1sq-grid");
    }
    if (raw.n3) {
        cfg.n3 = parse_range(*raw.n3, "n3");
    }
    if (raw.table != "1" && raw.table != "2" && raw.table != "all") {
        throw ConfigurationError("--table must be 1, 2 or all");
    }
    cfg.table = raw.table;
    if (raw.points < 2) {
        throw ConfigurationError("--points must be at least 2");
    }
    cfg.points = raw.points;
    cfg.lo = raw.lo;
    cfg.hi = raw.hi;
    cfg.direct = raw.direct;
    cfg.panels = raw.panels;
    cfg.panels_3d = raw.panels_3d;
    cfg.nodes = raw.nodes;
    cfg.tol = raw.tol;
    // Catch bad quadrature overrides before any computation starts.
    for (Space s : {Space::Position, Space::Momentum}) {
        cfg.scheme(s).validate();
    }
    return cfg;
}

QuadratureScheme RunConfig::scheme(Space space) const {
    QuadratureScheme s = QuadratureScheme::defaults(space, params.kind);
    s.rule = rule;
    if (panels) {
        s.panels = *panels;
        s.panels_3d = *panels;
    }
    if (panels_3d) {
        s.panels_3d = *panels_3d;
    }
    if (nodes) {
        s.nodes = *nodes;
    }
    if (tol) {
        s.target_abs_tol = *tol;
    }
    return s;
}

} // namespace qcorr::cli
