#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include <qcorr/densities.hpp>
#include <qcorr/errors.hpp>
#include <qcorr/information.hpp>
#include <qcorr/parallel.hpp>
#include <qcorr/superposition.hpp>

#include "qcorr_cli/cli.hpp"
#include "qcorr_cli/config.hpp"
#include "qcorr_cli/output.hpp"
#include "qcorr_cli/reference_tables.hpp"

namespace qcorr::cli {

namespace {

using nlohmann::json;

constexpr double kTableTolerance = 2e-3;

char symmetry_letter(SymmetryClass s) {
    switch (s) {
    case SymmetryClass::Symmetric:
        return 's';
    case SymmetryClass::Antisymmetric:
        return 'a';
    case SymmetryClass::Distinguishable:
        return 'd';
    }
    return '?';
}

// Writes to --out when given, otherwise to the command's output stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) {
                throw ConfigurationError("cannot open output file '" + path + "'");
            }
            stream_ = &file_;
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

std::vector<int> default_state(const RunConfig& cfg) {
    return cfg.params.kind == Model::Box ? std::vector<int>{1, 2, 3} : std::vector<int>{0, 1, 2};
}

Space single_space(const RunConfig& cfg, const char* command) {
    if (cfg.spaces.size() != 1) {
        throw ConfigurationError(std::string(command) + " needs --space position or momentum");
    }
    return cfg.spaces.front();
}

void emit_warnings(const InformationReport& r, std::ostream& err) {
    for (const auto& w : r.warnings) {
        err << "warning: " << r.system << ": " << w << '\n';
    }
}

std::string join_ns(const std::vector<int>& ns) {
    std::string s;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        s += (i ? "," : "") + std::to_string(ns[i]);
    }
    return s;
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const std::vector<int> ns = cfg.ns.value_or(default_state(cfg));
    const SymmetryClass sym = cfg.symmetry.value_or(SymmetryClass::Antisymmetric);
    std::vector<Configuration> configs;
    for (Space space : cfg.spaces) {
        configs.push_back({cfg.params, ns, sym, space});
        configs.back().validate();
    }
    std::vector<InformationReport> reports;
    for (const auto& c : configs) {
        reports.push_back(information_report(WaveFunction::build(c), cfg.scheme(c.space), {cfg.direct}));
        emit_warnings(reports.back(), err);
    }
    std::optional<EntropySum> sum;
    if (reports.size() == 2) {
        EntropySum s;
        s.position = reports[0].entropies.s1;
        s.momentum = reports[1].entropies.s1;
        s.sum = s.position + s.momentum;
        s.satisfied = s.sum >= s.bound;
        sum = s;
    }

    Sink sink(cfg.out, out);
    std::ostream& o = *sink;
    switch (cfg.format) {
    case Format::Json: {
        json j{{"reports", json::array()}};
        for (const auto& r : reports) {
            j["reports"].push_back(to_json(r));
        }
        if (sum) {
            j["entropy_sum"] = {{"position", sum->position},
                                {"momentum", sum->momentum},
                                {"sum", sum->sum},
                                {"bound", sum->bound},
                                {"satisfied", sum->satisfied}};
        }
        o << j.dump(2) << '\n';
        break;
    }
    case Format::Csv:
        write_csv_header(o, {"model", "space", "sym", "n"});
        for (const auto& r : reports) {
            write_csv_row(o,
                          {std::string(to_string(cfg.params.kind)), std::string(to_string(r.space)),
                           std::string(1, symmetry_letter(sym)), "\"" + join_ns(ns) + "\""},
                          r);
        }
        break;
    case Format::Table: {
        o << reports.front().system.substr(0, reports.front().system.rfind(' ')) << '\n';
        std::vector<std::string> headers;
        for (const auto& r : reports) {
            headers.emplace_back(to_string(r.space));
        }
        write_table(o, headers, reports);
        o << std::setprecision(6) << std::fixed;
        for (const auto& r : reports) {
            if (r.I_pair_direct) {
                o << "direct (" << to_string(r.space) << "): I_pair " << *r.I_pair_direct;
                if (r.I_higher_direct) {
                    o << ", I_higher " << *r.I_higher_direct;
                }
                o << '\n';
            }
        }
        o << "max error estimate:";
        for (const auto& r : reports) {
            const auto& e = r.entropies;
            o << ' ' << std::scientific << std::setprecision(1)
              << std::max({e.s1_error, e.s2_error, e.s3_error.value_or(0.0)});
        }
        o << '\n';
        if (sum) {
            o << std::fixed << std::setprecision(6) << "s_x + s_p = " << sum->sum << " (bound "
              << sum->bound << (sum->satisfied ? ", satisfied)" : ", VIOLATED)") << '\n';
        }
        break;
    }
    }
    return kOk;
}

int cmd_scan_n3(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const bool box = cfg.params.kind == Model::Box;
    const std::vector<int> fixed = cfg.ns.value_or(box ? std::vector<int>{1, 2} : std::vector<int>{0, 1});
    if (fixed.size() != 2) {
        throw ConfigurationError("scan-n3 takes the two fixed quantum numbers in --n");
    }
    const auto [lo, hi] = cfg.n3.value_or(box ? std::pair{3, 6} : std::pair{2, 5});
    std::vector<SymmetryClass> syms;
    if (cfg.symmetry) {
        syms.push_back(*cfg.symmetry);
    } else {
        syms = {SymmetryClass::Antisymmetric, SymmetryClass::Symmetric};
    }
    std::vector<Configuration> configs;
    for (Space space : cfg.spaces) {
        for (SymmetryClass sym : syms) {
            for (int n3 = lo; n3 <= hi; ++n3) {
                configs.push_back({cfg.params, {fixed[0], fixed[1], n3}, sym, space});
                configs.back().validate();
            }
        }
    }
    std::vector<InformationReport> reports;
    for (const auto& c : configs) {
        reports.push_back(information_report(WaveFunction::build(c), cfg.scheme(c.space), {cfg.direct}));
        emit_warnings(reports.back(), err);
    }

    Sink sink(cfg.out, out);
    std::ostream& o = *sink;
    const Format format = cfg.format_given ? cfg.format : Format::Csv;
    if (format == Format::Json) {
        json j = json::array();
        for (std::size_t i = 0; i < reports.size(); ++i) {
            json row = to_json(reports[i]);
            row["n3"] = configs[i].ns[2];
            j.push_back(row);
        }
        o << j.dump(2) << '\n';
    } else if (format == Format::Csv) {
        write_csv_header(o, {"space", "sym", "n1", "n2", "n3"});
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto& c = configs[i];
            write_csv_row(o,
                          {std::string(to_string(c.space)), std::string(1, symmetry_letter(c.symmetry)),
                           std::to_string(c.ns[0]), std::to_string(c.ns[1]), std::to_string(c.ns[2])},
                          reports[i]);
        }
    } else {
        for (Space space : cfg.spaces) {
            std::vector<std::string> headers;
            std::vector<InformationReport> block;
            for (std::size_t i = 0; i < reports.size(); ++i) {
                if (configs[i].space == space) {
                    headers.push_back(std::string(1, static_cast<char>(std::toupper(
                                          symmetry_letter(configs[i].symmetry))))
                                      + " n3=" + std::to_string(configs[i].ns[2]));
                    block.push_back(reports[i]);
                }
            }
            o << to_string(space) << '\n';
            write_table(o, headers, block);
        }
    }
    return kOk;
}

int cmd_scan_superposition(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const Space space = single_space(cfg, "scan-superposition");
    const bool box = cfg.params.kind == Model::Box;
    SuperpositionSpec spec;
    const SymmetryClass sym = cfg.symmetry.value_or(SymmetryClass::Antisymmetric);
    spec.first = {cfg.params, cfg.ns.value_or(default_state(cfg)), sym, space};
    spec.second = {cfg.params,
                   cfg.second.value_or(box ? std::vector<int>{4, 5, 6} : std::vector<int>{3, 4, 5}),
                   sym, space};
    spec.interference = cfg.interference;
    spec.validate();
    const std::vector<double> grid = cfg.c1sq.value_or(default_c1sq_grid());
    const ScanResult scan = scan_coefficient(spec, grid, cfg.scheme(space));

    Sink sink(cfg.out, out);
    std::ostream& o = *sink;
    const Format format = cfg.format_given ? cfg.format : Format::Csv;
    if (format == Format::Json) {
        o << to_json(scan).dump(2) << '\n';
    } else if (format == Format::Csv) {
        write_scan_csv(scan, o);
    } else {
        std::vector<std::string> headers;
        std::vector<InformationReport> block;
        for (const auto& s : scan.samples) {
            if (s.report) {
                std::ostringstream h;
                h << "c1^2=" << s.c1sq;
                headers.push_back(h.str());
                block.push_back(*s.report);
            }
        }
        write_table(o, headers, block);
    }
    if (!scan.complete()) {
        for (const auto& s : scan.samples) {
            if (!s.report) {
                throw NonConvergenceError("c1^2 = " + std::to_string(s.c1sq) + ": " + s.error, 0.0);
            }
        }
    }
    return kOk;
}

struct Cell {
    int table;
    std::string row;
    int n3;
    char sym;
    double computed;
    double reference;
    double delta() const { return computed - reference; }
    bool pass() const { return std::abs(delta()) <= kTableTolerance; }
};

int cmd_tables(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const json ref = json::parse(kReferenceTables);
    const auto names = ref.at("rows").get<std::vector<std::string>>();
    std::vector<Cell> cells;
    Sink sink(cfg.out, out);
    std::ostream& o = *sink;
    const Format format = cfg.format_given ? cfg.format : Format::Table;
    json tables_json = json::array();

    for (const json& table : ref.at("tables")) {
        const int id = table.at("id").get<int>();
        if (cfg.table != "all" && cfg.table != std::to_string(id)) {
            continue;
        }
        const bool box = table.at("model").get<std::string>() == "box";
        const ModelParams params = box ? ModelParams::box(table.at("L").get<double>())
                                       : ModelParams::oscillator(table.at("omega").get<double>());
        const auto fixed = table.at("fixed").get<std::vector<int>>();
        QuadratureScheme scheme = cfg.scheme(Space::Position);
        // Tables are compared cell by cell; a coarse scheme should show up as
        // offending cells rather than abort the run.
        scheme.enforce_convergence = false;

        std::vector<std::string> headers;
        std::vector<InformationReport> reports;
        std::vector<std::vector<double>> refs;
        json cells_json = json::array();
        for (const json& col : table.at("columns")) {
            const int n3 = col.at("n3").get<int>();
            const char sym = col.at("sym").get<std::string>().front();
            const Configuration c{params, {fixed[0], fixed[1], n3}, parse_symmetry(std::string(1, sym)),
                                  Space::Position};
            reports.push_back(information_report(WaveFunction::build(c), scheme));
            emit_warnings(reports.back(), err);
            headers.push_back(std::string(1, static_cast<char>(std::toupper(sym))) + " n3="
                              + std::to_string(n3));
            refs.push_back(col.at("values").get<std::vector<double>>());
            const auto computed = row_values(reports.back());
            for (std::size_t r = 0; r < names.size(); ++r) {
                cells.push_back({id, names[r], n3, sym, computed[r], refs.back()[r]});
                const Cell& cell = cells.back();
                cells_json.push_back({{"row", cell.row},
                                      {"n3", n3},
                                      {"sym", std::string(1, sym)},
                                      {"computed", cell.computed},
                                      {"reference", cell.reference},
                                      {"delta", cell.delta()},
                                      {"pass", cell.pass()}});
            }
        }
        bool table_pass = true;
        double worst = 0.0;
        for (const auto& cell : cells) {
            if (cell.table == id) {
                table_pass = table_pass && cell.pass();
                worst = std::max(worst, std::abs(cell.delta()));
            }
        }
        tables_json.push_back({{"id", id}, {"cells", cells_json}, {"pass", table_pass},
                               {"max_abs_delta", worst}});

        if (format == Format::Table) {
            o << "Table " << id << " (computed)\n";
            write_table(o, headers, reports);
            o << "Table " << id << " (computed - reference)\n";
            const auto flags = o.flags();
            o << std::left << std::setw(15) << "" << std::right;
            for (const auto& h : headers) {
                o << std::setw(12) << h;
            }
            o << '\n' << std::showpos << std::fixed << std::setprecision(4);
            for (std::size_t r = 0; r < names.size(); ++r) {
                o << std::left << std::setw(15) << names[r] << std::right;
                for (std::size_t c = 0; c < reports.size(); ++c) {
                    o << std::setw(12) << row_values(reports[c])[r] - refs[c][r];
                }
                o << '\n';
            }
            o.flags(flags);
            o << "Table " << id << ": " << (table_pass ? "PASS" : "FAIL") << " (max |delta| "
              << std::scientific << std::setprecision(2) << worst << ", tolerance " << kTableTolerance
              << ")\n";
            o.flags(flags);
        } else if (format == Format::Csv) {
            if (tables_json.size() == 1) {
                o << "table,row,n3,sym,computed,reference,delta,pass\n";
            }
            const auto old = o.precision(12);
            for (const auto& cell : cells) {
                if (cell.table == id) {
                    o << id << ',' << cell.row << ',' << cell.n3 << ',' << cell.sym << ','
                      << cell.computed << ',' << cell.reference << ',' << cell.delta() << ','
                      << (cell.pass() ? "pass" : "fail") << '\n';
                }
            }
            o.precision(old);
        }
    }

    bool all_pass = true;
    for (const auto& cell : cells) {
        if (!cell.pass()) {
            all_pass = false;
            err << "mismatch: table " << cell.table << ' ' << cell.row << " n3=" << cell.n3 << ' '
                << static_cast<char>(std::toupper(cell.sym)) << ": computed " << std::fixed
                << std::setprecision(4) << cell.computed << " reference " << cell.reference
                << '\n';
        }
    }
    if (format == Format::Json) {
        o << json{{"tables", tables_json}, {"tolerance", kTableTolerance}, {"pass", all_pass}}.dump(2)
          << '\n';
    }
    return all_pass ? kOk : kMismatch;
}

int cmd_density_grid(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const Space space = single_space(cfg, "density-grid");
    const Configuration c{cfg.params, cfg.ns.value_or(default_state(cfg)),
                          cfg.symmetry.value_or(SymmetryClass::Antisymmetric), space};
    const WaveFunction wf = WaveFunction::build(c);
    const ReducedDensity d = closed_form_available(wf, 2) ? reduce_to_pair(wf)
                                                          : reduce_numerical(wf, 2, cfg.scheme(space));
    const DensityGrid grid = export_density_grid(d, {cfg.points, cfg.lo, cfg.hi});
    Sink sink(cfg.out, out);
    write_density_grid_csv(grid, *sink);
    return kOk;
}

void add_common_options(CLI::App& app, RawOptions& raw) {
    app.add_option("--model", raw.model, "Single-particle model")
        ->check(CLI::IsMember({"box", "ho"}))
        ->capture_default_str();
    app.add_option("--L", raw.length, "Box length")->capture_default_str();
    app.add_option("--omega", raw.omega, "Oscillator strength")->capture_default_str();
    // Config files hand "1,2,3" over as separate values; rejoin them.
    auto list = [](CLI::Option* opt) {
        opt->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::Join);
    };
    list(app.add_option("--n", raw.ns, "Quantum numbers, e.g. 1,2,3"));
    list(app.add_option("--second", raw.second,
                        "Quantum numbers of the second superposed state (default 4,5,6 or 3,4,5)"));
    app.add_option("--sym", raw.sym, "Symmetry: s, a or d")->check(CLI::IsMember({"s", "a", "d"}));
    app.add_option("--space", raw.space, "position, momentum or both")
        ->check(CLI::IsMember({"position", "momentum", "both"}))
        ->capture_default_str();
    app.add_option("--panels", raw.panels, "Panels per axis (also sets --panels-3d unless given)");
    app.add_option("--panels-3d", raw.panels_3d, "Panels per axis for three-dimensional integrals");
    app.add_option("--nodes", raw.nodes, "Nodes per panel");
    app.add_option("--tol", raw.tol, "Target absolute error of each entropy");
    app.add_option("--rule", raw.rule, "gauss-legendre or tanh-sinh")->capture_default_str();
    app.add_option("--format", raw.format, "json, csv or table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--out", raw.out, "Output file (default stdout)");
    app.add_flag("--no-interference", raw.no_interference,
                 "Drop the c1 c2 cross terms of superposition densities");
    list(app.add_option("--c1sq-grid", raw.c1sq_grid, "Comma-separated c1^2 samples"));
    app.add_option("--n3", raw.n3, "Range of the third quantum number, e.g. 3..6");
    app.add_option("--table", raw.table, "1, 2 or all")->capture_default_str();
    app.add_option("--points", raw.points, "Grid points per axis")->capture_default_str();
    app.add_option("--lo", raw.lo, "Lower grid limit");
    app.add_option("--hi", raw.hi, "Upper grid limit");
    app.add_flag("--direct", raw.direct, "Also evaluate I_pair and I_higher as direct integrals");
    app.add_option("--threads", raw.threads, "Worker threads (0: QCORR_THREADS or all cores)");
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Shannon entropies and correlation measures of few-particle states", "qcorr"};
    app.set_config("--config", "", "Settings file of flat key = value lines; flags override it");
    app.require_subcommand(1);
    app.fallthrough();
    RawOptions raw;
    add_common_options(app, raw);

    using Command = int (*)(const RunConfig&, std::ostream&, std::ostream&);
    std::map<CLI::App*, Command> commands;
    commands[app.add_subcommand("report", "Entropies and measures of one state")] = cmd_report;
    commands[app.add_subcommand("scan-n3", "Reports for (n1, n2, n3) over a range of n3")] = cmd_scan_n3;
    commands[app.add_subcommand("scan-superposition", "Reports over the superposition coefficient")] =
        cmd_scan_superposition;
    commands[app.add_subcommand("tables", "Recompute the reference tables and compare")] = cmd_tables;
    commands[app.add_subcommand("density-grid", "Sample a pair density on a square grid (CSV)")] =
        cmd_density_grid;

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const RunConfig cfg = resolve(raw);
        if (raw.threads > 0) {
            set_thread_count(raw.threads);
        }
        for (const auto& [sub, command] : commands) {
            if (sub->parsed()) {
                return command(cfg, out, err);
            }
        }
        return kUsage;
    } catch (const ConfigurationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const NonConvergenceError& e) {
        err << "numerical failure: " << e.what() << " (estimate " << e.estimate() << ")\n";
        return kNumericalFailure;
    } catch (const ConsistencyError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
}

} // namespace qcorr::cli
