// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
//
// The process exits 0 whenever every criterion could be evaluated, failing
// or not; a non-zero exit means the harness itself broke. The full log is
// also written to the file given with --report.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>
#include <qcorr/densities.hpp>
#include <qcorr/information.hpp>
#include <qcorr/orbitals.hpp>
#include <qcorr/quadrature.hpp>
#include <qcorr/superposition.hpp>

#include "oracles.hpp"

using namespace qcorr;
using std::numbers::pi;

namespace {

struct Verdict {
    bool pass = true;
    std::string summary;
    std::vector<std::string> details;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            details.push_back("violated: " + what);
        }
    }
    void note(const std::string& line) { details.push_back(line); }
};

std::string fmt(const char* format, auto... args) {
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, format, args...);
    return buffer;
}

class Log {
public:
    explicit Log(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
        }
    }
    void line(const std::string& text) {
        std::cout << text << '\n' << std::flush;
        if (file_) {
            file_ << text << '\n' << std::flush;
        }
    }

private:
    std::ofstream file_;
};

// Every report computed anywhere in the run, for the hierarchy identity.
std::vector<std::pair<std::string, InformationReport>> g_reports;

InformationReport compute(const Configuration& c, const ReportOptions& options = {}) {
    InformationReport r = information_report(WaveFunction::build(c), QuadratureScheme::defaults(c.space, c.params.kind), options);
    g_reports.emplace_back(c.describe(), r);
    return r;
}

Configuration box_state(int n3, SymmetryClass sym, Space space) {
    return {ModelParams::box(1.0), {1, 2, n3}, sym, space};
}

Configuration ho_state(int n3, SymmetryClass sym, double omega, Space space) {
    return {ModelParams::oscillator(omega), {0, 1, n3}, sym, space};
}

std::vector<double> row_values(const InformationReport& r) {
    return {r.entropies.s1, r.entropies.s2, *r.entropies.s3, r.I_pair,
            *r.I_total3,    *r.I_one_pair,  *r.I_pair_pair,  *r.I_higher};
}

SymmetryClass symmetry_of(const std::string& s) {
    return s == "a" ? SymmetryClass::Antisymmetric : SymmetryClass::Symmetric;
}

using Key = std::pair<int, SymmetryClass>;

// Table runs, keyed by (n3, symmetry).
std::map<Key, InformationReport> g_table1;
std::map<Key, InformationReport> g_table2;
std::map<Key, InformationReport> g_box_momentum;

// ---------------------------------------------------------------------------

Verdict quadrature_validation() {
    Verdict v;
    const QuadratureScheme scheme;

    const double closed = std::log(2.0) - 1.0;
    const auto density = [](double x) { return 2.0 * std::pow(std::sin(pi * x), 2); };
    const double simpson = oracle::entropy_1d(density, 0.0, 1.0);
    const IntegralResult engine = integrate(
        [&](std::span<const double> x) { return entropy_integrand(density(x[0])); }, 1,
        Domain::interval(0.0, 1.0), scheme);
    v.note(fmt("ln 2 - 1 = %.12f, Simpson oracle %.12f, engine %.12f", closed, simpson, engine.value));
    v.require(std::abs(simpson - closed) <= 1e-10, "Simpson oracle confirms ln 2 - 1 to 1e-10");
    v.require(std::abs(engine.value - closed) <= 1e-8, "engine entropy within 1e-8 of ln 2 - 1");

    const auto moment = [](double x) { return x * x * std::sqrt(2.0 / pi) * std::exp(-2.0 * x * x); };
    const IntegralResult m = integrate([&](std::span<const double> x) { return moment(x[0]); }, 1,
                                       Domain::line(1.0), scheme);
    const double m_oracle = oracle::simpson_line(moment);
    v.note(fmt("Gaussian moment at omega = 2: engine %.14f, oracle %.14f, exact 0.25", m.value, m_oracle));
    v.require(std::abs(m.value - 0.25) <= 1e-10 && std::abs(m_oracle - 0.25) <= 1e-10,
              "Gaussian moment 1/(2 omega) to 1e-10");

    const IntegralResult g = integrate([](std::span<const double> x) { return std::exp(-x[0] * x[0]); }, 1,
                                       Domain::line(1.0), scheme);
    v.note(fmt("integral of exp(-p^2) through the map: %.14f (sqrt(pi) = %.14f)", g.value, std::sqrt(pi)));
    v.require(std::abs(g.value - std::sqrt(pi)) <= 1e-10, "sqrt(pi) to 1e-10");

    const auto params = ModelParams::box(1.0);
    const AxisRule rule = axis_rule(params, Space::Momentum, 10, 24, 10, RuleFamily::GaussLegendreComposite);
    double worst = 0.0;
    for (int n = 1; n <= 10; ++n) {
        double norm = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const Amplitude a = rule.averaged[i] != 0
                                    ? eval_box_momentum_envelope(n, 1.0, rule.coord[i], rule.phase[i])
                                    : eval_box_momentum(n, 1.0, rule.coord[i]);
            norm += rule.weight[i] * std::norm(a);
        }
        worst = std::max(worst, std::abs(norm - 1.0));
    }
    v.note(fmt("box momentum unitarity, n = 1..10: max |norm - 1| = %.2e", worst));
    v.require(worst <= 1e-8, "Fourier unitarity to 1e-8");

    double ft = 0.0;
    for (double p : {-9.0, -pi, 0.0, 1.3, 2.0 * pi, 12.5}) {
        ft = std::max(ft, std::abs(eval_box_momentum(1, 1.0, p) - oracle::box_momentum_ft(1, 1.0, p)));
    }
    v.note(fmt("box momentum orbital vs numerical Fourier transform: max diff %.2e", ft));
    v.require(ft <= 1e-9, "closed-form transform matches the numerical one to 1e-9");

    v.summary = "Quadrature validation (ln 2 - 1, Gaussian moment, Fourier unitarity)";
    return v;
}

Verdict table_reproduction(int id, const nlohmann::json& table, std::map<Key, InformationReport>& store) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    const bool box = table.at("model").get<std::string>() == "box";
    int cells = 0;
    int within = 0;
    double max_delta = 0.0;
    for (const auto& col : table.at("columns")) {
        const int n3 = col.at("n3").get<int>();
        const SymmetryClass sym = symmetry_of(col.at("sym").get<std::string>());
        const Configuration c = box ? box_state(n3, sym, Space::Position)
                                    : ho_state(n3, sym, table.at("omega").get<double>(), Space::Position);
        const InformationReport r = compute(c);
        store[{n3, sym}] = r;
        const auto ref = col.at("values").get<std::vector<double>>();
        const auto got = row_values(r);
        for (std::size_t k = 0; k < ref.size(); ++k) {
            const double delta = std::abs(got[k] - ref[k]);
            ++cells;
            max_delta = std::max(max_delta, delta);
            if (delta <= 2e-3) {
                ++within;
            } else {
                v.note(fmt("cell %zu of %s: computed %.5f reference %.4f", k, c.describe().c_str(), got[k], ref[k]));
            }
        }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.require(cells == 64, "64 cells compared");
    v.require(within == cells, "every cell within 2e-3");
    v.summary = fmt("Table %d reproduction: %d/%d cells within 2e-3, max |delta| %.2e (%.1f s)", id, within,
                    cells, max_delta, seconds);
    return v;
}

Verdict oracle_equivalence() {
    Verdict v;
    double worst = 0.0;
    for (Space space : {Space::Position, Space::Momentum}) {
        for (auto sym : {SymmetryClass::Antisymmetric, SymmetryClass::Symmetric}) {
            const InformationReport r = compute(box_state(3, sym, space), {true});
            if (space == Space::Momentum) {
                g_box_momentum[{3, sym}] = r;
            }
            const double dp = std::abs(*r.I_pair_direct - r.I_pair);
            const double dh = std::abs(*r.I_higher_direct - *r.I_higher);
            worst = std::max({worst, dp, dh});
            v.note(fmt("%s: I_pair %.8f direct %.8f, I3 %.8f direct %.8f", r.system.c_str(), r.I_pair,
                       *r.I_pair_direct, *r.I_higher, *r.I_higher_direct));
            v.require(dp <= 1e-5 && dh <= 1e-5, r.system + " direct and combination agree to 1e-5");
        }
    }
    v.summary = fmt("Oracle equivalence, direct vs entropy combinations on (1,2,3): max |diff| %.2e", worst);
    return v;
}

Verdict property_suite() {
    Verdict v;
    const QuadratureScheme xs = QuadratureScheme::defaults(Space::Position);
    const QuadratureScheme ps = QuadratureScheme::defaults(Space::Momentum);

    // (a) and (b)
    double sup = 0.0;
    double hole = 0.0;
    for (Space space : {Space::Position, Space::Momentum}) {
        for (int n3 = 3; n3 <= 6; ++n3) {
            const WaveFunction a = WaveFunction::build(box_state(n3, SymmetryClass::Antisymmetric, space));
            const WaveFunction s = WaveFunction::build(box_state(n3, SymmetryClass::Symmetric, space));
            const auto ra = reduce_to_one(a);
            const auto rs = reduce_to_one(s);
            const auto ga = reduce_to_pair(a);
            for (int i = 0; i < 1000; ++i) {
                const double t = space == Space::Position ? i / 999.0 : -40.0 + 80.0 * i / 999.0;
                const std::array<double, 1> x{t};
                const std::array<double, 2> xx{t, t};
                sup = std::max(sup, std::abs(ra(x) - rs(x)));
                hole = std::max(hole, std::abs(ga(xx)));
            }
        }
    }
    v.note(fmt("(a) sup |rho_S - rho_A| over Table-1 states, both spaces: %.2e", sup));
    v.require(sup <= 1e-10, "(a) one-particle densities coincide to 1e-10");
    v.note(fmt("(b) max |Gamma(t,t)| for antisymmetric states, 1000 points each: %.2e", hole));
    v.require(hole <= 1e-12, "(b) Fermi hole on the diagonal");

    // (c)
    double least = std::numeric_limits<double>::infinity();
    for (int n3 = 3; n3 <= 6; ++n3) {
        for (auto sym : {SymmetryClass::Antisymmetric, SymmetryClass::Symmetric}) {
            const EntropySum sum = entropy_sum_check(WaveFunction::build(box_state(n3, sym, Space::Position)),
                                                     WaveFunction::build(box_state(n3, sym, Space::Momentum)), xs, ps);
            least = std::min(least, sum.sum);
            v.require(sum.sum >= kEntropicBound, fmt("(c) s_x + s_p >= 1 + ln pi for n3 = %d", n3));
        }
    }
    v.note(fmt("(c) smallest s_x + s_p over Table-1 states: %.6f (bound %.6f)", least, kEntropicBound));

    // (d)
    double cmax = 0.0;
    for (Space space : {Space::Position, Space::Momentum}) {
        const QuadratureScheme& scheme = space == Space::Position ? xs : ps;
        for (int n3 = 3; n3 <= 6; ++n3) {
            for (auto sym : {SymmetryClass::Antisymmetric, SymmetryClass::Symmetric}) {
                cmax = std::max(cmax, std::abs(cumulant3(WaveFunction::build(box_state(n3, sym, space)), scheme).value));
                cmax = std::max(cmax, std::abs(cumulant3(WaveFunction::build(ho_state(n3 - 1, sym, 1.0, space)), scheme).value));
            }
        }
    }
    v.note(fmt("(d) max |C| over Table-1 and Table-2 states, both spaces: %.2e", cmax));
    v.require(cmax <= 1e-6, "(d) third-order cumulants vanish to 1e-6");

    // (e)
    double shift = 0.0;
    for (int n3 = 2; n3 <= 5; ++n3) {
        for (auto sym : {SymmetryClass::Antisymmetric, SymmetryClass::Symmetric}) {
            const InformationReport& one = g_table2.count({n3, sym}) != 0
                                               ? g_table2.at({n3, sym})
                                               : (g_table2[{n3, sym}] = compute(ho_state(n3, sym, 1.0, Space::Position)));
            const InformationReport four = compute(ho_state(n3, sym, 4.0, Space::Position));
            const InformationReport mom = compute(ho_state(n3, sym, 1.0, Space::Momentum));
            for (const InformationReport* other : {&four, &mom}) {
                const double d = std::max({std::abs(other->I_pair - one.I_pair),
                                           std::abs(*other->I_total3 - *one.I_total3),
                                           std::abs(*other->I_one_pair - *one.I_one_pair),
                                           std::abs(*other->I_pair_pair - *one.I_pair_pair),
                                           std::abs(*other->I_higher - *one.I_higher)});
                shift = std::max(shift, d);
            }
        }
    }
    v.note(fmt("(e) oscillator measures, max change under omega 1 -> 4 and position -> momentum: %.2e", shift));
    v.require(shift <= 1e-5, "(e) oscillator measures invariant to 1e-5");

    v.summary = "Property suite (a) density equality (b) Fermi hole (c) entropic bound (d) cumulants (e) omega invariance";
    return v;
}

Verdict sign_pattern() {
    Verdict v;
    for (int n3 = 3; n3 <= 6; ++n3) {
        const double a = *g_table1.at({n3, SymmetryClass::Antisymmetric}).I_higher;
        const double s = *g_table1.at({n3, SymmetryClass::Symmetric}).I_higher;
        v.note(fmt("n3 = %d: I3 symmetric %.5f antisymmetric %.5f", n3, s, a));
        if (n3 == 4) {
            v.require(a > s, "antisymmetric above symmetric at n3 = 4");
        } else {
            v.require(s > a, fmt("symmetric above antisymmetric at n3 = %d", n3));
        }
    }
    v.summary = "Sign pattern of I3_x: symmetric > antisymmetric for n3 = 3, 5, 6 and reversed for n3 = 4";
    return v;
}

struct ScanSummary {
    std::vector<double> c1sq;
    std::vector<double> i3;
    std::size_t argmax = 0;
    std::size_t argmin = 0;
    bool complete = true;
};

ScanSummary run_scan(SymmetryClass sym, bool interference, Verdict& v) {
    const auto spec = SuperpositionSpec::box_pair(sym, Space::Position, interference);
    const auto grid = default_c1sq_grid();
    const ScanResult scan = scan_coefficient(spec, grid, QuadratureScheme::defaults(Space::Position));
    ScanSummary out;
    std::ostringstream values;
    for (const ScanSample& sample : scan.samples) {
        if (!sample.report) {
            out.complete = false;
            v.note(fmt("sample c1^2 = %.2f failed: %s", sample.c1sq, sample.error.c_str()));
            continue;
        }
        g_reports.emplace_back(fmt("superposition %s c1^2=%.2f", sample.report->system.c_str(), sample.c1sq),
                               *sample.report);
        out.c1sq.push_back(sample.c1sq);
        out.i3.push_back(*sample.report->I_higher);
        values << fmt(" %.5f", *sample.report->I_higher);
    }
    out.argmax = std::max_element(out.i3.begin(), out.i3.end()) - out.i3.begin();
    out.argmin = std::min_element(out.i3.begin(), out.i3.end()) - out.i3.begin();
    v.note(fmt("%s, interference %s: I3 over c1^2 = 0..1:%s", std::string(to_string(sym)).c_str(),
               interference ? "on" : "off", values.str().c_str()));
    return out;
}

double value_at(const ScanSummary& s, double c1sq) {
    for (std::size_t i = 0; i < s.c1sq.size(); ++i) {
        if (std::abs(s.c1sq[i] - c1sq) < 1e-12) {
            return s.i3[i];
        }
    }
    return std::nan("");
}

Verdict superposition_scans() {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    const ScanSummary a = run_scan(SymmetryClass::Antisymmetric, true, v);
    const ScanSummary s = run_scan(SymmetryClass::Symmetric, true, v);
    const ScanSummary d = run_scan(SymmetryClass::Distinguishable, true, v);
    const ScanSummary off = run_scan(SymmetryClass::Distinguishable, false, v);
    for (const ScanSummary* scan : {&a, &s, &d, &off}) {
        v.require(scan->complete, "every scan sample evaluated");
    }
    const struct {
        const char* name;
        const ScanSummary& scan;
    } on[] = {{"antisymmetric", a}, {"symmetric", s}, {"distinguishable", d}};
    for (const auto& [name, scan] : on) {
        const double peak = scan.c1sq[scan.argmax];
        v.note(fmt("%s: argmax at c1^2 = %.2f (I3 %.6f), at 0.5: %.6f", name, peak, scan.i3[scan.argmax],
                   value_at(scan, 0.5)));
        v.require(std::abs(peak - 0.5) < 1e-12, fmt("%s argmax at c1^2 = 0.5", name));
    }
    const double ia = value_at(a, 0.5);
    const double is = value_at(s, 0.5);
    const double id = value_at(d, 0.5);
    v.require(ia > is && is > id, "antisymmetric > symmetric > distinguishable at c1^2 = 0.5");
    double largest = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < off.c1sq.size(); ++i) {
        if (off.c1sq[i] > 0.0 && off.c1sq[i] < 1.0) {
            largest = std::max(largest, off.i3[i]);
        }
    }
    v.note(fmt("distinguishable, interference off: minimum at c1^2 = %.2f (I3 %.6f), at 0.5: %.6f, "
               "largest interior value %.6f",
               off.c1sq[off.argmin], off.i3[off.argmin], value_at(off, 0.5), largest));
    v.require(value_at(off, 0.5) < 0.0, "incoherent distinguishable I3 < 0 at c1^2 = 0.5");
    v.require(std::abs(off.c1sq[off.argmin] - 0.5) < 1e-12, "incoherent distinguishable minimum at c1^2 = 0.5");
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.summary = fmt("Superposition scans over the 21-point c1^2 grid (%.1f s)", seconds);
    return v;
}

Verdict hierarchy_identity() {
    Verdict v;
    double worst = 0.0;
    int checked = 0;
    for (const auto& [name, r] : g_reports) {
        if (!r.I_total3) {
            continue;
        }
        ++checked;
        const double d = std::max({std::abs(*r.I_total3 - *r.I_one_pair - r.I_pair),
                                   std::abs(*r.I_one_pair - *r.I_pair_pair - r.I_pair),
                                   std::abs(*r.I_pair_pair - *r.I_higher - r.I_pair)});
        worst = std::max(worst, d);
        v.require(d <= 1e-9, name + " hierarchy differences equal I_pair");
    }
    v.summary = fmt("Hierarchy identity over %d computed reports: max deviation %.2e", checked, worst);
    return v;
}

Verdict figure_checks() {
    Verdict v;
    for (int n3 = 3; n3 <= 6; ++n3) {
        for (auto sym : {SymmetryClass::Antisymmetric, SymmetryClass::Symmetric}) {
            if (g_box_momentum.count({n3, sym}) == 0) {
                g_box_momentum[{n3, sym}] = compute(box_state(n3, sym, Space::Momentum));
            }
        }
    }
    for (auto sym : {SymmetryClass::Antisymmetric, SymmetryClass::Symmetric}) {
        const std::string name(to_string(sym));
        for (int n3 = 4; n3 <= 6; ++n3) {
            const auto& prev = g_box_momentum.at({n3 - 1, sym});
            const auto& cur = g_box_momentum.at({n3, sym});
            v.require(cur.I_pair > prev.I_pair, fmt("%s I_p increases from n3 = %d", name.c_str(), n3 - 1));
            v.require(*cur.I_total3 > *prev.I_total3, fmt("%s I3_p increases from n3 = %d", name.c_str(), n3 - 1));
        }
    }
    for (int n3 = 3; n3 <= 6; ++n3) {
        for (const auto* table : {&g_table1, &g_box_momentum}) {
            const auto& a = table->at({n3, SymmetryClass::Antisymmetric});
            const auto& s = table->at({n3, SymmetryClass::Symmetric});
            const char* space = table == &g_table1 ? "position" : "momentum";
            v.require(a.I_pair > s.I_pair, fmt("%s pair information antisymmetric > symmetric at n3 = %d", space, n3));
            v.require(*a.I_total3 > *s.I_total3,
                      fmt("%s three-variable information antisymmetric > symmetric at n3 = %d", space, n3));
        }
        for (auto sym : {SymmetryClass::Antisymmetric, SymmetryClass::Symmetric}) {
            const double ix = g_table1.at({n3, sym}).I_pair;
            const double ip = g_box_momentum.at({n3, sym}).I_pair;
            const bool exception = sym == SymmetryClass::Antisymmetric && n3 == 3;
            v.note(fmt("n3 = %d %s: I_x %.5f I_p %.5f", n3, std::string(to_string(sym)).c_str(), ix, ip));
            v.require(exception ? ip < ix : ip > ix, fmt("I_p vs I_x ordering at n3 = %d", n3));
        }
    }
    v.summary = "Figure checks: I_p rises with n3, antisymmetric > symmetric, I_p > I_x except antisymmetric n3 = 3";
    return v;
}

} // namespace

int main(int argc, char** argv) {
    std::string report_path;
    for (int i = 1; i < argc; ++i) {
        if (std::string(argv[i]) == "--report" && i + 1 < argc) {
            report_path = argv[++i];
        }
    }
    Log log(report_path);

    nlohmann::json tables;
    try {
        std::ifstream in(QCORR_REFERENCE_TABLES);
        tables = nlohmann::json::parse(in);
    } catch (const std::exception& e) {
        std::cerr << "cannot read reference tables: " << e.what() << '\n';
        return 2;
    }

    int passed = 0;
    int total = 0;
    const auto emit = [&](const std::string& label, const std::function<Verdict()>& body) {
        Verdict v;
        try {
            v = body();
        } catch (const std::exception& e) {
            v.pass = false;
            v.summary = label + " aborted";
            v.note(std::string("exception: ") + e.what());
        }
        ++total;
        passed += v.pass ? 1 : 0;
        log.line(std::string(v.pass ? "PASS " : "FAIL ") + label + "  " + v.summary);
        for (const auto& d : v.details) {
            log.line("       " + d);
        }
    };

    bool validated = false;
    emit("[8]", [&] {
        Verdict v = quadrature_validation();
        validated = v.pass;
        return v;
    });
    const auto table_or_skip = [&](int id) {
        return [&, id] {
            if (!validated) {
                Verdict v;
                v.pass = false;
                v.summary = fmt("Table %d reproduction not attempted: quadrature validation failed", id);
                return v;
            }
            return table_reproduction(id, tables.at("tables").at(id - 1), id == 1 ? g_table1 : g_table2);
        };
    };
    emit("[1]", table_or_skip(1));
    emit("[2]", table_or_skip(2));
    emit("[4]", oracle_equivalence);
    emit("[5]", property_suite);
    emit("[6]", sign_pattern);
    emit("[F]", figure_checks);
    emit("[7]", superposition_scans);
    emit("[3]", hierarchy_identity);

    log.line(fmt("acceptance: %d/%d criteria passed", passed, total));
    return 0;
}
