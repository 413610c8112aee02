#include "qcorr/information.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "qcorr/errors.hpp"
#include "qcorr/parallel.hpp"

namespace qcorr {

double mutual_information_pair(const EntropyTriple& s) {
    return 2.0 * s.s1 - s.s2;
}

double mutual_information_three(const EntropyTriple& s) {
    return 3.0 * s.s1 - s.s3.value();
}

double mutual_information_one_pair(const EntropyTriple& s) {
    return s.s1 + s.s2 - s.s3.value();
}

double mutual_information_pair_pair(const EntropyTriple& s) {
    return 2.0 * s.s2 - s.s1 - s.s3.value();
}

double mutual_information_higher(const EntropyTriple& s) {
    return 3.0 * s.s2 - 3.0 * s.s1 - s.s3.value();
}

namespace {

// Pair slots in the order (x1,x2), (x1,x3), (x2,x3).
constexpr std::array<std::array<int, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};

struct Grid {
    AxisRule rule;
    std::vector<OrbitalRow> rows;

    std::size_t size() const noexcept { return rule.size(); }
    const double* w() const noexcept { return rule.weight.data(); }
};

Grid make_grid(const WaveFunction& wf, int panels, const QuadratureScheme& scheme, int level) {
    Grid g;
    g.rule = axis_rule(wf.params(), wf.space(), wf.max_quantum_number(), panels, scheme.nodes,
                       scheme.rule, level);
    g.rows.reserve(g.rule.size());
    for (std::size_t i = 0; i < g.rule.size(); ++i) {
        g.rows.push_back(
            wf.orbital_row(g.rule.coord[i], g.rule.phase[i], g.rule.averaged[i] != 0));
    }
    return g;
}

double entropy_1d(const ReducedDensity& d, const Grid& g) {
    return tensor_sum(g.rule, 1, [&](std::size_t i) {
        const std::array<const OrbitalRow*, 1> r{&g.rows[i]};
        return entropy_integrand(d.from_rows(r));
    });
}

double entropy_2d(const ReducedDensity& d, const Grid& g) {
    return tensor_sum(g.rule, 2, [&](std::size_t i, std::size_t j) {
        const std::array<const OrbitalRow*, 2> r{&g.rows[i], &g.rows[j]};
        return entropy_integrand(d.from_rows(r));
    });
}

double entropy_full(const WaveFunction& wf, const Grid& g) {
    if (wf.particles() == 2) {
        return tensor_sum(g.rule, 2, [&](std::size_t i, std::size_t j) {
            const std::array<const OrbitalRow*, 2> r{&g.rows[i], &g.rows[j]};
            return entropy_integrand(wf.density(r));
        });
    }
    return tensor_sum(g.rule, 3, [&](std::size_t i, std::size_t j, std::size_t k) {
        const std::array<const OrbitalRow*, 3> r{&g.rows[i], &g.rows[j], &g.rows[k]};
        return entropy_integrand(wf.density(r));
    });
}

double sum_entropy_1d(const std::vector<double>& rho, const Grid& g) {
    return tensor_sum(g.rule, 1, [&](std::size_t i) { return entropy_integrand(rho[i]); });
}

double sum_entropy_2d(const std::vector<double>& gamma, const Grid& g) {
    const std::size_t n = g.size();
    return tensor_sum(g.rule, 2, [&](std::size_t i, std::size_t j) {
        return entropy_integrand(gamma[i * n + j]);
    });
}

// Marginals tabulated on one grid: rho[k] per coordinate, gamma[p] per pair
// slot of kPairs. Indistinguishable states store only index 0.
struct Tables {
    std::array<std::vector<double>, 3> rho;
    std::array<std::vector<double>, 3> gamma;
    bool per_coordinate = false;

    const std::vector<double>& r(std::size_t k) const { return per_coordinate ? rho[k] : rho[0]; }
    const std::vector<double>& p(std::size_t q) const { return per_coordinate ? gamma[q] : gamma[0]; }
};

// Entropies at one refinement level. `singles` and `pairs` hold one entry for
// indistinguishable particles, one per coordinate / pair slot otherwise.
struct LevelEntropies {
    std::vector<double> singles;
    std::vector<double> pairs;
    std::optional<double> full;
    long long nodes = 0;

    double s1() const {
        double s = 0.0;
        for (double v : singles) {
            s += v;
        }
        return s / static_cast<double>(singles.size());
    }
    double s2() const {
        double s = 0.0;
        for (double v : pairs) {
            s += v;
        }
        return s / static_cast<double>(pairs.size());
    }
};

bool closed_path(const WaveFunction& wf) {
    return closed_form_available(wf, 1) && closed_form_available(wf, 2);
}

long long cube(std::size_t n, int dims) {
    long long v = 1;
    for (int d = 0; d < dims; ++d) {
        v *= static_cast<long long>(n);
    }
    return v;
}

// Tabulates every marginal of |Psi|^2 on `g` by summing over the removed
// coordinates, returning the entropy of |Psi|^2 itself.
double tabulate(const WaveFunction& wf, const Grid& g, Tables& t) {
    const std::size_t n = g.size();
    const double* w = g.w();
    auto dens3 = [&](std::size_t i, std::size_t j, std::size_t k) {
        const std::array<const OrbitalRow*, 3> r{&g.rows[i], &g.rows[j], &g.rows[k]};
        return wf.density(r);
    };
    t.per_coordinate = wf.symmetry() == SymmetryClass::Distinguishable;
    if (wf.particles() == 2) {
        auto& g12 = t.gamma[0];
        g12.assign(n * n, 0.0);
        parallel_for(n, [&](std::size_t i) {
            for (std::size_t j = 0; j < n; ++j) {
                const std::array<const OrbitalRow*, 2> r{&g.rows[i], &g.rows[j]};
                g12[i * n + j] = wf.density(r);
            }
        });
        t.rho[0].assign(n, 0.0);
        t.rho[1].assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                t.rho[0][i] += w[j] * g12[i * n + j];
                t.rho[1][j] += w[i] * g12[i * n + j];
            }
        }
        return sum_entropy_2d(g12, g);
    }

    auto& g12 = t.gamma[0];
    auto& g13 = t.gamma[1];
    auto& g23 = t.gamma[2];
    g12.assign(n * n, 0.0);
    if (t.per_coordinate) {
        g13.assign(n * n, 0.0);
        g23.assign(n * n, 0.0);
    }
    const double s3 = ordered_sum(n, [&](std::size_t i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double inner = 0.0;
            double row12 = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double d = dens3(i, j, k);
                inner += w[k] * entropy_integrand(d);
                row12 += w[k] * d;
                if (t.per_coordinate) {
                    g13[i * n + k] += w[j] * d;
                }
            }
            g12[i * n + j] = row12;
            acc += w[j] * inner;
        }
        return w[i] * acc;
    });
    if (t.per_coordinate) {
        parallel_for(n, [&](std::size_t j) {
            for (std::size_t k = 0; k < n; ++k) {
                double acc = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    acc += w[i] * dens3(i, j, k);
                }
                g23[j * n + k] = acc;
            }
        });
    }
    const std::size_t coords = t.per_coordinate ? 3 : 1;
    for (std::size_t c = 0; c < coords; ++c) {
        t.rho[c].assign(n, 0.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            t.rho[0][i] += w[j] * g12[i * n + j];
            if (t.per_coordinate) {
                t.rho[1][j] += w[i] * g12[i * n + j];
                t.rho[2][j] += w[i] * g13[i * n + j];
            }
        }
    }
    return s3;
}

// Same grids as closed_level, so a superposition that degenerates to a pure
// state reproduces the closed-form entropies. Marginals are integrated over
// the removed coordinates on the refined rule at every level.
LevelEntropies numerical_level(const WaveFunction& wf, const QuadratureScheme& scheme, int level) {
    LevelEntropies out;
    const Grid g = make_grid(wf, scheme.panels, scheme, level);
    const std::size_t n = g.size();
    const double* w = g.w();
    const bool per_coordinate = wf.symmetry() == SymmetryClass::Distinguishable;
    const std::size_t coords = per_coordinate ? static_cast<std::size_t>(wf.particles()) : 1;
    const std::size_t slots = per_coordinate && wf.particles() == 3 ? kPairs.size() : 1;

    std::array<std::vector<double>, 3> gamma;
    for (std::size_t q = 0; q < slots; ++q) {
        const ReducedDensity d = wf.particles() == 2 ? reduce_to_pair(wf)
                                                     : reduce_numerical(wf, 2, scheme, kPairs[q]);
        gamma[q].resize(n * n);
        parallel_for(n, [&](std::size_t i) {
            for (std::size_t j = 0; j < n; ++j) {
                const std::array<const OrbitalRow*, 2> r{&g.rows[i], &g.rows[j]};
                gamma[q][i * n + j] = d.from_rows(r);
            }
        });
        out.pairs.push_back(sum_entropy_2d(gamma[q], g));
    }

    std::array<std::vector<double>, 3> rho;
    if (level == 0) {
        // The pair tables already sit on the refined rule.
        for (std::size_t c = 0; c < coords; ++c) {
            rho[c].assign(n, 0.0);
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                rho[0][i] += w[j] * gamma[0][i * n + j];
                if (per_coordinate) {
                    rho[1][j] += w[i] * gamma[0][i * n + j];
                    if (coords == 3) {
                        rho[2][j] += w[i] * gamma[1][i * n + j];
                    }
                }
            }
        }
    } else {
        for (std::size_t c = 0; c < coords; ++c) {
            const int k = static_cast<int>(c);
            const ReducedDensity d = reduce_numerical(wf, 1, scheme, {k, k});
            rho[c].resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                const std::array<const OrbitalRow*, 1> r{&g.rows[i]};
                rho[c][i] = d.from_rows(r);
            }
        }
    }
    for (std::size_t c = 0; c < coords; ++c) {
        out.singles.push_back(sum_entropy_1d(rho[c], g));
    }

    out.nodes = cube(n, 2) * static_cast<long long>(slots) * (wf.particles() == 3 ? static_cast<long long>(n) : 1);
    if (wf.particles() == 3) {
        const Grid g3 = make_grid(wf, scheme.panels_3d, scheme, level);
        out.full = entropy_full(wf, g3);
        out.nodes += cube(g3.size(), 3);
    }
    return out;
}

LevelEntropies closed_level(const WaveFunction& wf, const QuadratureScheme& scheme, int level) {
    LevelEntropies out;
    const Grid g = make_grid(wf, scheme.panels, scheme, level);
    const bool per_coordinate = wf.symmetry() == SymmetryClass::Distinguishable;
    const int coords = per_coordinate ? wf.particles() : 1;
    for (int c = 0; c < coords; ++c) {
        out.singles.push_back(entropy_1d(reduce_to_one(wf, c), g));
    }
    if (wf.particles() == 2) {
        out.pairs.push_back(entropy_2d(reduce_to_pair(wf), g));
        out.nodes = cube(g.size(), 2);
        return out;
    }
    const std::size_t slots = per_coordinate ? kPairs.size() : 1;
    for (std::size_t q = 0; q < slots; ++q) {
        out.pairs.push_back(entropy_2d(reduce_to_pair(wf, kPairs[q]), g));
    }
    const Grid g3 = make_grid(wf, scheme.panels_3d, scheme, level);
    out.full = entropy_full(wf, g3);
    out.nodes = cube(g.size(), 2) * static_cast<long long>(slots) + cube(g3.size(), 3);
    return out;
}

LevelEntropies level_entropies(const WaveFunction& wf, const QuadratureScheme& scheme, int level) {
    return closed_path(wf) ? closed_level(wf, scheme, level) : numerical_level(wf, scheme, level);
}

// Closed-form marginals evaluated at the nodes of `g`.
Tables closed_tables(const WaveFunction& wf, const Grid& g) {
    Tables t;
    t.per_coordinate = wf.symmetry() == SymmetryClass::Distinguishable;
    const std::size_t n = g.size();
    const std::size_t coords = t.per_coordinate ? static_cast<std::size_t>(wf.particles()) : 1;
    const std::size_t slots = wf.particles() == 2 ? 1 : coords;
    for (std::size_t c = 0; c < coords; ++c) {
        const ReducedDensity rho = reduce_to_one(wf, static_cast<int>(c));
        t.rho[c].resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::array<const OrbitalRow*, 1> r{&g.rows[i]};
            t.rho[c][i] = rho.from_rows(r);
        }
    }
    for (std::size_t q = 0; q < slots; ++q) {
        const ReducedDensity gamma = reduce_to_pair(wf, kPairs[q]);
        t.gamma[q].resize(n * n);
        parallel_for(n, [&](std::size_t i) {
            for (std::size_t j = 0; j < n; ++j) {
                const std::array<const OrbitalRow*, 2> r{&g.rows[i], &g.rows[j]};
                t.gamma[q][i * n + j] = gamma.from_rows(r);
            }
        });
    }
    return t;
}

double log_ratio_term(double d, double log_ratio) {
    return d > 1e-300 ? d * log_ratio : 0.0;
}

// Direct integrals of I_pair and (N = 3) I_higher on one grid.
std::pair<double, std::optional<double>> direct_measures(const WaveFunction& wf,
                                                         const QuadratureScheme& scheme) {
    const Grid g = make_grid(wf, scheme.panels_for(wf.particles()), scheme, 0);
    Tables t;
    if (closed_path(wf)) {
        t = closed_tables(wf, g);
    } else {
        tabulate(wf, g, t);
    }
    const std::size_t n = g.size();
    const std::size_t slots = t.per_coordinate && wf.particles() == 3 ? 3 : 1;
    double pair = 0.0;
    for (std::size_t q = 0; q < slots; ++q) {
        const auto& gamma = t.p(q);
        const auto& ra = t.r(static_cast<std::size_t>(kPairs[q][0]));
        const auto& rb = t.r(static_cast<std::size_t>(kPairs[q][1]));
        pair += tensor_sum(g.rule, 2, [&](std::size_t i, std::size_t j) {
            const double d = gamma[i * n + j];
            return d > 1e-300 && ra[i] > 0.0 && rb[j] > 0.0 ? log_ratio_term(d, std::log(d) - std::log(ra[i]) - std::log(rb[j]))
                              : 0.0;
        });
    }
    pair /= static_cast<double>(slots);
    if (wf.particles() == 2) {
        return {pair, std::nullopt};
    }
    const auto& r1 = t.r(0);
    const auto& r2 = t.r(1);
    const auto& r3 = t.r(2);
    const auto& g12 = t.p(0);
    const auto& g13 = t.p(1);
    const auto& g23 = t.p(2);
    const double higher = tensor_sum(g.rule, 3, [&](std::size_t i, std::size_t j, std::size_t k) {
        const std::array<const OrbitalRow*, 3> r{&g.rows[i], &g.rows[j], &g.rows[k]};
        const double d = wf.density(r);
        if (!(d > 1e-300)) {
            return 0.0;
        }
        const double a = g12[i * n + j];
        const double b = g13[i * n + k];
        const double c = g23[j * n + k];
        if (!(a > 0.0 && b > 0.0 && c > 0.0 && r1[i] > 0.0 && r2[j] > 0.0 && r3[k] > 0.0)) {
            return 0.0;
        }
        // Tail values underflow as products, so the ratio is taken in logs.
        return d * (std::log(d) + std::log(r1[i]) + std::log(r2[j]) + std::log(r3[k])
                    - std::log(a) - std::log(b) - std::log(c));
    });
    return {pair, higher};
}

std::string describe(const WaveFunction& wf) {
    std::ostringstream os;
    const auto comps = wf.components();
    Configuration c{wf.params(), comps[0].ns, wf.symmetry(), wf.space()};
    if (!wf.is_superposition()) {
        return c.describe();
    }
    os << c.describe() << " + (";
    for (std::size_t i = 0; i < comps[1].ns.size(); ++i) {
        os << (i ? "," : "") << comps[1].ns[i];
    }
    os << ") c1^2=" << comps[0].coefficient * comps[0].coefficient
       << (wf.interference() ? "" : " no-interference");
    return os.str();
}

} // namespace

IntegralResult entropy(const ReducedDensity& density, const QuadratureScheme& scheme) {
    scheme.validate();
    const WaveFunction& wf = density.source();
    auto at = [&](int level) {
        const Grid g = make_grid(wf, scheme.panels, scheme, level);
        return density.arity() == 1 ? entropy_1d(density, g) : entropy_2d(density, g);
    };
    const double refined = at(0);
    const double coarse = at(1);
    IntegralResult r{refined, std::abs(refined - coarse), 0};
    check_convergence(r, coarse, [&] { return at(2); }, scheme, "entropy");
    return r;
}

IntegralResult entropy(const WaveFunction& wf, const QuadratureScheme& scheme) {
    scheme.validate();
    auto at = [&](int level) {
        return entropy_full(wf, make_grid(wf, scheme.panels_for(wf.particles()), scheme, level));
    };
    const double refined = at(0);
    const double coarse = at(1);
    IntegralResult r{refined, std::abs(refined - coarse), 0};
    check_convergence(r, coarse, [&] { return at(2); }, scheme, "entropy");
    return r;
}

InformationReport information_report(const WaveFunction& wf, const QuadratureScheme& scheme,
                                     const ReportOptions& options) {
    scheme.validate();
    InformationReport report;
    report.system = describe(wf);
    report.space = wf.space();
    report.symmetry = wf.symmetry();
    report.particles = wf.particles();
    report.strategy = closed_path(wf) ? ReductionStrategy::ClosedForm
                                      : ReductionStrategy::QuadratureReduced;

    const LevelEntropies fine = level_entropies(wf, scheme, 0);
    const LevelEntropies coarse = level_entropies(wf, scheme, 1);
    std::optional<LevelEntropies> coarser;
    auto coarser_level = [&]() -> const LevelEntropies& {
        if (!coarser) {
            coarser = level_entropies(wf, scheme, 2);
        }
        return *coarser;
    };

    EntropyTriple& s = report.entropies;
    s.space = wf.space();
    s.s1 = fine.s1();
    s.s2 = fine.s2();
    s.s1_error = std::abs(fine.s1() - coarse.s1());
    s.s2_error = std::abs(fine.s2() - coarse.s2());
    check_convergence({s.s1, s.s1_error, 0}, coarse.s1(), [&] { return coarser_level().s1(); },
                      scheme, "one-particle entropy");
    check_convergence({s.s2, s.s2_error, 0}, coarse.s2(), [&] { return coarser_level().s2(); },
                      scheme, "pair entropy");
    if (fine.full) {
        s.s3 = *fine.full;
        s.s3_error = std::abs(*fine.full - *coarse.full);
        check_convergence({*s.s3, *s.s3_error, 0}, *coarse.full,
                          [&] { return *coarser_level().full; }, scheme, "three-particle entropy");
    }
    report.nodes_used = fine.nodes + coarse.nodes + (coarser ? coarser->nodes : 0);
    if (wf.symmetry() == SymmetryClass::Distinguishable) {
        report.coordinate_entropies = fine.singles;
        report.pair_entropies = fine.pairs;
    }

    report.I_pair = mutual_information_pair(s);
    if (report.I_pair < 0.0) {
        if (report.I_pair < -scheme.target_abs_tol) {
            std::ostringstream os;
            os << "pair mutual information " << report.I_pair << " is negative beyond tolerance";
            throw ConsistencyError(os.str());
        }
        // Rounding noise of exactly cancelling entropies is not worth a warning.
        if (report.I_pair < -1e-12) {
            std::ostringstream os;
            os << "pair mutual information " << report.I_pair << " clamped to 0";
            report.warnings.push_back(os.str());
        }
        report.I_pair = 0.0;
    }
    if (s.s3) {
        report.I_total3 = mutual_information_three(s);
        report.I_one_pair = mutual_information_one_pair(s);
        report.I_pair_pair = mutual_information_pair_pair(s);
        report.I_higher = mutual_information_higher(s);
    }
    if (options.direct) {
        const auto [pair, higher] = direct_measures(wf, scheme);
        report.I_pair_direct = pair;
        report.I_higher_direct = higher;
    }
    return report;
}

double mutual_information_distinguishable(const WaveFunction& wf, const QuadratureScheme& scheme) {
    if (wf.symmetry() != SymmetryClass::Distinguishable || wf.particles() != 3) {
        throw ConfigurationError("distinguishable decomposition needs a distinguishable three-particle state");
    }
    return information_report(wf, scheme).I_higher.value();
}

EntropySum entropy_sum_check(const WaveFunction& position, const WaveFunction& momentum,
                             const QuadratureScheme& position_scheme,
                             const QuadratureScheme& momentum_scheme) {
    if (position.space() != Space::Position || momentum.space() != Space::Momentum) {
        throw ConfigurationError("entropy sum needs a position-space and a momentum-space state");
    }
    EntropySum out;
    out.position = entropy(reduce_to_one(position), position_scheme).value;
    out.momentum = entropy(reduce_to_one(momentum), momentum_scheme).value;
    out.sum = out.position + out.momentum;
    out.satisfied = out.sum >= out.bound;
    return out;
}

IntegralResult cumulant3(const WaveFunction& wf, const QuadratureScheme& scheme) {
    if (wf.particles() != 3) {
        throw ConfigurationError("the third-order cumulant needs three particles");
    }
    scheme.validate();
    auto at = [&](int level) {
        const Grid g = make_grid(wf, scheme.panels_3d, scheme, level);
        const std::size_t n = g.size();
        const double* w = g.w();
        const double* x = g.rule.coord.data();
        // Moments <x1>, <x2>, <x3>, <x1x2>, <x1x3>, <x2x3>, <x1x2x3> per outer index.
        std::vector<std::array<double, 7>> parts(n);
        parallel_for(n, [&](std::size_t i) {
            std::array<double, 7> m{};
            for (std::size_t j = 0; j < n; ++j) {
                std::array<double, 7> mj{};
                for (std::size_t k = 0; k < n; ++k) {
                    const std::array<const OrbitalRow*, 3> r{&g.rows[i], &g.rows[j], &g.rows[k]};
                    const double d = w[k] * wf.density(r);
                    mj[0] += d;
                    mj[1] += d * x[j];
                    mj[2] += d * x[k];
                    mj[3] += d * x[j] * x[k];
                }
                m[0] += w[j] * mj[0];
                m[1] += w[j] * mj[1];
                m[2] += w[j] * mj[2];
                m[3] += w[j] * mj[3];
            }
            const double xi = x[i];
            parts[i] = {w[i] * xi * m[0], w[i] * m[1],      w[i] * m[2],     w[i] * xi * m[1],
                        w[i] * xi * m[2], w[i] * m[3],      w[i] * xi * m[3]};
        });
        std::array<double, 7> mom{};
        for (const auto& p : parts) {
            for (std::size_t q = 0; q < 7; ++q) {
                mom[q] += p[q];
            }
        }
        const auto [e1, e2, e3, e12, e13, e23, e123] = mom;
        return e123 - e12 * e3 - e13 * e2 - e23 * e1 + 2.0 * e1 * e2 * e3;
    };
    const double refined = at(0);
    const double coarse = at(1);
    return {refined, std::abs(refined - coarse), 0};
}

} // namespace qcorr
