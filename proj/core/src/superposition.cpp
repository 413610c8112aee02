#include "qcorr/superposition.hpp"

#include <cmath>
#include <ostream>

#include "qcorr/errors.hpp"

namespace qcorr {

double SuperpositionSpec::c2() const {
    return std::sqrt(std::max(0.0, 1.0 - c1 * c1));
}

void SuperpositionSpec::validate() const {
    first.validate();
    second.validate();
    if (!(c1 * c1 >= 0.0 && c1 * c1 <= 1.0)) {
        throw ConfigurationError("superposition needs 0 <= c1^2 <= 1");
    }
    if (!(first.params == second.params) || first.space != second.space
        || first.symmetry != second.symmetry || first.particles() != second.particles()) {
        throw ConfigurationError(
            "superposed states must share model, space, symmetry and particle count");
    }
}

SuperpositionSpec SuperpositionSpec::box_pair(SymmetryClass symmetry, Space space,
                                              bool interference) {
    SuperpositionSpec spec;
    spec.first = {ModelParams::box(1.0), {1, 2, 3}, symmetry, space};
    spec.second = {ModelParams::box(1.0), {4, 5, 6}, symmetry, space};
    spec.interference = interference;
    return spec;
}

WaveFunction build_superposition(const SuperpositionSpec& spec) {
    spec.validate();
    return WaveFunction::superpose(spec.first, spec.second, spec.c1, spec.c2(), spec.interference);
}

bool ScanResult::complete() const noexcept {
    for (const auto& s : samples) {
        if (!s.report) {
            return false;
        }
    }
    return true;
}

std::vector<double> default_c1sq_grid() {
    std::vector<double> grid;
    for (int k = 0; k <= 20; ++k) {
        grid.push_back(k / 20.0);
    }
    return grid;
}

ScanResult scan_coefficient(const SuperpositionSpec& spec, std::span<const double> c1sq,
                            const QuadratureScheme& scheme) {
    if (c1sq.size() < 3) {
        throw ConfigurationError("a coefficient scan needs at least three samples");
    }
    for (std::size_t i = 0; i < c1sq.size(); ++i) {
        if (!(c1sq[i] >= 0.0 && c1sq[i] <= 1.0)) {
            throw ConfigurationError("c1^2 samples must lie in [0, 1]");
        }
        if (i > 0 && !(c1sq[i] > c1sq[i - 1])) {
            throw ConfigurationError("c1^2 samples must be strictly increasing");
        }
    }
    SuperpositionSpec base = spec;
    base.c1 = 1.0;
    base.validate();
    scheme.validate();

    ScanResult result{spec, scheme, {}};
    for (double x : c1sq) {
        ScanSample sample;
        sample.c1sq = x;
        SuperpositionSpec s = spec;
        s.c1 = std::sqrt(x);
        try {
            sample.report = information_report(build_superposition(s), scheme);
        } catch (const NonConvergenceError& e) {
            sample.error = e.what();
        } catch (const ConsistencyError& e) {
            sample.error = e.what();
        }
        result.samples.push_back(std::move(sample));
    }
    return result;
}

void write_scan_csv(const ScanResult& scan, std::ostream& out) {
    out << "c1sq,s1,s2,s3,I_pair,I3,I_rho_gamma,I_gamma_gamma,I_higher\n";
    const auto old_precision = out.precision(12);
    auto opt = [&](const std::optional<double>& v) {
        out << ',';
        if (v) {
            out << *v;
        }
    };
    for (const auto& s : scan.samples) {
        out << s.c1sq;
        if (s.report) {
            const auto& r = *s.report;
            opt(r.entropies.s1);
            opt(r.entropies.s2);
            opt(r.entropies.s3);
            opt(r.I_pair);
            opt(r.I_total3);
            opt(r.I_one_pair);
            opt(r.I_pair_pair);
            opt(r.I_higher);
        } else {
            out << ",,,,,,,,";
        }
        out << '\n';
    }
    out.precision(old_precision);
}

} // namespace qcorr
