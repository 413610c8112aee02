#include "qcorr/densities.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

bool distinct_quantum_numbers(const WaveFunction& wf) {
    return static_cast<int>(wf.basis().size()) == wf.particles();
}

int basis_index(const WaveFunction& wf, std::size_t component, std::size_t slot) {
    const int n = wf.components()[component].ns[slot];
    const auto basis = wf.basis();
    return static_cast<int>(std::find(basis.begin(), basis.end(), n) - basis.begin());
}

} // namespace

std::string_view to_string(ReductionStrategy strategy) noexcept {
    return strategy == ReductionStrategy::ClosedForm ? "closed-form" : "quadrature-reduced";
}

bool closed_form_available(const WaveFunction& wf, int arity) noexcept {
    if (wf.is_superposition()) {
        return false;
    }
    if (wf.particles() == 2 && arity == 2) {
        return true;
    }
    return wf.symmetry() == SymmetryClass::Distinguishable || distinct_quantum_numbers(wf);
}

ReducedDensity::ReducedDensity(const WaveFunction& wf, int arity, ReductionStrategy strategy,
                               std::array<int, 2> kept)
    : source_(std::make_shared<const WaveFunction>(wf)), arity_(arity), strategy_(strategy),
      kept_(kept) {
    if (arity != 1 && arity != 2) {
        throw ConfigurationError("reduced densities have arity 1 or 2");
    }
    for (int a = 0; a < arity; ++a) {
        const int k = kept[static_cast<std::size_t>(a)];
        if (k < 0 || k >= wf.particles()) {
            throw ConfigurationError("kept coordinate out of range");
        }
    }
    if (arity == 2 && kept[0] == kept[1]) {
        throw ConfigurationError("pair density needs two different coordinates");
    }
}

double ReducedDensity::lower() const noexcept {
    return bounded() ? 0.0 : -INFINITY;
}

double ReducedDensity::upper() const noexcept {
    return bounded() ? source_->params().length : INFINITY;
}

double ReducedDensity::operator()(std::span<const double> coords) const {
    if (static_cast<int>(coords.size()) != arity_) {
        throw ConfigurationError("density needs one coordinate per kept particle");
    }
    std::array<OrbitalRow, 2> rows{};
    std::array<const OrbitalRow*, 2> ptrs{&rows[0], &rows[1]};
    for (std::size_t a = 0; a < coords.size(); ++a) {
        rows[a] = source_->orbital_row(coords[a]);
    }
    return from_rows(std::span<const OrbitalRow* const>(ptrs.data(), coords.size()));
}

double ReducedDensity::from_rows(std::span<const OrbitalRow* const> rows) const {
    return strategy_ == ReductionStrategy::ClosedForm ? closed_form(rows) : reduced(rows);
}

double ReducedDensity::closed_form(std::span<const OrbitalRow* const> rows) const {
    const WaveFunction& wf = *source_;
    const int n = wf.particles();
    if (n == 2 && arity_ == 2) {
        return wf.density(rows);
    }
    if (wf.symmetry() == SymmetryClass::Distinguishable) {
        double value = 1.0;
        for (int a = 0; a < arity_; ++a) {
            const auto slot = static_cast<std::size_t>(kept_[static_cast<std::size_t>(a)]);
            value *= std::norm((*rows[static_cast<std::size_t>(a)])[static_cast<std::size_t>(
                basis_index(wf, 0, slot))]);
        }
        return value;
    }
    // Distinct orbitals, (anti)symmetrised: rows are indexed by basis position,
    // which for a single configuration is the orbital index 0..N-1.
    const OrbitalRow& a = *rows[0];
    if (arity_ == 1) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            sum += std::norm(a[static_cast<std::size_t>(i)]);
        }
        return sum / n;
    }
    const OrbitalRow& b = *rows[1];
    const double sign = wf.symmetry() == SymmetryClass::Antisymmetric ? -1.0 : 1.0;
    double direct = 0.0;
    double exchange = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
            if (i == j) {
                continue;
            }
            direct += std::norm(a[i]) * std::norm(b[j]);
            exchange += (std::conj(a[i]) * std::conj(b[j]) * a[j] * b[i]).real();
        }
    }
    return (direct + sign * exchange) / (n * (n - 1));
}

double ReducedDensity::reduced(std::span<const OrbitalRow* const> rows) const {
    const WaveFunction& wf = *source_;
    const int n = wf.particles();
    if (n == 2 && arity_ == 2) {
        return wf.density(rows);
    }
    std::array<const OrbitalRow*, 3> slots{};
    std::array<std::size_t, 2> free{};
    std::size_t n_free = 0;
    for (int k = 0; k < n; ++k) {
        bool is_kept = false;
        for (int a = 0; a < arity_; ++a) {
            if (kept_[static_cast<std::size_t>(a)] == k) {
                slots[static_cast<std::size_t>(k)] = rows[static_cast<std::size_t>(a)];
                is_kept = true;
            }
        }
        if (!is_kept) {
            free[n_free++] = static_cast<std::size_t>(k);
        }
    }
    const std::span<const OrbitalRow* const> view(slots.data(), static_cast<std::size_t>(n));
    double sum = 0.0;
    if (n_free == 1) {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            slots[free[0]] = &rows_[k];
            sum += weights_[k] * wf.density(view);
        }
        return sum;
    }
    for (std::size_t j = 0; j < rows_.size(); ++j) {
        slots[free[0]] = &rows_[j];
        double inner = 0.0;
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            slots[free[1]] = &rows_[k];
            inner += weights_[k] * wf.density(view);
        }
        sum += weights_[j] * inner;
    }
    return sum;
}

ReducedDensity reduce_to_pair(const WaveFunction& wf, std::array<int, 2> kept) {
    if (closed_form_available(wf, 2)) {
        return ReducedDensity(wf, 2, ReductionStrategy::ClosedForm, kept);
    }
    return reduce_numerical(wf, 2, QuadratureScheme::defaults(wf.space(), wf.params().kind), kept);
}

ReducedDensity reduce_to_one(const WaveFunction& wf, int kept) {
    if (closed_form_available(wf, 1)) {
        return ReducedDensity(wf, 1, ReductionStrategy::ClosedForm, {kept, -1});
    }
    return reduce_numerical(wf, 1, QuadratureScheme::defaults(wf.space(), wf.params().kind), {kept, -1});
}

ReducedDensity reduce_numerical(const WaveFunction& wf, int arity, const QuadratureScheme& scheme,
                                std::array<int, 2> kept) {
    scheme.validate();
    ReducedDensity d(wf, arity, ReductionStrategy::QuadratureReduced, kept);
    const AxisRule rule = axis_rule(wf.params(), wf.space(), wf.max_quantum_number(), scheme.panels,
                                    scheme.nodes, scheme.rule);
    d.weights_ = rule.weight;
    d.rows_.reserve(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
        d.rows_.push_back(wf.orbital_row(rule.coord[i], rule.phase[i], rule.averaged[i] != 0));
    }
    return d;
}

DensityGrid export_density_grid(const ReducedDensity& density, const GridSpec& spec) {
    if (density.arity() != 2) {
        throw ConfigurationError("density grids need a pair density");
    }
    if (spec.points < 2) {
        throw ConfigurationError("density grid needs at least two points per axis");
    }
    const WaveFunction& wf = density.source();
    double lo = 0.0;
    double hi = 0.0;
    if (density.bounded()) {
        lo = 0.0;
        hi = wf.params().length;
    } else {
        hi = 1.5 * map_scale(wf.params(), wf.space(), wf.max_quantum_number());
        lo = -hi;
    }
    lo = spec.lo.value_or(lo);
    hi = spec.hi.value_or(hi);
    if (!(hi > lo)) {
        throw ConfigurationError("density grid window must have hi > lo");
    }
    DensityGrid grid;
    grid.space = density.space();
    const auto n = static_cast<std::size_t>(spec.points);
    for (std::size_t i = 0; i < n; ++i) {
        grid.axis.push_back(i + 1 == n ? hi : lo + (hi - lo) * double(i) / double(n - 1));
    }
    std::vector<OrbitalRow> rows;
    for (double x : grid.axis) {
        rows.push_back(wf.orbital_row(x));
    }
    grid.values.assign(n * n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::array<const OrbitalRow*, 2> ptrs{&rows[i], &rows[j]};
            grid.values[i * n + j] = density.from_rows(ptrs);
        }
    });
    return grid;
}

void write_density_grid_csv(const DensityGrid& grid, std::ostream& out) {
    const char* c = grid.space == Space::Position ? "x" : "p";
    out << c << "1," << c << "2,value\n";
    const auto old_precision = out.precision(12);
    for (std::size_t i = 0; i < grid.axis.size(); ++i) {
        for (std::size_t j = 0; j < grid.axis.size(); ++j) {
            out << grid.axis[i] << ',' << grid.axis[j] << ',' << grid.at(i, j) << '\n';
        }
    }
    out.precision(old_precision);
}

} // namespace qcorr
