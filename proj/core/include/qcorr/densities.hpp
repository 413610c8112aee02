#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qcorr/quadrature.hpp"
#include "qcorr/wavefunction.hpp"

namespace qcorr {

enum class ReductionStrategy { ClosedForm, QuadratureReduced };

std::string_view to_string(ReductionStrategy strategy) noexcept;

/// One- or two-particle marginal of |Psi|^2.
///
/// `kept` names the particle coordinates that survive the reduction; it only
/// matters for distinguishable particles, whose marginals differ per
/// coordinate.
class ReducedDensity {
public:
    int arity() const noexcept { return arity_; }
    Space space() const noexcept { return source_->space(); }
    ReductionStrategy strategy() const noexcept { return strategy_; }
    std::array<int, 2> kept() const noexcept { return kept_; }
    const WaveFunction& source() const noexcept { return *source_; }

    /// Domain of every kept coordinate: [0, L] when bounded, else the real line.
    bool bounded() const noexcept { return is_bounded(source_->params(), space()); }
    double lower() const noexcept;
    double upper() const noexcept;

    /// Density at `coords` (arity() values). Throws DomainError outside the domain.
    double operator()(std::span<const double> coords) const;

    /// Density from precomputed orbital rows of the kept coordinates.
    double from_rows(std::span<const OrbitalRow* const> rows) const;

private:
    friend ReducedDensity reduce_to_pair(const WaveFunction&, std::array<int, 2>);
    friend ReducedDensity reduce_to_one(const WaveFunction&, int);
    friend ReducedDensity reduce_numerical(const WaveFunction&, int, const QuadratureScheme&,
                                           std::array<int, 2>);

    ReducedDensity(const WaveFunction& wf, int arity, ReductionStrategy strategy,
                   std::array<int, 2> kept);

    double closed_form(std::span<const OrbitalRow* const> rows) const;
    double reduced(std::span<const OrbitalRow* const> rows) const;

    std::shared_ptr<const WaveFunction> source_;
    int arity_;
    ReductionStrategy strategy_;
    std::array<int, 2> kept_;
    // Integration nodes of the removed coordinates (QuadratureReduced only).
    std::vector<double> weights_;
    std::vector<OrbitalRow> rows_;
};

/// True when a closed form exists for the marginal of this arity: a single
/// configuration that is distinguishable or has distinct quantum numbers, or
/// the full density of a two-particle state.
bool closed_form_available(const WaveFunction& wf, int arity) noexcept;

/// Pair density of particles kept[0], kept[1]. Closed form when available,
/// otherwise reduce_numerical at the default scheme of the space.
ReducedDensity reduce_to_pair(const WaveFunction& wf, std::array<int, 2> kept = {0, 1});

/// One-particle density of particle `kept`, closed form when available.
ReducedDensity reduce_to_one(const WaveFunction& wf, int kept = 0);

/// Marginal obtained by integrating |Psi|^2 over the removed coordinates on
/// the scheme's refined axis rule.
ReducedDensity reduce_numerical(const WaveFunction& wf, int arity,
                                const QuadratureScheme& scheme, std::array<int, 2> kept = {0, 1});

/// Square sampling window for export_density_grid. Without explicit limits the
/// box position window is [0, L] and unbounded windows span +-1.5 map scales.
struct GridSpec {
    int points = 101;
    std::optional<double> lo;
    std::optional<double> hi;
};

/// Row-major samples: value[i * axis.size() + j] = density(axis[i], axis[j]).
struct DensityGrid {
    std::vector<double> axis;
    std::vector<double> values;
    Space space = Space::Position;

    double at(std::size_t i, std::size_t j) const { return values[i * axis.size() + j]; }
};

/// Samples a pair density on a uniform square grid. Requires arity 2.
DensityGrid export_density_grid(const ReducedDensity& density, const GridSpec& spec);

/// CSV with header x1,x2,value (p1,p2,value in momentum space), 12 significant digits.
void write_density_grid_csv(const DensityGrid& grid, std::ostream& out);

} // namespace qcorr
