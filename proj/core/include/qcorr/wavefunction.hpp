#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcorr/orbitals.hpp"

namespace qcorr {

enum class SymmetryClass { Symmetric, Antisymmetric, Distinguishable };

std::string_view to_string(SymmetryClass symmetry) noexcept;

/// One N-particle state (N = 2 or 3) built from orbitals `ns`.
struct Configuration {
    ModelParams params;
    std::vector<int> ns;
    SymmetryClass symmetry = SymmetryClass::Antisymmetric;
    Space space = Space::Position;

    /// Throws ConfigurationError on a bad particle count, out-of-range quantum
    /// numbers, repeats in an antisymmetric state, or a triple repeat in a
    /// symmetric one.
    void validate() const;

    int particles() const noexcept { return static_cast<int>(ns.size()); }

    /// e.g. "box L=1 (1,2,3) antisymmetric position".
    std::string describe() const;

    bool operator==(const Configuration&) const = default;
};

/// Largest number of distinct orbitals a wavefunction may involve: two
/// configurations of three particles.
inline constexpr std::size_t kMaxBasis = 6;

/// Values of every basis orbital of a wavefunction at one coordinate.
using OrbitalRow = std::array<Amplitude, kMaxBasis>;

/// One term of the expansion of |Psi|^2 into orbital products:
/// coefficient * prod_k conj(psi_{bra[k]}(x_k)) psi_{ket[k]}(x_k), with basis indices.
struct DensityTerm {
    double coefficient;
    std::array<int, 3> bra;
    std::array<int, 3> ket;
};

/// N-particle wavefunction: a single configuration or a real-weighted sum of
/// configurations sharing model, space, symmetry and particle count.
class WaveFunction {
public:
    struct Component {
        double coefficient;
        std::vector<int> ns;
    };

    static WaveFunction build(const Configuration& config);

    /// c1 * first + c2 * second. With `interference` off the density is the
    /// incoherent mixture c1^2 |first|^2 + c2^2 |second|^2. The result is
    /// renormalised analytically when the components are not orthogonal.
    static WaveFunction superpose(const Configuration& first, const Configuration& second, double c1,
                                  double c2, bool interference);

    const ModelParams& params() const noexcept { return params_; }
    Space space() const noexcept { return space_; }
    SymmetryClass symmetry() const noexcept { return symmetry_; }
    int particles() const noexcept { return particles_; }
    bool interference() const noexcept { return interference_; }
    bool is_superposition() const noexcept { return components_.size() > 1; }
    std::span<const Component> components() const noexcept { return components_; }

    /// 1/sqrt(N! prod_k m_k!) for component `c`; 1 for distinguishable products.
    double norm_factor(std::size_t c = 0) const;

    /// Factor applied to |Psi|^2 so that it integrates to one (1 for orthogonal components).
    double renormalization() const noexcept { return renorm_; }

    /// Distinct quantum numbers in first-seen order; OrbitalRow entries follow it.
    std::span<const int> basis() const noexcept { return basis_; }
    int max_quantum_number() const noexcept;

    /// Orbital values at `coordinate`. Throws DomainError outside [0, L] for
    /// box position space.
    OrbitalRow orbital_row(double coordinate) const;

    /// Orbital values at a quadrature node; `averaged` nodes use `phase` as
    /// the fast box-momentum phase (see AxisRule).
    OrbitalRow orbital_row(double coordinate, double phase, bool averaged) const;

    /// Amplitude of component `c` from one row per particle.
    Amplitude component_amplitude(std::size_t c, std::span<const OrbitalRow* const> rows) const;

    /// Coherent amplitude sum_c c_c Psi_c, including the renormalisation.
    Amplitude amplitude(std::span<const double> point) const;

    /// |Psi|^2 at a point with one coordinate per particle.
    double density(std::span<const double> point) const;

    /// |Psi|^2 from precomputed rows; rows.size() == particles().
    double density(std::span<const OrbitalRow* const> rows) const;

    /// |Psi|^2 as a sum of orbital products, with renormalisation folded into
    /// the coefficients. Unused trailing slots (N = 2) hold index -1.
    const std::vector<DensityTerm>& expansion() const noexcept { return expansion_; }

private:
    WaveFunction() = default;
    void finalize();

    ModelParams params_;
    Space space_ = Space::Position;
    SymmetryClass symmetry_ = SymmetryClass::Antisymmetric;
    int particles_ = 0;
    bool interference_ = true;
    std::vector<Component> components_;
    std::vector<std::array<int, 3>> component_index_;
    std::vector<double> norms_;
    std::vector<int> basis_;
    std::vector<DensityTerm> expansion_;
    double renorm_ = 1.0;
};

/// Psi at `point` and at `point` with its first two coordinates swapped.
std::pair<Amplitude, Amplitude> exchange_symmetry_check(const WaveFunction& wf,
                                                        std::span<const double> point);

} // namespace qcorr
