#include "qcorr/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

struct Product {
    double coefficient;
    std::size_t component;
    std::array<int, 3> orbitals;
};

int permutation_sign(const std::array<int, 3>& perm, int n) {
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)] ? 1 : 0;
        }
    }
    return inversions % 2 == 0 ? 1 : -1;
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

} // namespace

std::string_view to_string(SymmetryClass symmetry) noexcept {
    switch (symmetry) {
    case SymmetryClass::Symmetric:
        return "symmetric";
    case SymmetryClass::Antisymmetric:
        return "antisymmetric";
    case SymmetryClass::Distinguishable:
        return "distinguishable";
    }
    return "unknown";
}

void Configuration::validate() const {
    params.validate();
    if (ns.size() != 2 && ns.size() != 3) {
        throw ConfigurationError("a state needs two or three quantum numbers");
    }
    const int min_n = params.min_quantum_number();
    for (int n : ns) {
        if (n < min_n) {
            throw ConfigurationError("quantum number " + std::to_string(n) + " below minimum "
                                     + std::to_string(min_n) + " for the "
                                     + std::string(to_string(params.kind)) + " model");
        }
    }
    std::vector<int> sorted = ns;
    std::sort(sorted.begin(), sorted.end());
    const bool repeated = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    if (symmetry == SymmetryClass::Antisymmetric && repeated) {
        throw ConfigurationError("antisymmetric state requires distinct quantum numbers");
    }
    if (symmetry == SymmetryClass::Symmetric && sorted.size() == 3 && sorted.front() == sorted.back()) {
        throw ConfigurationError("symmetric state with three equal quantum numbers is not supported");
    }
}

std::string Configuration::describe() const {
    std::ostringstream os;
    os << to_string(params.kind);
    if (params.kind == Model::Box) {
        os << " L=" << params.length;
    } else {
        os << " omega=" << params.omega;
    }
    os << " (";
    for (std::size_t i = 0; i < ns.size(); ++i) {
        os << (i ? "," : "") << ns[i];
    }
    os << ") " << to_string(symmetry) << ' ' << to_string(space);
    return os.str();
}

WaveFunction WaveFunction::build(const Configuration& config) {
    config.validate();
    WaveFunction wf;
    wf.params_ = config.params;
    wf.space_ = config.space;
    wf.symmetry_ = config.symmetry;
    wf.particles_ = config.particles();
    wf.components_.push_back({1.0, config.ns});
    wf.finalize();
    return wf;
}

WaveFunction WaveFunction::superpose(const Configuration& first, const Configuration& second,
                                     double c1, double c2, bool interference) {
    first.validate();
    second.validate();
    if (!(first.params == second.params) || first.space != second.space
        || first.symmetry != second.symmetry || first.particles() != second.particles()) {
        throw ConfigurationError(
            "superposed states must share model, space, symmetry and particle count");
    }
    if (!std::isfinite(c1) || !std::isfinite(c2) || std::abs(c1 * c1 + c2 * c2 - 1.0) > 1e-12) {
        throw ConfigurationError("superposition coefficients must satisfy c1^2 + c2^2 = 1");
    }
    WaveFunction wf;
    wf.params_ = first.params;
    wf.space_ = first.space;
    wf.symmetry_ = first.symmetry;
    wf.particles_ = first.particles();
    wf.interference_ = interference;
    wf.components_.push_back({c1, first.ns});
    wf.components_.push_back({c2, second.ns});
    wf.finalize();
    return wf;
}

void WaveFunction::finalize() {
    for (const auto& comp : components_) {
        std::array<int, 3> index{-1, -1, -1};
        std::map<int, int> multiplicity;
        for (std::size_t k = 0; k < comp.ns.size(); ++k) {
            const int n = comp.ns[k];
            auto it = std::find(basis_.begin(), basis_.end(), n);
            if (it == basis_.end()) {
                basis_.push_back(n);
                it = basis_.end() - 1;
            }
            index[k] = static_cast<int>(it - basis_.begin());
            ++multiplicity[n];
        }
        component_index_.push_back(index);
        double denom = 1.0;
        if (symmetry_ != SymmetryClass::Distinguishable) {
            denom = factorial(particles_);
            for (const auto& [n, m] : multiplicity) {
                denom *= factorial(m);
            }
        }
        norms_.push_back(1.0 / std::sqrt(denom));
    }

    // Psi as a signed sum of orbital products, one per permutation.
    std::vector<Product> products;
    for (std::size_t c = 0; c < components_.size(); ++c) {
        const double scale = components_[c].coefficient * norms_[c];
        if (symmetry_ == SymmetryClass::Distinguishable) {
            products.push_back({scale, c, component_index_[c]});
            continue;
        }
        std::array<int, 3> p{0, 1, 2};
        do {
            const int sign = symmetry_ == SymmetryClass::Antisymmetric ? permutation_sign(p, particles_) : 1;
            std::array<int, 3> orbitals{-1, -1, -1};
            for (int k = 0; k < particles_; ++k) {
                orbitals[static_cast<std::size_t>(k)] =
                    component_index_[c][static_cast<std::size_t>(p[static_cast<std::size_t>(k)])];
            }
            products.push_back({sign * scale, c, orbitals});
        } while (std::next_permutation(p.begin(), p.begin() + particles_));
    }

    // Orthonormal orbitals: <prod a|prod b> is 1 when every slot matches.
    double norm = 0.0;
    std::map<std::pair<std::array<int, 3>, std::array<int, 3>>, double> merged;
    for (const auto& a : products) {
        for (const auto& b : products) {
            if (!interference_ && a.component != b.component) {
                continue;
            }
            const double w = a.coefficient * b.coefficient;
            if (a.orbitals == b.orbitals) {
                norm += w;
            }
            merged[{a.orbitals, b.orbitals}] += w;
        }
    }
    if (!(norm > 0.0)) {
        throw ConfigurationError("superposition has zero norm");
    }
    renorm_ = 1.0 / norm;
    for (const auto& [key, w] : merged) {
        if (w != 0.0) {
            expansion_.push_back({w * renorm_, key.first, key.second});
        }
    }
}

double WaveFunction::norm_factor(std::size_t c) const {
    return norms_.at(c);
}

int WaveFunction::max_quantum_number() const noexcept {
    return *std::max_element(basis_.begin(), basis_.end());
}

OrbitalRow WaveFunction::orbital_row(double coordinate) const {
    if (params_.kind == Model::Box && space_ == Space::Position) {
        if (!(coordinate >= 0.0 && coordinate <= params_.length)) {
            throw DomainError("coordinate outside the box [0, L]");
        }
    }
    return orbital_row(coordinate, 0.5 * coordinate * params_.length, false);
}

OrbitalRow WaveFunction::orbital_row(double coordinate, double phase, bool averaged) const {
    OrbitalRow row{};
    if (params_.kind == Model::Oscillator) {
        std::array<Amplitude, 64> ladder{};
        const int top = max_quantum_number();
        if (top >= static_cast<int>(ladder.size())) {
            for (std::size_t b = 0; b < basis_.size(); ++b) {
                row[b] = eval_ho(basis_[b], params_.omega, coordinate, space_);
            }
            return row;
        }
        eval_ho_ladder(params_.omega, coordinate, space_,
                       std::span<Amplitude>(ladder.data(), static_cast<std::size_t>(top) + 1));
        for (std::size_t b = 0; b < basis_.size(); ++b) {
            row[b] = ladder[static_cast<std::size_t>(basis_[b])];
        }
        return row;
    }
    for (std::size_t b = 0; b < basis_.size(); ++b) {
        const int n = basis_[b];
        if (space_ == Space::Position) {
            row[b] = eval_box_position(n, params_.length, coordinate);
        } else if (averaged) {
            row[b] = eval_box_momentum_envelope(n, params_.length, coordinate, phase);
        } else {
            row[b] = eval_box_momentum(n, params_.length, coordinate);
        }
    }
    return row;
}

Amplitude WaveFunction::component_amplitude(std::size_t c,
                                            std::span<const OrbitalRow* const> rows) const {
    const auto& idx = component_index_[c];
    auto m = [&](std::size_t k, std::size_t j) {
        return (*rows[k])[static_cast<std::size_t>(idx[j])];
    };
    Amplitude value;
    if (symmetry_ == SymmetryClass::Distinguishable) {
        value = m(0, 0) * m(1, 1);
        if (particles_ == 3) {
            value *= m(2, 2);
        }
    } else if (particles_ == 2) {
        const Amplitude cross = m(0, 1) * m(1, 0);
        value = m(0, 0) * m(1, 1) + (symmetry_ == SymmetryClass::Antisymmetric ? -cross : cross);
    } else if (symmetry_ == SymmetryClass::Antisymmetric) {
        value = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    } else {
        value = m(0, 0) * (m(1, 1) * m(2, 2) + m(1, 2) * m(2, 1))
                + m(0, 1) * (m(1, 0) * m(2, 2) + m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) + m(1, 1) * m(2, 0));
    }
    return norms_[c] * value;
}

double WaveFunction::density(std::span<const OrbitalRow* const> rows) const {
    if (interference_) {
        Amplitude sum;
        for (std::size_t c = 0; c < components_.size(); ++c) {
            sum += components_[c].coefficient * component_amplitude(c, rows);
        }
        return renorm_ * std::norm(sum);
    }
    double sum = 0.0;
    for (std::size_t c = 0; c < components_.size(); ++c) {
        const double coef = components_[c].coefficient;
        sum += coef * coef * std::norm(component_amplitude(c, rows));
    }
    return renorm_ * sum;
}

namespace {

std::array<OrbitalRow, 3> rows_at(const WaveFunction& wf, std::span<const double> point) {
    if (static_cast<int>(point.size()) != wf.particles()) {
        throw ConfigurationError("point needs one coordinate per particle");
    }
    std::array<OrbitalRow, 3> rows{};
    for (std::size_t k = 0; k < point.size(); ++k) {
        rows[k] = wf.orbital_row(point[k]);
    }
    return rows;
}

} // namespace

Amplitude WaveFunction::amplitude(std::span<const double> point) const {
    const auto rows = rows_at(*this, point);
    const std::array<const OrbitalRow*, 3> ptrs{&rows[0], &rows[1], &rows[2]};
    const std::span<const OrbitalRow* const> view(ptrs.data(), point.size());
    Amplitude sum;
    for (std::size_t c = 0; c < components_.size(); ++c) {
        sum += components_[c].coefficient * component_amplitude(c, view);
    }
    return std::sqrt(renorm_) * sum;
}

double WaveFunction::density(std::span<const double> point) const {
    const auto rows = rows_at(*this, point);
    const std::array<const OrbitalRow*, 3> ptrs{&rows[0], &rows[1], &rows[2]};
    return density(std::span<const OrbitalRow* const>(ptrs.data(), point.size()));
}

std::pair<Amplitude, Amplitude> exchange_symmetry_check(const WaveFunction& wf,
                                                        std::span<const double> point) {
    std::vector<double> swapped(point.begin(), point.end());
    if (swapped.size() < 2) {
        throw ConfigurationError("exchange check needs at least two coordinates");
    }
    std::swap(swapped[0], swapped[1]);
    return {wf.amplitude(point), wf.amplitude(swapped)};
}

} // namespace qcorr
