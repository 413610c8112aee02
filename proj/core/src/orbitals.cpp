#include "qcorr/orbitals.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSincSeriesThreshold = 1e-4;

// i^n for integer n, exactly.
Amplitude i_pow(int n) noexcept {
    static constexpr std::array<Amplitude, 4> table{
        Amplitude{1.0, 0.0}, Amplitude{0.0, 1.0}, Amplitude{-1.0, 0.0}, Amplitude{0.0, -1.0}};
    return table[static_cast<std::size_t>(((n % 4) + 4) % 4)];
}

void require_quantum_number(int n, int min_n) {
    if (n < min_n) {
        throw ConfigurationError("quantum number " + std::to_string(n) + " below minimum "
                                 + std::to_string(min_n));
    }
}

} // namespace

std::string_view to_string(Model model) noexcept {
    return model == Model::Box ? "box" : "ho";
}

std::string_view to_string(Space space) noexcept {
    return space == Space::Position ? "position" : "momentum";
}

ModelParams ModelParams::box(double length) {
    ModelParams p{Model::Box, length, 1.0};
    p.validate();
    return p;
}

ModelParams ModelParams::oscillator(double omega) {
    ModelParams p{Model::Oscillator, 1.0, omega};
    p.validate();
    return p;
}

void ModelParams::validate() const {
    if (kind == Model::Box && !(length > 0.0 && std::isfinite(length))) {
        throw ConfigurationError("box length L must be positive");
    }
    if (kind == Model::Oscillator && !(omega > 0.0 && std::isfinite(omega))) {
        throw ConfigurationError("oscillator strength omega must be positive");
    }
}

double sinc(double z) noexcept {
    if (std::abs(z) < kSincSeriesThreshold) {
        const double z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

Amplitude eval_box_position(int n, double length, double x) {
    require_quantum_number(n, 1);
    const double slack = 1e-12 * length;
    if (!(x >= -slack && x <= length + slack)) {
        throw DomainError("box coordinate " + std::to_string(x) + " outside [0, "
                          + std::to_string(length) + "]");
    }
    return {std::sqrt(2.0 / length) * std::sin(n * kPi * x / length), 0.0};
}

Amplitude eval_box_momentum(int n, double length, double p) {
    require_quantum_number(n, 1);
    const double pl = p * length;
    const double npi = n * kPi;
    // sin(a/2)/a == sinc(a/2)/2
    const double minus = 0.5 * sinc(0.5 * (pl - npi));
    const double plus = 0.5 * sinc(0.5 * (pl + npi));
    const Amplitude bracket = i_pow(n) * minus - i_pow(-n) * plus;
    const Amplitude prefactor = Amplitude{0.0, -1.0} * std::sqrt(length / kPi)
                                * std::polar(1.0, -0.5 * pl);
    return prefactor * bracket;
}

Amplitude eval_box_momentum_envelope(int n, double length, double p, double phase) {
    require_quantum_number(n, 1);
    const double pl = p * length;
    const double npi = n * kPi;
    const double envelope = 2.0 * npi / (pl * pl - npi * npi);
    // Even n carries sin(pL/2), odd n carries -i cos(pL/2).
    const Amplitude trig = (n % 2 == 0) ? Amplitude{std::sin(phase), 0.0}
                                        : Amplitude{0.0, -std::cos(phase)};
    return Amplitude{0.0, -1.0} * std::sqrt(length / kPi) * std::polar(1.0, -phase) * envelope
           * trig;
}

void eval_ho_ladder(double omega, double coordinate, Space space, std::span<Amplitude> out) {
    if (out.empty()) {
        return;
    }
    const double w = space == Space::Position ? omega : 1.0 / omega;
    const double xi = std::sqrt(w) * coordinate;
    // Hermite functions carried through the recurrence, never the raw polynomial.
    double prev = 0.0;
    double cur = std::pow(w / kPi, 0.25) * std::exp(-0.5 * xi * xi);
    for (std::size_t k = 0; k < out.size(); ++k) {
        const int n = static_cast<int>(k);
        out[k] = space == Space::Position ? Amplitude{cur, 0.0} : i_pow(-n) * cur;
        const double next = std::sqrt(2.0 / (n + 1)) * xi * cur - std::sqrt(double(n) / (n + 1)) * prev;
        prev = cur;
        cur = next;
    }
}

Amplitude eval_ho(int n, double omega, double coordinate, Space space) {
    require_quantum_number(n, 0);
    if (!(omega > 0.0)) {
        throw ConfigurationError("oscillator strength omega must be positive");
    }
    std::vector<Amplitude> ladder(static_cast<std::size_t>(n) + 1);
    eval_ho_ladder(omega, coordinate, space, ladder);
    return ladder.back();
}

Amplitude eval_orbital(const ModelParams& params, Space space, int n, double coordinate) {
    if (params.kind == Model::Oscillator) {
        return eval_ho(n, params.omega, coordinate, space);
    }
    return space == Space::Position ? eval_box_position(n, params.length, coordinate)
                                    : eval_box_momentum(n, params.length, coordinate);
}

bool is_bounded(const ModelParams& params, Space space) noexcept {
    return params.kind == Model::Box && space == Space::Position;
}

} // namespace qcorr
