#pragma once

#include <complex>
#include <span>
#include <string_view>

namespace qcorr {

using Amplitude = std::complex<double>;

enum class Model { Box, Oscillator };
enum class Space { Position, Momentum };

std::string_view to_string(Model model) noexcept;
std::string_view to_string(Space space) noexcept;

/// Single-particle model: infinite well of width `length` on [0, L], or a
/// harmonic trap of strength `omega` (hbar = m = 1).
struct ModelParams {
    Model kind = Model::Box;
    double length = 1.0;
    double omega = 1.0;

    static ModelParams box(double length);
    static ModelParams oscillator(double omega);

    /// Throws ConfigurationError unless L > 0 (box) or omega > 0 (oscillator).
    void validate() const;

    /// Smallest admissible quantum number: 1 for the box, 0 for the oscillator.
    int min_quantum_number() const noexcept { return kind == Model::Box ? 1 : 0; }

    bool operator==(const ModelParams&) const = default;
};

/// sin(z)/z with a Taylor branch for |z| < 1e-4.
double sinc(double z) noexcept;

/// Box orbital sqrt(2/L) sin(n pi x / L). Throws DomainError for x outside [0, L].
Amplitude eval_box_position(int n, double length, double x);

/// Dirac-Fourier transform of the box orbital (hbar = 1), valid for every real p.
Amplitude eval_box_momentum(int n, double length, double p);

/// Box momentum orbital with the fast phase pL/2 replaced by `phase`.
///
/// The closed form factorises into a rational envelope in p and a pi-periodic
/// trigonometric factor of pL/2. Evaluating the two with independent arguments
/// is what the phase-averaged tail of the momentum quadrature integrates over.
/// Equals eval_box_momentum(n, L, p) when phase == p*L/2. Requires |pL| != n*pi.
Amplitude eval_box_momentum_envelope(int n, double length, double p, double phase);

/// Harmonic-oscillator orbital. In momentum space this is the Fourier transform
/// (-i)^n psi_n(p; 1/omega) of the position orbital.
Amplitude eval_ho(int n, double omega, double coordinate, Space space);

/// Dispatches to the model/space specific evaluator. Validates n against the model.
Amplitude eval_orbital(const ModelParams& params, Space space, int n, double coordinate);

/// Evaluates orbitals n = 0..out.size()-1 of the oscillator at one coordinate
/// with a single pass of the Hermite-function recurrence.
void eval_ho_ladder(double omega, double coordinate, Space space, std::span<Amplitude> out);

/// Coordinate domain of one particle: [0, L] for box position space, the real
/// line otherwise.
bool is_bounded(const ModelParams& params, Space space) noexcept;

} // namespace qcorr
