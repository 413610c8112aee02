#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcorr/information.hpp"
#include "qcorr/quadrature.hpp"
#include "qcorr/wavefunction.hpp"

namespace qcorr {

/// c1 |first> + c2 |second> with real c2 = +sqrt(1 - c1^2).
struct SuperpositionSpec {
    Configuration first;
    Configuration second;
    double c1 = 0.7071067811865476;
    bool interference = true;

    double c2() const;

    /// Throws ConfigurationError unless c1^2 is in [0, 1] and both states share
    /// model, space, symmetry and particle count.
    void validate() const;

    /// Box L = 1 states (1,2,3) and (4,5,6).
    static SuperpositionSpec box_pair(SymmetryClass symmetry, Space space, bool interference = true);
};

WaveFunction build_superposition(const SuperpositionSpec& spec);

struct ScanSample {
    double c1sq = 0.0;
    std::optional<InformationReport> report;
    /// Diagnostic when the sample failed; the other samples are still computed.
    std::string error;
};

struct ScanResult {
    SuperpositionSpec spec;
    QuadratureScheme scheme;
    std::vector<ScanSample> samples;

    bool complete() const noexcept;
};

/// c1^2 = 0, 0.05, ..., 1.
std::vector<double> default_c1sq_grid();

/// One report per c1^2 sample, in sample order. Needs at least three strictly
/// increasing samples in [0, 1]; spec.c1 is ignored.
ScanResult scan_coefficient(const SuperpositionSpec& spec, std::span<const double> c1sq,
                            const QuadratureScheme& scheme);

/// Columns c1sq,s1,s2,s3,I_pair,I3,I_rho_gamma,I_gamma_gamma,I_higher; failed
/// samples leave the value columns empty.
void write_scan_csv(const ScanResult& scan, std::ostream& out);

} // namespace qcorr
