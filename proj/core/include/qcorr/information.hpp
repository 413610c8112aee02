#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcorr/densities.hpp"
#include "qcorr/quadrature.hpp"
#include "qcorr/wavefunction.hpp"

namespace qcorr {

/// Shannon entropies in nats of the one-particle, pair and (N = 3) full density.
struct EntropyTriple {
    double s1 = 0.0;
    double s2 = 0.0;
    std::optional<double> s3;
    double s1_error = 0.0;
    double s2_error = 0.0;
    std::optional<double> s3_error;
    Space space = Space::Position;
};

double mutual_information_pair(const EntropyTriple& s);       // 2 s1 - s2
double mutual_information_three(const EntropyTriple& s);      // 3 s1 - s3
double mutual_information_one_pair(const EntropyTriple& s);   // s1 + s2 - s3
double mutual_information_pair_pair(const EntropyTriple& s);  // 2 s2 - s1 - s3
double mutual_information_higher(const EntropyTriple& s);     // 3 s2 - 3 s1 - s3

/// Entropies and correlation measures of one state in one space.
///
/// For distinguishable particles the marginals differ per coordinate. Then
/// s1 and s2 are the means of the three coordinate and three pair entropies,
/// which keeps every measure equal to its per-coordinate definition (e.g.
/// I_higher = sum of pair entropies - sum of coordinate entropies - s3).
struct InformationReport {
    std::string system;
    Space space = Space::Position;
    SymmetryClass symmetry = SymmetryClass::Antisymmetric;
    int particles = 3;
    ReductionStrategy strategy = ReductionStrategy::ClosedForm;
    EntropyTriple entropies;

    double I_pair = 0.0;
    std::optional<double> I_total3;
    std::optional<double> I_one_pair;
    std::optional<double> I_pair_pair;
    std::optional<double> I_higher;

    /// Distinguishable only: s(x1), s(x2), s(x3) and s(x1,x2), s(x1,x3), s(x2,x3).
    std::vector<double> coordinate_entropies;
    std::vector<double> pair_entropies;

    /// Direct integrals of the pair and higher-order mutual information, when requested.
    std::optional<double> I_pair_direct;
    std::optional<double> I_higher_direct;

    std::vector<std::string> warnings;
    long long nodes_used = 0;
};

struct ReportOptions {
    /// Also evaluate I_pair and I_higher as single integrals of log density ratios.
    bool direct = false;
};

/// -integral of d ln d over the density's domain, refined against coarse level.
IntegralResult entropy(const ReducedDensity& density, const QuadratureScheme& scheme);

/// Entropy of the full N-particle density |Psi|^2.
IntegralResult entropy(const WaveFunction& wf, const QuadratureScheme& scheme);

/// Entropies at every arity: s1 and s2 on the `panels` rule, |Psi|^2 on the
/// `panels_3d` rule. States without closed-form marginals get them by
/// integrating |Psi|^2 over the removed coordinates on the `panels` rule.
InformationReport information_report(const WaveFunction& wf, const QuadratureScheme& scheme,
                                     const ReportOptions& options = {});

/// I_higher of a distinguishable state from per-coordinate marginals.
double mutual_information_distinguishable(const WaveFunction& wf, const QuadratureScheme& scheme);

inline constexpr double kEntropicBound = 1.0 + 1.1447298858494002;  // 1 + ln(pi)

struct EntropySum {
    double position = 0.0;
    double momentum = 0.0;
    double sum = 0.0;
    double bound = kEntropicBound;
    bool satisfied = true;
};

/// One-particle entropies of the same state in both spaces and their sum
/// against the bound 1 + ln(pi).
EntropySum entropy_sum_check(const WaveFunction& position, const WaveFunction& momentum,
                             const QuadratureScheme& position_scheme,
                             const QuadratureScheme& momentum_scheme);

/// Joint third-order cumulant of the three coordinates,
/// <x1x2x3> - sum <xixj><xk> + 2 <x1><x2><x3>, which for identical marginals is
/// <x1x2x3> - 3<xixj><x> + 2<x>^3.
IntegralResult cumulant3(const WaveFunction& wf, const QuadratureScheme& scheme);

} // namespace qcorr
