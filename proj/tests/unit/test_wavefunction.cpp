#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <qcorr/errors.hpp>
#include <qcorr/quadrature.hpp>
#include <qcorr/wavefunction.hpp>

#include "oracles.hpp"

using namespace qcorr;

namespace {

Configuration box_state(std::vector<int> ns, SymmetryClass sym, Space space = Space::Position) {
    return {ModelParams::box(1.0), std::move(ns), sym, space};
}

double norm3(const WaveFunction& wf, int panels = 16) {
    const AxisRule rule = axis_rule(wf.params(), wf.space(), wf.max_quantum_number(), panels, 10,
                                    RuleFamily::GaussLegendreComposite);
    std::vector<OrbitalRow> rows(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
        rows[i] = wf.orbital_row(rule.coord[i], rule.phase[i], rule.averaged[i] != 0);
    }
    return tensor_sum(rule, 3, [&](std::size_t i, std::size_t j, std::size_t k) {
        const OrbitalRow* r[3] = {&rows[i], &rows[j], &rows[k]};
        return wf.density(r);
    });
}

std::string config_error(const Configuration& config) {
    try {
        config.validate();
    } catch (const ConfigurationError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_SUITE("wavefunction") {

TEST_CASE("validation messages") {
    CHECK(config_error(box_state({1, 1, 2}, SymmetryClass::Antisymmetric))
          == "antisymmetric state requires distinct quantum numbers");
    CHECK(config_error(box_state({2, 2, 2}, SymmetryClass::Symmetric))
          == "symmetric state with three equal quantum numbers is not supported");
    CHECK_FALSE(config_error(box_state({1, 2, 3, 4}, SymmetryClass::Symmetric)).empty());
    CHECK_FALSE(config_error(box_state({1}, SymmetryClass::Distinguishable)).empty());
    CHECK_FALSE(config_error(box_state({0, 1, 2}, SymmetryClass::Antisymmetric)).empty());
    CHECK(config_error({ModelParams::oscillator(1.0), {0, 1, 2}, SymmetryClass::Antisymmetric, Space::Position})
              .empty());
    CHECK(config_error(box_state({2, 2, 2}, SymmetryClass::Distinguishable)).empty());
    CHECK(box_state({1, 2, 3}, SymmetryClass::Antisymmetric).describe()
          == "box L=1 (1,2,3) antisymmetric position");
}

TEST_CASE("normalisation factors") {
    CHECK(WaveFunction::build(box_state({1, 2, 3}, SymmetryClass::Antisymmetric)).norm_factor()
          == doctest::Approx(1.0 / std::sqrt(6.0)));
    CHECK(WaveFunction::build(box_state({1, 1, 2}, SymmetryClass::Symmetric)).norm_factor()
          == doctest::Approx(1.0 / std::sqrt(12.0)));
    CHECK(WaveFunction::build(box_state({1, 2}, SymmetryClass::Symmetric)).norm_factor()
          == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(WaveFunction::build(box_state({1, 2, 3}, SymmetryClass::Distinguishable)).norm_factor() == 1.0);
}

TEST_CASE("three-particle states integrate to one") {
    for (auto sym : {SymmetryClass::Antisymmetric, SymmetryClass::Symmetric}) {
        for (int n3 = 3; n3 <= 6; ++n3) {
            CHECK(std::abs(norm3(WaveFunction::build(box_state({1, 2, n3}, sym))) - 1.0) < 1e-6);
        }
    }
    CHECK(std::abs(norm3(WaveFunction::build(box_state({1, 1, 2}, SymmetryClass::Symmetric))) - 1.0) < 1e-6);
    const Configuration ho{ModelParams::oscillator(1.0), {0, 1, 3}, SymmetryClass::Symmetric, Space::Momentum};
    CHECK(std::abs(norm3(WaveFunction::build(ho)) - 1.0) < 1e-6);
    CHECK(std::abs(norm3(WaveFunction::build(box_state({1, 2, 3}, SymmetryClass::Antisymmetric,
                                                       Space::Momentum)), 8) - 1.0) < 1e-6);
}

TEST_CASE("amplitudes match a permutation expansion") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto sym : {SymmetryClass::Antisymmetric, SymmetryClass::Symmetric, SymmetryClass::Distinguishable}) {
        const std::vector<int> ns{1, 2, 4};
        const WaveFunction wf = WaveFunction::build(box_state(ns, sym));
        for (int trial = 0; trial < 50; ++trial) {
            const std::array<double, 3> x{u(rng), u(rng), u(rng)};
            oracle::Complex want;
            if (sym == SymmetryClass::Distinguishable) {
                want = oracle::box_orbital(1, 1.0, x[0]) * oracle::box_orbital(2, 1.0, x[1])
                       * oracle::box_orbital(4, 1.0, x[2]);
            } else {
                std::vector<std::vector<oracle::Complex>> m(3, std::vector<oracle::Complex>(3));
                for (int a = 0; a < 3; ++a) {
                    for (int b = 0; b < 3; ++b) {
                        m[a][b] = oracle::box_orbital(ns[b], 1.0, x[a]);
                    }
                }
                want = oracle::leibniz(m, sym == SymmetryClass::Antisymmetric) / std::sqrt(6.0);
            }
            CHECK(std::abs(wf.amplitude(x) - want) < 1e-12);
        }
    }
}

TEST_CASE("exchange symmetry") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> p(-12.0, 12.0);
    const WaveFunction a = WaveFunction::build(box_state({1, 2, 3}, SymmetryClass::Antisymmetric));
    const WaveFunction s = WaveFunction::build(box_state({1, 2, 3}, SymmetryClass::Symmetric));
    const WaveFunction am = WaveFunction::build(box_state({1, 2, 3}, SymmetryClass::Antisymmetric, Space::Momentum));
    for (int trial = 0; trial < 1000; ++trial) {
        const std::array<double, 3> x{u(rng), u(rng), u(rng)};
        const auto [a0, a1] = exchange_symmetry_check(a, x);
        CHECK(std::abs(a0 + a1) < 1e-12);
        const auto [s0, s1] = exchange_symmetry_check(s, x);
        CHECK(std::abs(s0 - s1) < 1e-12);
        const std::array<double, 3> q{p(rng), p(rng), p(rng)};
        const auto [m0, m1] = exchange_symmetry_check(am, q);
        CHECK(std::abs(m0 + m1) < 1e-12);
    }
    const WaveFunction d = WaveFunction::build(box_state({1, 2, 3}, SymmetryClass::Distinguishable));
    const std::array<double, 3> x{0.2, 0.4, 0.6};
    const auto [d0, d1] = exchange_symmetry_check(d, x);
    CHECK(std::abs(d0 - d1) > 1e-3);
}

TEST_CASE("Fermi hole and the symmetric two-particle node") {
    const WaveFunction a = WaveFunction::build(box_state({1, 2, 3}, SymmetryClass::Antisymmetric));
    for (double t : {0.1, 0.37, 0.8}) {
        const std::array<double, 3> x{t, t, 0.55};
        CHECK(a.density(x) < 1e-24);
    }
    const WaveFunction s2 = WaveFunction::build(box_state({2, 3}, SymmetryClass::Symmetric));
    for (double t : {0.05, 0.3, 0.5, 0.91}) {
        const std::array<double, 2> x{t, 1.0 - t};
        CHECK(s2.density(x) < 1e-24);
    }
    const std::array<double, 2> off{0.3, 0.6};
    CHECK(s2.density(off) > 1e-3);
}

TEST_CASE("momentum amplitude is the Fourier transform of the position amplitude") {
    const WaveFunction pos = WaveFunction::build(box_state({1, 2}, SymmetryClass::Antisymmetric));
    const WaveFunction mom = WaveFunction::build(box_state({1, 2}, SymmetryClass::Antisymmetric, Space::Momentum));
    for (const auto& p : {std::array<double, 2>{0.5, -2.0}, std::array<double, 2>{3.1, 7.7}}) {
        // Outer and inner integrals by adaptive Simpson.
        const auto part = [&](bool imag) {
            return oracle::simpson(
                [&](double x1) {
                    return oracle::simpson(
                        [&](double x2) {
                            const std::array<double, 2> x{x1, x2};
                            const auto v = pos.amplitude(x) * std::polar(1.0, -(p[0] * x1 + p[1] * x2));
                            return imag ? v.imag() : v.real();
                        },
                        0.0, 1.0, 1e-11);
                },
                0.0, 1.0, 1e-10);
        };
        const oracle::Complex ft = oracle::Complex(part(false), part(true)) / (2.0 * std::numbers::pi);
        CHECK(std::abs(mom.density(p) - std::norm(ft)) < 1e-8);
    }
}

TEST_CASE("superposition construction") {
    const Configuration a = box_state({1, 2, 3}, SymmetryClass::Antisymmetric);
    const Configuration b = box_state({4, 5, 6}, SymmetryClass::Antisymmetric);
    CHECK_THROWS_AS(WaveFunction::superpose(a, b, 0.8, 0.8, true), ConfigurationError);
    CHECK_THROWS_AS(WaveFunction::superpose(a, box_state({4, 5, 6}, SymmetryClass::Symmetric), 0.6, 0.8, true),
                    ConfigurationError);
    const WaveFunction w = WaveFunction::superpose(a, b, 0.6, 0.8, true);
    CHECK(w.is_superposition());
    CHECK(w.renormalization() == doctest::Approx(1.0));
    CHECK(std::abs(norm3(w) - 1.0) < 1e-6);

    // Coherent sum of a state with itself needs renormalising.
    const double c = std::sqrt(0.5);
    const WaveFunction same = WaveFunction::superpose(a, a, c, c, true);
    CHECK(same.renormalization() == doctest::Approx(0.5));
    CHECK(std::abs(norm3(same) - 1.0) < 1e-6);
    const WaveFunction pure = WaveFunction::build(a);
    const std::array<double, 3> x{0.2, 0.45, 0.7};
    CHECK(same.density(x) == doctest::Approx(pure.density(x)).epsilon(1e-12));

    // Without interference the density is the weighted mixture.
    const WaveFunction mix = WaveFunction::superpose(a, b, 0.6, 0.8, false);
    const WaveFunction pb = WaveFunction::build(b);
    CHECK(mix.density(x) == doctest::Approx(0.36 * pure.density(x) + 0.64 * pb.density(x)).epsilon(1e-12));
}

}
