#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <string_view>
#include <vector>

#include "qcorr/orbitals.hpp"
#include "qcorr/parallel.hpp"

namespace qcorr {

enum class RuleFamily { GaussLegendreComposite, TanhSinh };

std::string_view to_string(RuleFamily family) noexcept;

/// Resolution of the tensor-product rules used for every integral.
///
/// `panels` applies to one- and two-dimensional integrals, `panels_3d` to
/// three-dimensional ones. For box momentum space a panel is half an
/// oscillation period (pi/L) of the resolved central region, counted over
/// both signs of p.
struct QuadratureScheme {
    RuleFamily rule = RuleFamily::GaussLegendreComposite;
    int panels = 24;
    int panels_3d = 32;
    int nodes = 10;
    double target_abs_tol = 5e-5;
    /// When set, an error estimate above target_abs_tol that does not shrink
    /// under refinement raises NonConvergenceError.
    bool enforce_convergence = true;

    /// 24/32 panels (1D-2D / 3D) with 10 nodes each. Box momentum space uses
    /// 32/24: its pair densities need the finer grid, while the phase-averaged
    /// tail makes the 3D sweep converge faster. The oscillator is the same
    /// problem in both spaces and keeps 24/32.
    static QuadratureScheme defaults(Space space, Model model = Model::Box);

    /// Throws ConfigurationError unless there are at least 2 panels, 3 nodes per
    /// panel and 16 nodes per axis.
    void validate() const;

    int panels_for(int dims) const noexcept { return dims >= 3 ? panels_3d : panels; }
};

struct IntegralResult {
    double value = 0.0;
    /// |refined - coarse| where the coarse level halves the panel count.
    double error_estimate = 0.0;
    long long nodes_used = 0;
};

/// Reference rule on [-1, 1].
struct BaseRule {
    std::vector<double> x;
    std::vector<double> w;
};

BaseRule gauss_legendre(int nodes);
BaseRule tanh_sinh(int nodes);
BaseRule base_rule(RuleFamily family, int nodes);

/// One-dimensional rule for a single particle coordinate.
///
/// `phase` is the argument substituted for pL/2 in box momentum orbitals. On
/// ordinary nodes it equals coord*L/2; nodes flagged `averaged` belong to the
/// phase-averaged tail, where coordinate and phase vary independently and
/// orbitals must be evaluated with eval_box_momentum_envelope.
struct AxisRule {
    std::vector<double> coord;
    std::vector<double> weight;
    std::vector<double> phase;
    std::vector<char> averaged;

    std::size_t size() const noexcept { return coord.size(); }
    void push(double x, double w, double ph = 0.0, bool avg = false);
    double weight_sum() const noexcept;
};

struct MappedPoint {
    double p;
    double jacobian;
};

/// p = S u / (1 - u^2), dp/du = S (1 + u^2) / (1 - u^2)^2. Throws DomainError for |u| >= 1.
MappedPoint momentum_map(double u, double scale);

/// Composite rule over consecutive panels [edges[k], edges[k+1]].
AxisRule composite_rule(std::span<const double> edges, const BaseRule& base);

/// [lo, hi] split into `panels` equal panels, except that each interior
/// breakpoint moves its nearest edge onto itself. Earlier breakpoints win
/// when two want the same edge. Breakpoints at density zeros keep the
/// logarithmic singularity of the entropy integrand on panel edges.
AxisRule interval_rule(double lo, double hi, int panels, const BaseRule& base,
                       std::span<const double> breakpoints = {});

/// Whole real line through momentum_map, `panels` panels on u in (-1, 1).
AxisRule line_rule(double scale, int panels, const BaseRule& base);

/// Box momentum space: panels of width pi/L resolve the oscillating central
/// region; beyond it the remaining periods are summed by Euler-Maclaurin, with
/// the integral over the slow envelope and fast phase done on averaged nodes
/// and the derivative corrections fitted from a few further averaged samples.
AxisRule box_momentum_rule(double length, int max_n, int panels, const BaseRule& base);

/// Axis rule appropriate to the model and space. `max_n` is the largest
/// quantum number that will be integrated on the rule. Each `level` above 0
/// halves the panel count; for box momentum space, whose resolved region
/// cannot shrink below the orbital lobes, it thins the per-panel rule instead.
AxisRule axis_rule(const ModelParams& params, Space space, int max_n, int panels, int nodes,
                   RuleFamily family, int level = 0);

/// Scale S of the momentum map for unbounded coordinates.
double map_scale(const ModelParams& params, Space space, int max_n);

/// -d ln d with the limit 0 for d <= 1e-300. Noise down to -1e-12 is treated
/// as 0; anything more negative throws DomainError.
double entropy_integrand(double density);

/// Tensor-product sum over `dims` (1..3) copies of `rule`:
/// sum w_i [w_j [w_k]] f(i[, j[, k]]). Outermost axis runs in parallel,
/// accumulation order is fixed.
template <class F>
double tensor_sum(const AxisRule& rule, int dims, F&& f);

struct Domain {
    enum class Kind { Interval, Line };
    Kind kind = Kind::Interval;
    double lo = 0.0;
    double hi = 1.0;
    double scale = 1.0;

    static Domain interval(double lo, double hi) { return {Kind::Interval, lo, hi, 1.0}; }
    static Domain line(double scale) { return {Kind::Line, 0.0, 0.0, scale}; }
};

using Integrand = std::function<double(std::span<const double>)>;

/// Integrates f over domain^dims (dims in 1..3) at the scheme resolution and at
/// half the panels; returns the refined value with their difference as error.
/// Throws NonConvergenceError on a non-finite value, or (with
/// enforce_convergence) when the estimate exceeds the target tolerance and is
/// no smaller than the one between the coarse and quarter-panel levels.
IntegralResult integrate(const Integrand& f, int dims, const Domain& domain,
                         const QuadratureScheme& scheme);

/// Shared stagnation test: `coarser` lazily evaluates the next coarser level.
void check_convergence(const IntegralResult& result, double coarse_value,
                       const std::function<double()>& coarser, const QuadratureScheme& scheme,
                       std::string_view what);

// ---------------------------------------------------------------------------

template <class F>
double tensor_sum(const AxisRule& rule, int dims, F&& f) {
    using std::size_t;
    const size_t n = rule.size();
    const double* w = rule.weight.data();
    if constexpr (std::is_invocable_v<F&, size_t>) {
        if (dims != 1) {
            throw std::invalid_argument("tensor_sum: integrand arity does not match dims");
        }
        return ordered_sum(n, [&](size_t i) { return w[i] * f(i); });
    } else if constexpr (std::is_invocable_v<F&, size_t, size_t>) {
        if (dims != 2) {
            throw std::invalid_argument("tensor_sum: integrand arity does not match dims");
        }
        return ordered_sum(n, [&](size_t i) {
            double acc = 0.0;
            for (size_t j = 0; j < n; ++j) {
                acc += w[j] * f(i, j);
            }
            return w[i] * acc;
        });
    } else {
        static_assert(std::is_invocable_v<F&, size_t, size_t, size_t>,
                      "tensor_sum integrand must take 1 to 3 node indices");
        if (dims != 3) {
            throw std::invalid_argument("tensor_sum: integrand arity does not match dims");
        }
        return ordered_sum(n, [&](size_t i) {
            double outer = 0.0;
            for (size_t j = 0; j < n; ++j) {
                double inner = 0.0;
                for (size_t k = 0; k < n; ++k) {
                    inner += w[k] * f(i, j, k);
                }
                outer += w[j] * inner;
            }
            return w[i] * outer;
        });
    }
}

} // namespace qcorr
