#include "qcorr/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <numbers>
#include <string>

#include "qcorr/errors.hpp"

namespace qcorr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnderflowFloor = 1e-300;
constexpr double kNegativeNoise = -1e-12;

// Euler-Maclaurin tail of the box momentum rule.
constexpr int kFitNodes = 8;
constexpr double kFitSpan = 4.0;

BaseRule compute_gauss_legendre(int m) {
    BaseRule r;
    r.x.resize(static_cast<std::size_t>(m));
    r.w.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 1; j <= m; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = m * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        r.x[static_cast<std::size_t>(i)] = -z;
        r.x[static_cast<std::size_t>(m - 1 - i)] = z;
        r.w[static_cast<std::size_t>(i)] = w;
        r.w[static_cast<std::size_t>(m - 1 - i)] = w;
    }
    return r;
}

// Taylor coefficients at t = 0 of the interpolant through (t_j, h_j) are
// Vinv * h; returns Vinv for the Vandermonde matrix of `t`.
std::vector<std::vector<double>> vandermonde_inverse(const std::vector<double>& t) {
    const std::size_t n = t.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(2 * n, 0.0));
    for (std::size_t r = 0; r < n; ++r) {
        double pw = 1.0;
        for (std::size_t c = 0; c < n; ++c) {
            a[r][c] = pw;
            pw *= t[r];
        }
        a[r][n + r] = 1.0;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) {
                piv = r;
            }
        }
        std::swap(a[col], a[piv]);
        const double d = a[col][col];
        for (auto& v : a[col]) {
            v /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r != col && a[r][col] != 0.0) {
                const double f = a[r][col];
                for (std::size_t c = 0; c < 2 * n; ++c) {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    // Row k of the inverse maps samples to the t^k coefficient.
    std::vector<std::vector<double>> inv(n, std::vector<double>(n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            inv[r][c] = a[r][n + c];
        }
    }
    return inv;
}

void append_mirrored(AxisRule& out, const AxisRule& positive) {
    for (std::size_t i = positive.size(); i-- > 0;) {
        out.push(-positive.coord[i], positive.weight[i], -positive.phase[i],
                 positive.averaged[i] != 0);
    }
    for (std::size_t i = 0; i < positive.size(); ++i) {
        out.push(positive.coord[i], positive.weight[i], positive.phase[i],
                 positive.averaged[i] != 0);
    }
}

} // namespace

std::string_view to_string(RuleFamily family) noexcept {
    return family == RuleFamily::GaussLegendreComposite ? "gauss-legendre" : "tanh-sinh";
}

QuadratureScheme QuadratureScheme::defaults(Space space, Model model) {
    QuadratureScheme s;
    if (space == Space::Momentum && model == Model::Box) {
        s.panels = 32;
        s.panels_3d = 24;
    }
    return s;
}

void QuadratureScheme::validate() const {
    // Fewer would make the coarse level identical to the refined one.
    if (panels < 2 || panels_3d < 2 || nodes < 3) {
        throw ConfigurationError("quadrature needs at least two panels and three nodes per panel");
    }
    if (panels * nodes < 16 || panels_3d * nodes < 16) {
        throw ConfigurationError("quadrature needs at least 16 nodes per axis (panels x nodes)");
    }
    if (!(target_abs_tol > 0.0)) {
        throw ConfigurationError("quadrature tolerance must be positive");
    }
}

BaseRule gauss_legendre(int nodes) {
    if (nodes < 1) {
        throw ConfigurationError("Gauss-Legendre rule needs at least one node");
    }
    static std::mutex mutex;
    static std::map<int, BaseRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(nodes);
    if (it == cache.end()) {
        it = cache.emplace(nodes, compute_gauss_legendre(nodes)).first;
    }
    return it->second;
}

BaseRule tanh_sinh(int nodes) {
    if (nodes < 2) {
        throw ConfigurationError("tanh-sinh rule needs at least two nodes");
    }
    // Truncation balanced against the step for this node count; a fixed
    // t_max = 3 leaves ~1e-5 relative error at 10 nodes.
    const double t_max = std::min(3.0, 0.65 * std::log(static_cast<double>(nodes)) + 0.55);
    const double h = 2.0 * t_max / (nodes - 1);
    BaseRule r;
    for (int k = 0; k < nodes; ++k) {
        const double t = -t_max + h * k;
        const double s = 0.5 * kPi * std::sinh(t);
        const double c = std::cosh(s);
        r.x.push_back(std::tanh(s));
        r.w.push_back(h * 0.5 * kPi * std::cosh(t) / (c * c));
    }
    return r;
}

BaseRule base_rule(RuleFamily family, int nodes) {
    return family == RuleFamily::GaussLegendreComposite ? gauss_legendre(nodes) : tanh_sinh(nodes);
}

void AxisRule::push(double x, double w, double ph, bool avg) {
    coord.push_back(x);
    weight.push_back(w);
    phase.push_back(ph);
    averaged.push_back(avg ? 1 : 0);
}

double AxisRule::weight_sum() const noexcept {
    double s = 0.0;
    for (double w : weight) {
        s += w;
    }
    return s;
}

MappedPoint momentum_map(double u, double scale) {
    if (!(std::abs(u) < 1.0)) {
        throw DomainError("momentum map requires |u| < 1");
    }
    const double d = 1.0 - u * u;
    return {scale * u / d, scale * (1.0 + u * u) / (d * d)};
}

AxisRule composite_rule(std::span<const double> edges, const BaseRule& base) {
    AxisRule rule;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double mid = 0.5 * (edges[k] + edges[k + 1]);
        const double half = 0.5 * (edges[k + 1] - edges[k]);
        for (std::size_t i = 0; i < base.x.size(); ++i) {
            rule.push(mid + half * base.x[i], half * base.w[i]);
        }
    }
    return rule;
}

AxisRule interval_rule(double lo, double hi, int panels, const BaseRule& base,
                       std::span<const double> breakpoints) {
    std::vector<double> edges;
    edges.reserve(static_cast<std::size_t>(panels) + 1);
    for (int k = 0; k <= panels; ++k) {
        edges.push_back(lo + (hi - lo) * k / panels);
    }
    std::vector<char> claimed(edges.size(), 0);
    claimed.front() = claimed.back() = 1;
    for (double b : breakpoints) {
        if (!(b > lo && b < hi)) {
            continue;
        }
        const auto m = static_cast<std::size_t>(std::lround((b - lo) / (hi - lo) * panels));
        if (claimed[m] == 0) {
            edges[m] = b;
            claimed[m] = 1;
        }
    }
    return composite_rule(edges, base);
}

AxisRule line_rule(double scale, int panels, const BaseRule& base) {
    std::vector<double> edges;
    for (int k = 0; k <= panels; ++k) {
        edges.push_back(-1.0 + 2.0 * k / panels);
    }
    const AxisRule u = composite_rule(edges, base);
    AxisRule rule;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const MappedPoint m = momentum_map(u.coord[i], scale);
        rule.push(m.p, u.weight[i] * m.jacobian);
    }
    return rule;
}

AxisRule box_momentum_rule(double length, int max_n, int panels, const BaseRule& base) {
    // Periods of the fast phase pL/2 resolved explicitly on each side of p = 0.
    const int periods = std::max((panels + 3) / 4, max_n + 2);
    const double half_period = kPi / length;

    AxisRule side;
    std::vector<double> edges;
    for (int j = 0; j <= 2 * periods; ++j) {
        edges.push_back(j * half_period);
    }
    const AxisRule central = composite_rule(edges, base);
    for (std::size_t i = 0; i < central.size(); ++i) {
        side.push(central.coord[i], central.weight[i], 0.5 * central.coord[i] * length);
    }

    // Remaining periods k >= periods: their sum is the integral over the
    // continuous period index from periods - 1/2 plus the midpoint
    // Euler-Maclaurin corrections h'/24 - 7h'''/5760 + 31h^(5)/967680.
    const int theta_nodes = std::max(3, static_cast<int>(base.x.size()) / 2 - 1);
    const std::array<double, 3> theta_edges{0.0, 0.5 * kPi, kPi};
    const AxisRule theta = composite_rule(theta_edges, gauss_legendre(theta_nodes));
    const double start = periods - 0.5;
    const double scale = 2.0 * kPi * periods / length;

    const std::array<double, 2> unit{0.0, 1.0};
    const AxisRule envelope = composite_rule(unit, gauss_legendre(static_cast<int>(base.x.size())));
    for (std::size_t t = 0; t < theta.size(); ++t) {
        const double th = theta.coord[t];
        const double p0 = 2.0 * (kPi * start + th) / length;
        for (std::size_t v = 0; v < envelope.size(); ++v) {
            const MappedPoint m = momentum_map(envelope.coord[v], scale);
            side.push(p0 + m.p, envelope.weight[v] * m.jacobian * theta.weight[t] / kPi, th, true);
        }
    }

    const std::array<double, 2> fit_span{start, start + kFitSpan};
    const AxisRule fit = composite_rule(fit_span, gauss_legendre(kFitNodes));
    std::vector<double> offsets;
    for (double k : fit.coord) {
        offsets.push_back(k - start);
    }
    const auto inv = vandermonde_inverse(offsets);
    for (std::size_t j = 0; j < fit.size(); ++j) {
        const double correction = inv[1][j] / 24.0 - 7.0 * 6.0 * inv[3][j] / 5760.0
                                  + 31.0 * 120.0 * inv[5][j] / 967680.0;
        for (std::size_t t = 0; t < theta.size(); ++t) {
            const double th = theta.coord[t];
            side.push(2.0 * (kPi * fit.coord[j] + th) / length,
                      correction * (2.0 / length) * theta.weight[t], th, true);
        }
    }

    AxisRule rule;
    append_mirrored(rule, side);
    return rule;
}

double map_scale(const ModelParams& params, Space space, int max_n) {
    if (params.kind == Model::Oscillator) {
        const double turning = std::sqrt(2.0 * max_n + 1.0);
        return space == Space::Position ? turning / std::sqrt(params.omega)
                                        : turning * std::sqrt(params.omega);
    }
    return (max_n * kPi + 10.0) / params.length;
}

AxisRule axis_rule(const ModelParams& params, Space space, int max_n, int panels, int nodes,
                   RuleFamily family, int level) {
    if (params.kind == Model::Box && space == Space::Momentum) {
        int n = nodes;
        for (int l = 0; l < level; ++l) {
            n = std::max(2, n / 2 + 1);
        }
        return box_momentum_rule(params.length, max_n, panels, base_rule(family, n));
    }
    const int p = std::max(1, panels >> level);
    const BaseRule base = base_rule(family, nodes);
    if (params.kind == Model::Box) {
        // Orbital nodes k L / n, smallest n first.
        std::vector<double> nodes_of_orbitals;
        for (int n = 2; n <= max_n; ++n) {
            for (int k = 1; k < n; ++k) {
                if (std::gcd(k, n) == 1) {
                    nodes_of_orbitals.push_back(params.length * k / n);
                }
            }
        }
        return interval_rule(0.0, params.length, p, base, nodes_of_orbitals);
    }
    return line_rule(map_scale(params, space, max_n), p, base);
}

double entropy_integrand(double density) {
    if (density < kNegativeNoise) {
        throw DomainError("negative density " + std::to_string(density) + " in entropy integrand");
    }
    if (density <= kUnderflowFloor) {
        return 0.0;
    }
    return -density * std::log(density);
}

void check_convergence(const IntegralResult& result, double coarse_value,
                       const std::function<double()>& coarser, const QuadratureScheme& scheme,
                       std::string_view what) {
    if (!std::isfinite(result.value) || !std::isfinite(coarse_value)) {
        throw NonConvergenceError(std::string(what) + ": non-finite quadrature value",
                                  result.error_estimate);
    }
    if (!scheme.enforce_convergence || result.error_estimate <= scheme.target_abs_tol) {
        return;
    }
    const double previous = std::abs(coarse_value - coarser());
    if (!(previous > result.error_estimate)) {
        throw NonConvergenceError(std::string(what) + ": refinement stagnated, error estimate "
                                      + std::to_string(result.error_estimate),
                                  result.error_estimate);
    }
}

IntegralResult integrate(const Integrand& f, int dims, const Domain& domain,
                         const QuadratureScheme& scheme) {
    if (dims < 1 || dims > 3) {
        throw ConfigurationError("integrate supports 1 to 3 dimensions");
    }
    scheme.validate();
    const BaseRule base = base_rule(scheme.rule, scheme.nodes);
    auto rule_for = [&](int panels) {
        return domain.kind == Domain::Kind::Interval ? interval_rule(domain.lo, domain.hi, panels, base)
                                                     : line_rule(domain.scale, panels, base);
    };
    long long nodes_used = 0;
    auto value_at = [&](int panels) {
        const AxisRule rule = rule_for(panels);
        const auto& x = rule.coord;
        nodes_used += static_cast<long long>(std::pow(double(rule.size()), dims));
        switch (dims) {
        case 1:
            return tensor_sum(rule, 1, [&](std::size_t i) {
                const std::array<double, 1> pt{x[i]};
                return f(pt);
            });
        case 2:
            return tensor_sum(rule, 2, [&](std::size_t i, std::size_t j) {
                const std::array<double, 2> pt{x[i], x[j]};
                return f(pt);
            });
        default:
            return tensor_sum(rule, 3, [&](std::size_t i, std::size_t j, std::size_t k) {
                const std::array<double, 3> pt{x[i], x[j], x[k]};
                return f(pt);
            });
        }
    };
    const int panels = scheme.panels_for(dims);
    const double refined = value_at(panels);
    const double coarse = value_at(std::max(1, panels / 2));
    IntegralResult result{refined, std::abs(refined - coarse), 0};
    check_convergence(result, coarse, [&] { return value_at(std::max(1, panels / 4)); }, scheme,
                      "integrate");
    result.nodes_used = nodes_used;
    return result;
}

} // namespace qcorr
