#ifndef FABERKIT_QUAD_HPP
#define FABERKIT_QUAD_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <faberkit/domaincfg.hpp>
#include <faberkit/error.hpp>
#include <faberkit/types.hpp>

namespace faberkit
{

// Closed curve zeta(theta) = f(radius e^{i theta}) traced with the given
// orientation (+1 counterclockwise) and discretized at `nodes` equispaced
// parameter values.
struct Contour {
    ConformalMapSpec generator;
    double radius = 1.0;
    int orientation = 1;
    std::size_t nodes = 512;

    Contour(ConformalMapSpec gen, double s, int orient = 1, std::size_t n = 512)
        : generator(std::move(gen)), radius(s), orientation(orient), nodes(n)
    {
        if (!(radius > 0.0)) {
            throw std::invalid_argument("contour radius must be positive");
        }
        if (orientation != 1 && orientation != -1) {
            throw std::invalid_argument("contour orientation must be +1 or -1");
        }
        if (!is_power_of_two(nodes) || nodes < 64) {
            throw std::invalid_argument("contour node count must be a power of two >= 64");
        }
    }

    // Circle |zeta - center| = r.
    static Contour circle(cplx center, double r, int orient = 1, std::size_t n = 512)
    {
        return Contour(ConformalMapSpec::affine(center, 1.0), r, orient, n);
    }
};

// Quadrature nodes zeta_k and signed weights d zeta_k for one contour.
struct ContourNodes {
    cvec points;
    cvec weights;
};

inline ContourNodes contour_nodes(const Contour &c, std::size_t stride = 1)
{
    ContourNodes out;
    const std::size_t n = c.nodes / stride;
    out.points.resize(n);
    out.weights.resize(n);
    const double h = 2.0 * pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx w = c.radius * unit(h * static_cast<double>(k));
        out.points[k] = evaluate_map(c.generator, w);
        // d zeta = f'(w) i w d theta
        out.weights[k] = static_cast<double>(c.orientation) * map_derivative(c.generator, w) * I * w * h;
    }
    return out;
}

struct QuadratureResult {
    cplx value;
    // |I_N - I_{N/2}|, the change on halving the node count.
    double doubling_delta = 0.0;
};

// Trapezoid rule on the parameter circle, spectrally accurate for integrands
// analytic near the curve.
template <typename Fn>
QuadratureResult contour_integral(Fn &&fn, const Contour &c)
{
    const auto nodes = contour_nodes(c);
    cplx full{}, half{};
    for (std::size_t k = 0; k < nodes.points.size(); ++k) {
        const cplx term = fn(nodes.points[k]) * nodes.weights[k];
        full += term;
        if (k % 2 == 0) {
            half += term;
        }
    }
    half *= 2.0;
    return {full, std::abs(full - half)};
}

// Values of h at the nodes of a contour, kept with the nodes for repeated
// Cauchy evaluation.
struct BoundarySamples {
    ContourNodes nodes;
    cvec values;
};

template <typename Fn>
BoundarySamples sample_on_contour(Fn &&fn, const Contour &c)
{
    BoundarySamples out{contour_nodes(c), {}};
    out.values.resize(out.nodes.points.size());
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        out.values[k] = fn(out.nodes.points[k]);
    }
    return out;
}

// -(1 / 2 pi i) * integral of h(zeta) / (zeta - z) d zeta over the sampled contour.
// For a counterclockwise contour and z outside it this is the exterior Cauchy
// projection: the component of h holomorphic outside and vanishing at infinity.
inline cplx cauchy_eval(const BoundarySamples &s, cplx z, double d_min = 0.05)
{
    double dist = std::numeric_limits<double>::infinity();
    cplx acc{};
    for (std::size_t k = 0; k < s.values.size(); ++k) {
        const cplx diff = s.nodes.points[k] - z;
        dist = std::min(dist, std::abs(diff));
        acc += s.values[k] * s.nodes.weights[k] / diff;
    }
    if (dist < d_min) {
        throw too_close_to_contour("cauchy_eval: evaluation point too close to the contour");
    }
    return -acc / (2.0 * pi * I);
}

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
inline GaussRule gauss_legendre(std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("gauss_legendre: need at least one node");
    }
    GaussRule r{std::vector<double>(n), std::vector<double>(n)};
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double dk = static_cast<double>(k);
                const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
                p0 = p1;
                p1 = p2;
            }
            dp = dn * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double dk = static_cast<double>(k);
            const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
            p0 = p1;
            p1 = p2;
        }
        dp = dn * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        r.nodes[n / 2] = 0.0;
    }
    return r;
}

// Product rule for the unit disk: Gauss-Legendre in r on [0, 1] times the
// trapezoid rule in theta. Nodes carry the area element r dr d theta.
struct AreaRule {
    cvec points;
    std::vector<double> weights;
};

inline AreaRule disk_area_rule(std::size_t radial, std::size_t angular)
{
    const auto gl = gauss_legendre(radial);
    AreaRule rule;
    rule.points.reserve(radial * angular);
    rule.weights.reserve(radial * angular);
    const double h = 2.0 * pi / static_cast<double>(angular);
    for (std::size_t a = 0; a < radial; ++a) {
        const double r = 0.5 * (gl.nodes[a] + 1.0);
        const double wr = 0.5 * gl.weights[a] * r;
        for (std::size_t b = 0; b < angular; ++b) {
            rule.points.push_back(r * unit(h * static_cast<double>(b)));
            rule.weights.push_back(wr * h);
        }
    }
    return rule;
}

template <typename Fn>
cplx area_quadrature_disk(Fn &&fn, std::size_t radial, std::size_t angular)
{
    const auto rule = disk_area_rule(radial, angular);
    cplx acc{};
    for (std::size_t k = 0; k < rule.points.size(); ++k) {
        acc += fn(rule.points[k]) * rule.weights[k];
    }
    return acc;
}

} // namespace faberkit

#endif
