#ifndef FABERKIT_ANALYSIS_HPP
#define FABERKIT_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include <faberkit/coeffseq.hpp>
#include <faberkit/domaincfg.hpp>
#include <faberkit/error.hpp>
#include <faberkit/faber.hpp>
#include <faberkit/grunsky.hpp>
#include <faberkit/quad.hpp>
#include <faberkit/types.hpp>

namespace faberkit
{

inline constexpr std::uint64_t default_probe_seed = 0x5eed'fabe'2024ULL;

// Angular offset in [0, 2 pi / count) drawn from the seed, for probe grids.
inline double probe_offset(std::uint64_t seed, std::size_t count)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 2.0 * pi / static_cast<double>(count));
    return u(rng);
}

// Points of Sigma for pointwise checks: a circle of radius R_k + 0.2 around each
// excluded region (R_k the largest boundary radius about p_k), the circle |z| = 10,
// and a few points near infinity. Points enclosed by some f_k(|w| = 1 + eps) or
// closer than d_min to one of those curves are dropped.
inline cvec sigma_probe_grid(const MultiDomainConfig &config, std::size_t count = 64,
                             std::uint64_t seed = default_probe_seed, double d_min = 0.05)
{
    const double offset = probe_offset(seed, count);
    const double rho_ext = 1.0 + config.ext_margin;
    std::vector<cvec> ext(config.size());
    cvec raw;
    for (std::size_t k = 0; k < config.size(); ++k) {
        const auto &spec = config.maps[k];
        ext[k] = sample_curve(spec, rho_ext, 1024);
        double rmax = 0.0;
        for (const auto &z : sample_curve(spec, 1.0, 1024)) {
            rmax = std::max(rmax, std::abs(z - spec.center()));
        }
        for (std::size_t a = 0; a < count; ++a) {
            raw.push_back(spec.center() + (rmax + 0.2) * unit(offset + 2.0 * pi * static_cast<double>(a) / static_cast<double>(count)));
        }
    }
    for (std::size_t a = 0; a < count; ++a) {
        raw.push_back(10.0 * unit(offset + 2.0 * pi * static_cast<double>(a) / static_cast<double>(count)));
    }
    // 1 / t for small t
    for (const double t : {1e-3, 1e-5}) {
        for (std::size_t a = 0; a < 4; ++a) {
            raw.push_back(1.0 / (t * unit(offset + 0.5 * pi * static_cast<double>(a))));
        }
    }

    cvec out;
    for (const auto &z : raw) {
        bool keep = true;
        for (std::size_t k = 0; k < config.size() && keep; ++k) {
            if (winding_number(ext[k], z) != 0) {
                keep = false;
                break;
            }
            for (const auto &c : ext[k]) {
                if (std::abs(c - z) < d_min) {
                    keep = false;
                    break;
                }
            }
        }
        if (keep) {
            out.push_back(z);
        }
    }
    return out;
}

// count points on each boundary curve Gamma_k.
inline cvec boundary_probe_grid(const MultiDomainConfig &config, std::size_t count = 64,
                                std::uint64_t seed = default_probe_seed)
{
    const double offset = probe_offset(seed, count);
    cvec out;
    for (const auto &spec : config.maps) {
        for (std::size_t a = 0; a < count; ++a) {
            out.push_back(evaluate_map(spec, unit(offset + 2.0 * pi * static_cast<double>(a) / static_cast<double>(count))));
        }
    }
    return out;
}

struct DecompositionResult {
    // components[i] = P_infty(Omega_i^-) h
    std::vector<RationalFn> components;
    // max |h - sum h_i| over the probe grid.
    double residual = 0.0;
    // max |h_i(z) - Cauchy integral over f_i(|w| = 1 + eps)| over probe grid and i; -1 if not run.
    double quadrature_delta = -1.0;
};

// Unique splitting h = sum h_i with h_i holomorphic off Omega_i^+ and vanishing at infinity.
// Exactly, h_i collects the principal parts of h at poles enclosed by Gamma_i.
inline DecompositionResult decompose(const MultiDomainConfig &config, const RationalFn &h, bool cross_check = true,
                                     std::size_t nodes = 512)
{
    DecompositionResult out;
    out.components.resize(config.size());
    for (const auto &t : h.terms()) {
        const int k = enclosing_region(config, t.pole);
        if (k < 0) {
            throw pole_outside_regions("decompose: pole at (" + std::to_string(t.pole.real()) + ","
                                       + std::to_string(t.pole.imag()) + ") lies in Sigma");
        }
        out.components[static_cast<std::size_t>(k)].add(t);
    }

    const auto grid = sigma_probe_grid(config);
    for (const auto &z : grid) {
        cplx sum{};
        for (const auto &c : out.components) {
            sum += c(z);
        }
        out.residual = std::max(out.residual, std::abs(h(z) - sum));
    }

    if (cross_check) {
        out.quadrature_delta = 0.0;
        const double s = 1.0 + config.ext_margin;
        for (std::size_t i = 0; i < config.size(); ++i) {
            const auto samples = sample_on_contour(h, Contour(config.maps[i], s, 1, nodes));
            for (const auto &z : grid) {
                out.quadrature_delta = std::max(out.quadrature_delta, std::abs(out.components[i](z) - cauchy_eval(samples, z)));
            }
        }
    }
    return out;
}

// Pointwise P_infty(Omega_i^-) h by the Cauchy integral over f_i(|w| = radius), counterclockwise.
template <typename Fn>
class ProjectionComponent
{
public:
    ProjectionComponent(const ConformalMapSpec &spec, const Fn &h, double radius, std::size_t nodes, double d_min)
        : m_samples(sample_on_contour(h, Contour(spec, radius, 1, nodes))), m_dmin(d_min)
    {
    }

    cplx operator()(cplx z) const
    {
        return cauchy_eval(m_samples, z, m_dmin);
    }

private:
    BoundarySamples m_samples;
    double m_dmin;
};

template <typename Fn>
ProjectionComponent<Fn> projection_component(const MultiDomainConfig &config, std::size_t i, const Fn &h,
                                             double radius = 0.0, std::size_t nodes = 512, double d_min = 0.05)
{
    const double s = radius > 0.0 ? radius : 1.0 + config.ext_margin;
    return ProjectionComponent<Fn>(config.maps.at(i), h, s, nodes, d_min);
}

// Coefficients of h o f_j on the unit circle, frequencies -M..M, constant removed.
template <typename Fn>
CoeffExtraction pullback_boundary(const MultiDomainConfig &config, std::size_t j, const Fn &h, std::size_t M,
                                  std::size_t samples = 512, double alias_threshold = 1e-12)
{
    samples = std::max(samples, next_power_of_two(4 * (M + 1)));
    auto ex = pullback_extract(h, config.maps.at(j), 1.0, samples, alias_threshold);
    ex.coeffs = ex.coeffs.truncated(M, M);
    ex.coeffs.constant = 0.0;
    return ex;
}

struct GraphCheckReport {
    std::vector<CoeffSeq> u;
    std::vector<CoeffSeq> v;
    // Gr(f) u in the monomial basis.
    std::vector<CoeffSeq> predicted;
    double residual = 0.0;
    double norm_u = 0.0;
    bool alias_warning = false;
};

namespace detail
{

// Orthonormal coordinates sqrt(pi m) a_{-m}, m = 1..M.
inline Eigen::VectorXcd minus_coords(const CoeffSeq &s, std::size_t M)
{
    Eigen::VectorXcd x(static_cast<Eigen::Index>(M));
    for (std::size_t m = 1; m <= M; ++m) {
        x(static_cast<Eigen::Index>(m - 1)) = std::sqrt(pi * static_cast<double>(m)) * s.coeff(-static_cast<int>(m));
    }
    return x;
}

inline Eigen::VectorXcd plus_coords(const CoeffSeq &s, std::size_t M)
{
    Eigen::VectorXcd x(static_cast<Eigen::Index>(M));
    for (std::size_t n = 1; n <= M; ++n) {
        x(static_cast<Eigen::Index>(n - 1)) = std::sqrt(pi * static_cast<double>(n)) * s.coeff(static_cast<int>(n));
    }
    return x;
}

} // namespace detail

// Checks that the pulled-back boundary values (u_j, v_j) of h lie on the graph v = Gr(f) u.
// Residual is |v - G u| / max(|u|, eps) in stacked orthonormal coordinates.
inline GraphCheckReport graph_check(const MultiDomainConfig &config, const RationalFn &h, std::size_t M,
                                    const GrunskyMatrix &g, std::size_t samples = 512, double eps = 1e-300)
{
    if (g.n != config.size() || g.M < M) {
        throw std::invalid_argument("graph_check: Grunsky matrix does not match the configuration");
    }
    const GrunskyMatrix gm = g.M == M ? g : g.truncated(M);
    const std::size_t n = config.size();
    GraphCheckReport rep;
    rep.u.resize(n);
    rep.v.resize(n);
    rep.predicted.resize(n);
    std::vector<Eigen::VectorXcd> uc(n), vc(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto ex = pullback_boundary(config, j, h, M, samples);
        rep.alias_warning = rep.alias_warning || ex.alias_warning;
        rep.u[j] = project_minus(ex.coeffs);
        rep.v[j] = project_plus(ex.coeffs);
        uc[j] = detail::minus_coords(rep.u[j], M);
        vc[j] = detail::plus_coords(rep.v[j], M);
    }
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        Eigen::VectorXcd gu = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(M));
        for (std::size_t i = 0; i < n; ++i) {
            gu += gm.orthonormal[j][i] * uc[i];
        }
        num += (vc[j] - gu).squaredNorm();
        den += uc[j].squaredNorm();
        rep.predicted[j].pos.resize(M);
        for (std::size_t k = 1; k <= M; ++k) {
            rep.predicted[j].pos[k - 1] = gu(static_cast<Eigen::Index>(k - 1)) / std::sqrt(pi * static_cast<double>(k));
        }
    }
    rep.norm_u = std::sqrt(den);
    rep.residual = std::sqrt(num) / std::max(rep.norm_u, eps);
    return rep;
}

// (g_1..g_n) = I_f^{-1} h, truncated at frequency -M: g_k is the negative part of h_k o f_k.
inline std::vector<CoeffSeq> inverse_faber(const MultiDomainConfig &config, const RationalFn &h, std::size_t M,
                                           std::size_t samples = 512)
{
    const auto dec = decompose(config, h, false);
    std::vector<CoeffSeq> g(config.size());
    for (std::size_t k = 0; k < config.size(); ++k) {
        if (dec.components[k].empty()) {
            g[k].neg.assign(M, cplx{});
            continue;
        }
        g[k] = project_minus(pullback_boundary(config, k, dec.components[k], M, samples).coeffs);
    }
    return g;
}

// a[k][m-1]: coefficient of Phi^k_m in the Faber series of h.
inline std::vector<cvec> faber_coefficients(const MultiDomainConfig &config, const RationalFn &h, std::size_t M,
                                            std::size_t samples = 512)
{
    std::vector<cvec> a;
    for (const auto &g : inverse_faber(config, h, M, samples)) {
        a.push_back(g.neg);
    }
    return a;
}

struct PartialSumErrors {
    // errors[M-1] = sup over the grid of |h - partial sum through degree M|.
    std::vector<double> errors;
    // exp of the least-squares slope of log(error) over the decaying range; 0 if none.
    double fitted_ratio = 0.0;
    std::size_t fit_points = 0;
};

// Fitted geometric ratio of a decaying error sequence. Entries below `floor` relative
// to the first are treated as converged and left out.
inline double fit_geometric_ratio(const std::vector<double> &errors, double floor = 1e-12, std::size_t *used = nullptr)
{
    std::vector<double> xs, ys;
    const double ref = errors.empty() ? 0.0 : errors.front();
    for (std::size_t k = 0; k < errors.size(); ++k) {
        if (!(errors[k] > floor * std::max(ref, 1e-300)) || errors[k] <= 0.0) {
            break;
        }
        xs.push_back(static_cast<double>(k + 1));
        ys.push_back(std::log(errors[k]));
    }
    if (used != nullptr) {
        *used = xs.size();
    }
    if (xs.size() < 2) {
        return 0.0;
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sx += xs[k];
        sy += ys[k];
        sxx += xs[k] * xs[k];
        sxy += xs[k] * ys[k];
    }
    return std::exp((n * sxy - sx * sy) / (n * sxx - sx * sx));
}

inline PartialSumErrors faber_partial_sum_error(const MultiDomainConfig &config, const RationalFn &h, std::size_t M_max,
                                                const cvec &grid, std::size_t samples = 512)
{
    const auto a = faber_coefficients(config, h, M_max, samples);
    std::vector<std::vector<FaberPoly>> polys;
    for (std::size_t k = 0; k < config.size(); ++k) {
        polys.push_back(faber_polynomials(config.maps[k], M_max, k));
    }
    PartialSumErrors out;
    out.errors.assign(M_max, 0.0);
    for (const auto &z : grid) {
        const cplx target = h(z);
        cplx partial{};
        for (std::size_t m = 1; m <= M_max; ++m) {
            for (std::size_t k = 0; k < config.size(); ++k) {
                const cplx c = a[k][m - 1];
                if (c != cplx{}) {
                    partial += c * polys[k][m - 1](z);
                }
            }
            out.errors[m - 1] = std::max(out.errors[m - 1], std::abs(target - partial));
        }
    }
    out.fitted_ratio = fit_geometric_ratio(out.errors, 1e-11, &out.fit_points);
    return out;
}

// Dirichlet energy of h over Sigma by Green's identity:
//   |h|^2 = -sum_i (1 / 2i) * integral over Gamma_i (ccw) of conj(h) h' dz,
// the contour at infinity contributing nothing since h(infinity) = 0. The curves are
// Gamma_i themselves (radius 1), so the identity is exact for h analytic across them.
inline double dirichlet_norm_sigma_sq(const MultiDomainConfig &config, const RationalFn &h, double radius = 1.0,
                                      std::size_t nodes = 1024)
{
    cplx acc{};
    for (const auto &spec : config.maps) {
        const auto cn = contour_nodes(Contour(spec, radius, 1, nodes));
        for (std::size_t k = 0; k < cn.points.size(); ++k) {
            acc += std::conj(h(cn.points[k])) * h.derivative(cn.points[k]) * cn.weights[k];
        }
    }
    return (-acc / (2.0 * I)).real();
}

inline double dirichlet_norm_sigma(const MultiDomainConfig &config, const RationalFn &h, double radius = 1.0,
                                   std::size_t nodes = 1024)
{
    return std::sqrt(std::max(0.0, dirichlet_norm_sigma_sq(config, h, radius, nodes)));
}

} // namespace faberkit

#endif
