#ifndef FABERKIT_GRUNSKY_HPP
#define FABERKIT_GRUNSKY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <faberkit/coeffseq.hpp>
#include <faberkit/domaincfg.hpp>
#include <faberkit/error.hpp>
#include <faberkit/faber.hpp>
#include <faberkit/quad.hpp>
#include <faberkit/series.hpp>
#include <faberkit/types.hpp>

namespace faberkit
{

// Laurent coefficients of fn(f(rho e^{i theta})) with the full usable band
// (samples / 4 - 1 frequencies on each side).
template <typename Fn>
CoeffExtraction pullback_extract(Fn &&fn, const ConformalMapSpec &spec, double rho, std::size_t samples,
                                 double alias_threshold = 1e-12)
{
    if (!is_power_of_two(samples) || samples < 16) {
        throw std::invalid_argument("pullback_extract: sample count must be a power of two >= 16");
    }
    const auto values = sample_circle([&](cplx w) { return fn(evaluate_map(spec, w)); }, rho, samples);
    const std::size_t band = samples / 4 - 1;
    return sample_to_coeffs(values, rho, band, band, alias_threshold);
}

// Extraction parameters of the definitional route.
struct GrunskyOptions {
    double radius = 1.0;
    std::size_t samples = 512;
    double alias_threshold = 1e-12;
};

struct GrunskyColumn {
    // Positive frequencies of C_{f_j} I_{f_i} z^{-m}: column m of Gr_{ji} in the monomial basis.
    CoeffSeq positive;
    // Negative frequencies, which must equal delta_{ij} z^{-m}.
    CoeffSeq negative;
    double identity_defect = 0.0;
    double alias_floor = 0.0;
    bool alias_warning = false;
};

// Column m of Gr_{ji}(f) = P_0(D^+) C^_{f_j} I_{f_i} by composing the exact
// Faber polynomial Phi^i_m with f_j and splitting the boundary Fourier series.
inline GrunskyColumn grunsky_column(const MultiDomainConfig &config, std::size_t j, std::size_t i,
                                    const FaberPoly &phi, const GrunskyOptions &opt = {})
{
    const auto ex = pullback_extract(phi, config.maps.at(j), opt.radius, opt.samples, opt.alias_threshold);
    GrunskyColumn col;
    col.positive = project_plus(ex.coeffs);
    col.negative = project_minus(ex.coeffs);
    col.alias_floor = ex.alias_floor;
    col.alias_warning = ex.alias_warning;
    CoeffSeq expected;
    if (i == j) {
        expected = CoeffSeq::monomial(-static_cast<int>(phi.degree));
    }
    col.identity_defect = max_abs_difference(col.negative, expected);
    return col;
}

inline GrunskyColumn grunsky_column(const MultiDomainConfig &config, std::size_t j, std::size_t i, std::size_t m,
                                    const GrunskyOptions &opt = {})
{
    return grunsky_column(config, j, i, faber_polynomial(config.maps.at(i), m, i), opt);
}

// Monomial-basis block b_{nm}, n, m = 1..M, of Gr_{ji} by the definitional route.
inline Eigen::MatrixXcd definitional_block(const MultiDomainConfig &config, std::size_t j, std::size_t i,
                                           std::size_t M, const GrunskyOptions &opt = {},
                                           double *identity_defect = nullptr, bool *alias_warning = nullptr)
{
    if (opt.samples < 4 * (M + 1)) {
        throw std::invalid_argument("definitional_block: too few samples for the truncation level");
    }
    const auto polys = faber_polynomials(config.maps.at(i), M, i);
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(M));
    double defect = 0.0;
    bool alias = false;
    for (std::size_t m = 1; m <= M; ++m) {
        const auto col = grunsky_column(config, j, i, polys[m - 1], opt);
        defect = std::max(defect, col.identity_defect);
        alias = alias || col.alias_warning;
        for (std::size_t n = 1; n <= M; ++n) {
            b(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(m - 1)) = col.positive.coeff(static_cast<int>(n));
        }
    }
    if (identity_defect != nullptr) {
        *identity_defect = defect;
    }
    if (alias_warning != nullptr) {
        *alias_warning = alias;
    }
    return b;
}

// Diagonal block b_{nm} = [zeta^{m-1} z^n] K(zeta, z) with the non-singular kernel
//   K = z / (zeta (zeta - z)) - f'(zeta) / (f(zeta) - f(z)) + f'(zeta) / (f(zeta) - f(0)).
// With Q(zeta, z) = (f(zeta) - f(z)) / (zeta - z) the kernel is
//   K = -d_zeta Q(zeta, z) / Q(zeta, z) + d_zeta Q(zeta, 0) / Q(zeta, 0),
// evaluated here in exact truncated bivariate series arithmetic.
inline Eigen::MatrixXcd diagonal_block_series(const ConformalMapSpec &spec, std::size_t M)
{
    bivariate_series<cplx> q(M, M);
    const auto &a = spec.coeffs();
    for (std::size_t k = 1; k <= a.size(); ++k) {
        // (zeta^k - z^k) / (zeta - z) = sum_{e=0}^{k-1} zeta^e z^{k-1-e}
        for (std::size_t e = 0; e < k; ++e) {
            const std::size_t f = k - 1 - e;
            if (e <= M && f <= M) {
                q(e, f) += a[k - 1];
            }
        }
    }
    const auto dq = q.derivative_x();
    const auto k1 = dq / q;

    // z-independent part from Q(zeta, 0) = a_1 + a_2 zeta + ...
    truncated_series<cplx> q0(M), dq0(M);
    for (std::size_t e = 0; e <= M; ++e) {
        q0[e] = q(e, 0);
        dq0[e] = dq(e, 0);
    }
    const auto k2 = dq0 / q0;

    Eigen::MatrixXcd b(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(M));
    for (std::size_t m = 1; m <= M; ++m) {
        for (std::size_t n = 1; n <= M; ++n) {
            b(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(m - 1)) = -k1(m - 1, n);
        }
        // The n = 0 coefficient of K vanishes identically; k2 only cancels it.
        (void)k2;
    }
    return b;
}

struct AreaOptions {
    std::size_t radial = 0;  // Gauss-Legendre nodes in r; 0 selects M + 8
    std::size_t angular = 0; // trapezoid nodes in theta; 0 selects max(128, 4M)
    std::size_t z_samples = 0; // points on |z| = 1 for coefficient extraction; 0 selects max(64, 4M)
};

// Off-diagonal block (i != j) from the area form over the unit disk:
//   (1 / pi) * double integral of [f_i'/(f_i(zeta) - f_j(z)) - f_i'/(f_i(zeta) - f_j(0))] * dbar(Rh)(zeta) dA
// with Rh(zeta) = conj(zeta)^m, so dbar(Rh) = m conj(zeta)^{m-1}; the moment identity
// reduces it to the zeta^{m-1} Taylor coefficient of the kernel. The result is the
// raw (uncalibrated) area value; assemble() fixes the sign against the definitional route.
inline Eigen::MatrixXcd offdiagonal_block_area(const MultiDomainConfig &config, std::size_t j, std::size_t i,
                                               std::size_t M, const AreaOptions &opt = {})
{
    if (i == j) {
        throw std::invalid_argument("offdiagonal_block_area: block must be off-diagonal");
    }
    const auto &fi = config.maps.at(i);
    const auto &fj = config.maps.at(j);
    const std::size_t nr = opt.radial ? opt.radial : M + 8;
    const std::size_t nt = opt.angular ? opt.angular : std::max<std::size_t>(128, next_power_of_two(4 * M));
    const std::size_t nz = opt.z_samples ? opt.z_samples : std::max<std::size_t>(64, next_power_of_two(4 * M + 4));
    const auto rule = disk_area_rule(nr, nt);
    const std::size_t nq = rule.points.size();

    cvec fi_val(nq), fi_der(nq), cz(nq);
    for (std::size_t q = 0; q < nq; ++q) {
        fi_val[q] = evaluate_map(fi, rule.points[q]);
        fi_der[q] = map_derivative(fi, rule.points[q]);
        cz[q] = std::conj(rule.points[q]);
    }
    const cplx fj0 = evaluate_map(fj, 0.0);

    // values(l, m-1) = area integral at z_l for column m
    Eigen::MatrixXcd values = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(nz), static_cast<Eigen::Index>(M));
    cvec power(nq);
    for (std::size_t l = 0; l < nz; ++l) {
        const cplx z = unit(2.0 * pi * static_cast<double>(l) / static_cast<double>(nz));
        const cplx fjz = evaluate_map(fj, z);
        cvec kern(nq);
        for (std::size_t q = 0; q < nq; ++q) {
            kern[q] = (fi_der[q] / (fi_val[q] - fjz) - fi_der[q] / (fi_val[q] - fj0)) * rule.weights[q];
        }
        std::fill(power.begin(), power.end(), cplx{1.0});
        for (std::size_t m = 1; m <= M; ++m) {
            cplx acc{};
            for (std::size_t q = 0; q < nq; ++q) {
                acc += kern[q] * power[q];
            }
            values(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(m - 1)) = acc * static_cast<double>(m) / pi;
            for (std::size_t q = 0; q < nq; ++q) {
                power[q] *= cz[q];
            }
        }
    }

    Eigen::MatrixXcd b(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(M));
    for (std::size_t m = 1; m <= M; ++m) {
        cvec col(nz);
        for (std::size_t l = 0; l < nz; ++l) {
            col[l] = values(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(m - 1));
        }
        const auto ex = sample_to_coeffs(col, 1.0, 0, M);
        for (std::size_t n = 1; n <= M; ++n) {
            b(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(m - 1)) = ex.coeffs.pos[n - 1];
        }
    }
    return b;
}

enum class MethodPolicy {
    // Every block from the composition P_0 C^_{f_j} I_{f_i}.
    definitional,
    // Kernel series on the diagonal, area form off the diagonal.
    alternate,
    // Definitional values, verified block by block against the alternate route.
    cross_checked,
};

// Truncated block matrix of the generalized Grunsky operator.
struct GrunskyMatrix {
    std::size_t n = 0;
    std::size_t M = 0;
    // monomial[j][i](n-1, m-1) = b_{nm} of Gr_{ji}.
    std::vector<std::vector<Eigen::MatrixXcd>> monomial;
    // orthonormal[j][i](n-1, m-1) = sqrt(n / m) b_{nm}.
    std::vector<std::vector<Eigen::MatrixXcd>> orthonormal;
    std::vector<std::vector<std::string>> method;
    // Entrywise max difference between the two routes (cross_checked only, else -1).
    std::vector<std::vector<double>> cross_method_delta;
    // Fitted scalar relating the alternate route to the definitional one.
    std::vector<std::vector<cplx>> calibration;
    // Max deviation of the negative part of C^_{f_j} I_{f_i} z^{-m} from delta_{ij} z^{-m}.
    double identity_defect = 0.0;
    bool alias_warning = false;

    // nM x nM matrix; row block j, column block i.
    Eigen::MatrixXcd assembled() const
    {
        const auto m = static_cast<Eigen::Index>(M);
        Eigen::MatrixXcd out(static_cast<Eigen::Index>(n) * m, static_cast<Eigen::Index>(n) * m);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                out.block(static_cast<Eigen::Index>(j) * m, static_cast<Eigen::Index>(i) * m, m, m) = orthonormal[j][i];
            }
        }
        return out;
    }

    // Leading M' x M' part of every block.
    GrunskyMatrix truncated(std::size_t m_new) const
    {
        if (m_new > M) {
            throw std::invalid_argument("GrunskyMatrix::truncated: cannot enlarge the truncation");
        }
        GrunskyMatrix out = *this;
        out.M = m_new;
        const auto k = static_cast<Eigen::Index>(m_new);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                out.monomial[j][i] = monomial[j][i].topLeftCorner(k, k);
                out.orthonormal[j][i] = orthonormal[j][i].topLeftCorner(k, k);
            }
        }
        return out;
    }
};

inline Eigen::MatrixXcd orthonormalize_block(const Eigen::MatrixXcd &b)
{
    Eigen::MatrixXcd g = b;
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
        for (Eigen::Index c = 0; c < b.cols(); ++c) {
            g(r, c) *= std::sqrt(static_cast<double>(r + 1) / static_cast<double>(c + 1));
        }
    }
    return g;
}

namespace detail
{

// Least-squares scalar s with s * alt ~ ref on the first column.
inline cplx calibration_factor(const Eigen::MatrixXcd &ref, const Eigen::MatrixXcd &alt, cplx nominal)
{
    const cplx den = alt.col(0).squaredNorm();
    if (std::abs(den) < 1e-28 || ref.col(0).norm() < 1e-14) {
        return nominal;
    }
    return alt.col(0).dot(ref.col(0)) / den;
}

} // namespace detail

inline constexpr double method_disagreement_tolerance = 1e-6;

// Sign relating the raw area value to the definitional block. The composition route
// carries the minus sign of the exterior Cauchy projection; the area form does not.
inline constexpr double area_nominal_sign = -1.0;

inline GrunskyMatrix assemble(const MultiDomainConfig &config, std::size_t M,
                              MethodPolicy policy = MethodPolicy::definitional, const GrunskyOptions &opt = {},
                              const AreaOptions &area = {})
{
    if (M == 0) {
        throw std::invalid_argument("assemble: truncation must be at least 1");
    }
    GrunskyOptions gopt = opt;
    gopt.samples = std::max(gopt.samples, next_power_of_two(4 * (M + 1)));

    const std::size_t n = config.size();
    GrunskyMatrix g;
    g.n = n;
    g.M = M;
    g.monomial.assign(n, std::vector<Eigen::MatrixXcd>(n));
    g.orthonormal.assign(n, std::vector<Eigen::MatrixXcd>(n));
    g.method.assign(n, std::vector<std::string>(n));
    g.cross_method_delta.assign(n, std::vector<double>(n, -1.0));
    g.calibration.assign(n, std::vector<cplx>(n, cplx{1.0}));

    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            Eigen::MatrixXcd def, alt;
            if (policy != MethodPolicy::alternate) {
                double defect = 0.0;
                bool alias = false;
                def = definitional_block(config, j, i, M, gopt, &defect, &alias);
                g.identity_defect = std::max(g.identity_defect, defect);
                g.alias_warning = g.alias_warning || alias;
            }
            if (policy != MethodPolicy::definitional) {
                const cplx nominal = i == j ? cplx{1.0} : cplx{area_nominal_sign};
                alt = i == j ? diagonal_block_series(config.maps[i], M) : offdiagonal_block_area(config, j, i, M, area);
                cplx factor = nominal;
                if (policy == MethodPolicy::cross_checked) {
                    factor = detail::calibration_factor(def, alt, nominal);
                    if (std::abs(factor - nominal) > method_disagreement_tolerance) {
                        throw method_disagreement("assemble: calibration of block (" + std::to_string(j + 1) + ","
                                                  + std::to_string(i + 1) + ") deviates from its nominal sign");
                    }
                }
                alt *= factor;
                g.calibration[j][i] = factor;
            }
            if (policy == MethodPolicy::cross_checked) {
                const double delta = (def - alt).cwiseAbs().maxCoeff();
                g.cross_method_delta[j][i] = delta;
                if (delta > method_disagreement_tolerance) {
                    throw method_disagreement("assemble: block (" + std::to_string(j + 1) + "," + std::to_string(i + 1)
                                              + ") routes disagree by " + std::to_string(delta));
                }
            }
            if (policy == MethodPolicy::alternate) {
                g.monomial[j][i] = alt;
                g.method[j][i] = i == j ? "kernel-series" : "area-oracle";
            } else {
                g.monomial[j][i] = def;
                g.method[j][i] = "definitional";
            }
            g.orthonormal[j][i] = orthonormalize_block(g.monomial[j][i]);
        }
    }
    return g;
}

// Largest singular value of the assembled truncated matrix.
inline double operator_norm(const GrunskyMatrix &g)
{
    if (g.n == 0 || g.M == 0) {
        return 0.0;
    }
    const Eigen::MatrixXcd a = g.assembled();
    if (a.cwiseAbs().maxCoeff() == 0.0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    return svd.singularValues()(0);
}

// Column norms sqrt(sum_n n |b_{nm}|^2 / m) of every block, i.e. the norm of
// Gr_{ji} e_m^- in the orthonormal basis.
inline std::vector<std::vector<std::vector<double>>> block_column_norms(const GrunskyMatrix &g)
{
    std::vector<std::vector<std::vector<double>>> out(g.n, std::vector<std::vector<double>>(g.n));
    for (std::size_t j = 0; j < g.n; ++j) {
        for (std::size_t i = 0; i < g.n; ++i) {
            for (Eigen::Index c = 0; c < g.orthonormal[j][i].cols(); ++c) {
                out[j][i].push_back(g.orthonormal[j][i].col(c).norm());
            }
        }
    }
    return out;
}

// max |G - G^T| of the assembled orthonormal matrix (diagnostic only).
inline double symmetry_defect(const GrunskyMatrix &g)
{
    const Eigen::MatrixXcd a = g.assembled();
    return (a - a.transpose()).cwiseAbs().maxCoeff();
}

// Gr_{ji} H for a finite H, composed in one pass: positive part of (I_{f_i} H) o f_j.
// Returns every positive frequency in the extraction band.
inline CoeffExtraction apply_grunsky_block(const MultiDomainConfig &config, std::size_t j, std::size_t i,
                                           const CoeffSeq &h, const GrunskyOptions &opt = {})
{
    const auto image = apply_faber(config, i, h);
    auto ex = pullback_extract(image, config.maps.at(j), opt.radius, opt.samples, opt.alias_threshold);
    ex.coeffs = project_plus(ex.coeffs);
    return ex;
}

} // namespace faberkit

#endif
