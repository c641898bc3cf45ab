#pragma once

// Reference computations that share no code with the library routes they check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle
{

using cplx = std::complex<double>;
inline constexpr double pi = 3.14159265358979323846;

// p + sum a[k-1] w^k
inline cplx polynomial(cplx p, const std::vector<cplx> &a, cplx w)
{
    cplx acc{};
    for (std::size_t k = a.size(); k-- > 0;) {
        acc = (acc + a[k]) * w;
    }
    return p + acc;
}

inline cplx polynomial_derivative(const std::vector<cplx> &a, cplx w)
{
    cplx acc{};
    for (std::size_t k = a.size(); k-- > 0;) {
        acc = acc * w + static_cast<double>(k + 1) * a[k];
    }
    return acc;
}

// Root of a w^2 + b w + c = 0 of smaller modulus.
inline cplx small_quadratic_root(cplx a, cplx b, cplx c)
{
    const cplx d = std::sqrt(b * b - 4.0 * a * c);
    const cplx q = -0.5 * (b + (std::real(std::conj(b) * d) >= 0.0 ? d : -d));
    // roots q / a and c / q
    const cplx r1 = q / a, r2 = c / q;
    return std::abs(r1) < std::abs(r2) ? r1 : r2;
}

inline double binomial(int n, int k)
{
    double r = 1.0;
    for (int j = 1; j <= k; ++j) {
        r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
    }
    return r;
}

// Monomial Grunsky entry b_{nm} of block (j, i) for affine maps f_i = p_i + r_i w, f_j = p_j + r_j w:
// column m is the Taylor series of r_i^m / (p_j - p_i + r_j z)^m.
inline cplx affine_grunsky(cplx pi_, cplx ri, cplx pj, cplx rj, int n, int m)
{
    const cplx d = pj - pi_;
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    return std::pow(ri / d, m) * sign * binomial(m + n - 1, n) * std::pow(rj / d, n);
}

// Taylor coefficient [z^n] of 1 / (z - a), n >= 0.
inline cplx geometric(cplx a, int n)
{
    return -std::pow(a, -n - 1);
}

// Boundary curves given as parametrized closed polynomial images of the unit circle.
struct Curve {
    cplx center;
    std::vector<cplx> coeffs;
    cplx at(double t) const
    {
        return polynomial(center, coeffs, std::polar(1.0, t));
    }
    cplx tangent(double t) const
    {
        const cplx w = std::polar(1.0, t);
        return polynomial_derivative(coeffs, w) * cplx(0.0, 1.0) * w;
    }
};

namespace detail
{

template <typename F>
double bisect(F &&f, double a, double b)
{
    double fa = f(a);
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        const double c = 0.5 * (a + b);
        const double fc = f(c);
        if ((fc < 0.0) == (fa < 0.0)) {
            a = c;
            fa = fc;
        } else {
            b = c;
        }
    }
    return 0.5 * (a + b);
}

// Zeros of a 2 pi periodic function by sign changes on a fine grid.
template <typename F>
std::vector<double> periodic_roots(F &&f, std::size_t samples)
{
    std::vector<double> roots;
    const double h = 2.0 * pi / static_cast<double>(samples);
    double prev = f(0.0);
    for (std::size_t k = 1; k <= samples; ++k) {
        const double t = h * static_cast<double>(k);
        const double cur = f(t);
        if ((prev < 0.0) != (cur < 0.0)) {
            roots.push_back(bisect(f, t - h, t));
        }
        prev = cur;
    }
    return roots;
}

// Zeros of f found between consecutive zeros of df, so a nearly double root
// is still bracketed as long as the extrema of f are well separated.
template <typename F, typename DF>
std::vector<double> monotone_roots(F &&f, DF &&df, std::size_t samples)
{
    auto ext = periodic_roots(df, samples);
    if (ext.empty()) {
        return periodic_roots(f, samples);
    }
    std::vector<double> roots;
    for (std::size_t k = 0; k < ext.size(); ++k) {
        const double a = ext[k];
        const double b = k + 1 < ext.size() ? ext[k + 1] : ext[0] + 2.0 * pi;
        if ((f(a) < 0.0) != (f(b) < 0.0)) {
            roots.push_back(bisect(f, a, b));
        }
    }
    return roots;
}

inline void gauss_legendre(std::size_t n, std::vector<double> &x, std::vector<double> &w)
{
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double z = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
}

} // namespace detail

// Area integral of |dh/dz|^2 over the part of the plane outside every curve, by
//   (a) rays from `origin` (a point outside every curve) up to the circle |z| = R0,
//       splitting each ray at its curve crossings, with breakpoints in angle at the
//       tangent directions and a cosine substitution absorbing their square-root behavior;
//   (b) the exterior |z| > R0 through u = 1 / z, where the integrand |d/du h(1/u)|^2 is smooth.
// Nothing here uses contour integrals or Fourier coefficients.
inline double sigma_energy_area(const std::vector<Curve> &curves, const std::function<cplx(cplx)> &dh, cplx origin,
                                double R0, std::size_t nodes = 48)
{
    std::vector<double> gx, gw;
    detail::gauss_legendre(nodes, gx, gw);

    // Angular breakpoints: directions tangent to some curve.
    std::vector<double> breaks;
    for (const auto &c : curves) {
        const auto g = [&](double t) {
            const cplx rel = c.at(t) - origin;
            return std::imag(c.tangent(t) * std::conj(rel));
        };
        for (double t : detail::periodic_roots(g, 4096)) {
            double a = std::arg(c.at(t) - origin);
            breaks.push_back(a < 0.0 ? a + 2.0 * pi : a);
        }
    }
    breaks.push_back(0.0);
    breaks.push_back(2.0 * pi);
    std::sort(breaks.begin(), breaks.end());

    const auto ray_integral = [&](double theta) {
        const cplx u = std::polar(1.0, theta);
        std::vector<double> cross;
        for (const auto &c : curves) {
            const auto g = [&](double t) { return std::imag(std::conj(u) * (c.at(t) - origin)); };
            const auto dg = [&](double t) { return std::imag(std::conj(u) * c.tangent(t)); };
            for (double t : detail::monotone_roots(g, dg, 2048)) {
                const double r = std::real(std::conj(u) * (c.at(t) - origin));
                if (r > 0.0) {
                    cross.push_back(r);
                }
            }
        }
        // exit through |origin + r u| = R0
        const double b = std::real(std::conj(u) * origin);
        const double rexit = -b + std::sqrt(b * b + R0 * R0 - std::norm(origin));
        std::sort(cross.begin(), cross.end());
        std::vector<double> pts{0.0};
        for (double r : cross) {
            if (r < rexit) {
                pts.push_back(r);
            }
        }
        pts.push_back(rexit);
        double acc = 0.0;
        for (std::size_t s = 0; s + 1 < pts.size(); s += 2) {
            // geometric pieces follow the algebraic decay out to R0
            for (double a = pts[s]; a < pts[s + 1];) {
                const double e = std::min(pts[s + 1], a + std::max(0.5, a));
                for (std::size_t q = 0; q < nodes; ++q) {
                    const double r = a + 0.5 * (e - a) * (gx[q] + 1.0);
                    acc += 0.5 * (e - a) * gw[q] * std::norm(dh(origin + r * u)) * r;
                }
                a = e;
            }
        }
        return acc;
    };

    double inner = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
        const double a = breaks[k], b = breaks[k + 1];
        if (b - a < 1e-14) {
            continue;
        }
        for (std::size_t q = 0; q < nodes; ++q) {
            const double s = 0.5 * (gx[q] + 1.0);
            const double theta = a + (b - a) * 0.5 * (1.0 - std::cos(pi * s));
            const double jac = (b - a) * 0.5 * pi * std::sin(pi * s);
            inner += 0.5 * gw[q] * jac * ray_integral(theta);
        }
    }

    // |z| > R0: |h'(z)|^2 dA_z = |h'(1/u) / u^2|^2 dA_u over |u| < 1 / R0.
    double outer = 0.0;
    const double rho = 1.0 / R0;
    const std::size_t nt = 256;
    for (std::size_t q = 0; q < nodes; ++q) {
        const double r = 0.5 * rho * (gx[q] + 1.0);
        for (std::size_t k = 0; k < nt; ++k) {
            const cplx u = std::polar(r, 2.0 * pi * static_cast<double>(k) / static_cast<double>(nt));
            outer += 0.5 * rho * gw[q] * r * (2.0 * pi / nt) * std::norm(dh(1.0 / u) / (u * u));
        }
    }
    return inner + outer;
}

} // namespace oracle
