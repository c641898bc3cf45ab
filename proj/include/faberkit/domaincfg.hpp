#ifndef FABERKIT_DOMAINCFG_HPP
#define FABERKIT_DOMAINCFG_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <faberkit/error.hpp>
#include <faberkit/series.hpp>
#include <faberkit/types.hpp>

namespace faberkit
{

// Polynomial conformal map f(w) = p + a_1 w + ... + a_d w^d of the unit disk
// onto the bounded side of one boundary curve.
class ConformalMapSpec
{
public:
    ConformalMapSpec(cplx center, cvec coeffs) : m_center(center), m_coeffs(std::move(coeffs))
    {
        if (m_coeffs.empty()) {
            throw std::invalid_argument("conformal map needs at least the linear coefficient");
        }
        if (m_coeffs.front() == cplx{}) {
            throw std::invalid_argument("conformal map has a_1 = 0");
        }
        for (const auto &a : m_coeffs) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
                throw std::invalid_argument("conformal map coefficient is not finite");
            }
        }
    }

    static ConformalMapSpec affine(cplx center, cplx scale)
    {
        return ConformalMapSpec(center, {scale});
    }

    cplx center() const
    {
        return m_center;
    }
    // a_1..a_d, index 0 holds a_1.
    const cvec &coeffs() const
    {
        return m_coeffs;
    }
    std::size_t degree() const
    {
        return m_coeffs.size();
    }
    cplx leading() const
    {
        return m_coeffs.front();
    }
    bool is_affine() const
    {
        return std::all_of(m_coeffs.begin() + 1, m_coeffs.end(), [](const cplx &a) { return a == cplx{}; });
    }

    // Same map translated by t in the target plane.
    ConformalMapSpec translated(cplx t) const
    {
        return ConformalMapSpec(m_center + t, m_coeffs);
    }

    // f(w) - p as a power series in w truncated at `order`.
    truncated_series<cplx> displacement_series(std::size_t order) const
    {
        truncated_series<cplx> s(order);
        for (std::size_t k = 0; k < m_coeffs.size() && k + 1 <= order; ++k) {
            s[k + 1] = m_coeffs[k];
        }
        return s;
    }

    // f'(w) as a power series truncated at `order`.
    truncated_series<cplx> derivative_series(std::size_t order) const
    {
        truncated_series<cplx> s(order);
        for (std::size_t k = 0; k < m_coeffs.size() && k <= order; ++k) {
            s[k] = m_coeffs[k] * static_cast<double>(k + 1);
        }
        return s;
    }

private:
    cplx m_center;
    cvec m_coeffs;
};

inline cplx evaluate_map(const ConformalMapSpec &spec, cplx w)
{
    const auto &a = spec.coeffs();
    cplx acc{};
    for (std::size_t k = a.size(); k-- > 0;) {
        acc = (acc + a[k]) * w;
    }
    return spec.center() + acc;
}

inline cplx map_derivative(const ConformalMapSpec &spec, cplx w)
{
    const auto &a = spec.coeffs();
    cplx acc{};
    for (std::size_t k = a.size(); k-- > 0;) {
        acc = acc * w + a[k] * static_cast<double>(k + 1);
    }
    return acc;
}

// Preimage of zeta under f by damped Newton seeded at the affine inverse.
inline cplx invert_map(const ConformalMapSpec &spec, cplx zeta, double tol = 1e-14, double ext_margin = 0.05,
                       int max_iter = 200)
{
    cplx w = (zeta - spec.center()) / spec.leading();
    double res = std::abs(evaluate_map(spec, w) - zeta);
    const double scale = std::max(1.0, std::abs(zeta));
    for (int it = 0; it < max_iter && res > tol * scale; ++it) {
        const cplx d = map_derivative(spec, w);
        if (d == cplx{}) {
            throw non_convergence("invert_map: critical point hit during Newton iteration");
        }
        const cplx step = (evaluate_map(spec, w) - zeta) / d;
        double lambda = 1.0;
        cplx trial = w - step;
        double trial_res = std::abs(evaluate_map(spec, trial) - zeta);
        while (trial_res >= res && lambda > 1e-10) {
            lambda *= 0.5;
            trial = w - lambda * step;
            trial_res = std::abs(evaluate_map(spec, trial) - zeta);
        }
        if (trial_res >= res) {
            // Stalled at rounding level; accept the current iterate if it is already good.
            break;
        }
        w = trial;
        res = trial_res;
    }
    if (res > std::max(tol, 1e-12) * scale) {
        throw non_convergence("invert_map: Newton iteration did not reach tolerance");
    }
    if (std::abs(w) > 1.0 + ext_margin) {
        throw outside_range("invert_map: preimage lies outside the extended disk");
    }
    return w;
}

// f(rho e^{2 pi i k / count}), k = 0..count-1.
inline cvec sample_curve(const ConformalMapSpec &spec, double rho, std::size_t count)
{
    cvec pts(count);
    for (std::size_t k = 0; k < count; ++k) {
        pts[k] = evaluate_map(spec, rho * unit(2.0 * pi * static_cast<double>(k) / static_cast<double>(count)));
    }
    return pts;
}

// Winding number of the closed polygon around z.
inline int winding_number(const cvec &polygon, cplx z)
{
    double total = 0.0;
    const std::size_t n = polygon.size();
    for (std::size_t k = 0; k < n; ++k) {
        const cplx a = polygon[k] - z;
        const cplx b = polygon[(k + 1) % n] - z;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * pi)));
}

namespace detail
{

inline double cross(cplx a, cplx b)
{
    return a.real() * b.imag() - a.imag() * b.real();
}

inline bool segments_cross(cplx p1, cplx p2, cplx q1, cplx q2)
{
    const double d1 = cross(p2 - p1, q1 - p1);
    const double d2 = cross(p2 - p1, q2 - p1);
    const double d3 = cross(q2 - q1, p1 - q1);
    const double d4 = cross(q2 - q1, p2 - q1);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

// Non-adjacent edge intersection test, O(n^2) with bounding-box rejection.
inline bool polygon_is_simple(const cvec &poly)
{
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const cplx a = poly[i], b = poly[(i + 1) % n];
        const double ax0 = std::min(a.real(), b.real()), ax1 = std::max(a.real(), b.real());
        const double ay0 = std::min(a.imag(), b.imag()), ay1 = std::max(a.imag(), b.imag());
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) {
                continue;
            }
            const cplx c = poly[j], d = poly[(j + 1) % n];
            if (std::max(c.real(), d.real()) < ax0 || std::min(c.real(), d.real()) > ax1
                || std::max(c.imag(), d.imag()) < ay0 || std::min(c.imag(), d.imag()) > ay1) {
                continue;
            }
            if (segments_cross(a, b, c, d)) {
                return false;
            }
        }
    }
    return true;
}

inline bool polygons_intersect(const cvec &p, const cvec &q)
{
    const std::size_t n = p.size(), m = q.size();
    for (std::size_t i = 0; i < n; ++i) {
        const cplx a = p[i], b = p[(i + 1) % n];
        const double ax0 = std::min(a.real(), b.real()), ax1 = std::max(a.real(), b.real());
        const double ay0 = std::min(a.imag(), b.imag()), ay1 = std::max(a.imag(), b.imag());
        for (std::size_t j = 0; j < m; ++j) {
            const cplx c = q[j], d = q[(j + 1) % m];
            if (std::max(c.real(), d.real()) < ax0 || std::min(c.real(), d.real()) > ax1
                || std::max(c.imag(), d.imag()) < ay0 || std::min(c.imag(), d.imag()) > ay1) {
                continue;
            }
            if (segments_cross(a, b, c, d)) {
                return true;
            }
        }
    }
    return false;
}

inline double point_set_distance(const cvec &a, const cvec &b)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto &x : a) {
        for (const auto &y : b) {
            const double dx = x.real() - y.real(), dy = x.imag() - y.imag();
            best = std::min(best, dx * dx + dy * dy);
        }
    }
    return std::sqrt(best);
}

} // namespace detail

// The n-tuple of maps; Sigma is the common exterior of the curves f_k(|w| = 1).
struct MultiDomainConfig {
    std::vector<ConformalMapSpec> maps;
    double ext_margin = 0.05;
    double separation = 1e-3;

    std::size_t size() const
    {
        return maps.size();
    }

    // Every map translated by t.
    MultiDomainConfig translated(cplx t) const
    {
        MultiDomainConfig out{{}, ext_margin, separation};
        for (const auto &m : maps) {
            out.maps.push_back(m.translated(t));
        }
        return out;
    }
};

struct MapStatus {
    // Number of zeros of f' inside |w| < 1 + ext_margin (argument principle).
    int critical_points = 0;
    // Minimum of |f'| over a polar sample grid of the extended disk.
    double min_abs_derivative = 0.0;
    bool boundary_simple = false;
    bool extended_boundary_simple = false;
    bool ok = false;
};

struct ValidationReport {
    std::vector<MapStatus> maps;
    // Pairwise minimum distance between the boundary curves f_i(|w| = 1).
    std::vector<std::vector<double>> curve_distance;
    // Same for the extended curves f_i(|w| = 1 + ext_margin); compared with `separation`.
    std::vector<std::vector<double>> extended_distance;
    // containment[i][j]: center p_j lies inside the curve of map i (i != j).
    std::vector<std::vector<bool>> containment;
    std::vector<std::string> failures;
    bool pass = false;

    double min_curve_distance() const
    {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < curve_distance.size(); ++i) {
            for (std::size_t j = i + 1; j < curve_distance.size(); ++j) {
                best = std::min(best, curve_distance[i][j]);
            }
        }
        return best;
    }
};

inline ValidationReport validate_config(const MultiDomainConfig &config, std::size_t boundary_samples = 4096)
{
    ValidationReport rep;
    const std::size_t n = config.size();
    if (n == 0) {
        rep.failures.push_back("configuration has no maps");
        return rep;
    }
    if (!(config.ext_margin > 0.0) || !(config.separation > 0.0)) {
        rep.failures.push_back("ext_margin and separation must be positive");
        return rep;
    }
    const double rho_ext = 1.0 + config.ext_margin;

    std::vector<cvec> curves, ext_curves;
    for (std::size_t k = 0; k < n; ++k) {
        const auto &spec = config.maps[k];
        MapStatus st;

        const cvec dcurve = [&] {
            cvec d(boundary_samples);
            for (std::size_t s = 0; s < boundary_samples; ++s) {
                d[s] = map_derivative(spec, rho_ext * unit(2.0 * pi * static_cast<double>(s) / static_cast<double>(boundary_samples)));
            }
            return d;
        }();
        st.critical_points = winding_number(dcurve, 0.0);

        double minder = std::numeric_limits<double>::infinity();
        const std::size_t nr = 64, nt = 256;
        for (std::size_t a = 0; a <= nr; ++a) {
            const double r = rho_ext * static_cast<double>(a) / static_cast<double>(nr);
            for (std::size_t b = 0; b < nt; ++b) {
                minder = std::min(minder, std::abs(map_derivative(spec, r * unit(2.0 * pi * static_cast<double>(b) / static_cast<double>(nt)))));
            }
        }
        st.min_abs_derivative = minder;

        curves.push_back(sample_curve(spec, 1.0, boundary_samples));
        ext_curves.push_back(sample_curve(spec, rho_ext, boundary_samples));
        st.boundary_simple = detail::polygon_is_simple(curves.back());
        st.extended_boundary_simple = detail::polygon_is_simple(ext_curves.back());

        const double der_floor = 1e-12 * std::abs(spec.leading());
        st.ok = st.critical_points == 0 && minder > der_floor && st.boundary_simple && st.extended_boundary_simple;
        if (st.critical_points != 0 || minder <= der_floor) {
            rep.failures.push_back("map " + std::to_string(k) + ": f' vanishes in the extended disk");
        }
        if (!st.boundary_simple || !st.extended_boundary_simple) {
            rep.failures.push_back("map " + std::to_string(k) + ": boundary curve self-intersects");
        }
        rep.maps.push_back(st);
    }

    rep.curve_distance.assign(n, std::vector<double>(n, 0.0));
    rep.extended_distance.assign(n, std::vector<double>(n, 0.0));
    rep.containment.assign(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            if (j > i) {
                const double d = detail::point_set_distance(curves[i], curves[j]);
                const double de = detail::point_set_distance(ext_curves[i], ext_curves[j]);
                rep.curve_distance[i][j] = rep.curve_distance[j][i] = d;
                rep.extended_distance[i][j] = rep.extended_distance[j][i] = de;
                const bool crossing = de < config.separation || detail::polygons_intersect(ext_curves[i], ext_curves[j]);
                if (crossing) {
                    rep.failures.push_back("curves " + std::to_string(i) + " and " + std::to_string(j)
                                           + " are closer than the separation bound or intersect");
                }
            }
            rep.containment[i][j] = winding_number(curves[i], config.maps[j].center()) != 0;
            if (rep.containment[i][j]) {
                rep.failures.push_back("center of map " + std::to_string(j) + " lies inside curve " + std::to_string(i));
            }
        }
    }
    rep.pass = rep.failures.empty();
    return rep;
}

// Index of the boundary curve enclosing z, or -1 when z lies in Sigma.
inline int enclosing_region(const MultiDomainConfig &config, cplx z, std::size_t samples = 2048)
{
    for (std::size_t k = 0; k < config.size(); ++k) {
        if (winding_number(sample_curve(config.maps[k], 1.0, samples), z) != 0) {
            return static_cast<int>(k);
        }
    }
    return -1;
}

} // namespace faberkit

#endif
