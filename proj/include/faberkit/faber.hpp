#ifndef FABERKIT_FABER_HPP
#define FABERKIT_FABER_HPP

#include <cmath>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <faberkit/coeffseq.hpp>
#include <faberkit/domaincfg.hpp>
#include <faberkit/error.hpp>
#include <faberkit/quad.hpp>
#include <faberkit/series.hpp>
#include <faberkit/types.hpp>

namespace faberkit
{

// Principal part sum_j coeffs[j-1] / (z - pole)^j.
struct PoleTerm {
    cplx pole;
    cvec coeffs;
};

// Rational function vanishing at infinity, stored as a sum of principal parts.
class RationalFn
{
public:
    RationalFn() = default;

    // c / (z - pole)^order
    static RationalFn simple(cplx pole, std::size_t order, cplx c)
    {
        RationalFn r;
        r.add(pole, order, c);
        return r;
    }

    const std::vector<PoleTerm> &terms() const
    {
        return m_terms;
    }

    bool empty() const
    {
        return m_terms.empty();
    }

    // Adds c / (z - pole)^order, merging with an existing term at the same pole.
    void add(cplx pole, std::size_t order, cplx c)
    {
        if (order == 0) {
            throw std::invalid_argument("RationalFn: pole order must be at least 1");
        }
        auto &t = term_at(pole);
        if (t.coeffs.size() < order) {
            t.coeffs.resize(order);
        }
        t.coeffs[order - 1] += c;
    }

    void add(const PoleTerm &pt)
    {
        for (std::size_t j = 0; j < pt.coeffs.size(); ++j) {
            if (pt.coeffs[j] != cplx{}) {
                add(pt.pole, j + 1, pt.coeffs[j]);
            }
        }
    }

    RationalFn &operator+=(const RationalFn &o)
    {
        for (const auto &t : o.m_terms) {
            add(t);
        }
        return *this;
    }

    RationalFn &operator*=(cplx s)
    {
        for (auto &t : m_terms) {
            for (auto &c : t.coeffs) {
                c *= s;
            }
        }
        return *this;
    }

    friend RationalFn operator+(RationalFn a, const RationalFn &b)
    {
        return a += b;
    }
    friend RationalFn operator*(RationalFn a, cplx s)
    {
        return a *= s;
    }

    cplx operator()(cplx z) const
    {
        cplx acc{};
        for (const auto &t : m_terms) {
            const cplx u = 1.0 / (z - t.pole);
            cplx p{};
            for (std::size_t j = t.coeffs.size(); j-- > 0;) {
                p = (p + t.coeffs[j]) * u;
            }
            acc += p;
        }
        return acc;
    }

    // h'(z)
    cplx derivative(cplx z) const
    {
        cplx acc{};
        for (const auto &t : m_terms) {
            const cplx u = 1.0 / (z - t.pole);
            // d/dz u^j = -j u^{j+1}
            cplx p{};
            for (std::size_t j = t.coeffs.size(); j-- > 0;) {
                p = (p - static_cast<double>(j + 1) * t.coeffs[j]) * u;
            }
            acc += p * u;
        }
        return acc;
    }

    RationalFn translated(cplx shift) const
    {
        RationalFn out = *this;
        for (auto &t : out.m_terms) {
            t.pole += shift;
        }
        return out;
    }

private:
    PoleTerm &term_at(cplx pole)
    {
        for (auto &t : m_terms) {
            if (t.pole == pole) {
                return t;
            }
        }
        m_terms.push_back({pole, {}});
        return m_terms.back();
    }

    std::vector<PoleTerm> m_terms;
};

// m-th Faber polynomial of one map: a polynomial of degree m in 1/(z - p).
struct FaberPoly {
    cplx center;
    // coeffs[k-1] multiplies (z - center)^{-k}, k = 1..degree.
    cvec coeffs;
    std::size_t degree = 0;
    std::size_t map_index = 0;

    cplx operator()(cplx z) const
    {
        const cplx u = 1.0 / (z - center);
        cplx p{};
        for (std::size_t k = coeffs.size(); k-- > 0;) {
            p = (p + coeffs[k]) * u;
        }
        return p;
    }

    RationalFn to_rational() const
    {
        RationalFn r;
        r.add(PoleTerm{center, coeffs});
        return r;
    }
};

// Faber polynomials Phi_1..Phi_max_m of one map. The coefficient of
// (z - p)^{-k} in Phi_m is [w^{m-1}] (f(w) - p)^{k-1} f'(w).
inline std::vector<FaberPoly> faber_polynomials(const ConformalMapSpec &spec, std::size_t max_m,
                                                std::size_t map_index = 0)
{
    std::vector<FaberPoly> out(max_m);
    if (max_m == 0) {
        return out;
    }
    const std::size_t order = max_m - 1;
    const auto disp = spec.displacement_series(order);
    auto t = spec.derivative_series(order);
    for (std::size_t m = 1; m <= max_m; ++m) {
        out[m - 1] = FaberPoly{spec.center(), cvec(m), m, map_index};
    }
    for (std::size_t k = 1; k <= max_m; ++k) {
        // t = (f - p)^{k-1} f'
        for (std::size_t m = k; m <= max_m; ++m) {
            out[m - 1].coeffs[k - 1] = t.coeff(m - 1);
        }
        if (k < max_m) {
            t = t * disp;
        }
    }
    return out;
}

inline FaberPoly faber_polynomial(const ConformalMapSpec &spec, std::size_t m, std::size_t map_index = 0)
{
    if (m == 0) {
        throw std::invalid_argument("faber_polynomial: degree must be at least 1");
    }
    return faber_polynomials(spec, m, map_index).back();
}

// Phi_m(z) by direct quadrature of
//   -(1 / 2 pi i) * integral over f(|w| = r) of f^{-1}(zeta)^{-m} / (zeta - z) d zeta
// pulled back to the parameter circle, where it reads
//   -(1 / 2 pi i) * integral over |w| = r of w^{-m} f'(w) / (f(w) - z) dw.
inline cplx faber_oracle(const ConformalMapSpec &spec, std::size_t m, cplx z, double r = 0.9, std::size_t nodes = 256,
                         double d_min = 0.05)
{
    const Contour c(spec, r, 1, nodes);
    const auto pts = contour_nodes(c);
    double dist = std::numeric_limits<double>::infinity();
    for (const auto &p : pts.points) {
        dist = std::min(dist, std::abs(p - z));
    }
    if (dist < d_min) {
        throw too_close_to_contour("faber_oracle: evaluation point too close to the contour");
    }
    if (winding_number(pts.points, z) != 0) {
        throw outside_range("faber_oracle: evaluation point is enclosed by the contour");
    }
    const double h = 2.0 * pi / static_cast<double>(nodes);
    cplx acc{};
    for (std::size_t k = 0; k < nodes; ++k) {
        const cplx w = r * unit(h * static_cast<double>(k));
        acc += std::pow(w, -static_cast<int>(m)) * map_derivative(spec, w) / (evaluate_map(spec, w) - z) * I * w * h;
    }
    return -acc / (2.0 * pi * I);
}

// I_{f_k} applied to a finitely supported sum_m a_{-m} z^{-m}: sum_m a_{-m} Phi^k_m.
// Positive frequencies and the constant of H are ignored.
inline RationalFn apply_faber(const MultiDomainConfig &config, std::size_t k, const CoeffSeq &h)
{
    RationalFn out;
    std::size_t support = h.neg.size();
    while (support > 0 && h.neg[support - 1] == cplx{}) {
        --support;
    }
    if (support == 0) {
        return out;
    }
    const auto polys = faber_polynomials(config.maps.at(k), support, k);
    PoleTerm acc{config.maps[k].center(), cvec(support)};
    for (std::size_t m = 1; m <= support; ++m) {
        const cplx a = h.neg[m - 1];
        if (a == cplx{}) {
            continue;
        }
        for (std::size_t j = 0; j < m; ++j) {
            acc.coeffs[j] += a * polys[m - 1].coeffs[j];
        }
    }
    out.add(acc);
    return out;
}

// Sum of the per-map Faber images restricted to Sigma.
inline RationalFn apply_big_faber(const MultiDomainConfig &config, const std::vector<CoeffSeq> &h)
{
    if (h.size() != config.size()) {
        throw std::invalid_argument("apply_big_faber: need one sequence per boundary component");
    }
    RationalFn out;
    for (std::size_t k = 0; k < h.size(); ++k) {
        out += apply_faber(config, k, h[k]);
    }
    return out;
}

// CSV rows `k,j,re,im`: coefficient c_j of (z - p_k)^{-j}, k the 1-based map index.
inline void write_faber_csv(std::ostream &os, const FaberPoly &poly)
{
    os << "k,j,re,im\n";
    const auto old = os.precision(17);
    for (std::size_t j = 1; j <= poly.coeffs.size(); ++j) {
        os << poly.map_index + 1 << ',' << j << ',' << poly.coeffs[j - 1].real() << ',' << poly.coeffs[j - 1].imag()
           << '\n';
    }
    os.precision(old);
}

} // namespace faberkit

#endif
