#ifndef FABERKIT_SERIES_HPP
#define FABERKIT_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include <faberkit/error.hpp>

namespace faberkit
{

// Power series in one variable truncated after degree `order()`.
// Coefficient k multiplies w^k. All arithmetic is exact convolution
// followed by truncation.
template <typename T>
class truncated_series
{
public:
    truncated_series() = default;

    explicit truncated_series(std::size_t order) : m_c(order + 1, T{}) {}

    truncated_series(std::vector<T> coeffs, std::size_t order) : m_c(std::move(coeffs))
    {
        m_c.resize(order + 1, T{});
    }

    std::size_t order() const
    {
        return m_c.empty() ? 0 : m_c.size() - 1;
    }

    const T &operator[](std::size_t k) const
    {
        return m_c[k];
    }
    T &operator[](std::size_t k)
    {
        return m_c[k];
    }

    // Coefficient of w^k, zero past the truncation order.
    T coeff(std::size_t k) const
    {
        return k < m_c.size() ? m_c[k] : T{};
    }

    const std::vector<T> &coeffs() const
    {
        return m_c;
    }

    truncated_series &operator+=(const truncated_series &o)
    {
        for (std::size_t k = 0; k < m_c.size(); ++k) {
            m_c[k] += o.coeff(k);
        }
        return *this;
    }

    truncated_series &operator-=(const truncated_series &o)
    {
        for (std::size_t k = 0; k < m_c.size(); ++k) {
            m_c[k] -= o.coeff(k);
        }
        return *this;
    }

    truncated_series &operator*=(const T &s)
    {
        for (auto &c : m_c) {
            c *= s;
        }
        return *this;
    }

    friend truncated_series operator+(truncated_series a, const truncated_series &b)
    {
        return a += b;
    }
    friend truncated_series operator-(truncated_series a, const truncated_series &b)
    {
        return a -= b;
    }
    friend truncated_series operator*(truncated_series a, const T &s)
    {
        return a *= s;
    }

    // Product truncated at the smaller of the two orders.
    friend truncated_series operator*(const truncated_series &a, const truncated_series &b)
    {
        const std::size_t order = std::min(a.order(), b.order());
        truncated_series out(order);
        for (std::size_t i = 0; i <= order; ++i) {
            if (a.m_c[i] == T{}) {
                continue;
            }
            for (std::size_t j = 0; i + j <= order; ++j) {
                out.m_c[i + j] += a.m_c[i] * b.m_c[j];
            }
        }
        return out;
    }

    // Quotient a / b; b must have a nonzero constant term.
    friend truncated_series operator/(const truncated_series &a, const truncated_series &b)
    {
        if (b.m_c.empty() || b.m_c[0] == T{}) {
            throw series_divergence("series division by a series with zero constant term");
        }
        const std::size_t order = std::min(a.order(), b.order());
        truncated_series out(order);
        for (std::size_t k = 0; k <= order; ++k) {
            T acc = a.m_c[k];
            for (std::size_t j = 1; j <= k; ++j) {
                acc -= b.m_c[j] * out.m_c[k - j];
            }
            out.m_c[k] = acc / b.m_c[0];
        }
        return out;
    }

    // d/dw, losing one order.
    truncated_series derivative() const
    {
        truncated_series out(order() == 0 ? 0 : order() - 1);
        for (std::size_t k = 1; k < m_c.size(); ++k) {
            out.m_c[k - 1] = m_c[k] * static_cast<double>(k);
        }
        return out;
    }

    template <typename U>
    U operator()(const U &w) const
    {
        U acc{};
        for (std::size_t k = m_c.size(); k-- > 0;) {
            acc = acc * w + m_c[k];
        }
        return acc;
    }

private:
    std::vector<T> m_c;
};

// Power series in two variables (x, y) truncated to x-degree <= nx and
// y-degree <= ny (a rectangular truncation, closed under the operations
// below).
template <typename T>
class bivariate_series
{
public:
    bivariate_series(std::size_t nx, std::size_t ny) : m_nx(nx), m_ny(ny), m_c((nx + 1) * (ny + 1), T{}) {}

    std::size_t order_x() const
    {
        return m_nx;
    }
    std::size_t order_y() const
    {
        return m_ny;
    }

    const T &operator()(std::size_t a, std::size_t b) const
    {
        return m_c[a * (m_ny + 1) + b];
    }
    T &operator()(std::size_t a, std::size_t b)
    {
        return m_c[a * (m_ny + 1) + b];
    }

    bivariate_series &operator+=(const bivariate_series &o)
    {
        for (std::size_t k = 0; k < m_c.size(); ++k) {
            m_c[k] += o.m_c[k];
        }
        return *this;
    }

    bivariate_series &operator-=(const bivariate_series &o)
    {
        for (std::size_t k = 0; k < m_c.size(); ++k) {
            m_c[k] -= o.m_c[k];
        }
        return *this;
    }

    bivariate_series &operator*=(const T &s)
    {
        for (auto &c : m_c) {
            c *= s;
        }
        return *this;
    }

    // d/dx on the same truncation rectangle; the top x-row becomes zero.
    bivariate_series derivative_x() const
    {
        bivariate_series out(m_nx, m_ny);
        for (std::size_t a = 1; a <= m_nx; ++a) {
            for (std::size_t b = 0; b <= m_ny; ++b) {
                out(a - 1, b) = (*this)(a, b) * static_cast<double>(a);
            }
        }
        return out;
    }

    // Quotient a / q on the truncation rectangle of a. Entries of q outside
    // the rectangle do not influence the retained coefficients.
    friend bivariate_series operator/(const bivariate_series &a, const bivariate_series &q)
    {
        if (q(0, 0) == T{}) {
            throw series_divergence("bivariate series division by a series with zero constant term");
        }
        // Support of q restricted to the rectangle; for polynomial divisors it is small.
        std::vector<std::pair<std::size_t, std::size_t>> support;
        for (std::size_t c = 0; c <= std::min(q.m_nx, a.m_nx); ++c) {
            for (std::size_t d = 0; d <= std::min(q.m_ny, a.m_ny); ++d) {
                if ((c != 0 || d != 0) && q(c, d) != T{}) {
                    support.emplace_back(c, d);
                }
            }
        }
        bivariate_series out(a.m_nx, a.m_ny);
        const T q00 = q(0, 0);
        for (std::size_t s = 0; s <= a.m_nx + a.m_ny; ++s) {
            for (std::size_t x = 0; x <= std::min(s, a.m_nx); ++x) {
                const std::size_t y = s - x;
                if (y > a.m_ny) {
                    continue;
                }
                T acc = a(x, y);
                for (const auto &[c, d] : support) {
                    if (c <= x && d <= y) {
                        acc -= q(c, d) * out(x - c, y - d);
                    }
                }
                out(x, y) = acc / q00;
            }
        }
        return out;
    }

private:
    std::size_t m_nx, m_ny;
    std::vector<T> m_c;
};

} // namespace faberkit

#endif
